#include "kht/json.hpp"

#include "kht/errors.hpp"

namespace kht {

namespace {

const char* sign_name(PsiSign s) {
  switch (s) {
    case PsiSign::Plus: return "plus";
    case PsiSign::Minus: return "minus";
    case PsiSign::Diff: return "diff";
  }
  return "plus";
}

Json bound(int v) { return (v == kInfinity || v == -kInfinity) ? Json(nullptr) : Json(v); }

Json term_json(const WitnessTerm& t) {
  return {{"vertex", t.vertex}, {"labels", t.labels}, {"coeff", t.coeff.get_str()}};
}

WitnessTerm term_from_json(const Json& j) {
  return {j.at("vertex").get<Vertex>(), j.at("labels").get<std::uint32_t>(),
          mpq_class(j.at("coeff").get<std::string>())};
}

Json terms_json(const std::vector<WitnessTerm>& ts) {
  Json a = Json::array();
  for (const WitnessTerm& t : ts) a.push_back(term_json(t));
  return a;
}

std::vector<WitnessTerm> terms_from_json(const Json& j) {
  std::vector<WitnessTerm> out;
  for (const Json& t : j) out.push_back(term_from_json(t));
  return out;
}

// wraps nlohmann errors in our input error
template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::ParseError, std::string("json: ") + e.what());
  }
}

}  // namespace

Json braid_json(const BraidWord& w) { return {{"strands", w.strands()}, {"word", w.to_string()}}; }

BraidWord braid_from_json(const Json& j) {
  return guarded([&] { return BraidWord::parse(j.at("word").get<std::string>(), j.at("strands").get<int>()); });
}

Json complex_json(const FilteredComplex& c) {
  Json gens = Json::array();
  for (GenId g = 0; g < c.size(); ++g)
    gens.push_back(
        {{"id", g}, {"vertex", c.vertex(g)}, {"labels", c.labels(g)}, {"gr_h", c.gr_h(g)}, {"gr_q", c.gr_q(g)}});
  Json diff = Json::array();
  for (const auto& t : c.triples()) diff.push_back({t[0], t[1], t[2]});
  return {{"schema", "kht.complex/1"},
          {"braid", braid_json(c.word())},
          {"frobenius", FrobeniusSpec::get(c.kind()).name},
          {"generators", std::move(gens)},
          {"differential", std::move(diff)}};
}

ReferenceComplex complex_from_json(const Json& j) {
  return guarded([&] {
    ReferenceComplex out;
    for (const Json& g : j.at("generators")) {
      if (g.at("id").get<std::size_t>() != out.gens.size())
        throw Error(ErrorKind::ParseError, "generator ids must be 0, 1, 2, ...");
      out.gens.push_back({g.at("vertex").get<Vertex>(), g.at("labels").get<std::uint32_t>()});
      out.gr_h.push_back(g.at("gr_h").get<int>());
      out.gr_q.push_back(g.at("gr_q").get<int>());
    }
    for (const Json& t : j.at("differential")) out.triples.push_back(t.get<std::array<std::int64_t, 3>>());
    return out;
  });
}

Json group_json(const GroupShape& g) { return {{"rank", g.rank}, {"torsion", g.torsion}}; }

GroupShape group_from_json(const Json& j) {
  return guarded([&] {
    return GroupShape{j.at("rank").get<int>(), j.at("torsion").get<std::vector<std::int64_t>>()};
  });
}

Json khovanov_json(const BraidWord& w, const std::map<std::pair<int, int>, GroupShape>& groups) {
  Json gs = Json::array();
  for (const auto& [hq, g] : groups) {
    Json e = group_json(g);
    e["h"] = hq.first;
    e["q"] = hq.second;
    gs.push_back(std::move(e));
  }
  return {{"schema", "kht.khovanov/1"}, {"braid", braid_json(w)}, {"groups", std::move(gs)}};
}

Json homology_json(const BraidWord& w, const std::map<int, GroupShape>& groups, Ring ring) {
  Json gs = Json::array();
  for (const auto& [h, g] : groups) {
    Json e = group_json(g);
    e["h"] = h;
    gs.push_back(std::move(e));
  }
  return {{"schema", "kht.homology/1"},
          {"braid", braid_json(w)},
          {"ring", ring == Ring::Integers ? "integers" : "rationals"},
          {"groups", std::move(gs)}};
}

Json psi_json(const FilteredComplex& c, const PsiClass& psi, bool zero) {
  Json terms = Json::array();
  for (const auto& [g, x] : psi.chain)
    terms.push_back({{"vertex", c.vertex(g)}, {"labels", c.labels(g)}, {"coeff", std::to_string(x)}});
  return {{"schema", "kht.psi/1"},
          {"braid", braid_json(c.word())},
          {"window", {bound(psi.p), bound(psi.q)}},
          {"sign", sign_name(psi.sign)},
          {"flipped", psi.flipped},
          {"terms", std::move(terms)},
          {"zero", zero}};
}

Json report_json(const Report& r, bool timings) {
  Json checks = Json::array();
  for (const Check& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"ok", c.ok},
                      {"sign", c.sign},
                      {"level", c.level},
                      {"witness", terms_json(c.witness)}});
  Json j = {{"schema", "kht.report/1"},
            {"theorem", r.theorem},
            {"inputs", {{"source", braid_json(r.source)}, {"target", braid_json(r.target)}}},
            {"success", r.success},
            {"exploratory", r.exploratory},
            {"sign", r.sign},
            {"level", r.level},
            {"alpha", r.alpha ? Json(r.alpha->get_str()) : Json(nullptr)},
            {"witness", terms_json(r.witness)},
            {"checks", std::move(checks)},
            {"trace", r.trace},
            {"notes", r.notes}};
  if (timings) j["timings"] = r.timings;
  return j;
}

Report report_from_json(const Json& j) {
  return guarded([&] {
    Report r;
    r.theorem = j.at("theorem").get<std::string>();
    r.source = braid_from_json(j.at("inputs").at("source"));
    r.target = braid_from_json(j.at("inputs").at("target"));
    r.success = j.at("success").get<bool>();
    r.exploratory = j.at("exploratory").get<bool>();
    r.sign = j.at("sign").get<int>();
    r.level = j.at("level").get<int>();
    if (!j.at("alpha").is_null()) r.alpha = mpq_class(j.at("alpha").get<std::string>());
    r.witness = terms_from_json(j.at("witness"));
    for (const Json& c : j.at("checks"))
      r.checks.push_back({c.at("name").get<std::string>(), c.at("ok").get<bool>(), c.at("sign").get<int>(),
                          c.at("level").get<int>(), terms_from_json(c.at("witness"))});
    r.trace = j.at("trace").get<std::vector<std::string>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("timings")) r.timings = j.at("timings").get<std::map<std::string, double>>();
    return r;
  });
}

Json grid_json(const GridDiagram& g) { return {{"n", g.n}, {"xs", g.xs}, {"os", g.os}}; }

Json invariants_json(const ClassicalInvariants& ci) {
  return {{"tb", ci.tb},
          {"rot", ci.rot},
          {"writhe", ci.writhe},
          {"up_cusps", ci.up_cusps},
          {"down_cusps", ci.down_cusps}};
}

Json sz_json(const SZReport& r) {
  return {{"schema", "kht.sz/1"},
          {"word1", braid_json(r.word1)},
          {"word2", braid_json(r.word2)},
          {"success", r.success},
          {"shape",
           {{"a", braid_json(r.shape.a)},
            {"b", braid_json(r.shape.b)},
            {"m", r.shape.m},
            {"shift1", r.shape.shift1},
            {"shift2", r.shape.shift2}}},
          {"inv1", invariants_json(r.inv1)},
          {"inv2", invariants_json(r.inv2)}};
}

Json suite_json(std::uint64_t seed, const std::vector<SuiteResult>& results, bool timings) {
  Json rs = Json::array();
  for (const SuiteResult& r : results) {
    Json e = {{"name", r.name}, {"cases", r.cases}, {"passed", r.passed()}, {"failures", r.failures}};
    if (timings) e["seconds"] = r.seconds;
    rs.push_back(std::move(e));
  }
  return {{"schema", "kht.suite/1"}, {"seed", seed}, {"suites", std::move(rs)}};
}

}  // namespace kht
