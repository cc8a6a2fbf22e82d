#include "doctest.h"
#include "kht/errors.hpp"
#include "kht/json.hpp"

using namespace kht;

TEST_CASE("complex export round trip") {
  const FilteredComplex c = build_complex(BraidWord::parse("1,-2,1"), FrobeniusKind::Lee);
  const Json j = complex_json(c);
  CHECK(j["frobenius"] == "Lee");
  CHECK(j["braid"]["word"] == "1,-2,1");
  const ReferenceComplex r = complex_from_json(Json::parse(j.dump()));
  REQUIRE(r.gens.size() == c.size());
  for (GenId g = 0; g < c.size(); ++g) {
    CHECK(r.gens[g] == std::pair{c.vertex(g), c.labels(g)});
    CHECK(r.gr_h[g] == c.gr_h(g));
    CHECK(r.gr_q[g] == c.gr_q(g));
  }
  CHECK(r.triples == c.triples());
  CHECK_THROWS_AS(complex_from_json(Json{{"generators", Json::array({{{"id", 3}}})}}), Error);
}

TEST_CASE("group and braid round trip") {
  const GroupShape g{2, {2, 6}};
  CHECK(group_from_json(group_json(g)) == g);
  const BraidWord w(4, {{1, 1}, {3, -1}});
  CHECK(braid_from_json(braid_json(w)) == w);
  CHECK(braid_from_json(braid_json(BraidWord(3, {}))) == BraidWord(3, {}));
}

TEST_CASE("psi class serialization") {
  const FilteredComplex c = build_complex(BraidWord::parse("1,1,1"), FrobeniusKind::BarNatan);
  const Json j = psi_json(c, psi_pq(c, 0, 1), false);
  CHECK(j["window"] == Json::array({0, 1}));
  CHECK(j["terms"].size() == 1);
  CHECK(j["terms"][0]["coeff"] == "1");
  const Json open = psi_json(c, psi(c, PsiSign::Diff), false);
  CHECK(open["sign"] == "diff");
  CHECK(open["window"][1].is_null());
}

TEST_CASE("report round trip and determinism") {
  const Report r = verify_neg_stab(BraidWord::parse("1,1,1"));
  const Json j = report_json(r);
  CHECK_FALSE(j.contains("timings"));
  CHECK(report_json(report_from_json(Json::parse(j.dump()))) == j);
  const Json t = report_json(r, true);
  CHECK(t.contains("timings"));
  CHECK(report_json(report_from_json(t), true) == t);
  CHECK(report_json(verify_neg_stab(BraidWord::parse("1,1,1"))).dump() == j.dump());

  Report q;
  q.theorem = "x";
  q.alpha = mpq_class(-3, 2);
  q.witness = {{5, 2, mpq_class(1, 3)}};
  const Json qj = report_json(q);
  CHECK(qj["alpha"] == "-3/2");
  CHECK(qj["witness"][0]["coeff"] == "1/3");
  CHECK(report_json(report_from_json(qj)) == qj);
  CHECK_THROWS_AS(report_from_json(Json{{"theorem", 1}}), Error);
}
