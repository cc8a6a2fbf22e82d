#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kht/complex.hpp"
#include "kht/errors.hpp"
#include "kht/grid.hpp"
#include "kht/homology.hpp"
#include "kht/invariants.hpp"
#include "kht/json.hpp"
#include "kht/suite.hpp"
#include "kht/verify.hpp"

using namespace kht;

namespace {

constexpr int kExitOk = 0, kExitFailed = 1, kExitInput = 2, kExitCap = 3;

struct RunConfig {
  bool json = false;
  bool rationals = false;
  bool flip = false;
  bool timings = false;
  int cap = 16;
  Ring ring() const { return rationals ? Ring::Rationals : Ring::Integers; }
};

int default_cap() {
  if (const char* s = std::getenv("KHT_CROSSING_CAP")) {
    try {
      const int v = std::stoi(s);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "ignoring KHT_CROSSING_CAP=" << s << '\n';
  }
  return 16;
}

void check_cap(const RunConfig& cfg, const BraidWord& w) {
  if (int(w.size()) > cfg.cap)
    throw Error(ErrorKind::TooLarge, std::to_string(w.size()) + " crossings exceed the cap of " +
                                         std::to_string(cfg.cap) + " (set --cap or KHT_CROSSING_CAP)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string group_text(const GroupShape& g) {
  std::string s;
  if (g.rank > 0) s = g.rank == 1 ? "Z" : "Z^" + std::to_string(g.rank);
  for (std::int64_t t : g.torsion) s += (s.empty() ? "" : " + ") + ("Z/" + std::to_string(t));
  return s.empty() ? "0" : s;
}

void emit(const RunConfig& cfg, const Json& j, const std::string& text) {
  if (cfg.json) std::cout << j.dump(2) << '\n';
  else std::cout << text;
}

int report_exit(const RunConfig& cfg, const Report& r) {
  std::ostringstream os;
  os << r.theorem << ": " << (r.success ? "verified" : "FAILED") << (r.exploratory ? " (exploratory)" : "") << '\n'
     << "  source [" << r.source.to_string() << "] -> target [" << r.target.to_string() << "]\n"
     << "  sign " << r.sign << ", filtration level " << r.level << ", witness terms " << r.witness.size() << '\n';
  if (r.alpha) os << "  alpha " << r.alpha->get_str() << '\n';
  for (const Check& c : r.checks) os << "  [" << (c.ok ? "ok" : "FAIL") << "] " << c.name << '\n';
  for (const std::string& n : r.notes) os << "  note: " << n << '\n';
  emit(cfg, report_json(r, cfg.timings), os.str());
  return r.success || r.exploratory ? kExitOk : kExitFailed;
}

// "e" stands for the empty word
BraidWord parse_braid(const std::string& s) { return BraidWord::parse(s == "e" ? "" : s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered Khovanov invariants of transverse braid closures"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  cfg.cap = default_cap();
  app.add_flag("--json", cfg.json, "JSON output");
  app.add_flag("--rationals", cfg.rationals, "Compute over Q instead of Z");
  app.add_flag("--flip-labels", cfg.flip, "Swap the depth parity that puts x_perp on circles of psi");
  app.add_flag("--timings", cfg.timings, "Include timings in JSON reports");
  app.add_option("--cap", cfg.cap, "Crossing cap (default from KHT_CROSSING_CAP or 16)")->check(CLI::PositiveNumber);

  std::string braid, braid_b, script_file, grid1, grid2, frobenius = "BarNatan";
  int k = 0, m = 0;
  bool diff = false;
  std::vector<int> window;
  std::uint64_t seed = 1;
  std::function<int()> action;

  auto* kh = app.add_subcommand("kh", "Khovanov groups by bidegree");
  kh->add_option("braid", braid, "Braid word, e.g. 1,1,-2")->required();
  kh->callback([&] {
    action = [&] {
      const BraidWord w = parse_braid(braid);
      check_cap(cfg, w);
      auto groups = khovanov_homology(build_complex(w, FrobeniusKind::Khovanov, {cfg.cap}));
      if (cfg.rationals)
        for (auto& [hq, g] : groups) g.torsion.clear();
      std::ostringstream os;
      for (const auto& [hq, g] : groups) os << "h=" << hq.first << " q=" << hq.second << ": " << group_text(g) << '\n';
      emit(cfg, khovanov_json(w, groups), os.str());
      return kExitOk;
    };
  });

  auto* bn = app.add_subcommand("bn", "Bar-Natan homology by homological degree");
  bn->add_option("braid", braid)->required();
  bn->callback([&] {
    action = [&] {
      const BraidWord w = parse_braid(braid);
      check_cap(cfg, w);
      auto groups = homology_all(build_complex(w, FrobeniusKind::BarNatan, {cfg.cap}), {}, cfg.ring());
      std::ostringstream os;
      for (const auto& [h, g] : groups)
        if (g.rank || !g.torsion.empty()) os << "h=" << h << ": " << group_text(g) << '\n';
      emit(cfg, homology_json(w, groups, cfg.ring()), os.str());
      return kExitOk;
    };
  });

  auto* psi_cmd = app.add_subcommand("psi", "The class of psi in the Bar-Natan complex");
  psi_cmd->add_option("braid", braid)->required();
  psi_cmd->add_flag("--diff", diff, "Use psi+ - psi-");
  psi_cmd->add_option("--window", window, "Filtration window p q: [sl + 2p, sl + 2q)")->expected(2);
  psi_cmd->callback([&] {
    action = [&] {
      const BraidWord w = parse_braid(braid);
      check_cap(cfg, w);
      const FilteredComplex c = build_complex(w, FrobeniusKind::BarNatan, {cfg.cap});
      const PsiSign sign = diff ? PsiSign::Diff : PsiSign::Plus;
      const PsiClass p = window.empty() ? psi(c, sign, cfg.flip) : psi_pq(c, window[0], window[1], sign, cfg.flip);
      const bool zero = psi_class_is_zero(c, p, cfg.ring()).zero;
      std::ostringstream os;
      auto side = [](int v) { return v == kInfinity ? std::string("inf") : v == -kInfinity ? "-inf" : std::to_string(v); };
      os << "psi" << (diff ? "^diff" : "") << " of [" << w.to_string() << "], window [" << side(p.p) << ", "
         << side(p.q) << "): " << (zero ? "zero" : "nonzero") << " (" << p.chain.size() << " terms)\n";
      emit(cfg, psi_json(c, p, zero), os.str());
      return kExitOk;
    };
  });

  auto* s_cmd = app.add_subcommand("s", "Rasmussen s-invariant of a knot");
  s_cmd->add_option("braid", braid)->required();
  s_cmd->callback([&] {
    action = [&] {
      const BraidWord w = parse_braid(braid);
      check_cap(cfg, w);
      const SInvariant s = s_invariant(w);
      emit(cfg, {{"schema", "kht.s/1"}, {"braid", braid_json(w)}, {"s", s.s}, {"q", s.q}},
           std::to_string(s.s) + "\n");
      return kExitOk;
    };
  });

  auto* ob = app.add_subcommand("obstruction", "Whether psi can be filtered-trivial in degree -1");
  ob->add_option("braid", braid)->required();
  ob->callback([&] {
    action = [&] {
      const BraidWord w = parse_braid(braid);
      check_cap(cfg, w);
      const Obstruction o = triviality_obstruction(w);
      std::ostringstream os;
      os << "H^-1(C / F_sl) = " << group_text(o.group) << '\n'
         << "trivial: " << (o.trivial ? "yes" : "no") << '\n'
         << "Khovanov criterion: " << (o.khovanov_sufficient ? "holds" : "does not hold") << '\n';
      emit(cfg,
           {{"schema", "kht.obstruction/1"},
            {"braid", braid_json(w)},
            {"trivial", o.trivial},
            {"group", group_json(o.group)},
            {"khovanov_sufficient", o.khovanov_sufficient}},
           os.str());
      return kExitOk;
    };
  });

  auto* fl = app.add_subcommand("flype-verify", "Negative flype A s^k B s^-1 -> A s^-1 B s^k");
  fl->add_option("A", braid, "Word below index m (\"e\" for the empty word)")->required();
  fl->add_option("B", braid_b)->required();
  fl->add_option("k", k)->required();
  fl->add_option("--m", m, "Flype index (default: one above the largest index in A and B)");
  fl->add_flag("--diff", diff, "Verify psi^diff");
  fl->callback([&] {
    action = [&] {
      const BraidWord a0 = parse_braid(braid), b0 = parse_braid(braid_b);
      const int mm = m > 0 ? m : std::max(a0.strands(), b0.strands());
      const BraidWord a(mm + 1, a0.letters()), b(mm + 1, b0.letters());
      if (int(a.size() + b.size()) + std::abs(k) + 1 > cfg.cap)
        throw Error(ErrorKind::TooLarge, "flype words exceed the crossing cap of " + std::to_string(cfg.cap));
      return report_exit(cfg, diff ? verify_diff_flype(a, b, k, mm) : verify_flype(a, b, k, mm));
    };
  });

  auto* mk = app.add_subcommand("markov-verify", "Transverse Markov script invariance of psi");
  mk->add_option("braid", braid)->required();
  mk->add_option("--script", script_file, "One move per line")->required();
  mk->add_flag("--diff", diff, "Verify psi^diff");
  mk->callback([&] {
    action = [&] {
      const BraidWord w = parse_braid(braid);
      const MoveScript s = parse_script(read_file(script_file));
      for (const BraidWord& x : replay_trace(w, s)) check_cap(cfg, x);
      return report_exit(cfg, diff ? verify_diff_markov(w, s) : verify_markov(w, s));
    };
  });

  auto* ns = app.add_subcommand("negstab-verify", "Negative stabilization behaviour of psi+ and psi-");
  ns->add_option("braid", braid)->required();
  ns->callback([&] {
    action = [&] {
      const BraidWord w = parse_braid(braid);
      check_cap(cfg, stabilize(w, -1));
      return report_exit(cfg, verify_neg_stab(w));
    };
  });

  auto* g2b = app.add_subcommand("grid2braid", "Braid word of a grid diagram");
  g2b->add_option("gridfile", grid1)->required();
  g2b->callback([&] {
    action = [&] {
      const GridDiagram g = GridDiagram::parse(read_file(grid1));
      const BraidWord w = braid_from_grid(g);
      Json j = {{"schema", "kht.grid/1"}, {"grid", grid_json(g)}, {"braid", braid_json(w)},
                {"components", component_count(g)}, {"sl", self_linking(w)}};
      std::ostringstream os;
      os << w.strands() << " strands: " << (w.empty() ? "(empty)" : w.to_string()) << '\n'
         << "sl " << self_linking(w) << '\n';
      if (component_count(g) == 1) {
        const ClassicalInvariants ci = classical_invariants(g);
        j["invariants"] = invariants_json(ci);
        os << "tb " << ci.tb << ", rot " << ci.rot << '\n';
      }
      emit(cfg, j, os.str());
      return kExitOk;
    };
  });

  auto* sz = app.add_subcommand("sz-verify", "Check two grids carry a negative flype pair");
  sz->add_option("gridfile1", grid1)->required();
  sz->add_option("gridfile2", grid2)->required();
  sz->callback([&] {
    action = [&] {
      const GridDiagram g1 = GridDiagram::parse(read_file(grid1)), g2 = GridDiagram::parse(read_file(grid2));
      const SZReport r = verify_flype_sz(g1, g2);
      std::ostringstream os;
      os << "[" << r.word1.to_string() << "] and [" << r.word2.to_string() << "] form a negative flype pair\n"
         << "  A [" << r.shape.a.to_string() << "], B [" << r.shape.b.to_string() << "], m " << r.shape.m << '\n'
         << "  tb " << r.inv1.tb << " / " << r.inv2.tb << ", rot " << r.inv1.rot << " / " << r.inv2.rot << '\n';
      emit(cfg, sz_json(r), os.str());
      return kExitOk;
    };
  });

  auto* cx = app.add_subcommand("complex", "Export the chain complex as JSON");
  cx->add_option("braid", braid)->required();
  cx->add_option("--frobenius", frobenius, "Khovanov, BarNatan or Lee");
  cx->callback([&] {
    action = [&] {
      const BraidWord w = parse_braid(braid);
      check_cap(cfg, w);
      std::cout << complex_json(build_complex(w, parse_frobenius(frobenius), {cfg.cap})).dump(2) << '\n';
      return kExitOk;
    };
  });

  auto* su = app.add_subcommand("suite", "Run every randomized check");
  su->add_option("--seed", seed, "Random seed");
  su->callback([&] {
    action = [&] {
      const std::vector<SuiteResult> rs = run_suites(seed);
      std::ostringstream os;
      bool ok = true;
      for (const SuiteResult& r : rs) {
        ok = ok && r.passed();
        os << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)\n";
        for (const std::string& f : r.failures) os << "  " << f << '\n';
      }
      emit(cfg, suite_json(seed, rs, cfg.timings), os.str());
      return ok ? kExitOk : kExitFailed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    return action();
  } catch (const Error& e) {
    if (cfg.json) std::cout << Json{{"error", error_name(e.kind())}, {"message", e.what()}}.dump(2) << '\n';
    std::cerr << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::TooLarge: return kExitCap;
      case ErrorKind::VerificationFailed:
      case ErrorKind::SupportViolation:
      case ErrorKind::ShapeMismatch: return kExitFailed;
      default: return kExitInput;
    }
  }
}
