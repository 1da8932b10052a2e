// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Everything is exact; there are no tolerances anywhere.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "rationalizer/perturb.hpp"
#include "rationalizer/scenario.hpp"

using namespace rationalizer;

namespace {

struct Criterion {
  std::string id;
  bool ok = true;
  std::ostringstream detail;

  ~Criterion() {
    std::cout << "[" << id << "] " << (ok ? "PASS" : "FAIL");
    auto d = detail.str();
    if (!d.empty()) std::cout << " :: " << d;
    std::cout << std::endl;
  }
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
    CHECK_MESSAGE(cond, what);
  }
};

std::set<std::string> names(const ExtensiveForm& f, PlayerId i, const std::vector<StrategyIdx>& v) {
  std::set<std::string> out;
  for (auto s : v) out.insert(f.strategy_name(i, s));
  return out;
}

std::set<std::string> outcome_labels(const ExtensiveForm& f, const std::vector<NodeId>& zs) {
  std::set<std::string> out;
  for (auto z : zs) out.insert(f.node_label(z));
  return out;
}

std::set<StrategyIdx> class_closure(const ExtensiveForm& f, PlayerId i,
                                    const std::vector<StrategyIdx>& v) {
  std::set<StrategyIdx> out;
  for (StrategyIdx s : v)
    for (StrategyIdx c : f.outcome_class(i, s)) out.insert(c);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("AC-01 limit standard model: both concepts stop immediately") {
  Criterion c{"AC-01"};
  auto form = centipede_form();
  auto limit = centipede_models(0);
  auto fe = efr(form, limit);
  auto fb = backward(form, limit);
  c.require(outcome_labels(form, trace_outcomes(form, fe)) == std::set<std::string>{"(D1)"},
            "efr outcomes must be exactly the immediate stop");
  c.require(outcome_labels(form, trace_outcomes(form, fb)) == std::set<std::string>{"(D1)"},
            "br outcomes must be exactly the immediate stop");
  c.require(names(form, 1, fe.root_set(1)) == std::set<std::string>{"d"},
            "the second mover's efr set must be {d}");
}

TEST_CASE("AC-02 perturbed models: non-refinement and the robustness failure") {
  Criterion c{"AC-02"};
  auto form = centipede_form();
  for (int n : {1, 10, 100}) {
    auto models = centipede_models(n);
    auto fe = efr(form, models);
    auto fb = backward(form, models);
    c.require(outcome_labels(form, trace_outcomes(form, fe)) ==
                  std::set<std::string>{"(D1)", "(A1,d)", "(A1,a,D2)"},
              "efr outcomes at n=" + std::to_string(n));
    c.require(outcome_labels(form, trace_outcomes(form, fb)) == std::set<std::string>{"(D1)"},
              "br outcomes at n=" + std::to_string(n));
    c.require(names(form, 1, fe.root_set(1)) == std::set<std::string>{"d", "a"},
              "F2 = {a,d} at n=" + std::to_string(n));
  }
}

TEST_CASE("AC-03 mechanism: the advance becomes unreachable along the perturbation") {
  Criterion c{"AC-03"};
  auto form = centipede_form();
  NodeId a1 = form.own_histories(1)[0];
  auto limit = centipede_models(0);
  auto fe0 = efr(form, limit);
  c.require(reachable_under_trace(form, limit, 1, fe0, 1) == std::vector<NodeId>{form.root(), a1},
            "limit model must reach the advance at round 1");
  for (int n : {1, 10, 100}) {
    auto models = centipede_models(n);
    auto fen = efr(form, models);
    c.require(reachable_under_trace(form, models, 1, fen, 1) == std::vector<NodeId>{form.root()},
              "perturbed model must not reach the advance, n=" + std::to_string(n));
  }
}

TEST_CASE("AC-04 informed-stakes benchmark: no perturbation removes the advance reply") {
  Criterion c{"AC-04"};
  auto ex = two_state_example();
  auto fb_mix = backward(ex.form, ex.model("p1_th2", "q_mix"));
  c.require(names(ex.form, 1, fb_mix.root_set(1)) == std::set<std::string>{"a"},
            "mixed prior must leave only the advance reply");
  auto base = ex.model("p1_th2", "q_cb1");
  auto fb_cb = backward(ex.form, base);
  c.require(names(ex.form, 1, fb_cb.root_set(1)) == std::set<std::string>{"a", "d"},
            "certainty of the first state must leave both replies");

  auto rich = dominance_extension(ex.form, ex.structure, 1);
  for (int k : {1, 2, 3}) {
    auto gm = graft_models(ex.form, base, rich, k);
    auto fb = backward(ex.form, gm);
    c.require(names(ex.form, 1, fb.root_set(1)).count("a") == 1,
              "graft k=" + std::to_string(k) + " must keep the advance reply");
  }
  for (int n : {1, 10}) {
    auto tm = tie_break_models(ex.form, base, n);
    auto fb = backward(ex.form, tm);
    c.require(names(ex.form, 1, fb.root_set(1)).count("a") == 1,
              "tie-break n=" + std::to_string(n) + " must keep the advance reply");
  }
}

TEST_CASE("AC-05 rich structures make all four concepts coincide") {
  Criterion c{"AC-05"};
  auto form = centipede_form();
  auto base = centipede_structure_of(1, 0);
  for (int n : {1, 10}) {
    auto models = rich_standard_models(form, base, n);
    c.require(is_rich(form, models[0].structure->level1()).rich,
              "extension structure must be rich, n=" + std::to_string(n));
    auto fe = efr(form, models);
    auto fb = backward(form, models);
    auto fi = icr(form, models);
    auto fs = strict_efr(form, models);
    for (const auto& [key, set] : fe.final_sets()) {
      auto want = class_closure(form, key.player, set);
      c.require(class_closure(form, key.player, fb.final_sets().at(key)) == want,
                "br must coincide, n=" + std::to_string(n));
      c.require(class_closure(form, key.player, fi.final_sets().at(key)) == want,
                "icr must coincide, n=" + std::to_string(n));
      c.require(class_closure(form, key.player, fs.final_sets().at(key)) == want,
                "strict efr must coincide, n=" + std::to_string(n));
    }
  }
}

TEST_CASE("AC-06 upper hemicontinuity in types, and along the model sequence") {
  Criterion c{"AC-06"};
  auto ex = two_state_example();

  // Mixed priors converging to certainty of the first state, for the second
  // mover, and mirrored for the first mover.
  TypeStructure ts(2);
  ts.add_type(0, {"p1_th1", "theta1", {{"n0", {"q_cb1"}, Rat(1)}}});
  ts.add_type(0, {"p1_th2", "theta2", {{"n0", {"q_cb2"}, Rat(1)}}});
  ts.add_type(1, {"q_cb1", "u2", {{"n0", {"p1_th1"}, Rat(1)}}});
  ts.add_type(1, {"q_cb2", "u2", {{"n0", {"p1_th2"}, Rat(1)}}});
  std::vector<int> ms{2, 4, 8, 16, 32};
  for (int m : ms) {
    ts.add_type(1, {"q_mix_" + std::to_string(m), "u2",
                    {{"n0", {"p1_th1"}, Rat(1) - rat(1, m)}, {"n0", {"p1_th2"}, rat(1, m)}}});
    ts.add_type(0, {"p1_mix_" + std::to_string(m), "theta2",
                    {{"n0", {"q_cb2"}, Rat(1) - rat(1, m)}, {"n0", {"q_cb1"}, rat(1, m)}}});
  }
  auto tsp = std::make_shared<const TypeStructure>(std::move(ts));
  auto ck1 = SubjectiveStructure::common_knowledge(0, ex.structure);
  auto ck2 = SubjectiveStructure::common_knowledge(1, ex.structure);

  auto solve_roots = [&](const std::string& r1, const std::string& r2) {
    ModelProfile mp{{ck1, tsp, r1}, {ck2, tsp, r2}};
    return efr(ex.form, mp);
  };

  {
    std::set<std::string> inter;
    bool first = true;
    for (int m : ms) {
      auto tr = solve_roots("p1_th2", "q_mix_" + std::to_string(m));
      auto cur = names(ex.form, 1, tr.root_set(1));
      if (first) inter = cur;
      std::set<std::string> keep;
      std::set_intersection(inter.begin(), inter.end(), cur.begin(), cur.end(),
                            std::inserter(keep, keep.begin()));
      inter = keep;
      first = false;
    }
    auto limit_set = names(ex.form, 1, solve_roots("p1_th2", "q_cb1").root_set(1));
    for (const auto& s : inter)
      c.require(limit_set.count(s) == 1, "second-mover survivor '" + s + "' missing at the limit");
  }
  {
    std::set<std::string> inter;
    bool first = true;
    for (int m : ms) {
      auto tr = solve_roots("p1_mix_" + std::to_string(m), "q_cb2");
      auto cur = names(ex.form, 0, tr.root_set(0));
      if (first) inter = cur;
      std::set<std::string> keep;
      std::set_intersection(inter.begin(), inter.end(), cur.begin(), cur.end(),
                            std::inserter(keep, keep.begin()));
      inter = keep;
      first = false;
    }
    auto limit_set = names(ex.form, 0, solve_roots("p1_th2", "q_cb2").root_set(0));
    for (const auto& s : inter)
      c.require(limit_set.count(s) == 1, "first-mover survivor '" + s + "' missing at the limit");
  }

  // Backward rationalizability along the perturbed model sequence.
  auto form = centipede_form();
  auto limit = centipede_models(0);
  auto fb_limit = backward(form, limit);
  for (PlayerId i = 0; i < 2; ++i) {
    std::set<std::string> inter;
    bool first = true;
    for (int n : {1, 2, 4, 8}) {
      auto fb = backward(form, centipede_models(n));
      auto cur = names(form, i, fb.root_set(i));
      if (first) inter = cur;
      std::set<std::string> keep;
      std::set_intersection(inter.begin(), inter.end(), cur.begin(), cur.end(),
                            std::inserter(keep, keep.begin()));
      inter = keep;
      first = false;
    }
    auto lim = names(form, i, fb_limit.root_set(i));
    for (const auto& s : inter)
      c.require(lim.count(s) == 1, "br survivor '" + s + "' missing at the limit model");
  }
}

TEST_CASE("AC-07 unique selection along composed perturbations") {
  Criterion c{"AC-07"};
  struct Bench {
    std::string name;
    ExtensiveForm form;
    ModelProfile base;
  };
  auto ex = two_state_example();
  std::vector<Bench> benches;
  benches.push_back({"centipede-limit", centipede_form(), centipede_models(0)});
  benches.push_back({"informed-stakes", ex.form, ex.model("p1_th2", "q_cb1")});

  std::cout << "  benchmark            outcome        n  distance            efr-outcomes\n";
  for (auto& b : benches) {
    auto fe = efr(b.form, b.base);
    auto outcomes = trace_outcomes(b.form, fe);
    c.require(!outcomes.empty(), b.name + ": no rationalizable outcome");
    for (NodeId target : outcomes) {
      auto steps = unique_selection_sequence(b.form, b.base, target, {1, 10});
      c.require(steps.has_value(), b.name + ": no selection sequence for " +
                                       b.form.node_label(target));
      if (!steps) continue;
      Rat prev(-1);
      for (const auto& step : *steps) {
        auto check = efr(b.form, step.models);
        auto zs = trace_outcomes(b.form, check);
        bool unique = zs.size() == 1 && zs[0] == target;
        c.require(unique, b.name + ": outcome not uniquely selected at n=" +
                              std::to_string(step.index));
        if (prev >= Rat(0))
          c.require(step.distance < prev, b.name + ": distance must strictly decrease");
        std::ostringstream row;
        row << "  " << b.name;
        for (std::size_t k = b.name.size(); k < 21; ++k) row << ' ';
        row << b.form.node_label(target);
        for (std::size_t k = b.form.node_label(target).size(); k < 15; ++k) row << ' ';
        row << step.index << "  " << rat_to_string(step.distance);
        for (std::size_t k = rat_to_string(step.distance).size(); k < 20; ++k) row << ' ';
        row << (unique ? b.form.node_label(zs[0]) : "NOT UNIQUE");
        std::cout << row.str() << "\n";
        prev = step.distance;
      }
    }
  }
}

TEST_CASE("AC-08 kernel agrees with the brute-force oracle on the micro family") {
  Criterion c{"AC-08"};
  long long queries = 0;

  struct Micro {
    std::string name;
    ExtensiveForm form;
    std::vector<SubjectiveModel> models;  // one per player to test
  };
  std::vector<Micro> family;

  {
    auto form = centipede_form();
    auto ts = std::make_shared<const TypeStructure>([] {
      TypeStructure t(2);
      t.add_type(0, {"t1", "th1", {{"n0", {"t2"}, Rat(1)}}});
      t.add_type(1, {"t2", "th2", {{"n0", {"t1"}, Rat(1)}}});
      return t;
    }());
    auto lim = centipede_structure_of(1, 0);
    family.push_back({"centipede-limit",
                      form,
                      {{SubjectiveStructure::common_knowledge(0, lim), ts, "t1"},
                       {SubjectiveStructure::common_knowledge(1, lim), ts, "t2"}}});
  }
  {
    auto ex = two_state_example();
    auto m = ex.model("p1_th2", "q_mix");
    family.push_back({"informed-stakes", ex.form, {m[0], m[1]}});
  }
  {
    TreeSpec leaf;
    TreeSpec root;
    root.moves = {{"P1", {"H", "T"}}, {"P2", {"h", "t"}}};
    root.children = {{"H+h", leaf}, {"H+t", leaf}, {"T+h", leaf}, {"T+t", leaf}};
    auto form = ExtensiveForm::build({"P1", "P2"}, root);
    StandardPayoffStructure st(2, 4, {"w0", "w1"}, {{"x"}, {"y"}});
    const Rat u1[] = {Rat(1), Rat(-1), Rat(-1), Rat(1)};
    for (int w = 0; w < 2; ++w)
      for (int z = 0; z < 4; ++z) {
        st.set_utility(0, z, st.flatten({w, {0, 0}}), w == 0 ? u1[z] : -u1[z]);
        st.set_utility(1, z, st.flatten({w, {0, 0}}), w == 0 ? -u1[z] : u1[z]);
      }
    TypeStructure tt(2);
    tt.add_type(0, {"t1", "x", {{"w0", {"t2"}, rat(1, 3)}, {"w1", {"t2"}, rat(2, 3)}}});
    tt.add_type(1, {"t2", "y", {{"w0", {"t1"}, rat(1, 2)}, {"w1", {"t1"}, rat(1, 2)}}});
    auto ts = std::make_shared<const TypeStructure>(std::move(tt));
    family.push_back({"matching-pennies-2-states",
                      form,
                      {{SubjectiveStructure::common_knowledge(0, st), ts, "t1"},
                       {SubjectiveStructure::common_knowledge(1, st), ts, "t2"}}});
  }
  {
    // Two-stage alternation with an informed second mover and two types.
    TreeSpec leaf;
    TreeSpec inner;
    inner.moves = {{"P2", {"l", "r"}}};
    inner.children = {{"l", leaf}, {"r", leaf}};
    TreeSpec root;
    root.moves = {{"P1", {"out", "in"}}};
    root.children = {{"out", leaf}, {"in", inner}};
    auto form = ExtensiveForm::build({"P1", "P2"}, root);
    StandardPayoffStructure st(2, 3, {"n0"}, {{"x"}, {"ya", "yb"}});
    // Terminals: (out), (in,l), (in,r)
    auto set_state = [&](int t2, std::initializer_list<int> u1, std::initializer_list<int> u2) {
      int flat = st.flatten({0, {0, t2}});
      int z = 0;
      for (int v : u1) st.set_utility(0, z++, flat, Rat(v));
      z = 0;
      for (int v : u2) st.set_utility(1, z++, flat, Rat(v));
    };
    set_state(0, {1, 0, 2}, {0, 2, 1});
    set_state(1, {1, 2, 0}, {0, 1, 2});
    TypeStructure tt(2);
    tt.add_type(0, {"t1", "x", {{"n0", {"t2a"}, rat(3, 5)}, {"n0", {"t2b"}, rat(2, 5)}}});
    tt.add_type(1, {"t2a", "ya", {{"n0", {"t1"}, Rat(1)}}});
    tt.add_type(1, {"t2b", "yb", {{"n0", {"t1"}, Rat(1)}}});
    auto ts = std::make_shared<const TypeStructure>(std::move(tt));
    family.push_back({"entry-with-informed-reply",
                      form,
                      {{SubjectiveStructure::common_knowledge(0, st), ts, "t1"},
                       {SubjectiveStructure::common_knowledge(1, st), ts, "t2a"}}});
  }

  for (const auto& micro : family) {
    for (const auto& model : micro.models) {
      BeliefUniverse u(micro.form, model);
      PlayerId i = u.owner();
      std::vector<Restrictions> rs;
      rs.push_back(Restrictions::free_all(u));
      for (int variant = 0; variant < 2; ++variant) {
        Restrictions r = Restrictions::free_all(u);
        int pos = variant % static_cast<int>(u.conditioning().size());
        std::vector<bool> mask(u.num_atoms(), false);
        bool any = false;
        for (int k = 0; k < u.num_atoms(); ++k)
          if ((k + variant) % 2 == 0) {
            mask[k] = true;
            any = any || u.atom_reaches(k, u.conditioning()[pos]);
          }
        if (!any) continue;
        r.allowed[pos] = mask;
        rs.push_back(std::move(r));
      }
      for (const auto& r : rs)
        for (JustifyMode mode : {JustifyMode::kWeak, JustifyMode::kStrict})
          for (OptimalityScope scope :
               {OptimalityScope::kReachable, OptimalityScope::kAllOwn, OptimalityScope::kExAnte})
            for (StrategyIdx s = 0; s < micro.form.num_strategies(i); ++s) {
              if (mode == JustifyMode::kStrict && scope != OptimalityScope::kReachable) continue;
              std::optional<Cps> got;
              bool threw = false;
              try {
                got = justifiable(u, s, r, mode, scope);
              } catch (const InadmissibleRestriction&) {
                threw = true;
              }
              if (threw) continue;
              ++queries;
              bool expect = oracle::oracle_justifiable(u, s, r, mode, scope);
              c.require(got.has_value() == expect,
                        micro.name + ": disagreement on " + micro.form.strategy_name(i, s));
              if (got) {
                c.require(validate_cps(u, *got).ok(), micro.name + ": invalid witness");
                auto br = best_responses(u, *got);
                if (mode == JustifyMode::kWeak && scope == OptimalityScope::kReachable)
                  c.require(std::count(br.begin(), br.end(), s) == 1,
                            micro.name + ": witness does not justify");
                if (mode == JustifyMode::kStrict)
                  c.require(br == micro.form.outcome_class(i, s),
                            micro.name + ": strict witness class mismatch");
              }
            }
    }
  }
  c.detail << queries << " queries agreed";
}

TEST_CASE("AC-09 metric laws") {
  Criterion c{"AC-09"};
  auto limit = canonicalize(centipede_structure_of(1, 0));
  for (int n = 1; n <= 10; ++n) {
    auto plus = canonicalize(centipede_structure_of(n, +1));
    auto minus = canonicalize(centipede_structure_of(n, -1));
    c.require(hausdorff_distance(plus, minus) == rat(2, n),
              "plus/minus distance at n=" + std::to_string(n));
    c.require(hausdorff_distance(plus, limit) == rat(1, n),
              "distance to the limit at n=" + std::to_string(n));
  }
  std::vector<CanonicalRepresentation> reps;
  for (int n : {1, 2, 3}) {
    reps.push_back(canonicalize(centipede_structure_of(n, +1)));
    reps.push_back(canonicalize(centipede_structure_of(n, -1)));
  }
  reps.push_back(limit);
  reps.push_back(canonicalize(two_state_example().structure));
  for (const auto& a : reps)
    for (const auto& b : reps) {
      c.require(hausdorff_distance(a, b) == hausdorff_distance(b, a), "symmetry");
      for (const auto& d : reps)
        c.require(hausdorff_distance(a, d) <= hausdorff_distance(a, b) + hausdorff_distance(b, d),
                  "triangle inequality");
    }
  c.require(hausdorff_distance(limit, limit) == Rat(0), "identity of indiscernibles (pseudo)");
}

TEST_CASE("AC-10 determinism across thread counts") {
  Criterion c{"AC-10"};
  for (const std::string name :
       {"centipede_limit.scn", "centipede_perturbed.scn", "two_state.scn"}) {
    auto text = slurp(std::string(SCENARIO_DIR) + "/" + name);
    auto sc1 = parse_scenario(text);
    auto sc2 = parse_scenario(text);
    // Exercise every concept on every model the scenario declares.
    std::vector<std::string> extra;
    for (const auto& [mname, profile] : sc1.models)
      extra.push_back(R"({"model":")" + mname +
                      R"(","concepts":["efr","br","sefr","icr"]})");
    for (const auto& cmd : extra) {
      sc1.commands.push_back({"compare", cmd});
      sc2.commands.push_back({"compare", cmd});
    }
    RunOptions one, many;
    one.threads = 1;
    many.threads = 8;
    auto ra = run_scenario(sc1, one);
    auto rb = run_scenario(sc2, many);
    c.require(ra.report == rb.report, name + ": byte-identical reports");
    c.require(ra.exit_code == 0 && rb.exit_code == 0, name + ": clean exits");
  }
}
