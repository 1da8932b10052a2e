#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "rationalizer/perturb.hpp"

using namespace rationalizer;

TEST_CASE("centipede family matches the stated payoffs") {
  auto form = centipede_form();
  auto plus1 = centipede_structure_of(1, +1);
  CHECK(plus1.utility(0, 0, 0) == Rat(3));  // stopping immediately pays 2 + 1/1
  CHECK(plus1.validate(form).ok());
  auto models = centipede_models(7);
  CHECK(validate_hierarchy(form, models[0].structure).ok());
  CHECK(validate_hierarchy(form, models[1].structure).ok());
  CHECK(consistent_types(models[0].structure, *models[0].types) == std::vector<int>{0});
  CHECK(consistent_types(models[1].structure, *models[1].types) == std::vector<int>{0});
  // The formal limit is the common-knowledge model of the limit payoffs.
  auto limit = centipede_models(0);
  CHECK(limit[0].structure->is_ck_tail());
  CHECK(limit[0].structure->level1().utility(0, 0, 0) == Rat(2));
}

TEST_CASE("two-state example payoffs") {
  auto ex = two_state_example();
  const auto& s = ex.structure;
  int th1 = s.flatten({0, {0, 0}});
  int th2 = s.flatten({0, {1, 0}});
  // (D1), (A1,d), (A1,a,D2), (A1,a,A2)
  CHECK(s.utility(0, 0, th1) == Rat(4));
  CHECK(s.utility(1, 0, th1) == Rat(4));
  CHECK(s.utility(0, 1, th1) == Rat(3));
  CHECK(s.utility(0, 2, th1) == Rat(0));
  CHECK(s.utility(0, 3, th1) == Rat(2));
  CHECK(s.utility(0, 0, th2) == Rat(0));
  CHECK(s.utility(0, 1, th2) == Rat(3));
  CHECK(s.utility(1, 1, th2) == Rat(0));
  CHECK(s.utility(0, 2, th2) == Rat(1));
  CHECK(s.utility(1, 2, th2) == Rat(1));
  CHECK(s.utility(0, 3, th2) == Rat(2));
  CHECK(validate_hierarchy(ex.form, ex.model("p1_th1", "q_cb1")[0].structure).ok());
  CHECK(ex.types->validate().ok());
}

TEST_CASE("tie break adds bonus types and keeps the originals") {
  auto form = centipede_form();
  auto base = centipede_structure_of(1, 0);
  auto tb = tie_break(form, base, 4);
  // 1 original + 4 bonus types for P1; 1 + 2 for P2.
  CHECK(tb.payoff_types(0).size() == 5);
  CHECK(tb.payoff_types(1).size() == 3);

  // The bonus lands on every terminal the strategy reaches, nowhere else.
  int a1a2 = tb.type_index(0, "th1+A1A2");
  int th2 = tb.type_index(1, "th2");
  int st = tb.flatten({0, {a1a2, th2}});
  CHECK(tb.utility(0, 0, st) == Rat(2));            // (D1) unreachable under A1A2
  CHECK(tb.utility(0, 1, st) == Rat(0) + rat(1, 4));  // (A1,d) reachable
  CHECK(tb.utility(0, 2, st) == Rat(2));            // (A1,a,D2) not under A1A2
  CHECK(tb.utility(0, 3, st) == Rat(1) + rat(1, 4));  // (A1,a,A2)
  // Opponents' payoffs are untouched by the added type.
  for (int z = 0; z < 4; ++z) CHECK(tb.utility(1, z, st) == base.utility(1, z, 0));
}

TEST_CASE("tie break distance law") {
  auto form = centipede_form();
  auto base = centipede_structure_of(1, 0);
  auto cbase = canonicalize(base);
  for (int n : {1, 2, 3, 5, 10}) {
    auto tb = tie_break(form, base, n);
    CHECK(hausdorff_distance(canonicalize(tb), cbase) == rat(1, n));
  }
}

TEST_CASE("a 1/n bonus does not make the centipede rich; the scaled one does") {
  auto form = centipede_form();
  auto base = centipede_structure_of(1, 0);
  CHECK(!is_rich(form, tie_break(form, base, 3)).rich);

  auto dom = dominance_extension(form, base, 3);
  auto res = is_rich(form, dom);
  CHECK(res.rich);
  // Every witness the map names indeed makes its strategy dominant wherever
  // the witness type occurs.
  for (const auto& [key, wit] : res.witness) {
    auto [i, ti, s] = key;
    for (int flat = 0; flat < dom.num_states(); ++flat)
      if (dom.unflatten(flat).types[i] == wit)
        CHECK(is_conditionally_dominant(form, dom, flat, i, s));
  }
}

TEST_CASE("default rich structure") {
  auto form = centipede_form();
  auto rich = default_rich_structure(form);
  CHECK(rich.payoff_types(0).size() == 4);
  CHECK(rich.payoff_types(1).size() == 2);
  auto res = is_rich(form, rich);
  REQUIRE(res.rich);
  // The identity pairing works: each strategy's own type makes it dominant.
  // (Outcome-equivalent strategies share witnesses, so the returned map may
  // name either member of a stop class; the identity is always valid.)
  for (PlayerId i : {0, 1})
    for (StrategyIdx s = 0; s < form.num_strategies(i); ++s) {
      int own = rich.type_index(i, "dom+" + form.strategy_name(i, s));
      for (int flat = 0; flat < rich.num_states(); ++flat)
        if (rich.unflatten(flat).types[i] == own)
          CHECK(is_conditionally_dominant(form, rich, flat, i, s));
    }
  // Opponents' payoffs are constant zero across the added types.
  for (int flat = 0; flat < rich.num_states(); ++flat)
    for (int z = 0; z < 4; ++z) CHECK(rich.utility(1, z, flat) ==
                                      Rat(form.reaches(1, rich.unflatten(flat).types[1],
                                                       form.terminals()[z]) ? 1 : 0));
}

TEST_CASE("richness graft orders") {
  auto form = centipede_form();
  auto base = centipede_structure_of(1, 0);
  auto rich = dominance_extension(form, base, 2);
  CHECK(richness_graft(0, base, rich, 0)->is_ck_tail());
  CHECK(higher_order_richness(form, richness_graft(0, base, rich, 0)) == 1);
  // The rich bottom sits at depth k+1, so by the order recursion the first
  // order at which richness holds is k+1.
  for (int k : {1, 2, 3}) {
    auto g = richness_graft(0, base, rich, k);
    CHECK(g->depth() == k + 1);
    CHECK(validate_hierarchy(form, g).ok());
    CHECK(higher_order_richness(form, g) == k + 1);
  }
}

TEST_CASE("graft models stay consistent and converge") {
  auto form = centipede_form();
  auto base = centipede_models(0);
  auto rich = dominance_extension(form, base[0].structure->level1(), 2);
  Rat prev(-1);
  for (int k : {1, 2, 3, 4}) {
    auto gm = graft_models(form, base, rich, k);
    for (PlayerId i : {0, 1}) {
      CHECK(validate_hierarchy(form, gm[i].structure).ok());
      CHECK(type_consistency(gm[i].structure, *gm[i].types, gm[i].root_type));
    }
    Rat d = model_distance(gm, base);
    CHECK(d > Rat(0));
    if (prev >= Rat(0)) CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("tie break models remain consistent") {
  auto form = centipede_form();
  auto base = centipede_models(0);
  for (int n : {1, 10}) {
    auto tm = tie_break_models(form, base, n);
    for (PlayerId i : {0, 1}) {
      CHECK(tm[i].structure->is_ck_tail());
      CHECK(type_consistency(tm[i].structure, *tm[i].types, tm[i].root_type));
    }
  }
}

TEST_CASE("rich standard models coincide across all four concepts") {
  auto form = centipede_form();
  auto base = centipede_structure_of(1, 0);
  auto models = rich_standard_models(form, base, 1);
  auto fe = efr(form, models);
  auto fb = backward(form, models);
  auto fi = icr(form, models);
  auto fs = strict_efr(form, models);
  // Optimal planning prunes never-reached components, so the comparison is
  // over outcome classes.
  auto closure_of = [&](PlayerId i, const std::vector<StrategyIdx>& v) {
    std::set<StrategyIdx> out;
    for (StrategyIdx s : v)
      for (StrategyIdx c : form.outcome_class(i, s)) out.insert(c);
    return out;
  };
  for (const auto& [key, set] : fe.final_sets()) {
    auto want = closure_of(key.player, set);
    CHECK(closure_of(key.player, fb.final_sets().at(key)) == want);
    CHECK(closure_of(key.player, fi.final_sets().at(key)) == want);
    CHECK(closure_of(key.player, fs.final_sets().at(key)) == want);
  }
}

TEST_CASE("unique selection pipeline collapses the centipede to its stop outcome") {
  auto form = centipede_form();
  auto base = centipede_models(0);
  auto fe = efr(form, base);
  auto outcomes = trace_outcomes(form, fe);
  REQUIRE(outcomes.size() == 1);
  auto steps = unique_selection_sequence(form, base, outcomes[0], {1, 10});
  REQUIRE(steps.has_value());
  REQUIRE(steps->size() == 2);
  CHECK((*steps)[0].distance > (*steps)[1].distance);
  for (const auto& step : *steps) {
    auto check = efr(form, step.models);
    auto zs = trace_outcomes(form, check);
    REQUIRE(zs.size() == 1);
    CHECK(zs[0] == outcomes[0]);
  }
}
