#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "rationalizer/conjecture.hpp"

using namespace rationalizer;

namespace {

struct LimitCentipede {
  ExtensiveForm form = fixtures::centipede();
  TypeStructurePtr ts = fixtures::cb_pair("n0", "th1", "th2");
  SubjectiveModel m1{
      SubjectiveStructure::common_knowledge(0, fixtures::centipede_structure(Rat(2))), ts, "t1"};
  SubjectiveModel m2{
      SubjectiveStructure::common_knowledge(1, fixtures::centipede_structure(Rat(2))), ts, "t2"};
};

std::vector<Rat> point_mass(const BeliefUniverse& u, StrategyIdx opp_strategy) {
  std::vector<Rat> b(u.num_atoms(), Rat(0));
  for (int k = 0; k < u.num_atoms(); ++k)
    if (u.atom(k).strategies[0] == opp_strategy) b[k] = Rat(1);
  return b;
}

}  // namespace

TEST_CASE("cps validation in the limit centipede") {
  LimitCentipede fx;
  BeliefUniverse u2(fx.form, fx.m2);
  REQUIRE(u2.num_atoms() == 4);
  StrategyIdx a1d2 = fx.form.strategy_by_name(0, "A1D2");
  StrategyIdx d1d2 = fx.form.strategy_by_name(0, "D1D2");

  Cps good{{point_mass(u2, a1d2), point_mass(u2, a1d2)}};
  CHECK(validate_cps(u2, good).ok());

  // Mass at (A1) on strategies that stop immediately.
  Cps bad_support{{point_mass(u2, a1d2), point_mass(u2, d1d2)}};
  auto rep = validate_cps(u2, bad_support);
  REQUIRE(!rep.ok());
  CHECK(rep.issues[0].code == "support");

  // Conditional of h0 is violated at (A1).
  StrategyIdx a1a2 = fx.form.strategy_by_name(0, "A1A2");
  Cps bad_chain{{point_mass(u2, a1d2), point_mass(u2, a1a2)}};
  rep = validate_cps(u2, bad_chain);
  REQUIRE(!rep.ok());
  CHECK(rep.issues[0].code == "chain-rule");
}

TEST_CASE("initial consistency is checked against the root type") {
  auto form = fixtures::centipede();
  TypeStructure ts(2);
  ts.add_type(0, {"t1", "th1", {{"n0", {"t2"}, Rat(1)}}});
  ts.add_type(0, {"t1b", "th1", {{"n0", {"t2"}, Rat(1)}}});
  ts.add_type(1, {"t2", "th2", {{"n0", {"t1"}, Rat(1)}}});
  auto tsp = std::make_shared<const TypeStructure>(std::move(ts));
  SubjectiveModel m2{
      SubjectiveStructure::common_knowledge(1, fixtures::centipede_structure(Rat(2))), tsp, "t2"};
  BeliefUniverse u2(form, m2);
  REQUIRE(u2.num_atoms() == 8);
  // Put all h0 mass on t1b although the root type believes t1.
  std::vector<Rat> h0(u2.num_atoms(), Rat(0));
  std::vector<Rat> at_a1(u2.num_atoms(), Rat(0));
  StrategyIdx a1d2 = form.strategy_by_name(0, "A1D2");
  for (int k = 0; k < u2.num_atoms(); ++k)
    if (u2.atom(k).strategies[0] == a1d2 && u2.atom(k).types[0] == 1) h0[k] = Rat(1);
  at_a1 = h0;
  auto rep = validate_cps(u2, Cps{{h0, at_a1}});
  REQUIRE(!rep.ok());
  CHECK(rep.issues[0].code == "initial-consistency");
}

TEST_CASE("expected utilities") {
  LimitCentipede fx;
  BeliefUniverse u2(fx.form, fx.m2);
  NodeId a1 = fx.form.own_histories(1)[0];
  StrategyIdx a1d2 = fx.form.strategy_by_name(0, "A1D2");
  Cps mu{{point_mass(u2, a1d2), point_mass(u2, a1d2)}};
  StrategyIdx a = fx.form.strategy_by_name(1, "a");
  StrategyIdx d = fx.form.strategy_by_name(1, "d");
  CHECK(expected_utility(u2, mu, a, a1) == Rat(-1));
  CHECK(expected_utility(u2, mu, d, a1) == Rat(0));

  BeliefUniverse u1(fx.form, fx.m1);
  std::vector<Rat> half(u1.num_atoms(), Rat(0));
  half[u1.atom(0).strategies[0] == d ? 0 : 1] = rat(1, 2);
  half[u1.atom(0).strategies[0] == d ? 1 : 0] = rat(1, 2);
  // At (A1,a) only the a-continuation remains.
  Cps mu1{{half, point_mass(u1, a)}};
  REQUIRE(validate_cps(u1, mu1).ok());
  CHECK(expected_utility(u1, mu1, fx.form.strategy_by_name(0, "A1D2"), fx.form.root()) == Rat(1));
  CHECK_THROWS(expected_utility(u1, mu1, 0, fx.form.own_histories(1)[0]));
}

TEST_CASE("best responses") {
  LimitCentipede fx;
  BeliefUniverse u2(fx.form, fx.m2);
  StrategyIdx a1d2 = fx.form.strategy_by_name(0, "A1D2");
  Cps mu{{point_mass(u2, a1d2), point_mass(u2, a1d2)}};
  auto br2 = best_responses(u2, mu);
  REQUIRE(br2.size() == 1);
  CHECK(fx.form.strategy_name(1, br2[0]) == "d");

  BeliefUniverse u1(fx.form, fx.m1);
  StrategyIdx d = fx.form.strategy_by_name(1, "d");
  Cps mu1{{point_mass(u1, d), point_mass(u1, fx.form.strategy_by_name(1, "a"))}};
  REQUIRE(validate_cps(u1, mu1).ok());
  std::vector<std::string> names;
  for (auto s : best_responses(u1, mu1)) names.push_back(fx.form.strategy_name(0, s));
  CHECK(names == std::vector<std::string>{"D1D2", "D1A2"});
}

TEST_CASE("best responses are never empty") {
  LimitCentipede fx;
  BeliefUniverse u1(fx.form, fx.m1);
  BeliefUniverse u2(fx.form, fx.m2);
  StrategyIdx d = fx.form.strategy_by_name(1, "d");
  StrategyIdx a = fx.form.strategy_by_name(1, "a");
  std::vector<Cps> cs;
  cs.push_back(Cps{{point_mass(u1, d), point_mass(u1, a)}});
  std::vector<Rat> mix(u1.num_atoms(), Rat(0));
  mix[0] = rat(1, 3);
  mix[1] = rat(2, 3);
  cs.push_back(Cps{{mix, point_mass(u1, a)}});
  for (const auto& c : cs) {
    REQUIRE(validate_cps(u1, c).ok());
    CHECK(!best_responses(u1, c).empty());
  }
  Cps c2{{point_mass(u2, fx.form.strategy_by_name(0, "A1A2")),
          point_mass(u2, fx.form.strategy_by_name(0, "A1A2"))}};
  REQUIRE(validate_cps(u2, c2).ok());
  CHECK(!best_responses(u2, c2).empty());
}

TEST_CASE("scratch histories") {
  LimitCentipede fx;
  BeliefUniverse u2(fx.form, fx.m2);
  NodeId a1 = fx.form.own_histories(1)[0];
  StrategyIdx a1d2 = fx.form.strategy_by_name(0, "A1D2");
  StrategyIdx d1d2 = fx.form.strategy_by_name(0, "D1D2");

  Cps reaching{{point_mass(u2, a1d2), point_mass(u2, a1d2)}};
  CHECK(scratch_histories(u2, reaching) == std::vector<NodeId>{fx.form.root()});

  Cps null_prior{{point_mass(u2, d1d2), point_mass(u2, a1d2)}};
  REQUIRE(validate_cps(u2, null_prior).ok());
  CHECK(scratch_histories(u2, null_prior) == std::vector<NodeId>{fx.form.root(), a1});
}

TEST_CASE("a cps is reproduced bit-exactly from its scratch beliefs") {
  LimitCentipede fx;
  for (const auto& model : {fx.m1, fx.m2}) {
    BeliefUniverse u(fx.form, model);
    // A spread prior plus a revision at the deepest history when null.
    std::vector<Rat> prior(u.num_atoms(), Rat(0));
    prior[0] = rat(2, 5);
    prior[u.num_atoms() - 1] = rat(3, 5);
    std::vector<std::pair<int, std::vector<Rat>>> scratch{{0, prior}};
    auto rebuilt = cps_from_scratch(u, scratch);
    if (!rebuilt) {
      // Some history is unreachable under the prior: give it a fresh belief.
      std::vector<Rat> fresh(u.num_atoms(), Rat(0));
      int pos = 1;
      fresh[u.atoms_reaching(pos)[0]] = Rat(1);
      scratch.push_back({pos, fresh});
      rebuilt = cps_from_scratch(u, scratch);
    }
    REQUIRE(rebuilt.has_value());
    auto sc = scratch_histories(u, *rebuilt);
    std::vector<std::pair<int, std::vector<Rat>>> again;
    for (NodeId h : sc) again.push_back({u.cond_pos(h), rebuilt->beliefs[u.cond_pos(h)]});
    auto twice = cps_from_scratch(u, again);
    REQUIRE(twice.has_value());
    CHECK(twice->beliefs == rebuilt->beliefs);
  }
}

TEST_CASE("expected utility is linear in the belief") {
  LimitCentipede fx;
  BeliefUniverse u1(fx.form, fx.m1);
  StrategyIdx d = fx.form.strategy_by_name(1, "d");
  StrategyIdx a = fx.form.strategy_by_name(1, "a");
  auto bd = point_mass(u1, d);
  auto ba = point_mass(u1, a);
  for (const Rat& lambda : {rat(1, 3), rat(2, 7), rat(5, 8)}) {
    std::vector<Rat> mix(u1.num_atoms());
    for (int k = 0; k < u1.num_atoms(); ++k)
      mix[k] = lambda * bd[k] + (Rat(1) - lambda) * ba[k];
    Cps cd{{bd, ba}}, ca{{ba, ba}}, cm{{mix, ba}};
    for (StrategyIdx s = 0; s < fx.form.num_strategies(0); ++s) {
      Rat lhs = expected_utility(u1, cm, s, fx.form.root());
      Rat rhs = lambda * expected_utility(u1, cd, s, fx.form.root()) +
                (Rat(1) - lambda) * expected_utility(u1, ca, s, fx.form.root());
      CHECK(lhs == rhs);
    }
  }
}
