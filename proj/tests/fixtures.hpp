#ifndef RATIONALIZER_TESTS_FIXTURES_HPP
#define RATIONALIZER_TESTS_FIXTURES_HPP

#include "rationalizer/game_tree.hpp"
#include "rationalizer/hierarchy.hpp"
#include "rationalizer/payoffs.hpp"

namespace fixtures {

// Three-legged centipede: P1 moves (D1/A1), then P2 (d/a), then P1 (D2/A2).
inline rationalizer::ExtensiveForm centipede() {
  using rationalizer::TreeSpec;
  TreeSpec leaf;
  TreeSpec second;
  second.moves = {{"P1", {"D2", "A2"}}};
  second.children = {{"D2", leaf}, {"A2", leaf}};
  TreeSpec mid;
  mid.moves = {{"P2", {"d", "a"}}};
  mid.children = {{"d", leaf}, {"a", second}};
  TreeSpec root;
  root.moves = {{"P1", {"D1", "A1"}}};
  root.children = {{"D1", leaf}, {"A1", mid}};
  return rationalizer::ExtensiveForm::build({"P1", "P2"}, root);
}

// One-shot simultaneous move game, two actions each.
inline rationalizer::ExtensiveForm simultaneous() {
  using rationalizer::TreeSpec;
  TreeSpec leaf;
  TreeSpec root;
  root.moves = {{"P1", {"H", "T"}}, {"P2", {"h", "t"}}};
  root.children = {{"H+h", leaf}, {"H+t", leaf}, {"T+h", leaf}, {"T+t", leaf}};
  return rationalizer::ExtensiveForm::build({"P1", "P2"}, root);
}

// Single-state centipede payoffs with a configurable payoff for stopping
// immediately. Terminal order: (D1), (A1,d), (A1,a,D2), (A1,a,A2).
inline rationalizer::StandardPayoffStructure centipede_structure(const rationalizer::Rat& d1) {
  using namespace rationalizer;
  StandardPayoffStructure s(2, 4, {"n0"}, {{"th1"}, {"th2"}});
  const Rat p1[] = {d1, Rat(0), Rat(2), Rat(1)};
  const Rat p2[] = {Rat(0), Rat(0), Rat(-1), Rat(1)};
  for (int z = 0; z < 4; ++z) {
    s.set_utility(0, z, 0, p1[z]);
    s.set_utility(1, z, 0, p2[z]);
  }
  return s;
}

// Two payoff states known to P1 only; P2 has a single uninformed type.
inline rationalizer::StandardPayoffStructure two_state_structure() {
  using namespace rationalizer;
  StandardPayoffStructure s(2, 4, {"n0"}, {{"theta1", "theta2"}, {"t2"}});
  const Rat u1_a[] = {Rat(4), Rat(3), Rat(0), Rat(2)};
  const Rat u2_a[] = {Rat(4), Rat(3), Rat(0), Rat(2)};
  const Rat u1_b[] = {Rat(0), Rat(3), Rat(1), Rat(2)};
  const Rat u2_b[] = {Rat(0), Rat(0), Rat(1), Rat(2)};
  for (int z = 0; z < 4; ++z) {
    s.set_utility(0, z, s.flatten({0, {0, 0}}), u1_a[z]);
    s.set_utility(1, z, s.flatten({0, {0, 0}}), u2_a[z]);
    s.set_utility(0, z, s.flatten({0, {1, 0}}), u1_b[z]);
    s.set_utility(1, z, s.flatten({0, {1, 0}}), u2_b[z]);
  }
  return s;
}

// Indicator-payoff rich structure: one payoff type per (player, strategy),
// own utility 1 exactly at the terminals the strategy can reach, opponents 0.
inline rationalizer::StandardPayoffStructure rich_indicator_structure(
    const rationalizer::ExtensiveForm& form) {
  using namespace rationalizer;
  std::vector<std::vector<std::string>> types(form.num_players());
  for (PlayerId i = 0; i < form.num_players(); ++i)
    for (StrategyIdx s = 0; s < form.num_strategies(i); ++s)
      types[i].push_back("dom:" + form.strategy_name(i, s));
  StandardPayoffStructure st(form.num_players(), static_cast<int>(form.terminals().size()),
                             {"n0"}, types);
  for (int flat = 0; flat < st.num_states(); ++flat) {
    auto ps = st.unflatten(flat);
    for (PlayerId i = 0; i < form.num_players(); ++i) {
      StrategyIdx s = ps.types[i];
      for (int z = 0; z < st.num_terminals(); ++z)
        st.set_utility(i, z, flat, Rat(form.reaches(i, s, form.terminals()[z]) ? 1 : 0));
    }
  }
  return st;
}

// Point-belief pair of types ("t1", "t2"), each certain of the given nature
// state and of the other's type.
inline rationalizer::TypeStructurePtr cb_pair(const std::string& nature, const std::string& p1_type,
                                              const std::string& p2_type) {
  using namespace rationalizer;
  TypeStructure ts(2);
  ts.add_type(0, {"t1", p1_type, {{nature, {"t2"}, Rat(1)}}});
  ts.add_type(1, {"t2", p2_type, {{nature, {"t1"}, Rat(1)}}});
  return std::make_shared<const TypeStructure>(std::move(ts));
}

}  // namespace fixtures

#endif
