#ifndef RATIONALIZER_CONJECTURE_HPP
#define RATIONALIZER_CONJECTURE_HPP

#include <optional>
#include <vector>

#include "rationalizer/game_tree.hpp"
#include "rationalizer/hierarchy.hpp"

namespace rationalizer {

// The uncertainty space of one player's conjectures inside a subjective
// model: atoms (s_-i, θ0, t_-i) over opponents' strategies, level-1 nature
// states and opponents' types consistent with the ascribed hierarchies.
// Utilities are assembled from the owner's root payoff type, the atom's
// nature state and the atom types' payoff types.
class BeliefUniverse {
 public:
  BeliefUniverse(const ExtensiveForm& form, const SubjectiveModel& model);

  struct Atom {
    std::vector<StrategyIdx> strategies;  // per opponent, ascending player order
    int nature = 0;                       // index into level1 nature states
    std::vector<int> types;               // per opponent: index into the type structure
  };

  const ExtensiveForm& form() const { return *form_; }
  const SubjectiveModel& model() const { return model_; }
  PlayerId owner() const { return owner_; }
  int root_type_index() const { return root_type_; }
  const std::vector<PlayerId>& opponents() const { return opponents_; }
  const std::vector<std::vector<int>>& opponent_types() const { return opp_types_; }

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  const Atom& atom(int k) const { return atoms_[k]; }

  // Conditioning family H_i ∪ {h0} and its indexing.
  const std::vector<NodeId>& conditioning() const { return cond_; }
  int cond_pos(NodeId h) const;  // -1 when h is not a conditioning history

  bool atom_reaches(int atomIdx, NodeId h) const;  // opponent profile reaches h
  const std::vector<int>& atoms_reaching(int condPos) const { return reach_[condPos]; }
  // Whether the atom's opponent types project into level1's payoff types.
  bool in_scope(int atomIdx) const { return in_scope_[atomIdx]; }

  // u_i(z(s_-i; s | h), θ(atom)); h given by conditioning position.
  const Rat& utility(int atomIdx, StrategyIdx s, int condPos) const;

 private:
  const ExtensiveForm* form_;
  SubjectiveModel model_;
  PlayerId owner_;
  int root_type_;
  int root_payoff_;
  std::vector<PlayerId> opponents_;
  std::vector<std::vector<int>> opp_types_;
  std::vector<Atom> atoms_;
  std::vector<NodeId> cond_;
  std::vector<std::vector<int>> reach_;       // per cond pos: sorted atom ids
  std::vector<std::vector<bool>> reach_bit_;  // per cond pos: atom -> reaches
  std::vector<bool> in_scope_;
  std::vector<Rat> util_;                     // [(atom * |S_i| + s) * |cond| + pos]
};

// Conditional probability system: one finitely supported belief per
// conditioning history, stored densely over the universe's atoms.
struct Cps {
  std::vector<std::vector<Rat>> beliefs;  // [cond pos][atom]
};

// The three structural requirements: per-history support, chain rule, and
// initial consistency with the root type's belief.
ValidationReport validate_cps(const BeliefUniverse& u, const Cps& cps);

Rat expected_utility(const BeliefUniverse& u, const Cps& cps, StrategyIdx s, NodeId h);

// Sequential best responses r_i(θ_i, μ): optimal at every own-reachable history.
std::vector<StrategyIdx> best_responses(const BeliefUniverse& u, const Cps& cps);

// Histories where every preceding conditioning history assigns zero reach
// probability; always contains the root.
std::vector<NodeId> scratch_histories(const BeliefUniverse& u, const Cps& cps);

// Rebuild the full system from its beliefs at the given scratch histories via
// the chain rule. Scratch positions absent from `scratch` are zero-probability
// boundaries and must be listed. Returns nullopt when a needed anchor has zero
// mass on a non-scratch history.
std::optional<Cps> cps_from_scratch(const BeliefUniverse& u,
                                    const std::vector<std::pair<int, std::vector<Rat>>>& scratch);

}  // namespace rationalizer

#endif  // RATIONALIZER_CONJECTURE_HPP
