#ifndef RATIONALIZER_PAYOFFS_HPP
#define RATIONALIZER_PAYOFFS_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "rationalizer/game_tree.hpp"
#include "rationalizer/rational.hpp"

namespace rationalizer {

// A payoff state: one nature state plus one payoff type per player.
struct PayoffState {
  int nature = 0;
  std::vector<int> types;  // per player
  bool operator==(const PayoffState&) const = default;
};

// Finite standard payoff structure for a given extensive form: labeled nature
// states and payoff types, and a total exact utility map u_i(z, θ).
class StandardPayoffStructure {
 public:
  StandardPayoffStructure() = default;
  StandardPayoffStructure(int num_players, int num_terminals,
                          std::vector<std::string> nature_states,
                          std::vector<std::vector<std::string>> payoff_types);

  int num_players() const { return num_players_; }
  int num_terminals() const { return num_terminals_; }
  const std::vector<std::string>& nature_states() const { return nature_states_; }
  const std::vector<std::string>& payoff_types(PlayerId i) const { return payoff_types_[i]; }
  int type_index(PlayerId i, const std::string& label) const;  // throws
  int nature_index(const std::string& label) const;            // throws

  int num_states() const { return num_states_; }
  int flatten(const PayoffState& s) const;
  PayoffState unflatten(int flat) const;

  const Rat& utility(PlayerId i, int terminal_idx, int flat_state) const;
  void set_utility(PlayerId i, int terminal_idx, int flat_state, Rat v);
  void set_utility(PlayerId i, int terminal_idx, const PayoffState& s, Rat v) {
    set_utility(i, terminal_idx, flatten(s), std::move(v));
  }

  ValidationReport validate(const ExtensiveForm& form) const;

  // Canonical content key; equal keys mean the structures are identical
  // (labels and utilities alike).
  std::string content_key() const;

 private:
  int num_players_ = 0;
  int num_terminals_ = 0;
  int num_states_ = 0;
  std::vector<std::string> nature_states_;
  std::vector<std::vector<std::string>> payoff_types_;
  std::vector<Rat> util_;  // [(i * NZ + z) * NS + state]
};

// One profile of utility functions: (player, terminal) -> payoff, player-major.
using UtilityProfile = std::vector<Rat>;

// Canonical representation: the structure's utility-profile content with the
// labels stripped away.
struct CanonicalRepresentation {
  int num_players = 0;
  int num_terminals = 0;
  std::vector<UtilityProfile> level0;           // sorted, deduplicated
  std::vector<std::vector<std::vector<int>>> per_player;  // player -> family of slices
                                                          // (each slice: sorted level0 indices)
};

CanonicalRepresentation canonicalize(const StandardPayoffStructure& s);

// Hausdorff distance between canonical representations under the sup norm on
// utility profiles; the per-player families use the Hausdorff-of-Hausdorff
// lift. Throws when the representations live on different forms.
Rat hausdorff_distance(const CanonicalRepresentation& a, const CanonicalRepresentation& b);

// Strict conditional dominance of s_i at payoff state θ: at every own-reachable
// history, against every opponent profile reaching it, s_i beats any strategy
// choosing differently there.
bool is_conditionally_dominant(const ExtensiveForm& form, const StandardPayoffStructure& st,
                               int flat_state, PlayerId i, StrategyIdx s);

struct RichnessResult {
  bool rich = false;
  // (player, payoff type, strategy) -> witness payoff type
  std::map<std::tuple<PlayerId, int, StrategyIdx>, int> witness;
};

// Richness: for every (payoff type, strategy) there is a witness type that
// makes the strategy conditionally dominant at every state carrying it, while
// leaving every opponent's payoffs untouched.
RichnessResult is_rich(const ExtensiveForm& form, const StandardPayoffStructure& st);

}  // namespace rationalizer

#endif  // RATIONALIZER_PAYOFFS_HPP
