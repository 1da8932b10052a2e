#ifndef RATIONALIZER_GAME_TREE_HPP
#define RATIONALIZER_GAME_TREE_HPP

#include <string>
#include <utility>
#include <vector>

namespace rationalizer {

using NodeId = int;
using PlayerId = int;
using StrategyIdx = int;

// Declarative node description used to construct a form. A node with no moves
// is terminal. Children are keyed by the actions of the active players (in
// player order) joined with '+', e.g. "A1" or "A1+x".
struct TreeSpec {
  std::vector<std::pair<std::string, std::vector<std::string>>> moves;
  std::vector<std::pair<std::string, TreeSpec>> children;
};

struct ValidationIssue {
  std::string code;
  std::string where;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

// Full contingent plan: one action index per own history, ordered as
// ExtensiveForm::own_histories(player).
struct Strategy {
  PlayerId player = -1;
  std::vector<int> choices;
  bool operator==(const Strategy&) const = default;
};

// Finite extensive form with observed (possibly simultaneous) actions.
// Immutable once built; node identity is path identity, nodes are stored in
// DFS preorder.
class ExtensiveForm {
 public:
  static ExtensiveForm build(std::vector<std::string> players, const TreeSpec& root_spec);

  int num_players() const { return static_cast<int>(players_.size()); }
  const std::vector<std::string>& players() const { return players_; }
  PlayerId player_index(const std::string& name) const;  // throws on unknown id
  std::vector<PlayerId> opponents(PlayerId i) const;

  int num_nodes() const { return static_cast<int>(parent_.size()); }
  NodeId root() const { return 0; }
  NodeId parent(NodeId n) const { return parent_[n]; }
  bool is_terminal(NodeId n) const { return active_[n].empty(); }
  const std::vector<NodeId>& terminals() const { return terminals_; }
  const std::vector<NodeId>& partials() const { return partials_; }
  int terminal_index(NodeId z) const;  // position within terminals()

  // a ≼ b in the tree order (reflexive).
  bool precedes(NodeId a, NodeId b) const { return a <= b && b < subtree_end_[a]; }
  bool strictly_precedes(NodeId a, NodeId b) const { return a != b && precedes(a, b); }

  const std::string& node_label(NodeId n) const { return label_[n]; }
  const std::vector<PlayerId>& active_players(NodeId n) const { return active_[n]; }
  bool is_active(PlayerId i, NodeId n) const;
  const std::vector<std::string>& actions(NodeId n, PlayerId i) const;
  NodeId child(NodeId n, const std::vector<int>& action_combo) const;

  // H_i, in preorder. Includes h0 when the player is active there.
  const std::vector<NodeId>& own_histories(PlayerId i) const { return own_histories_[i]; }
  // H_i ∪ {h0}: the conditioning family for player i's beliefs.
  const std::vector<NodeId>& conditioning_histories(PlayerId i) const {
    return conditioning_[i];
  }

  int num_strategies(PlayerId i) const { return static_cast<int>(strategies_[i].size()); }
  const Strategy& strategy(PlayerId i, StrategyIdx s) const { return strategies_[i][s]; }
  const std::string& strategy_name(PlayerId i, StrategyIdx s) const { return strategy_names_[i][s]; }
  StrategyIdx strategy_index(const Strategy& s) const;
  StrategyIdx strategy_by_name(PlayerId i, const std::string& name) const;  // throws
  // Action index chosen at h, or -1 when i is inactive at h.
  int action_at(PlayerId i, StrategyIdx s, NodeId h) const;

  // Terminal reached by replaying the profile from `start` (one strategy per player).
  NodeId outcome(const std::vector<StrategyIdx>& profile, NodeId start) const;

  bool reaches(PlayerId i, StrategyIdx s, NodeId h) const;  // s ∈ S_i(h)
  std::vector<StrategyIdx> reaching_strategies(PlayerId i, NodeId h) const;  // S_i(h)
  std::vector<NodeId> own_reachable(PlayerId i, StrategyIdx s) const;        // H_i(s_i)

  // [s_i]: strategies agreeing with s on H_i(s). Always contains s.
  std::vector<StrategyIdx> outcome_class(PlayerId i, StrategyIdx s) const;
  // [s_j]_h: strategies agreeing with s at all of j's nodes weakly following h.
  std::vector<StrategyIdx> continuation_class(PlayerId j, StrategyIdx s, NodeId h) const;

  ValidationReport validate() const;

 private:
  std::vector<std::string> players_;
  std::vector<NodeId> parent_;
  std::vector<int> subtree_end_;
  std::vector<std::string> label_;
  std::vector<std::vector<PlayerId>> active_;              // per node, ascending
  std::vector<std::vector<std::vector<std::string>>> act_; // node -> active slot -> actions
  std::vector<std::vector<NodeId>> children_;              // node -> combo index -> child
  std::vector<int> incoming_combo_;                        // combo index taken at parent
  std::vector<NodeId> terminals_, partials_;
  std::vector<std::vector<NodeId>> own_histories_;         // per player
  std::vector<std::vector<NodeId>> conditioning_;          // per player
  std::vector<std::vector<Strategy>> strategies_;          // per player, canonical order
  std::vector<std::vector<std::string>> strategy_names_;
  std::vector<std::vector<int>> own_pos_;  // per player: node -> index in own_histories, or -1

  int combo_index(NodeId n, const std::vector<int>& combo) const;
  std::vector<int> combo_decode(NodeId n, int combo) const;
};

}  // namespace rationalizer

#endif  // RATIONALIZER_GAME_TREE_HPP
