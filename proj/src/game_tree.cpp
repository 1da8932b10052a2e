#include "rationalizer/game_tree.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rationalizer {

std::string ValidationReport::to_string() const {
  if (issues.empty()) return "ok";
  std::ostringstream os;
  for (const auto& it : issues) os << "[" << it.code << "] at " << it.where << ": " << it.detail << "\n";
  return os.str();
}

namespace {

std::string join_combo(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += "+";
    out += parts[k];
  }
  return out;
}

}  // namespace

ExtensiveForm ExtensiveForm::build(std::vector<std::string> players, const TreeSpec& root_spec) {
  if (players.empty()) throw std::invalid_argument("extensive form needs at least one player");
  {
    auto sorted = players;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("duplicate player identifier");
  }

  ExtensiveForm f;
  f.players_ = std::move(players);

  // Recursive descent, assigning preorder ids.
  struct Rec {
    ExtensiveForm& f;
    void visit(const TreeSpec& spec, NodeId parent, int combo, const std::string& label) {
      NodeId id = static_cast<NodeId>(f.parent_.size());
      f.parent_.push_back(parent);
      f.subtree_end_.push_back(-1);
      f.label_.push_back(label);
      f.incoming_combo_.push_back(combo);
      f.active_.emplace_back();
      f.act_.emplace_back();
      f.children_.emplace_back();

      std::vector<std::pair<PlayerId, const std::vector<std::string>*>> moves;
      for (const auto& [pname, acts] : spec.moves) {
        PlayerId p = f.player_index(pname);
        if (acts.empty()) throw std::invalid_argument("empty action list for " + pname + " at " + label);
        auto s = acts;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
          throw std::invalid_argument("duplicate action for " + pname + " at " + label);
        moves.emplace_back(p, &acts);
      }
      std::sort(moves.begin(), moves.end());
      for (std::size_t k = 1; k < moves.size(); ++k)
        if (moves[k].first == moves[k - 1].first)
          throw std::invalid_argument("player listed twice at " + label);
      for (auto& [p, acts] : moves) {
        f.active_[id].push_back(p);
        f.act_[id].push_back(*acts);
      }

      if (!moves.empty()) {
        // Children must be in bijection with the action product.
        int total = 1;
        for (const auto& a : f.act_[id]) total *= static_cast<int>(a.size());
        std::map<std::string, const TreeSpec*> by_key;
        for (const auto& [key, sub] : spec.children) {
          if (!by_key.emplace(key, &sub).second)
            throw std::invalid_argument("duplicate child key '" + key + "' at " + label);
        }
        f.children_[id].assign(total, -1);
        for (int c = 0; c < total; ++c) {
          auto combo_actions = f.combo_decode(id, c);
          std::vector<std::string> names;
          for (std::size_t slot = 0; slot < combo_actions.size(); ++slot)
            names.push_back(f.act_[id][slot][combo_actions[slot]]);
          std::string key = join_combo(names);
          auto it = by_key.find(key);
          if (it == by_key.end())
            throw std::invalid_argument("missing child '" + key + "' at " + label);
          std::string child_label =
              label == "h0" ? "(" + key + ")" : label.substr(0, label.size() - 1) + "," + key + ")";
          NodeId child_id = static_cast<NodeId>(f.parent_.size());
          f.children_[id][c] = child_id;
          visit(*it->second, id, c, child_label);
          by_key.erase(it);
        }
        if (!by_key.empty())
          throw std::invalid_argument("extra child '" + by_key.begin()->first + "' at " + label);
      } else if (!spec.children.empty()) {
        throw std::invalid_argument("terminal node with children at " + label);
      }
      f.subtree_end_[id] = static_cast<int>(f.parent_.size());
    }
  } rec{f};
  rec.visit(root_spec, -1, -1, "h0");

  for (NodeId n = 0; n < f.num_nodes(); ++n)
    (f.is_terminal(n) ? f.terminals_ : f.partials_).push_back(n);

  int np = f.num_players();
  f.own_histories_.assign(np, {});
  f.conditioning_.assign(np, {});
  f.own_pos_.assign(np, std::vector<int>(f.num_nodes(), -1));
  for (PlayerId i = 0; i < np; ++i) {
    for (NodeId n : f.partials_)
      if (f.is_active(i, n)) {
        f.own_pos_[i][n] = static_cast<int>(f.own_histories_[i].size());
        f.own_histories_[i].push_back(n);
      }
    f.conditioning_[i] = f.own_histories_[i];
    if (f.conditioning_[i].empty() || f.conditioning_[i][0] != f.root())
      f.conditioning_[i].insert(f.conditioning_[i].begin(), f.root());
  }

  // Strategy enumeration: mixed radix over own histories, earliest node most
  // significant, so e.g. the plans over ({D1,A1},{D2,A2}) come out as
  // D1D2, D1A2, A1D2, A1A2.
  f.strategies_.assign(np, {});
  f.strategy_names_.assign(np, {});
  for (PlayerId i = 0; i < np; ++i) {
    const auto& hs = f.own_histories_[i];
    long long total = 1;
    for (NodeId h : hs) total *= static_cast<long long>(f.actions(h, i).size());
    if (total > 64)
      throw std::invalid_argument("strategy space for " + f.players_[i] + " exceeds 64");
    for (long long code = 0; code < total; ++code) {
      Strategy s;
      s.player = i;
      long long rem = code;
      s.choices.assign(hs.size(), 0);
      for (int k = static_cast<int>(hs.size()) - 1; k >= 0; --k) {
        int na = static_cast<int>(f.actions(hs[k], i).size());
        s.choices[k] = static_cast<int>(rem % na);
        rem /= na;
      }
      std::string name;
      for (std::size_t k = 0; k < hs.size(); ++k) name += f.actions(hs[k], i)[s.choices[k]];
      if (name.empty()) name = "-";
      f.strategy_names_[i].push_back(name);
      f.strategies_[i].push_back(std::move(s));
    }
  }
  return f;
}

PlayerId ExtensiveForm::player_index(const std::string& name) const {
  for (PlayerId i = 0; i < num_players(); ++i)
    if (players_[i] == name) return i;
  throw std::invalid_argument("unknown player id: " + name);
}

std::vector<PlayerId> ExtensiveForm::opponents(PlayerId i) const {
  std::vector<PlayerId> out;
  for (PlayerId j = 0; j < num_players(); ++j)
    if (j != i) out.push_back(j);
  return out;
}

bool ExtensiveForm::is_active(PlayerId i, NodeId n) const {
  const auto& a = active_[n];
  return std::find(a.begin(), a.end(), i) != a.end();
}

const std::vector<std::string>& ExtensiveForm::actions(NodeId n, PlayerId i) const {
  const auto& a = active_[n];
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] == i) return act_[n][k];
  static const std::vector<std::string> kEmpty;
  return kEmpty;
}

int ExtensiveForm::combo_index(NodeId n, const std::vector<int>& combo) const {
  int idx = 0;
  for (std::size_t k = 0; k < combo.size(); ++k)
    idx = idx * static_cast<int>(act_[n][k].size()) + combo[k];
  return idx;
}

std::vector<int> ExtensiveForm::combo_decode(NodeId n, int combo) const {
  std::vector<int> out(act_[n].size(), 0);
  for (int k = static_cast<int>(act_[n].size()) - 1; k >= 0; --k) {
    int na = static_cast<int>(act_[n][k].size());
    out[k] = combo % na;
    combo /= na;
  }
  return out;
}

NodeId ExtensiveForm::child(NodeId n, const std::vector<int>& action_combo) const {
  return children_[n][combo_index(n, action_combo)];
}

int ExtensiveForm::terminal_index(NodeId z) const {
  auto it = std::lower_bound(terminals_.begin(), terminals_.end(), z);
  if (it == terminals_.end() || *it != z) throw std::invalid_argument("not a terminal node");
  return static_cast<int>(it - terminals_.begin());
}

StrategyIdx ExtensiveForm::strategy_index(const Strategy& s) const {
  const auto& all = strategies_[s.player];
  for (StrategyIdx k = 0; k < static_cast<StrategyIdx>(all.size()); ++k)
    if (all[k] == s) return k;
  throw std::invalid_argument("strategy not in canonical enumeration");
}

StrategyIdx ExtensiveForm::strategy_by_name(PlayerId i, const std::string& name) const {
  const auto& names = strategy_names_[i];
  for (StrategyIdx k = 0; k < static_cast<StrategyIdx>(names.size()); ++k)
    if (names[k] == name) return k;
  throw std::invalid_argument("unknown strategy '" + name + "' for " + players_[i]);
}

int ExtensiveForm::action_at(PlayerId i, StrategyIdx s, NodeId h) const {
  int pos = own_pos_[i][h];
  return pos < 0 ? -1 : strategies_[i][s].choices[pos];
}

NodeId ExtensiveForm::outcome(const std::vector<StrategyIdx>& profile, NodeId start) const {
  NodeId n = start;
  while (!is_terminal(n)) {
    std::vector<int> combo(active_[n].size());
    for (std::size_t k = 0; k < active_[n].size(); ++k) {
      PlayerId p = active_[n][k];
      combo[k] = strategies_[p][profile[p]].choices[own_pos_[p][n]];
    }
    n = children_[n][combo_index(n, combo)];
  }
  return n;
}

bool ExtensiveForm::reaches(PlayerId i, StrategyIdx s, NodeId h) const {
  // s ∈ S_i(h): s picks the path action at every own node strictly before h.
  NodeId n = h;
  while (parent_[n] >= 0) {
    NodeId p = parent_[n];
    int pos = own_pos_[i][p];
    if (pos >= 0) {
      auto combo = combo_decode(p, incoming_combo_[n]);
      const auto& a = active_[p];
      int slot = static_cast<int>(std::find(a.begin(), a.end(), i) - a.begin());
      if (strategies_[i][s].choices[pos] != combo[slot]) return false;
    }
    n = p;
  }
  return true;
}

std::vector<StrategyIdx> ExtensiveForm::reaching_strategies(PlayerId i, NodeId h) const {
  std::vector<StrategyIdx> out;
  for (StrategyIdx s = 0; s < num_strategies(i); ++s)
    if (reaches(i, s, h)) out.push_back(s);
  return out;
}

std::vector<NodeId> ExtensiveForm::own_reachable(PlayerId i, StrategyIdx s) const {
  std::vector<NodeId> out;
  for (NodeId h : own_histories_[i])
    if (reaches(i, s, h)) out.push_back(h);
  return out;
}

std::vector<StrategyIdx> ExtensiveForm::outcome_class(PlayerId i, StrategyIdx s) const {
  auto hs = own_reachable(i, s);
  std::vector<StrategyIdx> out;
  for (StrategyIdx t = 0; t < num_strategies(i); ++t) {
    bool same = true;
    for (NodeId h : hs)
      if (action_at(i, t, h) != action_at(i, s, h)) { same = false; break; }
    if (same) out.push_back(t);
  }
  return out;
}

std::vector<StrategyIdx> ExtensiveForm::continuation_class(PlayerId j, StrategyIdx s, NodeId h) const {
  std::vector<StrategyIdx> out;
  for (StrategyIdx t = 0; t < num_strategies(j); ++t) {
    bool same = true;
    for (NodeId hj : own_histories_[j]) {
      if (!precedes(h, hj)) continue;
      if (action_at(j, t, hj) != action_at(j, s, hj)) { same = false; break; }
    }
    if (same) out.push_back(t);
  }
  return out;
}

ValidationReport ExtensiveForm::validate() const {
  ValidationReport rep;
  for (NodeId n : partials_) {
    for (std::size_t k = 0; k < active_[n].size(); ++k) {
      if (act_[n][k].size() < 2)
        rep.issues.push_back({"min-two-actions", label_[n],
                              players_[active_[n][k]] + " has only " +
                                  std::to_string(act_[n][k].size()) + " action"});
    }
    // A player is never the only active one twice in a row.
    if (active_[n].size() == 1 && parent_[n] >= 0) {
      NodeId p = parent_[n];
      if (active_[p].size() == 1 && active_[p][0] == active_[n][0])
        rep.issues.push_back({"consecutive-activity", label_[n],
                              players_[active_[n][0]] + " is sole active player here and at " +
                                  label_[p]});
    }
    for (NodeId c : children_[n])
      if (c < 0)
        rep.issues.push_back({"missing-child", label_[n], "child map incomplete"});
  }
  return rep;
}

}  // namespace rationalizer
