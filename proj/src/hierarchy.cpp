#include "rationalizer/hierarchy.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace rationalizer {

namespace {

std::unordered_map<std::string, std::weak_ptr<const SubjectiveStructure>>& intern_registry() {
  static std::unordered_map<std::string, std::weak_ptr<const SubjectiveStructure>> reg;
  return reg;
}
std::mutex& intern_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

StructurePtr SubjectiveStructure::common_knowledge(PlayerId owner, StandardPayoffStructure level1) {
  return make(owner, std::move(level1), {});
}

StructurePtr SubjectiveStructure::make(PlayerId owner, StandardPayoffStructure level1,
                                       std::map<PlayerId, StructurePtr> ascriptions) {
  for (const auto& [j, sub] : ascriptions) {
    if (j == owner) throw std::invalid_argument("a hierarchy cannot ascribe to its owner");
    if (!sub) throw std::invalid_argument("null ascription");
    if (sub->owner() != j) throw std::invalid_argument("ascription owner mismatch");
  }
  std::ostringstream key;
  key << (ascriptions.empty() ? "ck" : "nd") << "|" << owner << "|" << level1.content_key() << "|";
  for (const auto& [j, sub] : ascriptions) key << j << "=" << sub->key() << "|";
  std::string k = key.str();

  std::lock_guard<std::mutex> lock(intern_mutex());
  auto& reg = intern_registry();
  if (auto it = reg.find(k); it != reg.end())
    if (auto live = it->second.lock()) return live;

  std::shared_ptr<SubjectiveStructure> node(new SubjectiveStructure());
  node->owner_ = owner;
  node->level1_ = std::make_shared<const StandardPayoffStructure>(std::move(level1));
  node->ascriptions_ = std::move(ascriptions);
  node->depth_ = 1;
  for (const auto& [j, sub] : node->ascriptions_)
    node->depth_ = std::max(node->depth_, sub->depth() + 1);
  node->key_ = std::move(k);
  reg[node->key_] = node;
  return node;
}

StructurePtr SubjectiveStructure::ascription(PlayerId j) const {
  if (j == owner_) throw std::invalid_argument("no self ascription");
  if (is_ck_tail()) return common_knowledge(j, *level1_);
  auto it = ascriptions_.find(j);
  if (it == ascriptions_.end()) throw std::invalid_argument("missing ascription");
  return it->second;
}

void TypeStructure::add_type(PlayerId i, TypeDef def) {
  if (type_index(i, def.label) >= 0)
    throw std::invalid_argument("duplicate type label '" + def.label + "'");
  types_[i].push_back(std::move(def));
}

int TypeStructure::type_index(PlayerId i, const std::string& label) const {
  for (int k = 0; k < num_types(i); ++k)
    if (types_[i][k].label == label) return k;
  return -1;
}

int TypeStructure::require_type(PlayerId i, const std::string& label) const {
  int k = type_index(i, label);
  if (k < 0) throw std::invalid_argument("dangling type label '" + label + "'");
  return k;
}

ValidationReport TypeStructure::validate() const {
  ValidationReport rep;
  for (PlayerId i = 0; i < num_players(); ++i) {
    for (const auto& t : types_[i]) {
      Rat total(0);
      for (const auto& atom : t.belief) {
        if (atom.prob < 0) rep.issues.push_back({"negative-mass", t.label, "negative probability"});
        total += atom.prob;
        if (static_cast<int>(atom.opponent_types.size()) != num_players() - 1) {
          rep.issues.push_back({"arity", t.label, "belief atom must name every opponent"});
          continue;
        }
        int slot = 0;
        for (PlayerId j = 0; j < num_players(); ++j) {
          if (j == i) continue;
          if (type_index(j, atom.opponent_types[slot]) < 0)
            rep.issues.push_back(
                {"dangling-label", t.label, "unknown type '" + atom.opponent_types[slot] + "'"});
          ++slot;
        }
      }
      if (total != Rat(1))
        rep.issues.push_back({"mass", t.label, "belief mass is " + rat_to_string(total)});
    }
  }
  return rep;
}

namespace {

// Player j's own-utility slices: per payoff type of j, the set of j's utility
// vectors over terminals as nature and the other players' types vary.
std::set<std::set<std::vector<Rat>>> own_slices(const StandardPayoffStructure& s, PlayerId j) {
  std::set<std::set<std::vector<Rat>>> family;
  int nt = static_cast<int>(s.payoff_types(j).size());
  for (int tj = 0; tj < nt; ++tj) {
    std::set<std::vector<Rat>> slice;
    for (int flat = 0; flat < s.num_states(); ++flat) {
      if (s.unflatten(flat).types[j] != tj) continue;
      std::vector<Rat> u;
      u.reserve(s.num_terminals());
      for (int z = 0; z < s.num_terminals(); ++z) u.push_back(s.utility(j, z, flat));
      slice.insert(std::move(u));
    }
    family.insert(std::move(slice));
  }
  return family;
}

template <typename Fn>
void walk_structure(const StructurePtr& root, Fn&& fn) {
  std::set<std::string> seen;
  std::vector<StructurePtr> stack{root};
  while (!stack.empty()) {
    auto node = stack.back();
    stack.pop_back();
    if (!seen.insert(node->key()).second) continue;
    fn(node);
    if (node->is_ck_tail()) continue;
    for (PlayerId j = 0; j < node->level1().num_players(); ++j) {
      if (j == node->owner()) continue;
      stack.push_back(node->ascription(j));
    }
  }
}

}  // namespace

ValidationReport validate_hierarchy(const ExtensiveForm& form, const StructurePtr& node,
                                    bool unawareness_lint) {
  ValidationReport rep;
  walk_structure(node, [&](const StructurePtr& n) {
    auto sub = n->level1().validate(form);
    rep.issues.insert(rep.issues.end(), sub.issues.begin(), sub.issues.end());
    if (n->is_ck_tail()) return;
    for (PlayerId j = 0; j < n->level1().num_players(); ++j) {
      if (j == n->owner()) continue;
      const auto& ascribed = n->ascription(j)->level1();
      auto upper = own_slices(n->level1(), j);
      auto lower = own_slices(ascribed, j);
      for (const auto& slice : upper) {
        if (!lower.count(slice)) {
          rep.issues.push_back(
              {"coherence", "owner " + std::to_string(n->owner()),
               "a payoff-type slice of player " + std::to_string(j) +
                   " in level1 is absent from the structure ascribed to them"});
          break;
        }
      }
      if (unawareness_lint) {
        std::set<std::string> upper_nature(n->level1().nature_states().begin(),
                                           n->level1().nature_states().end());
        for (const auto& s : ascribed.nature_states())
          if (!upper_nature.count(s))
            rep.issues.push_back({"lint-awareness", "owner " + std::to_string(n->owner()),
                                  "ascribed nature state '" + s + "' unknown at this level"});
      }
    }
  });
  return rep;
}

namespace {

using ConsistencyKey = std::tuple<std::string, PlayerId, int>;

// Single falsification sweep under the current refuted set. Cycles are
// answered optimistically; the caller iterates to the greatest fixpoint.
bool consistent_sweep(const StructurePtr& node, const TypeStructure& ts, PlayerId player, int idx,
                      const std::set<ConsistencyKey>& refuted, std::set<ConsistencyKey>& path) {
  ConsistencyKey key{node->key(), player, idx};
  if (refuted.count(key)) return false;
  if (path.count(key)) return true;
  path.insert(key);
  bool ok = true;

  const auto& def = ts.type(player, idx);
  const auto& lvl = node->level1();
  bool own_ok = false;
  for (const auto& pt : lvl.payoff_types(player))
    if (pt == def.payoff_type) own_ok = true;
  if (!own_ok) ok = false;

  for (const auto& atom : def.belief) {
    if (!ok) break;
    if (atom.prob == 0) continue;
    bool nature_ok = false;
    for (const auto& n : lvl.nature_states())
      if (n == atom.nature) nature_ok = true;
    if (!nature_ok) { ok = false; break; }
    int slot = 0;
    for (PlayerId j = 0; j < ts.num_players(); ++j) {
      if (j == player) continue;
      const std::string& label = atom.opponent_types[slot++];
      int jidx = ts.require_type(j, label);
      bool proj_ok = false;
      for (const auto& pt : lvl.payoff_types(j))
        if (pt == ts.type(j, jidx).payoff_type) proj_ok = true;
      if (!proj_ok) { ok = false; break; }
      if (!consistent_sweep(node->ascription(j), ts, j, jidx, refuted, path)) { ok = false; break; }
    }
  }
  path.erase(key);
  return ok;
}

}  // namespace

bool type_consistency(const StructurePtr& node, const TypeStructure& ts,
                      const std::string& type_label) {
  PlayerId player = node->owner();
  int idx = ts.require_type(player, type_label);

  // Greatest fixpoint: repeat sweeps, collecting refutations, until stable.
  std::set<ConsistencyKey> refuted;
  while (true) {
    std::set<ConsistencyKey> next = refuted;
    bool changed = false;
    std::vector<std::pair<StructurePtr, std::pair<PlayerId, int>>> agenda;
    walk_structure(node, [&](const StructurePtr& n) {
      for (int t = 0; t < ts.num_types(n->owner()); ++t)
        agenda.push_back({n, {n->owner(), t}});
    });
    for (const auto& [n, pt] : agenda) {
      ConsistencyKey key{n->key(), pt.first, pt.second};
      if (next.count(key)) continue;
      std::set<ConsistencyKey> path;
      if (!consistent_sweep(n, ts, pt.first, pt.second, refuted, path)) {
        next.insert(key);
        changed = true;
      }
    }
    refuted = std::move(next);
    if (!changed) break;
  }
  std::set<ConsistencyKey> path;
  return consistent_sweep(node, ts, player, idx, refuted, path);
}

std::vector<int> consistent_types(const StructurePtr& node, const TypeStructure& ts) {
  std::vector<int> out;
  for (int k = 0; k < ts.num_types(node->owner()); ++k)
    if (type_consistency(node, ts, ts.type(node->owner(), k).label)) out.push_back(k);
  return out;
}

namespace {

bool order_richness(const ExtensiveForm& form, const StructurePtr& node, int k,
                    std::map<std::pair<std::string, int>, bool>& memo) {
  auto key = std::make_pair(node->key(), k);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  bool ok;
  if (k == 1) {
    ok = is_rich(form, node->level1()).rich;
  } else {
    ok = true;
    for (PlayerId j = 0; j < node->level1().num_players() && ok; ++j) {
      if (j == node->owner()) continue;
      ok = order_richness(form, node->ascription(j), k - 1, memo);
    }
  }
  memo[key] = ok;
  return ok;
}

Rat structure_order_distance(const StructurePtr& a, const StructurePtr& b, int k) {
  if (k == 1) return hausdorff_distance(canonicalize(a->level1()), canonicalize(b->level1()));
  Rat worst(0);
  for (PlayerId j = 0; j < a->level1().num_players(); ++j) {
    if (j == a->owner()) continue;
    worst = std::max(worst, structure_order_distance(a->ascription(j), b->ascription(j), k - 1));
  }
  return worst;
}

// Order-m type classes across two type structures: bisimulation refinement on
// payoff-type labels and pushforward beliefs.
struct TypeClassifier {
  const TypeStructure* ts[2];
  int num_players;
  std::vector<std::map<std::tuple<int, PlayerId, int>, int>> classes;

  void refine_to(int depth) {
    if (classes.empty()) {
      classes.emplace_back();
      for (int side = 0; side < 2; ++side)
        for (PlayerId i = 0; i < num_players; ++i)
          for (int t = 0; t < ts[side]->num_types(i); ++t) classes[0][{side, i, t}] = 0;
    }
    while (static_cast<int>(classes.size()) <= depth) {
      int prev = static_cast<int>(classes.size()) - 1;
      std::map<std::string, int> sig_ids;
      std::map<std::tuple<int, PlayerId, int>, int> next;
      for (int side = 0; side < 2; ++side)
        for (PlayerId i = 0; i < num_players; ++i)
          for (int t = 0; t < ts[side]->num_types(i); ++t) {
            std::ostringstream sig;
            sig << ts[side]->type(i, t).payoff_type << "#";
            for (const auto& [at, p] : pushforward(side, i, t, prev))
              sig << at << "=" << rat_to_string(p) << ";";
            auto [it, fresh] = sig_ids.emplace(sig.str(), static_cast<int>(sig_ids.size()));
            (void)fresh;
            next[{side, i, t}] = it->second;
          }
      classes.push_back(std::move(next));
    }
  }

  std::map<std::string, Rat> pushforward(int side, PlayerId i, int t, int class_depth) {
    std::map<std::string, Rat> push;
    for (const auto& atom : ts[side]->type(i, t).belief) {
      if (atom.prob == 0) continue;
      std::ostringstream at;
      at << atom.nature << "|";
      int slot = 0;
      for (PlayerId j = 0; j < num_players; ++j) {
        if (j == i) continue;
        int jt = ts[side]->require_type(j, atom.opponent_types[slot++]);
        at << classes[class_depth].at({side, j, jt}) << ",";
      }
      push[at.str()] += atom.prob;
    }
    return push;
  }

  Rat tv(PlayerId i, int ta, int tb, int class_depth) {
    auto pa = pushforward(0, i, ta, class_depth);
    auto pb = pushforward(1, i, tb, class_depth);
    Rat l1(0);
    for (const auto& [k, v] : pa) {
      auto it = pb.find(k);
      l1 += rat_abs(v - (it == pb.end() ? Rat(0) : it->second));
    }
    for (const auto& [k, v] : pb)
      if (!pa.count(k)) l1 += v;
    return l1 / 2;
  }
};

}  // namespace

std::optional<int> higher_order_richness(const ExtensiveForm& form, const StructurePtr& node) {
  std::map<std::pair<std::string, int>, bool> memo;
  for (int k = 1; k <= node->depth(); ++k)
    if (order_richness(form, node, k, memo)) return k;
  return std::nullopt;
}

Rat model_distance(const ModelProfile& a, const ModelProfile& b) {
  if (a.size() != b.size()) throw std::invalid_argument("model profiles of different size");
  int np = static_cast<int>(a.size());
  Rat worst(0);
  for (PlayerId i = 0; i < np; ++i) {
    if (a[i].structure->level1().num_terminals() != b[i].structure->level1().num_terminals())
      throw std::invalid_argument("models live on different forms");
    int depth = std::max(a[i].structure->depth(), b[i].structure->depth());
    TypeClassifier cls{{a[i].types.get(), b[i].types.get()}, np, {}};
    cls.refine_to(depth);
    int ra = a[i].types->require_type(i, a[i].root_type);
    int rb = b[i].types->require_type(i, b[i].root_type);
    Rat sum(0);
    Rat weight(1);
    for (int k = 1; k <= depth; ++k) {
      weight /= 2;
      sum += weight * (structure_order_distance(a[i].structure, b[i].structure, k) +
                       cls.tv(i, ra, rb, k - 1));
    }
    worst = std::max(worst, sum);
  }
  return worst;
}

}  // namespace rationalizer
