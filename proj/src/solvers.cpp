#include "rationalizer/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <set>
#include <stdexcept>
#include <thread>

namespace rationalizer {

std::string concept_name(SolutionConcept c) {
  switch (c) {
    case SolutionConcept::kEfr: return "efr";
    case SolutionConcept::kBackward: return "br";
    case SolutionConcept::kStrictEfr: return "sefr";
    case SolutionConcept::kIcr: return "icr";
  }
  return "?";
}

const std::vector<StrategyIdx>& SolutionTrace::set_at(int round, const ViewTypeKey& key) const {
  return rounds.at(round).at(key);
}

const std::vector<StrategyIdx>& SolutionTrace::root_set(PlayerId i) const {
  return rounds.back().at(roots.at(i));
}

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || n <= 1) {
    for (int k = 0; k < n; ++k) body(k);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      int k = next.fetch_add(1);
      if (k >= n) return;
      body(k);
    }
  };
  std::vector<std::thread> pool;
  int spawn = std::min(threads, n);
  pool.reserve(spawn);
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

// One (view, type) node of the ascription closure, with its ready-made
// belief universe.
struct ViewType {
  ViewTypeKey key;
  StructurePtr node;
  TypeStructurePtr types;
  std::unique_ptr<BeliefUniverse> universe;
};

struct Solve {
  const ExtensiveForm& form;
  const ModelProfile& models;
  SolutionConcept kind;
  SolverOptions opts;

  std::vector<ViewType> vts;
  std::map<ViewTypeKey, int> index_of;
  // Per view-type: the key of each opponent's ascribed (view, type) pair,
  // indexed by (opponent slot, ts type index).
  std::vector<std::map<std::pair<int, int>, ViewTypeKey>> ascribed_key;

  std::vector<RoundSets> rounds;
  SolutionTrace trace;

  explicit Solve(const ExtensiveForm& f, const ModelProfile& m, SolutionConcept c,
                 const SolverOptions& o)
      : form(f), models(m), kind(c), opts(o) {}

  void collect_views() {
    for (int mi = 0; mi < static_cast<int>(models.size()); ++mi) {
      const auto& model = models[mi];
      if (model.structure->owner() != mi)
        throw std::invalid_argument("model profile must be ordered by owner");
      if (!type_consistency(model.structure, *model.types, model.root_type))
        throw std::invalid_argument("root type inconsistent with its hierarchy");
      // Walk the ascription closure of this model.
      std::set<std::string> seen;
      std::vector<StructurePtr> stack{model.structure};
      while (!stack.empty()) {
        auto node = stack.back();
        stack.pop_back();
        if (!seen.insert(node->key()).second) continue;
        for (PlayerId j = 0; j < form.num_players(); ++j)
          if (j != node->owner()) stack.push_back(node->ascription(j));
        for (int t : consistent_types(node, *model.types)) {
          ViewType vt;
          vt.key = {mi, node->key(), node->owner(), t};
          vt.node = node;
          vt.types = model.types;
          vt.universe = std::make_unique<BeliefUniverse>(
              form, SubjectiveModel{node, model.types,
                                    model.types->type(node->owner(), t).label});
          index_of[vt.key] = static_cast<int>(vts.size());
          vts.push_back(std::move(vt));
        }
      }
      ViewTypeKey root{mi, model.structure->key(), model.structure->owner(),
                       model.types->require_type(model.structure->owner(), model.root_type)};
      if (!index_of.count(root))
        throw std::invalid_argument("root type inconsistent with its hierarchy");
      trace.roots.push_back(root);
    }
    for (auto& vt : vts) {
      std::map<std::pair<int, int>, ViewTypeKey> keys;
      const auto& opp = vt.universe->opponents();
      for (std::size_t oj = 0; oj < opp.size(); ++oj) {
        auto sub = vt.node->ascription(opp[oj])->key();
        for (int t : vt.universe->opponent_types()[oj])
          keys[{static_cast<int>(oj), t}] = ViewTypeKey{vt.key.model, sub, opp[oj], t};
      }
      ascribed_key.push_back(std::move(keys));
    }
  }

  // Does the atom lie in the opponents' correspondence graph of the round?
  bool atom_in_graph(const ViewType& vt, int vtIdx, const BeliefUniverse::Atom& atom,
                     const RoundSets& sets) const {
    for (std::size_t oj = 0; oj < vt.universe->opponents().size(); ++oj) {
      const auto& key = ascribed_key[vtIdx].at({static_cast<int>(oj), atom.types[oj]});
      const auto& surviving = sets.at(key);
      if (!std::binary_search(surviving.begin(), surviving.end(), atom.strategies[oj]))
        return false;
    }
    return true;
  }

  // Atom filter for the backward concept: every opponent's component must be
  // continuation-equivalent at h to something the round still allows.
  bool atom_backward_ok(const ViewType& vt, int vtIdx, const BeliefUniverse::Atom& atom, NodeId h,
                        const RoundSets& sets) const {
    for (std::size_t oj = 0; oj < vt.universe->opponents().size(); ++oj) {
      PlayerId j = vt.universe->opponents()[oj];
      const auto& key = ascribed_key[vtIdx].at({static_cast<int>(oj), atom.types[oj]});
      const auto& surviving = sets.at(key);
      auto cls = form.continuation_class(j, atom.strategies[oj], h);
      bool hit = false;
      for (StrategyIdx c : cls)
        if (std::binary_search(surviving.begin(), surviving.end(), c)) { hit = true; break; }
      if (!hit) return false;
    }
    return true;
  }

  Restrictions build_restrictions(int vtIdx, int upto_round) const {
    const auto& vt = vts[vtIdx];
    const auto& u = *vt.universe;
    Restrictions r = Restrictions::free_all(u);
    int P = static_cast<int>(u.conditioning().size());
    switch (kind) {
      case SolutionConcept::kEfr:
      case SolutionConcept::kStrictEfr: {
        for (int pos = 0; pos < P; ++pos) {
          // Highest round whose graph still reaches this history.
          for (int ell = upto_round; ell >= 1; --ell) {
            std::vector<bool> mask(u.num_atoms(), false);
            bool hit = false;
            for (int atom : u.atoms_reaching(pos))
              if (atom_in_graph(vt, vtIdx, u.atom(atom), rounds[ell])) {
                hit = true;
                break;
              }
            if (!hit) continue;
            for (int atom = 0; atom < u.num_atoms(); ++atom)
              mask[atom] = atom_in_graph(vt, vtIdx, u.atom(atom), rounds[ell]);
            r.allowed[pos] = std::move(mask);
            break;
          }
        }
        break;
      }
      case SolutionConcept::kBackward: {
        for (int pos = 0; pos < P; ++pos) {
          std::vector<bool> mask(u.num_atoms(), false);
          for (int atom = 0; atom < u.num_atoms(); ++atom)
            mask[atom] =
                atom_backward_ok(vt, vtIdx, u.atom(atom), u.conditioning()[pos], rounds[upto_round]);
          r.allowed[pos] = std::move(mask);
        }
        break;
      }
      case SolutionConcept::kIcr: {
        int pos = u.cond_pos(form.root());
        std::vector<bool> mask(u.num_atoms(), false);
        for (int atom = 0; atom < u.num_atoms(); ++atom)
          mask[atom] = atom_in_graph(vt, vtIdx, u.atom(atom), rounds[upto_round]);
        r.allowed[pos] = std::move(mask);
        break;
      }
    }
    return r;
  }

  void run() {
    collect_views();
    JustifyMode mode =
        kind == SolutionConcept::kStrictEfr ? JustifyMode::kStrict : JustifyMode::kWeak;
    OptimalityScope scope = OptimalityScope::kReachable;
    if (kind == SolutionConcept::kBackward) scope = OptimalityScope::kAllOwn;
    if (kind == SolutionConcept::kIcr) scope = OptimalityScope::kExAnte;

    RoundSets full;
    long long eliminations = 0;
    for (const auto& vt : vts) {
      std::vector<StrategyIdx> all(form.num_strategies(vt.key.player));
      for (int s = 0; s < form.num_strategies(vt.key.player); ++s) all[s] = s;
      eliminations += std::max(0, form.num_strategies(vt.key.player) - 1);
      full[vt.key] = std::move(all);
    }
    rounds.push_back(std::move(full));
    int budget = opts.max_rounds > 0 ? opts.max_rounds : static_cast<int>(eliminations) + 2;

    trace.kind = kind;
    while (true) {
      int k = static_cast<int>(rounds.size()) - 1;
      // Queries: each surviving (view, type, strategy) triple.
      struct Query {
        int vt;
        StrategyIdx s;
      };
      std::vector<Query> queries;
      std::vector<Restrictions> restrictions(vts.size());
      for (std::size_t v = 0; v < vts.size(); ++v) {
        restrictions[v] = build_restrictions(static_cast<int>(v), k);
        for (StrategyIdx s : rounds[k].at(vts[v].key))
          queries.push_back({static_cast<int>(v), s});
      }
      std::vector<std::optional<Cps>> results(queries.size());
      parallel_for(static_cast<int>(queries.size()), opts.threads, [&](int q) {
        const auto& vt = vts[queries[q].vt];
        try {
          results[q] = justifiable(*vt.universe, queries[q].s, restrictions[queries[q].vt], mode,
                                   scope);
        } catch (const InadmissibleRestriction&) {
          results[q] = std::nullopt;
        }
      });

      RoundSets next;
      std::map<ViewTypeKey, std::map<StrategyIdx, Cps>> wits;
      for (const auto& vt : vts) next[vt.key] = {};
      for (std::size_t q = 0; q < queries.size(); ++q) {
        if (!results[q]) continue;
        const auto& key = vts[queries[q].vt].key;
        next[key].push_back(queries[q].s);
        wits[key][queries[q].s] = std::move(*results[q]);
      }
      bool changed = next != rounds[k];
      trace.witnesses = std::move(wits);
      if (!changed) {
        trace.fixpoint_round = k;
        break;
      }
      rounds.push_back(std::move(next));
      if (static_cast<int>(rounds.size()) > budget) {
        trace.budget_exceeded = true;
        trace.fixpoint_round = static_cast<int>(rounds.size()) - 1;
        break;
      }
    }
    trace.rounds = std::move(rounds);
  }
};

}  // namespace

SolutionTrace solve(const ExtensiveForm& form, const ModelProfile& models, SolutionConcept c,
                    const SolverOptions& opts) {
  if (static_cast<int>(models.size()) != form.num_players())
    throw std::invalid_argument("one subjective model per player required");
  Solve s(form, models, c, opts);
  s.run();
  return std::move(s.trace);
}

std::vector<NodeId> trace_outcomes(const ExtensiveForm& form, const SolutionTrace& trace) {
  std::vector<std::vector<StrategyIdx>> sets;
  for (PlayerId i = 0; i < form.num_players(); ++i) sets.push_back(trace.root_set(i));
  std::set<NodeId> outcomes;
  std::vector<std::size_t> cursor(sets.size(), 0);
  for (const auto& s : sets)
    if (s.empty()) return {};
  while (true) {
    std::vector<StrategyIdx> profile(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) profile[i] = sets[i][cursor[i]];
    outcomes.insert(form.outcome(profile, form.root()));
    std::size_t i = 0;
    for (; i < sets.size(); ++i) {
      if (++cursor[i] < sets[i].size()) break;
      cursor[i] = 0;
    }
    if (i == sets.size()) break;
  }
  return {outcomes.begin(), outcomes.end()};
}

std::vector<NodeId> reachable_under(const ExtensiveForm& form, const SubjectiveModel& observer,
                                    const CorrespondenceFn& corr) {
  PlayerId i = observer.structure->owner();
  std::vector<NodeId> out;
  for (NodeId h : form.conditioning_histories(i)) {
    bool ok = true;
    for (PlayerId j = 0; j < form.num_players() && ok; ++j) {
      if (j == i) continue;
      bool hit = false;
      for (int t : consistent_types(observer.structure->ascription(j), *observer.types)) {
        for (StrategyIdx s : corr(j, t))
          if (form.reaches(j, s, h)) { hit = true; break; }
        if (hit) break;
      }
      ok = hit;
    }
    if (ok) out.push_back(h);
  }
  return out;
}

std::vector<StrategyIdx> equivalent_on_reachable(const ExtensiveForm& form,
                                                 const ModelProfile& models, PlayerId i,
                                                 const SolutionTrace& trace, int round,
                                                 StrategyIdx s) {
  auto reach = reachable_under_trace(form, models, i, trace, round);
  std::vector<StrategyIdx> out;
  for (StrategyIdx alt = 0; alt < form.num_strategies(i); ++alt) {
    bool same = true;
    for (NodeId h : reach) {
      if (!form.is_active(i, h)) continue;
      if (form.action_at(i, alt, h) != form.action_at(i, s, h)) { same = false; break; }
    }
    if (same) out.push_back(alt);
  }
  return out;
}

std::vector<int> full_support_types(const ExtensiveForm& form, const ModelProfile& models,
                                    PlayerId i, const SolutionTrace& trace, StrategyIdx s) {
  int prev = std::max(0, trace.fixpoint_round - 1);
  auto reach = reachable_under_trace(form, models, i, trace, prev);
  std::vector<int> out;
  for (int t : consistent_types(models[i].structure, *models[i].types)) {
    ViewTypeKey key{i, models[i].structure->key(), i, t};
    auto vit = trace.witnesses.find(key);
    if (vit == trace.witnesses.end()) continue;
    auto sit = vit->second.find(s);
    if (sit == vit->second.end()) continue;
    BeliefUniverse u(form, SubjectiveModel{models[i].structure, models[i].types,
                                           models[i].types->type(i, t).label});
    const auto& prior = sit->second.beliefs[u.cond_pos(form.root())];
    bool full = true;
    for (NodeId h : reach) {
      Rat mass(0);
      for (int k = 0; k < u.num_atoms(); ++k)
        if (prior[k] != 0 && u.atom_reaches(k, h)) mass += prior[k];
      if (mass == 0) { full = false; break; }
    }
    if (full) out.push_back(t);
  }
  return out;
}

std::vector<NodeId> reachable_under_trace(const ExtensiveForm& form, const ModelProfile& models,
                                          PlayerId observer, const SolutionTrace& trace,
                                          int round) {
  const auto& model = models[observer];
  static const std::vector<StrategyIdx> kEmpty;
  auto corr = [&](PlayerId j, int t) -> const std::vector<StrategyIdx>& {
    ViewTypeKey key{observer, model.structure->ascription(j)->key(), j, t};
    auto& sets = trace.rounds.at(std::min<std::size_t>(round, trace.rounds.size() - 1));
    auto it = sets.find(key);
    return it == sets.end() ? kEmpty : it->second;
  };
  return reachable_under(form, model, corr);
}

}  // namespace rationalizer
