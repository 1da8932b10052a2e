#include "rationalizer/perturb.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace rationalizer {

ExtensiveForm centipede_form() {
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
  return ExtensiveForm::build({"P1", "P2"}, root);
}

StandardPayoffStructure centipede_structure_of(int n, int sign) {
  Rat d1(2);
  if (sign > 0) d1 += rat(1, n);
  if (sign < 0) d1 -= rat(1, n);
  StandardPayoffStructure s(2, 4, {"n0"}, {{"th1"}, {"th2"}});
  const Rat p1[] = {d1, Rat(0), Rat(2), Rat(1)};
  const Rat p2[] = {Rat(0), Rat(0), Rat(-1), Rat(1)};
  for (int z = 0; z < 4; ++z) {
    s.set_utility(0, z, 0, p1[z]);
    s.set_utility(1, z, 0, p2[z]);
  }
  return s;
}

namespace {

TypeStructurePtr centipede_types() {
  TypeStructure ts(2);
  ts.add_type(0, {"t1", "th1", {{"n0", {"t2"}, Rat(1)}}});
  ts.add_type(1, {"t2", "th2", {{"n0", {"t1"}, Rat(1)}}});
  return std::make_shared<const TypeStructure>(std::move(ts));
}

}  // namespace

ModelProfile centipede_models(int n) {
  auto ts = centipede_types();
  if (n <= 0) {
    auto lim = centipede_structure_of(1, 0);
    return {{SubjectiveStructure::common_knowledge(0, lim), ts, "t1"},
            {SubjectiveStructure::common_knowledge(1, lim), ts, "t2"}};
  }
  auto plus = centipede_structure_of(n, +1);
  auto minus = centipede_structure_of(n, -1);
  auto d2 = SubjectiveStructure::common_knowledge(1, plus);
  auto d1 = SubjectiveStructure::make(0, minus, {{1, d2}});
  return {{d1, ts, "t1"}, {d2, ts, "t2"}};
}

TwoStateExample two_state_example() {
  TwoStateExample ex{centipede_form(), StandardPayoffStructure(), nullptr};
  StandardPayoffStructure s(2, 4, {"n0"}, {{"theta1", "theta2"}, {"u2"}});
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
  ex.structure = s;

  TypeStructure ts(2);
  ts.add_type(0, {"p1_th1", "theta1", {{"n0", {"q_cb1"}, Rat(1)}}});
  ts.add_type(0, {"p1_th2", "theta2", {{"n0", {"q_cb2"}, Rat(1)}}});
  ts.add_type(1, {"q_cb1", "u2", {{"n0", {"p1_th1"}, Rat(1)}}});
  ts.add_type(1, {"q_cb2", "u2", {{"n0", {"p1_th2"}, Rat(1)}}});
  ts.add_type(1, {"q_mix", "u2", {{"n0", {"p1_th1"}, rat(1, 2)}, {"n0", {"p1_th2"}, rat(1, 2)}}});
  ex.types = std::make_shared<const TypeStructure>(std::move(ts));
  return ex;
}

ModelProfile TwoStateExample::model(const std::string& t1_root, const std::string& t2_root) const {
  return {{SubjectiveStructure::common_knowledge(0, structure), types, t1_root},
          {SubjectiveStructure::common_knowledge(1, structure), types, t2_root}};
}

namespace {

StandardPayoffStructure extend_with_bonus(const ExtensiveForm& form,
                                          const StandardPayoffStructure& base, const Rat& bonus) {
  int np = base.num_players();
  std::vector<std::vector<std::string>> types(np);
  // Original types first, then one type per (payoff type, strategy).
  for (PlayerId i = 0; i < np; ++i) {
    types[i] = base.payoff_types(i);
    for (const auto& th : base.payoff_types(i))
      for (StrategyIdx s = 0; s < form.num_strategies(i); ++s)
        types[i].push_back(th + "+" + form.strategy_name(i, s));
  }
  StandardPayoffStructure out(np, base.num_terminals(), base.nature_states(), types);

  // Decode an extended type into its base seed and bonus strategy (or -1).
  auto decode = [&](PlayerId i, int ti) -> std::pair<int, StrategyIdx> {
    int nb = static_cast<int>(base.payoff_types(i).size());
    if (ti < nb) return {ti, -1};
    int off = ti - nb;
    return {off / form.num_strategies(i), off % form.num_strategies(i)};
  };

  for (int flat = 0; flat < out.num_states(); ++flat) {
    PayoffState ps = out.unflatten(flat);
    PayoffState seed = ps;
    std::vector<StrategyIdx> bonus_strat(np, -1);
    for (PlayerId i = 0; i < np; ++i) {
      auto [b, s] = decode(i, ps.types[i]);
      seed.types[i] = b;
      bonus_strat[i] = s;
    }
    int base_flat = base.flatten(seed);
    for (PlayerId i = 0; i < np; ++i)
      for (int z = 0; z < out.num_terminals(); ++z) {
        Rat v = base.utility(i, z, base_flat);
        if (bonus_strat[i] >= 0 && form.reaches(i, bonus_strat[i], form.terminals()[z])) v += bonus;
        out.set_utility(i, z, flat, std::move(v));
      }
  }
  return out;
}

Rat payoff_spread(const StandardPayoffStructure& base) {
  Rat lo = base.utility(0, 0, 0), hi = lo;
  for (PlayerId i = 0; i < base.num_players(); ++i)
    for (int z = 0; z < base.num_terminals(); ++z)
      for (int st = 0; st < base.num_states(); ++st) {
        lo = std::min(lo, base.utility(i, z, st));
        hi = std::max(hi, base.utility(i, z, st));
      }
  return hi - lo;
}

}  // namespace

StandardPayoffStructure tie_break(const ExtensiveForm& form, const StandardPayoffStructure& base,
                                  int n) {
  if (n < 1) throw std::invalid_argument("tie_break needs n >= 1");
  return extend_with_bonus(form, base, rat(1, n));
}

StandardPayoffStructure dominance_extension(const ExtensiveForm& form,
                                            const StandardPayoffStructure& base, int n) {
  if (n < 1) throw std::invalid_argument("dominance_extension needs n >= 1");
  return extend_with_bonus(form, base, payoff_spread(base) + Rat(1) + rat(1, n));
}

StandardPayoffStructure default_rich_structure(const ExtensiveForm& form) {
  int np = form.num_players();
  std::vector<std::vector<std::string>> types(np);
  for (PlayerId i = 0; i < np; ++i)
    for (StrategyIdx s = 0; s < form.num_strategies(i); ++s)
      types[i].push_back("dom+" + form.strategy_name(i, s));
  StandardPayoffStructure out(np, static_cast<int>(form.terminals().size()), {"n0"}, types);
  for (int flat = 0; flat < out.num_states(); ++flat) {
    PayoffState ps = out.unflatten(flat);
    for (PlayerId i = 0; i < np; ++i)
      for (int z = 0; z < out.num_terminals(); ++z)
        out.set_utility(i, z, flat,
                        Rat(form.reaches(i, ps.types[i], form.terminals()[z]) ? 1 : 0));
  }
  return out;
}

StructurePtr richness_graft(PlayerId owner, const StandardPayoffStructure& base,
                            const StandardPayoffStructure& rich, int k) {
  if (k < 0) throw std::invalid_argument("richness_graft needs k >= 0");
  if (k == 0) return SubjectiveStructure::common_knowledge(owner, rich);
  std::map<PlayerId, StructurePtr> asc;
  for (PlayerId j = 0; j < base.num_players(); ++j)
    if (j != owner) asc[j] = richness_graft(j, base, rich, k - 1);
  return SubjectiveStructure::make(owner, base, std::move(asc));
}

namespace {

const StandardPayoffStructure& common_standard_structure(const ModelProfile& base) {
  const auto& first = base.at(0).structure;
  for (const auto& m : base) {
    if (!m.structure->is_ck_tail())
      throw std::invalid_argument("perturbation base must be a standard model");
    if (m.structure->level1().content_key() != first->level1().content_key())
      throw std::invalid_argument("standard model must share one payoff structure");
  }
  return first->level1();
}

}  // namespace

ModelProfile graft_models(const ExtensiveForm& form, const ModelProfile& base,
                          const StandardPayoffStructure& rich, int k) {
  (void)form;
  const auto& level1 = common_standard_structure(base);
  ModelProfile out = base;
  for (PlayerId i = 0; i < static_cast<int>(base.size()); ++i)
    out[i].structure = richness_graft(i, level1, rich, k);
  return out;
}

ModelProfile tie_break_models(const ExtensiveForm& form, const ModelProfile& base, int n) {
  const auto& level1 = common_standard_structure(base);
  auto extended = tie_break(form, level1, n);
  ModelProfile out = base;
  for (PlayerId i = 0; i < static_cast<int>(base.size()); ++i)
    out[i].structure = SubjectiveStructure::common_knowledge(i, extended);
  return out;
}

ModelProfile rich_standard_models(const ExtensiveForm& form, const StandardPayoffStructure& base,
                                  int n) {
  auto rich = dominance_extension(form, base, n);
  int np = base.num_players();
  TypeStructure ts(np);
  // One type per added dominance state; each is certain of the first dominance
  // type of every opponent.
  std::vector<std::vector<std::string>> labels(np);
  for (PlayerId i = 0; i < np; ++i) {
    int nb = static_cast<int>(base.payoff_types(i).size());
    const auto& all = rich.payoff_types(i);
    for (std::size_t k = nb; k < all.size(); ++k) labels[i].push_back("r:" + all[k]);
  }
  for (PlayerId i = 0; i < np; ++i) {
    int nb = static_cast<int>(base.payoff_types(i).size());
    const auto& all = rich.payoff_types(i);
    for (std::size_t k = nb; k < all.size(); ++k) {
      // Full-support belief over the opponents' dominance types, so ex-ante
      // rationality sees every history the correspondences can reach.
      std::vector<TypeBeliefAtom> belief;
      std::vector<std::size_t> cursor;
      std::vector<PlayerId> opps;
      for (PlayerId j = 0; j < np; ++j)
        if (j != i) opps.push_back(j);
      cursor.assign(opps.size(), 0);
      long long combos = 1;
      for (PlayerId j : opps) combos *= static_cast<long long>(labels[j].size());
      while (true) {
        std::vector<std::string> opp;
        for (std::size_t c = 0; c < opps.size(); ++c) opp.push_back(labels[opps[c]][cursor[c]]);
        belief.push_back({rich.nature_states().front(), opp, Rat(1) / Rat(combos)});
        std::size_t c = 0;
        for (; c < opps.size(); ++c) {
          if (++cursor[c] < labels[opps[c]].size()) break;
          cursor[c] = 0;
        }
        if (c == opps.size()) break;
      }
      ts.add_type(i, {"r:" + all[k], all[k], std::move(belief)});
    }
  }
  auto tsp = std::make_shared<const TypeStructure>(std::move(ts));
  ModelProfile out;
  for (PlayerId i = 0; i < np; ++i)
    out.push_back({SubjectiveStructure::common_knowledge(i, rich), tsp, labels[i].front()});
  return out;
}

// Unique selection ------------------------------------------------------------

namespace {

// Builds the perturbed type structure by transporting witness conjectures
// level by level down to dominance seeds at the rich bottom.
struct SelectionBuilder {
  const ExtensiveForm& form;
  const ModelProfile& base;
  const StandardPayoffStructure& level1;
  const StandardPayoffStructure& rich;
  const TypeStructure& base_ts;
  const SolutionTrace& weak_trace;
  const SolutionTrace& strict_trace;
  std::vector<StrategyIdx> target;  // per player
  int depth;
  Rat mix;  // scratch-mixing weight, 0 disables

  TypeStructure out_ts;
  std::map<std::tuple<int, PlayerId, StrategyIdx, int>, std::string> memo;
  std::map<std::pair<PlayerId, int>, std::unique_ptr<BeliefUniverse>> universes;
  bool failed = false;

  SelectionBuilder(const ExtensiveForm& f, const ModelProfile& b,
                   const StandardPayoffStructure& l1, const StandardPayoffStructure& r,
                   const SolutionTrace& wt, const SolutionTrace& st,
                   std::vector<StrategyIdx> tgt, int k, Rat m)
      : form(f),
        base(b),
        level1(l1),
        rich(r),
        base_ts(*b.at(0).types),
        weak_trace(wt),
        strict_trace(st),
        target(std::move(tgt)),
        depth(k),
        mix(std::move(m)),
        out_ts(f.num_players()) {}

  const BeliefUniverse& universe(PlayerId j, int t) {
    auto key = std::make_pair(j, t);
    auto it = universes.find(key);
    if (it == universes.end()) {
      SubjectiveModel m{SubjectiveStructure::common_knowledge(j, level1), base.at(0).types,
                        base_ts.type(j, t).label};
      it = universes.emplace(key, std::make_unique<BeliefUniverse>(form, m)).first;
    }
    return *it->second;
  }

  // Witness conjecture for (player, type, strategy) at the base fixpoint;
  // strict ones preferred. Returns (witness, was_strict).
  std::pair<const Cps*, bool> witness(PlayerId j, int t, StrategyIdx s) const {
    auto view = SubjectiveStructure::common_knowledge(j, level1)->key();
    for (const SolutionTrace* tr : {&strict_trace, &weak_trace}) {
      for (int mi = 0; mi < static_cast<int>(base.size()); ++mi) {
        ViewTypeKey key{mi, view, j, t};
        auto vit = tr->witnesses.find(key);
        if (vit == tr->witnesses.end()) continue;
        auto sit = vit->second.find(s);
        if (sit != vit->second.end()) return {&sit->second, tr == &strict_trace};
      }
    }
    return {nullptr, false};
  }

  // Mixes the scratch beliefs into the prior so every previously-null history
  // acquires initial mass, then rebuilds by the chain rule. Falls back to the
  // original witness when the mix breaks its best-response content.
  Cps mixed_witness(const BeliefUniverse& u, const Cps& w, StrategyIdx s, bool strict,
                    const std::function<bool(PlayerId, StrategyIdx, int)>& transportable) {
    if (mix == 0) return w;
    int h0 = u.cond_pos(form.root());
    auto scr = scratch_histories(u, w);
    std::vector<int> extra;
    for (NodeId h : scr) {
      if (h == form.root()) continue;
      int pos = u.cond_pos(h);
      bool ok = true;
      for (int k = 0; k < u.num_atoms() && ok; ++k) {
        if (w.beliefs[pos][k] == 0) continue;
        const auto& atom = u.atom(k);
        for (std::size_t oj = 0; oj < u.opponents().size() && ok; ++oj)
          ok = transportable(u.opponents()[oj], atom.strategies[oj], atom.types[oj]);
      }
      if (ok) extra.push_back(pos);
    }
    if (extra.empty()) return w;
    std::vector<Rat> prior = w.beliefs[h0];
    Rat share = mix / static_cast<int>(extra.size());
    for (auto& p : prior) p *= (Rat(1) - mix);
    for (int pos : extra)
      for (int k = 0; k < u.num_atoms(); ++k) prior[k] += share * w.beliefs[pos][k];
    std::vector<std::pair<int, std::vector<Rat>>> given{{h0, prior}};
    for (std::size_t pos = 0; pos < u.conditioning().size(); ++pos) {
      Rat mass(0);
      for (int k : u.atoms_reaching(static_cast<int>(pos))) mass += prior[k];
      if (mass == 0) given.push_back({static_cast<int>(pos), w.beliefs[pos]});
    }
    auto rebuilt = cps_from_scratch(u, given);
    if (!rebuilt || !validate_cps(u, *rebuilt).ok()) return w;
    auto br = best_responses(u, *rebuilt);
    PlayerId j = u.owner();
    if (strict) {
      if (br != form.outcome_class(j, s)) return w;
    } else if (std::find(br.begin(), br.end(), s) == br.end()) {
      return w;
    }
    return *rebuilt;
  }

  std::string type_label(int level, PlayerId j, StrategyIdx s, int t) const {
    return "us" + std::to_string(level) + ":" + form.players()[j] + ":" +
           form.strategy_name(j, s) + ":" + base_ts.type(j, t).label;
  }

  // Pure dominance seed, believable only at the rich bottom view.
  std::string build_dom(PlayerId j, StrategyIdx s, int t) {
    auto key = std::make_tuple(-1, j, s, t);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::string label =
        "dom:" + form.players()[j] + ":" + form.strategy_name(j, s) + ":" + base_ts.type(j, t).label;
    memo[key] = label;
    TypeDef def;
    def.label = label;
    def.payoff_type = base_ts.type(j, t).payoff_type + "+" + form.strategy_name(j, s);
    TypeBeliefAtom atom;
    atom.nature = rich.nature_states().front();
    for (PlayerId r = 0; r < form.num_players(); ++r) {
      if (r == j) continue;
      int rt = base_ts.require_type(r, base.at(r).root_type);
      atom.opponent_types.push_back(build_dom(r, target[r], rt));
    }
    atom.prob = Rat(1);
    def.belief.push_back(std::move(atom));
    out_ts.add_type(j, std::move(def));
    return label;
  }

  std::string build(int level, PlayerId j, StrategyIdx s, int t) {
    auto key = std::make_tuple(level, j, s, t);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::string label = type_label(level, j, s, t);
    memo[key] = label;

    TypeDef def;
    def.label = label;
    def.payoff_type = base_ts.type(j, t).payoff_type;
    auto [w, was_strict] = witness(j, t, s);
    if (!w) {
      failed = true;
      TypeBeliefAtom atom;
      atom.nature = level1.nature_states().front();
      for (PlayerId r = 0; r < form.num_players(); ++r) {
        if (r == j) continue;
        int rt = base_ts.require_type(r, base.at(r).root_type);
        atom.opponent_types.push_back(build(level - 1, r, target[r], rt));
      }
      atom.prob = Rat(1);
      def.belief.push_back(std::move(atom));
      out_ts.add_type(j, std::move(def));
      return label;
    }
    const auto& u = universe(j, t);
    auto transportable = [&](PlayerId r, StrategyIdx sr, int tr) {
      return level == 0 || witness(r, tr, sr).first != nullptr;
    };
    Cps used = mixed_witness(u, *w, s, was_strict, transportable);

    int h0 = u.cond_pos(form.root());
    std::map<std::pair<int, std::vector<std::string>>, Rat> agg;
    for (int k = 0; k < u.num_atoms(); ++k) {
      const Rat& p = used.beliefs[h0][k];
      if (p == 0) continue;
      const auto& atom = u.atom(k);
      std::vector<std::string> opp;
      for (std::size_t oj = 0; oj < u.opponents().size(); ++oj) {
        PlayerId r = u.opponents()[oj];
        opp.push_back(level == 0 ? build_dom(r, atom.strategies[oj], atom.types[oj])
                                 : build(level - 1, r, atom.strategies[oj], atom.types[oj]));
      }
      agg[{atom.nature, opp}] += p;
    }
    for (auto& [k2, p] : agg)
      def.belief.push_back({(level == 0 ? rich : level1).nature_states()[k2.first], k2.second, p});

    // Chains for pairs supported anywhere in the witness, so the perturbed
    // graphs carry the rationalizing continuations seen off the prior path.
    // Pairs without any witness of their own (never rationalizable) are
    // skipped; they cannot anchor a transported chain.
    for (std::size_t pos = 0; pos < u.conditioning().size(); ++pos) {
      for (int k = 0; k < u.num_atoms(); ++k) {
        if (used.beliefs[pos][k] == 0) continue;
        const auto& atom = u.atom(k);
        for (std::size_t oj = 0; oj < u.opponents().size(); ++oj) {
          PlayerId r = u.opponents()[oj];
          if (level == 0) {
            build_dom(r, atom.strategies[oj], atom.types[oj]);
          } else if (witness(r, atom.types[oj], atom.strategies[oj]).first) {
            build(level - 1, r, atom.strategies[oj], atom.types[oj]);
          }
        }
      }
    }
    out_ts.add_type(j, std::move(def));
    return label;
  }
};

}  // namespace

std::optional<std::vector<SelectionStep>> unique_selection_sequence(
    const ExtensiveForm& form, const ModelProfile& base, NodeId target,
    const std::vector<int>& indices, const SolverOptions& opts) {
  const auto& level1 = common_standard_structure(base);
  for (const auto& m : base)
    if (m.types.get() != base.at(0).types.get())
      throw std::invalid_argument("base models must share one type structure");

  auto weak = efr(form, base, opts);
  auto strict = strict_efr(form, base, opts);

  // Componentwise target profile drawn from the rationalizable product,
  // preferring strictly rationalizable components.
  std::vector<StrategyIdx> profile(form.num_players(), -1);
  {
    std::vector<std::vector<StrategyIdx>> pools;
    for (PlayerId i = 0; i < form.num_players(); ++i) {
      std::vector<StrategyIdx> pool;
      const auto& weak_set = weak.root_set(i);
      const auto& strict_set = strict.root_set(i);
      for (StrategyIdx s : strict_set) pool.push_back(s);
      for (StrategyIdx s : weak_set)
        if (!std::binary_search(strict_set.begin(), strict_set.end(), s)) pool.push_back(s);
      if (pool.empty()) return std::nullopt;
      pools.push_back(std::move(pool));
    }
    std::vector<std::size_t> cursor(pools.size(), 0);
    bool found = false;
    while (true) {
      std::vector<StrategyIdx> candidate(pools.size());
      for (std::size_t i = 0; i < pools.size(); ++i) candidate[i] = pools[i][cursor[i]];
      if (form.outcome(candidate, form.root()) == target) {
        profile = candidate;
        found = true;
        break;
      }
      std::size_t i = 0;
      for (; i < pools.size(); ++i) {
        if (++cursor[i] < pools[i].size()) break;
        cursor[i] = 0;
      }
      if (i == pools.size()) break;
    }
    if (!found) return std::nullopt;
  }

  std::vector<SelectionStep> steps;
  for (std::size_t idx = 0; idx < indices.size(); ++idx) {
    int n = indices[idx];
    int depth = 2 + static_cast<int>(idx);
    auto rich = dominance_extension(form, level1, n);

    bool done = false;
    for (const Rat& mix : {Rat(0), rat(1, 8), rat(1, 32)}) {
      SelectionBuilder sb(form, base, level1, rich, weak, strict, profile, depth, mix);
      std::vector<std::string> roots;
      for (PlayerId i = 0; i < form.num_players(); ++i)
        roots.push_back(sb.build(depth, i, profile[i],
                                 base.at(0).types->require_type(i, base.at(i).root_type)));
      if (sb.failed) continue;
      auto tsp = std::make_shared<const TypeStructure>(std::move(sb.out_ts));
      ModelProfile perturbed;
      for (PlayerId i = 0; i < form.num_players(); ++i)
        perturbed.push_back({richness_graft(i, level1, rich, depth), tsp, roots[i]});

      if (!tsp->validate().ok()) continue;
      bool consistent = true;
      for (PlayerId i = 0; i < form.num_players() && consistent; ++i)
        consistent = type_consistency(perturbed[i].structure, *tsp, perturbed[i].root_type);
      if (!consistent) continue;

      auto check = efr(form, perturbed, opts);
      if (check.budget_exceeded) continue;
      auto outcomes = trace_outcomes(form, check);
      if (outcomes.size() == 1 && outcomes[0] == target) {
        SelectionStep step;
        step.index = n;
        step.models = std::move(perturbed);
        step.distance = model_distance(step.models, base);
        steps.push_back(std::move(step));
        done = true;
        break;
      }
    }
    if (!done) return std::nullopt;
  }
  return steps;
}

}  // namespace rationalizer
