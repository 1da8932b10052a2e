#include "rationalizer/kernel.hpp"

#include <algorithm>
#include <map>

#include "rationalizer/lp.hpp"

namespace rationalizer {

namespace {

struct RegimeSystem {
  int num_vars = 0;                        // scratch weights, slack excluded
  std::vector<std::vector<int>> vars;      // per cond pos (scratch only): atom of each var
  std::vector<std::vector<int>> var_of;    // per cond pos: atom -> var index or -1
  std::vector<int> anchor;                 // per cond pos: anchor scratch pos
  std::vector<std::vector<Rat>> eq_rows;   // equality constraints (no slack column)
  std::vector<Rat> eq_rhs;
  std::vector<std::vector<Rat>> weak_rows;  // Σ coef·x ≥ 0
  std::vector<std::vector<Rat>> slack_rows; // Σ coef·x ≥ t
};

// Adds to `row` the cleared-denominator expected-utility difference of playing
// `a` versus `b` from conditioning position `pos`, using the anchor's weights.
void add_utility_difference(const BeliefUniverse& u, const RegimeSystem& sys, int pos,
                            StrategyIdx a, StrategyIdx b, std::vector<Rat>& row) {
  int anchor = sys.anchor[pos];
  for (int atom : u.atoms_reaching(pos)) {
    int v = sys.var_of[anchor][atom];
    if (v < 0) continue;
    row[v] += u.utility(atom, a, pos) - u.utility(atom, b, pos);
  }
}

bool row_is_zero(const std::vector<Rat>& row) {
  for (const auto& v : row)
    if (v != 0) return false;
  return true;
}

std::optional<std::vector<Rat>> solve_regime(const RegimeSystem& sys,
                                             const std::vector<std::vector<Rat>>& extra_slack) {
  // Variables: weights then slack t. Maximize t; accept when optimum > 0.
  int n = sys.num_vars + 1;
  std::vector<std::vector<Rat>> a_ub;
  std::vector<Rat> b_ub;
  auto push_ge_zero = [&](const std::vector<Rat>& row) {  // row·x ≥ 0
    std::vector<Rat> r(n, Rat(0));
    for (int j = 0; j < sys.num_vars; ++j) r[j] = -row[j];
    a_ub.push_back(std::move(r));
    b_ub.push_back(Rat(0));
  };
  auto push_ge_slack = [&](const std::vector<Rat>& row) {  // row·x ≥ t
    std::vector<Rat> r(n, Rat(0));
    for (int j = 0; j < sys.num_vars; ++j) r[j] = -row[j];
    r[sys.num_vars] = Rat(1);
    a_ub.push_back(std::move(r));
    b_ub.push_back(Rat(0));
  };
  for (const auto& row : sys.weak_rows) push_ge_zero(row);
  for (const auto& row : sys.slack_rows) push_ge_slack(row);
  for (const auto& row : extra_slack) push_ge_slack(row);
  {
    std::vector<Rat> cap(n, Rat(0));
    cap[sys.num_vars] = Rat(1);
    a_ub.push_back(std::move(cap));
    b_ub.push_back(Rat(1));
  }
  std::vector<std::vector<Rat>> a_eq;
  std::vector<Rat> b_eq;
  for (std::size_t r = 0; r < sys.eq_rows.size(); ++r) {
    std::vector<Rat> row(n, Rat(0));
    for (int j = 0; j < sys.num_vars; ++j) row[j] = sys.eq_rows[r][j];
    a_eq.push_back(std::move(row));
    b_eq.push_back(sys.eq_rhs[r]);
  }
  std::vector<Rat> c(n, Rat(0));
  c[sys.num_vars] = Rat(1);
  auto res = solve_lp(a_ub, b_ub, a_eq, b_eq, c);
  if (res.status != LpStatus::kOptimal || res.value <= 0) return std::nullopt;
  res.x.resize(sys.num_vars);
  return res.x;
}

}  // namespace

std::optional<Cps> justifiable(const BeliefUniverse& u, StrategyIdx s, const Restrictions& r,
                               JustifyMode mode, OptimalityScope scope) {
  const auto& form = u.form();
  PlayerId i = u.owner();
  const auto& cond = u.conditioning();
  int P = static_cast<int>(cond.size());
  int h0 = u.cond_pos(form.root());

  if (static_cast<int>(r.allowed.size()) != P)
    throw std::invalid_argument("restriction shape mismatch");

  // Admissible atoms per position: reaching and allowed.
  std::vector<std::vector<bool>> admissible(P, std::vector<bool>(u.num_atoms(), false));
  for (int pos = 0; pos < P; ++pos) {
    bool any = false;
    for (int atom : u.atoms_reaching(pos)) {
      bool ok = !r.allowed[pos] || (*r.allowed[pos])[atom];
      admissible[pos][atom] = ok;
      any = any || ok;
    }
    if (!any)
      throw InadmissibleRestriction("no admissible support at " + form.node_label(cond[pos]));
  }

  // Initial-belief groups over (nature, opponent types).
  const auto& root_def = u.model().types->type(i, u.root_type_index());
  const auto& lvl = u.model().structure->level1();
  std::map<std::pair<int, std::vector<int>>, Rat> group_prob;
  for (const auto& atom : root_def.belief) {
    if (atom.prob == 0) continue;
    std::vector<int> tt;
    int slot = 0;
    for (PlayerId j = 0; j < form.num_players(); ++j) {
      if (j == i) continue;
      tt.push_back(u.model().types->require_type(j, atom.opponent_types[slot++]));
    }
    group_prob[{lvl.nature_index(atom.nature), tt}] += atom.prob;
  }
  std::vector<int> group_of(u.num_atoms(), -1);
  std::vector<Rat> group_target;
  {
    std::map<std::pair<int, std::vector<int>>, int> ids;
    for (const auto& [g, p] : group_prob) {
      ids[g] = static_cast<int>(group_target.size());
      group_target.push_back(p);
    }
    for (int k = 0; k < u.num_atoms(); ++k) {
      const auto& atom = u.atom(k);
      auto it = ids.find({atom.nature, atom.types});
      if (it != ids.end()) group_of[k] = it->second;
    }
  }

  // Optimality positions.
  std::vector<int> opt_pos;
  switch (scope) {
    case OptimalityScope::kReachable:
      for (NodeId h : form.own_reachable(i, s)) opt_pos.push_back(u.cond_pos(h));
      break;
    case OptimalityScope::kAllOwn:
      for (NodeId h : form.own_histories(i)) opt_pos.push_back(u.cond_pos(h));
      break;
    case OptimalityScope::kExAnte:
      opt_pos.push_back(h0);
      break;
  }

  // Strict mode: strategies outside the outcome class must each fail somewhere.
  std::vector<StrategyIdx> excluded;
  std::vector<std::vector<std::pair<int, StrategyIdx>>> disjuncts;
  if (mode == JustifyMode::kStrict) {
    auto cls = form.outcome_class(i, s);
    auto in_class = [&cls](StrategyIdx t) {
      return std::find(cls.begin(), cls.end(), t) != cls.end();
    };
    auto mine = form.own_reachable(i, s);
    auto on_mine = [&mine](NodeId h) {
      return std::find(mine.begin(), mine.end(), h) != mine.end();
    };
    for (StrategyIdx alt = 0; alt < form.num_strategies(i); ++alt) {
      if (in_class(alt)) continue;
      excluded.push_back(alt);
      std::vector<std::pair<int, StrategyIdx>> opts;
      for (NodeId h : form.own_reachable(i, alt))
        if (on_mine(h)) opts.push_back({u.cond_pos(h), s});
      for (NodeId h : form.own_reachable(i, alt)) {
        if (on_mine(h)) continue;
        for (StrategyIdx w = 0; w < form.num_strategies(i); ++w)
          if (w != alt) opts.push_back({u.cond_pos(h), w});
      }
      disjuncts.push_back(std::move(opts));
    }
  }

  // Enumerate scratch regimes: subsets of conditioning positions containing h0,
  // in increasing size then lexicographic order.
  std::vector<int> others;
  for (int pos = 0; pos < P; ++pos)
    if (pos != h0) others.push_back(pos);
  int m = static_cast<int>(others.size());

  std::vector<unsigned> masks;
  for (unsigned mask = 0; mask < (1u << m); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
    return __builtin_popcount(a) < __builtin_popcount(b);
  });

  for (unsigned mask : masks) {
    std::vector<bool> scratch(P, false);
    scratch[h0] = true;
    for (int b = 0; b < m; ++b)
      if (mask & (1u << b)) scratch[others[b]] = true;

    RegimeSystem sys;
    sys.anchor.assign(P, -1);
    bool bad = false;
    for (int pos = 0; pos < P && !bad; ++pos) {
      if (scratch[pos]) {
        sys.anchor[pos] = pos;
        continue;
      }
      int best = -1;
      for (int prev = 0; prev < P; ++prev)
        if (scratch[prev] && form.precedes(cond[prev], cond[pos]) && prev != pos)
          if (best < 0 || form.strictly_precedes(cond[best], cond[prev])) best = prev;
      if (best < 0) bad = true;
      sys.anchor[pos] = best;
    }
    if (bad) continue;

    // Variable sets per scratch position.
    sys.vars.assign(P, {});
    sys.var_of.assign(P, std::vector<int>(u.num_atoms(), -1));
    for (int pos = 0; pos < P && !bad; ++pos) {
      if (!scratch[pos]) continue;
      for (int atom = 0; atom < u.num_atoms(); ++atom) {
        if (!admissible[pos][atom]) continue;
        if (pos == h0 && group_of[atom] < 0) continue;
        // Null requirement: no mass toward later scratch histories.
        bool kills = false;
        for (int later = 0; later < P && !kills; ++later)
          if (scratch[later] && later != pos && form.strictly_precedes(cond[pos], cond[later]) &&
              u.atom_reaches(atom, cond[later]))
            kills = true;
        if (kills) continue;
        // Support conditions of anchored non-scratch histories.
        bool banned = false;
        for (int other = 0; other < P && !banned; ++other)
          if (!scratch[other] && sys.anchor[other] == pos && u.atom_reaches(atom, cond[other]) &&
              !admissible[other][atom])
            banned = true;
        if (banned) continue;
        sys.var_of[pos][atom] = sys.num_vars++;
        sys.vars[pos].push_back(atom);
      }
      if (sys.vars[pos].empty()) bad = true;
    }
    if (bad) continue;

    // Normalization per scratch history.
    for (int pos = 0; pos < P; ++pos) {
      if (!scratch[pos]) continue;
      std::vector<Rat> row(sys.num_vars, Rat(0));
      for (int atom : sys.vars[pos]) row[sys.var_of[pos][atom]] = Rat(1);
      sys.eq_rows.push_back(std::move(row));
      sys.eq_rhs.push_back(Rat(1));
    }
    // Initial marginal at h0.
    for (std::size_t g = 0; g < group_target.size(); ++g) {
      std::vector<Rat> row(sys.num_vars, Rat(0));
      for (int atom : sys.vars[h0])
        if (group_of[atom] == static_cast<int>(g)) row[sys.var_of[h0][atom]] = Rat(1);
      sys.eq_rows.push_back(std::move(row));
      sys.eq_rhs.push_back(group_target[g]);
    }
    // Positive reach of every non-scratch history.
    for (int pos = 0; pos < P; ++pos) {
      if (scratch[pos]) continue;
      std::vector<Rat> row(sys.num_vars, Rat(0));
      for (int atom : u.atoms_reaching(pos)) {
        int v = sys.var_of[sys.anchor[pos]][atom];
        if (v >= 0) row[v] = Rat(1);
      }
      sys.slack_rows.push_back(std::move(row));
    }
    // Weak optimality of s at the required histories.
    for (int pos : opt_pos) {
      for (StrategyIdx alt = 0; alt < form.num_strategies(i); ++alt) {
        if (alt == s) continue;
        std::vector<Rat> row(sys.num_vars, Rat(0));
        add_utility_difference(u, sys, pos, s, alt, row);
        if (!row_is_zero(row)) sys.weak_rows.push_back(std::move(row));
      }
    }

    // Search strictness-witness assignments depth first, pruning by LP.
    std::vector<std::vector<Rat>> facts;
    std::vector<Rat> solution;
    auto attempt = [&](auto&& self, std::size_t depth) -> bool {
      auto sol = solve_regime(sys, facts);
      if (!sol) return false;
      if (depth == disjuncts.size()) {
        solution = std::move(*sol);
        return true;
      }
      for (const auto& [pos, witness] : disjuncts[depth]) {
        std::vector<Rat> row(sys.num_vars, Rat(0));
        add_utility_difference(u, sys, pos, witness, excluded[depth], row);
        if (row_is_zero(row)) continue;
        facts.push_back(std::move(row));
        if (self(self, depth + 1)) return true;
        facts.pop_back();
      }
      return false;
    };
    if (!attempt(attempt, 0)) continue;

    // Rebuild the full system from the scratch beliefs.
    std::vector<std::pair<int, std::vector<Rat>>> scratch_beliefs;
    for (int pos = 0; pos < P; ++pos) {
      if (!scratch[pos]) continue;
      std::vector<Rat> b(u.num_atoms(), Rat(0));
      for (int atom : sys.vars[pos]) b[atom] = solution[sys.var_of[pos][atom]];
      scratch_beliefs.push_back({pos, std::move(b)});
    }
    auto cps = cps_from_scratch(u, scratch_beliefs);
    if (cps) return cps;
  }
  return std::nullopt;
}

}  // namespace rationalizer
