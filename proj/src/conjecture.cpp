#include "rationalizer/conjecture.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rationalizer {

BeliefUniverse::BeliefUniverse(const ExtensiveForm& form, const SubjectiveModel& model)
    : form_(&form), model_(model), owner_(model.structure->owner()) {
  const auto& lvl = model.structure->level1();
  root_type_ = model.types->require_type(owner_, model.root_type);
  const auto& def = model.types->type(owner_, root_type_);
  root_payoff_ = -1;
  for (int k = 0; k < static_cast<int>(lvl.payoff_types(owner_).size()); ++k)
    if (lvl.payoff_types(owner_)[k] == def.payoff_type) root_payoff_ = k;
  if (root_payoff_ < 0)
    throw std::invalid_argument("root type's payoff type is not in scope of level1");

  opponents_ = form.opponents(owner_);
  for (PlayerId j : opponents_)
    opp_types_.push_back(consistent_types(model.structure->ascription(j), *model.types));

  // Atom enumeration: nature outermost, then per opponent (strategy, type).
  std::vector<int> radix;
  radix.push_back(static_cast<int>(lvl.nature_states().size()));
  for (std::size_t k = 0; k < opponents_.size(); ++k) {
    radix.push_back(form.num_strategies(opponents_[k]));
    radix.push_back(static_cast<int>(opp_types_[k].size()));
  }
  long long total = 1;
  for (int r : radix) total *= r;
  if (total == 0)
    throw std::invalid_argument("belief universe is empty (no consistent opponent types)");
  for (long long code = 0; code < total; ++code) {
    long long rem = code;
    std::vector<int> digits(radix.size());
    for (int k = static_cast<int>(radix.size()) - 1; k >= 0; --k) {
      digits[k] = static_cast<int>(rem % radix[k]);
      rem /= radix[k];
    }
    Atom a;
    a.nature = digits[0];
    for (std::size_t k = 0; k < opponents_.size(); ++k) {
      a.strategies.push_back(digits[1 + 2 * k]);
      a.types.push_back(opp_types_[k][digits[2 + 2 * k]]);
    }
    atoms_.push_back(std::move(a));
  }

  // First-order beliefs must project into level1: atoms whose opponent types
  // carry payoff types outside the level-1 structure can never receive mass.
  in_scope_.assign(atoms_.size(), true);
  std::vector<std::vector<int>> payoff_of(atoms_.size());
  for (int k = 0; k < num_atoms(); ++k) {
    payoff_of[k].assign(opponents_.size(), -1);
    for (std::size_t oj = 0; oj < opponents_.size(); ++oj) {
      const auto& label = model.types->type(opponents_[oj], atoms_[k].types[oj]).payoff_type;
      for (int t = 0; t < static_cast<int>(lvl.payoff_types(opponents_[oj]).size()); ++t)
        if (lvl.payoff_types(opponents_[oj])[t] == label) payoff_of[k][oj] = t;
      if (payoff_of[k][oj] < 0) in_scope_[k] = false;
    }
  }

  cond_ = form.conditioning_histories(owner_);
  reach_.resize(cond_.size());
  reach_bit_.assign(cond_.size(), std::vector<bool>(atoms_.size(), false));
  for (std::size_t pos = 0; pos < cond_.size(); ++pos) {
    for (int k = 0; k < num_atoms(); ++k) {
      if (!in_scope_[k]) continue;
      bool ok = true;
      for (std::size_t oj = 0; oj < opponents_.size() && ok; ++oj)
        ok = form.reaches(opponents_[oj], atoms_[k].strategies[oj], cond_[pos]);
      if (ok) {
        reach_[pos].push_back(k);
        reach_bit_[pos][k] = true;
      }
    }
  }

  int ns = form.num_strategies(owner_);
  util_.assign(static_cast<std::size_t>(num_atoms()) * ns * cond_.size(), Rat(0));
  for (int k = 0; k < num_atoms(); ++k) {
    if (!in_scope_[k]) continue;
    PayoffState ps;
    ps.nature = atoms_[k].nature;
    ps.types.assign(form.num_players(), 0);
    ps.types[owner_] = root_payoff_;
    for (std::size_t oj = 0; oj < opponents_.size(); ++oj)
      ps.types[opponents_[oj]] = payoff_of[k][oj];
    int flat = lvl.flatten(ps);
    for (StrategyIdx s = 0; s < ns; ++s) {
      std::vector<StrategyIdx> profile(form.num_players(), 0);
      profile[owner_] = s;
      for (std::size_t oj = 0; oj < opponents_.size(); ++oj)
        profile[opponents_[oj]] = atoms_[k].strategies[oj];
      for (std::size_t pos = 0; pos < cond_.size(); ++pos) {
        NodeId z = form.outcome(profile, cond_[pos]);
        util_[(static_cast<std::size_t>(k) * ns + s) * cond_.size() + pos] =
            lvl.utility(owner_, form.terminal_index(z), flat);
      }
    }
  }
}

int BeliefUniverse::cond_pos(NodeId h) const {
  for (std::size_t pos = 0; pos < cond_.size(); ++pos)
    if (cond_[pos] == h) return static_cast<int>(pos);
  return -1;
}

bool BeliefUniverse::atom_reaches(int atomIdx, NodeId h) const {
  int pos = cond_pos(h);
  if (pos < 0) throw std::invalid_argument("not a conditioning history");
  return reach_bit_[pos][atomIdx];
}

const Rat& BeliefUniverse::utility(int atomIdx, StrategyIdx s, int condPos) const {
  return util_[(static_cast<std::size_t>(atomIdx) * form_->num_strategies(owner_) + s) *
                   cond_.size() +
               condPos];
}

namespace {

Rat reach_mass(const BeliefUniverse& u, const std::vector<Rat>& belief, int condPos) {
  Rat m(0);
  for (int k : u.atoms_reaching(condPos)) m += belief[k];
  return m;
}

}  // namespace

ValidationReport validate_cps(const BeliefUniverse& u, const Cps& cps) {
  ValidationReport rep;
  const auto& cond = u.conditioning();
  if (cps.beliefs.size() != cond.size()) {
    rep.issues.push_back({"shape", "cps", "one belief per conditioning history required"});
    return rep;
  }
  const auto& form = u.form();
  for (std::size_t pos = 0; pos < cond.size(); ++pos) {
    const auto& b = cps.beliefs[pos];
    if (static_cast<int>(b.size()) != u.num_atoms()) {
      rep.issues.push_back({"shape", form.node_label(cond[pos]), "belief has wrong atom count"});
      continue;
    }
    Rat total(0);
    for (int k = 0; k < u.num_atoms(); ++k) {
      if (b[k] < 0)
        rep.issues.push_back({"negative-mass", form.node_label(cond[pos]), "negative probability"});
      if (b[k] > 0 && !u.atom_reaches(k, cond[pos]))
        rep.issues.push_back({"support", form.node_label(cond[pos]),
                              "mass on strategies that do not reach this history"});
      total += b[k];
    }
    if (total != Rat(1))
      rep.issues.push_back(
          {"mass", form.node_label(cond[pos]), "belief mass " + rat_to_string(total)});
  }
  if (!rep.ok()) return rep;

  for (std::size_t a = 0; a < cond.size(); ++a)
    for (std::size_t b = 0; b < cond.size(); ++b) {
      if (a == b || !form.strictly_precedes(cond[a], cond[b])) continue;
      Rat m = reach_mass(u, cps.beliefs[a], static_cast<int>(b));
      if (m == 0) continue;
      for (int k = 0; k < u.num_atoms(); ++k) {
        Rat expect = u.atom_reaches(k, cond[b]) ? cps.beliefs[a][k] / m : Rat(0);
        if (cps.beliefs[b][k] != expect) {
          rep.issues.push_back({"chain-rule", form.node_label(cond[b]),
                                "belief is not the conditional of " + form.node_label(cond[a])});
          break;
        }
      }
    }

  // Initial consistency with the root type's belief.
  std::map<std::pair<int, std::vector<int>>, Rat> marg;
  int h0pos = u.cond_pos(form.root());
  for (int k = 0; k < u.num_atoms(); ++k) {
    if (cps.beliefs[h0pos][k] == 0) continue;
    const auto& atom = u.atom(k);
    marg[{atom.nature, atom.types}] += cps.beliefs[h0pos][k];
  }
  std::map<std::pair<int, std::vector<int>>, Rat> expect;
  const auto& def = u.model().types->type(u.owner(), u.root_type_index());
  const auto& lvl = u.model().structure->level1();
  for (const auto& atom : def.belief) {
    if (atom.prob == 0) continue;
    std::vector<int> tt;
    int slot = 0;
    for (PlayerId j = 0; j < form.num_players(); ++j) {
      if (j == u.owner()) continue;
      tt.push_back(u.model().types->require_type(j, atom.opponent_types[slot++]));
    }
    expect[{lvl.nature_index(atom.nature), tt}] += atom.prob;
  }
  if (marg != expect)
    rep.issues.push_back(
        {"initial-consistency", "h0", "h0 marginal differs from the root type's belief"});
  return rep;
}

Rat expected_utility(const BeliefUniverse& u, const Cps& cps, StrategyIdx s, NodeId h) {
  int pos = u.cond_pos(h);
  if (pos < 0) throw std::invalid_argument("expected_utility: not a conditioning history");
  Rat total(0);
  const auto& b = cps.beliefs[pos];
  for (int k = 0; k < u.num_atoms(); ++k)
    if (b[k] != 0) total += b[k] * u.utility(k, s, pos);
  return total;
}

std::vector<StrategyIdx> best_responses(const BeliefUniverse& u, const Cps& cps) {
  const auto& form = u.form();
  PlayerId i = u.owner();
  std::vector<StrategyIdx> out;
  for (StrategyIdx s = 0; s < form.num_strategies(i); ++s) {
    bool ok = true;
    for (NodeId h : form.own_reachable(i, s)) {
      Rat mine = expected_utility(u, cps, s, h);
      for (StrategyIdx alt = 0; alt < form.num_strategies(i) && ok; ++alt)
        if (expected_utility(u, cps, alt, h) > mine) ok = false;
      if (!ok) break;
    }
    if (ok) out.push_back(s);
  }
  return out;
}

std::vector<NodeId> scratch_histories(const BeliefUniverse& u, const Cps& cps) {
  const auto& form = u.form();
  const auto& cond = u.conditioning();
  std::vector<NodeId> out;
  for (std::size_t pos = 0; pos < cond.size(); ++pos) {
    bool fresh = true;
    for (std::size_t prev = 0; prev < cond.size() && fresh; ++prev) {
      if (prev == pos || !form.strictly_precedes(cond[prev], cond[pos])) continue;
      if (reach_mass(u, cps.beliefs[prev], static_cast<int>(pos)) > 0) fresh = false;
    }
    if (cond[pos] == form.root()) fresh = true;
    if (fresh) out.push_back(cond[pos]);
  }
  return out;
}

std::optional<Cps> cps_from_scratch(
    const BeliefUniverse& u, const std::vector<std::pair<int, std::vector<Rat>>>& scratch) {
  const auto& form = u.form();
  const auto& cond = u.conditioning();
  std::vector<const std::vector<Rat>*> given(cond.size(), nullptr);
  for (const auto& [pos, b] : scratch) given[pos] = &b;
  if (!given[u.cond_pos(form.root())]) return std::nullopt;

  Cps cps;
  cps.beliefs.assign(cond.size(), {});
  for (std::size_t pos = 0; pos < cond.size(); ++pos) {
    if (given[pos]) {
      cps.beliefs[pos] = *given[pos];
      continue;
    }
    // Nearest given ancestor; predecessors of a history form a chain.
    int anchor = -1;
    for (std::size_t prev = 0; prev < cond.size(); ++prev)
      if (given[prev] && form.strictly_precedes(cond[prev], cond[pos]))
        if (anchor < 0 || form.strictly_precedes(cond[anchor], cond[prev]))
          anchor = static_cast<int>(prev);
    if (anchor < 0) return std::nullopt;
    const auto& base = *given[anchor];
    Rat m = reach_mass(u, base, static_cast<int>(pos));
    if (m == 0) return std::nullopt;
    std::vector<Rat> b(u.num_atoms(), Rat(0));
    for (int k : u.atoms_reaching(static_cast<int>(pos))) b[k] = base[k] / m;
    cps.beliefs[pos] = std::move(b);
  }
  return cps;
}

}  // namespace rationalizer
