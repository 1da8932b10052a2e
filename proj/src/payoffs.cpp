#include "rationalizer/payoffs.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rationalizer {

StandardPayoffStructure::StandardPayoffStructure(
    int num_players, int num_terminals, std::vector<std::string> nature_states,
    std::vector<std::vector<std::string>> payoff_types)
    : num_players_(num_players),
      num_terminals_(num_terminals),
      nature_states_(std::move(nature_states)),
      payoff_types_(std::move(payoff_types)) {
  if (nature_states_.empty()) throw std::invalid_argument("empty nature state set");
  if (static_cast<int>(payoff_types_.size()) != num_players_)
    throw std::invalid_argument("payoff type sets must cover every player");
  num_states_ = static_cast<int>(nature_states_.size());
  for (const auto& ts : payoff_types_) {
    if (ts.empty()) throw std::invalid_argument("empty payoff type set");
    num_states_ *= static_cast<int>(ts.size());
  }
  util_.assign(static_cast<std::size_t>(num_players_) * num_terminals_ * num_states_, Rat(0));
}

int StandardPayoffStructure::type_index(PlayerId i, const std::string& label) const {
  const auto& ts = payoff_types_[i];
  for (int k = 0; k < static_cast<int>(ts.size()); ++k)
    if (ts[k] == label) return k;
  throw std::invalid_argument("unknown payoff type '" + label + "'");
}

int StandardPayoffStructure::nature_index(const std::string& label) const {
  for (int k = 0; k < static_cast<int>(nature_states_.size()); ++k)
    if (nature_states_[k] == label) return k;
  throw std::invalid_argument("unknown nature state '" + label + "'");
}

int StandardPayoffStructure::flatten(const PayoffState& s) const {
  int idx = s.nature;
  for (int i = 0; i < num_players_; ++i)
    idx = idx * static_cast<int>(payoff_types_[i].size()) + s.types[i];
  return idx;
}

PayoffState StandardPayoffStructure::unflatten(int flat) const {
  PayoffState s;
  s.types.assign(num_players_, 0);
  for (int i = num_players_ - 1; i >= 0; --i) {
    int n = static_cast<int>(payoff_types_[i].size());
    s.types[i] = flat % n;
    flat /= n;
  }
  s.nature = flat;
  return s;
}

const Rat& StandardPayoffStructure::utility(PlayerId i, int z, int state) const {
  return util_[(static_cast<std::size_t>(i) * num_terminals_ + z) * num_states_ + state];
}

void StandardPayoffStructure::set_utility(PlayerId i, int z, int state, Rat v) {
  util_[(static_cast<std::size_t>(i) * num_terminals_ + z) * num_states_ + state] = std::move(v);
}

ValidationReport StandardPayoffStructure::validate(const ExtensiveForm& form) const {
  ValidationReport rep;
  if (form.num_players() != num_players_)
    rep.issues.push_back({"player-count", "structure", "player count differs from the form"});
  if (static_cast<int>(form.terminals().size()) != num_terminals_)
    rep.issues.push_back({"terminal-count", "structure", "terminal count differs from the form"});
  auto check_unique = [&rep](const std::vector<std::string>& labels, const std::string& where) {
    auto s = labels;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      rep.issues.push_back({"duplicate-label", where, "labels must be unique"});
  };
  check_unique(nature_states_, "nature states");
  for (int i = 0; i < num_players_; ++i) check_unique(payoff_types_[i], "payoff types");
  return rep;
}

std::string StandardPayoffStructure::content_key() const {
  std::ostringstream os;
  os << num_players_ << ";" << num_terminals_ << ";";
  for (const auto& n : nature_states_) os << n << ",";
  os << ";";
  for (const auto& ts : payoff_types_) {
    for (const auto& t : ts) os << t << ",";
    os << "|";
  }
  os << ";";
  for (const auto& u : util_) os << rat_to_string(u) << ",";
  return os.str();
}

CanonicalRepresentation canonicalize(const StandardPayoffStructure& s) {
  CanonicalRepresentation rep;
  rep.num_players = s.num_players();
  rep.num_terminals = s.num_terminals();

  auto profile_of = [&s](int st) {
    UtilityProfile m;
    m.reserve(static_cast<std::size_t>(s.num_players()) * s.num_terminals());
    for (PlayerId i = 0; i < s.num_players(); ++i)
      for (int z = 0; z < s.num_terminals(); ++z) m.push_back(s.utility(i, z, st));
    return m;
  };

  std::map<UtilityProfile, int> profile_ids;
  for (int st = 0; st < s.num_states(); ++st) profile_ids.emplace(profile_of(st), 0);
  int id = 0;
  for (auto& [profile, slot] : profile_ids) {
    slot = id++;
    rep.level0.push_back(profile);
  }
  std::vector<int> state_profile(s.num_states());
  for (int st = 0; st < s.num_states(); ++st) state_profile[st] = profile_ids.at(profile_of(st));

  rep.per_player.assign(s.num_players(), {});
  for (PlayerId i = 0; i < s.num_players(); ++i) {
    std::set<std::vector<int>> family;
    int nt = static_cast<int>(s.payoff_types(i).size());
    for (int ti = 0; ti < nt; ++ti) {
      std::set<int> slice;
      for (int st = 0; st < s.num_states(); ++st)
        if (s.unflatten(st).types[i] == ti) slice.insert(state_profile[st]);
      family.insert(std::vector<int>(slice.begin(), slice.end()));
    }
    rep.per_player[i].assign(family.begin(), family.end());
  }
  return rep;
}

namespace {

Rat profile_sup_distance(const UtilityProfile& a, const UtilityProfile& b) {
  Rat d(0);
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, rat_abs(a[k] - b[k]));
  return d;
}

Rat set_hausdorff(const std::vector<UtilityProfile>& xs, const std::vector<UtilityProfile>& ys) {
  Rat worst(0);
  auto one_side = [&worst](const std::vector<UtilityProfile>& from,
                           const std::vector<UtilityProfile>& to) {
    for (const auto& x : from) {
      Rat best = profile_sup_distance(x, to[0]);
      for (std::size_t k = 1; k < to.size(); ++k)
        best = std::min(best, profile_sup_distance(x, to[k]));
      worst = std::max(worst, best);
    }
  };
  one_side(xs, ys);
  one_side(ys, xs);
  return worst;
}

std::vector<UtilityProfile> materialize(const CanonicalRepresentation& rep,
                                        const std::vector<int>& slice) {
  std::vector<UtilityProfile> out;
  out.reserve(slice.size());
  for (int id : slice) out.push_back(rep.level0[id]);
  return out;
}

// Enumerates the product of the given per-slot index lists.
template <typename Fn>
void for_each_product(const std::vector<std::vector<StrategyIdx>>& slots, Fn&& fn) {
  std::vector<std::size_t> cursor(slots.size(), 0);
  for (const auto& s : slots)
    if (s.empty()) return;
  while (true) {
    std::vector<StrategyIdx> pick(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k) pick[k] = slots[k][cursor[k]];
    fn(pick);
    std::size_t k = 0;
    for (; k < slots.size(); ++k) {
      if (++cursor[k] < slots[k].size()) break;
      cursor[k] = 0;
    }
    if (k == slots.size()) return;
  }
}

}  // namespace

Rat hausdorff_distance(const CanonicalRepresentation& a, const CanonicalRepresentation& b) {
  if (a.num_players != b.num_players || a.num_terminals != b.num_terminals)
    throw std::invalid_argument("canonical representations live on different forms");
  Rat total = set_hausdorff(a.level0, b.level0);
  for (PlayerId i = 0; i < a.num_players; ++i) {
    const auto& fa = a.per_player[i];
    const auto& fb = b.per_player[i];
    Rat fam(0);
    auto one_side = [&](const CanonicalRepresentation& from_rep,
                        const std::vector<std::vector<int>>& from,
                        const CanonicalRepresentation& to_rep,
                        const std::vector<std::vector<int>>& to) {
      for (const auto& x : from) {
        auto mx = materialize(from_rep, x);
        Rat best = set_hausdorff(mx, materialize(to_rep, to[0]));
        for (std::size_t k = 1; k < to.size(); ++k)
          best = std::min(best, set_hausdorff(mx, materialize(to_rep, to[k])));
        fam = std::max(fam, best);
      }
    };
    one_side(a, fa, b, fb);
    one_side(b, fb, a, fa);
    total = std::max(total, fam);
  }
  return total;
}

bool is_conditionally_dominant(const ExtensiveForm& form, const StandardPayoffStructure& st,
                               int flat_state, PlayerId i, StrategyIdx s) {
  auto opponents = form.opponents(i);
  for (NodeId h : form.own_reachable(i, s)) {
    std::vector<std::vector<StrategyIdx>> reach;
    for (PlayerId j : opponents) reach.push_back(form.reaching_strategies(j, h));
    bool dominated_somewhere = false;
    for_each_product(reach, [&](const std::vector<StrategyIdx>& opp) {
      if (dominated_somewhere) return;
      std::vector<StrategyIdx> profile(form.num_players(), 0);
      for (std::size_t k = 0; k < opponents.size(); ++k) profile[opponents[k]] = opp[k];
      for (StrategyIdx alt = 0; alt < form.num_strategies(i); ++alt) {
        if (form.action_at(i, alt, h) == form.action_at(i, s, h)) continue;
        profile[i] = s;
        NodeId zs = form.outcome(profile, h);
        profile[i] = alt;
        NodeId za = form.outcome(profile, h);
        if (st.utility(i, form.terminal_index(zs), flat_state) <=
            st.utility(i, form.terminal_index(za), flat_state)) {
          dominated_somewhere = true;
          return;
        }
      }
    });
    if (dominated_somewhere) return false;
  }
  return true;
}

RichnessResult is_rich(const ExtensiveForm& form, const StandardPayoffStructure& st) {
  RichnessResult res;
  res.rich = true;
  int np = form.num_players();
  for (PlayerId i = 0; i < np; ++i) {
    int nt = static_cast<int>(st.payoff_types(i).size());
    for (int ti = 0; ti < nt; ++ti) {
      for (StrategyIdx s = 0; s < form.num_strategies(i); ++s) {
        int found = -1;
        for (int cand = 0; cand < nt && found < 0; ++cand) {
          bool ok = true;
          for (int flat = 0; flat < st.num_states() && ok; ++flat) {
            if (st.unflatten(flat).types[i] != cand) continue;
            if (!is_conditionally_dominant(form, st, flat, i, s)) ok = false;
          }
          for (int flat = 0; flat < st.num_states() && ok; ++flat) {
            PayoffState ps = st.unflatten(flat);
            if (ps.types[i] != ti) continue;
            ps.types[i] = cand;
            int flat2 = st.flatten(ps);
            for (PlayerId j = 0; j < np && ok; ++j) {
              if (j == i) continue;
              for (int z = 0; z < st.num_terminals() && ok; ++z)
                if (st.utility(j, z, flat) != st.utility(j, z, flat2)) ok = false;
            }
          }
          if (ok) found = cand;
        }
        if (found < 0) {
          res.rich = false;
          res.witness.clear();
          return res;
        }
        res.witness[{i, ti, s}] = found;
      }
    }
  }
  return res;
}

}  // namespace rationalizer
