#ifndef RATIONALIZER_KERNEL_HPP
#define RATIONALIZER_KERNEL_HPP

#include <optional>
#include <vector>

#include "rationalizer/conjecture.hpp"

namespace rationalizer {

// Per conditioning history: either free or a support restriction to the given
// atom set. Probability-1 requirements on a set coincide with support
// restrictions over finitely many atoms.
struct Restrictions {
  std::vector<std::optional<std::vector<bool>>> allowed;  // per conditioning position

  static Restrictions free_all(const BeliefUniverse& u) {
    Restrictions r;
    r.allowed.assign(u.conditioning().size(), std::nullopt);
    return r;
  }
};

enum class JustifyMode { kWeak, kStrict };

// Which histories the strategy must be optimal at:
//  - kReachable: every own history the strategy itself reaches (sequential
//    best response);
//  - kAllOwn: every own history, reached or not (optimal planning);
//  - kExAnte: the root only (normal-form rationality).
enum class OptimalityScope { kReachable, kAllOwn, kExAnte };

struct InadmissibleRestriction : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exact decision procedure for the existence of a conjecture satisfying the
// restrictions under which the strategy is a best response (weak) or its
// outcome class is exactly the best-response set (strict). Null/positive
// regimes over the conditioning order are enumerated outright; within a
// regime, beliefs at non-scratch histories are the normalized restrictions of
// their nearest scratch ancestor, which makes every requirement linear in the
// scratch weights. Strictness is decided by maximizing a shared slack.
std::optional<Cps> justifiable(const BeliefUniverse& u, StrategyIdx s, const Restrictions& r,
                               JustifyMode mode = JustifyMode::kWeak,
                               OptimalityScope scope = OptimalityScope::kReachable);

}  // namespace rationalizer

#endif  // RATIONALIZER_KERNEL_HPP
