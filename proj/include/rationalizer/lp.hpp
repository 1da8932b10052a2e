#ifndef RATIONALIZER_LP_HPP
#define RATIONALIZER_LP_HPP

#include <vector>

#include "rationalizer/rational.hpp"

namespace rationalizer {

enum class LpStatus { kInfeasible, kUnbounded, kOptimal };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rat value{0};
  std::vector<Rat> x;
};

// max c·x  subject to  A_ub·x ≤ b_ub,  A_eq·x = b_eq,  x ≥ 0.
// Exact two-phase simplex with Bland's rule; no tolerances anywhere.
LpResult solve_lp(const std::vector<std::vector<Rat>>& a_ub, const std::vector<Rat>& b_ub,
                  const std::vector<std::vector<Rat>>& a_eq, const std::vector<Rat>& b_eq,
                  const std::vector<Rat>& c);

}  // namespace rationalizer

#endif  // RATIONALIZER_LP_HPP
