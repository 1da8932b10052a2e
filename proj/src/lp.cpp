#include "rationalizer/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace rationalizer {

namespace {

// Full-tableau simplex on equality rows with nonnegative rhs.
struct Tableau {
  int rows = 0;
  int cols = 0;                     // structural columns, excluding rhs
  std::vector<std::vector<Rat>> t;  // rows x (cols + 1); last entry is rhs
  std::vector<int> basis;           // basic column per row
  std::vector<bool> blocked;        // columns barred from entering

  void pivot(int r, int c) {
    Rat inv = Rat(1) / t[r][c];
    for (auto& v : t[r]) v *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rat f = t[i][c];
      for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Maximizes obj over the feasible region. Returns false when unbounded.
  // Bland's rule throughout, so cycling is impossible.
  bool optimize(const std::vector<Rat>& obj) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols && enter < 0; ++j) {
        if (blocked[j]) continue;
        bool basic = false;
        for (int r = 0; r < rows; ++r)
          if (basis[r] == j) basic = true;
        if (basic) continue;
        Rat rc = obj[j];
        for (int r = 0; r < rows; ++r)
          if (obj[basis[r]] != 0) rc -= obj[basis[r]] * t[r][j];
        if (rc > 0) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      Rat best(0);
      for (int r = 0; r < rows; ++r) {
        if (t[r][enter] <= 0) continue;
        Rat ratio = t[r][cols] / t[r][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  Rat objective_value(const std::vector<Rat>& obj) const {
    Rat v(0);
    for (int r = 0; r < rows; ++r)
      if (obj[basis[r]] != 0) v += obj[basis[r]] * t[r][cols];
    return v;
  }
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<Rat>>& a_ub, const std::vector<Rat>& b_ub,
                  const std::vector<std::vector<Rat>>& a_eq, const std::vector<Rat>& b_eq,
                  const std::vector<Rat>& c) {
  int n = static_cast<int>(c.size());
  int m_ub = static_cast<int>(a_ub.size());
  int m_eq = static_cast<int>(a_eq.size());
  int rows = m_ub + m_eq;

  int slack0 = n;
  int art0 = n + m_ub;
  int cols = art0 + rows;

  Tableau tab;
  tab.rows = rows;
  tab.cols = cols;
  tab.t.assign(rows, std::vector<Rat>(cols + 1, Rat(0)));
  tab.basis.assign(rows, -1);
  tab.blocked.assign(cols, false);

  for (int r = 0; r < rows; ++r) {
    bool is_ub = r < m_ub;
    const auto& row = is_ub ? a_ub[r] : a_eq[r - m_ub];
    Rat rhs = is_ub ? b_ub[r] : b_eq[r - m_ub];
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("ragged LP row");
    bool flip = rhs < 0;
    for (int j = 0; j < n; ++j) tab.t[r][j] = flip ? Rat(-row[j]) : row[j];
    if (is_ub) tab.t[r][slack0 + r] = flip ? Rat(-1) : Rat(1);
    tab.t[r][cols] = flip ? Rat(-rhs) : rhs;
    if (is_ub && !flip) {
      tab.basis[r] = slack0 + r;
      tab.blocked[art0 + r] = true;
    } else {
      tab.t[r][art0 + r] = Rat(1);
      tab.basis[r] = art0 + r;
    }
  }

  LpResult res;
  bool any_art = false;
  for (int r = 0; r < rows; ++r)
    if (tab.basis[r] >= art0) any_art = true;

  if (any_art) {
    std::vector<Rat> phase1(cols, Rat(0));
    for (int j = art0; j < cols; ++j)
      if (!tab.blocked[j]) phase1[j] = Rat(-1);
    tab.optimize(phase1);
    if (tab.objective_value(phase1) != 0) {
      res.status = LpStatus::kInfeasible;
      return res;
    }
    for (int j = art0; j < cols; ++j) tab.blocked[j] = true;
    for (int r = 0; r < rows; ++r) {
      if (tab.basis[r] < art0) continue;
      int col = -1;
      for (int j = 0; j < art0 && col < 0; ++j)
        if (tab.t[r][j] != 0) col = j;
      if (col >= 0) {
        tab.pivot(r, col);
      } else {
        // Redundant row: freeze it so later pivots cannot revive it.
        for (int j = 0; j <= cols; ++j) tab.t[r][j] = Rat(0);
        tab.t[r][tab.basis[r]] = Rat(1);
      }
    }
  } else {
    for (int j = art0; j < cols; ++j) tab.blocked[j] = true;
  }

  std::vector<Rat> phase2(cols, Rat(0));
  for (int j = 0; j < n; ++j) phase2[j] = c[j];
  if (!tab.optimize(phase2)) {
    res.status = LpStatus::kUnbounded;
    return res;
  }
  res.status = LpStatus::kOptimal;
  res.value = tab.objective_value(phase2);
  res.x.assign(n, Rat(0));
  for (int r = 0; r < rows; ++r)
    if (tab.basis[r] < n) res.x[tab.basis[r]] = tab.t[r][tab.cols];
  return res;
}

}  // namespace rationalizer
