#include "rsp/lp.hpp"

#include <stdexcept>

namespace rsp {

FeasibilityResult find_nonnegative_solution(const RationalMatrix& a, std::span<const Rational> b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw std::invalid_argument("feasibility: rhs length mismatch");

  // Columns: [0, n) structural, [n, n+m) artificial, n+m is the rhs.
  const std::size_t width = n + m + 1;
  const std::size_t rhs = n + m;
  RationalMatrix tab(m, width);
  std::vector<int> flip(m, 1);
  for (std::size_t r = 0; r < m; ++r) {
    flip[r] = sgn(b[r]) < 0 ? -1 : 1;
    for (std::size_t c = 0; c < n; ++c) tab(r, c) = flip[r] * a(r, c);
    tab(r, n + r) = 1;
    tab(r, rhs) = flip[r] * b[r];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

  // Reduced costs of  min sum(artificials): d_j = c_j - 1^T column_j.
  RationalVector cost(width);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < m; ++r) cost[c] -= tab(r, c);
  for (std::size_t r = 0; r < m; ++r) cost[rhs] -= tab(r, rhs);

  FeasibilityResult out;
  for (;;) {
    // Bland: lowest-index improving column.
    std::size_t enter = width;
    for (std::size_t c = 0; c < n + m; ++c)
      if (sgn(cost[c]) < 0) {
        enter = c;
        break;
      }
    if (enter == width) break;

    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t r = 0; r < m; ++r) {
      if (sgn(tab(r, enter)) <= 0) continue;
      Rational ratio = tab(r, rhs) / tab(r, enter);
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = std::move(ratio);
      }
    }
    // Phase I is bounded below by zero, so a ratio row always exists.
    if (leave == m) throw std::logic_error("feasibility: unbounded phase-I direction");

    Rational inv = 1 / tab(leave, enter);
    for (std::size_t c = 0; c < width; ++c) tab(leave, c) *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || sgn(tab(r, enter)) == 0) continue;
      Rational f = tab(r, enter);
      for (std::size_t c = 0; c < width; ++c) tab(r, c) -= f * tab(leave, c);
    }
    if (sgn(cost[enter]) != 0) {
      Rational f = cost[enter];
      for (std::size_t c = 0; c < width; ++c) cost[c] -= f * tab(leave, c);
    }
    basis[leave] = enter;
    ++out.pivots;
  }

  // cost[rhs] holds minus the phase-I objective.
  if (sgn(cost[rhs]) == 0) {
    out.feasible = true;
    out.solution.assign(n, Rational(0));
    for (std::size_t r = 0; r < m; ++r)
      if (basis[r] < n) out.solution[basis[r]] = tab(r, rhs);
    return out;
  }

  // Dual prices y' = c_B B^{-1}; the artificial column k has reduced cost
  // 1 - y'_k. Undo the row flips to get y for the original system.
  out.farkas.resize(m);
  for (std::size_t r = 0; r < m; ++r) out.farkas[r] = flip[r] * (1 - cost[n + r]);
  return out;
}

}  // namespace rsp
