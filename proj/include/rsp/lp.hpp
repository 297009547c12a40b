#pragma once

#include <span>

#include "rsp/linalg.hpp"
#include "rsp/rational.hpp"

namespace rsp {

/// Outcome of deciding { x >= 0 : A x = b } in exact arithmetic.
///
/// Exactly one of the two vectors is meaningful:
///  - feasible: `solution` is a basic feasible point (its support columns are
///    linearly independent);
///  - infeasible: `farkas` is a row vector y with y^T A <= 0 and y^T b > 0.
struct FeasibilityResult {
  bool feasible = false;
  RationalVector solution;
  RationalVector farkas;
  std::size_t pivots = 0;
};

/// Phase-I primal simplex on a dense tableau with Bland's rule.
FeasibilityResult find_nonnegative_solution(const RationalMatrix& a, std::span<const Rational> b);

}  // namespace rsp
