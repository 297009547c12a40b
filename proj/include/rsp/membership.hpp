#pragma once

#include <variant>
#include <vector>

#include "rsp/core.hpp"

namespace rsp {

struct WeightedType {
  ChoiceTypeVector type;
  Rational weight;
};

/// Positive weights over types, sorted by type, summing to one.
struct MixingDistribution {
  std::vector<WeightedType> weights;
};

/// t . pi - max_R t . R = gap > 0.
struct SeparatingVector {
  RationalVector t;
  Rational gap;
};

using MembershipResult = std::variant<MixingDistribution, SeparatingVector>;

/// Decides whether pi lies in the convex hull of the types.
///
/// Solves  lambda >= 0,  sum lambda = 1,  sum lambda_R R = pi  with the exact
/// phase-I simplex. A feasible basis gives the mixture; otherwise the Farkas
/// ray of the infeasible system is the separating functional. Its
/// presentation is normalized: each block is shifted so that its smallest
/// entry is zero (this leaves the gap unchanged because every block of pi and
/// of every type sums to one), then the vector is scaled to coprime integers.
///
/// With a single type the answer is pi == R; on failure the separator is
/// sign(pi_i - R_i) e_i for the lowest differing coordinate i.
MembershipResult test_membership(const StochasticChoiceVector& pi, const RationalTypeSet& types);

/// Carathéodory cleanup: repeatedly moves along an affine dependence of the
/// support until a weight vanishes. The support of the result is affinely
/// independent, hence at most I - J + 1 types. Idempotent.
MixingDistribution reduce_support(const MixingDistribution& dist);

/// sum_R weight(R) R.
RationalVector mixture_point(const MixingDistribution& dist, std::size_t dimension);

/// Exact check of the mixture invariants against pi and the type set.
bool is_valid_mixture(const MixingDistribution& dist, const StochasticChoiceVector& pi,
                      const RationalTypeSet& types);

}  // namespace rsp
