#pragma once

// Power-set lifting of set-valued choice. Every subset of the universe becomes
// an alternative of the lifted universe, and a problem C becomes the problem
// of all subsets of C, the empty set included. Set-valued data on the base
// problems is then ordinary single-valued data on the lifted problems, and
// the membership machinery applies unchanged.

#include <cstdint>
#include <vector>

#include "rsp/core.hpp"

namespace rsp {

/// Bitmask over base universe indices.
using SubsetMask = std::uint32_t;

/// Cap on both 2^K and sum_j 2^|C_j|.
inline constexpr std::size_t kMaxLiftedSize = std::size_t{1} << 16;

struct LiftedLayout {
  ChoiceUniverse base_universe;
  std::vector<ChoiceProblem> base_problems;
  /// Lifted alternative index -> subset; ordered by cardinality, then
  /// lexicographically on the sorted member indices.
  std::vector<SubsetMask> subsets;
  ChoiceUniverse lifted_universe;  // labels "{}", "{a}", "{a,b}", ...
  IndexLayout layout;

  /// Lifted alternative index of a subset.
  std::size_t alternative_of(SubsetMask s) const;
  /// Coordinate of subset s inside lifted block j; throws InputError if s is
  /// not a subset of C_j.
  std::size_t coordinate(std::size_t j, SubsetMask s) const;
  SubsetMask subset_at(std::size_t coordinate) const;

  std::vector<std::size_t> alternative_by_mask;  // indexed by SubsetMask
};

SubsetMask mask_of(const std::vector<std::size_t>& members);
std::string subset_label(SubsetMask s, const ChoiceUniverse& universe);

/// Throws CapExceeded when 2^K or sum_j 2^|C_j| exceeds 2^16.
LiftedLayout lift_layout(const ChoiceUniverse& universe, const std::vector<ChoiceProblem>& problems);

struct SubsetProbability {
  SubsetMask subset = 0;
  Rational probability;
};

/// observations[j] lists probabilities of chosen subsets of C_j; unlisted
/// subsets get zero. Throws InputError on a non-subset, a repeated subset or
/// a block that does not sum to one.
StochasticChoiceVector lift_set_valued_data(const std::vector<std::vector<SubsetProbability>>& observations,
                                            const LiftedLayout& lifted);

/// Singleton-valued data viewed on the lifted layout: pi(x|C) moves to the
/// coordinate of {x} in the lifted block.
StochasticChoiceVector lift_choice_probabilities(const StochasticChoiceVector& base,
                                                 const LiftedLayout& lifted);

/// Each base type selects the singleton of its choice in every lifted block.
RationalTypeSet lift_choice_types(const RationalTypeSet& base, const LiftedLayout& lifted);

/// Choice correspondences of weak-order maximizers: for every weak order,
/// block j selects the set of maximal members of C_j. Throws CapExceeded for
/// K > 6.
RationalTypeSet correspondence_types_from_weak_orders(const LiftedLayout& lifted);
/// Same, after checking that `lifted` is the lifting of (universe, problems).
RationalTypeSet correspondence_types_from_weak_orders(const ChoiceUniverse& universe,
                                                      const std::vector<ChoiceProblem>& problems,
                                                      const LiftedLayout& lifted);

/// Downward-closed trial aggregates: for each problem j and each S subset of
/// C_j, the indicator over block j of all subsets of S. These are the only
/// queries allowed when a probability is read as "S or any of its subsets".
std::vector<IntegerVector> restricted_trials(const LiftedLayout& lifted);

/// True iff no nonnegative combination of restricted trials violates the
/// axiom. Decided by LP duality: holds iff some distribution mu over the
/// types satisfies Q.pi <= sum_R mu_R Q.R for every restricted trial Q.
bool check_restricted_arsp(const StochasticChoiceVector& pi, const RationalTypeSet& types,
                           const LiftedLayout& lifted);

}  // namespace rsp
