#pragma once

#include <variant>

#include "rsp/core.hpp"
#include "rsp/membership.hpp"

namespace rsp {

/// How an integer aggregate is split into trials.
///  canonical:  coordinate i contributes agg_i copies of the basis trial e_i.
///  compressed: per block, peel layers: the indicator of {i : agg_i >= v} for
///              each distinct positive level v, largest support first.
enum class DecompositionMode { canonical, compressed };

/// t + 1 * ||t||_inf. Vectors that are already nonnegative are returned
/// unchanged. Because 1.pi = 1.R = J, the separation gap is preserved.
RationalVector positivize(std::span<const Rational> t);

/// Scales by the lcm of the denominators, then divides by the gcd.
IntegerVector integerize(std::span<const Rational> t);

/// Throws InputError for a negative entry or an all-zero aggregate.
TrialSequence decompose_to_trials(std::span<const Integer> aggregate, const IndexLayout& layout,
                                  DecompositionMode mode);

/// An axiom violation built from a separating functional.
struct ViolationCertificate {
  SeparatingVector separating;
  RationalVector positivized;
  IntegerVector integer_aggregate;
  TrialSequence trials;
  Rational lhs;
  Rational rhs;
};

/// Runs positivize -> integerize -> decompose_to_trials and verifies that the
/// resulting trials violate the axiom strictly. Throws InputError if `sep`
/// does not strictly separate pi from the types.
ViolationCertificate make_certificate(const SeparatingVector& sep, const StochasticChoiceVector& pi,
                                      const RationalTypeSet& types, DecompositionMode mode);

using Verdict = std::variant<MixingDistribution, ViolationCertificate>;

/// test_membership followed by make_certificate on the separating branch.
Verdict decide(const StochasticChoiceVector& pi, const RationalTypeSet& types,
               DecompositionMode mode = DecompositionMode::compressed);

}  // namespace rsp
