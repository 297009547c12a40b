#include "rsp/certificate.hpp"

#include <algorithm>
#include <set>

#include "rsp/errors.hpp"

namespace rsp {

RationalVector positivize(std::span<const Rational> t) {
  RationalVector out(t.begin(), t.end());
  Rational norm = 0;
  bool negative = false;
  for (const auto& v : t) {
    if (sgn(v) < 0) negative = true;
    if (abs(v) > norm) norm = abs(v);
  }
  if (!negative) return out;
  for (auto& v : out) v += norm;
  return out;
}

IntegerVector integerize(std::span<const Rational> t) { return primitive_integer(t); }

TrialSequence decompose_to_trials(std::span<const Integer> aggregate, const IndexLayout& layout,
                                  DecompositionMode mode) {
  const std::size_t dim = layout.dimension();
  if (aggregate.size() != dim)
    throw InputError("decompose: aggregate has " + std::to_string(aggregate.size()) +
                     " entries, layout has " + std::to_string(dim));
  bool nonzero = false;
  for (std::size_t i = 0; i < dim; ++i) {
    if (sgn(aggregate[i]) < 0)
      throw InputError("decompose: negative aggregate entry at coordinate " + std::to_string(i));
    nonzero = nonzero || sgn(aggregate[i]) != 0;
  }
  if (!nonzero) throw InputError("decompose: all-zero aggregate has no trial sequence");

  std::vector<TrialCount> trials;
  if (mode == DecompositionMode::canonical) {
    for (std::size_t i = 0; i < dim; ++i) {
      if (sgn(aggregate[i]) == 0) continue;
      std::vector<std::uint8_t> bits(dim, 0);
      bits[i] = 1;
      trials.push_back({Trial{layout.block_of(i), std::move(bits)}, aggregate[i]});
    }
  } else {
    for (std::size_t j = 0; j < layout.num_problems(); ++j) {
      const std::size_t off = layout.block_offset(j);
      const std::size_t len = layout.block_size(j);
      std::set<Integer> levels;
      for (std::size_t i = off; i < off + len; ++i)
        if (sgn(aggregate[i]) > 0) levels.insert(aggregate[i]);
      Integer previous = 0;
      for (const auto& level : levels) {
        std::vector<std::uint8_t> bits(dim, 0);
        for (std::size_t i = off; i < off + len; ++i) bits[i] = aggregate[i] >= level ? 1 : 0;
        trials.push_back({Trial{j, std::move(bits)}, level - previous});
        previous = level;
      }
    }
  }
  return TrialSequence(dim, std::move(trials));
}

ViolationCertificate make_certificate(const SeparatingVector& sep, const StochasticChoiceVector& pi,
                                      const RationalTypeSet& types, DecompositionMode mode) {
  require_same_layout(pi.layout, types.layout(), "certificate");
  if (sep.t.size() != pi.layout.dimension())
    throw InputError("certificate: separating vector has the wrong length");
  Rational gap = separation_gap(sep.t, pi, types);
  if (sgn(gap) <= 0)
    throw InputError("certificate: vector does not strictly separate (gap " + to_string(gap) + ")");

  ViolationCertificate cert;
  cert.separating = {sep.t, gap};
  cert.positivized = positivize(sep.t);
  cert.integer_aggregate = integerize(cert.positivized);
  cert.trials = decompose_to_trials(cert.integer_aggregate, pi.layout, mode);
  auto check = arsp_check(cert.trials, pi, types);
  if (check.holds) throw std::logic_error("certificate: trial sequence does not violate the axiom");
  cert.lhs = std::move(check.lhs);
  cert.rhs = std::move(check.rhs);
  return cert;
}

Verdict decide(const StochasticChoiceVector& pi, const RationalTypeSet& types,
               DecompositionMode mode) {
  auto result = test_membership(pi, types);
  if (auto* mix = std::get_if<MixingDistribution>(&result)) return reduce_support(*mix);
  return make_certificate(std::get<SeparatingVector>(result), pi, types, mode);
}

}  // namespace rsp
