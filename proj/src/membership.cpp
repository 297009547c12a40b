#include "rsp/membership.hpp"

#include <algorithm>

#include "rsp/errors.hpp"
#include "rsp/linalg.hpp"
#include "rsp/lp.hpp"

namespace rsp {

namespace {

SeparatingVector single_type_separator(const StochasticChoiceVector& pi, const ChoiceTypeVector& r) {
  const std::size_t dim = pi.values.size();
  for (std::size_t i = 0; i < dim; ++i) {
    Rational diff = pi.values[i] - r.bits[i];
    if (sgn(diff) == 0) continue;
    SeparatingVector sep{RationalVector(dim, Rational(0)), abs(diff)};
    sep.t[i] = sgn(diff);
    return sep;
  }
  throw std::logic_error("single_type_separator: pi equals the only type");
}

RationalVector normalize_separator(RationalVector t, const IndexLayout& layout) {
  for (std::size_t j = 0; j < layout.num_problems(); ++j) {
    auto first = t.begin() + static_cast<std::ptrdiff_t>(layout.block_offset(j));
    auto last = first + static_cast<std::ptrdiff_t>(layout.block_size(j));
    Rational lo = *std::min_element(first, last);
    for (auto it = first; it != last; ++it) *it -= lo;
  }
  return to_rational(primitive_integer(std::span<const Rational>(t)));
}

}  // namespace

MembershipResult test_membership(const StochasticChoiceVector& pi, const RationalTypeSet& types) {
  require_same_layout(pi.layout, types.layout(), "membership");
  const std::size_t dim = pi.layout.dimension();
  const std::size_t n = types.size();

  if (n == 1) {
    const auto& r = types[0];
    for (std::size_t i = 0; i < dim; ++i)
      if (pi.values[i] != r.bits[i]) return single_type_separator(pi, r);
    return MixingDistribution{{{r, Rational(1)}}};
  }

  // Rows 0..I-1: coordinates; row I: weights sum to one.
  RationalMatrix a(dim + 1, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < dim; ++i) a(i, k) = types[k].bits[i];
    a(dim, k) = 1;
  }
  RationalVector b(pi.values);
  b.emplace_back(1);

  auto lp = find_nonnegative_solution(a, b);
  if (lp.feasible) {
    MixingDistribution dist;
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(lp.solution[k]) > 0) dist.weights.push_back({types[k], lp.solution[k]});
    return dist;
  }

  RationalVector t(lp.farkas.begin(), lp.farkas.begin() + static_cast<std::ptrdiff_t>(dim));
  t = normalize_separator(std::move(t), pi.layout);
  Rational gap = separation_gap(t, pi, types);
  if (sgn(gap) <= 0) throw std::logic_error("membership: Farkas ray does not separate");
  return SeparatingVector{std::move(t), std::move(gap)};
}

RationalVector mixture_point(const MixingDistribution& dist, std::size_t dimension) {
  RationalVector x(dimension);
  for (const auto& [type, w] : dist.weights) {
    if (type.bits.size() != dimension) throw InputError("mixture: type dimension mismatch");
    for (std::size_t i = 0; i < dimension; ++i)
      if (type.bits[i]) x[i] += w;
  }
  return x;
}

bool is_valid_mixture(const MixingDistribution& dist, const StochasticChoiceVector& pi,
                      const RationalTypeSet& types) {
  if (dist.weights.empty()) return false;
  Rational total = 0;
  for (const auto& [type, w] : dist.weights) {
    if (sgn(w) <= 0 || !types.contains(type)) return false;
    total += w;
  }
  return total == 1 && mixture_point(dist, pi.values.size()) == pi.values;
}

MixingDistribution reduce_support(const MixingDistribution& dist) {
  std::vector<WeightedType> support = dist.weights;
  if (support.empty()) return dist;
  const std::size_t dim = support.front().type.bits.size();

  for (;;) {
    // Columns are (R, 1); a null vector is an affine dependence.
    const std::size_t n = support.size();
    RationalMatrix m(dim + 1, n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < dim; ++i) m(i, k) = support[k].type.bits[i];
      m(dim, k) = 1;
    }
    auto null = null_space(m);
    if (null.empty()) break;
    auto& d = null.front();
    // The coefficients of d sum to zero, so some are positive. Step along -d
    // until the first positive-direction weight hits zero (lowest index wins).
    std::size_t hit = n;
    Rational step;
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(d[k]) <= 0) continue;
      Rational s = support[k].weight / d[k];
      if (hit == n || s < step) {
        hit = k;
        step = std::move(s);
      }
    }
    std::vector<WeightedType> next;
    for (std::size_t k = 0; k < n; ++k) {
      Rational w = support[k].weight - step * d[k];
      if (k == hit || sgn(w) == 0) continue;
      next.push_back({support[k].type, std::move(w)});
    }
    support = std::move(next);
  }
  std::sort(support.begin(), support.end(),
            [](const WeightedType& x, const WeightedType& y) { return x.type < y.type; });
  return MixingDistribution{std::move(support)};
}

}  // namespace rsp
