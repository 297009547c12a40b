#pragma once

// Test-only builders, random generators and brute-force oracles. Nothing
// here calls the LP or the double description code.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rsp/core.hpp"
#include "rsp/linalg.hpp"
#include "rsp/types.hpp"

namespace rsp::testing {

inline ChoiceUniverse letters(std::size_t k) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return ChoiceUniverse(labels);
}

inline IndexLayout layout_of(std::size_t k, const std::vector<std::vector<std::size_t>>& problems) {
  std::vector<ChoiceProblem> ps;
  for (const auto& p : problems) ps.push_back({p});
  return build_layout(letters(k), ps);
}

/// All pairs {x,y}, x < y, in lexicographic order: ab, ac, ..., bc, ...
inline IndexLayout pairwise_layout(std::size_t k) {
  std::vector<std::vector<std::size_t>> ps;
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = x + 1; y < k; ++y) ps.push_back({x, y});
  return layout_of(k, ps);
}

inline RationalVector q(const std::vector<std::string>& xs) {
  RationalVector out;
  for (const auto& s : xs) out.push_back(parse_rational(s));
  return out;
}

inline StochasticChoiceVector pi_of(const IndexLayout& layout, const std::vector<std::string>& xs) {
  return validate_pi(q(xs), layout);
}

/// Coordinate of "x chosen from problem j" by labels; for pairwise layouts.
inline std::size_t coord(const IndexLayout& layout, std::size_t j, char x) {
  return *layout.coordinate(j, static_cast<std::size_t>(x - 'a'));
}

/// Index of the pairwise problem {x, y} in pairwise_layout(k).
inline std::size_t pair_index(std::size_t k, char x, char y) {
  std::size_t a = static_cast<std::size_t>(std::min(x, y) - 'a');
  std::size_t b = static_cast<std::size_t>(std::max(x, y) - 'a');
  std::size_t j = 0;
  for (std::size_t u = 0; u < k; ++u)
    for (std::size_t v = u + 1; v < k; ++v, ++j)
      if (u == a && v == b) return j;
  return j;
}

/// Linear-order types computed by recursive insertion, independent of
/// for_each_linear_order / next_permutation.
inline std::set<ChoiceTypeVector> brute_linear_order_types(const IndexLayout& layout) {
  const std::size_t k = layout.num_alternatives();
  std::set<ChoiceTypeVector> out;
  std::vector<std::size_t> order;
  std::vector<bool> used(k, false);
  auto rec = [&](auto&& self) -> void {
    if (order.size() == k) {
      ChoiceTypeVector t{std::vector<std::uint8_t>(layout.dimension(), 0)};
      for (std::size_t j = 0; j < layout.num_problems(); ++j) {
        for (auto x : order) {
          if (auto c = layout.coordinate(j, x)) {
            t.bits[*c] = 1;
            break;
          }
        }
      }
      out.insert(t);
      return;
    }
    for (std::size_t x = 0; x < k; ++x) {
      if (used[x]) continue;
      used[x] = true;
      order.push_back(x);
      self(self);
      order.pop_back();
      used[x] = false;
    }
  };
  rec(rec);
  return out;
}

inline Rational brute_max(std::span<const Rational> t, const std::vector<ChoiceTypeVector>& types) {
  Rational best;
  bool first = true;
  for (const auto& r : types) {
    Rational v = 0;
    for (std::size_t i = 0; i < t.size(); ++i) v += t[i] * int(r.bits[i]);
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

inline Rational brute_gap(std::span<const Rational> t, const StochasticChoiceVector& pi,
                          const RationalTypeSet& types) {
  Rational lhs = 0;
  for (std::size_t i = 0; i < t.size(); ++i) lhs += t[i] * pi.values[i];
  return lhs - brute_max(t, types.types());
}

using Rng = std::mt19937_64;

inline Rational ratio(std::size_t num, std::size_t den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// K in [1, max_k], J in [1, max_j], problems are random nonempty subsets.
inline IndexLayout random_layout(Rng& rng, std::size_t max_k, std::size_t max_j, std::size_t min_size = 1) {
  std::size_t k = uniform(rng, std::max<std::size_t>(1, min_size), max_k);
  std::size_t j = uniform(rng, 1, max_j);
  std::vector<std::vector<std::size_t>> ps;
  for (std::size_t p = 0; p < j; ++p) {
    std::vector<std::size_t> members;
    while (members.size() < min_size || members.empty()) {
      members.clear();
      for (std::size_t x = 0; x < k; ++x)
        if (uniform(rng, 0, 1)) members.push_back(x);
    }
    ps.push_back(members);
  }
  return layout_of(k, ps);
}

/// Each block gets integer weights in [0, max_weight], normalized.
inline StochasticChoiceVector random_pi(Rng& rng, const IndexLayout& layout, std::size_t max_weight = 6) {
  RationalVector v(layout.dimension());
  for (std::size_t j = 0; j < layout.num_problems(); ++j) {
    std::vector<std::size_t> w(layout.block_size(j));
    std::size_t total = 0;
    while (total == 0) {
      total = 0;
      for (auto& x : w) total += (x = uniform(rng, 0, max_weight));
    }
    for (std::size_t i = 0; i < w.size(); ++i) v[layout.block_offset(j) + i] = ratio(w[i], total);
  }
  return validate_pi(std::move(v), layout);
}

/// A random distribution over the types (positive weights on a random
/// nonempty subset) and its mixture point.
inline StochasticChoiceVector random_mixture(Rng& rng, const RationalTypeSet& types) {
  const std::size_t dim = types.layout().dimension();
  std::vector<std::size_t> w(types.size(), 0);
  std::size_t total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : w) total += (x = uniform(rng, 0, 1) ? uniform(rng, 1, 9) : 0);
  }
  RationalVector v(dim);
  for (std::size_t k = 0; k < types.size(); ++k)
    for (std::size_t i = 0; i < dim; ++i)
      if (types[k].bits[i]) v[i] += ratio(w[k], total);
  return validate_pi(std::move(v), types.layout());
}

/// Random nonempty subset of the linear-order types.
inline RationalTypeSet random_type_subset(Rng& rng, const RationalTypeSet& all) {
  std::vector<ChoiceTypeVector> pick;
  while (pick.empty())
    for (const auto& t : all.types())
      if (uniform(rng, 0, 2) == 0) pick.push_back(t);
  return RationalTypeSet(all.layout(), pick);
}

/// Facets of conv(types) identified by their sets of tight vertices,
/// computed by brute force over d-subsets of vertices in a coordinate
/// projection onto the affine hull.
inline std::set<std::vector<std::size_t>> brute_facet_vertex_sets(const RationalTypeSet& types) {
  const std::size_t n = types.size();
  const std::size_t dim = types.layout().dimension();
  std::vector<RationalVector> diffs;
  for (std::size_t k = 1; k < n; ++k) {
    RationalVector d(dim);
    for (std::size_t i = 0; i < dim; ++i) d[i] = int(types[k].bits[i]) - int(types[0].bits[i]);
    diffs.push_back(d);
  }
  std::set<std::vector<std::size_t>> facets;
  if (diffs.empty()) return facets;
  auto pivots = reduced_row_echelon(from_rows(diffs, dim)).pivots;
  const std::size_t d = pivots.size();
  if (d == 0) return facets;
  std::vector<RationalVector> pts;
  for (std::size_t k = 0; k < n; ++k) {
    RationalVector p(d);
    for (std::size_t c = 0; c < d; ++c) p[c] = types[k].bits[pivots[c]];
    pts.push_back(p);
  }
  std::vector<std::size_t> idx(d);
  auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
    if (depth == d) {
      std::vector<RationalVector> rows;
      for (std::size_t r = 1; r < d; ++r) {
        RationalVector diff(d);
        for (std::size_t c = 0; c < d; ++c) diff[c] = pts[idx[r]][c] - pts[idx[0]][c];
        rows.push_back(diff);
      }
      RationalVector normal;
      if (d == 1) {
        normal = RationalVector{Rational(1)};
      } else {
        auto m = from_rows(rows, d);
        if (rank(m) != d - 1) return;
        normal = null_space(m).front();
      }
      Rational b = 0;
      for (std::size_t c = 0; c < d; ++c) b += normal[c] * pts[idx[0]][c];
      bool above = false, below = false;
      std::vector<std::size_t> tight;
      for (std::size_t k = 0; k < n; ++k) {
        Rational v = 0;
        for (std::size_t c = 0; c < d; ++c) v += normal[c] * pts[k][c];
        if (v > b) above = true;
        if (v < b) below = true;
        if (v == b) tight.push_back(k);
      }
      if (above && below) return;
      facets.insert(tight);
      return;
    }
    for (std::size_t k = start; k < n; ++k) {
      idx[depth] = k;
      self(self, k + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return facets;
}

}  // namespace rsp::testing
