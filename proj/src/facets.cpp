#include "rsp/facets.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>

#include "rsp/errors.hpp"
#include "rsp/linalg.hpp"

namespace rsp {

namespace {

using Bitset = boost::dynamic_bitset<>;

struct Ray {
  IntegerVector x;
  Bitset tight;  // processed constraints that are active at x
};

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Extreme rays of { y : rows[k] . y <= 0 for all k }, a pointed cone whose
// constraint matrix has full column rank.
std::vector<Ray> double_description(const std::vector<IntegerVector>& rows, std::size_t dim,
                                    const std::stop_token& stop) {
  const std::size_t n = rows.size();

  // Initial simplicial cone from the first linearly independent rows.
  std::vector<std::size_t> basis_rows;
  {
    std::vector<RationalVector> picked;
    for (std::size_t k = 0; k < n && basis_rows.size() < dim; ++k) {
      picked.push_back(to_rational(rows[k]));
      if (rank(from_rows(picked, dim)) == picked.size())
        basis_rows.push_back(k);
      else
        picked.pop_back();
    }
    if (basis_rows.size() < dim) throw std::logic_error("double description: rank deficient");
  }
  RationalMatrix a0(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) a0(r, c) = rows[basis_rows[r]][c];
  RationalMatrix inv = inverse(a0);

  std::vector<Ray> rays;
  for (std::size_t c = 0; c < dim; ++c) {
    RationalVector col(dim);
    for (std::size_t r = 0; r < dim; ++r) col[r] = -inv(r, c);
    Ray ray{primitive_integer(std::span<const Rational>(col)), Bitset(n)};
    for (std::size_t r = 0; r < dim; ++r)
      if (r != c) ray.tight.set(basis_rows[r]);
    rays.push_back(std::move(ray));
  }

  std::vector<bool> done(n, false);
  for (auto k : basis_rows) done[k] = true;

  for (std::size_t k = 0; k < n; ++k) {
    if (done[k]) continue;
    if (stop.stop_requested()) throw Cancelled("facet enumeration cancelled");

    std::vector<Integer> value(rays.size());
    std::vector<std::size_t> plus, minus;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      value[r] = dot(rows[k], rays[r].x);
      int s = sgn(value[r]);
      if (s > 0) plus.push_back(r);
      if (s < 0) minus.push_back(r);
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (sgn(value[r]) > 0) continue;
      Ray kept = rays[r];
      if (sgn(value[r]) == 0) kept.tight.set(k);
      next.push_back(std::move(kept));
    }
    for (auto p : plus) {
      for (auto q : minus) {
        Bitset common = rays[p].tight & rays[q].tight;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && common.is_subset_of(rays[r].tight)) adjacent = false;
        if (!adjacent) continue;
        IntegerVector combo(dim);
        for (std::size_t i = 0; i < dim; ++i)
          combo[i] = value[p] * rays[q].x[i] - value[q] * rays[p].x[i];
        common.set(k);
        next.push_back({primitive_integer(std::span<const Integer>(combo)), std::move(common)});
      }
    }
    rays = std::move(next);
    done[k] = true;
  }
  return rays;
}

IntegerVector shift_blocks_to_max_zero(IntegerVector v, const IndexLayout& layout) {
  for (std::size_t j = 0; j < layout.num_problems(); ++j) {
    auto first = v.begin() + static_cast<std::ptrdiff_t>(layout.block_offset(j));
    auto last = first + static_cast<std::ptrdiff_t>(layout.block_size(j));
    Integer hi = *std::max_element(first, last);
    for (auto it = first; it != last; ++it) *it -= hi;
  }
  return primitive_integer(std::span<const Integer>(v));
}

Integer max_over_vertices(std::span<const Integer> normal, const RationalTypeSet& types) {
  return max_over_types(normal, types).value.get_num();
}

std::vector<TrialSequence> sequences_for(const std::vector<IntegerVector>& normals,
                                         const IndexLayout& layout, DecompositionMode mode) {
  std::vector<TrialSequence> out;
  out.reserve(normals.size());
  for (const auto& n : normals) {
    auto shifted = positivize(to_rational(n));
    out.push_back(decompose_to_trials(integerize(shifted), layout, mode));
  }
  return out;
}

}  // namespace

bool FacetInequality::operator<(const FacetInequality& other) const {
  if (normal != other.normal) return normal < other.normal;
  return offset < other.offset;
}

HRepresentation enumerate_facets(const RationalTypeSet& types, const FacetCaps& caps,
                                 std::stop_token stop) {
  const auto& layout = types.layout();
  const std::size_t dim = layout.dimension();
  const std::size_t n = types.size();
  if (dim > caps.max_dimension || n > caps.max_vertices)
    throw CapExceeded("facet enumeration refused: I=" + std::to_string(dim) + " with " +
                      std::to_string(n) + " vertices exceeds the caps (I <= " +
                      std::to_string(caps.max_dimension) + ", vertices <= " +
                      std::to_string(caps.max_vertices) +
                      "); halfspace conversion grows combinatorially with both");

  HRepresentation h;
  h.layout = layout;

  // Affine hull from the differences v_k - v_0.
  std::vector<RationalVector> diffs;
  for (std::size_t k = 1; k < n; ++k) {
    RationalVector d(dim);
    for (std::size_t i = 0; i < dim; ++i) d[i] = int(types[k].bits[i]) - int(types[0].bits[i]);
    diffs.push_back(std::move(d));
  }
  std::vector<std::size_t> pivots;
  std::vector<RationalVector> null;
  if (diffs.empty()) {
    for (std::size_t i = 0; i < dim; ++i) {
      RationalVector e(dim);
      e[i] = 1;
      null.push_back(std::move(e));
    }
  } else {
    auto m = from_rows(diffs, dim);
    pivots = reduced_row_echelon(m).pivots;
    null = null_space(m);
  }
  h.affine_dimension = pivots.size();

  std::vector<RationalVector> spanned;
  for (std::size_t j = 0; j < layout.num_problems(); ++j) {
    IntegerVector normal(dim);
    RationalVector row(dim);
    for (std::size_t i = 0; i < layout.block_size(j); ++i) {
      normal[layout.block_offset(j) + i] = 1;
      row[layout.block_offset(j) + i] = 1;
    }
    h.equations.push_back({std::move(normal), Integer(1)});
    spanned.push_back(std::move(row));
  }
  std::size_t current_rank = rank(from_rows(spanned, dim));
  for (auto& v : null) {
    spanned.push_back(v);
    std::size_t r = rank(from_rows(spanned, dim));
    if (r == current_rank) {
      spanned.pop_back();
      continue;
    }
    current_rank = r;
    IntegerVector normal = primitive_integer(std::span<const Rational>(v));
    auto first_nonzero = std::find_if(normal.begin(), normal.end(), [](const Integer& z) { return sgn(z) != 0; });
    if (first_nonzero != normal.end() && sgn(*first_nonzero) < 0)
      for (auto& z : normal) z = -z;
    Integer offset = inner(std::span<const Integer>(normal), types[0]);
    h.equations.push_back({std::move(normal), std::move(offset)});
  }

  const std::size_t d = pivots.size();
  if (d == 0) return h;

  // Cone of valid inequalities (a, b) with a . p_k <= b, i.e. (p_k, -1).(a, b) <= 0,
  // where p_k is vertex k restricted to the pivot coordinates.
  std::vector<IntegerVector> rows;
  rows.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    IntegerVector row(d + 1);
    for (std::size_t c = 0; c < d; ++c) row[c] = types[k].bits[pivots[c]];
    row[d] = -1;
    rows.push_back(std::move(row));
  }
  auto rays = double_description(rows, d + 1, stop);

  for (const auto& ray : rays) {
    IntegerVector normal(dim);
    for (std::size_t c = 0; c < d; ++c) normal[pivots[c]] = ray.x[c];
    normal = shift_blocks_to_max_zero(std::move(normal), layout);
    Integer offset = max_over_vertices(normal, types);
    h.facets.push_back({std::move(normal), std::move(offset)});
  }
  std::sort(h.facets.begin(), h.facets.end());
  h.facets.erase(std::unique(h.facets.begin(), h.facets.end()), h.facets.end());
  return h;
}

bool satisfies(const HRepresentation& h, std::span<const Rational> x) {
  if (x.size() != h.layout.dimension()) throw InputError("facet oracle: dimension mismatch");
  for (const auto& e : h.equations)
    if (inner(std::span<const Integer>(e.normal), x) != e.offset) return false;
  for (const auto& f : h.facets)
    if (inner(std::span<const Integer>(f.normal), x) > f.offset) return false;
  return true;
}

bool facet_membership_oracle(const StochasticChoiceVector& pi, const HRepresentation& h) {
  require_same_layout(pi.layout, h.layout, "facet oracle");
  return satisfies(h, pi.values);
}

std::vector<TrialSequence> essential_sequences(const HRepresentation& h, const IndexLayout& layout,
                                               DecompositionMode mode) {
  require_same_layout(layout, h.layout, "essential sequences");
  std::vector<IntegerVector> normals;
  for (const auto& f : h.facets) normals.push_back(f.normal);
  return sequences_for(normals, layout, mode);
}

std::vector<TrialSequence> equation_sequences(const HRepresentation& h, const IndexLayout& layout,
                                              DecompositionMode mode) {
  require_same_layout(layout, h.layout, "equation sequences");
  std::vector<IntegerVector> normals;
  for (std::size_t e = h.num_block_equations(); e < h.equations.size(); ++e) {
    normals.push_back(h.equations[e].normal);
    IntegerVector neg = h.equations[e].normal;
    for (auto& z : neg) z = -z;
    normals.push_back(std::move(neg));
  }
  return sequences_for(normals, layout, mode);
}

}  // namespace rsp
