#pragma once

// Vertex-to-halfspace conversion of the convex hull of a type set, at desk
// scale. The hull is never full-dimensional in R^I (each block sums to one),
// so the affine hull is computed first and facets are enumerated inside it
// with the double description method on the cone of valid inequalities.

#include <stop_token>
#include <vector>

#include "rsp/certificate.hpp"
#include "rsp/core.hpp"

namespace rsp {

/// normal . x = offset on the whole hull.
struct Equation {
  IntegerVector normal;
  Integer offset;

  bool operator==(const Equation&) const = default;
};

/// normal . x <= offset on the whole hull, tight on a facet.
///
/// Presentation: the normal is first taken with support on the coordinates
/// that parametrize the affine hull, then every block is shifted so its
/// largest entry is zero, then the vector is made coprime. Normals are
/// therefore nonpositive integers.
struct FacetInequality {
  IntegerVector normal;
  Integer offset;

  bool operator==(const FacetInequality&) const = default;
  /// Lexicographic on (normal, offset).
  bool operator<(const FacetInequality& other) const;
};

struct HRepresentation {
  IndexLayout layout;
  std::size_t affine_dimension = 0;
  /// The J block-sum equations first, then any further equations of the
  /// affine hull.
  std::vector<Equation> equations;
  /// Sorted lexicographically by (normal, offset).
  std::vector<FacetInequality> facets;

  std::size_t num_block_equations() const { return layout.num_problems(); }
};

struct FacetCaps {
  std::size_t max_dimension = 24;
  std::size_t max_vertices = 5000;
};

/// Throws CapExceeded when I or |types| exceeds the caps and Cancelled when
/// `stop` is requested between constraint insertions.
HRepresentation enumerate_facets(const RationalTypeSet& types, const FacetCaps& caps = {},
                                 std::stop_token stop = {});

/// True iff x satisfies every equation and every facet inequality.
bool satisfies(const HRepresentation& h, std::span<const Rational> x);

/// Membership via the H-representation; independent of the LP route.
bool facet_membership_oracle(const StochasticChoiceVector& pi, const HRepresentation& h);

/// One trial sequence per facet: positivize -> integerize -> decompose of
/// the facet normal.
std::vector<TrialSequence> essential_sequences(const HRepresentation& h, const IndexLayout& layout,
                                               DecompositionMode mode = DecompositionMode::canonical);

/// Two trial sequences (both orientations) per equation beyond the block
/// sums. Empty when the hull spans the whole block-sum space. Together with
/// essential_sequences, checking the axiom on these is equivalent to
/// membership for every valid pi.
std::vector<TrialSequence> equation_sequences(const HRepresentation& h, const IndexLayout& layout,
                                              DecompositionMode mode = DecompositionMode::canonical);

}  // namespace rsp
