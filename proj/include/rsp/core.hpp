#pragma once

// Vector encoding of choice data. Every quantity lives in one coordinate
// space of dimension I = sum_j |C_j|: problems are laid out one block after
// another (problem-major) and, inside a block, members follow universe order.
// Indices are zero-based throughout.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/rational.hpp"

namespace rsp {

class ChoiceUniverse {
 public:
  ChoiceUniverse() = default;
  /// Throws InputError on an empty list, an empty label or a repeated label.
  explicit ChoiceUniverse(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> find(std::string_view label) const;

  bool operator==(const ChoiceUniverse&) const = default;

 private:
  std::vector<std::string> labels_;
};

/// A subset of the universe, as indices. build_layout sorts the members
/// into universe order.
struct ChoiceProblem {
  std::vector<std::size_t> members;

  bool operator==(const ChoiceProblem&) const = default;
};

class IndexLayout {
 public:
  IndexLayout() = default;

  const ChoiceUniverse& universe() const { return universe_; }
  const std::vector<ChoiceProblem>& problems() const { return problems_; }
  const ChoiceProblem& problem(std::size_t j) const { return problems_.at(j); }

  std::size_t num_alternatives() const { return universe_.size(); }  // K
  std::size_t num_problems() const { return problems_.size(); }      // J
  std::size_t dimension() const { return dimension_; }               // I

  std::size_t block_offset(std::size_t j) const { return offsets_.at(j); }
  std::size_t block_size(std::size_t j) const { return problems_.at(j).members.size(); }
  std::size_t block_of(std::size_t coordinate) const { return block_of_.at(coordinate); }
  /// Universe index of the alternative sitting at a coordinate.
  std::size_t alternative_at(std::size_t coordinate) const;
  /// Coordinate of alternative `alt` inside block j, if alt is a member of C_j.
  std::optional<std::size_t> coordinate(std::size_t j, std::size_t alt) const;

  bool operator==(const IndexLayout&) const = default;

 private:
  friend IndexLayout build_layout(ChoiceUniverse universe, std::vector<ChoiceProblem> problems);

  ChoiceUniverse universe_;
  std::vector<ChoiceProblem> problems_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> block_of_;
  std::size_t dimension_ = 0;
};

/// Throws InputError on an empty problem list, an empty problem, a repeated
/// member or an out-of-range index. Repeated problems are kept as separate
/// blocks.
IndexLayout build_layout(ChoiceUniverse universe, std::vector<ChoiceProblem> problems);

struct StochasticChoiceVector {
  IndexLayout layout;
  RationalVector values;
};

/// Checks length, nonnegativity and that every block sums to exactly one.
StochasticChoiceVector validate_pi(RationalVector values, const IndexLayout& layout);

/// A deterministic choice function: exactly one 1 per block.
struct ChoiceTypeVector {
  std::vector<std::uint8_t> bits;

  auto operator<=>(const ChoiceTypeVector&) const = default;
  bool operator==(const ChoiceTypeVector&) const = default;
};

/// Throws InputError unless `bits` has length I and exactly one 1 per block.
void check_choice_type(const ChoiceTypeVector& type, const IndexLayout& layout);

/// The finite set of rationalizable types, sorted lexicographically on bits
/// and free of duplicates.
class RationalTypeSet {
 public:
  /// Validates, sorts and deduplicates. Throws InputError if `types` is empty
  /// or any member violates the choice-type invariants.
  RationalTypeSet(IndexLayout layout, std::vector<ChoiceTypeVector> types);

  const IndexLayout& layout() const { return layout_; }
  const std::vector<ChoiceTypeVector>& types() const { return types_; }
  std::size_t size() const { return types_.size(); }
  const ChoiceTypeVector& operator[](std::size_t i) const { return types_[i]; }
  bool contains(const ChoiceTypeVector& type) const;

 private:
  IndexLayout layout_;
  std::vector<ChoiceTypeVector> types_;
};

/// A binary query vector whose support lies inside a single block.
struct Trial {
  std::size_t block = 0;
  std::vector<std::uint8_t> bits;

  bool operator==(const Trial&) const = default;
};

Trial make_trial(std::vector<std::uint8_t> bits, const IndexLayout& layout);

struct TrialCount {
  Trial trial;
  Integer count;  // multiplicity, >= 1
};

/// A finite multiset of trials, stored with multiplicities. Only the
/// aggregate sum of the trials matters for the axiom.
class TrialSequence {
 public:
  TrialSequence() = default;
  TrialSequence(std::size_t dimension, std::vector<TrialCount> trials);

  const std::vector<TrialCount>& trials() const { return trials_; }
  const IntegerVector& aggregate() const { return aggregate_; }
  std::size_t dimension() const { return aggregate_.size(); }
  /// M: total number of trials counted with multiplicity.
  Integer length() const;

 private:
  std::vector<TrialCount> trials_;
  IntegerVector aggregate_;
};

Rational inner(std::span<const Rational> t, std::span<const Rational> v);
Rational inner(std::span<const Integer> t, std::span<const Rational> v);
Rational inner(std::span<const Rational> t, const ChoiceTypeVector& r);
Integer inner(std::span<const Integer> t, const ChoiceTypeVector& r);

struct TypeMaximum {
  Rational value;
  std::size_t index = 0;  // first maximizer in canonical order
};

TypeMaximum max_over_types(std::span<const Rational> t, const RationalTypeSet& types);
TypeMaximum max_over_types(std::span<const Integer> t, const RationalTypeSet& types);

struct ArspCheck {
  Rational lhs;
  Rational rhs;
  bool holds = true;
};

/// Evaluates one instance of the axiom: lhs = aggregate . pi and
/// rhs = max over types of aggregate . R.
ArspCheck arsp_check(const TrialSequence& seq, const StochasticChoiceVector& pi,
                     const RationalTypeSet& types);

/// inner(t, pi) - max_R inner(t, R). Positive exactly when t separates pi
/// from the convex hull of the types.
Rational separation_gap(std::span<const Rational> t, const StochasticChoiceVector& pi,
                        const RationalTypeSet& types);

void require_same_layout(const IndexLayout& a, const IndexLayout& b, std::string_view what);

}  // namespace rsp
