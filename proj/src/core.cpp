#include "rsp/core.hpp"

#include <algorithm>
#include <set>

#include "rsp/errors.hpp"

namespace rsp {

ChoiceUniverse::ChoiceUniverse(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InputError("universe: must contain at least one alternative");
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw InputError("universe[" + std::to_string(i) + "]: empty label");
    if (!seen.insert(labels_[i]).second)
      throw InputError("universe[" + std::to_string(i) + "]: duplicate label \"" + labels_[i] + "\"");
  }
}

std::optional<std::size_t> ChoiceUniverse::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t IndexLayout::alternative_at(std::size_t coordinate) const {
  std::size_t j = block_of(coordinate);
  return problems_[j].members[coordinate - offsets_[j]];
}

std::optional<std::size_t> IndexLayout::coordinate(std::size_t j, std::size_t alt) const {
  const auto& m = problem(j).members;
  auto it = std::lower_bound(m.begin(), m.end(), alt);
  if (it == m.end() || *it != alt) return std::nullopt;
  return offsets_[j] + static_cast<std::size_t>(it - m.begin());
}

IndexLayout build_layout(ChoiceUniverse universe, std::vector<ChoiceProblem> problems) {
  if (problems.empty()) throw InputError("problems: at least one choice problem is required");
  const std::size_t k = universe.size();
  IndexLayout out;
  for (std::size_t j = 0; j < problems.size(); ++j) {
    auto& members = problems[j].members;
    const std::string where = "problems[" + std::to_string(j) + "]";
    if (members.empty()) throw InputError(where + ": empty choice problem");
    for (auto m : members)
      if (m >= k)
        throw InputError(where + ": index " + std::to_string(m) + " out of range for K=" +
                         std::to_string(k));
    std::sort(members.begin(), members.end());
    if (auto dup = std::adjacent_find(members.begin(), members.end()); dup != members.end())
      throw InputError(where + ": duplicate member \"" + universe.label(*dup) + "\"");
    out.offsets_.push_back(out.dimension_);
    for (std::size_t i = 0; i < members.size(); ++i) out.block_of_.push_back(j);
    out.dimension_ += members.size();
  }
  out.universe_ = std::move(universe);
  out.problems_ = std::move(problems);
  return out;
}

void require_same_layout(const IndexLayout& a, const IndexLayout& b, std::string_view what) {
  if (!(a == b)) throw InputError(std::string(what) + ": layout mismatch");
}

StochasticChoiceVector validate_pi(RationalVector values, const IndexLayout& layout) {
  if (values.size() != layout.dimension())
    throw InputError("probabilities: expected " + std::to_string(layout.dimension()) +
                     " entries, got " + std::to_string(values.size()));
  for (auto& v : values) v.canonicalize();
  for (std::size_t j = 0; j < layout.num_problems(); ++j) {
    Rational sum = 0;
    for (std::size_t i = 0; i < layout.block_size(j); ++i) {
      const auto& v = values[layout.block_offset(j) + i];
      if (v < 0)
        throw InputError("probabilities[" + std::to_string(j) + "][" + std::to_string(i) +
                         "]: negative entry " + to_string(v));
      sum += v;
    }
    if (sum != 1)
      throw InputError("probabilities[" + std::to_string(j) + "]: block sum " + to_string(sum) +
                       " != 1");
  }
  return {layout, std::move(values)};
}

void check_choice_type(const ChoiceTypeVector& type, const IndexLayout& layout) {
  if (type.bits.size() != layout.dimension())
    throw InputError("type: expected " + std::to_string(layout.dimension()) + " bits, got " +
                     std::to_string(type.bits.size()));
  for (std::size_t j = 0; j < layout.num_problems(); ++j) {
    std::size_t ones = 0;
    for (std::size_t i = 0; i < layout.block_size(j); ++i) {
      auto b = type.bits[layout.block_offset(j) + i];
      if (b > 1) throw InputError("type: entries must be 0 or 1");
      ones += b;
    }
    if (ones != 1)
      throw InputError("type: block " + std::to_string(j) + " has " + std::to_string(ones) +
                       " ones, expected exactly one");
  }
}

RationalTypeSet::RationalTypeSet(IndexLayout layout, std::vector<ChoiceTypeVector> types)
    : layout_(std::move(layout)), types_(std::move(types)) {
  if (types_.empty()) throw InputError("types: the rational type set is empty");
  for (const auto& t : types_) check_choice_type(t, layout_);
  std::sort(types_.begin(), types_.end());
  types_.erase(std::unique(types_.begin(), types_.end()), types_.end());
}

bool RationalTypeSet::contains(const ChoiceTypeVector& type) const {
  return std::binary_search(types_.begin(), types_.end(), type);
}

Trial make_trial(std::vector<std::uint8_t> bits, const IndexLayout& layout) {
  if (bits.size() != layout.dimension())
    throw InputError("trial: expected " + std::to_string(layout.dimension()) + " entries");
  std::optional<std::size_t> block;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw InputError("trial: entries must be 0 or 1");
    if (bits[i] == 0) continue;
    if (block && *block != layout.block_of(i))
      throw InputError("trial: support spans more than one choice problem");
    block = layout.block_of(i);
  }
  if (!block) throw InputError("trial: empty support");
  return {*block, std::move(bits)};
}

TrialSequence::TrialSequence(std::size_t dimension, std::vector<TrialCount> trials)
    : trials_(std::move(trials)), aggregate_(dimension) {
  for (const auto& tc : trials_) {
    if (tc.trial.bits.size() != dimension) throw InputError("trial sequence: dimension mismatch");
    if (tc.count < 1) throw InputError("trial sequence: multiplicity must be positive");
    for (std::size_t i = 0; i < dimension; ++i)
      if (tc.trial.bits[i]) aggregate_[i] += tc.count;
  }
}

Integer TrialSequence::length() const {
  Integer m = 0;
  for (const auto& tc : trials_) m += tc.count;
  return m;
}

namespace {

template <class A, class B>
void require_lengths(const A& a, const B& b) {
  if (a.size() != b.size())
    throw InputError("inner product: length mismatch (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
}

}  // namespace

Rational inner(std::span<const Rational> t, std::span<const Rational> v) {
  require_lengths(t, v);
  Rational s = 0;
  for (std::size_t i = 0; i < t.size(); ++i) s += t[i] * v[i];
  return s;
}

Rational inner(std::span<const Integer> t, std::span<const Rational> v) {
  require_lengths(t, v);
  Rational s = 0;
  for (std::size_t i = 0; i < t.size(); ++i) s += t[i] * v[i];
  return s;
}

Rational inner(std::span<const Rational> t, const ChoiceTypeVector& r) {
  require_lengths(t, r.bits);
  Rational s = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (r.bits[i]) s += t[i];
  return s;
}

Integer inner(std::span<const Integer> t, const ChoiceTypeVector& r) {
  require_lengths(t, r.bits);
  Integer s = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (r.bits[i]) s += t[i];
  return s;
}

namespace {

template <class T>
TypeMaximum max_over_types_impl(std::span<const T> t, const RationalTypeSet& types) {
  if (types.size() == 0) throw InputError("max over types: empty type set");
  TypeMaximum best{Rational(inner(t, types[0])), 0};
  for (std::size_t k = 1; k < types.size(); ++k) {
    Rational v(inner(t, types[k]));
    if (v > best.value) best = {std::move(v), k};
  }
  return best;
}

}  // namespace

TypeMaximum max_over_types(std::span<const Rational> t, const RationalTypeSet& types) {
  return max_over_types_impl(t, types);
}

TypeMaximum max_over_types(std::span<const Integer> t, const RationalTypeSet& types) {
  return max_over_types_impl(t, types);
}

ArspCheck arsp_check(const TrialSequence& seq, const StochasticChoiceVector& pi,
                     const RationalTypeSet& types) {
  require_same_layout(pi.layout, types.layout(), "arsp check");
  if (seq.dimension() != pi.layout.dimension())
    throw InputError("arsp check: trial sequence dimension does not match the layout");
  ArspCheck out;
  out.lhs = inner(std::span<const Integer>(seq.aggregate()), std::span<const Rational>(pi.values));
  out.rhs = max_over_types(std::span<const Integer>(seq.aggregate()), types).value;
  out.holds = out.lhs <= out.rhs;
  return out;
}

Rational separation_gap(std::span<const Rational> t, const StochasticChoiceVector& pi,
                        const RationalTypeSet& types) {
  require_same_layout(pi.layout, types.layout(), "separation gap");
  return inner(t, std::span<const Rational>(pi.values)) - max_over_types(t, types).value;
}

}  // namespace rsp
