#include "rsp/lifting.hpp"

#include <algorithm>
#include <bit>

#include "rsp/errors.hpp"
#include "rsp/lp.hpp"
#include "rsp/types.hpp"

namespace rsp {

namespace {

std::vector<std::size_t> members_of(SubsetMask s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s != 0; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

bool canonical_less(SubsetMask a, SubsetMask b) {
  int ca = std::popcount(a), cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  auto ma = members_of(a), mb = members_of(b);
  return ma < mb;
}

}  // namespace

SubsetMask mask_of(const std::vector<std::size_t>& members) {
  SubsetMask s = 0;
  for (auto m : members) {
    if (m >= 32) throw CapExceeded("subset masks support at most 32 alternatives");
    s |= SubsetMask{1} << m;
  }
  return s;
}

std::string subset_label(SubsetMask s, const ChoiceUniverse& universe) {
  std::string out = "{";
  bool first = true;
  for (auto m : members_of(s)) {
    if (!first) out += ",";
    out += universe.label(m);
    first = false;
  }
  return out + "}";
}

std::size_t LiftedLayout::alternative_of(SubsetMask s) const { return alternative_by_mask.at(s); }

std::size_t LiftedLayout::coordinate(std::size_t j, SubsetMask s) const {
  SubsetMask whole = mask_of(base_problems.at(j).members);
  if ((s & ~whole) != 0)
    throw InputError("problems[" + std::to_string(j) + "]: " + subset_label(s, base_universe) +
                     " is not a subset of " + subset_label(whole, base_universe));
  return *layout.coordinate(j, alternative_of(s));
}

SubsetMask LiftedLayout::subset_at(std::size_t coordinate) const {
  return subsets.at(layout.alternative_at(coordinate));
}

LiftedLayout lift_layout(const ChoiceUniverse& universe, const std::vector<ChoiceProblem>& problems) {
  const std::size_t k = universe.size();
  if (k > 16)
    throw CapExceeded("lifting refused: 2^K = 2^" + std::to_string(k) +
                      " lifted alternatives exceeds the cap 2^16");
  // Validates the base problems and puts members in universe order.
  IndexLayout base = build_layout(universe, problems);
  std::size_t lifted_dim = 0;
  for (const auto& p : base.problems()) {
    if (p.members.size() > 16)
      throw CapExceeded("lifting refused: a problem with " + std::to_string(p.members.size()) +
                        " members has more than 2^16 subsets");
    lifted_dim += std::size_t{1} << p.members.size();
  }
  if (lifted_dim > kMaxLiftedSize)
    throw CapExceeded("lifting refused: lifted dimension I = " + std::to_string(lifted_dim) +
                      " exceeds the cap " + std::to_string(kMaxLiftedSize));

  LiftedLayout out;
  out.base_universe = universe;
  out.base_problems = base.problems();
  const SubsetMask count = SubsetMask{1} << k;
  out.subsets.resize(count);
  for (SubsetMask s = 0; s < count; ++s) out.subsets[s] = s;
  std::sort(out.subsets.begin(), out.subsets.end(), canonical_less);
  out.alternative_by_mask.resize(count);
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 0; i < out.subsets.size(); ++i) {
    out.alternative_by_mask[out.subsets[i]] = i;
    labels.push_back(subset_label(out.subsets[i], universe));
  }
  out.lifted_universe = ChoiceUniverse(std::move(labels));

  std::vector<ChoiceProblem> lifted_problems;
  for (const auto& p : out.base_problems) {
    SubsetMask whole = mask_of(p.members);
    ChoiceProblem lp;
    // Enumerate submasks of `whole`, including the empty set.
    for (SubsetMask s = whole;; s = (s - 1) & whole) {
      lp.members.push_back(out.alternative_by_mask[s]);
      if (s == 0) break;
    }
    lifted_problems.push_back(std::move(lp));
  }
  out.layout = build_layout(out.lifted_universe, std::move(lifted_problems));
  return out;
}

StochasticChoiceVector lift_set_valued_data(const std::vector<std::vector<SubsetProbability>>& observations,
                                            const LiftedLayout& lifted) {
  const auto& layout = lifted.layout;
  if (observations.size() != layout.num_problems())
    throw InputError("probabilities: expected " + std::to_string(layout.num_problems()) +
                     " problems, got " + std::to_string(observations.size()));
  RationalVector values(layout.dimension());
  std::vector<bool> seen(layout.dimension(), false);
  for (std::size_t j = 0; j < observations.size(); ++j) {
    for (const auto& obs : observations[j]) {
      std::size_t c = lifted.coordinate(j, obs.subset);
      if (seen[c])
        throw InputError("probabilities[" + std::to_string(j) + "]: subset " +
                         subset_label(obs.subset, lifted.base_universe) + " listed twice");
      seen[c] = true;
      values[c] = obs.probability;
    }
  }
  return validate_pi(std::move(values), layout);
}

StochasticChoiceVector lift_choice_probabilities(const StochasticChoiceVector& base,
                                                 const LiftedLayout& lifted) {
  const auto& bl = base.layout;
  if (!(bl.universe() == lifted.base_universe) || bl.problems() != lifted.base_problems)
    throw InputError("lift: base data does not belong to this lifting");
  RationalVector values(lifted.layout.dimension());
  for (std::size_t i = 0; i < bl.dimension(); ++i) {
    SubsetMask single = SubsetMask{1} << bl.alternative_at(i);
    values[lifted.coordinate(bl.block_of(i), single)] = base.values[i];
  }
  return validate_pi(std::move(values), lifted.layout);
}

RationalTypeSet lift_choice_types(const RationalTypeSet& base, const LiftedLayout& lifted) {
  const auto& bl = base.layout();
  if (!(bl.universe() == lifted.base_universe) || bl.problems() != lifted.base_problems)
    throw InputError("lift: base types do not belong to this lifting");
  std::vector<ChoiceTypeVector> out;
  out.reserve(base.size());
  for (const auto& t : base.types()) {
    ChoiceTypeVector lt{std::vector<std::uint8_t>(lifted.layout.dimension(), 0)};
    for (std::size_t i = 0; i < bl.dimension(); ++i)
      if (t.bits[i]) lt.bits[lifted.coordinate(bl.block_of(i), SubsetMask{1} << bl.alternative_at(i))] = 1;
    out.push_back(std::move(lt));
  }
  return RationalTypeSet(lifted.layout, std::move(out));
}

RationalTypeSet correspondence_types_from_weak_orders(const LiftedLayout& lifted) {
  const std::size_t k = lifted.base_universe.size();
  if (k > kMaxWeakOrderAlternatives)
    throw CapExceeded("weak-order enumeration refused: K=" + std::to_string(k) + " gives " +
                      std::to_string(ordered_bell(k)) + " weak orders (cap is K <= " +
                      std::to_string(kMaxWeakOrderAlternatives) + ")");
  std::vector<SubsetMask> problem_masks;
  for (const auto& p : lifted.base_problems) problem_masks.push_back(mask_of(p.members));

  std::vector<ChoiceTypeVector> types;
  types.reserve(ordered_bell(k));
  for_each_weak_order(k, [&](const WeakOrder& order) {
    ChoiceTypeVector t{std::vector<std::uint8_t>(lifted.layout.dimension(), 0)};
    for (std::size_t j = 0; j < problem_masks.size(); ++j) {
      for (const auto& cls : order) {
        SubsetMask top = mask_of(cls) & problem_masks[j];
        if (top == 0) continue;
        t.bits[lifted.coordinate(j, top)] = 1;
        break;
      }
    }
    types.push_back(std::move(t));
  });
  return RationalTypeSet(lifted.layout, std::move(types));
}

RationalTypeSet correspondence_types_from_weak_orders(const ChoiceUniverse& universe,
                                                      const std::vector<ChoiceProblem>& problems,
                                                      const LiftedLayout& lifted) {
  IndexLayout base = build_layout(universe, problems);
  if (!(base.universe() == lifted.base_universe) || base.problems() != lifted.base_problems)
    throw InputError("weak-order types: layout is not a lifting of the given problems");
  return correspondence_types_from_weak_orders(lifted);
}

std::vector<IntegerVector> restricted_trials(const LiftedLayout& lifted) {
  const auto& layout = lifted.layout;
  std::vector<IntegerVector> out;
  for (std::size_t j = 0; j < layout.num_problems(); ++j) {
    const std::size_t off = layout.block_offset(j);
    for (std::size_t a = 0; a < layout.block_size(j); ++a) {
      SubsetMask s = lifted.subset_at(off + a);
      IntegerVector q(layout.dimension());
      for (std::size_t b = 0; b < layout.block_size(j); ++b)
        if ((lifted.subset_at(off + b) & ~s) == 0) q[off + b] = 1;
      out.push_back(std::move(q));
    }
  }
  return out;
}

bool check_restricted_arsp(const StochasticChoiceVector& pi, const RationalTypeSet& types,
                           const LiftedLayout& lifted) {
  require_same_layout(pi.layout, lifted.layout, "restricted axiom");
  require_same_layout(types.layout(), lifted.layout, "restricted axiom");
  auto queries = restricted_trials(lifted);
  const std::size_t q = queries.size();
  const std::size_t n = types.size();

  // Columns: mu_R (n), then one surplus per query (q).
  RationalMatrix a(q + 1, n + q);
  RationalVector b(q + 1);
  for (std::size_t k = 0; k < q; ++k) {
    std::span<const Integer> qk(queries[k]);
    for (std::size_t r = 0; r < n; ++r) a(k, r) = inner(qk, types[r]);
    a(k, n + k) = -1;
    b[k] = inner(qk, std::span<const Rational>(pi.values));
  }
  for (std::size_t r = 0; r < n; ++r) a(q, r) = 1;
  b[q] = 1;
  return find_nonnegative_solution(a, b).feasible;
}

}  // namespace rsp
