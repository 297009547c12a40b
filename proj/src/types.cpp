#include "rsp/types.hpp"

#include <algorithm>
#include <numeric>

#include "rsp/errors.hpp"

namespace rsp {

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

std::uint64_t ordered_bell(std::size_t n) {
  // a(n) = sum_{k=1..n} C(n,k) a(n-k), a(0) = 1
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    std::uint64_t binom = 1;
    for (std::size_t k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      a[m] += binom * a[m - k];
    }
  }
  return a[n];
}

void for_each_linear_order(std::size_t k, const std::function<void(const LinearOrder&)>& visit) {
  LinearOrder order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  do {
    visit(order);
  } while (std::next_permutation(order.begin(), order.end()));
}

namespace {

void weak_orders_rec(std::uint32_t remaining, WeakOrder& prefix,
                     const std::function<void(const WeakOrder&)>& visit) {
  if (remaining == 0) {
    visit(prefix);
    return;
  }
  // Enumerate nonempty submasks of `remaining` in increasing order.
  for (std::uint32_t sub = 1; sub <= remaining; ++sub) {
    if ((sub & ~remaining) != 0) continue;
    std::vector<std::size_t> cls;
    for (std::size_t i = 0; i < 32; ++i)
      if (sub & (1u << i)) cls.push_back(i);
    prefix.push_back(std::move(cls));
    weak_orders_rec(remaining & ~sub, prefix, visit);
    prefix.pop_back();
  }
}

}  // namespace

void for_each_weak_order(std::size_t k, const std::function<void(const WeakOrder&)>& visit) {
  if (k >= 32) throw CapExceeded("weak-order enumeration supports at most 31 alternatives");
  WeakOrder prefix;
  weak_orders_rec(k == 0 ? 0u : ((1u << k) - 1u), prefix, visit);
}

ChoiceTypeVector type_from_linear_order(const LinearOrder& order, const IndexLayout& layout) {
  std::vector<std::size_t> rank(layout.num_alternatives());
  for (std::size_t pos = 0; pos < order.size(); ++pos) rank.at(order[pos]) = pos;
  ChoiceTypeVector type{std::vector<std::uint8_t>(layout.dimension(), 0)};
  for (std::size_t j = 0; j < layout.num_problems(); ++j) {
    const auto& members = layout.problem(j).members;
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i)
      if (rank[members[i]] < rank[members[best]]) best = i;
    type.bits[layout.block_offset(j) + best] = 1;
  }
  return type;
}

RationalTypeSet types_from_linear_orders(const IndexLayout& layout) {
  const std::size_t k = layout.num_alternatives();
  if (k > kMaxLinearOrderAlternatives)
    throw CapExceeded("linear-order enumeration refused: K=" + std::to_string(k) + " gives " +
                      std::to_string(k) + "! = " + std::to_string(factorial(k)) +
                      " orders (cap is K <= " + std::to_string(kMaxLinearOrderAlternatives) + ")");
  std::vector<ChoiceTypeVector> types;
  types.reserve(factorial(k));
  for_each_linear_order(k, [&](const LinearOrder& order) {
    types.push_back(type_from_linear_order(order, layout));
  });
  return RationalTypeSet(layout, std::move(types));
}

RationalTypeSet types_from_explicit(const std::vector<std::vector<std::uint8_t>>& rows,
                                    const IndexLayout& layout) {
  if (rows.empty()) throw InputError("types: no rows given");
  std::vector<ChoiceTypeVector> types;
  types.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    try {
      ChoiceTypeVector t{rows[r]};
      check_choice_type(t, layout);
      types.push_back(std::move(t));
    } catch (const InputError& e) {
      throw InputError("types[" + std::to_string(r) + "]: " + e.what());
    }
  }
  return RationalTypeSet(layout, std::move(types));
}

}  // namespace rsp
