#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rsp/core.hpp"

namespace rsp {

/// Permutation of universe indices, best first.
using LinearOrder = std::vector<std::size_t>;
/// Ordered partition into indifference classes, best class first.
using WeakOrder = std::vector<std::vector<std::size_t>>;

inline constexpr std::size_t kMaxLinearOrderAlternatives = 10;
inline constexpr std::size_t kMaxWeakOrderAlternatives = 6;

std::uint64_t factorial(std::size_t n);
/// Number of weak orders (ordered set partitions) on n elements.
std::uint64_t ordered_bell(std::size_t n);

/// Visits all K! linear orders in lexicographic order of the permutation.
void for_each_linear_order(std::size_t k, const std::function<void(const LinearOrder&)>& visit);
/// Visits all ordered set partitions of {0..k-1}. The first class is chosen
/// among nonempty subsets in increasing bitmask order, then recursively.
void for_each_weak_order(std::size_t k, const std::function<void(const WeakOrder&)>& visit);

/// The choice function that picks the order-maximal member of each problem.
ChoiceTypeVector type_from_linear_order(const LinearOrder& order, const IndexLayout& layout);

/// All utility-maximizing choice functions on the layout. Throws CapExceeded
/// for K > 10.
RationalTypeSet types_from_linear_orders(const IndexLayout& layout);

/// Validated, deduplicated set from explicit rows.
RationalTypeSet types_from_explicit(const std::vector<std::vector<std::uint8_t>>& rows,
                                    const IndexLayout& layout);

}  // namespace rsp
