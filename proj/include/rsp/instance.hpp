#pragma once

// Instance files. A YAML tree:
//
//   universe: [a, b, c]
//   problems: [[a, b], [a, c], [b, c]]
//   set_valued: false            # optional, default false
//   types: linear-orders         # | weak-orders | list of bit rows
//   probabilities:
//     - ["1", "0"]               # aligned with the members as written
//     - [0.5, 1/2]
//     - ["1/3", "2/3"]
//
// For set-valued instances each probabilities entry is a list of
// {subset: [labels], p: rational}; unlisted subsets have probability zero.
// Explicit bit rows are strings such as "100110" or integer lists. For
// singleton-valued data they follow the file's member order block by block;
// for set-valued data they follow the canonical lifted coordinate order.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "rsp/core.hpp"
#include "rsp/lifting.hpp"

namespace rsp {

enum class TypeSource { linear_orders, weak_orders, explicit_rows };

struct Instance {
  std::string source;
  ChoiceUniverse universe;
  IndexLayout base_layout;
  bool set_valued = false;
  TypeSource type_source = TypeSource::linear_orders;
  std::optional<LiftedLayout> lifted;  // present iff set_valued
  StochasticChoiceVector pi;           // on layout()
  RationalTypeSet types;               // on layout()

  /// The layout every vector lives on: the lifted one for set-valued data.
  const IndexLayout& layout() const { return pi.layout; }
};

/// Throws InputError carrying "source:line:column: field: message", or
/// CapExceeded when type enumeration or lifting exceeds its cap.
Instance parse_instance(std::string_view text, std::string_view source = "<input>");
Instance load_instance(const std::filesystem::path& path);

/// Deterministic text form of the parsed instance (universe, problems,
/// probabilities and the full type list).
std::string canonical_form(const Instance& instance);
/// "sha256:<hex>" of canonical_form.
std::string instance_digest(const Instance& instance);

std::string type_source_name(TypeSource s);

}  // namespace rsp
