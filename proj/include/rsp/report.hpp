#pragma once

// Result reports and the other command outputs. The structured form is JSON
// with a fixed key order; rationals are always "p/q" strings. Reports carry
// the instance digest so `verify` can reject a report paired with the wrong
// instance.

#include <optional>
#include <string>

#include <json.hpp>

#include "rsp/certificate.hpp"
#include "rsp/facets.hpp"
#include "rsp/instance.hpp"

namespace rsp {

using Json = nlohmann::ordered_json;

struct CheckOptions {
  DecompositionMode mode = DecompositionMode::compressed;
  bool restricted_arsp = false;
};

struct CheckOutcome {
  Verdict verdict;
  std::optional<bool> restricted_holds;
  double seconds = 0.0;
};

/// Decides the instance. Throws InputError if restricted_arsp is requested
/// for data that is not set-valued.
CheckOutcome run_check(const Instance& instance, const CheckOptions& options);

bool is_rationalizable(const CheckOutcome& outcome);

Json check_report_json(const Instance& instance, const CheckOutcome& outcome,
                       const CheckOptions& options, bool with_timing);
std::string check_report_text(const Instance& instance, const CheckOutcome& outcome,
                              const CheckOptions& options, bool with_timing);

struct VerifyResult {
  bool ok = false;
  std::string reason;
};

/// Re-validates a structured report against its instance with exact checks:
/// a mixture must reconstruct pi from listed types with positive weights
/// summing to one; a certificate must replay positivize and integerize, its
/// trials must aggregate to the stated vector, and lhs > rhs must hold with
/// the stated values.
VerifyResult run_verify(const Instance& instance, const Json& report);

Json types_json(const Instance& instance);
std::string types_text(const Instance& instance);

Json facets_json(const Instance& instance, const HRepresentation& h);
std::string facets_text(const Instance& instance, const HRepresentation& h);

Json lift_json(const Instance& instance);
std::string lift_text(const Instance& instance);

/// Labels of a coordinate's alternative ("a", or "{a,b}" when lifted).
std::string coordinate_label(const IndexLayout& layout, std::size_t coordinate);
std::string bit_string(const std::vector<std::uint8_t>& bits);

}  // namespace rsp
