#include "rsp/report.hpp"

#include <chrono>
#include <sstream>

#include "rsp/errors.hpp"

namespace rsp {

namespace {

const char* kReportFormat = "rsp-report/1";

std::string problem_label(const Instance& inst, std::size_t j) {
  std::string out = "{";
  const auto& members = inst.base_layout.problem(j).members;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ",";
    out += inst.universe.label(members[i]);
  }
  return out + "}";
}

std::string coordinate_name(const Instance& inst, std::size_t c) {
  const auto& layout = inst.layout();
  return coordinate_label(layout, c) + "|" + problem_label(inst, layout.block_of(c));
}

Json coordinates_json(const Instance& inst) {
  Json out = Json::array();
  for (std::size_t c = 0; c < inst.layout().dimension(); ++c) out.push_back(coordinate_name(inst, c));
  return out;
}

template <class V>
Json vector_json(const V& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

template <class V>
std::string vector_text(const V& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + "]";
}

Json layout_json(const Instance& inst) {
  Json l;
  l["K"] = inst.universe.size();
  l["J"] = inst.base_layout.num_problems();
  l["I"] = inst.layout().dimension();
  l["types"] = inst.types.size();
  l["type_source"] = type_source_name(inst.type_source);
  l["set_valued"] = inst.set_valued;
  return l;
}

std::string layout_line(const Instance& inst) {
  std::ostringstream os;
  os << "layout: K=" << inst.universe.size() << " J=" << inst.base_layout.num_problems()
     << " I=" << inst.layout().dimension() << " types=" << inst.types.size() << " ("
     << type_source_name(inst.type_source) << (inst.set_valued ? ", set-valued" : "") << ")";
  return os.str();
}

std::string mode_name(DecompositionMode m) {
  return m == DecompositionMode::canonical ? "canonical" : "compressed";
}

Json trials_json(const Instance& inst, const TrialSequence& seq) {
  const auto& layout = inst.layout();
  Json out = Json::array();
  for (const auto& tc : seq.trials()) {
    Json t;
    t["problem"] = tc.trial.block;
    t["members"] = problem_label(inst, tc.trial.block);
    Json queried = Json::array();
    for (std::size_t c = 0; c < tc.trial.bits.size(); ++c)
      if (tc.trial.bits[c]) queried.push_back(coordinate_label(layout, c));
    t["queried"] = std::move(queried);
    t["count"] = to_string(tc.count);
    out.push_back(std::move(t));
  }
  return out;
}

std::string axiom_name(const Instance& inst) { return inst.set_valued ? "GARSP" : "ARSP"; }

}  // namespace

std::string coordinate_label(const IndexLayout& layout, std::size_t coordinate) {
  return layout.universe().label(layout.alternative_at(coordinate));
}

std::string bit_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

CheckOutcome run_check(const Instance& instance, const CheckOptions& options) {
  if (options.restricted_arsp && !instance.set_valued)
    throw InputError("--restricted-arsp applies to set-valued instances only");
  auto start = std::chrono::steady_clock::now();
  CheckOutcome out{decide(instance.pi, instance.types, options.mode), std::nullopt, 0.0};
  if (options.restricted_arsp)
    out.restricted_holds = check_restricted_arsp(instance.pi, instance.types, *instance.lifted);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

bool is_rationalizable(const CheckOutcome& outcome) {
  return std::holds_alternative<MixingDistribution>(outcome.verdict);
}

Json check_report_json(const Instance& inst, const CheckOutcome& outcome, const CheckOptions& options,
                       bool with_timing) {
  Json r;
  r["format"] = kReportFormat;
  r["instance_digest"] = instance_digest(inst);
  r["layout"] = layout_json(inst);
  r["coordinates"] = coordinates_json(inst);
  if (const auto* mix = std::get_if<MixingDistribution>(&outcome.verdict)) {
    r["verdict"] = "rationalizable";
    Json m = Json::array();
    for (const auto& [type, w] : mix->weights) m.push_back(Json{{"weight", to_string(w)}, {"type", bit_string(type.bits)}});
    r["mixture"] = std::move(m);
  } else {
    const auto& cert = std::get<ViolationCertificate>(outcome.verdict);
    r["verdict"] = "not-rationalizable";
    Json c;
    c["separating_vector"] = vector_json(cert.separating.t);
    c["gap"] = to_string(cert.separating.gap);
    c["positivized"] = vector_json(cert.positivized);
    c["integer_aggregate"] = vector_json(cert.integer_aggregate);
    c["mode"] = mode_name(options.mode);
    c["trial_count"] = to_string(cert.trials.length());
    c["trials"] = trials_json(inst, cert.trials);
    c["lhs"] = to_string(cert.lhs);
    c["rhs"] = to_string(cert.rhs);
    r["certificate"] = std::move(c);
  }
  if (outcome.restricted_holds) {
    Json ra;
    ra["holds"] = *outcome.restricted_holds;
    ra["full_axiom_holds"] = is_rationalizable(outcome);
    r["restricted_arsp"] = std::move(ra);
  }
  if (with_timing) r["timing"] = Json{{"seconds", outcome.seconds}};
  return r;
}

std::string check_report_text(const Instance& inst, const CheckOutcome& outcome,
                              const CheckOptions& options, bool with_timing) {
  std::ostringstream os;
  os << "instance: " << inst.source << "\n";
  os << "digest: " << instance_digest(inst) << "\n";
  os << layout_line(inst) << "\n";
  if (const auto* mix = std::get_if<MixingDistribution>(&outcome.verdict)) {
    os << "verdict: rationalizable\n";
    os << "mixture (" << mix->weights.size() << " types):\n";
    for (const auto& [type, w] : mix->weights) os << "  " << to_string(w) << "  " << bit_string(type.bits) << "\n";
  } else {
    const auto& cert = std::get<ViolationCertificate>(outcome.verdict);
    os << "verdict: not-rationalizable\n";
    os << "separating vector: " << vector_text(cert.separating.t) << "  gap " << to_string(cert.separating.gap) << "\n";
    os << "positivized: " << vector_text(cert.positivized) << "\n";
    os << "integer aggregate: " << vector_text(cert.integer_aggregate) << "\n";
    os << "trials (" << mode_name(options.mode) << ", M = " << to_string(cert.trials.length()) << "):\n";
    const auto& layout = inst.layout();
    for (const auto& tc : cert.trials.trials()) {
      os << "  " << to_string(tc.count) << " x from " << problem_label(inst, tc.trial.block) << " query {";
      bool first = true;
      for (std::size_t c = 0; c < tc.trial.bits.size(); ++c) {
        if (!tc.trial.bits[c]) continue;
        os << (first ? "" : ", ") << coordinate_label(layout, c);
        first = false;
      }
      os << "}\n";
    }
    os << "lhs = " << to_string(cert.lhs) << " > rhs = " << to_string(cert.rhs) << "\n";
  }
  if (outcome.restricted_holds) {
    os << "restricted axiom: " << (*outcome.restricted_holds ? "holds" : "violated") << "; "
       << axiom_name(inst) << ": " << (is_rationalizable(outcome) ? "holds" : "violated") << "\n";
  }
  if (with_timing) os << "timing: " << outcome.seconds << " s\n";
  return os.str();
}

namespace {

struct VerifyFailure {
  std::string reason;
};

[[noreturn]] void reject(const std::string& why) { throw VerifyFailure{why}; }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) reject(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) reject(std::string("key \"") + key + "\" must be a string");
  return v.get<std::string>();
}

RationalVector rational_array(const Json& j, const char* key, std::size_t expected) {
  const auto& v = field(j, key);
  if (!v.is_array() || v.size() != expected)
    reject(std::string("\"") + key + "\" must be an array of " + std::to_string(expected) + " rationals");
  RationalVector out;
  for (const auto& x : v) {
    if (!x.is_string()) reject(std::string("\"") + key + "\" entries must be strings");
    out.push_back(parse_rational(x.get<std::string>()));
  }
  return out;
}

void verify_mixture(const Instance& inst, const Json& report) {
  const auto& m = field(report, "mixture");
  if (!m.is_array() || m.empty()) reject("mixture must be a nonempty array");
  MixingDistribution dist;
  for (const auto& entry : m) {
    auto bits_text = string_field(entry, "type");
    ChoiceTypeVector t;
    for (char c : bits_text) {
      if (c != '0' && c != '1') reject("type rows must be bit strings");
      t.bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    if (!inst.types.contains(t)) reject("mixture uses a type outside the rational type set: " + bits_text);
    dist.weights.push_back({std::move(t), parse_rational(string_field(entry, "weight"))});
  }
  if (!is_valid_mixture(dist, inst.pi, inst.types))
    reject("mixture weights do not reconstruct the choice probabilities exactly");
}

void verify_certificate(const Instance& inst, const Json& report) {
  const auto& c = field(report, "certificate");
  const auto& layout = inst.layout();
  const std::size_t dim = layout.dimension();
  auto t = rational_array(c, "separating_vector", dim);
  auto pos = rational_array(c, "positivized", dim);
  auto agg_q = rational_array(c, "integer_aggregate", dim);
  IntegerVector agg;
  for (const auto& q : agg_q) {
    if (q.get_den() != 1 || sgn(q) < 0) reject("integer_aggregate must hold nonnegative integers");
    agg.push_back(q.get_num());
  }
  if (sgn(separation_gap(t, inst.pi, inst.types)) <= 0) reject("separating vector does not separate");
  if (positivize(t) != pos) reject("positivized vector does not match t + 1*||t||_inf");
  if (integerize(pos) != agg) reject("integer_aggregate is not the primitive integer multiple of positivized");

  const auto& trials = field(c, "trials");
  if (!trials.is_array() || trials.empty()) reject("trials must be a nonempty array");
  std::vector<TrialCount> parsed;
  for (const auto& tr : trials) {
    const auto& pj = field(tr, "problem");
    if (!pj.is_number_unsigned() || pj.get<std::size_t>() >= layout.num_problems()) reject("trial problem index out of range");
    std::size_t j = pj.get<std::size_t>();
    std::vector<std::uint8_t> bits(dim, 0);
    const auto& q = field(tr, "queried");
    if (!q.is_array()) reject("trial queried must be an array of labels");
    for (const auto& label : q) {
      if (!label.is_string()) reject("trial labels must be strings");
      auto alt = layout.universe().find(label.get<std::string>());
      if (!alt) reject("unknown label in trial: " + label.get<std::string>());
      auto coord = layout.coordinate(j, *alt);
      if (!coord) reject("label " + label.get<std::string>() + " is not in problem " + std::to_string(j));
      bits[*coord] = 1;
    }
    Integer count;
    if (count.set_str(string_field(tr, "count"), 10) != 0 || count < 1) reject("trial count must be a positive integer");
    try {
      parsed.push_back({make_trial(std::move(bits), layout), count});
    } catch (const InputError& e) {
      reject(e.what());
    }
  }
  TrialSequence seq(dim, std::move(parsed));
  if (seq.aggregate() != agg) reject("trials do not sum to integer_aggregate");
  auto check = arsp_check(seq, inst.pi, inst.types);
  if (check.lhs != parse_rational(string_field(c, "lhs"))) reject("stated lhs does not match recomputation");
  if (check.rhs != parse_rational(string_field(c, "rhs"))) reject("stated rhs does not match recomputation");
  if (check.holds) reject("trial sequence does not violate the axiom");
  if (parse_rational(string_field(c, "trial_count")) != Rational(seq.length())) reject("trial_count mismatch");
}

}  // namespace

VerifyResult run_verify(const Instance& instance, const Json& report) {
  try {
    if (string_field(report, "format") != kReportFormat) reject("unsupported report format");
    if (string_field(report, "instance_digest") != instance_digest(instance))
      reject("instance digest mismatch: report belongs to a different instance");
    auto verdict = string_field(report, "verdict");
    if (verdict == "rationalizable")
      verify_mixture(instance, report);
    else if (verdict == "not-rationalizable")
      verify_certificate(instance, report);
    else
      reject("unknown verdict \"" + verdict + "\"");
    if (report.contains("restricted_arsp")) {
      if (!instance.set_valued) reject("restricted_arsp section on a singleton-valued instance");
      const auto& ra = report.at("restricted_arsp");
      const auto& holds = field(ra, "holds");
      if (!holds.is_boolean()) reject("restricted_arsp.holds must be boolean");
      bool actual = check_restricted_arsp(instance.pi, instance.types, *instance.lifted);
      if (holds.get<bool>() != actual) reject("restricted_arsp.holds does not match recomputation");
    }
  } catch (const VerifyFailure& f) {
    return {false, f.reason};
  } catch (const InputError& e) {
    return {false, e.what()};
  }
  return {true, "ok"};
}

Json types_json(const Instance& inst) {
  Json r;
  r["instance_digest"] = instance_digest(inst);
  r["layout"] = layout_json(inst);
  r["coordinates"] = coordinates_json(inst);
  Json rows = Json::array();
  for (const auto& t : inst.types.types()) rows.push_back(bit_string(t.bits));
  r["types"] = std::move(rows);
  return r;
}

std::string types_text(const Instance& inst) {
  std::ostringstream os;
  os << layout_line(inst) << "\ncoordinates:";
  for (std::size_t c = 0; c < inst.layout().dimension(); ++c) os << ' ' << coordinate_name(inst, c);
  os << "\n";
  for (const auto& t : inst.types.types()) os << bit_string(t.bits) << "\n";
  return os.str();
}

namespace {

std::string inequality_text(const Instance& inst, const IntegerVector& normal, const char* rel,
                            const Integer& offset) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t c = 0; c < normal.size(); ++c) {
    if (sgn(normal[c]) == 0) continue;
    Integer mag = abs(normal[c]);
    if (first)
      os << (sgn(normal[c]) < 0 ? "-" : "");
    else
      os << (sgn(normal[c]) < 0 ? " - " : " + ");
    if (mag != 1) os << to_string(mag) << "*";
    os << "p(" << coordinate_name(inst, c) << ")";
    first = false;
  }
  if (first) os << "0";
  os << " " << rel << " " << to_string(offset);
  return os.str();
}

Json sequence_json(const Instance& inst, const TrialSequence& seq) {
  Json s;
  s["aggregate"] = vector_json(seq.aggregate());
  s["trials"] = trials_json(inst, seq);
  return s;
}

}  // namespace

Json facets_json(const Instance& inst, const HRepresentation& h) {
  Json r;
  r["instance_digest"] = instance_digest(inst);
  r["layout"] = layout_json(inst);
  r["coordinates"] = coordinates_json(inst);
  r["affine_dimension"] = h.affine_dimension;
  Json eqs = Json::array();
  for (const auto& e : h.equations) eqs.push_back(Json{{"normal", vector_json(e.normal)}, {"offset", to_string(e.offset)}});
  r["equations"] = std::move(eqs);
  auto seqs = essential_sequences(h, inst.layout(), DecompositionMode::canonical);
  Json fs = Json::array();
  for (std::size_t f = 0; f < h.facets.size(); ++f) {
    Json entry;
    entry["normal"] = vector_json(h.facets[f].normal);
    entry["offset"] = to_string(h.facets[f].offset);
    entry["essential_sequence"] = sequence_json(inst, seqs[f]);
    fs.push_back(std::move(entry));
  }
  r["facets"] = std::move(fs);
  Json extra = Json::array();
  for (const auto& s : equation_sequences(h, inst.layout(), DecompositionMode::canonical))
    extra.push_back(sequence_json(inst, s));
  r["equation_sequences"] = std::move(extra);
  return r;
}

std::string facets_text(const Instance& inst, const HRepresentation& h) {
  std::ostringstream os;
  os << layout_line(inst) << "\n";
  os << "affine dimension: " << h.affine_dimension << "\n";
  os << "equations (" << h.equations.size() << "):\n";
  for (const auto& e : h.equations) os << "  " << inequality_text(inst, e.normal, "=", e.offset) << "\n";
  os << "facets (" << h.facets.size() << "):\n";
  auto seqs = essential_sequences(h, inst.layout(), DecompositionMode::canonical);
  for (std::size_t f = 0; f < h.facets.size(); ++f) {
    os << "  " << inequality_text(inst, h.facets[f].normal, "<=", h.facets[f].offset) << "\n";
    os << "    essential aggregate " << vector_text(seqs[f].aggregate()) << ", M = " << to_string(seqs[f].length())
       << "\n";
  }
  return os.str();
}

namespace {

StochasticChoiceVector lifted_pi(const Instance& inst, const LiftedLayout& lifted) {
  return inst.set_valued ? inst.pi : lift_choice_probabilities(inst.pi, lifted);
}

}  // namespace

Json lift_json(const Instance& inst) {
  LiftedLayout lifted = inst.set_valued ? *inst.lifted : lift_layout(inst.universe, inst.base_layout.problems());
  Json r;
  r["instance_digest"] = instance_digest(inst);
  r["lifted_universe"] = lifted.lifted_universe.labels();
  Json probs = Json::array();
  for (std::size_t j = 0; j < lifted.layout.num_problems(); ++j) {
    Json members = Json::array();
    for (auto alt : lifted.layout.problem(j).members) members.push_back(lifted.lifted_universe.label(alt));
    probs.push_back(std::move(members));
  }
  r["lifted_problems"] = std::move(probs);
  r["I"] = lifted.layout.dimension();
  r["pi"] = vector_json(lifted_pi(inst, lifted).values);
  return r;
}

std::string lift_text(const Instance& inst) {
  LiftedLayout lifted = inst.set_valued ? *inst.lifted : lift_layout(inst.universe, inst.base_layout.problems());
  auto pi = lifted_pi(inst, lifted);
  std::ostringstream os;
  os << "lifted universe (" << lifted.lifted_universe.size() << "):";
  for (const auto& l : lifted.lifted_universe.labels()) os << ' ' << l;
  os << "\nlifted dimension I = " << lifted.layout.dimension() << "\n";
  for (std::size_t j = 0; j < lifted.layout.num_problems(); ++j) {
    os << "problem " << j << " " << subset_label(mask_of(lifted.base_problems[j].members), lifted.base_universe)
       << ":\n";
    for (std::size_t i = 0; i < lifted.layout.block_size(j); ++i) {
      std::size_t c = lifted.layout.block_offset(j) + i;
      os << "  " << coordinate_label(lifted.layout, c) << "  " << to_string(pi.values[c]) << "\n";
    }
  }
  return os.str();
}

}  // namespace rsp
