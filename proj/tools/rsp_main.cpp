// rsp: exact random-utility rationalizability checks on stochastic choice data.
//
// Exit codes: 0 rationalizable / success, 1 verification failed,
// 2 input error, 3 not rationalizable, 4 cap exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rsp/errors.hpp"
#include "rsp/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitNotRationalizable = 3;
constexpr int kExitCap = 4;

enum class Format { text, structured };

void emit(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw rsp::InputError(out_path + ": cannot open output file");
  out << body;
}

std::string render(const rsp::Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rationalizability checks for stochastic choice data"};
  app.require_subcommand(1);

  Format format = Format::text;
  std::map<std::string, Format> formats{{"text", Format::text}, {"structured", Format::structured}};
  std::string instance_path;
  std::string out_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("instance", instance_path, "Instance file (YAML)")->required();
    sub->add_option("--format", format, "Output format: text or structured (JSON)")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("-o,--output", out_path, "Write output to a file instead of stdout");
  };

  auto* check = app.add_subcommand("check", "Decide rationalizability; report a mixture or a violated trial sequence");
  add_common(check);
  rsp::CheckOptions options;
  std::map<std::string, rsp::DecompositionMode> modes{{"canonical", rsp::DecompositionMode::canonical},
                                                      {"compressed", rsp::DecompositionMode::compressed}};
  check->add_option("--mode", options.mode, "Trial decomposition: canonical or compressed")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  check->add_flag("--restricted-arsp", options.restricted_arsp,
                  "Also check the axiom restricted to downward-closed trials (set-valued data)");
  bool timing = false;
  check->add_flag("--timing", timing, "Include wall-clock timing (reports are then not byte-stable)");

  auto* enumerate = app.add_subcommand("enumerate-types", "List the rational type set");
  add_common(enumerate);

  auto* facets = app.add_subcommand("facets", "Enumerate facets of the hull and their essential trial sequences");
  add_common(facets);
  rsp::FacetCaps caps;
  facets->add_option("--facets-cap", caps.max_vertices, "Maximum number of vertices (types)");
  facets->add_option("--facets-dim-cap", caps.max_dimension, "Maximum coordinate dimension I");

  auto* lift = app.add_subcommand("lift", "Show the power-set lifting of the instance");
  add_common(lift);

  auto* verify = app.add_subcommand("verify", "Re-check a structured check report against its instance");
  std::string report_path;
  verify->add_option("instance", instance_path, "Instance file (YAML)")->required();
  verify->add_option("report", report_path, "Structured report produced by check --format structured")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    rsp::Instance instance = rsp::load_instance(instance_path);

    if (check->parsed()) {
      auto outcome = rsp::run_check(instance, options);
      if (const auto* cert = std::get_if<rsp::ViolationCertificate>(&outcome.verdict)) {
        if (options.mode == rsp::DecompositionMode::canonical && cert->trials.length() > 1000000)
          std::cerr << "warning: trial sequence has M = " << rsp::to_string(cert->trials.length())
                    << " trials; --mode compressed gives a shorter listing\n";
      }
      emit(format == Format::structured ? render(rsp::check_report_json(instance, outcome, options, timing))
                                        : rsp::check_report_text(instance, outcome, options, timing),
           out_path);
      return rsp::is_rationalizable(outcome) ? kExitOk : kExitNotRationalizable;
    }
    if (enumerate->parsed()) {
      emit(format == Format::structured ? render(rsp::types_json(instance)) : rsp::types_text(instance), out_path);
      return kExitOk;
    }
    if (facets->parsed()) {
      auto h = rsp::enumerate_facets(instance.types, caps);
      emit(format == Format::structured ? render(rsp::facets_json(instance, h)) : rsp::facets_text(instance, h),
           out_path);
      return kExitOk;
    }
    if (lift->parsed()) {
      emit(format == Format::structured ? render(rsp::lift_json(instance)) : rsp::lift_text(instance), out_path);
      return kExitOk;
    }
    if (verify->parsed()) {
      std::ifstream in(report_path);
      if (!in) throw rsp::InputError(report_path + ": cannot open report file");
      rsp::Json report;
      try {
        report = rsp::Json::parse(in);
      } catch (const rsp::Json::parse_error& e) {
        throw rsp::InputError(report_path + ": " + e.what());
      }
      auto result = rsp::run_verify(instance, report);
      std::cout << (result.ok ? "verified: " : "verification failed: ") << result.reason << "\n";
      return result.ok ? kExitOk : kExitVerifyFailed;
    }
  } catch (const rsp::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const rsp::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  }
  return kExitInput;
}
