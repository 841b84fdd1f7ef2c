// koethe-lab command-line interface.
//
//   koethe-lab run <instance.json> [--format json|text|csv] [--out PATH]
//                  [--budget-N INT] [--kmax INT] [--mmax INT] [--jmax INT] [--timings]
//   koethe-lab suite [same options]        — run the embedded curated suite
//   koethe-lab convolve --theta SPEC --x SPEC -N INT [--format json|text]
//
// SPEC is either a path to a JSON file holding one sequence definition or an
// inline JSON object (first character '{').
//
// Exit codes: 0 all tasks Holds/Consistent; 2 some task Fails, Inconclusive,
// Undetermined, or errored; 3 a theorem task reported Contradiction;
// 1 usage or parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "koethe/curated.hpp"
#include "koethe/instance.hpp"
#include "koethe/report.hpp"
#include "koethe/runner.hpp"
#include "koethe/version.hpp"

namespace {

struct RunOptions {
  std::string instance_path;
  std::string format = "text";
  std::string out_path;
  long budget_N = 0;  // 0: keep instance/default value
  int kmax = 0, mmax = 0, jmax = 0;
  bool timings = false;
};

void add_common(CLI::App* cmd, RunOptions& opt) {
  cmd->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "text", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", opt.out_path, "Write the report to this path instead of stdout");
  cmd->add_option("--budget-N", opt.budget_N, "Override scan budget N")->check(CLI::PositiveNumber);
  cmd->add_option("--kmax", opt.kmax, "Override weight-index budget")->check(CLI::PositiveNumber);
  cmd->add_option("--mmax", opt.mmax, "Override witness-search budget")->check(CLI::PositiveNumber);
  cmd->add_option("--jmax", opt.jmax, "Override pairing-search budget")->check(CLI::PositiveNumber);
  cmd->add_flag("--timings", opt.timings, "Include wall-clock timings (breaks byte determinism)");
}

int emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 1;
  }
  out << payload;
  return 0;
}

int run_instance(const koethe::InstanceFile& inst, const RunOptions& opt) {
  koethe::Budget budget = inst.budgets;
  if (opt.budget_N > 0) budget.N = opt.budget_N;
  if (opt.kmax > 0) budget.k_max = opt.kmax;
  if (opt.mmax > 0) budget.m_max = opt.mmax;
  if (opt.jmax > 0) budget.j_max = opt.jmax;

  koethe::Report report = koethe::run_tasks(inst, budget, opt.timings);
  std::string payload;
  if (opt.format == "json")
    payload = koethe::emit_json(report).dump(2) + "\n";
  else if (opt.format == "csv")
    payload = koethe::emit_csv(report);
  else
    payload = koethe::emit_text(report);
  if (int rc = emit(payload, opt.out_path); rc != 0) return rc;
  return report.summary().exit_code;
}

koethe::ScalarSequence load_sequence_spec(const std::string& spec) {
  std::string text = spec;
  std::string origin = "<inline>";
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') {
    std::ifstream in(spec, std::ios::binary);
    if (!in) throw koethe::InstanceError("cannot open sequence file: " + spec);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    origin = spec;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = koethe::instance_detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw koethe::InstanceError(origin + ":" + std::to_string(line) + ":" +
                                std::to_string(col) + ": " + e.what());
  }
  return koethe::instance_detail::parse_sequence(j, origin);
}

int run_convolve(const std::string& theta_spec, const std::string& x_spec, long N,
                 const std::string& format, const std::string& out_path) {
  koethe::ScalarSequence theta = load_sequence_spec(theta_spec);
  koethe::ScalarSequence x = load_sequence_spec(x_spec);
  koethe::Prefix p = koethe::cauchy_product_prefix(theta, x, N);
  std::string payload;
  if (format == "json") {
    nlohmann::ordered_json j;
    j["schema"] = "koethe-lab/convolve/v1";
    j["N"] = N;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const koethe::LogValue& v : p.values)
      entries.push_back(koethe::report_detail::lv_json(v));
    j["entries"] = std::move(entries);
    payload = j.dump(2) + "\n";
  } else {
    std::ostringstream out;
    for (long n = 1; n <= p.length(); ++n) {
      const koethe::LogValue& v = p.at(n);
      out << "n=" << n << ": " << koethe::to_decimal_string(v) << " (sign=" << v.sign
          << ", log=";
      if (v.sign == 0)
        out << "-inf";
      else {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v.logmag);
        out << buf;
      }
      out << ")\n";
    }
    payload = out.str();
  }
  return emit(payload, out_path);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(koethe::tool_name) +
               " — certified verdicts for weighted sequence spaces and convolution operators"};
  app.set_version_flag("--version", koethe::tool_version);
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run_cmd = app.add_subcommand("run", "Run the tasks of an instance file");
  run_cmd->add_option("instance", run_opt.instance_path, "Instance JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(run_cmd, run_opt);

  RunOptions suite_opt;
  CLI::App* suite_cmd = app.add_subcommand("suite", "Run the embedded curated suite");
  add_common(suite_cmd, suite_opt);

  std::string theta_spec, x_spec, conv_format = "text", conv_out;
  long conv_N = 0;
  CLI::App* conv_cmd = app.add_subcommand("convolve", "Cauchy-product prefix of two sequences");
  conv_cmd->add_option("--theta", theta_spec, "Symbol sequence (file or inline JSON)")->required();
  conv_cmd->add_option("--x", x_spec, "Input sequence (file or inline JSON)")->required();
  conv_cmd->add_option("-N,--N", conv_N, "Prefix length")->required()->check(CLI::PositiveNumber);
  conv_cmd->add_option("--format", conv_format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  conv_cmd->add_option("--out", conv_out, "Write output to this path instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run_cmd->parsed())
      return run_instance(koethe::parse_instance(run_opt.instance_path), run_opt);
    if (suite_cmd->parsed())
      return run_instance(koethe::parse_instance_text(std::string(koethe::curated_suite_json),
                                                      std::string(koethe::curated_suite_name)),
                          suite_opt);
    if (conv_cmd->parsed())
      return run_convolve(theta_spec, x_spec, conv_N, conv_format, conv_out);
  } catch (const koethe::InstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
