// mvcm: validate / run / learn / oracle over .mvcm model files.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mvcm/learning.hpp"
#include "mvcm/model_io.hpp"
#include "mvcm/table.hpp"

namespace {

using Clock = std::chrono::steady_clock;

long long usec(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration_cast<std::chrono::microseconds>(b - a).count();
}

// Exit statuses: 0 ok, 1 model/run problem, 2 usage.
constexpr int kOk = 0;
constexpr int kFail = 1;

std::optional<mvcm::ModelDocument> load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return mvcm::parse_model_file(buf.str());
}

void print_diagnostics(const std::string& path, const mvcm::ModelDocument& doc) {
  for (const auto& d : doc.diagnostics) {
    std::cerr << path;
    if (d.line > 0) std::cerr << ":" << d.line;
    std::cerr << ": " << d.message << "\n";
  }
}

int cmd_validate(const std::string& path) {
  auto doc = load(path);
  if (!doc) return kFail;
  print_diagnostics(path, *doc);
  if (!doc->ok()) return kFail;

  const auto& model = *doc->model;
  auto report = mvcm::validate(mvcm::powerset_table(*model.scale.lattice));
  auto flag = [](const char* name, bool ok) {
    std::cout << name << ": " << (ok ? "ok" : "VIOLATED") << "\n";
  };
  flag("lattice", report.is_lattice);
  flag("distributive", report.is_distributive);
  flag("atomic", report.is_atomic);
  flag("residuated", report.is_residuated);
  flag("integrally closed", report.is_integrally_closed);
  flag("integral", report.is_integral);
  for (const auto& w : report.counterexamples) {
    std::cout << "  counterexample [" << w.law << "]:";
    for (const auto& e : w.elements) std::cout << " " << e;
    std::cout << "\n";
  }
  std::cout << "model ok: " << model.concepts.size() << " concepts, "
            << model.weights.size() << " weights, " << model.init_cases.size()
            << " init cases\n";
  return report.all_ok() ? kOk : kFail;
}

int cmd_oracle(const std::string& path) {
  auto doc = load(path);
  if (!doc) return kFail;
  print_diagnostics(path, *doc);
  if (!doc->ok()) return kFail;

  const auto& lat = *doc->model->scale.lattice;
  auto table = mvcm::powerset_table(lat);
  const int n = table.size();
  int mismatches = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // powerset_table indexes elements by their atom mask, so the
      // table index doubles as the AtomSet bits.
      int want = mvcm::brute_force_residual(table, a, b);
      auto got = mvcm::implies(lat.make(a), lat.make(b));
      if (static_cast<std::uint64_t>(want) != got.bits) {
        ++mismatches;
        std::cerr << "mismatch: " << table.elements[a] << " -> "
                  << table.elements[b] << ": oracle " << table.elements[want]
                  << ", closed form "
                  << table.elements[static_cast<int>(got.bits)] << "\n";
      }
    }
  std::cout << "residual oracle: " << n << "x" << n << " pairs, " << mismatches
            << " mismatches\n";
  return mismatches == 0 ? kOk : kFail;
}

struct RunOpts {
  std::string path, init_case = "case1", f0_label, format = "table";
  int max_iters = 100;
  std::string neg_mode = "symmetric";
  bool timing = false, r_diag = false;
};

int cmd_run(const RunOpts& opt) {
  auto t0 = Clock::now();
  auto doc = load(opt.path);
  if (!doc) return kFail;
  print_diagnostics(opt.path, *doc);
  if (!doc->ok()) return kFail;
  auto t1 = Clock::now();

  const auto& model = *doc->model;
  mvcm::EngineConfig cfg;
  cfg.max_iters = opt.max_iters;
  cfg.neg_mode =
      opt.neg_mode == "strict" ? mvcm::NegMode::strict : mvcm::NegMode::symmetric;
  if (!opt.f0_label.empty()) {
    try {
      cfg.f0 = mvcm::parse_element(model.scale, opt.f0_label);
    } catch (const mvcm::ParseError& ex) {
      std::cerr << "error: --f0: " << ex.what() << "\n";
      return kFail;
    }
  }

  mvcm::IterationTrace trace;
  try {
    trace = mvcm::run(model, cfg, opt.init_case, opt.r_diag);
  } catch (const mvcm::NonConvergenceError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    std::cout << mvcm::serialize_trace(
        ex.trace, model,
        opt.format == "lines" ? mvcm::TraceFormat::lines : mvcm::TraceFormat::table);
    return kFail;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kFail;
  }
  auto t2 = Clock::now();

  std::cout << mvcm::serialize_trace(
      trace, model,
      opt.format == "lines" ? mvcm::TraceFormat::lines : mvcm::TraceFormat::table);

  if (opt.r_diag) {
    std::cout << "r diagnostic (r_i <= f_i, equal at the fixed point):\n";
    for (std::size_t k = 0; k < trace.r_diag.size(); ++k) {
      std::cout << "  step " << k + 1 << ":";
      for (int i = 0; i < model.concept_count(); ++i)
        std::cout << " " << model.concepts[i] << "="
                  << mvcm::format_element(model.scale, trace.r_diag[k][i]);
      std::cout << "\n";
    }
  }

  if (opt.timing) {
    std::cerr << "timing: parse " << usec(t0, t1) << " us, run " << usec(t1, t2)
              << " us, per iteration "
              << usec(t1, t2) / std::max(1, trace.steps) << " us\n";
  }
  return kOk;
}

struct LearnOpts {
  std::string path, init_case, mode = "end", doc_select = "first";
  int max_outer = 50;
};

int cmd_learn(const LearnOpts& opt) {
  auto doc = load(opt.path);
  if (!doc) return kFail;
  print_diagnostics(opt.path, *doc);
  if (!doc->ok()) return kFail;

  const auto& model = *doc->model;
  mvcm::EngineConfig cfg;
  mvcm::LearnConfig lc;
  lc.mode = opt.mode == "step" ? mvcm::LearnMode::per_step : mvcm::LearnMode::end_of_run;
  lc.doc_select =
      opt.doc_select == "best" ? mvcm::DocSelect::best : mvcm::DocSelect::first;
  lc.max_outer = opt.max_outer;

  mvcm::LearnResult result;
  try {
    result = mvcm::learn(model, cfg, lc, opt.init_case);
  } catch (const mvcm::LearnFailureError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    std::cout << mvcm::serialize_weights(model, ex.last.weights);
    return kFail;
  } catch (const mvcm::NonConvergenceError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kFail;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kFail;
  }

  std::cout << "learned weights after " << result.outer_rounds << " round(s), "
            << result.corrections.size() << " correction(s):\n";
  std::cout << mvcm::serialize_weights(model, result.weights);
  std::cout << "final run:\n";
  std::cout << mvcm::serialize_trace(result.trace, model, mvcm::TraceFormat::table);
  for (const auto& [target, value] : result.achieved)
    std::cout << model.concepts[target] << " settled at "
              << mvcm::format_element(model.scale, value) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-valued cognitive map engine"};
  app.require_subcommand(1);

  std::string path;

  auto* validate = app.add_subcommand("validate", "check lattice axioms and model file");
  validate->add_option("file", path, "model file")->required();

  auto* oracle = app.add_subcommand(
      "oracle", "cross-check implication against the brute-force residual");
  oracle->add_option("file", path, "model file")->required();

  RunOpts ro;
  auto* run = app.add_subcommand("run", "iterate the map to a fixed point");
  run->add_option("file", ro.path, "model file")->required();
  run->add_option("--init", ro.init_case, "initial value case")->required();
  run->add_option("--max-iters", ro.max_iters, "iteration cap");
  run->add_option("--neg-mode", ro.neg_mode, "negative-weight handling")
      ->check(CLI::IsMember({"symmetric", "strict"}));
  run->add_option("--f0", ro.f0_label, "first-step adjusting coefficient");
  run->add_option("--format", ro.format, "trace output format")
      ->check(CLI::IsMember({"table", "lines"}));
  run->add_flag("--timing", ro.timing, "report phase timings (microseconds)");
  run->add_flag("--r-diag", ro.r_diag, "print the r diagnostic per step");

  LearnOpts lo;
  auto* learn = app.add_subcommand("learn", "adjust weights until outputs hit doc sets");
  learn->add_option("file", lo.path, "model file")->required();
  learn->add_option("--init", lo.init_case, "initial value case")->required();
  learn->add_option("--mode", lo.mode, "correction schedule")
      ->check(CLI::IsMember({"end", "step"}));
  learn->add_option("--doc-select", lo.doc_select, "doc element choice")
      ->check(CLI::IsMember({"first", "best"}));
  learn->add_option("--max-outer", lo.max_outer, "outer round cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (validate->parsed()) return cmd_validate(path);
  if (oracle->parsed()) return cmd_oracle(path);
  if (run->parsed()) return cmd_run(ro);
  return cmd_learn(lo);
}
