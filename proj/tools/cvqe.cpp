// Command-line driver: sample once, then optimize, map the energy surface,
// or check the estimator against the brute-force oracle.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvqe/error.hpp"
#include "cvqe/pipeline.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string archive;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> shots;
  std::optional<std::string> mode;
};

cvqe::RunConfig load_config(const Options& opt) {
  auto cfg = cvqe::load_run_config(opt.config);
  if (!opt.out.empty()) cfg.output_dir = opt.out;
  if (opt.mode) cfg.mode = cvqe::parse_sample_mode(*opt.mode);
  if (opt.shots) cfg.shots = *opt.shots;
  if (opt.seed) cfg.seed = *opt.seed;
  cfg.validate();
  return cfg;
}

fs::path archive_path(const Options& opt, const cvqe::RunConfig& cfg) {
  return opt.archive.empty() ? cfg.output_dir / "archive.json" : fs::path(opt.archive);
}

void warn_if_not_hermitian(const cvqe::Problem& p) {
  if (!p.hermitian) {
    std::cerr << json{{"warning", "hamiltonian is not hermitian; Im(Upsilon) will not vanish"}}.dump() << '\n';
  }
}

json theta_json(const cvqe::ParameterVector& theta) {
  json rad = json::array(), deg = json::array();
  for (double x : theta) {
    rad.push_back(x);
    deg.push_back(x * 180.0 / std::numbers::pi);
  }
  return {{"rad", rad}, {"deg", deg}};
}

json verify_json(const cvqe::VerifyReport& r) {
  json j{{"points", r.points},
         {"max_energy_deviation", r.max_energy_deviation},
         {"max_lambda_deviation", r.max_lambda_deviation},
         {"max_upsilon_deviation", r.max_upsilon_deviation}};
  if (r.ground_energy) j["ground_energy"] = *r.ground_energy;
  if (r.min_variational_gap) j["min_variational_gap"] = *r.min_variational_gap;
  return j;
}

int cmd_sample(const Options& opt) {
  const auto cfg = load_config(opt);
  const auto problem = cvqe::build_problem(cfg);
  warn_if_not_hermitian(problem);
  const auto archive = cvqe::run_sample(problem, cfg.mode, cfg.shots, cfg.seed.value_or(0));
  const auto path = archive_path(opt, cfg);
  cvqe::io::save_archive(path, archive);

  json summary{{"archive", path.string()},
               {"circuits", problem.plan.size()},
               {"mode", std::string(cvqe::to_string(archive.mode))},
               {"plan_hash", archive.plan_hash}};
  if (archive.mode == cvqe::SampleMode::Shot) {
    summary["S"] = archive.shots;
    summary["shot_budget"] = archive.shots * problem.plan.size();
    summary["master_seed"] = archive.master_seed;
  }
  std::cout << summary.dump() << '\n';
  return 0;
}

int cmd_optimize(const Options& opt) {
  const auto cfg = load_config(opt);
  const auto problem = cvqe::build_problem(cfg);
  warn_if_not_hermitian(problem);
  const auto archive = cvqe::io::load_archive(archive_path(opt, cfg));

  const auto executions_before = cvqe::circuit_execution_count();
  const auto result = cvqe::run_optimize(problem, archive, cfg.optimizer);
  const auto executions = cvqe::circuit_execution_count() - executions_before;

  const auto& names = problem.ansatz.parameter_names;
  std::ostringstream trace_csv, eval_csv;
  cvqe::io::write_trace_csv(trace_csv, result.trace, names);
  cvqe::io::write_evaluations_csv(eval_csv, result.evaluations, names);
  cvqe::io::write_text(cfg.output_dir / "trace.csv", trace_csv.str());
  cvqe::io::write_text(cfg.output_dir / "evaluations.csv", eval_csv.str());

  const auto& trace = result.trace;
  json summary{{"status", std::string(cvqe::to_string(trace.status))},
               {"iterations", trace.records.empty() ? 0 : trace.final().k},
               {"circuit_executions", executions}};
  if (!trace.records.empty()) {
    summary["theta"] = theta_json(trace.final().theta);
    summary["energy"] = trace.final().energy;
    summary["gradient_norm"] = trace.final_gradient_norm();
  }
  if (!trace.error.empty()) summary["error"] = trace.error;
  if (cfg.verify) {
    std::vector<cvqe::ParameterVector> points;
    for (const auto& r : trace.records) points.push_back(r.theta);
    summary["verify"] = verify_json(cvqe::run_verify(problem, archive, points, cfg.particle_number));
  }
  cvqe::io::write_text(cfg.output_dir / "summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump() << '\n';
  return trace.status == cvqe::TerminationStatus::Error ? 1 : 0;
}

int cmd_surface(const Options& opt) {
  const auto cfg = load_config(opt);
  const auto problem = cvqe::build_problem(cfg);
  const auto archive = cvqe::io::load_archive(archive_path(opt, cfg));
  auto grid = cfg.surface;
  if (grid.points.empty()) grid.points.assign(problem.ansatz.dimension, 50);
  const auto surface = cvqe::run_surface(problem, archive, grid);
  const auto path = cvqe::run_optimize(problem, archive, cfg.optimizer);

  const auto& names = problem.ansatz.parameter_names;
  std::ostringstream grid_csv, path_csv;
  cvqe::write_surface_csv(grid_csv, surface, names);
  cvqe::io::write_trace_csv(path_csv, path.trace, names);
  cvqe::io::write_text(cfg.output_dir / "surface.csv", grid_csv.str());
  cvqe::io::write_text(cfg.output_dir / "path.csv", path_csv.str());
  std::cout << json{{"grid_points", surface.energy.size()},
                    {"path_points", path.trace.records.size()},
                    {"surface", (cfg.output_dir / "surface.csv").string()},
                    {"path", (cfg.output_dir / "path.csv").string()}}
                   .dump()
            << '\n';
  return 0;
}

int cmd_verify(const Options& opt) {
  const auto cfg = load_config(opt);
  const auto problem = cvqe::build_problem(cfg);
  const auto archive = cvqe::io::load_archive(archive_path(opt, cfg));
  const auto path = cvqe::run_optimize(problem, archive, cfg.optimizer);
  std::vector<cvqe::ParameterVector> points;
  for (const auto& r : path.trace.records) points.push_back(r.theta);
  const auto report = cvqe::run_verify(problem, archive, points, cfg.particle_number);

  auto j = verify_json(report);
  bool ok = true;
  if (archive.mode == cvqe::SampleMode::Exact) {
    ok = report.max_energy_deviation <= 1e-10 &&
         (!report.min_variational_gap || *report.min_variational_gap >= -1e-10);
    j["pass"] = ok;
  }
  std::cout << j.dump() << '\n';
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cascaded VQE: sample once, estimate and optimize classically"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool sampling) {
    sub->add_option("--config", opt.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output directory (overrides the config)");
    if (sampling) {
      sub->add_option("--seed", opt.seed, "Master seed");
      sub->add_option("--shots", opt.shots, "Shots per circuit");
      sub->add_option("--mode", opt.mode, "exact | shot")->check(CLI::IsMember({"exact", "shot"}));
    } else {
      sub->add_option("--archive", opt.archive, "Sample archive (default <out>/archive.json)");
    }
  };

  auto* sample = app.add_subcommand("sample", "Run every planned circuit once and write the archive");
  auto* optimize = app.add_subcommand("optimize", "Gradient descent on a recorded archive");
  auto* surface = app.add_subcommand("surface", "Energy grid and descent path as CSV");
  auto* verify = app.add_subcommand("verify", "Compare the estimator with the brute-force oracle");
  add_common(sample, true);
  add_common(optimize, false);
  add_common(surface, false);
  add_common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << json{{"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump() << '\n';
    return 2;
  }

  try {
    if (*sample) return cmd_sample(opt);
    if (*optimize) return cmd_optimize(opt);
    if (*surface) return cmd_surface(opt);
    if (*verify) return cmd_verify(opt);
  } catch (const cvqe::Error& e) {
    std::cerr << json{{"error", {{"kind", std::string(cvqe::to_string(e.kind()))}, {"message", e.what()}}}}.dump()
              << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << '\n';
    return 1;
  }
  return 2;
}
