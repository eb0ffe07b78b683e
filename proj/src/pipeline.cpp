#include "cvqe/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <tuple>

#include <json.hpp>

#include "cvqe/error.hpp"
#include "cvqe/oracle.hpp"

namespace cvqe {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::InvalidInput, "config: " + what); }

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

OptimizerConfig parse_optimizer(const json& j) {
  OptimizerConfig c;
  c.method = parse_optimizer_method(j.value("method", std::string("gradient_descent")));
  c.step = j.value("step", c.step);
  c.max_iterations = j.value("max_iterations", c.max_iterations);
  c.parameter_tolerance = j.value("parameter_tolerance", c.parameter_tolerance);
  c.energy_tolerance = j.value("energy_tolerance", c.energy_tolerance);
  c.boundary_margin = j.value("boundary_margin", c.boundary_margin);
  if (j.contains("initial")) c.initial = j["initial"].get<std::vector<double>>();
  if (j.contains("initial_deg")) {
    c.initial = j["initial_deg"].get<std::vector<double>>();
    for (double& x : c.initial) x *= std::numbers::pi / 180.0;
  }
  return c;
}

}  // namespace

void RunConfig::validate() const {
  if (mode == SampleMode::Shot) {
    if (shots < 1) fail("shot mode needs shots >= 1");
    if (!seed) fail("shot mode needs a seed");
  }
  optimizer.validate();
  initial_circuit.validate();
}

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(e.what());
  }
  try {
    RunConfig c;
    if (!j.contains("hamiltonian")) fail("missing 'hamiltonian'");
    c.hamiltonian = resolve(base_dir, j["hamiltonian"].get<std::string>());

    if (!j.contains("initial_circuit")) fail("missing 'initial_circuit'");
    const auto& ic = j["initial_circuit"];
    c.initial_circuit = ic.is_string() ? io::load_circuit(resolve(base_dir, ic.get<std::string>()))
                                       : io::circuit_from_json(ic.dump());

    if (!j.contains("ansatz")) fail("missing 'ansatz'");
    const auto& a = j["ansatz"];
    if (a.is_string()) {
      c.ansatz.name = a.get<std::string>();
    } else {
      c.ansatz.name = a.at("name").get<std::string>();
      if (a.contains("layout")) {
        for (const auto& pair : a["layout"]) {
          if (!pair.is_array() || pair.size() != 2) fail("ansatz layout entries are [label, label]");
          c.ansatz.layout.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
        }
      }
    }

    c.mode = parse_sample_mode(j.value("mode", std::string("exact")));
    c.shots = j.value("shots", std::uint64_t{0});
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("optimizer")) c.optimizer = parse_optimizer(j["optimizer"]);
    if (j.contains("surface")) {
      const auto& s = j["surface"];
      c.surface.points = s.at("points").get<std::vector<std::size_t>>();
      if (s.contains("ranges")) {
        for (const auto& r : s["ranges"]) c.surface.ranges.emplace_back(r.at(0).get<double>(), r.at(1).get<double>());
      }
    }
    if (j.contains("output_dir")) c.output_dir = resolve(base_dir, j["output_dir"].get<std::string>());
    c.verify = j.value("verify", false);
    if (j.contains("particle_number")) c.particle_number = j["particle_number"].get<std::size_t>();
    return c;
  } catch (const json::exception& e) {
    fail(e.what());
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(io::read_text(path), path.parent_path());
}

AnsatzSpec make_ansatz(const AnsatzConfig& config, const SystemIndexing& indexing) {
  if (config.name == "bloch_singlet_hubbard") {
    if (indexing.size() != 4) {
      throw Error(ErrorKind::InvalidInput, "bloch_singlet_hubbard needs exactly 4 modes");
    }
    return bloch_singlet_hubbard();
  }
  if (config.name == "jastrow_gutzwiller") {
    if (config.layout.empty()) return jastrow_gutzwiller(indexing, all_mode_pairs(indexing.size()));
    std::vector<std::pair<std::size_t, std::size_t>> layout;
    for (const auto& [a, b] : config.layout) layout.emplace_back(indexing.position(a), indexing.position(b));
    return jastrow_gutzwiller(indexing, std::move(layout));
  }
  throw Error(ErrorKind::InvalidInput, "unknown ansatz '" + config.name + "'");
}

Problem build_problem(const Hamiltonian& hamiltonian, const CircuitSpec& initial_circuit,
                      AnsatzSpec ansatz) {
  if (initial_circuit.qubits != hamiltonian.qubits()) {
    throw Error(ErrorKind::InvalidInput, "initial circuit has " + std::to_string(initial_circuit.qubits) +
                                             " qubits but the Hamiltonian has " +
                                             std::to_string(hamiltonian.qubits()) + " modes");
  }
  initial_circuit.validate();
  Problem p;
  p.hamiltonian = hamiltonian;
  p.terms = compile(hamiltonian);
  p.plan = build_plan(hamiltonian.indexing(), p.terms);
  p.plan_hash = plan_fingerprint(hamiltonian.indexing(), p.terms, p.plan);
  p.initial_circuit = initial_circuit;
  p.ansatz = std::move(ansatz);
  p.hermitian = validate_hermitian(hamiltonian);
  return p;
}

Problem build_problem(const RunConfig& config) {
  auto h = io::load_hamiltonian(config.hamiltonian);
  auto ansatz = make_ansatz(config.ansatz, h.indexing());
  return build_problem(h, config.initial_circuit, std::move(ansatz));
}

SampleArchive run_sample(const Problem& problem, SampleMode mode, std::uint64_t shots,
                         std::uint64_t master_seed) {
  const auto initial = prepare_initial_state(problem.initial_circuit);
  auto archive = collect_samples(problem.plan, initial, mode, shots, master_seed);
  archive.plan_hash = problem.plan_hash;
  archive.modes = problem.hamiltonian.indexing().labels();
  return archive;
}

void check_archive(const Problem& problem, const SampleArchive& archive) {
  if (archive.modes != problem.hamiltonian.indexing().labels()) {
    throw Error(ErrorKind::ArchiveMismatch, "archive mode labels differ from the Hamiltonian");
  }
  if (archive.plan_hash != problem.plan_hash) {
    throw Error(ErrorKind::ArchiveMismatch, "archive was recorded for a different Hamiltonian or plan (hash " +
                                                archive.plan_hash + ", expected " + problem.plan_hash + ")");
  }
  for (const auto& c : problem.plan.circuits) archive.at(c.key);
  if (archive.sets.size() != problem.plan.size()) {
    throw Error(ErrorKind::ArchiveMismatch, "archive holds circuits outside the plan");
  }
}

OptimizeResult run_optimize(const Problem& problem, const SampleArchive& archive,
                            const OptimizerConfig& config) {
  check_archive(problem, archive);
  const CascadeEstimator est(problem.terms, problem.plan, archive, problem.ansatz);
  OptimizerConfig cfg = config;
  if (cfg.initial.empty()) cfg.initial.assign(problem.ansatz.dimension, 0.0);

  OptimizeResult result;
  result.trace = optimize([&](std::span<const double> t) { return est.energy(t); },
                          [&](std::span<const double> t) { return est.grad_energy(t); }, cfg,
                          problem.ansatz.domain);
  for (const auto& r : result.trace.records) {
    result.evaluations.push_back({r.k, r.theta, est.evaluate(r.theta)});
  }
  return result;
}

SurfaceResult run_surface(const Problem& problem, const SampleArchive& archive, const GridSpec& grid) {
  check_archive(problem, archive);
  const auto& ansatz = problem.ansatz;
  const std::size_t d = ansatz.dimension;
  if (grid.points.size() != d) {
    throw Error(ErrorKind::InvalidInput, "grid needs one point count per parameter");
  }
  if (!grid.ranges.empty() && grid.ranges.size() != d) {
    throw Error(ErrorKind::InvalidInput, "grid needs one range per parameter");
  }

  SurfaceResult s;
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) {
    const auto& dom = j < ansatz.domain.size() ? ansatz.domain[j] : CoordinateDomain{};
    double lo = dom.lower, hi = dom.upper;
    if (!grid.ranges.empty()) std::tie(lo, hi) = grid.ranges[j];
    if (dom.kind == CoordinateDomain::Kind::Unbounded && grid.ranges.empty()) {
      throw Error(ErrorKind::InvalidInput, "grid range required for unbounded parameter " + std::to_string(j));
    }
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
      throw Error(ErrorKind::InvalidInput, "grid range for parameter " + std::to_string(j) + " is empty");
    }
    if (dom.kind != CoordinateDomain::Kind::Unbounded && (lo < dom.lower || hi > dom.upper)) {
      throw Error(ErrorKind::Domain, "grid range for parameter " + std::to_string(j) + " leaves the parameter space");
    }
    if (grid.points[j] < 1) throw Error(ErrorKind::InvalidInput, "grid needs at least one point per axis");
    // Cell centres keep every point strictly inside open intervals.
    std::vector<double> axis(grid.points[j]);
    const double h = (hi - lo) / static_cast<double>(axis.size());
    for (std::size_t i = 0; i < axis.size(); ++i) axis[i] = lo + (static_cast<double>(i) + 0.5) * h;
    s.axes.push_back(std::move(axis));
    total *= grid.points[j];
  }

  const CascadeEstimator est(problem.terms, problem.plan, archive, ansatz);
  s.energy.reserve(total);
  ParameterVector theta(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t j = d; j-- > 0;) {
      theta[j] = s.axes[j][rest % s.axes[j].size()];
      rest /= s.axes[j].size();
    }
    s.energy.push_back(est.energy(theta));
  }
  return s;
}

void write_surface_csv(std::ostream& out, const SurfaceResult& surface,
                       const std::vector<std::string>& names) {
  const auto fmt = io::format_number;
  for (const auto& n : names) out << n << "_rad," << n << "_deg,";
  out << "energy\n";
  const std::size_t d = surface.axes.size();
  for (std::size_t flat = 0; flat < surface.energy.size(); ++flat) {
    std::vector<double> theta(d);
    std::size_t rest = flat;
    for (std::size_t j = d; j-- > 0;) {
      theta[j] = surface.axes[j][rest % surface.axes[j].size()];
      rest /= surface.axes[j].size();
    }
    for (double x : theta) out << fmt(x) << ',' << fmt(x * 180.0 / std::numbers::pi) << ',';
    out << fmt(surface.energy[flat]) << '\n';
  }
}

VerifyReport run_verify(const Problem& problem, const SampleArchive& archive,
                        const std::vector<ParameterVector>& points,
                        std::optional<std::size_t> particle_number) {
  check_archive(problem, archive);
  const CascadeEstimator est(problem.terms, problem.plan, archive, problem.ansatz);
  const auto initial = prepare_initial_state(problem.initial_circuit);

  VerifyReport report;
  if (problem.hermitian) report.ground_energy = oracle::ground_state_energy(problem.hamiltonian, particle_number);
  for (const auto& theta : points) {
    const auto ev = est.evaluate(theta, false);
    const auto ref = oracle::exact_ansatz_expectation(problem.hamiltonian, problem.ansatz, theta, initial);
    report.max_energy_deviation = std::max(report.max_energy_deviation, std::abs(ev.energy - ref.energy));
    report.max_lambda_deviation = std::max(report.max_lambda_deviation, std::abs(ev.lambda - ref.lambda));
    report.max_upsilon_deviation = std::max(report.max_upsilon_deviation, std::abs(ev.upsilon - ref.upsilon));
    if (report.ground_energy) {
      const double gap = ev.energy - *report.ground_energy;
      report.min_variational_gap = report.min_variational_gap ? std::min(*report.min_variational_gap, gap) : gap;
    }
    ++report.points;
  }
  return report;
}

}  // namespace cvqe
