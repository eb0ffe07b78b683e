#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvqe/ansatz.hpp"
#include "cvqe/circuits.hpp"
#include "cvqe/estimator.hpp"
#include "cvqe/hamiltonian.hpp"
#include "cvqe/io.hpp"
#include "cvqe/optimizer.hpp"

namespace cvqe {

struct AnsatzConfig {
  std::string name;
  /// Jastrow-Gutzwiller mode pairs by label; empty means every pair q <= q'.
  std::vector<std::pair<std::string, std::string>> layout;
};

struct GridSpec {
  std::vector<std::size_t> points;
  /// Per-coordinate [lower, upper]; defaults to the ansatz domain.
  std::vector<std::pair<double, double>> ranges;
};

struct RunConfig {
  std::filesystem::path hamiltonian;
  CircuitSpec initial_circuit;
  AnsatzConfig ansatz;
  SampleMode mode = SampleMode::Exact;
  std::uint64_t shots = 0;
  std::optional<std::uint64_t> seed;
  OptimizerConfig optimizer;
  GridSpec surface;
  std::filesystem::path output_dir = "out";
  bool verify = false;
  /// Particle-number sector for the verification ground state.
  std::optional<std::size_t> particle_number;

  /// SHOT mode needs S >= 1 and a seed.
  void validate() const;
};

/// Relative paths inside the document resolve against `base_dir`.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

AnsatzSpec make_ansatz(const AnsatzConfig& config, const SystemIndexing& indexing);

/// Everything derived from a config before any circuit runs.
struct Problem {
  Hamiltonian hamiltonian;
  std::vector<CompiledTerm> terms;
  MeasurementPlan plan;
  std::string plan_hash;
  CircuitSpec initial_circuit;
  AnsatzSpec ansatz;
  bool hermitian = true;
};

Problem build_problem(const Hamiltonian& hamiltonian, const CircuitSpec& initial_circuit,
                      AnsatzSpec ansatz);
Problem build_problem(const RunConfig& config);

/// Prepares the initial state once per circuit and measures it.
SampleArchive run_sample(const Problem& problem, SampleMode mode, std::uint64_t shots,
                         std::uint64_t master_seed);

/// Rejects archives recorded for a different Hamiltonian or plan.
void check_archive(const Problem& problem, const SampleArchive& archive);

struct OptimizeResult {
  OptimizationTrace trace;
  std::vector<io::EvaluationRecord> evaluations;
};

/// Gradient descent on the estimator built from `archive`. Never samples.
OptimizeResult run_optimize(const Problem& problem, const SampleArchive& archive,
                            const OptimizerConfig& config);

struct SurfaceResult {
  std::vector<std::vector<double>> axes;
  /// Row-major over the axes: first coordinate varies slowest.
  std::vector<double> energy;
};

SurfaceResult run_surface(const Problem& problem, const SampleArchive& archive, const GridSpec& grid);

void write_surface_csv(std::ostream& out, const SurfaceResult& surface,
                       const std::vector<std::string>& parameter_names);

struct VerifyReport {
  std::size_t points = 0;
  double max_energy_deviation = 0.0;
  double max_lambda_deviation = 0.0;
  double max_upsilon_deviation = 0.0;
  std::optional<double> ground_energy;
  /// min over checked points of E(theta) - E_ground.
  std::optional<double> min_variational_gap;
};

/// Compares the estimator with the brute-force oracle at every point.
VerifyReport run_verify(const Problem& problem, const SampleArchive& archive,
                        const std::vector<ParameterVector>& points,
                        std::optional<std::size_t> particle_number);

}  // namespace cvqe
