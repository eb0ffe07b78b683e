#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cvqe/ansatz.hpp"

namespace cvqe {

enum class OptimizerMethod { GradientDescent };

std::string_view to_string(OptimizerMethod method);
OptimizerMethod parse_optimizer_method(std::string_view name);

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::GradientDescent;
  /// Step size gamma_k; a schedule, when set, takes precedence.
  double step = 1.0;
  std::function<double(std::size_t)> schedule;
  std::size_t max_iterations = 200;
  /// Bound on ||theta_{k+1} - theta_k|| (radians for angle parameters).
  double parameter_tolerance = 1e-6;
  /// Bound on |E_{k+1} - E_k| relative to |E_{k+1}|.
  double energy_tolerance = 1e-6;
  /// Inward margin applied when a step is clipped to an open boundary.
  double boundary_margin = 1e-9;
  ParameterVector initial;

  double step_at(std::size_t k) const { return schedule ? schedule(k) : step; }
  void validate() const;
};

struct IterationRecord {
  std::size_t k = 0;
  ParameterVector theta;
  double energy = 0.0;
  std::vector<double> gradient;
  /// The step that produced theta left the parameter space and was clipped
  /// or wrapped back into it.
  bool adjusted = false;
};

enum class TerminationStatus { Converged, MaxIterations, Error };

std::string_view to_string(TerminationStatus status);

struct OptimizationTrace {
  std::vector<IterationRecord> records;
  TerminationStatus status = TerminationStatus::MaxIterations;
  std::string error;

  const IterationRecord& final() const { return records.back(); }
  double final_gradient_norm() const;
};

using EnergyFunction = std::function<double(std::span<const double>)>;
using GradientFunction = std::function<std::vector<double>(std::span<const double>)>;

/// True iff the last two records moved less than both tolerances.
bool check_convergence(std::span<const IterationRecord> tail, const OptimizerConfig& config);

/// Maps theta back into the parameter space: open coordinates are clipped
/// to the boundary minus `margin`, periodic ones are wrapped. Returns true
/// if anything changed.
bool project_to_domain(ParameterVector& theta, std::span<const CoordinateDomain> domain, double margin);

/// theta_{k+1} = theta_k - gamma_k grad E(theta_k).
OptimizationTrace gradient_descent(const EnergyFunction& energy, const GradientFunction& gradient,
                                   const OptimizerConfig& config,
                                   std::span<const CoordinateDomain> domain = {});

/// Dispatches on config.method.
OptimizationTrace optimize(const EnergyFunction& energy, const GradientFunction& gradient,
                           const OptimizerConfig& config, std::span<const CoordinateDomain> domain = {});

}  // namespace cvqe
