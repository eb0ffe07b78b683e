#include "cvqe/optimizer.hpp"

#include <cmath>

#include "cvqe/error.hpp"

namespace cvqe {

std::string_view to_string(OptimizerMethod method) {
  switch (method) {
    case OptimizerMethod::GradientDescent: return "gradient_descent";
  }
  return "?";
}

OptimizerMethod parse_optimizer_method(std::string_view name) {
  if (name == "gradient_descent") return OptimizerMethod::GradientDescent;
  throw Error(ErrorKind::InvalidInput, "unknown optimizer '" + std::string(name) + "'");
}

std::string_view to_string(TerminationStatus status) {
  switch (status) {
    case TerminationStatus::Converged: return "converged";
    case TerminationStatus::MaxIterations: return "max_iters";
    case TerminationStatus::Error: return "error";
  }
  return "?";
}

void OptimizerConfig::validate() const {
  if (max_iterations < 1) throw Error(ErrorKind::InvalidInput, "max_iterations must be at least 1");
  if (!(parameter_tolerance > 0.0) || !(energy_tolerance > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "tolerances must be positive");
  }
  if (!schedule && !(step > 0.0)) throw Error(ErrorKind::InvalidInput, "step size must be positive");
}

namespace {

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

double OptimizationTrace::final_gradient_norm() const {
  return records.empty() ? 0.0 : norm(records.back().gradient);
}

bool check_convergence(std::span<const IterationRecord> tail, const OptimizerConfig& config) {
  if (tail.size() < 2) return false;
  const auto& prev = tail[tail.size() - 2];
  const auto& last = tail[tail.size() - 1];
  double dtheta = 0.0;
  for (std::size_t j = 0; j < last.theta.size(); ++j) {
    const double d = last.theta[j] - prev.theta[j];
    dtheta += d * d;
  }
  dtheta = std::sqrt(dtheta);
  const double de = std::abs(last.energy - prev.energy);
  return dtheta <= config.parameter_tolerance && de <= config.energy_tolerance * std::abs(last.energy);
}

bool project_to_domain(ParameterVector& theta, std::span<const CoordinateDomain> domain, double margin) {
  bool changed = false;
  for (std::size_t j = 0; j < theta.size() && j < domain.size(); ++j) {
    const auto& dom = domain[j];
    double& x = theta[j];
    switch (dom.kind) {
      case CoordinateDomain::Kind::Unbounded: break;
      case CoordinateDomain::Kind::Open:
        if (x <= dom.lower + margin) {
          x = dom.lower + margin;
          changed = true;
        } else if (x >= dom.upper - margin) {
          x = dom.upper - margin;
          changed = true;
        }
        break;
      case CoordinateDomain::Kind::Periodic: {
        // (lower, upper]
        const double period = dom.upper - dom.lower;
        if (x <= dom.lower || x > dom.upper) {
          double r = std::fmod(dom.upper - x, period);
          if (r < 0) r += period;
          x = dom.upper - r;
          if (x <= dom.lower) x += period;
          changed = true;
        }
        break;
      }
    }
  }
  return changed;
}

OptimizationTrace gradient_descent(const EnergyFunction& energy, const GradientFunction& gradient,
                                   const OptimizerConfig& config,
                                   std::span<const CoordinateDomain> domain) {
  config.validate();
  OptimizationTrace trace;

  auto record = [&](std::size_t k, ParameterVector theta, bool adjusted) {
    IterationRecord r;
    r.k = k;
    r.energy = energy(theta);
    r.gradient = gradient(theta);
    r.theta = std::move(theta);
    r.adjusted = adjusted;
    trace.records.push_back(std::move(r));
  };

  try {
    record(0, config.initial, false);
    if (norm(trace.records.back().gradient) == 0.0) {
      trace.status = TerminationStatus::Converged;
      return trace;
    }
    for (std::size_t k = 0; k < config.max_iterations; ++k) {
      const auto& cur = trace.records.back();
      ParameterVector next = cur.theta;
      const double gamma = config.step_at(k);
      for (std::size_t j = 0; j < next.size(); ++j) next[j] -= gamma * cur.gradient[j];
      const bool adjusted = project_to_domain(next, domain, config.boundary_margin);
      record(k + 1, std::move(next), adjusted);
      if (check_convergence(trace.records, config)) {
        trace.status = TerminationStatus::Converged;
        return trace;
      }
    }
    trace.status = TerminationStatus::MaxIterations;
  } catch (const std::exception& e) {
    trace.status = TerminationStatus::Error;
    trace.error = e.what();
  }
  return trace;
}

OptimizationTrace optimize(const EnergyFunction& energy, const GradientFunction& gradient,
                           const OptimizerConfig& config, std::span<const CoordinateDomain> domain) {
  switch (config.method) {
    case OptimizerMethod::GradientDescent: return gradient_descent(energy, gradient, config, domain);
  }
  throw Error(ErrorKind::InvalidInput, "unsupported optimizer");
}

}  // namespace cvqe
