#include "cvqe/ansatz.hpp"

#include <cmath>
#include <numbers>

#include "cvqe/error.hpp"

namespace cvqe {

Complex LambdaValue::amplitude_factor() const noexcept {
  if (!value_) return {};
  return std::exp(Complex{0.0, 1.0} * *value_);
}

void AnsatzSpec::check_domain(std::span<const double> theta) const {
  if (theta.size() != dimension) {
    throw Error(ErrorKind::InvalidInput, name + ": expected " + std::to_string(dimension) +
                                             " parameters, got " + std::to_string(theta.size()));
  }
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (!std::isfinite(theta[j])) throw Error(ErrorKind::Domain, name + ": non-finite parameter");
    if (j < domain.size() && domain[j].kind == CoordinateDomain::Kind::Open &&
        !(theta[j] > domain[j].lower && theta[j] < domain[j].upper)) {
      throw Error(ErrorKind::Domain, name + ": parameter " + std::to_string(j) + " = " +
                                         std::to_string(theta[j]) + " outside the parameter space");
    }
  }
}

LambdaValue AnsatzSpec::lambda(std::span<const double> theta, BasisIndex n) const {
  return evaluate(theta, n);
}

std::vector<Complex> AnsatzSpec::lambda_gradient(std::span<const double> theta, BasisIndex n) const {
  std::vector<Complex> out(dimension);
  gradient(theta, n, out);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> all_mode_pairs(std::size_t qubits) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t q = 0; q < qubits; ++q) {
    for (std::size_t r = q; r < qubits; ++r) pairs.emplace_back(q, r);
  }
  return pairs;
}

AnsatzSpec jastrow_gutzwiller(const SystemIndexing& indexing,
                              std::vector<std::pair<std::size_t, std::size_t>> layout) {
  const std::size_t qubits = indexing.size();
  std::vector<std::pair<BasisIndex, BasisIndex>> bits;
  AnsatzSpec spec;
  for (auto [q, r] : layout) {
    if (q >= qubits || r >= qubits) throw Error(ErrorKind::OutOfRange, "layout mode out of range");
    bits.emplace_back(indexing.bit(q), indexing.bit(r));
    spec.parameter_names.push_back("theta[" + indexing.label(q) + "," + indexing.label(r) + "]");
  }

  spec.name = "jastrow_gutzwiller";
  spec.dimension = layout.size();
  spec.qubits = qubits;
  spec.domain.assign(layout.size(), CoordinateDomain{});
  spec.evaluate = [bits](std::span<const double> theta, BasisIndex n) {
    double sum = 0.0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if ((n & bits[j].first) && (n & bits[j].second)) sum += theta[j];
    }
    return LambdaValue::of(Complex{0.0, sum});
  };
  spec.gradient = [bits](std::span<const double>, BasisIndex n, std::span<Complex> out) {
    for (std::size_t j = 0; j < bits.size(); ++j) {
      out[j] = ((n & bits[j].first) && (n & bits[j].second)) ? Complex{0.0, 1.0} : Complex{};
    }
  };
  return spec;
}

Complex bloch_lambda(double latitude, double longitude) {
  if (!(std::abs(latitude) < std::numbers::pi / 2)) {
    throw Error(ErrorKind::Domain, "bloch ansatz: |latitude| must be below pi/2");
  }
  return {longitude / 2.0, -0.5 * std::log(std::tan(std::numbers::pi / 4 + latitude / 2.0))};
}

AnsatzSpec bloch_singlet_hubbard() {
  // Families on (0u, 0d, 1u, 1d): 0110 and 1001 carry +lambda, 0011 and 1100
  // carry -lambda, everything else is excluded.
  auto orientation = [](BasisIndex n) -> int {
    switch (n) {
      case 0b0110:
      case 0b1001: return 1;
      case 0b0011:
      case 0b1100: return -1;
      default: return 0;
    }
  };

  AnsatzSpec spec;
  spec.name = "bloch_singlet_hubbard";
  spec.dimension = 2;
  spec.qubits = 4;
  spec.parameter_names = {"latitude", "longitude"};
  spec.domain = {
      {CoordinateDomain::Kind::Open, -std::numbers::pi / 2, std::numbers::pi / 2},
      {CoordinateDomain::Kind::Periodic, -std::numbers::pi, std::numbers::pi},
  };
  spec.evaluate = [orientation](std::span<const double> theta, BasisIndex n) {
    const int s = orientation(n);
    if (s == 0) return LambdaValue::excluded();
    return LambdaValue::of(static_cast<double>(s) * bloch_lambda(theta[0], theta[1]));
  };
  spec.gradient = [orientation](std::span<const double> theta, BasisIndex n, std::span<Complex> out) {
    const double s = orientation(n);
    // d/dlat of -(i/2) ln tan(pi/4 + lat/2) = -(i/2) / cos(lat)
    out[0] = s * Complex{0.0, -0.5 / std::cos(theta[0])};
    out[1] = s * Complex{0.5, 0.0};
  };
  return spec;
}

Complex evaluate_phase_pair(const AnsatzSpec& spec, std::span<const double> theta,
                            BasisIndex n_plus, BasisIndex n_minus) {
  const auto plus = spec.lambda(theta, n_plus);
  const auto minus = spec.lambda(theta, n_minus);
  if (plus.is_excluded() || minus.is_excluded()) return {};
  const Complex i{0.0, 1.0};
  return std::exp(-i * std::conj(plus.value()) + i * minus.value());
}

Complex evaluate_phase_pair(const AnsatzSpec& spec, std::span<const double> theta,
                            const OccupationFamily& n_plus, const OccupationFamily& n_minus) {
  return evaluate_phase_pair(spec, theta, n_plus.index(), n_minus.index());
}

}  // namespace cvqe
