#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cvqe/error.hpp"
#include "cvqe/fock.hpp"
#include "cvqe/hamiltonian.hpp"

namespace cvqe {

using ParameterVector = std::vector<double>;

/// lambda_n(theta), or the excluded limit lambda_n -> i*infinity where the
/// amplitude factor e^{i lambda} vanishes.
class LambdaValue {
 public:
  static LambdaValue excluded() noexcept { return LambdaValue(); }
  static LambdaValue of(Complex value) noexcept { return LambdaValue(value); }

  bool is_excluded() const noexcept { return !value_.has_value(); }
  Complex value() const {
    if (!value_) throw Error(ErrorKind::Domain, "lambda of an excluded family");
    return *value_;
  }

  /// e^{i lambda}, zero when excluded.
  Complex amplitude_factor() const noexcept;

 private:
  LambdaValue() = default;
  explicit LambdaValue(Complex v) : value_(v) {}
  std::optional<Complex> value_;
};

/// How an optimizer step treats one parameter coordinate.
struct CoordinateDomain {
  enum class Kind { Unbounded, Open, Periodic };
  Kind kind = Kind::Unbounded;
  double lower = 0.0;
  double upper = 0.0;
};

/// A registered family of parametric phases lambda_n(theta).
struct AnsatzSpec {
  using Evaluator = std::function<LambdaValue(std::span<const double>, BasisIndex)>;
  /// Writes d_lambda/d_theta_j into `out` (size = dimension). Never called
  /// for excluded families.
  using Gradient = std::function<void(std::span<const double>, BasisIndex, std::span<Complex>)>;

  std::string name;
  std::size_t dimension = 0;
  std::size_t qubits = 0;
  Evaluator evaluate;
  Gradient gradient;
  std::vector<CoordinateDomain> domain;
  std::vector<std::string> parameter_names;

  /// Throws ErrorKind::Domain when theta lies outside the parameter space.
  void check_domain(std::span<const double> theta) const;
  LambdaValue lambda(std::span<const double> theta, BasisIndex n) const;
  std::vector<Complex> lambda_gradient(std::span<const double> theta, BasisIndex n) const;
};

/// lambda_n = i * sum over layout pairs theta_{qq'} n_q n_q'.
AnsatzSpec jastrow_gutzwiller(const SystemIndexing& indexing,
                              std::vector<std::pair<std::size_t, std::size_t>> layout);
/// Layout with one parameter per unordered pair q <= q'.
std::vector<std::pair<std::size_t, std::size_t>> all_mode_pairs(std::size_t qubits);

/// Singlet two-fermion ansatz of the two-site Hubbard model on modes
/// (0u, 0d, 1u, 1d). theta = (latitude, longitude).
AnsatzSpec bloch_singlet_hubbard();

/// lambda(latitude, longitude) = longitude/2 - (i/2) ln tan(pi/4 + latitude/2).
Complex bloch_lambda(double latitude, double longitude);

/// e^{-i lambda*(n+)} e^{i lambda(n-)}; zero if either family is excluded.
Complex evaluate_phase_pair(const AnsatzSpec& spec, std::span<const double> theta,
                            BasisIndex n_plus, BasisIndex n_minus);
Complex evaluate_phase_pair(const AnsatzSpec& spec, std::span<const double> theta,
                            const OccupationFamily& n_plus, const OccupationFamily& n_minus);

}  // namespace cvqe
