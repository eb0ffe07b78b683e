#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cvqe/ansatz.hpp"
#include "cvqe/circuits.hpp"
#include "cvqe/estimator.hpp"
#include "cvqe/hamiltonian.hpp"

namespace fixtures {

inline constexpr double kHubbardT = -0.158;
inline constexpr double kHubbardU = 1.0;

cvqe::SystemIndexing hubbard_indexing();

/// Two-site Hubbard model on (0u, 0d, 1u, 1d): four hopping terms followed by
/// the two on-site repulsions.
cvqe::Hamiltonian hubbard(double t = kHubbardT, double u = kHubbardU);

/// H on every qubit.
cvqe::CircuitSpec uniform_circuit(std::size_t qubits);

// Closed forms for the Hubbard model with the Bloch ansatz and a uniform
// initial state (lat = latitude, lon = longitude).
double closed_lambda(double lat);
double closed_upsilon(double lat, double lon, double t = kHubbardT, double u = kHubbardU);
double closed_energy(double lat, double lon, double t = kHubbardT, double u = kHubbardU);
double singlet_ground_energy(double t = kHubbardT, double u = kHubbardU);

/// Exact-mode estimator bundle for a Hamiltonian, initial circuit and ansatz.
struct Bundle {
  std::vector<cvqe::CompiledTerm> terms;
  cvqe::MeasurementPlan plan;
  cvqe::SampleArchive archive;
  cvqe::CascadeEstimator estimator;
};

Bundle make_bundle(const cvqe::Hamiltonian& h, const cvqe::CircuitSpec& initial, cvqe::AnsatzSpec ansatz,
                   cvqe::SampleMode mode = cvqe::SampleMode::Exact, std::uint64_t shots = 1,
                   std::uint64_t seed = 0);

/// Random hermitian Hamiltonian of one- and two-body terms. Operator strings
/// are written in shuffled order and every non-diagonal term is paired with
/// its conjugate.
cvqe::Hamiltonian random_hamiltonian(std::size_t qubits, std::mt19937_64& rng);

/// Random circuit over the full gate set.
cvqe::CircuitSpec random_circuit(std::size_t qubits, std::size_t gates, std::mt19937_64& rng);

std::vector<double> random_vector(std::size_t n, double lo, double hi, std::mt19937_64& rng);

/// Test-only ansatz with a generic complex lambda per family:
/// lambda_n = sum_j theta_j (a_nj + i b_nj), excluded where `excluded` is set.
cvqe::AnsatzSpec random_linear_ansatz(std::size_t qubits, std::size_t dimension, std::mt19937_64& rng,
                                      double exclude_fraction = 0.0);

/// Central differences of f along each coordinate.
template <class F>
std::vector<double> central_difference(F&& f, std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double x0 = x[j];
    x[j] = x0 + h;
    const double fp = f(x);
    x[j] = x0 - h;
    const double fm = f(x);
    x[j] = x0;
    g[j] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace fixtures
