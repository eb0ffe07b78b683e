#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "cvqe/ansatz.hpp"
#include "cvqe/circuits.hpp"
#include "cvqe/hamiltonian.hpp"

namespace cvqe {

/// Brute-force reference for the estimator. Each term acts on Fock states
/// through the Jordan-Wigner ordering of its own frame: affected modes first,
/// then unaffected modes, both in mode order. A ladder operator on mode q
/// picks up (-1)^(occupied modes preceding q in that frame).
namespace oracle {

inline constexpr std::size_t kMaxDenseModes = 14;

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Applies an operator string (leftmost operator acts last) to a basis state
/// in the frame of `partition`. Returns nullopt when the state is annihilated.
std::optional<std::pair<BasisIndex, int>> apply_operator_string(std::span<const LadderOp> ops,
                                                                const AffectedPartition& partition,
                                                                BasisIndex state);

/// H|psi> without building a matrix.
std::vector<Complex> apply_hamiltonian(const Hamiltonian& hamiltonian, std::span<const Complex> psi);

Matrix dense_term(const InteractionTerm& term);
Matrix dense_hamiltonian(const Hamiltonian& hamiltonian);

/// Psi(theta) = sum_n exp(i lambda_n) psi0_n |n>, unnormalized.
std::vector<Complex> ansatz_state(const AnsatzSpec& ansatz, std::span<const double> theta,
                                  const StateVector& initial);

struct ExactExpectation {
  double lambda = 0.0;
  Complex upsilon;
  double energy = 0.0;
};

/// <Psi|Psi>, <Psi|H|Psi> and their ratio by direct application of H.
ExactExpectation exact_ansatz_expectation(const Hamiltonian& hamiltonian, const AnsatzSpec& ansatz,
                                          std::span<const double> theta, const StateVector& initial);

double exact_ansatz_energy(const Hamiltonian& hamiltonian, const AnsatzSpec& ansatz,
                           std::span<const double> theta, const StateVector& initial);

/// Lowest eigenvalue of H, optionally restricted to a fixed particle number.
/// Rejects non-hermitian Hamiltonians.
double ground_state_energy(const Hamiltonian& hamiltonian,
                           std::optional<std::size_t> particle_number = std::nullopt);

/// Product over affected modes of |n+_q><n-_q|, identity on the rest.
Matrix affected_operator(const CompiledTerm& ct);

/// Dense unitary of a circuit.
Matrix circuit_matrix(const CircuitSpec& circuit);

/// sum_m V_m R_m^dag D R_m / 2^dotQ, where D is the sigma_z string on the
/// affected modes and R_m the measurement rotation of family m.
Matrix pauli_reconstruction(const CompiledTerm& ct);

}  // namespace oracle
}  // namespace cvqe
