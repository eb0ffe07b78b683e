#include "cvqe/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <bit>

#include "cvqe/error.hpp"

namespace cvqe::oracle {

namespace {

void require_dense(std::size_t qubits) {
  if (qubits > kMaxDenseModes) {
    throw Error(ErrorKind::OutOfRange, "oracle: dense matrices limited to " +
                                           std::to_string(kMaxDenseModes) + " modes");
  }
}

}  // namespace

std::optional<std::pair<BasisIndex, int>> apply_operator_string(std::span<const LadderOp> ops,
                                                                const AffectedPartition& partition,
                                                                BasisIndex state) {
  const std::size_t qubits = partition.qubits();
  const auto frame = partition.frame_order();
  // preceding[q]: bits of the modes that come before q in the frame
  std::vector<BasisIndex> preceding(qubits, 0);
  BasisIndex acc = 0;
  for (auto q : frame) {
    preceding[q] = acc;
    acc |= mode_bit(qubits, q);
  }

  int sign = 1;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (it->mode >= qubits) throw Error(ErrorKind::OutOfRange, "oracle: mode out of range");
    const BasisIndex bit = mode_bit(qubits, it->mode);
    const bool occupied = state & bit;
    if (occupied == it->dagger) return std::nullopt;
    if (std::popcount(state & preceding[it->mode]) & 1) sign = -sign;
    state ^= bit;
  }
  return std::pair{state, sign};
}

std::vector<Complex> apply_hamiltonian(const Hamiltonian& hamiltonian, std::span<const Complex> psi) {
  const std::size_t qubits = hamiltonian.qubits();
  const BasisIndex dim = BasisIndex{1} << qubits;
  if (psi.size() != dim) throw Error(ErrorKind::InvalidInput, "oracle: state size mismatch");
  std::vector<Complex> out(dim);
  for (const auto& term : hamiltonian.terms()) {
    const auto ops = canonical_operator_string(term);
    const auto partition = affected_partition(term);
    for (BasisIndex n = 0; n < dim; ++n) {
      if (psi[n] == Complex{}) continue;
      if (auto r = apply_operator_string(ops, partition, n)) {
        out[r->first] += term.coeff * static_cast<double>(r->second) * psi[n];
      }
    }
  }
  return out;
}

Matrix dense_term(const InteractionTerm& term) {
  const std::size_t qubits = term.create.size();
  require_dense(qubits);
  const auto dim = static_cast<Eigen::Index>(BasisIndex{1} << qubits);
  Matrix m = Matrix::Zero(dim, dim);
  const auto ops = canonical_operator_string(term);
  const auto partition = affected_partition(term);
  for (Eigen::Index n = 0; n < dim; ++n) {
    if (auto r = apply_operator_string(ops, partition, static_cast<BasisIndex>(n))) {
      m(static_cast<Eigen::Index>(r->first), n) += term.coeff * static_cast<double>(r->second);
    }
  }
  return m;
}

Matrix dense_hamiltonian(const Hamiltonian& hamiltonian) {
  require_dense(hamiltonian.qubits());
  const auto dim = static_cast<Eigen::Index>(hamiltonian.indexing().dimension());
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& term : hamiltonian.terms()) m += dense_term(term);
  return m;
}

std::vector<Complex> ansatz_state(const AnsatzSpec& ansatz, std::span<const double> theta,
                                  const StateVector& initial) {
  ansatz.check_domain(theta);
  std::vector<Complex> psi(initial.amplitudes().begin(), initial.amplitudes().end());
  for (BasisIndex n = 0; n < psi.size(); ++n) {
    psi[n] *= ansatz.lambda(theta, n).amplitude_factor();
  }
  return psi;
}

ExactExpectation exact_ansatz_expectation(const Hamiltonian& hamiltonian, const AnsatzSpec& ansatz,
                                          std::span<const double> theta, const StateVector& initial) {
  if (initial.qubits() != hamiltonian.qubits()) {
    throw Error(ErrorKind::InvalidInput, "oracle: initial state width differs from the Hamiltonian");
  }
  const auto psi = ansatz_state(ansatz, theta, initial);
  const auto hpsi = apply_hamiltonian(hamiltonian, psi);
  ExactExpectation out;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    out.lambda += std::norm(psi[n]);
    out.upsilon += std::conj(psi[n]) * hpsi[n];
  }
  if (!(out.lambda > 0.0)) throw Error(ErrorKind::DegenerateAnsatz, "oracle: ansatz state vanishes");
  out.energy = out.upsilon.real() / out.lambda;
  return out;
}

double exact_ansatz_energy(const Hamiltonian& hamiltonian, const AnsatzSpec& ansatz,
                           std::span<const double> theta, const StateVector& initial) {
  return exact_ansatz_expectation(hamiltonian, ansatz, theta, initial).energy;
}

double ground_state_energy(const Hamiltonian& hamiltonian, std::optional<std::size_t> particle_number) {
  if (!validate_hermitian(hamiltonian)) {
    throw Error(ErrorKind::InvalidInput, "oracle: Hamiltonian is not hermitian");
  }
  require_dense(hamiltonian.qubits());
  const BasisIndex dim = hamiltonian.indexing().dimension();

  std::vector<BasisIndex> sector;
  for (BasisIndex n = 0; n < dim; ++n) {
    if (!particle_number || static_cast<std::size_t>(std::popcount(n)) == *particle_number) {
      sector.push_back(n);
    }
  }
  if (sector.empty()) throw Error(ErrorKind::InvalidInput, "oracle: empty particle-number sector");

  std::vector<Eigen::Index> row(dim, -1);
  for (std::size_t k = 0; k < sector.size(); ++k) row[sector[k]] = static_cast<Eigen::Index>(k);

  const auto size = static_cast<Eigen::Index>(sector.size());
  Matrix m = Matrix::Zero(size, size);
  for (const auto& term : hamiltonian.terms()) {
    const auto ops = canonical_operator_string(term);
    const auto partition = affected_partition(term);
    for (Eigen::Index k = 0; k < size; ++k) {
      auto r = apply_operator_string(ops, partition, sector[static_cast<std::size_t>(k)]);
      if (!r) continue;
      const auto target = row[r->first];
      if (target < 0) {
        throw Error(ErrorKind::InvalidInput, "oracle: Hamiltonian does not conserve particle number");
      }
      m(target, k) += term.coeff * static_cast<double>(r->second);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Domain, "oracle: eigensolver failed");
  return solver.eigenvalues()(0);
}

Matrix affected_operator(const CompiledTerm& ct) {
  const std::size_t qubits = ct.partition.qubits();
  require_dense(qubits);
  const BasisIndex mask = ct.partition.affected_mask();
  const auto dim = static_cast<Eigen::Index>(BasisIndex{1} << qubits);
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto n = static_cast<BasisIndex>(col);
    if ((n & mask) != ct.dot_minus_bits) continue;
    m(static_cast<Eigen::Index>((n & ~mask) | ct.dot_plus_bits), col) = 1.0;
  }
  return m;
}

Matrix circuit_matrix(const CircuitSpec& circuit) {
  require_dense(circuit.qubits);
  const auto dim = static_cast<Eigen::Index>(BasisIndex{1} << circuit.qubits);
  Matrix m(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto out = run_circuit(StateVector::basis_state(circuit.qubits, static_cast<BasisIndex>(col)), circuit);
    for (Eigen::Index row = 0; row < dim; ++row) m(row, col) = out[static_cast<BasisIndex>(row)];
  }
  return m;
}

Matrix pauli_reconstruction(const CompiledTerm& ct) {
  const std::size_t qubits = ct.partition.qubits();
  require_dense(qubits);
  const BasisIndex mask = ct.partition.affected_mask();
  const auto dim = static_cast<Eigen::Index>(BasisIndex{1} << qubits);
  Vector d(dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    d(n) = (std::popcount(static_cast<BasisIndex>(n) & mask) & 1) ? -1.0 : 1.0;
  }
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& m : ct.families) {
    const Matrix r = circuit_matrix(rotation_circuit(ct, m));
    sum += expansion_coefficient(ct, m) * (r.adjoint() * d.asDiagonal() * r);
  }
  return sum / static_cast<double>(BasisIndex{1} << ct.dot_size());
}

}  // namespace cvqe::oracle
