#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cvqe/fock.hpp"

namespace cvqe {

using Complex = std::complex<double>;

/// h * C^dagger_{n+} C_{n-}: creation operators in mode order followed by
/// annihilation operators in reversed mode order.
struct InteractionTerm {
  Complex coeff;
  OccupationFamily create;
  OccupationFamily annihilate;

  bool operator==(const InteractionTerm&) const = default;
};

/// One ladder operator of an operator string as written in an input file.
struct LadderOp {
  std::size_t mode;
  bool dagger;

  bool operator==(const LadderOp&) const = default;
};

/// Builds a canonical term from an operator string
/// c^dag_{create[0]} c^dag_{create[1]} ... c_{annihilate[0]} c_{annihilate[1]} ...
/// The coefficient absorbs the sign of reordering the lists into canonical
/// order. Repeated creation (or annihilation) of one mode is rejected.
InteractionTerm make_term(const SystemIndexing& indexing, Complex coeff,
                          std::span<const std::string> create_labels,
                          std::span<const std::string> annihilate_labels);

InteractionTerm make_term(std::size_t qubits, Complex coeff,
                          std::span<const std::size_t> create_modes,
                          std::span<const std::size_t> annihilate_modes);

/// Canonical operator string of a term, leftmost operator first.
std::vector<LadderOp> canonical_operator_string(const InteractionTerm& term);

class Hamiltonian {
 public:
  Hamiltonian() = default;
  explicit Hamiltonian(SystemIndexing indexing) : indexing_(std::move(indexing)) {}

  const SystemIndexing& indexing() const noexcept { return indexing_; }
  std::size_t qubits() const noexcept { return indexing_.size(); }
  const std::vector<InteractionTerm>& terms() const noexcept { return terms_; }

  /// Zero-coefficient terms are rejected.
  void add_term(InteractionTerm term);
  void add_term(Complex coeff, std::span<const std::string> create_labels,
                std::span<const std::string> annihilate_labels);

 private:
  SystemIndexing indexing_;
  std::vector<InteractionTerm> terms_;
};

enum class PauliAxis : std::uint8_t { X, Y };

/// m in {x,y}^dotQ, one axis per affected mode in mode order.
using MeasurementFamily = std::vector<PauliAxis>;

std::string to_string(const MeasurementFamily& m);
MeasurementFamily parse_measurement_family(std::string_view text);

/// All 2^k families in lexicographic order with x before y.
std::vector<MeasurementFamily> measurement_families(std::size_t dot_size);

struct CompiledTerm {
  InteractionTerm term;
  AffectedPartition partition;
  int sign = 1;
  Subfamily dot_plus;
  Subfamily dot_minus;
  Subfamily vec_plus;
  std::vector<MeasurementFamily> families;

  // Basis-index forms of the subfamilies above.
  BasisIndex dot_plus_bits = 0;
  BasisIndex dot_minus_bits = 0;
  BasisIndex number_mask = 0;

  std::size_t dot_size() const noexcept { return partition.dot_size(); }
  bool has_family(const MeasurementFamily& m) const;
};

CompiledTerm compile_term(const InteractionTerm& term);
std::vector<CompiledTerm> compile(const Hamiltonian& hamiltonian);

AffectedPartition affected_partition(const InteractionTerm& term);

/// Parity of reordering the canonical operator string into the affected
/// operators (creations in mode order, then annihilations in reversed mode
/// order) followed by the number-operator pairs of the unaffected modes.
int permutation_sign(const InteractionTerm& term, const AffectedPartition& partition);

/// Pauli-expansion coefficient: product over affected modes of
/// [(-1)^{n+_q} i] for every mode measured along y.
Complex expansion_coefficient(const CompiledTerm& ct, const MeasurementFamily& m);

/// Per-outcome estimator weight: sign*h/2^dotQ times the sigma_z eigenvalue
/// on the affected modes, the expansion coefficient, and the number-operator
/// mask on the unaffected modes.
Complex upsilon_coefficient(const CompiledTerm& ct, const MeasurementFamily& m,
                            const OccupationFamily& outcome);
Complex upsilon_coefficient(const CompiledTerm& ct, const MeasurementFamily& m, BasisIndex outcome);

/// (-1)^{number of occupied affected modes} for an outcome.
int affected_parity(const CompiledTerm& ct, BasisIndex outcome);
/// 1 if every number operator of the term sees an occupied mode.
int number_mask_eigenvalue(const CompiledTerm& ct, BasisIndex outcome);

/// True iff every term has a conjugate partner (h*, n-, n+) with matching
/// multiplicity. Self-conjugate terms need real coefficients.
bool validate_hermitian(const Hamiltonian& hamiltonian, double tolerance = 1e-12);

}  // namespace cvqe
