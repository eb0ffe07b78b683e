#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvqe/fock.hpp"
#include "cvqe/hamiltonian.hpp"

namespace cvqe {

enum class GateKind : std::uint8_t {
  X,
  H,
  Z,
  SX,     // sqrt(X)
  RX90,   // (I - i sigma_x)/sqrt2, rotation about x by +pi/2
  RYm90,  // (I + i sigma_y)/sqrt2, rotation about y by -pi/2
  CX,
};

std::string_view to_string(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

struct GateOp {
  GateKind kind;
  std::size_t target;
  std::optional<std::size_t> control;

  bool operator==(const GateOp&) const = default;
};

struct CircuitSpec {
  std::size_t qubits = 0;
  std::vector<GateOp> gates;

  void validate() const;
  bool operator==(const CircuitSpec&) const = default;
};

/// Amplitudes indexed by BasisIndex (mode 0 is the most significant bit).
class StateVector {
 public:
  StateVector() = default;
  static StateVector vacuum(std::size_t qubits);
  static StateVector basis_state(std::size_t qubits, BasisIndex index);
  static StateVector from_amplitudes(std::size_t qubits, std::vector<Complex> amplitudes);

  std::size_t qubits() const noexcept { return qubits_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<Complex> amplitudes() noexcept { return amplitudes_; }
  Complex operator[](BasisIndex index) const { return amplitudes_.at(index); }

  double norm_squared() const noexcept;

 private:
  std::size_t qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

void apply_gate_inplace(StateVector& state, const GateOp& gate);
StateVector apply_gate(StateVector state, const GateOp& gate);
StateVector run_circuit(StateVector state, const CircuitSpec& circuit);

/// U|0...0>.
StateVector prepare_initial_state(const CircuitSpec& circuit);

/// Basis change that diagonalizes the Pauli string selected by m: RYm90 on
/// affected modes measured along x, RX90 on those measured along y.
CircuitSpec rotation_circuit(const CompiledTerm& ct, const MeasurementFamily& m);

std::vector<double> pmf(const StateVector& state);

enum class SampleMode : std::uint8_t { Shot, Exact };

std::string_view to_string(SampleMode mode);
SampleMode parse_sample_mode(std::string_view text);

struct SampleEntry {
  BasisIndex outcome;
  double weight;

  bool operator==(const SampleEntry&) const = default;
};

/// Measurement record of one circuit. SHOT weights are counts summing to the
/// shot count; EXACT weights are probabilities summing to one.
struct SampleSet {
  SampleMode mode = SampleMode::Exact;
  std::size_t qubits = 0;
  std::uint64_t shots = 1;
  std::string circuit_key;
  std::vector<SampleEntry> entries;

  /// Normalizer of the sample mean: the shot count, or 1 for EXACT.
  double total() const noexcept {
    return mode == SampleMode::Shot ? static_cast<double>(shots) : 1.0;
  }

  bool operator==(const SampleSet&) const = default;
};

inline constexpr double kExactProbabilityFloor = 1e-15;

/// Per-circuit RNG seed derived from the master seed and the circuit key.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view circuit_key);

SampleSet sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed,
                 std::string circuit_key = {});
SampleSet exact_sampleset(const StateVector& state, std::string circuit_key = {});

/// Number of gate applications since process start; estimation code never
/// moves it.
std::uint64_t gate_application_count() noexcept;
/// Number of prepared-and-measured circuits since process start.
std::uint64_t circuit_execution_count() noexcept;

/// Prepares U|0>, applies the rotation, and measures it once (SHOT or EXACT).
SampleSet execute_circuit(const StateVector& initial, const CircuitSpec& rotation, SampleMode mode,
                          std::uint64_t shots, std::uint64_t seed, std::string circuit_key);

}  // namespace cvqe
