#include "cvqe/circuits.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

#include "cvqe/error.hpp"

namespace cvqe {

namespace {

std::atomic<std::uint64_t> g_gate_applications{0};
std::atomic<std::uint64_t> g_circuit_executions{0};

using Matrix2 = std::array<Complex, 4>;  // row-major

Matrix2 gate_matrix(GateKind kind) {
  const double r = std::numbers::sqrt2 / 2.0;
  const Complex i{0.0, 1.0};
  switch (kind) {
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::H: return {r, r, r, -r};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::SX:
      return {Complex{0.5, 0.5}, Complex{0.5, -0.5}, Complex{0.5, -0.5}, Complex{0.5, 0.5}};
    case GateKind::RX90: return {r, -i * r, -i * r, r};
    case GateKind::RYm90: return {r, r, -r, r};
    case GateKind::CX: break;
  }
  throw Error(ErrorKind::InvalidInput, "not a one-qubit gate");
}

}  // namespace

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::Z: return "Z";
    case GateKind::SX: return "SX";
    case GateKind::RX90: return "RX90";
    case GateKind::RYm90: return "RY-90";
    case GateKind::CX: return "CX";
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view name) {
  for (auto kind : {GateKind::X, GateKind::H, GateKind::Z, GateKind::SX, GateKind::RX90,
                    GateKind::RYm90, GateKind::CX}) {
    if (name == to_string(kind)) return kind;
  }
  throw Error(ErrorKind::InvalidInput, "unknown gate '" + std::string(name) + "'");
}

void CircuitSpec::validate() const {
  if (qubits == 0 || qubits > kMaxModes) throw Error(ErrorKind::OutOfRange, "bad qubit count");
  for (const auto& g : gates) {
    if (g.target >= qubits) throw Error(ErrorKind::OutOfRange, "gate target out of range");
    if (g.kind == GateKind::CX) {
      if (!g.control) throw Error(ErrorKind::InvalidInput, "CX without control");
      if (*g.control >= qubits) throw Error(ErrorKind::OutOfRange, "gate control out of range");
      if (*g.control == g.target) throw Error(ErrorKind::InvalidInput, "control equals target");
    } else if (g.control) {
      throw Error(ErrorKind::InvalidInput, "control given for a one-qubit gate");
    }
  }
}

StateVector StateVector::vacuum(std::size_t qubits) { return basis_state(qubits, 0); }

StateVector StateVector::basis_state(std::size_t qubits, BasisIndex index) {
  if (qubits == 0 || qubits > 30) throw Error(ErrorKind::OutOfRange, "statevector qubit count out of range");
  StateVector s;
  s.qubits_ = qubits;
  s.amplitudes_.assign(std::size_t{1} << qubits, Complex{});
  s.amplitudes_.at(index) = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::size_t qubits, std::vector<Complex> amplitudes) {
  if (qubits == 0 || qubits > 30 || amplitudes.size() != (std::size_t{1} << qubits)) {
    throw Error(ErrorKind::InvalidInput, "amplitude count does not match qubit count");
  }
  StateVector s;
  s.qubits_ = qubits;
  s.amplitudes_ = std::move(amplitudes);
  return s;
}

double StateVector::norm_squared() const noexcept {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum;
}

void apply_gate_inplace(StateVector& state, const GateOp& gate) {
  const auto q = state.qubits();
  if (gate.target >= q) throw Error(ErrorKind::OutOfRange, "gate target out of range");
  auto amps = state.amplitudes();
  const BasisIndex tbit = mode_bit(q, gate.target);
  ++g_gate_applications;

  if (gate.kind == GateKind::CX) {
    if (!gate.control || *gate.control >= q || *gate.control == gate.target) {
      throw Error(ErrorKind::OutOfRange, "bad CX control");
    }
    const BasisIndex cbit = mode_bit(q, *gate.control);
    for (BasisIndex i = 0; i < amps.size(); ++i) {
      if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
    }
    return;
  }
  if (gate.control) throw Error(ErrorKind::InvalidInput, "control given for a one-qubit gate");

  const Matrix2 m = gate_matrix(gate.kind);
  for (BasisIndex i = 0; i < amps.size(); ++i) {
    if (i & tbit) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | tbit];
    amps[i] = m[0] * a0 + m[1] * a1;
    amps[i | tbit] = m[2] * a0 + m[3] * a1;
  }
}

StateVector apply_gate(StateVector state, const GateOp& gate) {
  apply_gate_inplace(state, gate);
  return state;
}

StateVector run_circuit(StateVector state, const CircuitSpec& circuit) {
  if (circuit.qubits != state.qubits()) {
    throw Error(ErrorKind::InvalidInput, "circuit and state differ in qubit count");
  }
  circuit.validate();
  for (const auto& g : circuit.gates) apply_gate_inplace(state, g);
  return state;
}

StateVector prepare_initial_state(const CircuitSpec& circuit) {
  circuit.validate();
  return run_circuit(StateVector::vacuum(circuit.qubits), circuit);
}

CircuitSpec rotation_circuit(const CompiledTerm& ct, const MeasurementFamily& m) {
  if (!ct.has_family(m)) {
    throw Error(ErrorKind::InvalidInput, "measurement family '" + to_string(m) +
                                             "' does not belong to the term");
  }
  CircuitSpec spec;
  spec.qubits = ct.partition.qubits();
  const auto& affected = ct.partition.affected();
  for (std::size_t i = 0; i < affected.size(); ++i) {
    spec.gates.push_back(
        {m[i] == PauliAxis::X ? GateKind::RYm90 : GateKind::RX90, affected[i], std::nullopt});
  }
  return spec;
}

std::vector<double> pmf(const StateVector& state) {
  std::vector<double> p;
  p.reserve(state.amplitudes().size());
  for (const auto& a : state.amplitudes()) p.push_back(std::norm(a));
  return p;
}

std::string_view to_string(SampleMode mode) { return mode == SampleMode::Shot ? "shot" : "exact"; }

SampleMode parse_sample_mode(std::string_view text) {
  if (text == "shot") return SampleMode::Shot;
  if (text == "exact") return SampleMode::Exact;
  throw Error(ErrorKind::InvalidInput, "unknown sample mode '" + std::string(text) + "'");
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view circuit_key) {
  // FNV-1a over the key, then one splitmix64 round with the master seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : circuit_key) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t z = master_seed ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SampleSet sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed,
                 std::string circuit_key) {
  if (shots == 0) throw Error(ErrorKind::InvalidInput, "shot count must be at least 1");
  const auto p = pmf(state);
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  const double total = cdf.back();
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidInput, "cannot sample a zero state");

  std::mt19937_64 rng(seed);
  std::map<BasisIndex, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    // 53 random bits -> [0, 1)
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    auto idx = static_cast<BasisIndex>(it - cdf.begin());
    if (it == cdf.end()) {
      // Rounding at the top of the CDF: take the last outcome with weight.
      idx = p.size() - 1;
      while (p[idx] == 0.0) --idx;
    }
    ++counts[idx];
  }

  SampleSet set;
  set.mode = SampleMode::Shot;
  set.qubits = state.qubits();
  set.shots = shots;
  set.circuit_key = std::move(circuit_key);
  for (const auto& [outcome, count] : counts) {
    set.entries.push_back({outcome, static_cast<double>(count)});
  }
  return set;
}

SampleSet exact_sampleset(const StateVector& state, std::string circuit_key) {
  SampleSet set;
  set.mode = SampleMode::Exact;
  set.qubits = state.qubits();
  set.shots = 1;
  set.circuit_key = std::move(circuit_key);
  const auto p = pmf(state);
  for (BasisIndex i = 0; i < p.size(); ++i) {
    if (p[i] > kExactProbabilityFloor) set.entries.push_back({i, p[i]});
  }
  return set;
}

std::uint64_t gate_application_count() noexcept { return g_gate_applications.load(); }
std::uint64_t circuit_execution_count() noexcept { return g_circuit_executions.load(); }

SampleSet execute_circuit(const StateVector& initial, const CircuitSpec& rotation, SampleMode mode,
                          std::uint64_t shots, std::uint64_t seed, std::string circuit_key) {
  ++g_circuit_executions;
  StateVector state = run_circuit(initial, rotation);
  if (mode == SampleMode::Exact) return exact_sampleset(state, std::move(circuit_key));
  return sample(state, shots, seed, std::move(circuit_key));
}

}  // namespace cvqe
