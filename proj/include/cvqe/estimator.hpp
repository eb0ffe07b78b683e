#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cvqe/ansatz.hpp"
#include "cvqe/circuits.hpp"
#include "cvqe/hamiltonian.hpp"

namespace cvqe {

/// One distinct rotated-state measurement shared by every (term, family)
/// pair with the same affected modes and the same axes.
struct PlannedCircuit {
  std::string key;
  std::vector<std::size_t> affected;
  MeasurementFamily family;
  CircuitSpec rotation;
  /// (term index, index into that term's measurement families).
  std::vector<std::pair<std::size_t, std::size_t>> uses;
};

struct MeasurementPlan {
  static constexpr const char* kBaselineKey = "baseline";

  std::size_t qubits = 0;
  std::string baseline_key = kBaselineKey;
  /// circuits.front() is the un-rotated baseline measurement.
  std::vector<PlannedCircuit> circuits;

  const PlannedCircuit* find(std::string_view key) const;
  std::size_t size() const noexcept { return circuits.size(); }
};

std::string circuit_key(const SystemIndexing& indexing, std::span<const std::size_t> affected,
                        const MeasurementFamily& m);

MeasurementPlan build_plan(const SystemIndexing& indexing, std::span<const CompiledTerm> terms);

/// Stable fingerprint of the compiled terms and the plan. Archives carry it
/// so samples are never combined with a different Hamiltonian.
std::string plan_fingerprint(const SystemIndexing& indexing, std::span<const CompiledTerm> terms,
                             const MeasurementPlan& plan);

struct SampleArchive {
  SampleMode mode = SampleMode::Exact;
  std::uint64_t shots = 1;
  std::uint64_t master_seed = 0;
  std::string plan_hash;
  std::vector<std::string> modes;
  std::map<std::string, SampleSet> sets;

  const SampleSet& at(const std::string& key) const;
};

/// Executes every planned circuit exactly once on the given initial state.
SampleArchive collect_samples(const MeasurementPlan& plan, const StateVector& initial, SampleMode mode,
                              std::uint64_t shots, std::uint64_t master_seed);

struct Evaluation {
  double lambda = 0.0;
  Complex upsilon;
  double energy = 0.0;
  std::vector<double> grad_lambda;
  std::vector<Complex> grad_upsilon;
  std::vector<double> grad_energy;
};

/// Classical side of the algorithm: turns one fixed sample archive into
/// Lambda, Upsilon, E and their gradients at any theta. Construction folds
/// the theta-independent coefficients; evaluation only calls the ansatz.
class CascadeEstimator {
 public:
  CascadeEstimator(std::span<const CompiledTerm> terms, const MeasurementPlan& plan,
                   const SampleArchive& archive, AnsatzSpec ansatz);

  const AnsatzSpec& ansatz() const noexcept { return ansatz_; }
  std::size_t dimension() const noexcept { return ansatz_.dimension; }

  double lambda(std::span<const double> theta) const;
  Complex upsilon(std::span<const double> theta) const;
  /// Re(Upsilon) / Lambda. Throws DegenerateAnsatz when Lambda is zero.
  double energy(std::span<const double> theta) const;

  std::vector<double> grad_lambda(std::span<const double> theta) const;
  std::vector<Complex> grad_upsilon(std::span<const double> theta) const;
  std::vector<double> grad_energy(std::span<const double> theta) const;

  Evaluation evaluate(std::span<const double> theta, bool with_gradient = true) const;

  std::size_t lambda_term_count() const noexcept { return lambda_terms_.size(); }
  std::size_t upsilon_term_count() const noexcept { return upsilon_terms_.size(); }

 private:
  struct LambdaTerm {
    std::size_t slot;
    double weight;
  };
  struct UpsilonTerm {
    std::size_t plus_slot;
    std::size_t minus_slot;
    Complex coeff;
  };

  std::size_t slot_for(BasisIndex n);
  std::vector<LambdaValue> lambdas(std::span<const double> theta) const;
  Evaluation compute(std::span<const double> theta, bool with_gradient) const;

  AnsatzSpec ansatz_;
  std::vector<BasisIndex> families_;
  std::map<BasisIndex, std::size_t> slot_of_;
  std::vector<LambdaTerm> lambda_terms_;
  std::vector<UpsilonTerm> upsilon_terms_;
};

}  // namespace cvqe
