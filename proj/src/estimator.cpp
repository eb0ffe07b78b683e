#include "cvqe/estimator.hpp"

#include <cmath>
#include <cstdio>

#include "cvqe/error.hpp"

namespace cvqe {

const PlannedCircuit* MeasurementPlan::find(std::string_view key) const {
  for (const auto& c : circuits) {
    if (c.key == key) return &c;
  }
  return nullptr;
}

std::string circuit_key(const SystemIndexing& indexing, std::span<const std::size_t> affected,
                        const MeasurementFamily& m) {
  if (affected.empty()) return MeasurementPlan::kBaselineKey;
  std::string key;
  for (std::size_t i = 0; i < affected.size(); ++i) {
    if (i) key.push_back(',');
    key += indexing.label(affected[i]);
  }
  key.push_back(':');
  key += to_string(m);
  return key;
}

MeasurementPlan build_plan(const SystemIndexing& indexing, std::span<const CompiledTerm> terms) {
  MeasurementPlan plan;
  plan.qubits = indexing.size();

  PlannedCircuit baseline;
  baseline.key = plan.baseline_key;
  baseline.rotation.qubits = plan.qubits;
  plan.circuits.push_back(std::move(baseline));

  std::map<std::string, std::size_t> index_of_key{{plan.baseline_key, 0}};
  for (std::size_t l = 0; l < terms.size(); ++l) {
    const auto& ct = terms[l];
    if (ct.partition.qubits() != plan.qubits) {
      throw Error(ErrorKind::InvalidInput, "term does not match the mode count");
    }
    for (std::size_t f = 0; f < ct.families.size(); ++f) {
      const auto& m = ct.families[f];
      const auto key = circuit_key(indexing, ct.partition.affected(), m);
      auto [it, inserted] = index_of_key.try_emplace(key, plan.circuits.size());
      if (inserted) {
        PlannedCircuit c;
        c.key = key;
        c.affected = ct.partition.affected();
        c.family = m;
        c.rotation = rotation_circuit(ct, m);
        plan.circuits.push_back(std::move(c));
      }
      plan.circuits[it->second].uses.emplace_back(l, f);
    }
  }
  return plan;
}

namespace {

class Fnv1a {
 public:
  void add(std::string_view s) {
    for (unsigned char c : s) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
    hash_ ^= 0xff;  // field separator
    hash_ *= 0x100000001b3ULL;
  }
  void add(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    add(std::string_view(buf));
  }
  std::string hex() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
    return buf;
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::string plan_fingerprint(const SystemIndexing& indexing, std::span<const CompiledTerm> terms,
                             const MeasurementPlan& plan) {
  Fnv1a h;
  for (const auto& label : indexing.labels()) h.add(label);
  for (const auto& ct : terms) {
    h.add(ct.term.coeff.real());
    h.add(ct.term.coeff.imag());
    h.add(ct.term.create.to_string());
    h.add(ct.term.annihilate.to_string());
    h.add(ct.sign > 0 ? "+" : "-");
  }
  for (const auto& c : plan.circuits) h.add(c.key);
  return h.hex();
}

const SampleSet& SampleArchive::at(const std::string& key) const {
  auto it = sets.find(key);
  if (it == sets.end()) {
    throw Error(ErrorKind::ArchiveMismatch, "archive has no samples for circuit '" + key + "'");
  }
  return it->second;
}

SampleArchive collect_samples(const MeasurementPlan& plan, const StateVector& initial, SampleMode mode,
                              std::uint64_t shots, std::uint64_t master_seed) {
  if (mode == SampleMode::Shot && shots == 0) {
    throw Error(ErrorKind::InvalidInput, "shot mode needs at least one shot");
  }
  SampleArchive archive;
  archive.mode = mode;
  archive.shots = mode == SampleMode::Shot ? shots : 1;
  archive.master_seed = master_seed;
  for (const auto& c : plan.circuits) {
    archive.sets.emplace(c.key, execute_circuit(initial, c.rotation, mode, archive.shots,
                                                derive_seed(master_seed, c.key), c.key));
  }
  return archive;
}

std::size_t CascadeEstimator::slot_for(BasisIndex n) {
  auto [it, inserted] = slot_of_.try_emplace(n, families_.size());
  if (inserted) families_.push_back(n);
  return it->second;
}

CascadeEstimator::CascadeEstimator(std::span<const CompiledTerm> terms, const MeasurementPlan& plan,
                                   const SampleArchive& archive, AnsatzSpec ansatz)
    : ansatz_(std::move(ansatz)) {
  if (!ansatz_.evaluate || !ansatz_.gradient) {
    throw Error(ErrorKind::InvalidInput, "ansatz has no evaluator");
  }
  if (ansatz_.qubits != 0 && ansatz_.qubits != plan.qubits) {
    throw Error(ErrorKind::InvalidInput, "ansatz '" + ansatz_.name + "' expects " +
                                             std::to_string(ansatz_.qubits) + " modes");
  }
  for (const auto& c : plan.circuits) {
    const auto& set = archive.at(c.key);
    if (set.mode != archive.mode) throw Error(ErrorKind::ArchiveMismatch, "mixed sample modes");
    if (set.qubits != plan.qubits) throw Error(ErrorKind::ArchiveMismatch, "sample width mismatch");
    if (set.mode == SampleMode::Shot && set.shots != archive.shots) {
      throw Error(ErrorKind::ArchiveMismatch, "shot counts differ between circuits");
    }
  }

  // Lambda: baseline outcomes weighted by count / S.
  {
    const auto& base = archive.at(plan.baseline_key);
    std::map<BasisIndex, double> folded;
    for (const auto& e : base.entries) folded[e.outcome] += e.weight / base.total();
    for (const auto& [n, w] : folded) lambda_terms_.push_back({slot_for(n), w});
  }

  // Upsilon: every (term, family, outcome) triple contributes
  // weight/S * upsilon * phase(dot_plus + vec_n, dot_minus + vec_n).
  std::map<std::pair<BasisIndex, BasisIndex>, Complex> folded;
  for (const auto& c : plan.circuits) {
    const auto& set = archive.at(c.key);
    for (auto [l, f] : c.uses) {
      const auto& ct = terms[l];
      const auto& m = ct.families[f];
      const BasisIndex keep = ~ct.partition.affected_mask();
      for (const auto& e : set.entries) {
        const Complex u = upsilon_coefficient(ct, m, e.outcome);
        if (u == Complex{}) continue;
        const BasisIndex plus = ct.dot_plus_bits | (e.outcome & keep);
        const BasisIndex minus = ct.dot_minus_bits | (e.outcome & keep);
        folded[{plus, minus}] += u * (e.weight / set.total());
      }
    }
  }
  for (const auto& [key, coeff] : folded) {
    if (coeff == Complex{}) continue;
    upsilon_terms_.push_back({slot_for(key.first), slot_for(key.second), coeff});
  }
}

std::vector<LambdaValue> CascadeEstimator::lambdas(std::span<const double> theta) const {
  ansatz_.check_domain(theta);
  std::vector<LambdaValue> out;
  out.reserve(families_.size());
  for (auto n : families_) out.push_back(ansatz_.lambda(theta, n));
  return out;
}

Evaluation CascadeEstimator::compute(std::span<const double> theta, bool with_gradient) const {
  const auto lam = lambdas(theta);
  const std::size_t d = ansatz_.dimension;
  const Complex i{0.0, 1.0};

  std::vector<std::vector<Complex>> grads;
  if (with_gradient) {
    grads.resize(families_.size());
    for (std::size_t k = 0; k < families_.size(); ++k) {
      if (!lam[k].is_excluded()) grads[k] = ansatz_.lambda_gradient(theta, families_[k]);
    }
  }

  Evaluation ev;
  ev.grad_lambda.assign(d, 0.0);
  ev.grad_upsilon.assign(d, Complex{});

  for (const auto& t : lambda_terms_) {
    const auto& l = lam[t.slot];
    if (l.is_excluded()) continue;
    const double im = l.value().imag();
    const double w = t.weight * std::exp(-2.0 * im);
    ev.lambda += w;
    if (with_gradient) {
      for (std::size_t j = 0; j < d; ++j) ev.grad_lambda[j] += w * (-2.0 * grads[t.slot][j].imag());
    }
  }

  for (const auto& t : upsilon_terms_) {
    const auto& lp = lam[t.plus_slot];
    const auto& lm = lam[t.minus_slot];
    if (lp.is_excluded() || lm.is_excluded()) continue;
    const Complex value = t.coeff * std::exp(-i * std::conj(lp.value()) + i * lm.value());
    ev.upsilon += value;
    if (with_gradient) {
      const auto& gp = grads[t.plus_slot];
      const auto& gm = grads[t.minus_slot];
      for (std::size_t j = 0; j < d; ++j) {
        ev.grad_upsilon[j] += value * (-i * std::conj(gp[j]) + i * gm[j]);
      }
    }
  }

  if (!(ev.lambda > 0.0)) {
    throw Error(ErrorKind::DegenerateAnsatz,
                "Lambda vanished: every sampled family is excluded by the ansatz");
  }
  ev.energy = ev.upsilon.real() / ev.lambda;
  if (with_gradient) {
    ev.grad_energy.resize(d);
    const double lam2 = ev.lambda * ev.lambda;
    for (std::size_t j = 0; j < d; ++j) {
      ev.grad_energy[j] =
          (ev.lambda * ev.grad_upsilon[j].real() - ev.upsilon.real() * ev.grad_lambda[j]) / lam2;
    }
  }
  return ev;
}

Evaluation CascadeEstimator::evaluate(std::span<const double> theta, bool with_gradient) const {
  return compute(theta, with_gradient);
}

double CascadeEstimator::lambda(std::span<const double> theta) const {
  const auto lam = lambdas(theta);
  double sum = 0.0;
  for (const auto& t : lambda_terms_) {
    if (!lam[t.slot].is_excluded()) sum += t.weight * std::exp(-2.0 * lam[t.slot].value().imag());
  }
  if (!(sum > 0.0)) {
    throw Error(ErrorKind::DegenerateAnsatz,
                "Lambda vanished: every sampled family is excluded by the ansatz");
  }
  return sum;
}

Complex CascadeEstimator::upsilon(std::span<const double> theta) const {
  const auto lam = lambdas(theta);
  const Complex i{0.0, 1.0};
  Complex sum;
  for (const auto& t : upsilon_terms_) {
    const auto& lp = lam[t.plus_slot];
    const auto& lm = lam[t.minus_slot];
    if (lp.is_excluded() || lm.is_excluded()) continue;
    sum += t.coeff * std::exp(-i * std::conj(lp.value()) + i * lm.value());
  }
  return sum;
}

double CascadeEstimator::energy(std::span<const double> theta) const {
  return compute(theta, false).energy;
}

std::vector<double> CascadeEstimator::grad_lambda(std::span<const double> theta) const {
  return compute(theta, true).grad_lambda;
}

std::vector<Complex> CascadeEstimator::grad_upsilon(std::span<const double> theta) const {
  return compute(theta, true).grad_upsilon;
}

std::vector<double> CascadeEstimator::grad_energy(std::span<const double> theta) const {
  return compute(theta, true).grad_energy;
}

}  // namespace cvqe
