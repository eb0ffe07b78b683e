#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace fixtures {

using cvqe::Complex;

cvqe::SystemIndexing hubbard_indexing() { return cvqe::SystemIndexing({"0u", "0d", "1u", "1d"}); }

cvqe::Hamiltonian hubbard(double t, double u) {
  cvqe::Hamiltonian h(hubbard_indexing());
  using L = std::vector<std::string>;
  h.add_term(t, L{"0u"}, L{"1u"});
  h.add_term(t, L{"1u"}, L{"0u"});
  h.add_term(t, L{"0d"}, L{"1d"});
  h.add_term(t, L{"1d"}, L{"0d"});
  h.add_term(u, L{"0u", "0d"}, L{"0d", "0u"});
  h.add_term(u, L{"1u", "1d"}, L{"1d", "1u"});
  return h;
}

cvqe::CircuitSpec uniform_circuit(std::size_t qubits) {
  cvqe::CircuitSpec c{qubits, {}};
  for (std::size_t q = 0; q < qubits; ++q) c.gates.push_back({cvqe::GateKind::H, q, std::nullopt});
  return c;
}

double closed_lambda(double lat) { return 1.0 / (4.0 * std::cos(lat)); }

double closed_upsilon(double lat, double lon, double t, double u) {
  return t / 2.0 * std::cos(lon) + u / 8.0 / std::tan(std::numbers::pi / 4 + lat / 2.0);
}

double closed_energy(double lat, double lon, double t, double u) {
  return 2.0 * t * std::cos(lat) * std::cos(lon) + u / 2.0 * (1.0 - std::sin(lat));
}

double singlet_ground_energy(double t, double u) { return u / 2.0 - std::sqrt(u * u / 4.0 + 4.0 * t * t); }

Bundle make_bundle(const cvqe::Hamiltonian& h, const cvqe::CircuitSpec& initial, cvqe::AnsatzSpec ansatz,
                   cvqe::SampleMode mode, std::uint64_t shots, std::uint64_t seed) {
  auto terms = cvqe::compile(h);
  auto plan = cvqe::build_plan(h.indexing(), terms);
  auto archive = cvqe::collect_samples(plan, cvqe::prepare_initial_state(initial), mode, shots, seed);
  cvqe::CascadeEstimator est(terms, plan, archive, std::move(ansatz));
  return {std::move(terms), std::move(plan), std::move(archive), std::move(est)};
}

namespace {

Complex random_coeff(std::mt19937_64& rng, bool real) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return real ? Complex{u(rng), 0.0} : Complex{u(rng), u(rng)};
}

std::vector<std::size_t> pick_distinct(std::size_t qubits, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::size_t> all(qubits);
  for (std::size_t q = 0; q < qubits; ++q) all[q] = q;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  return all;
}

}  // namespace

cvqe::Hamiltonian random_hamiltonian(std::size_t qubits, std::mt19937_64& rng) {
  std::vector<std::string> labels;
  for (std::size_t q = 0; q < qubits; ++q) labels.push_back("m" + std::to_string(q));
  cvqe::Hamiltonian h{cvqe::SystemIndexing(labels)};

  // Operator strings as (create, annihilate) lists in written order. The
  // conjugate of c+_a c+_b c_c c_d is c+_d c+_c c_b c_a.
  auto add_pair = [&](std::vector<std::size_t> create, std::vector<std::size_t> annihilate, Complex coeff) {
    auto term = cvqe::make_term(qubits, coeff, create, annihilate);
    const bool self_adjoint = term.create == term.annihilate;
    if (self_adjoint) coeff = coeff.real();
    h.add_term(cvqe::make_term(qubits, coeff, create, annihilate));
    if (!self_adjoint) {
      std::vector<std::size_t> cc(annihilate.rbegin(), annihilate.rend());
      std::vector<std::size_t> ca(create.rbegin(), create.rend());
      h.add_term(cvqe::make_term(qubits, std::conj(coeff), cc, ca));
    }
  };

  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<std::size_t> count(2, 6);
  const std::size_t n_terms = count(rng);
  for (std::size_t i = 0; i < n_terms; ++i) {
    switch (qubits >= 4 ? kind(rng) : kind(rng) % 3) {
      case 0: {  // number operator
        const auto m = pick_distinct(qubits, 1, rng);
        add_pair(m, m, random_coeff(rng, true));
        break;
      }
      case 1: {  // hopping
        const auto m = pick_distinct(qubits, 2, rng);
        add_pair({m[0]}, {m[1]}, random_coeff(rng, false));
        break;
      }
      case 2: {  // density-density, or hopping dressed by a number operator
        if (qubits >= 3 && std::bernoulli_distribution(0.5)(rng)) {
          const auto m = pick_distinct(qubits, 3, rng);
          std::vector<std::size_t> create{m[0], m[2]}, annihilate{m[2], m[1]};
          std::shuffle(create.begin(), create.end(), rng);
          std::shuffle(annihilate.begin(), annihilate.end(), rng);
          add_pair(create, annihilate, random_coeff(rng, false));
        } else {
          const auto m = pick_distinct(qubits, 2, rng);
          add_pair({m[0], m[1]}, {m[1], m[0]}, random_coeff(rng, true));
        }
        break;
      }
      default: {  // two-body with four distinct modes
        auto m = pick_distinct(qubits, 4, rng);
        add_pair({m[0], m[1]}, {m[2], m[3]}, random_coeff(rng, false));
        break;
      }
    }
  }
  return h;
}

cvqe::CircuitSpec random_circuit(std::size_t qubits, std::size_t gates, std::mt19937_64& rng) {
  static constexpr cvqe::GateKind kinds[] = {cvqe::GateKind::X,    cvqe::GateKind::H,     cvqe::GateKind::Z,
                                             cvqe::GateKind::SX,   cvqe::GateKind::RX90, cvqe::GateKind::RYm90,
                                             cvqe::GateKind::CX};
  std::uniform_int_distribution<std::size_t> pick_kind(0, std::size(kinds) - 1);
  std::uniform_int_distribution<std::size_t> pick_qubit(0, qubits - 1);
  cvqe::CircuitSpec c{qubits, {}};
  // Start from a full superposition so every family carries weight.
  for (std::size_t q = 0; q < qubits; ++q) c.gates.push_back({cvqe::GateKind::H, q, std::nullopt});
  for (std::size_t i = 0; i < gates; ++i) {
    const auto kind = kinds[pick_kind(rng)];
    const auto target = pick_qubit(rng);
    if (kind == cvqe::GateKind::CX) {
      if (qubits < 2) continue;
      auto control = pick_qubit(rng);
      while (control == target) control = pick_qubit(rng);
      c.gates.push_back({kind, target, control});
    } else {
      c.gates.push_back({kind, target, std::nullopt});
    }
  }
  return c;
}

std::vector<double> random_vector(std::size_t n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

cvqe::AnsatzSpec random_linear_ansatz(std::size_t qubits, std::size_t dimension, std::mt19937_64& rng,
                                      double exclude_fraction) {
  const std::size_t dim = std::size_t{1} << qubits;
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::bernoulli_distribution excluded(exclude_fraction);
  std::vector<std::vector<Complex>> a(dim, std::vector<Complex>(dimension));
  std::vector<bool> ex(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    ex[n] = excluded(rng);
    for (auto& x : a[n]) x = {u(rng), u(rng)};
  }
  ex[0] = false;

  cvqe::AnsatzSpec spec;
  spec.name = "random_linear";
  spec.dimension = dimension;
  spec.qubits = qubits;
  spec.domain.assign(dimension, cvqe::CoordinateDomain{});
  for (std::size_t j = 0; j < dimension; ++j) spec.parameter_names.push_back("p" + std::to_string(j));
  spec.evaluate = [a, ex](std::span<const double> theta, cvqe::BasisIndex n) {
    if (ex[n]) return cvqe::LambdaValue::excluded();
    Complex sum;
    for (std::size_t j = 0; j < theta.size(); ++j) sum += theta[j] * a[n][j];
    return cvqe::LambdaValue::of(sum);
  };
  spec.gradient = [a](std::span<const double>, cvqe::BasisIndex n, std::span<Complex> out) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = a[n][j];
  };
  return spec;
}

}  // namespace fixtures
