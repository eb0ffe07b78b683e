#include "cvqe/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "cvqe/error.hpp"

namespace cvqe {

namespace {

// Parity of the permutation that sorts `keys` (all distinct) ascending.
int sort_parity(std::vector<std::size_t> keys) {
  int swaps = 0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t j = i + 1; j < keys.size(); ++j) {
      if (keys[i] > keys[j]) ++swaps;
    }
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

void require_distinct(std::span<const std::size_t> modes, const char* what) {
  std::vector<std::size_t> sorted(modes.begin(), modes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::InvalidInput, std::string("repeated ") + what + " of the same mode");
  }
}

}  // namespace

InteractionTerm make_term(std::size_t qubits, Complex coeff,
                          std::span<const std::size_t> create_modes,
                          std::span<const std::size_t> annihilate_modes) {
  require_distinct(create_modes, "creation");
  require_distinct(annihilate_modes, "annihilation");

  std::vector<std::uint8_t> plus(qubits, 0), minus(qubits, 0);
  for (auto q : create_modes) {
    if (q >= qubits) throw Error(ErrorKind::OutOfRange, "creation mode out of range");
    plus[q] = 1;
  }
  for (auto q : annihilate_modes) {
    if (q >= qubits) throw Error(ErrorKind::OutOfRange, "annihilation mode out of range");
    minus[q] = 1;
  }

  // Creations sort ascending; annihilations sort descending.
  std::vector<std::size_t> ann_keys;
  for (auto q : annihilate_modes) ann_keys.push_back(qubits - 1 - q);
  int sign = sort_parity({create_modes.begin(), create_modes.end()}) * sort_parity(ann_keys);

  return InteractionTerm{coeff * static_cast<double>(sign), OccupationFamily(std::move(plus)),
                         OccupationFamily(std::move(minus))};
}

InteractionTerm make_term(const SystemIndexing& indexing, Complex coeff,
                          std::span<const std::string> create_labels,
                          std::span<const std::string> annihilate_labels) {
  std::vector<std::size_t> create, annihilate;
  for (const auto& l : create_labels) create.push_back(indexing.position(l));
  for (const auto& l : annihilate_labels) annihilate.push_back(indexing.position(l));
  return make_term(indexing.size(), coeff, create, annihilate);
}

std::vector<LadderOp> canonical_operator_string(const InteractionTerm& term) {
  std::vector<LadderOp> ops;
  const auto q = term.create.size();
  for (std::size_t pos = 0; pos < q; ++pos) {
    if (term.create[pos]) ops.push_back({pos, true});
  }
  for (std::size_t pos = q; pos-- > 0;) {
    if (term.annihilate[pos]) ops.push_back({pos, false});
  }
  return ops;
}

void Hamiltonian::add_term(InteractionTerm term) {
  if (term.create.size() != qubits() || term.annihilate.size() != qubits()) {
    throw Error(ErrorKind::InvalidInput, "term families do not match the mode count");
  }
  if (term.coeff == Complex{}) throw Error(ErrorKind::InvalidInput, "zero-coefficient term");
  terms_.push_back(std::move(term));
}

void Hamiltonian::add_term(Complex coeff, std::span<const std::string> create_labels,
                           std::span<const std::string> annihilate_labels) {
  add_term(make_term(indexing_, coeff, create_labels, annihilate_labels));
}

std::string to_string(const MeasurementFamily& m) {
  std::string out;
  for (auto axis : m) out.push_back(axis == PauliAxis::X ? 'x' : 'y');
  return out;
}

MeasurementFamily parse_measurement_family(std::string_view text) {
  MeasurementFamily m;
  for (char c : text) {
    if (c == 'x') m.push_back(PauliAxis::X);
    else if (c == 'y') m.push_back(PauliAxis::Y);
    else throw Error(ErrorKind::InvalidInput, "bad measurement family '" + std::string(text) + "'");
  }
  return m;
}

std::vector<MeasurementFamily> measurement_families(std::size_t dot_size) {
  if (dot_size >= 32) throw Error(ErrorKind::OutOfRange, "too many affected modes");
  std::vector<MeasurementFamily> out;
  const std::size_t count = std::size_t{1} << dot_size;
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    MeasurementFamily m(dot_size);
    for (std::size_t i = 0; i < dot_size; ++i) {
      m[i] = (code >> (dot_size - 1 - i)) & 1 ? PauliAxis::Y : PauliAxis::X;
    }
    out.push_back(std::move(m));
  }
  return out;
}

bool CompiledTerm::has_family(const MeasurementFamily& m) const {
  return m.size() == dot_size();
}

AffectedPartition affected_partition(const InteractionTerm& term) {
  std::vector<std::size_t> affected;
  for (std::size_t q = 0; q < term.create.size(); ++q) {
    if (term.create[q] != term.annihilate[q]) affected.push_back(q);
  }
  return AffectedPartition(term.create.size(), std::move(affected));
}

int permutation_sign(const InteractionTerm& term, const AffectedPartition& partition) {
  const auto source = canonical_operator_string(term);

  std::vector<LadderOp> target;
  for (auto q : partition.affected()) {
    if (term.create[q]) target.push_back({q, true});
  }
  const auto& aff = partition.affected();
  for (auto it = aff.rbegin(); it != aff.rend(); ++it) {
    if (term.annihilate[*it]) target.push_back({*it, false});
  }
  for (auto q : partition.unaffected()) {
    if (term.create[q]) {
      target.push_back({q, true});
      target.push_back({q, false});
    }
  }

  // Position of every target operator in the source string; the sign is the
  // parity of that permutation.
  std::vector<std::size_t> where;
  where.reserve(target.size());
  for (const auto& op : target) {
    auto it = std::find(source.begin(), source.end(), op);
    where.push_back(static_cast<std::size_t>(it - source.begin()));
  }
  return sort_parity(std::move(where));
}

CompiledTerm compile_term(const InteractionTerm& term) {
  if (term.create.size() != term.annihilate.size()) {
    throw Error(ErrorKind::InvalidInput, "creation and annihilation families differ in length");
  }
  CompiledTerm ct;
  ct.term = term;
  ct.partition = affected_partition(term);
  ct.sign = permutation_sign(term, ct.partition);
  auto [dot_plus, vec_plus] = ct.partition.split(term.create);
  auto [dot_minus, vec_minus] = ct.partition.split(term.annihilate);
  ct.dot_plus = std::move(dot_plus);
  ct.dot_minus = std::move(dot_minus);
  ct.vec_plus = std::move(vec_plus);
  ct.families = measurement_families(ct.partition.dot_size());
  ct.dot_plus_bits = ct.partition.embed(ct.dot_plus);
  ct.dot_minus_bits = ct.partition.embed(ct.dot_minus);
  ct.number_mask = ct.partition.embed(ct.vec_plus);
  return ct;
}

std::vector<CompiledTerm> compile(const Hamiltonian& hamiltonian) {
  std::vector<CompiledTerm> out;
  out.reserve(hamiltonian.terms().size());
  for (const auto& term : hamiltonian.terms()) out.push_back(compile_term(term));
  return out;
}

Complex expansion_coefficient(const CompiledTerm& ct, const MeasurementFamily& m) {
  if (!ct.has_family(m)) {
    throw Error(ErrorKind::InvalidInput, "measurement family '" + to_string(m) +
                                             "' does not belong to the term");
  }
  Complex v{1.0, 0.0};
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == PauliAxis::Y) v *= ct.dot_plus.bits[i] ? Complex{0.0, -1.0} : Complex{0.0, 1.0};
  }
  return v;
}

int affected_parity(const CompiledTerm& ct, BasisIndex outcome) {
  return (std::popcount(outcome & ct.partition.affected_mask()) % 2 == 0) ? 1 : -1;
}

int number_mask_eigenvalue(const CompiledTerm& ct, BasisIndex outcome) {
  return (outcome & ct.number_mask) == ct.number_mask ? 1 : 0;
}

Complex upsilon_coefficient(const CompiledTerm& ct, const MeasurementFamily& m, BasisIndex outcome) {
  const Complex v = expansion_coefficient(ct, m);
  if (!number_mask_eigenvalue(ct, outcome)) return {};
  const double scale = static_cast<double>(ct.sign) / std::ldexp(1.0, static_cast<int>(ct.dot_size()));
  return ct.term.coeff * scale * static_cast<double>(affected_parity(ct, outcome)) * v;
}

Complex upsilon_coefficient(const CompiledTerm& ct, const MeasurementFamily& m,
                            const OccupationFamily& outcome) {
  if (outcome.size() != ct.partition.qubits()) {
    throw Error(ErrorKind::InvalidInput, "outcome length does not match the term");
  }
  return upsilon_coefficient(ct, m, outcome.index());
}

bool validate_hermitian(const Hamiltonian& hamiltonian, double tolerance) {
  const auto& terms = hamiltonian.terms();
  std::vector<bool> used(terms.size(), false);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (used[i]) continue;
    const auto& a = terms[i];
    if (a.create == a.annihilate) {
      if (std::abs(a.coeff.imag()) > tolerance) return false;
      used[i] = true;
      continue;
    }
    bool found = false;
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (used[j] || j == i) continue;
      const auto& b = terms[j];
      if (b.create == a.annihilate && b.annihilate == a.create &&
          std::abs(b.coeff - std::conj(a.coeff)) <= tolerance) {
        used[i] = used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace cvqe
