#include "cvqe/fock.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "cvqe/error.hpp"

namespace cvqe {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid_input";
    case ErrorKind::OutOfRange: return "out_of_range";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::DegenerateAnsatz: return "degenerate_ansatz";
    case ErrorKind::ArchiveMismatch: return "archive_mismatch";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

SystemIndexing::SystemIndexing(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorKind::InvalidInput, "mode list is empty");
  if (labels_.size() > kMaxModes) {
    throw Error(ErrorKind::OutOfRange, "too many modes: " + std::to_string(labels_.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : labels_) {
    if (label.empty()) throw Error(ErrorKind::InvalidInput, "empty mode label");
    if (!seen.insert(label).second) {
      throw Error(ErrorKind::InvalidInput, "duplicate mode label '" + label + "'");
    }
  }
}

const std::string& SystemIndexing::label(std::size_t position) const {
  if (position >= labels_.size()) {
    throw Error(ErrorKind::OutOfRange, "mode position " + std::to_string(position) + " out of range");
  }
  return labels_[position];
}

std::optional<std::size_t> SystemIndexing::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t SystemIndexing::position(std::string_view label) const {
  if (auto pos = find(label)) return *pos;
  throw Error(ErrorKind::InvalidInput, "unknown mode label '" + std::string(label) + "'");
}

OccupationFamily::OccupationFamily(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.size() > kMaxModes) throw Error(ErrorKind::OutOfRange, "family too long");
  for (auto b : bits_) {
    if (b > 1) throw Error(ErrorKind::InvalidInput, "occupation numbers must be 0 or 1");
  }
}

OccupationFamily OccupationFamily::from_index(BasisIndex index, std::size_t qubits) {
  if (qubits > kMaxModes) throw Error(ErrorKind::OutOfRange, "too many modes");
  if (qubits < 64 && index >= (BasisIndex{1} << qubits)) {
    throw Error(ErrorKind::OutOfRange,
                "basis index " + std::to_string(index) + " out of range for Q=" + std::to_string(qubits));
  }
  std::vector<std::uint8_t> bits(qubits);
  for (std::size_t pos = 0; pos < qubits; ++pos) {
    bits[pos] = (index & mode_bit(qubits, pos)) ? 1 : 0;
  }
  return OccupationFamily(std::move(bits));
}

OccupationFamily OccupationFamily::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorKind::InvalidInput, "bad occupation string '" + std::string(text) + "'");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return OccupationFamily(std::move(bits));
}

BasisIndex OccupationFamily::index() const noexcept {
  BasisIndex index = 0;
  for (auto b : bits_) index = (index << 1) | b;
  return index;
}

int OccupationFamily::particle_count() const noexcept {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string OccupationFamily::to_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(static_cast<char>('0' + b));
  return out;
}

BasisIndex index_of(const OccupationFamily& family) { return family.index(); }

OccupationFamily family_of(BasisIndex index, std::size_t qubits) {
  return OccupationFamily::from_index(index, qubits);
}

std::string Subfamily::to_string() const {
  std::string out;
  for (auto b : bits) out.push_back(static_cast<char>('0' + b));
  return out;
}

AffectedPartition::AffectedPartition(std::size_t qubits, std::vector<std::size_t> affected)
    : qubits_(qubits), affected_(std::move(affected)) {
  if (qubits_ > kMaxModes) throw Error(ErrorKind::OutOfRange, "too many modes");
  std::sort(affected_.begin(), affected_.end());
  if (std::adjacent_find(affected_.begin(), affected_.end()) != affected_.end()) {
    throw Error(ErrorKind::InvalidInput, "affected mode listed twice");
  }
  for (auto pos : affected_) {
    if (pos >= qubits_) throw Error(ErrorKind::OutOfRange, "affected mode out of range");
    affected_mask_ |= mode_bit(qubits_, pos);
  }
  for (std::size_t pos = 0; pos < qubits_; ++pos) {
    if (!std::binary_search(affected_.begin(), affected_.end(), pos)) unaffected_.push_back(pos);
  }
}

AffectedPartition AffectedPartition::from_labels(const SystemIndexing& indexing,
                                                 std::span<const std::string> affected) {
  std::vector<std::size_t> positions;
  for (const auto& label : affected) positions.push_back(indexing.position(label));
  return AffectedPartition(indexing.size(), std::move(positions));
}

std::vector<std::size_t> AffectedPartition::frame_order() const {
  std::vector<std::size_t> order = affected_;
  order.insert(order.end(), unaffected_.begin(), unaffected_.end());
  return order;
}

namespace {

Subfamily restrict(const OccupationFamily& family, const std::vector<std::size_t>& positions) {
  Subfamily sub;
  sub.positions = positions;
  sub.bits.reserve(positions.size());
  for (auto pos : positions) sub.bits.push_back(family.bits()[pos]);
  return sub;
}

}  // namespace

std::pair<Subfamily, Subfamily> AffectedPartition::split(const OccupationFamily& family) const {
  if (family.size() != qubits_) {
    throw Error(ErrorKind::InvalidInput, "family length does not match partition");
  }
  return {restrict(family, affected_), restrict(family, unaffected_)};
}

OccupationFamily AffectedPartition::merge(const Subfamily& dot, const Subfamily& vec) const {
  if (dot.size() != affected_.size() || vec.size() != unaffected_.size()) {
    throw Error(ErrorKind::InvalidInput, "subfamily lengths do not match partition");
  }
  if ((!dot.positions.empty() && dot.positions != affected_) ||
      (!vec.positions.empty() && vec.positions != unaffected_)) {
    throw Error(ErrorKind::InvalidInput, "subfamily modes do not match partition");
  }
  std::vector<std::uint8_t> bits(qubits_);
  for (std::size_t i = 0; i < affected_.size(); ++i) bits[affected_[i]] = dot.bits[i];
  for (std::size_t i = 0; i < unaffected_.size(); ++i) bits[unaffected_[i]] = vec.bits[i];
  return OccupationFamily(std::move(bits));
}

BasisIndex AffectedPartition::embed(const Subfamily& sub) const {
  if (sub.positions.size() != sub.bits.size()) {
    throw Error(ErrorKind::InvalidInput, "subfamily without mode positions");
  }
  BasisIndex out = 0;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (sub.bits[i]) out |= mode_bit(qubits_, sub.positions[i]);
  }
  return out;
}

std::pair<Subfamily, Subfamily> split_family(const OccupationFamily& family,
                                             const AffectedPartition& partition) {
  return partition.split(family);
}

OccupationFamily merge_subfamilies(const Subfamily& dot, const Subfamily& vec,
                                   const AffectedPartition& partition) {
  return partition.merge(dot, vec);
}

}  // namespace cvqe
