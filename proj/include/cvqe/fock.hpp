#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cvqe {

/// Integer label of a computational-basis / Fock state. The mode at position
/// 0 is the most significant bit so that "1001" reads as index 9.
using BasisIndex = std::uint64_t;

inline constexpr std::size_t kMaxModes = 62;

/// Totally ordered list of one-fermion mode labels.
class SystemIndexing {
 public:
  SystemIndexing() = default;
  explicit SystemIndexing(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  BasisIndex dimension() const noexcept { return BasisIndex{1} << labels_.size(); }

  const std::string& label(std::size_t position) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::optional<std::size_t> find(std::string_view label) const;
  std::size_t position(std::string_view label) const;

  /// Bit of the basis index that carries the occupation of `position`.
  BasisIndex bit(std::size_t position) const noexcept {
    return BasisIndex{1} << (labels_.size() - 1 - position);
  }

  bool operator==(const SystemIndexing&) const = default;

 private:
  std::vector<std::string> labels_;
};

inline BasisIndex mode_bit(std::size_t qubits, std::size_t position) noexcept {
  return BasisIndex{1} << (qubits - 1 - position);
}

/// A family n in {0,1}^Q.
class OccupationFamily {
 public:
  OccupationFamily() = default;
  explicit OccupationFamily(std::vector<std::uint8_t> bits);

  static OccupationFamily from_index(BasisIndex index, std::size_t qubits);
  /// Parses a bit string such as "1001".
  static OccupationFamily parse(std::string_view bits);

  std::size_t size() const noexcept { return bits_.size(); }
  int operator[](std::size_t position) const { return bits_.at(position); }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  BasisIndex index() const noexcept;
  int particle_count() const noexcept;
  std::string to_string() const;

  auto operator<=>(const OccupationFamily&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

BasisIndex index_of(const OccupationFamily& family);
OccupationFamily family_of(BasisIndex index, std::size_t qubits);

/// Occupations restricted to an ordered subset of modes. Positions refer to
/// the owning SystemIndexing.
struct Subfamily {
  std::vector<std::size_t> positions;
  std::vector<std::uint8_t> bits;

  std::size_t size() const noexcept { return bits.size(); }
  std::string to_string() const;
  bool operator==(const Subfamily&) const = default;
};

/// Split of the modes into the affected list (dot) and the unaffected list
/// (vec). Both lists keep the relative order of the full indexing.
class AffectedPartition {
 public:
  AffectedPartition() = default;
  /// `affected` may be given in any order; it is stored sorted.
  AffectedPartition(std::size_t qubits, std::vector<std::size_t> affected);

  static AffectedPartition from_labels(const SystemIndexing& indexing,
                                       std::span<const std::string> affected);

  std::size_t qubits() const noexcept { return qubits_; }
  std::size_t dot_size() const noexcept { return affected_.size(); }
  const std::vector<std::size_t>& affected() const noexcept { return affected_; }
  const std::vector<std::size_t>& unaffected() const noexcept { return unaffected_; }

  /// Basis-index bits of the affected modes.
  BasisIndex affected_mask() const noexcept { return affected_mask_; }

  /// Affected modes followed by unaffected modes.
  std::vector<std::size_t> frame_order() const;

  std::pair<Subfamily, Subfamily> split(const OccupationFamily& family) const;
  OccupationFamily merge(const Subfamily& dot, const Subfamily& vec) const;

  /// Basis-index bits of a subfamily laid over the full register.
  BasisIndex embed(const Subfamily& sub) const;

  bool operator==(const AffectedPartition&) const = default;

 private:
  std::size_t qubits_ = 0;
  std::vector<std::size_t> affected_;
  std::vector<std::size_t> unaffected_;
  BasisIndex affected_mask_ = 0;
};

std::pair<Subfamily, Subfamily> split_family(const OccupationFamily& family,
                                             const AffectedPartition& partition);
OccupationFamily merge_subfamilies(const Subfamily& dot, const Subfamily& vec,
                                   const AffectedPartition& partition);

}  // namespace cvqe
