#include <gtest/gtest.h>

#include "cvqe/error.hpp"
#include "cvqe/fock.hpp"

using namespace cvqe;

namespace {

SystemIndexing hubbard() { return SystemIndexing({"0u", "0d", "1u", "1d"}); }

Subfamily sub(std::vector<std::size_t> positions, std::vector<std::uint8_t> bits) {
  return {std::move(positions), std::move(bits)};
}

}  // namespace

TEST(SystemIndexing, RejectsDuplicateAndEmptyLabels) {
  EXPECT_THROW(SystemIndexing({"a", "b", "a"}), Error);
  EXPECT_THROW(SystemIndexing({"a", ""}), Error);
  EXPECT_THROW(SystemIndexing(std::vector<std::string>{}), Error);
}

TEST(SystemIndexing, LooksUpPositions) {
  const auto idx = hubbard();
  EXPECT_EQ(idx.size(), 4u);
  EXPECT_EQ(idx.dimension(), 16u);
  EXPECT_EQ(idx.position("1u"), 2u);
  EXPECT_FALSE(idx.find("2u").has_value());
  EXPECT_THROW(idx.position("2u"), Error);
  EXPECT_EQ(idx.bit(0), 8u);
  EXPECT_EQ(idx.bit(3), 1u);
}

TEST(IndexOf, BigEndianPacking) {
  EXPECT_EQ(index_of(OccupationFamily({1, 0, 0, 1})), 9u);
  EXPECT_EQ(index_of(OccupationFamily({0, 0, 0, 0})), 0u);
  EXPECT_EQ(index_of(OccupationFamily({0, 1, 1, 0})), 6u);
  EXPECT_EQ(OccupationFamily::parse("1001").index(), 9u);
  EXPECT_EQ(family_of(9, 4).to_string(), "1001");
}

TEST(IndexOf, RejectsBadInput) {
  EXPECT_THROW(family_of(16, 4), Error);
  EXPECT_THROW(OccupationFamily::parse("10a1"), Error);
  EXPECT_THROW(OccupationFamily({0, 2}), Error);
}

TEST(IndexOf, RoundTripsEveryIndex) {
  for (std::size_t q = 1; q <= 8; ++q) {
    for (BasisIndex n = 0; n < (BasisIndex{1} << q); ++n) {
      const auto f = family_of(n, q);
      ASSERT_EQ(f.size(), q);
      ASSERT_EQ(index_of(f), n);
      ASSERT_EQ(OccupationFamily::parse(f.to_string()), f);
    }
  }
}

TEST(SplitFamily, HoppingPartition) {
  const auto idx = hubbard();
  const std::vector<std::string> affected{"0u", "1u"};
  const auto p = AffectedPartition::from_labels(idx, affected);
  auto [dot, vec] = split_family(OccupationFamily::parse("1001"), p);
  EXPECT_EQ(dot.bits, (std::vector<std::uint8_t>{1, 0}));
  EXPECT_EQ(vec.bits, (std::vector<std::uint8_t>{0, 1}));
  EXPECT_EQ(dot.positions, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(vec.positions, (std::vector<std::size_t>{1, 3}));

  std::tie(dot, vec) = split_family(OccupationFamily::parse("0010"), p);
  EXPECT_EQ(dot.bits, (std::vector<std::uint8_t>{0, 1}));
  EXPECT_EQ(vec.bits, (std::vector<std::uint8_t>{0, 0}));
}

TEST(SplitFamily, EmptyAffectedSet) {
  const AffectedPartition p(4, {});
  auto [dot, vec] = split_family(OccupationFamily::parse("1100"), p);
  EXPECT_EQ(dot.size(), 0u);
  EXPECT_EQ(vec.bits, (std::vector<std::uint8_t>{1, 1, 0, 0}));
}

TEST(MergeSubfamilies, Examples) {
  const AffectedPartition p(4, {0, 2});
  EXPECT_EQ(merge_subfamilies(sub({0, 2}, {1, 0}), sub({1, 3}, {0, 0}), p).to_string(), "1000");
  const AffectedPartition none(4, {});
  EXPECT_EQ(merge_subfamilies(sub({}, {}), sub({0, 1, 2, 3}, {0, 0, 1, 1}), none).to_string(), "0011");
  const auto n = OccupationFamily::parse("1001");
  auto [dot, vec] = split_family(n, p);
  EXPECT_EQ(merge_subfamilies(dot, vec, p), n);
}

TEST(MergeSubfamilies, RejectsLengthMismatch) {
  const AffectedPartition p(4, {0, 2});
  EXPECT_THROW(merge_subfamilies(sub({0}, {1}), sub({1, 3}, {0, 0}), p), Error);
  EXPECT_THROW(merge_subfamilies(sub({0, 2}, {1, 0}), sub({1, 3, 0}, {0, 0, 1}), p), Error);
  EXPECT_THROW(merge_subfamilies(sub({0, 1}, {1, 0}), sub({2, 3}, {0, 0}), p), Error);
}

TEST(AffectedPartition, StoresSortedComplement) {
  const AffectedPartition p(5, {3, 1});
  EXPECT_EQ(p.affected(), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(p.unaffected(), (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(p.frame_order(), (std::vector<std::size_t>{1, 3, 0, 2, 4}));
  EXPECT_EQ(p.affected_mask(), mode_bit(5, 1) | mode_bit(5, 3));
  EXPECT_THROW(AffectedPartition(3, {0, 0}), Error);
  EXPECT_THROW(AffectedPartition(3, {3}), Error);
}

TEST(AffectedPartition, MergeSplitRoundTripExhaustive) {
  for (std::size_t q = 1; q <= 6; ++q) {
    for (BasisIndex mask = 0; mask < (BasisIndex{1} << q); ++mask) {
      std::vector<std::size_t> affected;
      for (std::size_t pos = 0; pos < q; ++pos) {
        if (mask & mode_bit(q, pos)) affected.push_back(pos);
      }
      const AffectedPartition p(q, affected);
      for (BasisIndex n = 0; n < (BasisIndex{1} << q); ++n) {
        const auto f = family_of(n, q);
        auto [dot, vec] = p.split(f);
        ASSERT_EQ(dot.size(), affected.size());
        ASSERT_EQ(p.merge(dot, vec), f);
        ASSERT_EQ(p.embed(dot) | p.embed(vec), n);
      }
    }
  }
}
