#include <doctest.h>

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "persym/family.hpp"
#include "persym/shape.hpp"

using persym::ParameterVector;
using persym::Shape;
using persym::gf2::BitMatrix;
using persym::gf2::BitVector;

namespace {

BitVector bits_of(std::size_t size, std::uint64_t value) {
  return BitVector(size, value);
}

// Stacks windows for an *ordered* height list, bypassing Shape's height
// canonicalization.  Used to probe block-order invariance independently.
BitMatrix stack_ordered(const std::vector<std::size_t>& heights, std::size_t k,
                        const BitVector& bits) {
  std::size_t delta = 0;
  for (auto s : heights) delta += s;
  BitMatrix m(delta, k);
  std::size_t offset = 0;
  std::size_t row = 0;
  for (auto s : heights) {
    for (std::size_t i = 0; i < s; ++i, ++row) {
      for (std::size_t c = 0; c < k; ++c) {
        m.set(row, c, bits.get(offset + i + c));
      }
    }
    offset += s + k - 1;
  }
  return m;
}

std::vector<std::size_t> rank_tally_ordered(const std::vector<std::size_t>& heights,
                                            std::size_t k) {
  std::size_t delta = 0;
  std::size_t free_bits = 0;
  for (auto s : heights) {
    delta += s;
    free_bits += s + k - 1;
  }
  std::vector<std::size_t> tally(delta + 1, 0);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << free_bits); ++v) {
    ++tally[persym::gf2::rank(stack_ordered(heights, k, bits_of(free_bits, v)))];
  }
  return tally;
}

}  // namespace

TEST_CASE("materialize lays out each block as sliding windows") {
  // Single block, height 2: rows are consecutive width-3 windows.
  const Shape single({2}, 3);
  const auto m = persym::materialize(single, bits_of(4, 0b0110));
  CHECK(m == BitMatrix::from_strings({"011", "110"}));

  // Two blocks: the second block's run starts after the first's s+k-1 bits.
  const Shape two({1, 2}, 3);
  // bits 0..2 feed block 1, bits 3..6 feed block 2 (string is bit 0 first).
  const auto t = persym::materialize(two, bits_of(7, 0b0101101));
  CHECK(t == BitMatrix::from_strings({"101", "101", "010"}));

  const ParameterVector pv(two, 0b0101101);
  CHECK(persym::materialize(pv) == t);

  CHECK_THROWS_AS(persym::materialize(two, BitVector(5)), std::invalid_argument);
}

TEST_CASE("every entry reads the predicted parameter bit") {
  const std::vector<Shape> shapes = {
      Shape({1}, 1), Shape({1, 1}, 2), Shape({2}, 3),   Shape({1, 2}, 3),
      Shape({3}, 3), Shape({2, 2}, 4), Shape({1, 1, 1}, 3), Shape({4}, 4),
  };
  for (const auto& shape : shapes) {
    const std::size_t f = shape.free_bits();
    REQUIRE(f <= 10);
    // Offsets recomputed here from scratch.
    std::vector<std::size_t> offset(shape.block_count() + 1, 0);
    for (std::size_t j = 1; j <= shape.block_count(); ++j) {
      offset[j] = offset[j - 1] + shape.height(j) + shape.cols() - 1;
    }
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << f); ++v) {
      const auto m = persym::materialize(shape, bits_of(f, v));
      std::size_t row = 0;
      for (std::size_t j = 1; j <= shape.block_count(); ++j) {
        for (std::size_t i = 1; i <= shape.height(j); ++i, ++row) {
          for (std::size_t c = 1; c <= shape.cols(); ++c) {
            const std::size_t bit = offset[j - 1] + (i + c - 2);
            if (m.get(row, c - 1) != ((v >> bit) & 1)) {
              CAPTURE(shape.to_string());
              CAPTURE(v);
              REQUIRE(m.get(row, c - 1) == static_cast<bool>((v >> bit) & 1));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("extract_parameters inverts materialize") {
  for (const auto& shape : {Shape({1, 2}, 3), Shape({2, 2}, 4), Shape({1, 1, 1}, 4)}) {
    const std::size_t f = shape.free_bits();
    REQUIRE(f <= 14);
    std::set<std::string> images;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << f); ++v) {
      const auto m = persym::materialize(shape, bits_of(f, v));
      CHECK(persym::extract_parameters(m, shape) == bits_of(f, v));
      images.insert(m.to_string());
    }
    // Injective: distinct parameters give distinct matrices.
    CHECK(images.size() == (std::uint64_t{1} << f));
  }
}

TEST_CASE("extract_parameters rejects non-members") {
  const Shape shape({2}, 3);
  auto m = persym::materialize(shape, bits_of(4, 0));
  m.set(1, 0, true);  // breaks constancy of the window diagonal
  CHECK_THROWS_AS(persym::extract_parameters(m, shape), std::invalid_argument);

  CHECK_THROWS_AS(persym::extract_parameters(BitMatrix(2, 4), shape),
                  std::invalid_argument);
  CHECK_THROWS_AS(persym::extract_parameters(BitMatrix(3, 3), shape),
                  std::invalid_argument);
}

TEST_CASE("example_shape splits rows as evenly as possible") {
  CHECK(persym::example_shape(3, 8, 10) == Shape({2, 3, 3}, 10));
  CHECK(persym::example_shape(1, 5, 7) == Shape({5}, 7));
  CHECK(persym::example_shape(4, 7, 9) == Shape({1, 2, 2, 2}, 9));
  CHECK(persym::example_shape(2, 4, 5) == Shape({2, 2}, 5));
  CHECK(persym::example_shape(3, 3, 3) == Shape({1, 1, 1}, 3));
  CHECK(persym::example_shape(2, 5, 6) == Shape({2, 3}, 6));

  CHECK_THROWS_AS(persym::example_shape(0, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS(persym::example_shape(3, 2, 5), std::invalid_argument);
  CHECK_THROWS_AS(persym::example_shape(2, 6, 5), std::invalid_argument);
}

TEST_CASE("build_example_matrix reads stride-m windows") {
  // Row r of the k x delta matrix starts at raw bit (r-1)*m.
  const std::size_t m = 3, delta = 8, k = 10;
  const std::size_t raw = delta + (k - 1) * m;  // 35
  for (std::size_t p = 0; p < raw; ++p) {
    BitVector bits(raw);
    bits.set(p, true);
    const auto mat = persym::build_example_matrix(m, delta, k, bits);
    REQUIRE(mat.rows() == k);
    REQUIRE(mat.cols() == delta);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < delta; ++c) {
        CHECK(mat.get(r, c) == (r * m + c == p));
      }
    }
  }
  CHECK_THROWS_AS(persym::build_example_matrix(2, 4, 5, BitVector(9)),
                  std::invalid_argument);
}

TEST_CASE("rearrange_transpose preserves rank") {
  std::mt19937_64 rng(7);
  for (auto [m, delta, k] : {std::array<std::size_t, 3>{2, 4, 5},
                             std::array<std::size_t, 3>{3, 8, 10},
                             std::array<std::size_t, 3>{4, 7, 9},
                             std::array<std::size_t, 3>{1, 5, 7}}) {
    const std::size_t raw = delta + (k - 1) * m;
    for (int trial = 0; trial < 40; ++trial) {
      BitVector bits(raw);
      for (std::size_t i = 0; i < raw; ++i) bits.set(i, rng() & 1);
      const auto mat = persym::build_example_matrix(m, delta, k, bits);
      const auto member = persym::rearrange_transpose(mat, m);
      CHECK(persym::gf2::rank(member) == persym::gf2::rank(mat));
      CHECK(member.rows() == delta);
      CHECK(member.cols() == k);
    }
  }
  CHECK_THROWS_AS(persym::rearrange_transpose(BitMatrix(3, 5), 2),
                  std::invalid_argument);
}

TEST_CASE("rearranged transposes are family members, bijectively") {
  const std::size_t m = 2, delta = 4, k = 5;
  const std::size_t raw = delta + (k - 1) * m;  // 12
  const Shape target = persym::example_shape(m, delta, k);
  REQUIRE(target.free_bits() == raw);
  const auto map = persym::example_parameter_map(m, delta, k);
  REQUIRE(map.size() == raw);

  std::vector<bool> seen(std::size_t{1} << raw, false);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << raw); ++v) {
    const BitVector bits(raw, v);
    const auto member =
        persym::rearrange_transpose(persym::build_example_matrix(m, delta, k, bits), m);
    const BitVector params = persym::extract_parameters(member, target);
    std::uint64_t packed = 0;
    for (std::size_t i = 0; i < raw; ++i) {
      if (params.get(i)) packed |= std::uint64_t{1} << i;
      CHECK(params.get(i) == bits.get(map[i]));
    }
    REQUIRE_FALSE(seen[packed]);
    seen[packed] = true;
  }
}

TEST_CASE("example_parameter_map is a permutation") {
  for (auto [m, delta, k] : {std::array<std::size_t, 3>{2, 4, 5},
                             std::array<std::size_t, 3>{3, 8, 10},
                             std::array<std::size_t, 3>{4, 7, 9}}) {
    auto map = persym::example_parameter_map(m, delta, k);
    CHECK(map.size() == delta + (k - 1) * m);
    std::sort(map.begin(), map.end());
    for (std::size_t i = 0; i < map.size(); ++i) CHECK(map[i] == i);
  }
}

TEST_CASE("rank census does not depend on block order") {
  // Stacking blocks in either order gives the same tally; the library's
  // canonical (sorted) order is just one of them.
  const auto a = rank_tally_ordered({1, 2}, 4);
  const auto b = rank_tally_ordered({2, 1}, 4);
  CHECK(a == b);

  const auto c = rank_tally_ordered({2, 3}, 5);
  const auto d = rank_tally_ordered({3, 2}, 5);
  CHECK(c == d);

  // And matches materialize on the canonical shape.
  const Shape canon({1, 2}, 4);
  std::vector<std::size_t> via_library(canon.total_rows() + 1, 0);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << canon.free_bits()); ++v) {
    ++via_library[persym::gf2::rank(
        persym::materialize(canon, bits_of(canon.free_bits(), v)))];
  }
  CHECK(a == via_library);
}
