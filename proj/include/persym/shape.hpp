#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "persym/bitmatrix.hpp"
#include "persym/exact.hpp"

namespace persym {

// Structural case of a shape, decided on the canonical (ascending) heights.
enum class FamilyCase {
  kUnitRows,         // every block has height 1
  kSingleBlock,      // one block, height >= 2
  kDoubleBlock,      // two blocks, both heights >= 2
  kTripleBlock,      // three blocks, all heights >= 2
  kUnitPrefixTriple, // m >= 4, heights (1,...,1,a,b,c) with a,b,c >= 2
  kGeneral,          // anything else
};

std::string_view family_case_name(FamilyCase c);

// A stacked-block shape: m window blocks of heights s_1 <= ... <= s_m over a
// shared column count k.  Heights are stored canonically (sorted ascending);
// the constructor accepts any order.  Requires 1 <= m <= sum(s_j) <= k.
class Shape {
 public:
  Shape(std::vector<std::size_t> heights, std::size_t cols);

  std::size_t block_count() const { return heights_.size(); }
  std::size_t height(std::size_t j) const { return heights_.at(j - 1); } // 1-based
  const std::vector<std::size_t>& heights() const { return heights_; }
  // Heights in the order given at construction, kept for display only.
  const std::vector<std::size_t>& display_heights() const { return display_; }
  std::size_t cols() const { return cols_; }

  // delta = total row count across blocks.
  std::size_t total_rows() const { return delta_; }

  // Number of free parameter bits: sum_j (s_j + k - 1).
  std::size_t free_bits() const { return free_bits_; }

  // Offset of block j's parameter run in the packed bit layout (1-based j).
  std::size_t block_offset(std::size_t j) const;

  FamilyCase family_case() const;

  std::string to_string() const;      // canonical order, e.g. "[2,3,3]x10"
  std::string display_string() const; // construction order
  static Shape parse(std::string_view text);

  bool operator==(const Shape& o) const {
    return heights_ == o.heights_ && cols_ == o.cols_;
  }
  bool operator!=(const Shape& o) const { return !(*this == o); }

 private:
  std::vector<std::size_t> heights_; // ascending
  std::vector<std::size_t> display_; // as constructed
  std::vector<std::size_t> offsets_; // offsets_[j-1] = start of block j's bits
  std::size_t cols_ = 0;
  std::size_t delta_ = 0;
  std::size_t free_bits_ = 0;
};

// Summary card for a shape: the quantities every report wants together.
struct FamilyCard {
  Shape shape;
  std::size_t m;
  std::size_t delta;
  std::size_t k;
  std::size_t free_bits;
  ExactCount total_matrices; // 2^free_bits
  FamilyCase family_case;
};

FamilyCard family_card(const Shape& shape);

// One point of a family: a shape plus an assignment of its parameter bits.
// Bit i of `bits` is parameter bit i in the packed block-major layout.
struct ParameterVector {
  Shape shape;
  gf2::BitVector bits;

  ParameterVector(Shape s, gf2::BitVector b);
  // Convenience for small shapes: bit i of `value` is parameter bit i.
  ParameterVector(Shape s, std::uint64_t value);
};

} // namespace persym
