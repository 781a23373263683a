#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace persym::gf2 {

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for_bits(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

// Packed bit string. Bit i lives in word i/64, position i%64; bits past
// size() are kept zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(words_for_bits(size), 0) {}
  // Low `size` bits of `value`; size must be at most 64.
  BitVector(std::size_t size, std::uint64_t value);

  std::size_t size() const { return size_; }

  bool get(std::size_t i) const {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }
  void set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }

  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const BitVector&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Dense matrix over the two-element field. Row bits are packed as in
// BitVector (column c in word c/64, bit c%64); padding bits past the last
// column stay zero. Dimensions are fixed at construction.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols);

  // Rows written as strings of '0'/'1', e.g. {"101", "011", "110"}.
  static BitMatrix from_strings(std::initializer_list<std::string_view> rows);
  static BitMatrix from_strings(std::span<const std::string> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t row, std::size_t col) const {
    return (words_[row * wpr_ + col / kWordBits] >> (col % kWordBits)) & 1u;
  }
  void set(std::size_t row, std::size_t col, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (col % kWordBits);
    if (value) {
      words_[row * wpr_ + col / kWordBits] |= mask;
    } else {
      words_[row * wpr_ + col / kWordBits] &= ~mask;
    }
  }

  std::span<const std::uint64_t> row(std::size_t r) const {
    return {words_.data() + r * wpr_, wpr_};
  }
  std::span<std::uint64_t> row(std::size_t r) {
    return {words_.data() + r * wpr_, wpr_};
  }

  BitMatrix transposed() const;

  std::string to_string() const;  // one row per line, '0'/'1' characters

  bool operator==(const BitMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t wpr_;
  std::vector<std::uint64_t> words_;
};

// Row rank over the two-element field; plain Gaussian elimination on a
// scratch copy. The input is not modified.
std::size_t rank(const BitMatrix& mat);

}  // namespace persym::gf2
