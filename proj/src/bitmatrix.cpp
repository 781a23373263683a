#include "persym/bitmatrix.hpp"

#include <bit>
#include <stdexcept>

namespace persym::gf2 {

namespace {

// Index of the lowest set bit across `words`, or npos if all zero.
constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::size_t leading_bit(std::span<const std::uint64_t> words) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    if (words[w] != 0) {
      return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words[w]));
    }
  }
  return npos;
}

void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

}  // namespace

BitVector::BitVector(std::size_t size, std::uint64_t value)
    : size_(size), words_(words_for_bits(size), 0) {
  if (size > kWordBits) {
    throw std::invalid_argument("BitVector: value constructor needs size <= 64");
  }
  if (size > 0) {
    const std::uint64_t mask =
        size == kWordBits ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1;
    if ((value & ~mask) != 0) {
      throw std::invalid_argument("BitVector: value has bits past the stated size");
    }
    words_[0] = value & mask;
  } else if (value != 0) {
    throw std::invalid_argument("BitVector: nonzero value with zero size");
  }
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_(words_for_bits(cols)), words_(rows * wpr_, 0) {
  if (cols == 0) {
    throw std::invalid_argument("BitMatrix: cols must be at least 1");
  }
}

namespace {

template <typename Range>
BitMatrix matrix_from_row_texts(const Range& rows) {
  if (std::size(rows) == 0) {
    throw std::invalid_argument("BitMatrix::from_strings: no rows");
  }
  const std::size_t cols = std::begin(rows)->size();
  BitMatrix m(std::size(rows), cols);
  std::size_t r = 0;
  for (std::string_view text : rows) {
    if (text.size() != cols) {
      throw std::invalid_argument("BitMatrix::from_strings: ragged rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (text[c] != '0' && text[c] != '1') {
        throw std::invalid_argument("BitMatrix::from_strings: expected '0'/'1'");
      }
      m.set(r, c, text[c] == '1');
    }
    ++r;
  }
  return m;
}

} // namespace

BitMatrix BitMatrix::from_strings(std::initializer_list<std::string_view> rows) {
  return matrix_from_row_texts(rows);
}

BitMatrix BitMatrix::from_strings(std::span<const std::string> rows) {
  return matrix_from_row_texts(rows);
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) t.set(c, r, true);
    }
  }
  return t;
}

std::string BitMatrix::to_string() const {
  std::string out;
  out.reserve(rows_ * (cols_ + 1));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(get(r, c) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

std::size_t rank(const BitMatrix& mat) {
  const std::size_t wpr = mat.words_per_row();
  // Scratch copy of the rows; pivots[c] indexes the kept row whose leading
  // one sits at column c.
  std::vector<std::uint64_t> scratch(mat.rows() * wpr);
  std::vector<std::size_t> pivot_of_col(mat.cols(), npos);
  std::size_t kept = 0;

  std::vector<std::uint64_t> cur(wpr);
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    auto src = mat.row(r);
    std::copy(src.begin(), src.end(), cur.begin());
    for (;;) {
      const std::size_t lead = leading_bit(cur);
      if (lead == npos) break;  // dependent row
      const std::size_t slot = pivot_of_col[lead];
      if (slot == npos) {
        std::copy(cur.begin(), cur.end(), scratch.begin() + kept * wpr);
        pivot_of_col[lead] = kept;
        ++kept;
        break;
      }
      xor_into(cur, {scratch.data() + slot * wpr, wpr});
    }
  }
  return kept;
}

}  // namespace persym::gf2
