#include "persym/family.hpp"

#include <stdexcept>
#include <string>

namespace persym {

using gf2::BitMatrix;
using gf2::BitVector;

gf2::BitMatrix materialize(const Shape& shape, const BitVector& bits) {
  if (bits.size() != shape.free_bits()) {
    throw std::invalid_argument("materialize: got " +
                                std::to_string(bits.size()) + " bits, shape " +
                                shape.to_string() + " has " +
                                std::to_string(shape.free_bits()));
  }
  BitMatrix mat(shape.total_rows(), shape.cols());
  std::size_t row = 0;
  for (std::size_t j = 1; j <= shape.block_count(); ++j) {
    const std::size_t off = shape.block_offset(j);
    for (std::size_t i = 1; i <= shape.height(j); ++i, ++row) {
      for (std::size_t c = 1; c <= shape.cols(); ++c) {
        if (bits.get(off + i + c - 2)) mat.set(row, c - 1, true);
      }
    }
  }
  return mat;
}

gf2::BitMatrix materialize(const ParameterVector& pv) {
  return materialize(pv.shape, pv.bits);
}

gf2::BitVector extract_parameters(const BitMatrix& mat, const Shape& shape) {
  if (mat.rows() != shape.total_rows() || mat.cols() != shape.cols()) {
    throw std::invalid_argument("extract_parameters: matrix is " +
                                std::to_string(mat.rows()) + "x" +
                                std::to_string(mat.cols()) + ", shape wants " +
                                std::to_string(shape.total_rows()) + "x" +
                                std::to_string(shape.cols()));
  }
  BitVector bits(shape.free_bits());
  std::vector<bool> seen(shape.free_bits(), false);
  std::size_t row = 0;
  for (std::size_t j = 1; j <= shape.block_count(); ++j) {
    const std::size_t off = shape.block_offset(j);
    for (std::size_t i = 1; i <= shape.height(j); ++i, ++row) {
      for (std::size_t c = 1; c <= shape.cols(); ++c) {
        const std::size_t idx = off + i + c - 2;
        const bool value = mat.get(row, c - 1);
        if (!seen[idx]) {
          seen[idx] = true;
          bits.set(idx, value);
        } else if (bits.get(idx) != value) {
          throw std::invalid_argument(
              "extract_parameters: entries disagree along a window diagonal");
        }
      }
    }
  }
  return bits;
}

namespace {

void check_example_dims(std::size_t m, std::size_t delta, std::size_t k) {
  if (m < 1 || m > delta || delta > k) {
    throw std::invalid_argument("need 1 <= m <= delta <= k, got m=" +
                                std::to_string(m) + " delta=" +
                                std::to_string(delta) + " k=" +
                                std::to_string(k));
  }
}

// Stride classes ordered so block heights come out ascending: delta = i0+s*m
// leaves classes i0+1..m with s rows and classes 1..i0 with s+1 rows.
std::vector<std::size_t> class_order(std::size_t m, std::size_t delta) {
  const std::size_t i0 = delta % m;
  std::vector<std::size_t> order;
  order.reserve(m);
  for (std::size_t b = i0 + 1; b <= m; ++b) order.push_back(b);
  for (std::size_t b = 1; b <= i0; ++b) order.push_back(b);
  return order;
}

} // namespace

Shape example_shape(std::size_t m, std::size_t delta, std::size_t k) {
  check_example_dims(m, delta, k);
  const std::size_t i0 = delta % m;
  const std::size_t s = delta / m;
  std::vector<std::size_t> heights;
  heights.reserve(m);
  for (std::size_t j = 0; j < m - i0; ++j) heights.push_back(s);
  for (std::size_t j = 0; j < i0; ++j) heights.push_back(s + 1);
  return Shape(std::move(heights), k);
}

gf2::BitMatrix build_example_matrix(std::size_t m, std::size_t delta,
                                    std::size_t k, const BitVector& bits) {
  check_example_dims(m, delta, k);
  const std::size_t want = delta + (k - 1) * m;
  if (bits.size() != want) {
    throw std::invalid_argument("build_example_matrix: need " +
                                std::to_string(want) + " bits, got " +
                                std::to_string(bits.size()));
  }
  BitMatrix mat(k, delta);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < delta; ++c) {
      if (bits.get(r * m + c)) mat.set(r, c, true);
    }
  }
  return mat;
}

gf2::BitMatrix rearrange_transpose(const BitMatrix& mat, std::size_t m) {
  const std::size_t k = mat.rows();
  const std::size_t delta = mat.cols();
  check_example_dims(m, delta, k);
  BitMatrix out(delta, k);
  std::size_t row = 0;
  for (std::size_t b : class_order(m, delta)) {
    for (std::size_t c = b; c <= delta; c += m, ++row) {
      for (std::size_t r = 0; r < k; ++r) {
        if (mat.get(r, c - 1)) out.set(row, r, true);
      }
    }
  }
  return out;
}

std::vector<std::size_t> example_parameter_map(std::size_t m, std::size_t delta,
                                               std::size_t k) {
  check_example_dims(m, delta, k);
  std::vector<std::size_t> map;
  map.reserve(delta + (k - 1) * m);
  for (std::size_t b : class_order(m, delta)) {
    // Class b holds the subsequence at raw positions b-1, b-1+m, b-1+2m, ...
    std::size_t rows = delta / m + (b <= delta % m ? 1 : 0);
    for (std::size_t u = 0; u < rows + k - 1; ++u) {
      map.push_back(b - 1 + u * m);
    }
  }
  return map;
}

} // namespace persym
