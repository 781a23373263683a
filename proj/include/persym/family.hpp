#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "persym/bitmatrix.hpp"
#include "persym/shape.hpp"

namespace persym {

// Builds the delta x k matrix of a family member.  Block j's row i is the
// width-k window over that block's parameter run starting at index i, so
// entry (i, c) of block j is parameter bit block_offset(j) + (i + c - 2).
gf2::BitMatrix materialize(const ParameterVector& pv);
gf2::BitMatrix materialize(const Shape& shape, const gf2::BitVector& bits);

// Inverse of materialize.  Throws std::invalid_argument if `mat` has the
// wrong dimensions or is not constant along the window diagonals.
gf2::BitVector extract_parameters(const gf2::BitMatrix& mat, const Shape& shape);

// The stacked-window shape with delta rows split over m blocks as evenly as
// possible: writing delta = i + s*m with 0 <= i < m, the first m-i blocks get
// height s and the last i get height s+1.
Shape example_shape(std::size_t m, std::size_t delta, std::size_t k);

// The k x delta matrix whose entry (r, c) is bit (r-1)*m + (c-1) of `bits`,
// i.e. rows are consecutive length-delta windows advancing m positions each
// step.  `bits` must have exactly delta + (k-1)*m bits.
gf2::BitMatrix build_example_matrix(std::size_t m, std::size_t delta,
                                    std::size_t k, const gf2::BitVector& bits);

// Transposes a matrix from build_example_matrix and permutes the rows into
// stacked-window block order.  Transpose row c (1-based) is a window over the
// stride-m subsequence starting at position ((c-1) mod m) + 1; grouping rows
// by subsequence and ordering the groups by height (ascending, ties by start
// position) yields a member of example_shape(m, delta, k)'s family.  Throws
// std::invalid_argument on dimension mismatch.
gf2::BitMatrix rearrange_transpose(const gf2::BitMatrix& mat, std::size_t m);

// The bit permutation underlying rearrange_transpose: entry p of the result
// is the index into the raw example bits holding parameter bit p of the
// rearranged member, so extract_parameters(rearrange_transpose(...)) equals
// raw_bits composed with this map.
std::vector<std::size_t> example_parameter_map(std::size_t m, std::size_t delta,
                                               std::size_t k);

} // namespace persym
