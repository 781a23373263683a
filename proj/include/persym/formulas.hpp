#pragma once

#include <cstddef>

#include "persym/exact.hpp"
#include "persym/shape.hpp"

namespace persym {

// Conjectured number of full-rank members of a family:
//   2^(delta-m) * prod_{j=1..m} (2^k - 2^(delta-j)).
// The equivalent product form 2^((1+m)delta - m(m+3)/2) * prod (2^(k-delta+j) - 1)
// is evaluated alongside and the two results are checked against each other.
ExactCount conjecture_count(const Shape& shape);

// prod_{j=1..m} (1 - 2^-j), the conjectured fraction of invertible members
// of any family with delta = k and m blocks.
ExactFraction invertible_fraction(std::size_t m);

// Number of m x k matrices over GF(2) with independent entries and rank m:
// prod_{l=0..m-1} (2^k - 2^l).
ExactCount count_full_rank_unstructured(std::size_t m, std::size_t k);

// Full-rank count for a single window block of height delta:
// 2^(k+delta-1) - 2^(2delta-2).  Checked against conjecture_count.
ExactCount count_single_persym(std::size_t delta, std::size_t k);

// Full-rank count for two stacked blocks totalling delta rows, as the
// expanded trinomial 2^(2k+delta-2) - 3*2^(k+2delta-4) + 2^(3delta-5).
// Checked bit-exactly against the factored form.
ExactCount count_double_persym(std::size_t delta, std::size_t k);

// Full-rank count for three stacked blocks totalling delta rows, from the
// factored form 2^(delta-3) * prod_{j=1..3} (2^k - 2^(delta-j)).
ExactCount count_triple_persym(std::size_t delta, std::size_t k);

// The three-block count also circulates as two expanded sums:
//   A: 2^(3k+delta-3) - 7*2^(2k+2delta-6) + 7*2^(k+3delta-8) + 2^(4delta-9)
//   B: 2^(delta-3) * (2^(3k) - 7*2^(2k+2delta-3) + 7*2^(k+2delta-5) - 2^(3delta-6))
// They cannot both equal the factored form (they differ from each other), so
// both are evaluated verbatim and compared rather than trusted.
struct TripleExpansionReport {
  ExactCount factored;
  ExactCount expanded_sum;      // variant A as printed
  ExactCount expanded_factored; // variant B as printed
  bool sum_matches;
  bool factored_matches;
};

TripleExpansionReport triple_expansion_report(std::size_t delta, std::size_t k);

// Count for shapes (1,...,1,a,b,c) with a,b,c >= 2 via the two-step
// recursion: the three tall blocks contribute count_triple_persym at
// (delta-m+3, k), each unit block a factor (2^k - 2^(delta-j)).  The result
// is checked against conjecture_count.  Throws std::invalid_argument for
// shapes outside that case.
ExactCount recursion_count(const Shape& shape);

} // namespace persym
