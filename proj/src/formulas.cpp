#include "persym/formulas.hpp"

#include <stdexcept>
#include <string>

namespace persym {

namespace {

void check_range(std::size_t lo, std::size_t delta, std::size_t k,
                 const char* what) {
  if (delta < lo || delta > k) {
    throw std::invalid_argument(std::string(what) + ": need " +
                                std::to_string(lo) + " <= delta <= k, got delta=" +
                                std::to_string(delta) + " k=" + std::to_string(k));
  }
}

ExactCount factored_product(std::size_t m, std::size_t delta, std::size_t k) {
  ExactCount value = pow2(delta - m);
  for (std::size_t j = 1; j <= m; ++j) value *= pow2(k) - pow2(delta - j);
  return value;
}

} // namespace

ExactCount conjecture_count(const Shape& shape) {
  const std::size_t m = shape.block_count();
  const std::size_t delta = shape.total_rows();
  const std::size_t k = shape.cols();
  const ExactCount left = factored_product(m, delta, k);

  // 2^((1+m)delta - m(m+3)/2) * prod_{j=1..m} (2^(k-delta+j) - 1); the
  // exponent is >= m(m-1)/2 >= 0 because delta >= m.
  const std::size_t exponent = (1 + m) * delta - m * (m + 3) / 2;
  ExactCount right = pow2(exponent);
  for (std::size_t j = 1; j <= m; ++j) right *= pow2(k - delta + j) - 1;

  if (left != right) {
    throw std::logic_error("conjecture_count: the two product forms disagree for " +
                           shape.to_string());
  }
  return left;
}

ExactFraction invertible_fraction(std::size_t m) {
  if (m < 1) throw std::invalid_argument("invertible_fraction: need m >= 1");
  ExactCount num = 1;
  for (std::size_t j = 1; j <= m; ++j) num *= pow2(j) - 1;
  return ExactFraction(num, pow2(m * (m + 1) / 2));
}

ExactCount count_full_rank_unstructured(std::size_t m, std::size_t k) {
  if (m < 1 || m > k) {
    throw std::invalid_argument("count_full_rank_unstructured: need 1 <= m <= k");
  }
  ExactCount value = 1;
  for (std::size_t l = 0; l < m; ++l) value *= pow2(k) - pow2(l);
  return value;
}

ExactCount count_single_persym(std::size_t delta, std::size_t k) {
  check_range(1, delta, k, "count_single_persym");
  const ExactCount value = pow2(k + delta - 1) - pow2(2 * delta - 2);
  if (value != factored_product(1, delta, k)) {
    throw std::logic_error("count_single_persym: binomial form disagrees with "
                           "the factored form");
  }
  return value;
}

ExactCount count_double_persym(std::size_t delta, std::size_t k) {
  check_range(2, delta, k, "count_double_persym");
  const ExactCount value = pow2(2 * k + delta - 2) -
                           3 * pow2(k + 2 * delta - 4) + pow2(3 * delta - 5);
  if (value != factored_product(2, delta, k)) {
    throw std::logic_error("count_double_persym: trinomial form disagrees with "
                           "the factored form");
  }
  return value;
}

ExactCount count_triple_persym(std::size_t delta, std::size_t k) {
  check_range(3, delta, k, "count_triple_persym");
  return factored_product(3, delta, k);
}

TripleExpansionReport triple_expansion_report(std::size_t delta, std::size_t k) {
  check_range(3, delta, k, "triple_expansion_report");
  TripleExpansionReport report;
  report.factored = factored_product(3, delta, k);
  report.expanded_sum = pow2(3 * k + delta - 3) -
                        7 * pow2(2 * k + 2 * delta - 6) +
                        7 * pow2(k + 3 * delta - 8) + pow2(4 * delta - 9);
  report.expanded_factored =
      pow2(delta - 3) * (pow2(3 * k) - 7 * pow2(2 * k + 2 * delta - 3) +
                         7 * pow2(k + 2 * delta - 5) - pow2(3 * delta - 6));
  report.sum_matches = report.expanded_sum == report.factored;
  report.factored_matches = report.expanded_factored == report.factored;
  return report;
}

ExactCount recursion_count(const Shape& shape) {
  if (shape.family_case() != FamilyCase::kUnitPrefixTriple) {
    throw std::invalid_argument("recursion_count: shape " + shape.to_string() +
                                " is not of the form (1,...,1,a,b,c) with "
                                "a,b,c >= 2");
  }
  const std::size_t m = shape.block_count();
  const std::size_t delta = shape.total_rows();
  const std::size_t k = shape.cols();
  ExactCount value = count_triple_persym(delta - m + 3, k);
  for (std::size_t j = 1; j <= m - 3; ++j) value *= pow2(k) - pow2(delta - j);
  if (value != conjecture_count(shape)) {
    throw std::logic_error("recursion_count: recursion disagrees with the "
                           "direct product for " + shape.to_string());
  }
  return value;
}

} // namespace persym
