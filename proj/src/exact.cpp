#include "persym/exact.hpp"

#include <stdexcept>
#include <utility>

namespace persym {

ExactCount pow2(std::uint64_t exponent) { return ExactCount(1) << exponent; }

OddPowerSplit split_odd_power(const ExactCount& value) {
  if (value <= 0) {
    throw std::invalid_argument("split_odd_power: value must be positive");
  }
  const std::uint64_t e = boost::multiprecision::lsb(value);
  return {value >> e, e};
}

ExactFraction::ExactFraction(ExactCount numerator, ExactCount denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ <= 0) {
    throw std::invalid_argument("ExactFraction: denominator must be positive");
  }
  if (num_ < 0) {
    throw std::invalid_argument("ExactFraction: numerator must be nonnegative");
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  const ExactCount g = boost::multiprecision::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

std::string ExactFraction::to_string() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

}  // namespace persym
