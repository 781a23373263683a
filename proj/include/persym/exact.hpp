#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace persym {

// Every count and formula value in this library is exact. No floating
// point is used anywhere in the counting or formula paths.
using ExactCount = boost::multiprecision::cpp_int;

// 2^exponent.
ExactCount pow2(std::uint64_t exponent);

// value = odd * 2^exponent with odd ... odd. Requires value > 0.
struct OddPowerSplit {
  ExactCount odd;
  std::uint64_t exponent = 0;
};
OddPowerSplit split_odd_power(const ExactCount& value);

// Reduced nonnegative rational with positive denominator.
class ExactFraction {
 public:
  ExactFraction() = default;
  ExactFraction(ExactCount numerator, ExactCount denominator);

  const ExactCount& numerator() const { return num_; }
  const ExactCount& denominator() const { return den_; }

  bool operator==(const ExactFraction&) const = default;

  std::string to_string() const;  // "21/64", "3" when the denominator is 1

 private:
  ExactCount num_ = 0;
  ExactCount den_ = 1;
};

}  // namespace persym
