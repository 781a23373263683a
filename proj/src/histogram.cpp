#include "persym/histogram.hpp"

#include <stdexcept>
#include <string>

namespace persym {

void RankHistogram::add(std::size_t rank, const ExactCount& n) {
  if (rank >= counts_.size()) {
    throw std::out_of_range("rank " + std::to_string(rank) +
                            " exceeds row count of " + shape_.to_string());
  }
  counts_[rank] += n;
}

void RankHistogram::merge(const RankHistogram& other) {
  if (shape_ != other.shape_) {
    throw std::invalid_argument("cannot merge histograms of " +
                                shape_.to_string() + " and " +
                                other.shape_.to_string());
  }
  for (std::size_t r = 0; r < counts_.size(); ++r) {
    counts_[r] += other.counts_[r];
  }
}

ExactCount RankHistogram::total() const {
  ExactCount sum = 0;
  for (const ExactCount& c : counts_) sum += c;
  return sum;
}

void RankHistogram::check_conservation() const {
  const ExactCount want = pow2(shape_.free_bits());
  if (total() != want) {
    throw std::logic_error("histogram of " + shape_.to_string() +
                           " sums to " + total().str() + ", expected 2^" +
                           std::to_string(shape_.free_bits()));
  }
}

} // namespace persym
