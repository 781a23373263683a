#pragma once

#include <cstddef>
#include <vector>

#include "persym/exact.hpp"
#include "persym/shape.hpp"

namespace persym {

// Exact number of parameter assignments per achieved rank, 0..delta.
class RankHistogram {
 public:
  explicit RankHistogram(Shape shape)
      : shape_(std::move(shape)), counts_(shape_.total_rows() + 1, 0) {}

  const Shape& shape() const { return shape_; }
  std::size_t max_rank() const { return counts_.size() - 1; }
  const ExactCount& count(std::size_t rank) const { return counts_.at(rank); }
  const std::vector<ExactCount>& counts() const { return counts_; }

  void add(std::size_t rank, const ExactCount& n);

  // Component-wise sum; shapes must agree.
  void merge(const RankHistogram& other);

  ExactCount total() const;

  // Throws std::logic_error unless the counts sum to 2^free_bits.
  void check_conservation() const;

  bool operator==(const RankHistogram& o) const {
    return shape_ == o.shape_ && counts_ == o.counts_;
  }
  bool operator!=(const RankHistogram& o) const { return !(*this == o); }

 private:
  Shape shape_;
  std::vector<ExactCount> counts_;
};

} // namespace persym
