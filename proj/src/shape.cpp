#include "persym/shape.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace persym {

std::string_view family_case_name(FamilyCase c) {
  switch (c) {
    case FamilyCase::kUnitRows: return "unit-rows";
    case FamilyCase::kSingleBlock: return "single-block";
    case FamilyCase::kDoubleBlock: return "double-block";
    case FamilyCase::kTripleBlock: return "triple-block";
    case FamilyCase::kUnitPrefixTriple: return "unit-prefix-triple";
    case FamilyCase::kGeneral: return "general";
  }
  return "?";
}

Shape::Shape(std::vector<std::size_t> heights, std::size_t cols)
    : heights_(std::move(heights)), cols_(cols) {
  if (heights_.empty()) throw std::invalid_argument("shape: no blocks");
  for (std::size_t s : heights_) {
    if (s == 0) throw std::invalid_argument("shape: zero block height");
  }
  display_ = heights_;
  std::sort(heights_.begin(), heights_.end());
  delta_ = std::accumulate(heights_.begin(), heights_.end(), std::size_t{0});
  if (cols_ < delta_) {
    throw std::invalid_argument("shape: need cols >= total rows, got " +
                                std::to_string(cols_) + " < " +
                                std::to_string(delta_));
  }
  offsets_.reserve(heights_.size());
  std::size_t off = 0;
  for (std::size_t s : heights_) {
    offsets_.push_back(off);
    off += s + cols_ - 1;
  }
  free_bits_ = off;
}

std::size_t Shape::block_offset(std::size_t j) const {
  return offsets_.at(j - 1);
}

FamilyCase Shape::family_case() const {
  const std::size_t m = heights_.size();
  if (heights_.back() == 1) return FamilyCase::kUnitRows;
  // heights are ascending, so heights_.back() >= 2 from here on.
  if (m == 1) return FamilyCase::kSingleBlock;
  if (heights_.front() >= 2) {
    if (m == 2) return FamilyCase::kDoubleBlock;
    if (m == 3) return FamilyCase::kTripleBlock;
    return FamilyCase::kGeneral;
  }
  // Mixed: some unit blocks, some taller.  The recursion applies when the
  // unit blocks are exactly the first m-3 and the last three are all >= 2.
  if (m >= 4 && heights_[m - 3] >= 2) {
    bool prefix_units = true;
    for (std::size_t i = 0; i + 3 < m; ++i) {
      if (heights_[i] != 1) { prefix_units = false; break; }
    }
    if (prefix_units) return FamilyCase::kUnitPrefixTriple;
  }
  return FamilyCase::kGeneral;
}

namespace {

std::string render_shape(const std::vector<std::size_t>& heights,
                         std::size_t cols) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < heights.size(); ++i) {
    if (i) out << ',';
    out << heights[i];
  }
  out << "]x" << cols;
  return out.str();
}

} // namespace

std::string Shape::to_string() const { return render_shape(heights_, cols_); }

std::string Shape::display_string() const {
  return render_shape(display_, cols_);
}

namespace {

[[noreturn]] void bad_shape(std::string_view text) {
  throw std::invalid_argument("cannot parse shape '" + std::string(text) +
                              "': expected e.g. [2,3,3]x10");
}

std::size_t parse_number(std::string_view text, std::size_t& pos,
                         std::string_view whole) {
  std::size_t value = 0;
  const char* first = text.data() + pos;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr == first) bad_shape(whole);
  pos += static_cast<std::size_t>(ptr - first);
  return value;
}

} // namespace

Shape Shape::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.size() < 5 || s.front() != '[') bad_shape(text);
  std::size_t pos = 1;
  std::vector<std::size_t> heights;
  for (;;) {
    heights.push_back(parse_number(s, pos, text));
    if (pos >= s.size()) bad_shape(text);
    if (s[pos] == ',') { ++pos; continue; }
    if (s[pos] == ']') { ++pos; break; }
    bad_shape(text);
  }
  if (pos >= s.size() || s[pos] != 'x') bad_shape(text);
  ++pos;
  std::size_t cols = parse_number(s, pos, text);
  if (pos != s.size()) bad_shape(text);
  return Shape(std::move(heights), cols);
}

FamilyCard family_card(const Shape& shape) {
  return FamilyCard{
      shape,
      shape.block_count(),
      shape.total_rows(),
      shape.cols(),
      shape.free_bits(),
      pow2(shape.free_bits()),
      shape.family_case(),
  };
}

ParameterVector::ParameterVector(Shape s, gf2::BitVector b)
    : shape(std::move(s)), bits(std::move(b)) {
  if (bits.size() != shape.free_bits()) {
    throw std::invalid_argument("parameter vector: bit count " +
                                std::to_string(bits.size()) + " != free bits " +
                                std::to_string(shape.free_bits()));
  }
}

ParameterVector::ParameterVector(Shape s, std::uint64_t value)
    : shape(std::move(s)), bits(shape.free_bits(), value) {}

} // namespace persym
