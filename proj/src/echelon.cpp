#include "persym/echelon.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "persym/bitmatrix.hpp"

namespace persym::gf2 {

namespace {
constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::size_t leading_bit(std::span<const std::uint64_t> words) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    if (words[w] != 0) {
      return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words[w]));
    }
  }
  return npos;
}
}  // namespace

EchelonState::EchelonState(std::size_t cols)
    : cols_(cols), wpr_(words_for_bits(cols)), col_slot_(cols, -1) {
  if (cols == 0) {
    throw std::invalid_argument("EchelonState: cols must be at least 1");
  }
  rows_.reserve(std::min<std::size_t>(cols, 128) * wpr_);
}

EchelonState::Mark EchelonState::absorb(std::span<const std::uint64_t> row) {
  if (row.size() != wpr_) {
    throw std::invalid_argument("EchelonState::absorb: row width mismatch");
  }
  return wpr_ == 1 ? absorb_narrow(row[0]) : absorb_wide(row);
}

EchelonState::Mark EchelonState::absorb_narrow(std::uint64_t row) {
  const Mark before = journal_.size();

  // Reduced invariant: each pivot row is zero at every other pivot column,
  // so XORing pivot(c) removes exactly c from the hit mask and can never
  // add an occupied column back.
  std::uint64_t residue = row;
  std::uint64_t hits = residue & occupied_;
  while (hits != 0) {
    const int c = std::countr_zero(hits);
    residue ^= rows_[static_cast<std::size_t>(col_slot_[static_cast<std::size_t>(c)])];
    hits &= hits - 1;
  }
  if (residue == 0) return before;

  const auto pivot_col = static_cast<std::uint32_t>(std::countr_zero(residue));
  const std::uint64_t pivot_bit = std::uint64_t{1} << pivot_col;
  for (std::size_t slot = 0; slot < rank_; ++slot) {
    if (rows_[slot] & pivot_bit) {
      journal_.push_back({Op::kModify, static_cast<std::uint32_t>(slot)});
      journal_rows_.push_back(rows_[slot]);
      rows_[slot] ^= residue;
    }
  }
  journal_.push_back({Op::kInstall, static_cast<std::uint32_t>(rank_)});
  rows_.push_back(residue);
  slot_col_.push_back(pivot_col);
  col_slot_[pivot_col] = static_cast<std::int32_t>(rank_);
  occupied_ |= pivot_bit;
  ++rank_;
  return before;
}

EchelonState::Mark EchelonState::absorb_wide(std::span<const std::uint64_t> row) {
  const Mark before = journal_.size();

  scratch_.assign(row.begin(), row.end());
  std::size_t lead = npos;
  for (;;) {
    lead = leading_bit(scratch_);
    if (lead == npos) return before;  // dependent row
    const std::int32_t slot = col_slot_[lead];
    if (slot < 0) break;
    const std::uint64_t* pivot = rows_.data() + static_cast<std::size_t>(slot) * wpr_;
    for (std::size_t w = 0; w < wpr_; ++w) scratch_[w] ^= pivot[w];
  }

  const std::uint64_t lead_mask = std::uint64_t{1} << (lead % kWordBits);
  const std::size_t lead_word = lead / kWordBits;
  for (std::size_t slot = 0; slot < rank_; ++slot) {
    std::uint64_t* r = rows_.data() + slot * wpr_;
    if (r[lead_word] & lead_mask) {
      journal_.push_back({Op::kModify, static_cast<std::uint32_t>(slot)});
      journal_rows_.insert(journal_rows_.end(), r, r + wpr_);
      for (std::size_t w = 0; w < wpr_; ++w) r[w] ^= scratch_[w];
    }
  }
  journal_.push_back({Op::kInstall, static_cast<std::uint32_t>(rank_)});
  rows_.insert(rows_.end(), scratch_.begin(), scratch_.end());
  slot_col_.push_back(static_cast<std::uint32_t>(lead));
  col_slot_[lead] = static_cast<std::int32_t>(rank_);
  ++rank_;
  return before;
}

void EchelonState::undo_to(Mark mark) {
  if (mark > journal_.size()) {
    throw std::logic_error("EchelonState::undo_to: mark popped out of order");
  }
  while (journal_.size() > mark) {
    const JournalEntry entry = journal_.back();
    journal_.pop_back();
    if (entry.op == Op::kInstall) {
      const std::size_t slot = entry.slot;
      const std::uint32_t col = slot_col_[slot];
      col_slot_[col] = -1;
      if (wpr_ == 1) occupied_ &= ~(std::uint64_t{1} << col);
      slot_col_.pop_back();
      rows_.resize(rows_.size() - wpr_);
      --rank_;
    } else {
      std::uint64_t* r = rows_.data() + entry.slot * wpr_;
      std::copy(journal_rows_.end() - static_cast<std::ptrdiff_t>(wpr_),
                journal_rows_.end(), r);
      journal_rows_.resize(journal_rows_.size() - wpr_);
    }
  }
}

bool EchelonState::contains(std::span<const std::uint64_t> row) const {
  if (row.size() != wpr_) {
    throw std::invalid_argument("EchelonState::contains: row width mismatch");
  }
  if (wpr_ == 1) {
    std::uint64_t residue = row[0];
    std::uint64_t hits = residue & occupied_;
    while (hits != 0) {
      const int c = std::countr_zero(hits);
      residue ^= rows_[static_cast<std::size_t>(col_slot_[static_cast<std::size_t>(c)])];
      hits &= hits - 1;
    }
    return residue == 0;
  }
  scratch_.assign(row.begin(), row.end());
  for (;;) {
    const std::size_t lead = leading_bit(scratch_);
    if (lead == npos) return true;
    const std::int32_t slot = col_slot_[lead];
    if (slot < 0) return false;
    const std::uint64_t* pivot = rows_.data() + static_cast<std::size_t>(slot) * wpr_;
    for (std::size_t w = 0; w < wpr_; ++w) scratch_[w] ^= pivot[w];
  }
}

std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> EchelonState::pivots()
    const {
  std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> out;
  out.reserve(rank_);
  for (std::size_t slot = 0; slot < rank_; ++slot) {
    out.emplace_back(slot_col_[slot],
                     std::vector<std::uint64_t>(rows_.begin() + static_cast<std::ptrdiff_t>(slot * wpr_),
                                                rows_.begin() + static_cast<std::ptrdiff_t>((slot + 1) * wpr_)));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace persym::gf2
