#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace persym::gf2 {

// Incremental reduced row echelon accumulator with undo.
//
// Rows are absorbed one at a time. The state keeps one reduced pivot row
// per pivot column: each stored row has its leading one at its pivot
// column and zeros at every other pivot column, and rank() equals the
// number of stored rows. Every mutation is journaled, so any earlier
// state can be restored bit-for-bit with undo_to(). Marks are positions
// in the journal and must be unwound inner-first (LIFO); popping them out
// of order throws.
//
// A backtracking enumerator takes a mark, absorbs the rows of one branch,
// and undoes to the mark when the branch is exhausted; siblings then share
// all elimination work done above their common prefix.
class EchelonState {
 public:
  using Mark = std::size_t;

  explicit EchelonState(std::size_t cols);

  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }
  std::size_t rank() const { return rank_; }

  Mark mark() const { return journal_.size(); }

  // Reduces `row` against the current pivots; a nonzero residue is
  // installed as a new pivot (rank grows by one), a zero residue leaves
  // the state untouched. Returns the mark taken before absorbing, so
  // undo_to(absorb(row)) cancels exactly this call.
  Mark absorb(std::span<const std::uint64_t> row);

  // Restores the exact state at `mark`.
  void undo_to(Mark mark);

  // True if `row` already lies in the span of the absorbed rows; the
  // state is not modified.
  bool contains(std::span<const std::uint64_t> row) const;

  // (pivot column, reduced row) pairs sorted by column. Two states are
  // bit-identical exactly when their pivot lists are equal.
  std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> pivots() const;

 private:
  enum class Op : std::uint8_t { kInstall, kModify };
  struct JournalEntry {
    Op op;
    std::uint32_t slot;
  };

  Mark absorb_narrow(std::uint64_t row);
  Mark absorb_wide(std::span<const std::uint64_t> row);

  std::size_t cols_;
  std::size_t wpr_;
  std::size_t rank_ = 0;
  std::uint64_t occupied_ = 0;             // column mask, narrow path only
  std::vector<std::int32_t> col_slot_;     // column -> slot, -1 if free
  std::vector<std::uint32_t> slot_col_;    // slot -> pivot column
  std::vector<std::uint64_t> rows_;        // slot-major pivot rows
  std::vector<JournalEntry> journal_;
  std::vector<std::uint64_t> journal_rows_;  // saved rows for kModify, wpr each
  mutable std::vector<std::uint64_t> scratch_;  // wide-path reduce buffer
};

}  // namespace persym::gf2
