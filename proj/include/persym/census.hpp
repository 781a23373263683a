#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "persym/histogram.hpp"
#include "persym/shape.hpp"

namespace persym {

// Rows of the scanned families fit one machine word (k <= free bits <= 62),
// and per-shard tallies fit uint64, so this cap is structural.
inline constexpr std::size_t kEngineMaxFreeBits = 62;

// Name of the environment variable overriding the default refusal threshold.
inline constexpr const char* kMaxFreeBitsEnvVar = "PERSYM_MAX_FREE_BITS";

// An engine refused to scan a parameter space (too many free bits).
class CensusRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// census_parallel was canceled mid-run; completed shards are in the
// checkpoint file if one was configured.
class CensusCanceled : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Guard against accidental monster runs: shapes with more than `max_free_bits`
// free bits are refused unless `allow_big` lifts the threshold to the
// structural engine cap.
struct CensusLimits {
  std::size_t max_free_bits = 30;
  bool allow_big = false;

  // Threshold 30, overridden by the PERSYM_MAX_FREE_BITS environment variable.
  static CensusLimits from_env();

  std::size_t effective() const {
    return allow_big ? kEngineMaxFreeBits : std::min(max_free_bits, kEngineMaxFreeBits);
  }
  void check(const Shape& shape) const; // throws CensusRefused
};

enum class EngineKind { kNaive, kPrefixSharing };

std::string_view engine_name(EngineKind engine);
EngineKind parse_engine(std::string_view name); // "naive" | "prefix"

// One slice of a parameter space: the first `fixed_bits` bits of the
// canonical order are pinned to `prefix` (bit b of the order is bit
// fixed_bits-1-b of `prefix`, so consecutive prefixes tile the space in
// scan order).  fixed_bits = 0 is the whole space.
struct ShardSpec {
  std::size_t fixed_bits = 0;
  std::uint64_t prefix = 0;
  EngineKind engine = EngineKind::kPrefixSharing;
};

// Walks one shard and tallies ranks.  No conservation check here: a shard
// with fixed bits is intentionally partial.
RankHistogram census_shard(const Shape& shape, const ShardSpec& spec,
                           const CensusLimits& limits);

// Full scan, one matrix at a time: every parameter vector is materialized
// and its rank computed from scratch.  The reference engine.
RankHistogram census_naive(const Shape& shape,
                           const CensusLimits& limits = CensusLimits::from_env());

// Full scan as a depth-first walk of the parameter bits in canonical order.
// Each matrix row is complete once its last window bit is assigned, and is
// then absorbed into an incremental echelon state shared by the whole
// subtree; backtracking undoes the absorption.  Same histogram as
// census_naive at a fraction of the cost.
RankHistogram census_prefix_sharing(const Shape& shape,
                                    const CensusLimits& limits = CensusLimits::from_env());

struct ParallelOptions {
  std::size_t shards = 1;  // power of two, at most 2^free_bits
  std::size_t workers = 1;
  EngineKind engine = EngineKind::kPrefixSharing;
  std::optional<std::string> checkpoint_path;
  // Checked between shards; raising it aborts the run with CensusCanceled
  // after the in-flight shards finish (and are checkpointed).
  const std::atomic<bool>* cancel = nullptr;
  // Called after each shard merge with (shard id, shards done so far).
  std::function<void(std::size_t, std::size_t)> on_shard_complete;
};

// Splits the space into shards by pinning high bits, scans them on a worker
// pool, and merges.  With a checkpoint path, completed shards are persisted
// after each merge and skipped when the run is restarted.
RankHistogram census_parallel(const Shape& shape, const ParallelOptions& options,
                              const CensusLimits& limits = CensusLimits::from_env());

// Enumeration-independent consistency check.  Over all v in F2^delta, the
// number of (v, member) pairs with v in the member's left kernel can be
// counted from the histogram (sum of counts[r] * 2^(delta-r)) or from the
// per-v solution counts of the linear system "v^T M(alpha) = 0" in the
// parameter bits (sum of 2^(free_bits - rank of system)).  Returns whether
// the two sums agree.
bool dual_moment_check(const Shape& shape, const RankHistogram& hist);

} // namespace persym
