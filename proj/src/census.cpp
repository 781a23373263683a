#include "persym/census.hpp"

#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "persym/bitmatrix.hpp"
#include "persym/checkpoint.hpp"
#include "persym/echelon.hpp"
#include "persym/family.hpp"

namespace persym {

using gf2::BitMatrix;
using gf2::BitVector;
using gf2::EchelonState;

CensusLimits CensusLimits::from_env() {
  CensusLimits limits;
  if (const char* raw = std::getenv(kMaxFreeBitsEnvVar)) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0') {
      throw std::runtime_error(std::string(kMaxFreeBitsEnvVar) +
                               " is not a number: " + raw);
    }
    limits.max_free_bits = static_cast<std::size_t>(parsed);
  }
  return limits;
}

void CensusLimits::check(const Shape& shape) const {
  const std::size_t f = shape.free_bits();
  if (f > kEngineMaxFreeBits) {
    throw CensusRefused("shape " + shape.to_string() + " has " +
                        std::to_string(f) + " free bits; the engines go up to " +
                        std::to_string(kEngineMaxFreeBits));
  }
  if (f > effective()) {
    throw CensusRefused("shape " + shape.to_string() + " has " +
                        std::to_string(f) + " free bits, over the limit of " +
                        std::to_string(effective()) +
                        "; pass --big (or raise " + kMaxFreeBitsEnvVar +
                        ") for runs this large");
  }
}

std::string_view engine_name(EngineKind engine) {
  return engine == EngineKind::kNaive ? "naive" : "prefix";
}

EngineKind parse_engine(std::string_view name) {
  if (name == "naive") return EngineKind::kNaive;
  if (name == "prefix") return EngineKind::kPrefixSharing;
  throw std::invalid_argument("unknown engine '" + std::string(name) +
                              "' (expected naive or prefix)");
}

namespace {

void check_shard(const Shape& shape, const ShardSpec& spec) {
  const std::size_t f = shape.free_bits();
  if (spec.fixed_bits > f) {
    throw std::invalid_argument("shard fixes " + std::to_string(spec.fixed_bits) +
                                " bits but " + shape.to_string() + " only has " +
                                std::to_string(f));
  }
  if (spec.fixed_bits < 64 && (spec.prefix >> spec.fixed_bits) != 0) {
    throw std::invalid_argument("shard prefix has bits past the fixed width");
  }
}

// Canonical bit b of the scan counter `u` sits at counter bit F-1-b, so one
// shard's counter values form the contiguous block [prefix, prefix+1) << (F-p).
inline bool counter_bit(std::uint64_t u, std::size_t total, std::size_t b) {
  return (u >> (total - 1 - b)) & 1u;
}

std::vector<std::uint64_t> scan_naive(const Shape& shape, const ShardSpec& spec) {
  const std::size_t f = shape.free_bits();
  const std::size_t delta = shape.total_rows();
  std::vector<std::uint64_t> tally(delta + 1, 0);
  const std::uint64_t span = std::uint64_t{1} << (f - spec.fixed_bits);
  const std::uint64_t lo = spec.prefix * span;
  for (std::uint64_t u = lo; u < lo + span; ++u) {
    BitVector bits(f);
    for (std::size_t b = 0; b < f; ++b) {
      if (counter_bit(u, f, b)) bits.set(b, true);
    }
    ++tally[gf2::rank(materialize(shape, bits))];
  }
  return tally;
}

// Depth-first scan over the canonical bit order.  The bits of one block row
// are contiguous, so block j's row i is fully assigned once bit
// offset(j)+i+k-2 gets its value; that row is absorbed there and undone on
// backtrack, sharing all elimination work on a common prefix between the
// 2^(F-depth) extensions.  The deepest level is fused: the final bit always
// completes the last row, so instead of absorb/undo both leaves are settled
// with membership probes.
class PrefixScanner {
 public:
  PrefixScanner(const Shape& shape, const ShardSpec& spec)
      : f_(shape.free_bits()),
        k_(shape.cols()),
        mask_(k_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k_) - 1),
        completes_(f_, false),
        state_(k_),
        tally_(shape.total_rows() + 1, 0) {
    for (std::size_t j = 1; j <= shape.block_count(); ++j) {
      const std::size_t off = shape.block_offset(j);
      for (std::size_t i = 1; i <= shape.height(j); ++i) {
        completes_[off + i + k_ - 2] = true;
      }
    }
    for (std::size_t b = 0; b < spec.fixed_bits; ++b) {
      if (counter_bit(spec.prefix, spec.fixed_bits, b)) path_ |= bit(b);
      if (completes_[b]) absorb_row_ending_at(b);
    }
    start_ = spec.fixed_bits;
  }

  std::vector<std::uint64_t> run() {
    if (start_ == f_) {
      ++tally_[state_.rank()];
    } else {
      descend(start_);
    }
    return std::move(tally_);
  }

 private:
  static std::uint64_t bit(std::size_t b) { return std::uint64_t{1} << b; }

  std::uint64_t row_ending_at(std::size_t b) const {
    return (path_ >> (b + 1 - k_)) & mask_;
  }

  void absorb_row_ending_at(std::size_t b) {
    const std::uint64_t row = row_ending_at(b);
    state_.absorb(std::span<const std::uint64_t>(&row, 1));
  }

  void descend(std::size_t b) {
    if (b == f_ - 1) {
      // path_ has bit b clear, so this is the row with final bit 0.
      const std::uint64_t row = row_ending_at(b);
      const std::uint64_t top = bit(k_ - 1);
      const std::size_t r = state_.rank();
      ++tally_[r + (contains(row) ? 0 : 1)];
      ++tally_[r + (contains(row | top) ? 0 : 1)];
      return;
    }
    for (int v = 0; v < 2; ++v) {
      if (v) path_ |= bit(b);
      if (completes_[b]) {
        const std::uint64_t row = row_ending_at(b);
        const EchelonState::Mark mark =
            state_.absorb(std::span<const std::uint64_t>(&row, 1));
        descend(b + 1);
        state_.undo_to(mark);
      } else {
        descend(b + 1);
      }
    }
    path_ &= ~bit(b);
  }

  bool contains(std::uint64_t row) const {
    return state_.contains(std::span<const std::uint64_t>(&row, 1));
  }

  std::size_t f_;
  std::size_t k_;
  std::uint64_t mask_;
  std::vector<bool> completes_;
  EchelonState state_;
  std::vector<std::uint64_t> tally_;
  std::uint64_t path_ = 0;
  std::size_t start_ = 0;
};

RankHistogram tally_to_histogram(const Shape& shape,
                                 const std::vector<std::uint64_t>& tally) {
  RankHistogram hist(shape);
  for (std::size_t r = 0; r < tally.size(); ++r) {
    if (tally[r]) hist.add(r, ExactCount(tally[r]));
  }
  return hist;
}

} // namespace

RankHistogram census_shard(const Shape& shape, const ShardSpec& spec,
                           const CensusLimits& limits) {
  limits.check(shape);
  check_shard(shape, spec);
  if (spec.engine == EngineKind::kNaive) {
    return tally_to_histogram(shape, scan_naive(shape, spec));
  }
  return tally_to_histogram(shape, PrefixScanner(shape, spec).run());
}

RankHistogram census_naive(const Shape& shape, const CensusLimits& limits) {
  RankHistogram hist =
      census_shard(shape, ShardSpec{0, 0, EngineKind::kNaive}, limits);
  hist.check_conservation();
  return hist;
}

RankHistogram census_prefix_sharing(const Shape& shape,
                                    const CensusLimits& limits) {
  RankHistogram hist =
      census_shard(shape, ShardSpec{0, 0, EngineKind::kPrefixSharing}, limits);
  hist.check_conservation();
  return hist;
}

RankHistogram census_parallel(const Shape& shape, const ParallelOptions& options,
                              const CensusLimits& limits) {
  limits.check(shape);
  const std::size_t f = shape.free_bits();
  const std::size_t shards = options.shards;
  if (shards == 0 || (shards & (shards - 1)) != 0) {
    throw std::invalid_argument("shard count must be a power of two, got " +
                                std::to_string(shards));
  }
  std::size_t fixed_bits = 0;
  while ((std::size_t{1} << fixed_bits) < shards) ++fixed_bits;
  if (fixed_bits > f) {
    throw std::invalid_argument("cannot split " + std::to_string(f) +
                                " free bits into " + std::to_string(shards) +
                                " shards");
  }
  if (options.workers == 0) {
    throw std::invalid_argument("need at least one worker");
  }

  Checkpoint cp;
  cp.shape_text = shape.to_string();
  cp.shard_count = shards;
  if (options.checkpoint_path) {
    std::ifstream probe(*options.checkpoint_path);
    if (probe.good()) {
      cp = Checkpoint::load(*options.checkpoint_path);
      cp.validate_for(shape, shards);
    }
  }

  std::mutex merge_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  bool canceled = false;

  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      if (options.cancel && options.cancel->load()) return;
      const std::size_t shard = next.fetch_add(1);
      if (shard >= shards) return;
      {
        std::lock_guard<std::mutex> lock(merge_mutex);
        if (cp.completed.count(shard)) continue;
      }
      try {
        ShardSpec spec{fixed_bits, shard, options.engine};
        RankHistogram part = census_shard(shape, spec, limits);
        std::lock_guard<std::mutex> lock(merge_mutex);
        cp.completed.emplace(shard, part.counts());
        if (options.checkpoint_path) cp.save(*options.checkpoint_path);
        if (options.on_shard_complete) {
          options.on_shard_complete(shard, cp.completed.size());
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(merge_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  const std::size_t pool = std::min(options.workers, shards);
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (std::size_t w = 0; w < pool; ++w) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();

  if (error) std::rethrow_exception(error);
  if (options.cancel && options.cancel->load()) canceled = true;

  if (canceled && cp.completed.size() < shards) {
    throw CensusCanceled("census of " + shape.to_string() + " canceled with " +
                         std::to_string(cp.completed.size()) + " of " +
                         std::to_string(shards) + " shards done");
  }

  RankHistogram hist(shape);
  for (const auto& [shard, counts] : cp.completed) {
    for (std::size_t r = 0; r < counts.size(); ++r) hist.add(r, counts[r]);
  }
  hist.check_conservation();
  return hist;
}

bool dual_moment_check(const Shape& shape, const RankHistogram& hist) {
  if (hist.shape() != shape) return false;
  const std::size_t m = shape.block_count();
  const std::size_t delta = shape.total_rows();
  if (delta >= 64) {
    throw std::invalid_argument("dual_moment_check: 2^" +
                                std::to_string(delta) +
                                " left vectors is out of reach");
  }
  const std::size_t k = shape.cols();
  const std::size_t f = shape.free_bits();

  ExactCount lhs = 0;
  for (std::size_t r = 0; r <= delta; ++r) {
    lhs += hist.count(r) * pow2(delta - r);
  }

  // Row starts of each block inside a packed delta-bit left vector.
  std::vector<std::size_t> row_start(m + 1, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    row_start[j] = row_start[j - 1] + shape.height(j);
  }

  ExactCount rhs = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << delta); ++v) {
    // Column c of v^T M(alpha) reads parameter bit offset(j)+i+c-2 with
    // coefficient v's (j, i) bit, giving k linear equations over the f bits.
    BitMatrix sys(k, f);
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t off = shape.block_offset(j);
      for (std::size_t i = 1; i <= shape.height(j); ++i) {
        if (!((v >> (row_start[j - 1] + i - 1)) & 1u)) continue;
        for (std::size_t c = 1; c <= k; ++c) {
          sys.set(c - 1, off + i + c - 2, true);
        }
      }
    }
    rhs += pow2(f - gf2::rank(sys));
  }
  return lhs == rhs;
}

} // namespace persym
