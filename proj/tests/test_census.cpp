#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "persym/census.hpp"
#include "persym/checkpoint.hpp"
#include "persym/exact.hpp"
#include "persym/shape.hpp"

using persym::CensusLimits;
using persym::EngineKind;
using persym::ExactCount;
using persym::RankHistogram;
using persym::Shape;

namespace {

CensusLimits wide_open() { return CensusLimits{62, false}; }

std::vector<ExactCount> counts_of(std::initializer_list<std::uint64_t> raw) {
  return {raw.begin(), raw.end()};
}

// Every shape with free_bits <= budget: heights nondecreasing, delta <= k.
std::vector<Shape> shapes_up_to(std::size_t budget) {
  std::vector<Shape> out;
  std::vector<std::size_t> heights;
  auto rec = [&](auto&& self, std::size_t delta, std::size_t min_height) -> void {
    if (!heights.empty()) {
      const std::size_t m = heights.size();
      for (std::size_t k = std::max(delta, std::size_t{1});
           delta + m * (k - 1) <= budget; ++k) {
        out.emplace_back(heights, k);
      }
    }
    for (std::size_t s = min_height; delta + s + heights.size() + 1 <= budget + 1; ++s) {
      heights.push_back(s);
      self(self, delta + s, s);
      heights.pop_back();
    }
  };
  rec(rec, 0, 1);
  return out;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    const char* dir = std::getenv("TMPDIR");
    path = std::string(dir ? dir : "/tmp") + "/" + name;
    std::remove(path.c_str());
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("frozen histograms from exhaustive scans") {
  struct Expect {
    const char* shape;
    std::vector<ExactCount> counts;
  };
  const std::vector<Expect> table = {
      {"[1]x1", counts_of({1, 1})},
      {"[1,1]x2", counts_of({1, 9, 6})},
      {"[2]x3", counts_of({1, 3, 12})},
      {"[1,2]x5", counts_of({1, 37, 330, 1680})},
      {"[2,2]x4", counts_of({1, 9, 126, 504, 384})},
      {"[1,1,1]x3", counts_of({1, 49, 294, 168})},
      {"[3]x4", counts_of({1, 3, 12, 48})},
      {"[2,3]x6", counts_of({1, 9, 190, 1656, 9408, 21504})},
  };
  for (const auto& e : table) {
    const Shape shape = Shape::parse(e.shape);
    CAPTURE(e.shape);
    CHECK(persym::census_naive(shape, wide_open()).counts() == e.counts);
    CHECK(persym::census_prefix_sharing(shape, wide_open()).counts() == e.counts);
  }
}

TEST_CASE("the two engines agree on every small shape") {
  const auto shapes = shapes_up_to(12);
  CHECK(shapes.size() > 30);
  for (const auto& shape : shapes) {
    CAPTURE(shape.to_string());
    const auto naive = persym::census_naive(shape, wide_open());
    const auto prefix = persym::census_prefix_sharing(shape, wide_open());
    REQUIRE(naive == prefix);
    CHECK(naive.count(0) == 1);  // only the zero vector scans to rank 0
    CHECK(naive.total() == persym::pow2(shape.free_bits()));
  }
}

TEST_CASE("shards tile the space") {
  const Shape shape({2, 2}, 4);
  const auto whole = persym::census_prefix_sharing(shape, wide_open());
  for (auto engine : {EngineKind::kNaive, EngineKind::kPrefixSharing}) {
    RankHistogram merged(shape);
    for (std::uint64_t prefix = 0; prefix < 4; ++prefix) {
      const auto part =
          persym::census_shard(shape, {2, prefix, engine}, wide_open());
      CHECK(part.total() == persym::pow2(shape.free_bits() - 2));
      merged.merge(part);
    }
    CHECK(merged == whole);
  }

  CHECK_THROWS_AS(persym::census_shard(shape, {11, 0, EngineKind::kNaive}, wide_open()),
                  std::invalid_argument);
  CHECK_THROWS_AS(persym::census_shard(shape, {2, 4, EngineKind::kNaive}, wide_open()),
                  std::invalid_argument);
}

TEST_CASE("parallel runs match the single-threaded engines") {
  const Shape shape({1, 2}, 5);
  const auto expected = persym::census_naive(shape, wide_open());
  for (std::size_t shards : {1ul, 2ul, 8ul}) {
    for (std::size_t workers : {1ul, 3ul}) {
      for (auto engine : {EngineKind::kNaive, EngineKind::kPrefixSharing}) {
        persym::ParallelOptions opt;
        opt.shards = shards;
        opt.workers = workers;
        opt.engine = engine;
        CHECK(persym::census_parallel(shape, opt, wide_open()) == expected);
      }
    }
  }
}

TEST_CASE("parallel option validation") {
  const Shape shape({1}, 2);
  persym::ParallelOptions opt;
  opt.shards = 3;
  CHECK_THROWS_AS(persym::census_parallel(shape, opt, wide_open()),
                  std::invalid_argument);
  opt.shards = 0;
  CHECK_THROWS_AS(persym::census_parallel(shape, opt, wide_open()),
                  std::invalid_argument);
  opt.shards = 8;  // > 2^free_bits = 4
  CHECK_THROWS_AS(persym::census_parallel(shape, opt, wide_open()),
                  std::invalid_argument);
  opt.shards = 2;
  opt.workers = 0;
  CHECK_THROWS_AS(persym::census_parallel(shape, opt, wide_open()),
                  std::invalid_argument);
}

TEST_CASE("limits refuse big spaces unless lifted") {
  const Shape shape({2, 2}, 4);  // 10 free bits
  CHECK_THROWS_AS(persym::census_naive(shape, CensusLimits{8, false}),
                  persym::CensusRefused);
  CHECK_THROWS_AS(persym::census_prefix_sharing(shape, CensusLimits{8, false}),
                  persym::CensusRefused);
  CHECK_NOTHROW(persym::census_prefix_sharing(shape, CensusLimits{8, true}));
  CHECK_NOTHROW(persym::census_prefix_sharing(shape, CensusLimits{10, false}));

  // Past the engine cap nothing helps.
  const Shape monster({4, 4}, 31);  // 68 free bits
  CHECK_THROWS_AS(persym::census_prefix_sharing(monster, CensusLimits{62, true}),
                  persym::CensusRefused);

  CHECK(CensusLimits{8, false}.effective() == 8);
  CHECK(CensusLimits{8, true}.effective() == 62);
  CHECK(CensusLimits{100, false}.effective() == 62);
}

TEST_CASE("limit threshold comes from the environment") {
  ::setenv(persym::kMaxFreeBitsEnvVar, "8", 1);
  CHECK(CensusLimits::from_env().max_free_bits == 8);
  ::setenv(persym::kMaxFreeBitsEnvVar, "bogus", 1);
  CHECK_THROWS_AS(CensusLimits::from_env(), std::runtime_error);
  ::unsetenv(persym::kMaxFreeBitsEnvVar);
  CHECK(CensusLimits::from_env().max_free_bits == 30);
}

TEST_CASE("engine names round-trip") {
  CHECK(persym::engine_name(EngineKind::kNaive) == "naive");
  CHECK(persym::engine_name(EngineKind::kPrefixSharing) == "prefix");
  CHECK(persym::parse_engine("naive") == EngineKind::kNaive);
  CHECK(persym::parse_engine("prefix") == EngineKind::kPrefixSharing);
  CHECK_THROWS_AS(persym::parse_engine("turbo"), std::invalid_argument);
}

TEST_CASE("cancel checkpoints progress and a rerun completes it") {
  const Shape shape({2, 2}, 4);
  TempFile file("persym_test_resume.json");

  std::atomic<bool> stop{false};
  persym::ParallelOptions first;
  first.shards = 8;
  first.workers = 1;
  first.checkpoint_path = file.path;
  first.cancel = &stop;
  first.on_shard_complete = [&](std::size_t, std::size_t done) {
    if (done == 3) stop.store(true);
  };
  CHECK_THROWS_AS(persym::census_parallel(shape, first, wide_open()),
                  persym::CensusCanceled);

  const auto saved = persym::Checkpoint::load(file.path);
  CHECK(saved.shard_count == 8);
  CHECK(saved.completed.size() == 3);

  std::size_t resumed_scans = 0;
  persym::ParallelOptions second;
  second.shards = 8;
  second.workers = 1;
  second.checkpoint_path = file.path;
  second.on_shard_complete = [&](std::size_t, std::size_t) { ++resumed_scans; };
  const auto hist = persym::census_parallel(shape, second, wide_open());
  CHECK(resumed_scans == 5);  // only the missing shards were scanned
  CHECK(hist == persym::census_naive(shape, wide_open()));
}

TEST_CASE("stale or foreign checkpoints are rejected") {
  const Shape shape({2, 2}, 4);
  TempFile file("persym_test_stale.json");

  persym::ParallelOptions opt;
  opt.shards = 4;
  opt.workers = 1;
  opt.checkpoint_path = file.path;

  {
    std::ofstream out(file.path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(persym::census_parallel(shape, opt, wide_open()),
                  std::runtime_error);

  persym::Checkpoint other;
  other.shape_text = "[1,2]x4";
  other.shard_count = 4;
  other.save(file.path);
  CHECK_THROWS_AS(persym::census_parallel(shape, opt, wide_open()),
                  std::runtime_error);

  persym::Checkpoint wrong_shards;
  wrong_shards.shape_text = shape.to_string();
  wrong_shards.shard_count = 2;
  wrong_shards.save(file.path);
  CHECK_THROWS_AS(persym::census_parallel(shape, opt, wide_open()),
                  std::runtime_error);

  persym::Checkpoint wrong_layout;
  wrong_layout.layout_version = "block-major-v0";
  wrong_layout.shape_text = shape.to_string();
  wrong_layout.shard_count = 4;
  wrong_layout.save(file.path);
  CHECK_THROWS_AS(persym::census_parallel(shape, opt, wide_open()),
                  std::runtime_error);
}

TEST_CASE("dual moment identity by hand") {
  // [1]x1: counts (1,1); both sides of the identity equal 3.
  const Shape tiny({1}, 1);
  RankHistogram hist(tiny);
  hist.add(0, 1);
  hist.add(1, 1);
  CHECK(persym::dual_moment_check(tiny, hist));

  RankHistogram off(tiny);
  off.add(0, 2);
  CHECK_FALSE(persym::dual_moment_check(tiny, off));

  // [1,1]x2: counts (1,9,6); both sides equal 28.
  const Shape pair({1, 1}, 2);
  RankHistogram h2(pair);
  h2.add(0, 1);
  h2.add(1, 9);
  h2.add(2, 6);
  CHECK(persym::dual_moment_check(pair, h2));

  CHECK_FALSE(persym::dual_moment_check(tiny, h2));  // shape mismatch
}

TEST_CASE("dual moment flags any single-slot perturbation") {
  const Shape shape({2, 2}, 4);
  const auto good = persym::census_prefix_sharing(shape, wide_open());
  CHECK(persym::dual_moment_check(shape, good));
  for (std::size_t r = 0; r <= shape.total_rows(); ++r) {
    RankHistogram bad = good;
    bad.add(r, 1);
    CAPTURE(r);
    CHECK_FALSE(persym::dual_moment_check(shape, bad));
  }
}

TEST_CASE("histogram bookkeeping") {
  const Shape shape({1, 1}, 2);
  RankHistogram h(shape);
  CHECK(h.total() == 0);
  CHECK_THROWS_AS(h.check_conservation(), std::logic_error);
  h.add(0, 1);
  h.add(1, 9);
  h.add(2, 6);
  CHECK(h.total() == 16);
  CHECK_NOTHROW(h.check_conservation());
  CHECK_THROWS_AS(h.add(3, 1), std::out_of_range);

  RankHistogram other(Shape({2}, 2));
  CHECK_THROWS_AS(h.merge(other), std::invalid_argument);
}
