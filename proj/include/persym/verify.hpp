#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "persym/census.hpp"
#include "persym/exact.hpp"
#include "persym/shape.hpp"

namespace persym {

// Outcome of checking one shape's census against the closed-form count.
struct VerdictRecord {
  Shape shape;
  ExactCount census_count;  // full-rank members found by the scan
  ExactCount formula_count; // conjecture_count(shape)
  bool match = false;       // census_count == formula_count
  bool moment_ok = false;   // dual_moment_check on the scanned histogram
  std::string engine;
  std::int64_t elapsed_ms = 0;

  bool passed() const { return match && moment_ok; }
};

struct VerifyOptions {
  EngineKind engine = EngineKind::kPrefixSharing;
  std::size_t shards = 1;
  std::size_t workers = 1;
  std::optional<std::string> checkpoint_path;
};

// Runs the census for `shape` with the chosen engine/sharding, compares the
// top count to the conjectured product, and applies the dual-moment check.
VerdictRecord verify_conjecture(const Shape& shape,
                                const VerifyOptions& options = {},
                                const CensusLimits& limits = CensusLimits::from_env());

// Lossless serialization; counts travel as decimal strings.
nlohmann::json verdict_to_json(const VerdictRecord& record);
VerdictRecord verdict_from_json(const nlohmann::json& doc);

std::string verdict_csv_header();
std::string verdict_csv_row(const VerdictRecord& record);

} // namespace persym
