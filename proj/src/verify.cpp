#include "persym/verify.hpp"

#include <chrono>
#include <sstream>

#include "persym/formulas.hpp"

namespace persym {

VerdictRecord verify_conjecture(const Shape& shape, const VerifyOptions& options,
                                const CensusLimits& limits) {
  ParallelOptions popts;
  popts.shards = options.shards;
  popts.workers = options.workers;
  popts.engine = options.engine;
  popts.checkpoint_path = options.checkpoint_path;

  const auto begin = std::chrono::steady_clock::now();
  const RankHistogram hist = census_parallel(shape, popts, limits);
  const auto end = std::chrono::steady_clock::now();

  VerdictRecord record{shape};
  record.census_count = hist.count(shape.total_rows());
  record.formula_count = conjecture_count(shape);
  record.match = record.census_count == record.formula_count;
  record.moment_ok = dual_moment_check(shape, hist);
  record.engine = std::string(engine_name(options.engine));
  record.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(end - begin).count();
  return record;
}

nlohmann::json verdict_to_json(const VerdictRecord& record) {
  return nlohmann::json{
      {"shape", record.shape.to_string()},
      {"free_bits", record.shape.free_bits()},
      {"delta", record.shape.total_rows()},
      {"k", record.shape.cols()},
      {"census_count", record.census_count.str()},
      {"formula_count", record.formula_count.str()},
      {"match", record.match},
      {"moment_ok", record.moment_ok},
      {"engine", record.engine},
      {"elapsed_ms", record.elapsed_ms},
  };
}

VerdictRecord verdict_from_json(const nlohmann::json& doc) {
  VerdictRecord record{Shape::parse(doc.at("shape").get<std::string>())};
  record.census_count = ExactCount(doc.at("census_count").get<std::string>());
  record.formula_count = ExactCount(doc.at("formula_count").get<std::string>());
  record.match = doc.at("match").get<bool>();
  record.moment_ok = doc.at("moment_ok").get<bool>();
  record.engine = doc.at("engine").get<std::string>();
  record.elapsed_ms = doc.at("elapsed_ms").get<std::int64_t>();
  return record;
}

std::string verdict_csv_header() {
  return "shape,F,delta,k,census_count,formula_count,match,moment_ok,engine,"
         "elapsed_ms";
}

std::string verdict_csv_row(const VerdictRecord& record) {
  std::ostringstream out;
  out << record.shape.to_string() << ',' << record.shape.free_bits() << ','
      << record.shape.total_rows() << ',' << record.shape.cols() << ','
      << record.census_count.str() << ',' << record.formula_count.str() << ','
      << (record.match ? "true" : "false") << ','
      << (record.moment_ok ? "true" : "false") << ',' << record.engine << ','
      << record.elapsed_ms;
  return out.str();
}

} // namespace persym
