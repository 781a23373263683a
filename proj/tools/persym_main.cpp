// Command-line front end: formula evaluation, census runs, conjecture
// verification, grid sweeps, and the strided construction demo.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "persym/census.hpp"
#include "persym/family.hpp"
#include "persym/formulas.hpp"
#include "persym/verify.hpp"

using namespace persym;
using nlohmann::json;

namespace {

constexpr int kExitVerdictFailure = 1;
constexpr int kExitRefused = 2;

struct CommonOpts {
  std::string engine = "prefix";
  std::size_t workers = 1;
  std::size_t shards = 1;
  std::string checkpoint;
  std::string format = "table";
  bool big = false;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_engine = true) {
  if (with_engine) {
    cmd->add_option("--engine", opts.engine, "Counting engine")
        ->check(CLI::IsMember({"naive", "prefix"}));
    cmd->add_option("--workers", opts.workers, "Worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--shards", opts.shards, "Shard count (power of two)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--checkpoint", opts.checkpoint,
                    "Persist completed shards here and resume from them");
    cmd->add_flag("--big", opts.big, "Allow parameter spaces past the limit");
  }
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd->add_option("--out", opts.out, "Write output to a file instead of stdout");
}

CensusLimits limits_for(const CommonOpts& opts) {
  CensusLimits limits = CensusLimits::from_env();
  limits.allow_big = opts.big;
  return limits;
}

VerifyOptions verify_options(const CommonOpts& opts) {
  VerifyOptions vo;
  vo.engine = parse_engine(opts.engine);
  vo.workers = opts.workers;
  vo.shards = opts.shards;
  if (!opts.checkpoint.empty()) vo.checkpoint_path = opts.checkpoint;
  return vo;
}

// All output funnels through here so --out swaps the stream.
void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opts.out, std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write " + opts.out);
  file << text;
}

std::string power_form(const ExactCount& value) {
  if (value == 0) return "0";
  const OddPowerSplit split = split_odd_power(value);
  std::ostringstream out;
  if (split.exponent == 0) {
    out << split.odd.str();
  } else if (split.odd == 1) {
    out << "2^" << split.exponent;
  } else {
    out << split.odd.str() << " * 2^" << split.exponent;
  }
  return out.str();
}

// Bounds of a sweep grid;  heights and free bits are optional, the standing
// constraint delta <= k already bounds them.
struct GridSpec {
  std::size_t max_m = 0;
  std::size_t max_k = 0;
  std::size_t max_height = 0; // 0 = unbounded
  std::size_t max_free = 0;   // 0 = unbounded
};

GridSpec parse_grid(const std::string& text) {
  GridSpec grid;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto pos = token.find("<=");
    if (pos == std::string::npos) {
      throw CLI::ValidationError("--grid", "expected name<=value terms, got '" +
                                               token + "'");
    }
    const std::string name = token.substr(0, pos);
    std::size_t value = 0;
    try {
      value = std::stoull(token.substr(pos + 2));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--grid", "bad bound in '" + token + "'");
    }
    if (value == 0) throw CLI::ValidationError("--grid", "bounds must be >= 1");
    if (name == "m") grid.max_m = value;
    else if (name == "s") grid.max_height = value;
    else if (name == "k") grid.max_k = value;
    else if (name == "F") grid.max_free = value;
    else {
      throw CLI::ValidationError("--grid", "unknown bound '" + name +
                                               "' (use m, s, k, F)");
    }
  }
  if (grid.max_m == 0 || grid.max_k == 0) {
    throw CLI::ValidationError("--grid", "need at least m<=... and k<=...");
  }
  return grid;
}

void collect_shapes(const GridSpec& grid, std::size_t m, std::size_t k,
                    std::vector<std::size_t>& heights, std::size_t delta,
                    std::vector<Shape>& out) {
  if (heights.size() == m) {
    Shape shape(heights, k);
    if (grid.max_free == 0 || shape.free_bits() <= grid.max_free) {
      out.push_back(std::move(shape));
    }
    return;
  }
  const std::size_t lo = heights.empty() ? 1 : heights.back();
  const std::size_t left = m - heights.size();
  for (std::size_t s = lo; ; ++s) {
    if (grid.max_height != 0 && s > grid.max_height) break;
    // Remaining blocks are at least this tall, so delta would overflow k.
    if (delta + s * left > k) break;
    heights.push_back(s);
    collect_shapes(grid, m, k, heights, delta + s, out);
    heights.pop_back();
  }
}

std::vector<Shape> grid_shapes(const GridSpec& grid) {
  std::vector<Shape> shapes;
  for (std::size_t m = 1; m <= grid.max_m; ++m) {
    for (std::size_t k = m; k <= grid.max_k; ++k) {
      std::vector<std::size_t> heights;
      collect_shapes(grid, m, k, heights, 0, shapes);
    }
  }
  return shapes;
}

std::string verdict_table(const std::vector<VerdictRecord>& records) {
  std::size_t shape_w = 5, census_w = 6, formula_w = 7;
  for (const auto& r : records) {
    shape_w = std::max(shape_w, r.shape.to_string().size());
    census_w = std::max(census_w, r.census_count.str().size());
    formula_w = std::max(formula_w, r.formula_count.str().size());
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(shape_w) + 2) << "shape"
      << std::right << std::setw(4) << "F" << std::setw(7) << "delta"
      << std::setw(4) << "k" << "  " << std::left
      << std::setw(static_cast<int>(census_w) + 2) << "census"
      << std::setw(static_cast<int>(formula_w) + 2) << "formula"
      << std::setw(7) << "match" << std::setw(8) << "moment"
      << std::setw(8) << "engine" << std::right << std::setw(8) << "ms"
      << "\n";
  std::size_t failures = 0;
  for (const auto& r : records) {
    if (!r.passed()) ++failures;
    out << std::left << std::setw(static_cast<int>(shape_w) + 2)
        << r.shape.to_string() << std::right << std::setw(4)
        << r.shape.free_bits() << std::setw(7) << r.shape.total_rows()
        << std::setw(4) << r.shape.cols() << "  " << std::left
        << std::setw(static_cast<int>(census_w) + 2) << r.census_count.str()
        << std::setw(static_cast<int>(formula_w) + 2) << r.formula_count.str()
        << std::setw(7) << (r.match ? "yes" : "NO")
        << std::setw(8) << (r.moment_ok ? "yes" : "NO")
        << std::setw(8) << r.engine << std::right << std::setw(8)
        << r.elapsed_ms << "\n";
  }
  if (failures == 0) {
    out << records.size() << " shape" << (records.size() == 1 ? "" : "s")
        << ", all verified\n";
  } else {
    out << failures << " of " << records.size() << " shapes FAILED\n";
  }
  return out.str();
}

std::string render_verdicts(const CommonOpts& opts,
                            const std::vector<VerdictRecord>& records) {
  if (opts.format == "json") {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(verdict_to_json(r));
    return arr.dump(1) + "\n";
  }
  if (opts.format == "csv") {
    std::ostringstream out;
    out << verdict_csv_header() << "\n";
    for (const auto& r : records) out << verdict_csv_row(r) << "\n";
    return out.str();
  }
  return verdict_table(records);
}

int run_verdicts(const CommonOpts& opts, const std::vector<Shape>& shapes) {
  if (!opts.checkpoint.empty() && shapes.size() != 1) {
    throw CLI::ValidationError("--checkpoint", "needs exactly one shape");
  }
  std::vector<VerdictRecord> records;
  records.reserve(shapes.size());
  for (const Shape& shape : shapes) {
    records.push_back(verify_conjecture(shape, verify_options(opts),
                                        limits_for(opts)));
  }
  emit(opts, render_verdicts(opts, records));
  const bool ok = std::all_of(records.begin(), records.end(),
                              [](const VerdictRecord& r) { return r.passed(); });
  return ok ? 0 : kExitVerdictFailure;
}

int cmd_formula(const CommonOpts& opts, const std::vector<std::string>& args) {
  Shape shape = args.size() == 3
                    ? example_shape(std::stoull(args[0]), std::stoull(args[1]),
                                    std::stoull(args[2]))
                    : Shape::parse(args.at(0));
  const ExactCount value = conjecture_count(shape);
  const bool square = shape.total_rows() == shape.cols();
  std::ostringstream text;
  if (opts.format == "json") {
    json doc{{"shape", shape.to_string()},
             {"count", value.str()},
             {"power_form", power_form(value)}};
    if (square) {
      doc["invertible_fraction"] =
          invertible_fraction(shape.block_count()).to_string();
    }
    text << doc.dump(1) << "\n";
  } else {
    text << "Gamma(" << shape.to_string() << ") = " << value.str();
    const std::string pf = power_form(value);
    if (pf != value.str()) text << " = " << pf;
    text << "\n";
    if (square) {
      text << "invertible fraction at delta = k: "
           << invertible_fraction(shape.block_count()).to_string() << "\n";
    }
  }
  emit(opts, text.str());
  return 0;
}

int cmd_census(const CommonOpts& opts, const std::string& shape_text) {
  const Shape shape = Shape::parse(shape_text);
  ParallelOptions popts;
  popts.shards = opts.shards;
  popts.workers = opts.workers;
  popts.engine = parse_engine(opts.engine);
  if (!opts.checkpoint.empty()) popts.checkpoint_path = opts.checkpoint;

  const auto begin = std::chrono::steady_clock::now();
  const RankHistogram hist = census_parallel(shape, popts, limits_for(opts));
  const auto end = std::chrono::steady_clock::now();
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(end - begin).count();

  const bool moment = dual_moment_check(shape, hist);
  const FamilyCard card = family_card(shape);

  std::ostringstream text;
  if (opts.format == "json") {
    json counts = json::array();
    for (const ExactCount& c : hist.counts()) counts.push_back(c.str());
    json doc{{"shape", shape.to_string()},
             {"case", std::string(family_case_name(card.family_case))},
             {"free_bits", shape.free_bits()},
             {"total", card.total_matrices.str()},
             {"counts", std::move(counts)},
             {"moment_ok", moment},
             {"engine", opts.engine},
             {"elapsed_ms", ms}};
    text << doc.dump(1) << "\n";
  } else if (opts.format == "csv") {
    text << "rank,count\n";
    for (std::size_t r = 0; r <= hist.max_rank(); ++r) {
      text << r << ',' << hist.count(r).str() << "\n";
    }
  } else {
    text << "shape " << shape.to_string() << "  (case "
         << family_case_name(card.family_case) << ", " << shape.free_bits()
         << " free bits, " << card.total_matrices.str() << " members)\n";
    for (std::size_t r = 0; r <= hist.max_rank(); ++r) {
      text << "rank " << r << ": " << hist.count(r).str() << "\n";
    }
    text << "total " << hist.total().str() << " = 2^" << shape.free_bits()
         << " (conserved)\n";
    text << "dual moment: " << (moment ? "ok" : "MISMATCH") << "\n";
    text << "engine " << opts.engine << ", " << ms << " ms\n";
  }
  emit(opts, text.str());
  return moment ? 0 : kExitVerdictFailure;
}

std::string index_layout(std::size_t m, std::size_t delta, std::size_t k) {
  // Symbolic display of the k x delta strided matrix: entry (r, c) holds
  // parameter a<(r-1)m+c>.
  std::size_t width = std::to_string((k - 1) * m + delta).size() + 1;
  std::ostringstream out;
  for (std::size_t r = 1; r <= k; ++r) {
    for (std::size_t c = 1; c <= delta; ++c) {
      out << " a" << std::left << std::setw(static_cast<int>(width))
          << (r - 1) * m + c;
    }
    out << "\n";
  }
  return out.str();
}

int cmd_example(const CommonOpts& opts, std::size_t m, std::size_t delta,
                std::size_t k) {
  const Shape shape = example_shape(m, delta, k);
  const ExactCount formula = conjecture_count(shape);
  const CensusLimits limits = limits_for(opts);
  const std::size_t raw_bits = delta + (k - 1) * m;

  bool ran = false;
  bool agree = false;
  std::string skip_reason;
  ExactCount via_count = 0, direct_count = 0;
  try {
    limits.check(shape);
    RankHistogram via(shape);
    for (std::uint64_t raw = 0; raw < (std::uint64_t{1} << raw_bits); ++raw) {
      gf2::BitVector bits(raw_bits, raw);
      via.add(gf2::rank(rearrange_transpose(
                  build_example_matrix(m, delta, k, bits), m)),
              1);
    }
    via.check_conservation();
    const RankHistogram direct = census_prefix_sharing(shape, limits);
    ran = true;
    agree = via == direct;
    via_count = via.count(delta);
    direct_count = direct.count(delta);
  } catch (const CensusRefused& e) {
    skip_reason = e.what();
  }

  std::ostringstream text;
  if (opts.format == "json") {
    json doc{{"m", m},
             {"delta", delta},
             {"k", k},
             {"shape", shape.to_string()},
             {"formula", formula.str()},
             {"power_form", power_form(formula)},
             {"census_ran", ran}};
    if (ran) {
      doc["agree"] = agree;
      doc["census_via_rearrange"] = via_count.str();
      doc["census_direct"] = direct_count.str();
    } else {
      doc["skip_reason"] = skip_reason;
    }
    text << doc.dump(1) << "\n";
  } else {
    text << "strided matrix M(" << m << "," << delta << "," << k << "), " << k
         << " x " << delta << ", parameters a1..a" << raw_bits << ":\n"
         << index_layout(m, delta, k);
    text << "rearranged transpose lives in family " << shape.to_string()
         << "\n";
    text << "conjectured full-rank count: " << formula.str();
    const std::string pf = power_form(formula);
    if (pf != formula.str()) text << " = " << pf;
    text << "\n";
    if (ran) {
      text << "census via rearranged construction: " << via_count.str() << "\n";
      text << "census of the family directly:      " << direct_count.str()
           << "\n";
      text << (agree ? "the two censuses agree\n"
                     : "CENSUS MISMATCH between the two routes\n");
    } else {
      text << "census skipped: " << skip_reason << "\n";
    }
  }
  emit(opts, text.str());
  if (!ran) return 0;
  return agree ? 0 : kExitVerdictFailure;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rank censuses and closed-form checks for stacked "
               "window-block matrices over GF(2)"};
  app.require_subcommand(1);

  CommonOpts formula_opts;
  std::vector<std::string> formula_args;
  CLI::App* formula = app.add_subcommand(
      "formula", "Evaluate the full-rank count formula for a shape");
  formula->add_option("spec", formula_args,
                      "Shape like [2,3,3]x10, or a triple m delta k")
      ->expected(1, 3);
  add_common(formula, formula_opts, false);

  CommonOpts verify_opts;
  std::vector<std::string> verify_shapes;
  std::string verify_grid;
  CLI::App* verify =
      app.add_subcommand("verify", "Census shapes and compare to the formula");
  verify->add_option("shapes", verify_shapes, "Shapes like [2,2]x4");
  verify->add_option("--grid", verify_grid,
                     "Verify every shape within bounds, e.g. m<=3,s<=3,k<=6");
  add_common(verify, verify_opts);

  CommonOpts census_opts;
  std::string census_shape;
  CLI::App* census =
      app.add_subcommand("census", "Full rank histogram of one shape");
  census->add_option("shape", census_shape, "Shape like [1,1]x2")->required();
  add_common(census, census_opts);

  CommonOpts example_opts;
  std::vector<std::size_t> example_args;
  CLI::App* example = app.add_subcommand(
      "example", "Strided construction demo for a given m delta k");
  example->add_option("mdk", example_args, "m delta k")->expected(3);
  add_common(example, example_opts);

  CommonOpts sweep_opts;
  std::string sweep_grid;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Verify every shape in a bounded grid");
  sweep->add_option("--grid", sweep_grid, "Bounds like m<=3,s<=3,k<=6,F<=22")
      ->required();
  add_common(sweep, sweep_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Collapse CLI11's per-error exit codes: anything but --help/--version
    // is a usage problem and exits like a refused run.
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitRefused;
  }

  try {
    if (formula->parsed()) {
      if (formula_args.size() == 2) {
        std::cerr << "formula takes one shape or three integers\n";
        return kExitRefused;
      }
      return cmd_formula(formula_opts, formula_args);
    }
    if (verify->parsed()) {
      std::vector<Shape> shapes;
      for (const std::string& s : verify_shapes) shapes.push_back(Shape::parse(s));
      if (!verify_grid.empty()) {
        for (Shape& s : grid_shapes(parse_grid(verify_grid))) {
          shapes.push_back(std::move(s));
        }
      }
      if (shapes.empty()) {
        std::cerr << "verify needs shapes or --grid\n";
        return kExitRefused;
      }
      return run_verdicts(verify_opts, shapes);
    }
    if (census->parsed()) return cmd_census(census_opts, census_shape);
    if (example->parsed()) {
      return cmd_example(example_opts, example_args[0], example_args[1],
                         example_args[2]);
    }
    if (sweep->parsed()) {
      return run_verdicts(sweep_opts, grid_shapes(parse_grid(sweep_grid)));
    }
  } catch (const CensusRefused& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const CLI::Error& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRefused;
  }
  return 0;
}
