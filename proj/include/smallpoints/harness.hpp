#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "smallpoints/bounds.hpp"
#include "smallpoints/errors.hpp"
#include "smallpoints/weierstrass.hpp"

namespace smallpoints {

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& reason)
      : Error("ParseError: line " + std::to_string(line) + ": " + reason), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class OffCurvePoint : public Error {
 public:
  OffCurvePoint(const std::string& label, const std::string& point)
      : Error("OffCurvePoint: " + point + " is not on " + label), label_(label), point_(point) {}
  const std::string& label() const { return label_; }
  const std::string& point() const { return point_; }

 private:
  std::string label_, point_;
};

/// One line of a curve file: `label | a1 a2 a3 a4 a6 | (x,y);(x,y)`.
struct CurveRecord {
  std::string label;
  WeierstrassModel model;
  std::vector<CurvePoint> points;  // on `model`
  int line = 0;
};

std::vector<CurveRecord> parse_curve_text(std::string_view text);
/// Throws ParseError (line 0 when the file cannot be read), OffCurvePoint.
std::vector<CurveRecord> parse_curve_file(const std::string& path);

enum class OutputFormat { Json, Tsv };

struct RunConfig {
  double tolerance = 1e-9;
  std::uint64_t factor_bound = kDefaultFactorBound;
  std::uint64_t seed = 0;
  std::set<std::string> checks;  // empty means all
  int parallelism = 1;
  OutputFormat output_format = OutputFormat::Json;
  int sets_per_curve = 4;
  HeightConfig height;
  // Shadow-run corruption hooks.
  PaperConstants constants;
  int delta_shift = 0;

  bool enabled(const std::string& check) const { return checks.empty() || checks.count(check) > 0; }
};

const std::vector<std::string>& all_check_names();
/// Throws InvalidArgument on an unknown name.
std::set<std::string> parse_check_list(std::string_view csv);

struct SuiteResult {
  std::vector<BoundReport> reports;  // sorted by (label, check, place)
  long passed = 0;
  long failed = 0;
  long skipped = 0;
  double max_sigma = 1.0;
};

SuiteResult run_suite(const std::vector<CurveRecord>& records, const RunConfig& config);

/// Point pool used for the lemma checks: torsion, small multiples and sums.
std::vector<CurvePoint> sample_pool(const WeierstrassModel& minimal, std::span<const CurvePoint> torsion,
                                    std::span<const CurvePoint> generators);
/// `count` deterministic subsets of the pool with sizes in [2, 8].
std::vector<std::vector<CurvePoint>> sample_sets(const std::vector<CurvePoint>& pool, int count,
                                                 std::uint64_t seed, const std::string& label);

/// One JSON object (or TSV row) per report, then a summary line.
std::string emit_report(const SuiteResult& result, const RunConfig& config);

}  // namespace smallpoints
