#include <sstream>

#include "json.hpp"

#include "smallpoints/harness.hpp"

namespace smallpoints {

namespace {

std::string num(double v) {
  // Same shortest round-trip text in both formats.
  return nlohmann::json(v).dump();
}

}  // namespace

std::string emit_report(const SuiteResult& result, const RunConfig& config) {
  std::ostringstream os;
  if (config.output_format == OutputFormat::Json) {
    for (const auto& r : result.reports) {
      nlohmann::ordered_json j;
      j["label"] = r.label;
      j["check"] = r.check;
      j["place"] = r.place;
      j["lhs"] = r.lhs;
      j["rhs"] = r.rhs;
      j["margin"] = r.margin;
      j["status"] = to_string(r.status);
      j["context"] = r.context;
      os << j.dump() << '\n';
    }
    nlohmann::ordered_json s;
    s["summary"] = true;
    s["pass"] = result.passed;
    s["fail"] = result.failed;
    s["skipped"] = result.skipped;
    s["max_sigma"] = result.max_sigma;
    os << s.dump() << '\n';
  } else {
    os << "label\tcheck\tplace\tlhs\trhs\tmargin\tstatus\tcontext\n";
    for (const auto& r : result.reports)
      os << r.label << '\t' << r.check << '\t' << r.place << '\t' << num(r.lhs) << '\t' << num(r.rhs)
         << '\t' << num(r.margin) << '\t' << to_string(r.status) << '\t' << r.context << '\n';
    os << "# summary\tpass=" << result.passed << "\tfail=" << result.failed
       << "\tskipped=" << result.skipped << "\tmax_sigma=" << num(result.max_sigma) << '\n';
  }
  return os.str();
}

}  // namespace smallpoints
