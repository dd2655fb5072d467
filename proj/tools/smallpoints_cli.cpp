#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "smallpoints/bounds.hpp"
#include "smallpoints/harness.hpp"
#include "smallpoints/torus.hpp"

using namespace smallpoints;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Options {
  double tol = 1e-9;
  std::uint64_t factor_bound = kDefaultFactorBound;
  std::uint64_t seed = 0;
  std::string checks;
  int parallel = 1;
  std::string format = "json";
  std::string out;
  std::string file;
  // bounds
  int d = 1;
  double sigma = 1.0;
  std::optional<double> log_norm_delta;
  // torus-check
  std::string tau;
  long samples = 10000;
};

RunConfig run_config(const Options& o) {
  RunConfig c;
  c.tolerance = o.tol;
  c.factor_bound = o.factor_bound;
  c.seed = o.seed;
  c.checks = parse_check_list(o.checks);
  c.parallelism = o.parallel;
  c.output_format = o.format == "tsv" ? OutputFormat::Tsv : OutputFormat::Json;
  return c;
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + o.out);
  f << text;
}

std::string num(double v) { return nlohmann::json(v).dump(); }

std::string analyze(const Options& o) {
  const auto records = parse_curve_file(o.file);
  const bool tsv = o.format == "tsv";
  std::ostringstream os;
  if (tsv) os << "label\tp\tdelta\teta\tm\tc\tkodaira\treduction\tsigma\n";
  for (const auto& rec : records) {
    try {
      const GlobalReductionData g = global_data(rec.model, o.factor_bound);
      const TorsionSubgroup t = torsion_subgroup(g.minimal.model, o.factor_bound);
      if (tsv) {
        for (const auto& l : g.local)
          os << rec.label << '\t' << l.p << '\t' << l.delta << '\t' << l.eta << '\t' << l.m << '\t' << l.c
             << '\t' << l.kodaira.name() << '\t' << to_string(l.reduction) << '\t' << num(g.sigma) << '\n';
        continue;
      }
      ojson j;
      j["label"] = rec.label;
      j["input"] = rec.model.to_string();
      j["minimal"] = g.minimal.model.to_string();
      j["discriminant"] = to_string(g.minimal.discriminant);
      j["conductor"] = to_string(g.conductor());
      j["sigma"] = g.sigma;
      j["torsion"] = t.structure_name();
      j["primes"] = ojson::array();
      for (const auto& l : g.local) {
        ojson p;
        p["p"] = to_string(l.p);
        p["delta"] = l.delta;
        p["eta"] = l.eta;
        p["m"] = l.m;
        p["c"] = l.c;
        p["kodaira"] = l.kodaira.name();
        p["reduction"] = to_string(l.reduction);
        j["primes"].push_back(p);
      }
      os << j.dump() << '\n';
    } catch (const Error& e) {
      if (tsv) os << "# " << rec.label << " skipped: " << e.what() << '\n';
      else os << ojson{{"label", rec.label}, {"status", "skipped"}, {"error", e.what()}}.dump() << '\n';
    }
  }
  return os.str();
}

std::string heights(const Options& o) {
  const auto records = parse_curve_file(o.file);
  const bool tsv = o.format == "tsv";
  std::ostringstream os;
  if (tsv) os << "label\tpoint\tplace\tlambda\tr\n";
  for (const auto& rec : records) {
    try {
      const CurveHeights h(global_data(rec.model, o.factor_bound));
      for (const auto& P : rec.points) {
        const CurvePoint Q = h.to_minimal(P);
        const auto parts = h.breakdown(Q);
        const double hh = h.canonical_height(Q);
        if (tsv) {
          os << rec.label << '\t' << P.to_string() << "\thhat\t" << num(hh) << "\t\n";
          for (const auto& b : parts)
            os << rec.label << '\t' << P.to_string() << '\t' << b.place.name() << '\t' << num(b.lambda) << '\t'
               << (b.r_value ? to_string(*b.r_value) : "") << '\n';
          continue;
        }
        ojson j;
        j["label"] = rec.label;
        j["point"] = P.to_string();
        j["minimal_point"] = Q.to_string();
        j["hhat"] = hh;
        j["places"] = ojson::array();
        for (const auto& b : parts) {
          ojson p;
          p["place"] = b.place.name();
          p["lambda"] = b.lambda;
          if (b.r_value) p["r"] = to_string(*b.r_value);
          j["places"].push_back(p);
        }
        os << j.dump() << '\n';
      }
    } catch (const Error& e) {
      if (tsv) os << "# " << rec.label << " skipped: " << e.what() << '\n';
      else os << ojson{{"label", rec.label}, {"status", "skipped"}, {"error", e.what()}}.dump() << '\n';
    }
  }
  return os.str();
}

std::string bounds(const Options& o) {
  const BoundInputs in{o.d, o.sigma, o.log_norm_delta.value_or(0.0)};
  ojson j;
  j["d"] = o.d;
  j["sigma"] = o.sigma;
  j["torsion_bound"] = torsion_bound(in);
  j["lang_constant"] = lang_constant(in);
  if (o.log_norm_delta) {
    j["log_norm_delta"] = *o.log_norm_delta;
    j["threshold"] = small_height_threshold(in);
  }
  if (o.format == "tsv") {
    std::ostringstream os;
    for (const auto& [k, v] : j.items()) os << k << '\t' << v.dump() << '\n';
    return os.str();
  }
  return j.dump() + '\n';
}

std::complex<double> parse_tau(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw InvalidArgument("--tau expects RE,IM");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw InvalidArgument("--tau expects RE,IM");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small points on elliptic curves: local data, heights and bound checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--tol", o.tol, "Slack for real comparisons");
  app.add_option("--factor-bound", o.factor_bound, "Trial-division bound");
  app.add_option("--seed", o.seed, "Sampling seed");
  app.add_option("--checks", o.checks, "Comma-separated check names (default all)");
  app.add_option("--parallel", o.parallel, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--out", o.out, "Write output to PATH");

  auto* an = app.add_subcommand("analyze", "Local data and Szpiro ratio");
  an->add_option("file", o.file)->required();
  auto* he = app.add_subcommand("heights", "Canonical heights with per-place breakdown");
  he->add_option("file", o.file)->required();
  auto* ve = app.add_subcommand("verify", "Run the inequality suite");
  ve->add_option("file", o.file)->required();
  auto* bo = app.add_subcommand("bounds", "Evaluate the explicit bounds");
  bo->add_option("--d", o.d)->required();
  bo->add_option("--sigma", o.sigma)->required();
  bo->add_option("--log-norm-delta", o.log_norm_delta);
  auto* to = app.add_subcommand("torus-check", "Seeded lower-bound check on the complex torus");
  to->add_option("--tau", o.tau)->required();
  to->add_option("--samples", o.samples)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*an) {
      write_output(o, analyze(o));
    } else if (*he) {
      write_output(o, heights(o));
    } else if (*ve) {
      const RunConfig cfg = run_config(o);
      const SuiteResult r = run_suite(parse_curve_file(o.file), cfg);
      write_output(o, emit_report(r, cfg));
      return r.failed > 0 ? kExitFail : 0;
    } else if (*bo) {
      write_output(o, bounds(o));
    } else if (*to) {
      const RunConfig cfg = run_config(o);
      const std::complex<double> tau = reduce_tau(parse_tau(o.tau));
      SuiteResult r;
      BoundReport rep = verify_hindry_torus(tau, o.samples, o.seed, {}, o.tol, cfg.height);
      rep.label = "tau=" + num(tau.real()) + "," + num(tau.imag());
      rep.check = "torus";
      rep.place = "inf";
      (rep.status == CheckStatus::Pass ? r.passed : r.failed) = 1;
      r.reports.push_back(rep);
      write_output(o, emit_report(r, cfg));
      return r.failed > 0 ? kExitFail : 0;
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitInput;
  } catch (const OffCurvePoint& e) {
    std::cerr << e.what() << '\n';
    return kExitInput;
  } catch (const InvalidArgument& e) {
    std::cerr << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
