#include "smallpoints/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "smallpoints/errors.hpp"
#include "smallpoints/torus.hpp"

namespace smallpoints {

namespace {

BoundReport finish(BoundReport r, double slack) {
  r.status = r.margin >= -slack ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

void require_rational(const BoundInputs& in) {
  if (in.d != 1) throw InvalidArgument("curve-level checks are over Q only (d = 1)");
}

void check_inputs(const BoundInputs& in) {
  if (in.d < 1) throw InvalidArgument("d must be >= 1");
  if (!(in.sigma >= 1.0)) throw InvalidArgument("sigma must be >= 1");
  if (!(in.log_norm_discriminant >= 0.0)) throw InvalidArgument("log|N(Delta)| must be >= 0");
}

std::string set_context(std::size_t n) { return "N=" + std::to_string(n); }

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

BoundReport upper_report(std::string check, double lhs, double rhs, double slack) {
  BoundReport r;
  r.check = std::move(check);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  return finish(std::move(r), slack);
}

BoundReport lower_report(std::string check, double lhs, double rhs, double slack) {
  BoundReport r;
  r.check = std::move(check);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  return finish(std::move(r), slack);
}

BoundReport equal_report(std::string check, long lhs, long rhs) {
  BoundReport r;
  r.check = std::move(check);
  r.lhs = static_cast<double>(lhs);
  r.rhs = static_cast<double>(rhs);
  r.margin = -std::fabs(r.lhs - r.rhs);
  r.status = lhs == rhs ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

BoundReport skipped_report(std::string check, std::string reason) {
  BoundReport r;
  r.check = std::move(check);
  r.place = "-";
  r.context = std::move(reason);
  r.status = CheckStatus::Skipped;
  return r;
}

double torsion_bound(const BoundInputs& in, const PaperConstants& k) {
  check_inputs(in);
  const double x = in.d * in.sigma * in.sigma;
  return k.c1 * x * std::log(k.c2 * x);
}

double lang_constant(const BoundInputs& in, const PaperConstants& k) {
  check_inputs(in);
  const double d = in.d, s2 = in.sigma * in.sigma;
  const double l = std::log(k.c2 * d * s2);
  return 1.0 / (k.lang_denominator_base * d * d * d * s2 * s2 * s2 * l * l);
}

double small_height_threshold(const BoundInputs& in, const PaperConstants& k) {
  check_inputs(in);
  return in.log_norm_discriminant / (k.threshold_divisor * in.d * in.sigma * in.sigma);
}

double constants_chain_value(const BoundInputs& in, const PaperConstants& k) {
  check_inputs(in);
  const double x = in.d * in.sigma * in.sigma;
  const double a = k.ratineq_a * x;
  return k.pigeonhole * k.tlem_factor * (a * std::log(a) + k.ratineq_b * x);
}

double tlem_bound(double A, double B, const PaperConstants& k) {
  if (!(A > 0) || !(B >= 0)) throw InvalidArgument("tlem needs A > 0, B >= 0");
  return k.tlem_factor * (A * std::log(A) + B);
}

long tlem_brute(double A, double B, long scan_limit) {
  if (!(A > 0) || !(B >= 0)) throw InvalidArgument("tlem needs A > 0, B >= 0");
  long best = 0;
  for (long n = 1; n <= scan_limit; ++n)
    if (static_cast<double>(n) <= A * std::log(static_cast<double>(n)) + B) best = n;
  return best;
}

BoundInputs curve_inputs(const GlobalReductionData& g) {
  return BoundInputs{1, g.sigma, g.log_norm_discriminant};
}

BoundReport verify_ogg(const LocalReductionData& l) {
  BoundReport r = equal_report("ogg", l.delta, l.eta + l.m - 1);
  r.place = l.p.get_str();
  r.context = l.kodaira.name();
  return r;
}

BoundReport verify_local_conductor_ineq(const LocalReductionData& l) {
  if (l.delta < 1) throw GoodReduction("no conductor inequality at good prime " + l.p.get_str());
  const long lhs = static_cast<long>(l.eta) * l.eta * l.c * l.c;
  const long rhs = 16L * l.delta * l.delta;
  BoundReport r;
  r.check = "local_conductor";
  r.place = l.p.get_str();
  r.lhs = static_cast<double>(lhs);
  r.rhs = static_cast<double>(rhs);
  r.margin = static_cast<double>(rhs - lhs);
  r.status = lhs <= rhs ? CheckStatus::Pass : CheckStatus::Fail;
  r.context = l.kodaira.name();
  return r;
}

BoundReport verify_jdisc(const WeierstrassModel& minimal, const LocalReductionData& l) {
  const long lhs = j_pole_order(minimal, l.p);
  const bool equality_expected = l.reduction != ReductionType::Additive;
  BoundReport r;
  r.check = "jdisc";
  r.place = l.p.get_str();
  r.lhs = static_cast<double>(lhs);
  r.rhs = static_cast<double>(l.delta);
  r.margin = static_cast<double>(l.delta - lhs);
  r.status = lhs <= l.delta && ((lhs == l.delta) == equality_expected) ? CheckStatus::Pass
                                                                       : CheckStatus::Fail;
  r.context = to_string(l.reduction);
  return r;
}

BoundReport verify_reduction_rules(const LocalReductionData& l) {
  bool ok;
  double lhs = l.c, rhs;
  switch (l.reduction) {
    case ReductionType::Good:
      ok = l.delta == 0 && l.eta == 0 && l.c == 1;
      rhs = 1;
      break;
    case ReductionType::SplitMultiplicative:
      ok = l.eta == 1 && l.c == l.delta;
      rhs = l.delta;
      break;
    default:
      ok = l.c <= 4;
      rhs = 4;
      break;
  }
  BoundReport r;
  r.check = "reduction_rules";
  r.place = l.p.get_str();
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  r.context = to_string(l.reduction);
  return r;
}

BoundReport verify_jensen(const GlobalReductionData& g, double slack) {
  if (g.local.empty()) return skipped_report("jensen", "everywhere good reduction");
  double lhs = 0.0;
  for (const auto& l : g.local) lhs += static_cast<double>(l.delta) / (l.c * l.c) * log_abs(l.p);
  const double rhs = g.log_norm_conductor * g.log_norm_conductor / (16.0 * g.log_norm_discriminant);
  BoundReport r = lower_report("jensen", lhs, rhs, slack);
  r.place = "-";
  return r;
}

BoundReport verify_constants_chain(const BoundInputs& in, const PaperConstants& k, double slack) {
  const double chain = constants_chain_value(in, k);
  const double bound = torsion_bound(in, k);
  BoundReport r = upper_report("constants_chain", chain, bound, slack * std::max(1.0, bound));
  r.place = "-";
  std::ostringstream os;
  os << "d=" << in.d << " sigma=" << in.sigma;
  r.context = os.str();
  return r;
}

BoundReport verify_theorem1(const CurveContext& c, const PaperConstants& k, double slack) {
  require_rational(c.inputs);
  BoundReport r = upper_report("theorem1", static_cast<double>(c.torsion->order),
                               torsion_bound(c.inputs, k), slack);
  r.place = "-";
  r.context = c.torsion->structure_name();
  return r;
}

BoundReport verify_theorem2(const CurveContext& c, std::span<const CurvePoint> points,
                            const PaperConstants& k, double slack, double tol) {
  require_rational(c.inputs);
  if (points.empty()) return skipped_report("theorem2", "no non-torsion points supplied");
  double min_h = std::numeric_limits<double>::infinity();
  for (const auto& P : points) {
    const double h = c.heights->canonical_height(P);
    if (h <= 10.0 * tol) throw TorsionPointSupplied(P.to_string() + " has hhat " + std::to_string(h));
    min_h = std::min(min_h, h);
  }
  const double rhs = lang_constant(c.inputs, k) * c.inputs.log_norm_discriminant;
  BoundReport r = lower_report("theorem2", min_h, rhs, slack);
  r.place = "-";
  r.context = "points=" + std::to_string(points.size());
  return r;
}

BoundReport verify_prop41(const CurveContext& c, std::span<const CurvePoint> points,
                          const PaperConstants& k, double slack) {
  require_rational(c.inputs);
  const double threshold = small_height_threshold(c.inputs, k);
  std::set<CurvePoint> all(c.torsion->points.begin(), c.torsion->points.end());
  all.insert(points.begin(), points.end());
  long small = 0;
  for (const auto& P : all)
    if (c.heights->canonical_height(P) <= threshold + slack) ++small;
  BoundReport r = upper_report("prop41", static_cast<double>(small), torsion_bound(c.inputs, k), slack);
  r.place = "-";
  r.context = "candidates=" + std::to_string(all.size());
  return r;
}

BoundReport verify_lemma31(const CurveContext& c, std::span<const CurvePoint> Z,
                           const LocalReductionData& l, double slack) {
  const double n = static_cast<double>(Z.size());
  const double lhs = c.heights->lambda_sum(Z, Place::finite(l.p));
  const double rhs = (1.0 / (static_cast<double>(l.c) * l.c) - 1.0 / n) / 12.0 * l.delta * log_abs(l.p);
  BoundReport r = lower_report("lemma31", lhs, rhs, slack);
  r.place = l.p.get_str();
  r.context = set_context(Z.size());
  return r;
}

BoundReport verify_lemma32(const CurveContext& c, std::span<const CurvePoint> Z,
                           const PaperConstants& k, double slack) {
  const double n = static_cast<double>(Z.size());
  const double lhs = c.heights->lambda_sum(Z, Place::archimedean());
  const auto& j = compute_invariants(c.heights->model()).j;
  const double log_plus_j = *j == 0 ? 0.0 : std::max(0.0, log_abs(*j));
  const double rhs = -k.elkies_log * std::log(n) / n - k.elkies_j * log_plus_j / n - k.elkies_const / n;
  BoundReport r = lower_report("lemma32", lhs, rhs, slack);
  r.place = "inf";
  r.context = set_context(Z.size());
  return r;
}

BoundReport verify_nonarch_sum(const CurveContext& c, std::span<const CurvePoint> Z, double slack) {
  const double n = static_cast<double>(Z.size());
  double lhs = 0.0;
  for (const auto& place : c.heights->difference_support(Z))
    if (!place.is_archimedean()) lhs += c.heights->lambda_sum(Z, place);
  const double s2 = c.inputs.sigma * c.inputs.sigma;
  const double rhs = (1.0 / (16.0 * s2) - 1.0 / n) / 12.0 * c.inputs.log_norm_discriminant;
  BoundReport r = lower_report("nonarch_sum", lhs, rhs, slack);
  r.place = "-";
  r.context = set_context(Z.size());
  return r;
}

BoundReport verify_parallelogram(const CurveContext& c, std::span<const CurvePoint> Z, double slack) {
  const double n = static_cast<double>(Z.size());
  double hsum = 0.0;
  for (const auto& P : Z) hsum += c.heights->canonical_height(P);
  BoundReport r = upper_report("parallelogram", c.heights->height_disc_sum(Z), 4.0 / n * hsum, slack);
  r.place = "-";
  r.context = set_context(Z.size());
  return r;
}

BoundReport verify_decomposition(const CurveContext& c, std::span<const CurvePoint> Z, double slack) {
  double local = 0.0;
  for (const auto& place : c.heights->difference_support(Z)) local += c.heights->lambda_sum(Z, place);
  const double global = c.heights->height_disc_sum(Z);
  BoundReport r;
  r.check = "decomposition";
  r.place = "-";
  r.lhs = global;
  r.rhs = local;
  r.margin = -std::fabs(global - local);
  r.context = set_context(Z.size());
  return finish(std::move(r), slack);
}

BoundReport verify_hindry_torus(std::complex<double> tau, long sample_count, std::uint64_t seed,
                                const PaperConstants& k, double slack, const HeightConfig& config) {
  if (sample_count < 1) throw InvalidArgument("sample_count must be >= 1");
  const std::complex<double> reduced = reduce_tau(tau);
  if (std::abs(reduced - tau) > 1e-12) throw InvalidArgument("tau is not in the fundamental domain");
  const double rhs = k.torus_factor * std::max(1.0, log_abs_j_tau(tau, config));
  std::mt19937_64 rng(seed);
  auto uniform = [&] {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return (2.0 * u - 1.0) * k.torus_radius;
  };
  double min_lambda = std::numeric_limits<double>::infinity();
  for (long i = 0; i < sample_count; ++i) {
    double r1 = uniform(), r2 = uniform();
    if (r1 == 0.0 && r2 == 0.0) r1 = k.torus_radius / 2;
    min_lambda = std::min(min_lambda, torus_neron(TorusPoint{r1, r2, tau}, config));
  }
  BoundReport r = lower_report("hindry_torus", min_lambda, rhs, slack);
  r.place = "inf";
  std::ostringstream os;
  os.precision(17);
  os << "tau=" << tau.real() << "," << tau.imag() << " samples=" << sample_count << " seed=" << seed;
  r.context = os.str();
  return r;
}

}  // namespace smallpoints
