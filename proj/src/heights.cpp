#include "smallpoints/heights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "smallpoints/errors.hpp"

namespace smallpoints {

namespace {

constexpr long kInf = std::numeric_limits<long>::max() / 4;

long ord_or_inf(const BigRational& q, const BigInt& p) { return q == 0 ? kInf : valuation(q, p); }

// log|a|_p = -ord_p(a) log p.
double log_abs_p(const BigRational& a, const BigInt& p) {
  if (a == 0) throw InternalError("log|0|_p");
  return -static_cast<double>(valuation(a, p)) * log_abs(p);
}

double e0_height(const CurvePoint& P, const LocalReductionData& local) {
  const double lp = log_abs(local.p);
  const long ox = ord_or_inf(P.x(), local.p);
  return 0.5 * static_cast<double>(std::max(0L, -ox)) * lp + local.delta * lp / 12.0;
}

struct RealCurve {
  long double b2, b4, b6, b8;
  long double log_disc;
  long double bound_h;  // max(4, |b2|, 2|b4|, 2|b6|, |b8|)
};

// Series on t = 1/x (or 1/(x+1)); returns the mu of the doubling series
// such that lambda = mu/2 - log|D|/12. `log_t_inv` is log|x| (or log|x+1|).
std::optional<long double> real_series(const RealCurve& c, long double t, long double log_t_inv,
                                       bool shifted, double tol) {
  // beta = 1: t = 1/x with the curve's b's; beta = 0: t = 1/(x+1) with the
  // b's of the model shifted by x -> x - 1.
  const long double sb2 = c.b2 - 12;
  const long double sb4 = c.b4 - c.b2 + 6;
  const long double sb6 = c.b6 - 2 * c.b4 + c.b2 - 4;
  const long double sb8 = c.b8 - 3 * c.b6 + 3 * c.b4 - c.b2 + 3;
  bool beta = !shifted;
  long double mu = log_t_inv;
  long double f = 1.0L;
  // Every summand is bounded by tail_scale in absolute value.
  const long double tail_scale = 3.0L * (std::log(c.bound_h) + 5.0L);
  for (int n = 0; n < 200; ++n) {
    const long double b2 = beta ? c.b2 : sb2, b4 = beta ? c.b4 : sb4;
    const long double b6 = beta ? c.b6 : sb6, b8 = beta ? c.b8 : sb8;
    const long double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    const long double w = b6 * t4 + 2 * b4 * t3 + b2 * t2 + 4 * t;
    const long double z = 1 - b4 * t2 - 2 * b6 * t3 - b8 * t4;
    const long double zw = beta ? z + w : z - w;
    f /= 4;
    long double term;
    if (std::fabs(w) <= 2 * std::fabs(z)) {
      term = std::log(std::fabs(z));
      t = w / z;
    } else {
      term = std::log(std::fabs(zw));
      t = w / zw;
      beta = !beta;
    }
    if (!std::isfinite(term) || !std::isfinite(t)) return std::nullopt;
    mu += f * term;
    if (f * tail_scale < tol / 4) return mu;
  }
  return std::nullopt;
}

std::optional<long double> real_series_from_x(const RealCurve& c, long double x, long double log_abs_x,
                                              double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  if (std::fabs(x) < 0.5L) {
    const long double x1 = x + 1;
    return real_series(c, 1 / x1, std::log(std::fabs(x1)), true, tol);
  }
  return real_series(c, 1 / x, log_abs_x, false, tol);
}

}  // namespace

double b2_periodic(double t) {
  const double f = t - std::floor(t);
  return f * f - f + 1.0 / 6.0;
}

BigRational b2_periodic(const BigRational& t) {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  const BigRational f = t - BigRational(fl);
  BigRational out = f * f - f + BigRational(1, 6);
  out.canonicalize();
  return out;
}

LocalReductionData good_local_data(const BigInt& p) {
  LocalReductionData l;
  l.p = p;
  return l;
}

bool in_identity_component(const WeierstrassModel& m, const BigInt& p, const CurvePoint& P) {
  if (P.is_infinity()) return true;
  const BigRational& x = P.x();
  const BigRational& y = P.y();
  if (x != 0 && valuation(x, p) < 0) return true;
  const BigRational fx = 3 * x * x + 2 * m.a2 * x + m.a4 - m.a1 * y;
  const BigRational fy = 2 * y + m.a1 * x + m.a3;
  return ord_or_inf(fx, p) <= 0 || ord_or_inf(fy, p) <= 0;
}

BigRational component_fraction(const WeierstrassModel& minimal, const LocalReductionData& local,
                               const CurvePoint& P) {
  if (!local.is_multiplicative())
    throw NotMultiplicative("no component fraction at p = " + local.p.get_str());
  if (in_identity_component(minimal, local.p, P)) return 0;
  // r = min(ord psi_2, delta/2) / delta. Capping at delta/2 rather than delta
  // matters at p = 2, where 2y contributes to ord psi_2 beyond the component
  // index; a 2-torsion point off E0 (psi_2 = 0) sits on the middle component.
  const long delta = local.delta;
  const BigRational psi2 = 2 * P.y() + minimal.a1 * P.x() + minimal.a3;
  if (psi2 == 0 || 2 * valuation(psi2, local.p) >= delta) return BigRational(1, 2);
  BigRational r(valuation(psi2, local.p), delta);
  r.canonicalize();
  return r;
}

double nonarch_local_height(const WeierstrassModel& minimal, const LocalReductionData& local,
                            const CurvePoint& P) {
  if (P.is_infinity()) throw InfinityInput("local height at O");
  const BigInt& p = local.p;
  if (in_identity_component(minimal, p, P)) return e0_height(P, local);
  const double lp = log_abs(p);
  if (local.is_multiplicative()) {
    const BigRational r = component_fraction(minimal, local, P);
    return 0.5 * b2_periodic(r.get_d()) * local.delta * lp;
  }
  const double log_disc = -local.delta * lp;  // log|Delta|_p
  for (int n = 2; n <= 4; ++n) {
    const CurvePoint Q = scalar_mul(minimal, n, P);
    if (Q.is_infinity()) {
      const int k = n + 1;
      const double kk = static_cast<double>(k * k - 1);
      const double lpsi = log_abs_p(division_polynomial(minimal, k, P), p);
      return (lpsi - kk / 12.0 * log_disc) / kk;
    }
    if (in_identity_component(minimal, p, Q)) {
      const double nn = static_cast<double>(n * n);
      const double lpsi = log_abs_p(division_polynomial(minimal, n, P), p);
      return (e0_height(Q, local) + lpsi - (nn - 1) / 12.0 * log_disc) / nn;
    }
  }
  throw InternalError("no multiple of " + P.to_string() + " up to 4 reaches E0 at " + p.get_str());
}

double arch_local_height(const WeierstrassModel& model, const CurvePoint& P, const HeightConfig& config) {
  if (P.is_infinity()) throw InfinityInput("local height at O");
  if (!(config.series_tol > 0)) throw InvalidArgument("series_tol must be positive");
  const CurveInvariants inv = compute_invariants(model);
  RealCurve c{to_long_double(inv.b2), to_long_double(inv.b4), to_long_double(inv.b6),
              to_long_double(inv.b8), static_cast<long double>(log_abs(inv.disc)), 4.0L};
  c.bound_h = std::max({4.0L, std::fabs(c.b2), 2 * std::fabs(c.b4), 2 * std::fabs(c.b6),
                        std::fabs(c.b8)});
  const double tol = config.series_tol;

  // Exact start: log|x| or log|x + 1| straight from the rational.
  const BigRational& xq = P.x();
  std::optional<long double> mu;
  if (abs(xq) < BigRational(1, 2)) {
    const BigRational x1 = xq + 1;
    mu = real_series(c, 1 / to_long_double(x1), log_abs(x1), true, tol);
  } else {
    mu = real_series(c, 1 / to_long_double(xq), log_abs(xq), false, tol);
  }
  if (mu) return static_cast<double>(*mu / 2 - c.log_disc / 12);

  // Fallback: lambda(2^k P) by the series, unwound through the duplication
  // relation lambda(2Q) = 4 lambda(Q) - 1/2 log|psi_2(Q)^2| + 1/4 log|D|.
  std::vector<long double> log_psi2sq;
  long double x = to_long_double(xq);
  for (int k = 1; k <= 40; ++k) {
    const long double x2 = x * x;
    const long double psi2sq = 4 * x2 * x + c.b2 * x2 + 2 * c.b4 * x + c.b6;
    const long double phi = x2 * x2 - c.b4 * x2 - 2 * c.b6 * x - c.b8;
    if (psi2sq == 0 || !std::isfinite(psi2sq)) break;
    log_psi2sq.push_back(std::log(std::fabs(psi2sq)));
    x = phi / psi2sq;
    auto m = real_series_from_x(c, x, std::log(std::fabs(x)), tol);
    if (m) {
      long double lam = *m / 2 - c.log_disc / 12;
      for (auto it = log_psi2sq.rbegin(); it != log_psi2sq.rend(); ++it)
        lam = (lam + *it / 2 - c.log_disc / 4) / 4;
      return static_cast<double>(lam);
    }
  }
  throw NonConvergent("real local height series at " + P.to_string());
}

IJParts ij_decomposition(const WeierstrassModel& minimal, const LocalReductionData& local,
                         const CurvePoint& P, const CurvePoint& Q) {
  if (!local.is_multiplicative())
    throw NotMultiplicative("i/j split needs multiplicative reduction at " + local.p.get_str());
  if (P == Q) throw EqualPoints("P = Q = " + P.to_string());
  const CurvePoint D = subtract_points(minimal, P, Q);
  const BigRational r = component_fraction(minimal, local, D);
  IJParts out;
  out.j_part = 0.5 * b2_periodic(r.get_d()) * local.delta * log_abs(local.p);
  out.i_part = nonarch_local_height(minimal, local, D) - out.j_part;
  return out;
}

CurveHeights::CurveHeights(GlobalReductionData data, HeightConfig config)
    : data_(std::move(data)), config_(config) {
  if (!(config_.series_tol > 0)) throw InvalidArgument("series_tol must be positive");
}

CurvePoint CurveHeights::to_minimal(const CurvePoint& input_point) const {
  return map_point(data_.minimal.transform, input_point);
}

LocalReductionData CurveHeights::local_data(const BigInt& p) const {
  if (const auto* l = data_.at(p)) return *l;
  return good_local_data(p);
}

double CurveHeights::local_height(const Place& place, const CurvePoint& P) const {
  if (place.is_archimedean()) return arch_local_height(model(), P, config_);
  return nonarch_local_height(model(), local_data(place.prime()), P);
}

double CurveHeights::canonical_height(const CurvePoint& P) const {
  if (P.is_infinity()) return 0.0;
  double h = arch_local_height(model(), P, config_);
  BigInt den = P.x().get_den();
  for (const auto& l : data_.local) {
    h += nonarch_local_height(model(), l, P);
    den = strip_prime(den, l.p);
  }
  // At good primes lambda_p = 1/2 log+|x|_p, so they aggregate to 1/2 log of
  // the remaining denominator without factoring it.
  if (den > 1) h += 0.5 * log_abs(den);
  return h;
}

std::vector<LocalHeightBreakdown> CurveHeights::breakdown(const CurvePoint& P) const {
  if (P.is_infinity()) throw InfinityInput("breakdown at O");
  std::vector<LocalHeightBreakdown> out;
  LocalHeightBreakdown arch;
  arch.lambda = arch_local_height(model(), P, config_);
  out.push_back(arch);
  BigInt den = P.x().get_den();
  for (const auto& l : data_.local) {
    LocalHeightBreakdown b;
    b.place = Place::finite(l.p);
    b.lambda = nonarch_local_height(model(), l, P);
    if (l.is_multiplicative()) {
      const BigRational r = component_fraction(model(), l, P);
      b.r_value = r;
      b.j_part = 0.5 * b2_periodic(r.get_d()) * l.delta * log_abs(l.p);
      b.i_part = b.lambda - *b.j_part;
    }
    out.push_back(std::move(b));
    den = strip_prime(den, l.p);
  }
  if (den > 1) {
    const Factorization f = factorize(den);
    for (const auto& pp : f.factors) {
      LocalHeightBreakdown b;
      b.place = Place::finite(pp.prime);
      b.lambda = nonarch_local_height(model(), good_local_data(pp.prime), P);
      out.push_back(std::move(b));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const LocalHeightBreakdown& a, const LocalHeightBreakdown& b) { return a.place < b.place; });
  return out;
}

namespace {

void require_distinct(std::span<const CurvePoint> Z) {
  std::set<CurvePoint> seen(Z.begin(), Z.end());
  if (seen.size() != Z.size()) throw DuplicatePoints("point set contains repeats");
}

}  // namespace

double CurveHeights::lambda_sum(std::span<const CurvePoint> Z, const Place& place) const {
  require_distinct(Z);
  const double n = static_cast<double>(Z.size());
  if (Z.size() < 2) return 0.0;
  // lambda is even, so each unordered pair counts twice.
  double s = 0.0;
  for (std::size_t i = 0; i < Z.size(); ++i)
    for (std::size_t j = i + 1; j < Z.size(); ++j)
      s += 2.0 * local_height(place, subtract_points(model(), Z[i], Z[j]));
  return s / (n * n);
}

double CurveHeights::height_disc_sum(std::span<const CurvePoint> Z) const {
  require_distinct(Z);
  const double n = static_cast<double>(Z.size());
  if (Z.size() < 2) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < Z.size(); ++i)
    for (std::size_t j = i + 1; j < Z.size(); ++j)
      s += 2.0 * canonical_height(subtract_points(model(), Z[i], Z[j]));
  return s / (n * n);
}

std::vector<Place> CurveHeights::difference_support(std::span<const CurvePoint> Z) const {
  std::set<Place> places{Place::archimedean()};
  for (const auto& l : data_.local) places.insert(Place::finite(l.p));
  for (std::size_t i = 0; i < Z.size(); ++i)
    for (std::size_t j = i + 1; j < Z.size(); ++j) {
      const CurvePoint d = subtract_points(model(), Z[i], Z[j]);
      if (d.is_infinity()) continue;
      const BigInt den = d.x().get_den();
      if (den == 1) continue;
      for (const auto& pp : factorize(den).factors) places.insert(Place::finite(pp.prime));
    }
  return {places.begin(), places.end()};
}

double canonical_height(const WeierstrassModel& model, const CurvePoint& P, const HeightConfig& config) {
  if (P.is_infinity()) return 0.0;
  if (!on_curve(model, P)) throw InvalidArgument(P.to_string() + " is not on " + model.to_string());
  CurveHeights h(global_data(model), config);
  return h.canonical_height(h.to_minimal(P));
}

}  // namespace smallpoints
