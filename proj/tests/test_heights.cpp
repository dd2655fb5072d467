#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "smallpoints/errors.hpp"
#include "smallpoints/torsion.hpp"
#include "test_support.hpp"

using namespace smallpoints;
using namespace testsupport;

namespace {

const WeierstrassModel k37a1 = WeierstrassModel::from_ints(0, 0, 1, -1, 0);
const WeierstrassModel k11a1 = WeierstrassModel::from_ints(0, -1, 1, -10, -20);
const WeierstrassModel k11a3 = WeierstrassModel::from_ints(0, -1, 1, 0, 0);

CurvePoint pt(long x, long y) { return CurvePoint(BigRational(x), BigRational(y)); }

double log_abs_v(const BigRational& a, const Place& v) {
  if (v.is_archimedean()) return log_abs(a);
  return -static_cast<double>(valuation(a, v.prime())) * log_abs(v.prime());
}

// lambda(nP) - n^2 lambda(P) + log|psi_n(P)|_v - ((n^2-1)/12) log|D|_v
double division_defect(const CurveHeights& h, const Place& v, const CurvePoint& P, int n) {
  const CurveInvariants inv = compute_invariants(h.model());
  const double lhs = h.local_height(v, scalar_mul(h.model(), n, P));
  const double rhs = n * n * h.local_height(v, P) -
                     log_abs_v(division_polynomial(h.model(), n, P), v) +
                     (n * n - 1) / 12.0 * log_abs_v(inv.disc, v);
  return lhs - rhs;
}

// Independent route to lambda_p at a singular point: psi_n by the recursion
// psi_{n+1} psi_{n-1} = psi_n^2 (x(P) - x(nP)), then the division relation at
// the first n with nP in E0 (or the n+1 relation when nP = O).
double lambda_by_division_chain(const WeierstrassModel& m, const LocalReductionData& l, const CurvePoint& P) {
  const double lp = std::log(l.p.get_d());
  const double log_disc = -l.delta * lp;
  std::vector<BigRational> psi{0, 1, 2 * P.y() + m.a1 * P.x() + m.a3};
  auto ordp = [&](const BigRational& a) { return static_cast<double>(valuation(a, l.p)); };
  for (int n = 2;; ++n) {
    const CurvePoint nP = scalar_mul(m, n, P);
    while (static_cast<int>(psi.size()) <= n) {
      const int k = static_cast<int>(psi.size()) - 1;  // psi_{k+1} from x(kP), k < n
      psi.push_back(psi[k] * psi[k] * (P.x() - scalar_mul(m, k, P).x()) / psi[k - 1]);
    }
    if (nP.is_infinity()) {
      // P has order n. For n = 2 use psi_3 directly; otherwise (n-1)P = -P
      // gives (k^2 - 1) lambda(P) = log|psi_k(P)| - ((k^2 - 1)/12) log|D| with k = n - 1.
      const int k = n == 2 ? 3 : n - 1;
      const BigRational pk = n == 2 ? division_polynomial(m, 3, P) : psi[k];
      const double kk = k * k - 1.0;
      return (-ordp(pk) * lp - kk / 12.0 * log_disc) / kk;
    }
    if (in_identity_component(m, l.p, nP)) {
      const long ox = nP.x() == 0 ? 0 : valuation(nP.x(), l.p);
      const double lam_n = 0.5 * std::max(0L, -ox) * lp + l.delta * lp / 12.0;
      const double nn = static_cast<double>(n) * n;
      return (lam_n - ordp(psi[n]) * lp - (nn - 1) / 12.0 * log_disc) / nn;
    }
    REQUIRE(n < 60);
  }
}

}  // namespace

TEST_CASE("canonical heights match the reference values") {
  for (const auto& ref : reference()) {
    if (ref.points.empty()) continue;
    CurveHeights h(global_data(ref.input));
    for (const auto& rp : ref.points) {
      CAPTURE(ref.label);
      CAPTURE(rp.point.to_string());
      const double got = h.canonical_height(h.to_minimal(rp.point));
      CHECK(got == doctest::Approx(rp.hhat).epsilon(1e-9));
    }
  }
}

TEST_CASE("b2_periodic values and Fourier consistency") {
  // Fourier truncation oracle (1/(2 pi^2)) sum_{m != 0} m^-2 e^{2 pi i m t}.
  auto fourier = [](double t, int M) {
    double s = 0.0;
    for (int m = 1; m <= M; ++m) s += std::cos(2 * std::numbers::pi * m * t) / (double(m) * m);
    return s / (std::numbers::pi * std::numbers::pi);
  };
  CHECK(b2_periodic(0.0) == doctest::Approx(fourier(0.0, 2000000)).epsilon(1e-6));
  CHECK(b2_periodic(0.0) == doctest::Approx(1.0 / 6));
  CHECK(b2_periodic(0.5) == doctest::Approx(fourier(0.5, 2000000)).epsilon(1e-6));
  CHECK(b2_periodic(0.5) == doctest::Approx(-1.0 / 12));
  CHECK(b2_periodic(0.25) == doctest::Approx(-1.0 / 48));
  CHECK(b2_periodic(0.75) == doctest::Approx(-1.0 / 48));
  CHECK(b2_periodic(BigRational(1, 5)) == BigRational(1, 150));
  CHECK(b2_periodic(BigRational(-4, 5)) == BigRational(1, 150));

  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const double t = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 6.0 - 3.0;
    CHECK(b2_periodic(t + 1) == doctest::Approx(b2_periodic(t)));
    CHECK(b2_periodic(1 - t) == doctest::Approx(b2_periodic(t)));
    CHECK(b2_periodic(t) >= -1.0 / 12 - 1e-15);
    CHECK(b2_periodic(t) <= 1.0 / 6 + 1e-15);
    for (int M : {10, 100, 1000})
      CHECK(std::fabs(b2_periodic(t) - fourier(t, M)) <= 2.0 / (std::numbers::pi * std::numbers::pi * M));
  }
}

TEST_CASE("nonarchimedean local height examples") {
  const CurvePoint P5 = scalar_mul(k37a1, 5, pt(0, 0));
  REQUIRE(P5 == CurvePoint(BigRational(1, 4), BigRational(-5, 8)));
  CHECK(nonarch_local_height(k37a1, good_local_data(BigInt(2)), P5) == doctest::Approx(std::log(2.0)));
  CHECK(nonarch_local_height(k37a1, good_local_data(BigInt(5)), pt(1, 0)) == 0.0);

  const GlobalReductionData g = global_data(k11a1);
  const LocalReductionData& l11 = *g.at(BigInt(11));
  CHECK(component_fraction(k11a1, l11, pt(5, 5)) == BigRational(1, 5));
  CHECK(nonarch_local_height(k11a1, l11, pt(5, 5)) == doctest::Approx(std::log(11.0) / 60).epsilon(1e-12));
  CHECK(std::fabs(lambda_by_division_chain(k11a1, l11, pt(5, 5)) - std::log(11.0) / 60) <= 1e-9);
  CHECK(component_fraction(k11a1, l11, pt(5, -6)) == component_fraction(k11a1, l11, pt(5, 5)));
  CHECK_THROWS_AS(nonarch_local_height(k11a1, l11, CurvePoint::infinity()), InfinityInput);
  CHECK_THROWS_AS(component_fraction(k37a1, good_local_data(BigInt(2)), pt(0, 0)), NotMultiplicative);
}

TEST_CASE("closed form and division chain agree at every singular corpus point") {
  int singular = 0;
  for (const auto& ref : reference()) {
    const GlobalReductionData g = global_data(ref.input);
    CurveHeights h(g);
    const TorsionSubgroup t = torsion_subgroup(g.minimal.model);
    std::vector<CurvePoint> pts(t.points.begin(), t.points.end());
    for (const auto& rp : ref.points) {
      const CurvePoint P = h.to_minimal(rp.point);
      for (int n : {1, 2, 3}) pts.push_back(scalar_mul(h.model(), n, P));
    }
    for (const auto& l : g.local)
      for (const auto& P : pts) {
        if (P.is_infinity() || in_identity_component(h.model(), l.p, P)) continue;
        CAPTURE(ref.label);
        CAPTURE(l.p);
        CAPTURE(P.to_string());
        ++singular;
        CHECK(std::fabs(nonarch_local_height(h.model(), l, P) - lambda_by_division_chain(h.model(), l, P)) <= 1e-9);
      }
  }
  CHECK(singular >= 20);
}

TEST_CASE("real place examples") {
  const CurvePoint P = pt(0, 0);
  CHECK(arch_local_height(k37a1, P) == doctest::Approx(-0.275352).epsilon(1e-5 / 0.275352));
  CHECK(arch_local_height(k37a1, P) == doctest::Approx(arch_local_height(k37a1, negate(k37a1, P))));
  CHECK_THROWS_AS(arch_local_height(k37a1, CurvePoint::infinity()), InfinityInput);

  // Asymptotics: lambda_inf - 1/2 log|x| + 1/12 log|D| -> 0 as |x| grows.
  const double log_disc = std::log(37.0);
  for (int n = 4; n <= 12; ++n) {
    const CurvePoint Q = scalar_mul(k37a1, n, P);
    if (std::fabs(Q.x().get_d()) < 1e6) continue;
    CHECK(std::fabs(arch_local_height(k37a1, Q) - 0.5 * log_abs(Q.x()) + log_disc / 12) <= 1e-3);
  }
  // y^2 = x^3 + x - s^2 through (s^2, s^3) with s = 10^4, so |x| = 10^8.
  const BigInt s("10000");
  const WeierstrassModel m2{0, 0, 0, 1, BigRational(-s * s)};
  const BigInt X = s * s;
  const CurvePoint big{BigRational(X), BigRational(s * s * s)};
  REQUIRE(on_curve(m2, big));
  const double lam = arch_local_height(m2, big);
  CHECK(std::fabs(lam - 0.5 * log_abs(X) + log_abs(compute_invariants(m2).disc) / 12) <= 1e-3);
}

TEST_CASE("canonical height examples") {
  const CurvePoint P = pt(0, 0);
  CHECK(std::fabs(canonical_height(k37a1, P) - 0.0255557) <= 1e-6);
  CHECK(std::fabs(canonical_height(k11a3, P)) <= 1e-10);
  CHECK(canonical_height(k37a1, CurvePoint::infinity()) == 0.0);
  CurveHeights h(global_data(k37a1));
  CHECK(std::fabs(h.canonical_height(scalar_mul(k37a1, 2, P)) - 4 * h.canonical_height(P)) <= 1e-8);
  CHECK(std::fabs(h.canonical_height(P) - doubling_limit_height(k37a1, P, 12)) <= 1e-6);
}

TEST_CASE("local decomposition, division relation and quasi-parallelogram") {
  std::mt19937_64 rng(23);
  for (const auto& ref : reference()) {
    if (ref.points.empty()) continue;
    CAPTURE(ref.label);
    CurveHeights h(global_data(ref.input));
    const WeierstrassModel& m = h.model();
    const CurveInvariants inv = compute_invariants(m);
    std::vector<CurvePoint> pts;
    for (const auto& rp : ref.points) pts.push_back(h.to_minimal(rp.point));
    for (const auto& P : pts) {
      double sum = 0.0;
      for (const auto& b : h.breakdown(P)) {
        sum += b.lambda;
        if (b.i_part) CHECK(*b.i_part >= -1e-9);
        if (b.i_part) CHECK(std::fabs(*b.i_part + *b.j_part - b.lambda) <= 1e-12);
      }
      CHECK(std::fabs(sum - h.canonical_height(P)) <= 1e-8);
      for (int n = 2; n <= 5; ++n)
        CHECK(std::fabs(h.canonical_height(scalar_mul(m, n, P)) - n * n * h.canonical_height(P)) <= 1e-8 * n * n);
    }
    // Division relation at the real place, every bad prime and two good primes.
    std::vector<Place> places{Place::archimedean()};
    for (const auto& l : h.data().local) places.push_back(Place::finite(l.p));
    int good = 0;
    for (long p = 2; good < 2; ++p)
      if (is_prime(BigInt(p)) && !h.data().at(BigInt(p))) {
        places.push_back(Place::finite(BigInt(p)));
        ++good;
      }
    for (int trial = 0; trial < 4; ++trial) {
      const CurvePoint P = scalar_mul(m, static_cast<long>(rng() % 5) + 1, pts[rng() % pts.size()]);
      for (const auto& v : places)
        for (int n : {2, 3}) {
          CAPTURE(v.name());
          CHECK(std::fabs(division_defect(h, v, P, n)) <= 1e-8);
        }
    }
    // lambda(P+Q) + lambda(P-Q) = 2 lambda(P) + 2 lambda(Q) - log|x(P)-x(Q)| + 1/6 log|D|.
    const CurvePoint A = pts[0];
    const CurvePoint B = scalar_mul(m, 2, pts.back());
    if (A.x() != B.x()) {
      const CurvePoint S = add_points(m, A, B), D = subtract_points(m, A, B);
      for (const auto& v : places) {
        CAPTURE(v.name());
        const double lhs = h.local_height(v, S) + h.local_height(v, D);
        const double rhs = 2 * h.local_height(v, A) + 2 * h.local_height(v, B) -
                           log_abs_v(A.x() - B.x(), v) + log_abs_v(inv.disc, v) / 6;
        CHECK(std::fabs(lhs - rhs) <= 1e-8);
      }
    }
    // E0 lower bound.
    for (const auto& l : h.data().local)
      for (const auto& P : pts)
        if (in_identity_component(m, l.p, P))
          CHECK(nonarch_local_height(m, l, P) >= l.delta * std::log(l.p.get_d()) / 12 - 1e-9);
  }
}

TEST_CASE("i/j decomposition") {
  const GlobalReductionData g = global_data(k11a1);
  const LocalReductionData& l = *g.at(BigInt(11));
  const TorsionSubgroup t = torsion_subgroup(k11a1);
  for (const auto& P : t.points)
    for (const auto& Q : t.points) {
      if (P == Q) {
        CHECK_THROWS_AS(ij_decomposition(k11a1, l, P, Q), EqualPoints);
        continue;
      }
      const IJParts ij = ij_decomposition(k11a1, l, P, Q);
      const double lam = nonarch_local_height(k11a1, l, subtract_points(k11a1, P, Q));
      CHECK(ij.i_part + ij.j_part == doctest::Approx(lam));
      CHECK(ij.i_part >= -1e-9);
      if (component_fraction(k11a1, l, P) != component_fraction(k11a1, l, Q)) CHECK(std::fabs(ij.i_part) <= 1e-9);
    }
  // P - Q in E0 gives j = (1/12) delta log p.
  const GlobalReductionData g37 = global_data(k37a1);
  const CurvePoint P = pt(0, 0);
  const IJParts ij = ij_decomposition(k37a1, *g37.at(BigInt(37)), scalar_mul(k37a1, 3, P), P);
  CHECK(ij.j_part == doctest::Approx(std::log(37.0) / 12));
  CHECK(ij.i_part >= -1e-9);
  CHECK_THROWS_AS(ij_decomposition(k37a1, good_local_data(BigInt(2)), P, pt(1, 0)), NotMultiplicative);
}

TEST_CASE("height-discriminant sums") {
  CurveHeights h(global_data(k37a1));
  const CurvePoint O = CurvePoint::infinity(), P = pt(0, 0), P2 = scalar_mul(k37a1, 2, P);
  const double hp = h.canonical_height(P);
  const std::vector<CurvePoint> z2{O, P};
  CHECK(h.height_disc_sum(z2) == doctest::Approx(hp / 2));
  const std::vector<CurvePoint> z1{P};
  CHECK(h.height_disc_sum(z1) == 0.0);
  CHECK(h.lambda_sum(z1, Place::archimedean()) == 0.0);
  const std::vector<CurvePoint> z3{O, P, P2};
  CHECK(std::fabs(h.height_disc_sum(z3) - 0.0340742) <= 1e-5);
  CHECK(h.height_disc_sum(z3) == doctest::Approx(4.0 / 3 * hp));
  double local = 0.0;
  for (const auto& v : h.difference_support(z3)) local += h.lambda_sum(z3, v);
  CHECK(std::fabs(local - h.height_disc_sum(z3)) <= 1e-8);
  const std::vector<CurvePoint> dup{P, O, P};
  CHECK_THROWS_AS(h.height_disc_sum(dup), DuplicatePoints);
  CHECK_THROWS_AS(h.lambda_sum(dup, Place::archimedean()), DuplicatePoints);
}
