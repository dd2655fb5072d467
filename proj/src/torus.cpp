#include "smallpoints/torus.hpp"

#include <cmath>
#include <numbers>

#include "smallpoints/errors.hpp"

namespace smallpoints {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx e2pii(cplx z) { return std::exp(cplx(0.0, kTwoPi) * z); }

double frac(double t) {
  double f = t - std::floor(t);
  return f >= 1.0 ? 0.0 : f;
}

void left_mul(Sl2Matrix& m, long a, long b, long c, long d) {
  m = {a * m[0] + b * m[2], a * m[1] + b * m[3], c * m[0] + d * m[2], c * m[1] + d * m[3]};
}

struct Eisenstein {
  cplx e4;
  cplx log_delta;  // log of q prod (1 - q^n)^24, up to 2 pi i
};

Eisenstein eisenstein(cplx tau, double tol) {
  const cplx q = e2pii(tau);
  const double aq = std::abs(q);
  cplx s3 = 0.0, log_prod = 0.0, qn = 1.0;
  for (int n = 1; n < 10000; ++n) {
    qn *= q;
    const double dn = n;
    s3 += dn * dn * dn * qn / (1.0 - qn);
    log_prod += std::log(1.0 - qn);
    if (dn * dn * dn * std::pow(aq, dn) < tol * 1e-3 * (1.0 - aq)) break;
  }
  return {1.0 + 240.0 * s3, cplx(0.0, kTwoPi) * tau + 24.0 * log_prod};
}

}  // namespace

cplx reduce_tau(cplx tau, Sl2Matrix* matrix) {
  if (!(tau.imag() > 0)) throw InvalidArgument("tau must lie in the upper half-plane");
  Sl2Matrix m{1, 0, 0, 1};
  for (int iter = 0; iter < 10000; ++iter) {
    if (std::fabs(tau.real()) > 0.5) {
      const long k = std::lround(tau.real());
      tau -= static_cast<double>(k);
      left_mul(m, 1, -k, 0, 1);
    }
    if (std::norm(tau) < 1.0 - 1e-15) {
      tau = -1.0 / tau;
      left_mul(m, 0, -1, 1, 0);
    } else {
      break;
    }
  }
  if (matrix) *matrix = m;
  return tau;
}

TorusPoint reduce_torus_point(const TorusPoint& z) {
  Sl2Matrix m;
  TorusPoint out;
  out.tau = reduce_tau(z.tau, &m);
  const double a = m[0], b = m[1], c = m[2], d = m[3];
  out.t1 = frac(a * z.t1 - b * z.t2);
  out.t2 = frac(-c * z.t1 + d * z.t2);
  return out;
}

double torus_neron(const TorusPoint& z_in, const HeightConfig& config) {
  const TorusPoint z = reduce_torus_point(z_in);
  if (z.t1 == 0.0 && z.t2 == 0.0) throw LatticePoint("z lies in the lattice");
  const cplx q = e2pii(z.tau);
  const double aq = std::abs(q);
  const cplx w = e2pii(z.t1 + z.t2 * z.tau);
  double lam = 0.5 * b2_periodic(z.t2) * (-std::log(aq)) - std::log(std::abs(1.0 - w));
  cplx qn = 1.0;
  for (int n = 1; n < 10000; ++n) {
    qn *= q;
    lam -= std::log(std::abs((1.0 - qn * w) * (1.0 - qn / w)));
    // |q^m w|, |q^m / w| <= |q|^(m-1) for m > n; log|1 - u| <= 2|u| once |u| <= 1/2.
    if (4.0 * std::pow(aq, n) / (1.0 - aq) < config.series_tol) break;
  }
  return lam;
}

cplx j_tau(cplx tau, const HeightConfig& config) {
  const Eisenstein e = eisenstein(reduce_tau(tau), config.series_tol);
  return std::exp(3.0 * std::log(e.e4) - e.log_delta);
}

double log_abs_j_tau(cplx tau, const HeightConfig& config) {
  const Eisenstein e = eisenstein(reduce_tau(tau), config.series_tol);
  return 3.0 * std::log(std::abs(e.e4)) - e.log_delta.real();
}

}  // namespace smallpoints
