#include "smallpoints/weierstrass.hpp"

#include <algorithm>
#include <cmath>

#include "smallpoints/errors.hpp"

namespace smallpoints {

WeierstrassModel WeierstrassModel::from_ints(long a1, long a2, long a3, long a4, long a6) {
  return {BigRational(a1), BigRational(a2), BigRational(a3), BigRational(a4), BigRational(a6)};
}

bool WeierstrassModel::is_integral() const {
  return smallpoints::is_integer(a1) && smallpoints::is_integer(a2) && smallpoints::is_integer(a3) &&
         smallpoints::is_integer(a4) && smallpoints::is_integer(a6);
}

std::string WeierstrassModel::to_string() const {
  return "[" + smallpoints::to_string(a1) + "," + smallpoints::to_string(a2) + "," +
         smallpoints::to_string(a3) + "," + smallpoints::to_string(a4) + "," +
         smallpoints::to_string(a6) + "]";
}

CurveInvariants raw_invariants(const WeierstrassModel& m) {
  CurveInvariants inv;
  inv.b2 = m.a1 * m.a1 + 4 * m.a2;
  inv.b4 = 2 * m.a4 + m.a1 * m.a3;
  inv.b6 = m.a3 * m.a3 + 4 * m.a6;
  inv.b8 = m.a1 * m.a1 * m.a6 + 4 * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 + m.a2 * m.a3 * m.a3 -
           m.a4 * m.a4;
  const auto& b2 = inv.b2;
  const auto& b4 = inv.b4;
  const auto& b6 = inv.b6;
  const auto& b8 = inv.b8;
  inv.c4 = b2 * b2 - 24 * b4;
  inv.c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  inv.disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  if (inv.disc != 0) inv.j = BigRational(inv.c4 * inv.c4 * inv.c4 / inv.disc);
  return inv;
}

CurveInvariants compute_invariants(const WeierstrassModel& model) {
  CurveInvariants inv = raw_invariants(model);
  if (inv.disc == 0) throw SingularModel("discriminant vanishes for " + model.to_string());
  return inv;
}

const BigRational& CurvePoint::x() const {
  if (!affine_) throw InfinityInput("x-coordinate of the point at infinity");
  return affine_->first;
}

const BigRational& CurvePoint::y() const {
  if (!affine_) throw InfinityInput("y-coordinate of the point at infinity");
  return affine_->second;
}

std::string CurvePoint::to_string() const {
  if (!affine_) return "O";
  return "(" + smallpoints::to_string(affine_->first) + "," +
         smallpoints::to_string(affine_->second) + ")";
}

bool operator<(const CurvePoint& a, const CurvePoint& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && !b.is_infinity();
  if (a.x() != b.x()) return a.x() < b.x();
  return a.y() < b.y();
}

bool on_curve(const WeierstrassModel& m, const CurvePoint& p) {
  if (p.is_infinity()) return true;
  const auto& x = p.x();
  const auto& y = p.y();
  return y * y + m.a1 * x * y + m.a3 * y == x * x * x + m.a2 * x * x + m.a4 * x + m.a6;
}

CurvePoint negate(const WeierstrassModel& m, const CurvePoint& p) {
  if (p.is_infinity()) return p;
  return {p.x(), BigRational(-p.y() - m.a1 * p.x() - m.a3)};
}

CurvePoint add_points(const WeierstrassModel& m, const CurvePoint& p, const CurvePoint& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const auto& x1 = p.x();
  const auto& y1 = p.y();
  const auto& x2 = q.x();
  const auto& y2 = q.y();
  BigRational lambda, nu;
  if (x1 == x2) {
    BigRational denom = 2 * y1 + m.a1 * x1 + m.a3;
    // vertical line: P = -Q (covers 2-torsion doubling too)
    if (y1 + y2 + m.a1 * x2 + m.a3 == 0) return CurvePoint::infinity();
    lambda = (3 * x1 * x1 + 2 * m.a2 * x1 + m.a4 - m.a1 * y1) / denom;
    nu = (-x1 * x1 * x1 + m.a4 * x1 + 2 * m.a6 - m.a3 * y1) / denom;
  } else {
    lambda = (y2 - y1) / (x2 - x1);
    nu = (y1 * x2 - y2 * x1) / (x2 - x1);
  }
  BigRational x3 = lambda * lambda + m.a1 * lambda - m.a2 - x1 - x2;
  BigRational y3 = -(lambda + m.a1) * x3 - nu - m.a3;
  return {std::move(x3), std::move(y3)};
}

CurvePoint subtract_points(const WeierstrassModel& m, const CurvePoint& p, const CurvePoint& q) {
  return add_points(m, p, negate(m, q));
}

CurvePoint double_point(const WeierstrassModel& m, const CurvePoint& p) {
  return add_points(m, p, p);
}

CurvePoint scalar_mul(const WeierstrassModel& m, std::int64_t n, const CurvePoint& p) {
  if (n < 0) return negate(m, scalar_mul(m, -n, p));
  CurvePoint result;
  CurvePoint base = p;
  auto k = static_cast<std::uint64_t>(n);
  while (k) {
    if (k & 1u) result = add_points(m, result, base);
    k >>= 1u;
    if (k) base = double_point(m, base);
  }
  return result;
}

BigRational division_polynomial(const WeierstrassModel& m, int n, const CurvePoint& p) {
  if (p.is_infinity()) throw InfinityInput("division polynomial at infinity");
  if (n < 1 || n > 5) throw InvalidArgument("division polynomial index must be in 1..5");
  const auto inv = raw_invariants(m);
  const auto& x = p.x();
  const auto& y = p.y();
  const BigRational psi1 = 1;
  const BigRational psi2 = 2 * y + m.a1 * x + m.a3;
  if (n == 1) return psi1;
  if (n == 2) return psi2;
  const BigRational x2 = x * x;
  const BigRational psi3 = 3 * x2 * x2 + inv.b2 * x2 * x + 3 * inv.b4 * x2 + 3 * inv.b6 * x + inv.b8;
  if (n == 3) return psi3;
  const BigRational psi4 =
      psi2 * (2 * x2 * x2 * x2 + inv.b2 * x2 * x2 * x + 5 * inv.b4 * x2 * x2 +
              10 * inv.b6 * x2 * x + 10 * inv.b8 * x2 + (inv.b2 * inv.b8 - inv.b4 * inv.b6) * x +
              (inv.b4 * inv.b8 - inv.b6 * inv.b6));
  if (n == 4) return psi4;
  // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3 with m = 2
  return psi4 * psi2 * psi2 * psi2 - psi1 * psi3 * psi3 * psi3;
}

ModelTransform ModelTransform::then(const ModelTransform& next) const {
  ModelTransform out;
  out.u = u * next.u;
  out.r = r + u * u * next.r;
  out.s = s + u * next.s;
  out.t = t + u * u * u * next.t + s * u * u * next.r;
  return out;
}

ModelTransform ModelTransform::inverse() const {
  ModelTransform out;
  out.u = 1 / u;
  out.r = -r / (u * u);
  out.s = -s / u;
  out.t = (r * s - t) / (u * u * u);
  return out;
}

WeierstrassModel apply_transform(const WeierstrassModel& m, const ModelTransform& tr) {
  if (tr.u == 0) throw InvalidArgument("transform with u = 0");
  const auto& [u, r, s, t] = tr;
  const BigRational u2 = u * u;
  WeierstrassModel out;
  out.a1 = (m.a1 + 2 * s) / u;
  out.a2 = (m.a2 - s * m.a1 + 3 * r - s * s) / u2;
  out.a3 = (m.a3 + r * m.a1 + 2 * t) / (u2 * u);
  out.a4 = (m.a4 - s * m.a3 + 2 * r * m.a2 - (t + r * s) * m.a1 + 3 * r * r - 2 * s * t) / (u2 * u2);
  out.a6 = (m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 - t * t - r * t * m.a1) /
           (u2 * u2 * u2);
  return out;
}

CurvePoint map_point(const ModelTransform& tr, const CurvePoint& p) {
  if (p.is_infinity()) return p;
  const BigRational u2 = tr.u * tr.u;
  BigRational x = (p.x() - tr.r) / u2;
  BigRational y = (p.y() - tr.s * (p.x() - tr.r) - tr.t) / (u2 * tr.u);
  return {std::move(x), std::move(y)};
}

ModelTransform solve_transform(const WeierstrassModel& from, const WeierstrassModel& to,
                               const BigRational& u) {
  ModelTransform tr;
  tr.u = u;
  tr.s = (u * to.a1 - from.a1) / 2;
  tr.r = (u * u * to.a2 - from.a2 + tr.s * from.a1 + tr.s * tr.s) / 3;
  tr.t = (u * u * u * to.a3 - from.a3 - tr.r * from.a1) / 2;
  if (apply_transform(from, tr) != to)
    throw InternalError("models " + from.to_string() + " and " + to.to_string() +
                        " are not related by u = " + smallpoints::to_string(u));
  return tr;
}

double naive_x_height(const CurvePoint& p) {
  if (p.is_infinity()) return 0.0;
  const auto& x = p.x();
  BigInt num = abs(BigInt(x.get_num()));
  BigInt den = x.get_den();
  const BigInt& big = num > den ? num : den;
  return log_abs(big);
}

}  // namespace smallpoints
