#include "smallpoints/torsion.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "smallpoints/errors.hpp"

namespace smallpoints {

namespace {

long mod_long(const BigRational& q, long p) { return reduce_mod(q, BigInt(p)).get_si(); }

int legendre_small(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  long r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// Integer roots of X^3 + A X + C by exact bisection on monotone pieces.
std::vector<BigInt> integer_cubic_roots(const BigInt& A, const BigInt& C) {
  auto f = [&](const BigInt& x) -> BigInt { return x * x * x + A * x + C; };
  const BigInt bound = 1 + std::max(abs(A), abs(C));
  std::vector<std::pair<BigInt, BigInt>> pieces;
  if (A >= 0) {
    pieces.push_back({-bound, bound});
  } else {
    // Decreasing on [-r, r] with r = sqrt(-A/3).
    BigInt fl = sqrt(BigInt(-A / 3));
    while ((fl + 1) * (fl + 1) * 3 <= -A) ++fl;
    while (fl > 0 && fl * fl * 3 > -A) --fl;
    BigInt ce = fl * fl * 3 == -A ? fl : fl + 1;
    pieces.push_back({-bound, -ce});
    pieces.push_back({-fl, fl});
    pieces.push_back({ce, bound});
  }
  std::set<BigInt> roots;
  for (auto [lo, hi] : pieces) {
    if (lo > hi) continue;
    BigInt flo = f(lo), fhi = f(hi);
    if (flo == 0) roots.insert(lo);
    if (fhi == 0) roots.insert(hi);
    const bool increasing = flo < fhi;
    if ((flo > 0 && fhi > 0) || (flo < 0 && fhi < 0)) continue;
    while (hi - lo > 1) {
      BigInt mid = (lo + hi) / 2;
      BigInt fm = f(mid);
      if (fm == 0) {
        roots.insert(mid);
        break;
      }
      if ((fm < 0) == increasing) lo = mid;
      else hi = mid;
    }
  }
  return {roots.begin(), roots.end()};
}

void divisors_with_square_dividing(const std::vector<PrimePower>& f, std::size_t i, BigInt cur,
                                   std::vector<BigInt>& out) {
  if (i == f.size()) {
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e <= f[i].exponent / 2; ++e) {
    divisors_with_square_dividing(f, i + 1, cur, out);
    cur *= f[i].prime;
  }
}


// Polynomials in x, coefficient i of x^i.
using Poly = std::vector<BigRational>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly operator+(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

Poly operator-(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

// F_n = psi_n for odd n and psi_n / psi_2 for even n, as polynomials in x.
class DivisionPolys {
 public:
  explicit DivisionPolys(const CurveInvariants& inv) {
    f_ = {inv.b6, 2 * inv.b4, inv.b2, BigRational(4)};
    f2_ = f_ * f_;
    F_ = {Poly{}, Poly{1}, Poly{1},
          Poly{inv.b8, 3 * inv.b6, 3 * inv.b4, inv.b2, BigRational(3)},
          Poly{inv.b4 * inv.b8 - inv.b6 * inv.b6, inv.b2 * inv.b8 - inv.b4 * inv.b6, 10 * inv.b8, 10 * inv.b6,
               5 * inv.b4, inv.b2, BigRational(2)}};
  }

  const Poly& f() const { return f_; }

  const Poly& F(std::size_t n) {
    while (F_.size() <= n) {
      const std::size_t k = F_.size();
      const std::size_t m = k / 2;
      const auto cube = [](const Poly& a) { return a * a * a; };
      Poly next;
      if (k % 2 == 1) {
        const Poly lhs = F_[m + 2] * cube(F_[m]);
        const Poly rhs = F_[m - 1] * cube(F_[m + 1]);
        next = m % 2 == 0 ? f2_ * lhs - rhs : lhs - f2_ * rhs;
      } else {
        next = F_[m] * (F_[m + 2] * F_[m - 1] * F_[m - 1] - F_[m - 2] * F_[m + 1] * F_[m + 1]);
      }
      F_.push_back(std::move(next));
    }
    return F_[n];
  }

  /// psi_l^2 and phi_l = x psi_l^2 - psi_{l+1} psi_{l-1}, so x(lP) = phi_l / psi_l^2.
  std::pair<Poly, Poly> multiplication_map(std::size_t l) {
    const Poly x{BigRational(0), BigRational(1)};
    Poly psi_sq = F(l) * F(l);
    if (l % 2 == 0) psi_sq = psi_sq * f_;
    const Poly cross = l % 2 == 0 ? F(l + 1) * F(l - 1) : F(l + 1) * F(l - 1) * f_;
    return {x * psi_sq - cross, psi_sq};
  }

 private:
  Poly f_, f2_;
  std::vector<Poly> F_;
};

BigInt eval(const std::vector<BigInt>& g, const BigInt& u) {
  BigInt acc = 0;
  for (std::size_t i = g.size(); i-- > 0;) acc = acc * u + g[i];
  return acc;
}

std::vector<BigInt> derivative(const std::vector<BigInt>& g) {
  std::vector<BigInt> d;
  for (std::size_t i = 1; i < g.size(); ++i) d.push_back(g[i] * static_cast<unsigned long>(i));
  return d;
}

// Sorted integers splitting [lo, hi] into pieces on which g is monotone.
std::vector<BigInt> monotone_breakpoints(const std::vector<BigInt>& g, const BigInt& lo, const BigInt& hi);

// Integer roots of g in [lo, hi], by exact bisection on monotone pieces.
std::vector<BigInt> integer_roots(const std::vector<BigInt>& g, const BigInt& lo, const BigInt& hi) {
  std::vector<BigInt> cuts{lo};
  for (const auto& b : monotone_breakpoints(g, lo, hi)) cuts.push_back(b);
  cuts.push_back(hi);
  std::set<BigInt> roots;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    BigInt a = cuts[i], b = cuts[i + 1];
    if (a > b) continue;
    const BigInt fa = eval(g, a), fb = eval(g, b);
    if (fa == 0) roots.insert(a);
    if (fb == 0) roots.insert(b);
    if (sgn(fa) * sgn(fb) >= 0) continue;
    const bool increasing = fa < fb;
    while (b - a > 1) {
      BigInt mid = (a + b) / 2;
      const BigInt fm = eval(g, mid);
      if (fm == 0) {
        roots.insert(mid);
        break;
      }
      if ((fm < 0) == increasing) a = mid;
      else b = mid;
    }
  }
  return {roots.begin(), roots.end()};
}

std::vector<BigInt> monotone_breakpoints(const std::vector<BigInt>& g, const BigInt& lo, const BigInt& hi) {
  if (g.size() <= 2) return {};
  const std::vector<BigInt> d = derivative(g);
  // Roots of d, bracketed by integers: every integer root, and both ends of a sign change.
  std::vector<BigInt> cuts{lo};
  for (const auto& b : monotone_breakpoints(d, lo, hi)) cuts.push_back(b);
  cuts.push_back(hi);
  std::set<BigInt> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    BigInt a = cuts[i], b = cuts[i + 1];
    if (a > b) continue;
    const BigInt fa = eval(d, a), fb = eval(d, b);
    if (fa == 0) out.insert(a);
    if (fb == 0) out.insert(b);
    if (sgn(fa) * sgn(fb) >= 0) continue;
    const bool increasing = fa < fb;
    while (b - a > 1) {
      BigInt mid = (a + b) / 2;
      const BigInt fm = eval(d, mid);
      if (fm == 0) {
        a = b = mid;
        break;
      }
      if ((fm < 0) == increasing) a = mid;
      else b = mid;
    }
    out.insert(a);
    out.insert(b);
  }
  return {out.begin(), out.end()};
}

// Rational roots x of P with 4x integral.
std::vector<BigRational> quarter_integral_roots(Poly P) {
  trim(P);
  if (P.size() <= 1) return {};
  // g(u) = 4^deg P(u/4), scaled to integer coefficients.
  const std::size_t deg = P.size() - 1;
  std::vector<BigRational> q(P.size());
  for (std::size_t i = 0; i <= deg; ++i) {
    BigInt w = 1;
    mpz_ui_pow_ui(w.get_mpz_t(), 4, deg - i);
    q[i] = P[i] * w;
  }
  BigInt den = 1;
  for (const auto& c : q) den = lcm(den, BigInt(c.get_den()));
  std::vector<BigInt> g;
  for (const auto& c : q) g.push_back(BigInt(c * den));
  // Cauchy bound.
  BigInt R = 0;
  const BigInt lead = abs(g.back());
  for (std::size_t i = 0; i < deg; ++i) R = std::max(R, BigInt(abs(g[i]) / lead + 1));
  R += 1;
  std::vector<BigRational> out;
  if (g[0] == 0) out.push_back(0);
  for (const auto& u : integer_roots(g, -R, R))
    if (u != 0) out.push_back(BigRational(u) / 4);
  return out;
}

// Rational points with the given x.
std::vector<CurvePoint> points_over_x(const WeierstrassModel& m, const BigRational& x) {
  const BigRational b = m.a1 * x + m.a3;
  const BigRational c = x * x * x + m.a2 * x * x + m.a4 * x + m.a6;
  const BigRational D = b * b + 4 * c;
  if (D < 0) return {};
  const BigInt num(D.get_num()), den(D.get_den());
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return {};
  const BigRational r(BigInt(sqrt(num)), BigInt(sqrt(den)));
  std::vector<CurvePoint> out{CurvePoint(x, (-b + r) / 2)};
  if (r != 0) out.emplace_back(x, (-b - r) / 2);
  return out;
}

std::vector<std::pair<long, unsigned>> small_prime_powers(long n) {
  std::vector<std::pair<long, unsigned>> out;
  for (long p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

}  // namespace

std::string TorsionSubgroup::structure_name() const {
  if (structure.empty()) return "trivial";
  std::string s;
  for (std::size_t i = 0; i < structure.size(); ++i) {
    if (i) s += "x";
    s += "Z/" + std::to_string(structure[i]);
  }
  return s;
}

long point_count_mod_p(const WeierstrassModel& m, long p) {
  if (p < 3 || !is_prime(BigInt(p))) throw BadPrime(std::to_string(p) + " is not an odd prime");
  const CurveInvariants inv = compute_invariants(m);
  for (const auto& a : m.coefficients())
    if (BigInt(a.get_den()) % p == 0) throw BadPrime("model not integral at " + std::to_string(p));
  if (mod_long(inv.disc, p) == 0) throw BadPrime("bad reduction at " + std::to_string(p));
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
  const long b2 = mod_long(inv.b2, p), b4 = mod_long(inv.b4, p), b6 = mod_long(inv.b6, p);
  long count = 1;
  for (long x = 0; x < p; ++x) {
    const long g = ((((4 * x + b2) % p) * x % p + 2 * b4) % p * x % p + b6) % p;
    count += 1 + legendre_small(g, p);
  }
  return count;
}

long torsion_order_bound(const WeierstrassModel& m, std::vector<long>* primes_used) {
  const CurveInvariants inv = compute_invariants(m);
  long g = 0;
  int used = 0;
  for (long p = 3; p < 100 && used < 5; p += 2) {
    if (!is_prime(BigInt(p))) continue;
    if (mod_long(inv.disc, p) == 0) continue;
    g = std::gcd(g, point_count_mod_p(m, p));
    if (primes_used) primes_used->push_back(p);
    ++used;
  }
  if (used == 0) throw BadPrime("no odd good prime below 100");
  return g;
}

long torsion_order(const WeierstrassModel& model, const CurvePoint& P, long max_order) {
  CurvePoint Q = P;
  for (long k = 1; k <= max_order; ++k) {
    if (Q.is_infinity()) return k;
    Q = add_points(model, Q, P);
  }
  return 0;
}

std::vector<CurvePoint> torsion_candidates_lutz_nagell(const WeierstrassModel& m, std::uint64_t factor_bound) {
  if (!m.is_integral()) throw InvalidArgument("torsion search needs an integral model");
  const CurveInvariants inv = compute_invariants(m);
  // Y^2 = X^3 - 27 c4 X - 54 c6 with X = 36x + 3 b2, Y = 108 (2y + a1 x + a3).
  const BigInt A = -27 * BigInt(inv.c4.get_num());
  const BigInt B = -54 * BigInt(inv.c6.get_num());
  Factorization fd = factorize(abs(BigInt(inv.disc.get_num())), factor_bound);
  // 4A^3 + 27B^2 = -2^8 3^12 Delta.
  auto bump = [&](long p, unsigned e) {
    for (auto& pp : fd.factors)
      if (pp.prime == p) {
        pp.exponent += e;
        return;
      }
    fd.factors.push_back({BigInt(p), e});
  };
  bump(2, 8);
  bump(3, 12);
  std::vector<BigInt> ys{0};
  divisors_with_square_dividing(fd.factors, 0, BigInt(1), ys);

  std::set<CurvePoint> found;
  for (const BigInt& Y : ys) {
    for (const BigInt& X : integer_cubic_roots(A, B - Y * Y)) {
      const BigRational x = (BigRational(X) - 3 * inv.b2) / 36;
      for (int sign : {1, -1}) {
        const BigRational psi = BigRational(sign * Y) / 108;
        CurvePoint P(x, (psi - m.a1 * x - m.a3) / 2);
        if (on_curve(m, P)) found.insert(P);
      }
    }
  }
  return {found.begin(), found.end()};
}

std::vector<CurvePoint> torsion_candidates_division(const WeierstrassModel& m, long bound) {
  if (!m.is_integral()) throw InvalidArgument("torsion search needs an integral model");
  if (bound < 1) throw InvalidArgument("torsion bound must be positive");
  DivisionPolys dp(compute_invariants(m));
  // Each primary part: l-torsion from the roots of psi_l, then preimages under
  // multiplication by l of the points already found.
  std::vector<std::vector<CurvePoint>> primary;
  for (const auto& [l, e] : small_prime_powers(bound)) {
    std::vector<CurvePoint> part{CurvePoint::infinity()};
    std::vector<CurvePoint> layer;
    const Poly kernel = l == 2 ? dp.f() : dp.F(static_cast<std::size_t>(l));
    for (const auto& x : quarter_integral_roots(kernel))
      for (const auto& P : points_over_x(m, x)) layer.push_back(P);
    const auto [phi, psi_sq] = dp.multiplication_map(static_cast<std::size_t>(l));
    for (unsigned level = 1; level <= e && !layer.empty(); ++level) {
      part.insert(part.end(), layer.begin(), layer.end());
      if (level == e) break;
      std::set<CurvePoint> next;
      for (const auto& T : layer) {
        const Poly target = phi - psi_sq * Poly{T.x()};
        for (const auto& x : quarter_integral_roots(target))
          for (const auto& Q : points_over_x(m, x))
            if (scalar_mul(m, l, Q) == T) next.insert(Q);
      }
      layer.assign(next.begin(), next.end());
    }
    primary.push_back(std::move(part));
  }
  std::set<CurvePoint> all{CurvePoint::infinity()};
  for (const auto& part : primary) {
    std::set<CurvePoint> grown;
    for (const auto& a : all)
      for (const auto& b : part) grown.insert(add_points(m, a, b));
    all = std::move(grown);
  }
  all.erase(CurvePoint::infinity());
  return {all.begin(), all.end()};
}

TorsionSubgroup torsion_subgroup(const WeierstrassModel& m, std::uint64_t factor_bound) {
  if (!m.is_integral()) throw InvalidArgument("torsion search needs an integral model");
  const long bound = torsion_order_bound(m);
  auto verified = [&](const std::vector<CurvePoint>& cands) {
    std::set<CurvePoint> out{CurvePoint::infinity()};
    for (const auto& P : cands) {
      const long ord = torsion_order(m, P, bound);
      if (ord > 0 && bound % ord == 0) out.insert(P);
    }
    return out;
  };
  const std::set<CurvePoint> found = verified(torsion_candidates_lutz_nagell(m, factor_bound));
  if (verified(torsion_candidates_division(m, bound)) != found)
    throw InternalError("Lutz-Nagell and division-polynomial torsion searches disagree");

  TorsionSubgroup t;
  t.points.assign(found.begin(), found.end());
  t.order = static_cast<long>(t.points.size());
  long two_torsion = 0;
  for (const auto& P : t.points)
    if (!P.is_infinity() && 2 * P.y() + m.a1 * P.x() + m.a3 == 0) ++two_torsion;
  if (two_torsion == 3) t.structure = {2, t.order / 2};
  else if (t.order > 1) t.structure = {t.order};

  // Mazur's list as an assertion only.
  const bool ok = t.structure.size() == 2
                      ? (t.order / 2 == 2 || t.order / 2 == 4 || t.order / 2 == 6 || t.order / 2 == 8)
                      : (t.order <= 10 || t.order == 12);
  if (!ok || bound % t.order != 0)
    throw InternalError("torsion " + t.structure_name() + " violates Mazur or the reduction bound");
  return t;
}

}  // namespace smallpoints
