// Tate's algorithm over Z_p for an integral model that is minimal at p.

#include <array>
#include <utility>
#include <vector>

#include "smallpoints/errors.hpp"
#include "smallpoints/localdata.hpp"

namespace smallpoints {

namespace {

// ---- polynomials over F_p, coefficients low to high -------------------------

using Poly = std::vector<BigInt>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly reduce(Poly f, const BigInt& p) {
  for (auto& c : f) c = mod(c, p);
  trim(f);
  return f;
}

Poly poly_mod(Poly a, const Poly& b, const BigInt& p) {
  const BigInt lead_inv = inverse_mod(b.back(), p);
  while (!a.empty() && a.size() >= b.size()) {
    const BigInt factor = mod(a.back() * lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = mod(a[shift + i] - factor * b[i], p);
    trim(a);
  }
  return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m, const BigInt& p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return poly_mod(reduce(std::move(out), p), m, p);
}

Poly poly_gcd(Poly a, Poly b, const BigInt& p) {
  a = reduce(std::move(a), p);
  b = reduce(std::move(b), p);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly derivative(const Poly& f, const BigInt& p) {
  Poly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mod(f[i] * static_cast<unsigned long>(i), p));
  trim(d);
  return d;
}

// Number of distinct roots in F_p of a squarefree polynomial f.
int count_roots(const Poly& f_in, const BigInt& p) {
  Poly f = reduce(f_in, p);
  if (f.size() <= 1) return 0;
  // x^p mod f by square-and-multiply, then deg gcd(f, x^p - x).
  Poly result{BigInt(1)};
  Poly base = poly_mod(Poly{BigInt(0), BigInt(1)}, f, p);
  BigInt e = p;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = poly_mul_mod(result, base, f, p);
    e >>= 1;
    if (e > 0) base = poly_mul_mod(base, base, f, p);
  }
  if (result.size() < 2) result.resize(2, BigInt(0));
  result[1] = mod(result[1] - 1, p);
  trim(result);
  Poly g = poly_gcd(f, result, p);
  return g.empty() ? static_cast<int>(f.size()) - 1 : static_cast<int>(g.size()) - 1;
}

// Roots of a x^2 + b x + c over F_p (a a unit).
bool quadratic_splits(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& p) {
  if (p == 2) {
    const BigInt c2 = mod(c, 2);
    return c2 == 0 || mod(a + b + c, 2) == 0;
  }
  return legendre(b * b - 4 * a * c, p) >= 0;
}

bool quadratic_distinct(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& p) {
  if (p == 2) return mod(b, 2) != 0;
  return mod(b * b - 4 * a * c, p) != 0;
}

// The double root of a x^2 + b x + c over F_p, assuming it has one.
BigInt quadratic_double_root(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& p) {
  if (p == 2) return mod(c * a, 2);
  return mod(-b * inverse_mod(2 * a, p), p);
}

enum class CubicShape { Distinct, DoubleRoot, TripleRoot };

struct CubicInfo {
  CubicShape shape;
  BigInt root;  // the repeated root when there is one
};

// Monic x^3 + a x^2 + b x + c over F_p.
CubicInfo analyse_cubic(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& p) {
  Poly f = reduce({c, b, a, BigInt(1)}, p);
  if (p <= 3) {
    // In characteristic 2 the derivative of a square vanishes, so gcd(f, f')
    // cannot tell a double root from a triple one; count multiplicities.
    for (long r = 0; r < p; ++r) {
      Poly g = f;
      int mult = 0;
      while (g.size() > 1) {
        // Synthetic division by (T - r); the final carry is g(r).
        Poly q(g.size() - 1);
        BigInt carry = 0;
        for (std::size_t i = g.size(); i-- > 1;) {
          carry = mod(carry * r + g[i], p);
          q[i - 1] = carry;
        }
        if (mod(carry * r + g[0], p) != 0) break;
        g = std::move(q);
        ++mult;
      }
      if (mult == 3) return {CubicShape::TripleRoot, BigInt(r)};
      if (mult == 2) return {CubicShape::DoubleRoot, BigInt(r)};
    }
    return {CubicShape::Distinct, BigInt(0)};
  }
  Poly g = poly_gcd(f, derivative(f, p), p);
  if (g.size() == 1) return {CubicShape::Distinct, BigInt(0)};
  if (g.size() == 2) return {CubicShape::DoubleRoot, mod(-g[0] * inverse_mod(g[1], p), p)};
  BigInt r = (p == 3) ? mod(-c, 3) : mod(-a * inverse_mod(BigInt(3), p), p);
  return {CubicShape::TripleRoot, r};
}

// ---- integral model under integral (r, s, t) with u = 1 ---------------------

struct IntModel {
  BigInt a1, a2, a3, a4, a6;

  void shift(const BigInt& r, const BigInt& s, const BigInt& t) {
    BigInt n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    BigInt n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    BigInt n3 = a3 + r * a1 + 2 * t;
    BigInt n2 = a2 - s * a1 + 3 * r - s * s;
    BigInt n1 = a1 + 2 * s;
    a1 = std::move(n1);
    a2 = std::move(n2);
    a3 = std::move(n3);
    a4 = std::move(n4);
    a6 = std::move(n6);
  }
  BigInt b2() const { return a1 * a1 + 4 * a2; }
  BigInt b6() const { return a3 * a3 + 4 * a6; }
  BigInt b8() const {
    return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  }
};

bool divides(const BigInt& d, const BigInt& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

BigInt div_exact(const BigInt& n, const BigInt& d) {
  BigInt q;
  mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

IntModel to_int_model(const WeierstrassModel& m) {
  if (!m.is_integral()) throw InvalidArgument("Tate's algorithm needs an integral model");
  return {m.a1.get_num(), m.a2.get_num(), m.a3.get_num(), m.a4.get_num(), m.a6.get_num()};
}

// Singular point of the reduction mod p, as integer representatives.
std::pair<BigInt, BigInt> singular_point(const IntModel& e, const BigInt& p) {
  if (p <= 3) {
    const long pl = p.get_si();
    for (long x = 0; x < pl; ++x) {
      for (long y = 0; y < pl; ++y) {
        BigInt X = x, Y = y;
        BigInt f = Y * Y + e.a1 * X * Y + e.a3 * Y - X * X * X - e.a2 * X * X - e.a4 * X - e.a6;
        BigInt fx = e.a1 * Y - 3 * X * X - 2 * e.a2 * X - e.a4;
        BigInt fy = 2 * Y + e.a1 * X + e.a3;
        if (mod(f, p) == 0 && mod(fx, p) == 0 && mod(fy, p) == 0) return {X, Y};
      }
    }
    throw InternalError("no singular point mod " + p.get_str());
  }
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6: x0 is its repeated root.
  const BigInt b2 = e.b2();
  const BigInt b4 = 2 * e.a4 + e.a1 * e.a3;
  const BigInt b6 = e.b6();
  const BigInt inv4 = inverse_mod(BigInt(4), p);
  CubicInfo info = analyse_cubic(b2 * inv4, 2 * b4 * inv4, b6 * inv4, p);
  if (info.shape == CubicShape::Distinct)
    throw InternalError("reduction mod " + p.get_str() + " is not singular");
  BigInt x0 = info.root;
  BigInt y0 = mod(-(e.a1 * x0 + e.a3) * inverse_mod(BigInt(2), p), p);
  return {x0, y0};
}

bool tangent_split(const IntModel& e, const BigInt& p) {
  // node at (0,0): tangents y^2 + a1 x y - a2 x^2
  return quadratic_splits(BigInt(1), e.a1, -e.a2, p);
}

void require(bool ok, const char* what) {
  if (!ok) throw InternalError(std::string("Tate's algorithm: ") + what);
}

}  // namespace

LocalReductionData tate_local(const WeierstrassModel& minimal, const BigInt& p) {
  const CurveInvariants inv = compute_invariants(minimal);
  IntModel e = to_int_model(minimal);
  LocalReductionData out;
  out.p = p;
  out.delta = static_cast<int>(valuation(BigInt(inv.disc.get_num()), p));

  auto finish = [&](KodairaSymbol k, int c, ReductionType red) {
    out.kodaira = k;
    out.m = k.components();
    out.c = c;
    out.eta = out.delta - out.m + 1;
    out.reduction = red;
    return out;
  };

  if (out.delta == 0) return finish({KodairaKind::I0, 0}, 1, ReductionType::Good);

  const BigInt p2 = p * p;
  const BigInt p3 = p2 * p;
  const BigInt p4 = p3 * p;

  auto [x0, y0] = singular_point(e, p);
  e.shift(x0, 0, y0);
  require(divides(p, e.a3) && divides(p, e.a4) && divides(p, e.a6), "singular point not at origin");

  if (!divides(p, e.b2())) {
    const bool split = tangent_split(e, p);
    const int c = split ? out.delta : (out.delta % 2 == 0 ? 2 : 1);
    return finish({KodairaKind::In, out.delta}, c,
                  split ? ReductionType::SplitMultiplicative : ReductionType::NonsplitMultiplicative);
  }
  if (!divides(p2, e.a6)) return finish({KodairaKind::II, 0}, 1, ReductionType::Additive);
  if (!divides(p3, e.b8())) return finish({KodairaKind::III, 0}, 2, ReductionType::Additive);
  if (!divides(p3, e.b6())) {
    const bool split = quadratic_splits(BigInt(1), div_exact(e.a3, p), -div_exact(e.a6, p2), p);
    return finish({KodairaKind::IV, 0}, split ? 3 : 1, ReductionType::Additive);
  }

  // p | a1, a2; p^2 | a3, a4; p^3 | a6
  if (p == 2) {
    e.shift(0, mod(e.a2, 2), 2 * mod(div_exact(e.a6, 4), 2));
  } else {
    const BigInt half = inverse_mod(BigInt(2), p2);
    e.shift(0, mod(-e.a1 * half, p), mod(-e.a3 * half, p2));
  }
  require(divides(p, e.a1) && divides(p, e.a2) && divides(p2, e.a3) && divides(p2, e.a4) &&
              divides(p3, e.a6),
          "step 6 divisibility");

  const CubicInfo cubic =
      analyse_cubic(div_exact(e.a2, p), div_exact(e.a4, p2), div_exact(e.a6, p3), p);

  if (cubic.shape == CubicShape::Distinct) {
    const int roots =
        count_roots({div_exact(e.a6, p3), div_exact(e.a4, p2), div_exact(e.a2, p), BigInt(1)}, p);
    return finish({KodairaKind::I0Star, 0}, 1 + roots, ReductionType::Additive);
  }

  if (cubic.shape == CubicShape::DoubleRoot) {
    e.shift(cubic.root * p, 0, 0);
    int ix = 3, iy = 3;
    BigInt mx = p2, my = p2;
    int c = 0;
    for (;;) {
      {
        const BigInt xa3 = div_exact(e.a3, my);
        const BigInt xa6 = div_exact(e.a6, mx * my);
        if (quadratic_distinct(BigInt(1), xa3, -xa6, p)) {
          c = quadratic_splits(BigInt(1), xa3, -xa6, p) ? 4 : 2;
          break;
        }
        e.shift(0, 0, my * quadratic_double_root(BigInt(1), xa3, -xa6, p));
        my *= p;
        ++iy;
      }
      {
        const BigInt xa2 = div_exact(e.a2, p);
        const BigInt xa4 = div_exact(e.a4, p * mx);
        const BigInt xa6 = div_exact(e.a6, mx * my);
        if (quadratic_distinct(xa2, xa4, xa6, p)) {
          c = quadratic_splits(xa2, xa4, xa6, p) ? 4 : 2;
          break;
        }
        e.shift(mx * quadratic_double_root(xa2, xa4, xa6, p), 0, 0);
        mx *= p;
        ++ix;
      }
      require(ix + iy - 5 <= out.delta, "I_n* loop did not terminate");
    }
    return finish({KodairaKind::InStar, ix + iy - 5}, c, ReductionType::Additive);
  }

  // triple root
  e.shift(cubic.root * p, 0, 0);
  require(divides(p2, e.a2) && divides(p3, e.a4) && divides(p4, e.a6), "triple root translation");
  {
    const BigInt a32 = div_exact(e.a3, p2);
    const BigInt a64 = div_exact(e.a6, p4);
    if (quadratic_distinct(BigInt(1), a32, -a64, p)) {
      const bool split = quadratic_splits(BigInt(1), a32, -a64, p);
      return finish({KodairaKind::IVStar, 0}, split ? 3 : 1, ReductionType::Additive);
    }
    e.shift(0, 0, p2 * quadratic_double_root(BigInt(1), a32, -a64, p));
  }
  require(divides(p3, e.a3) && divides(p4 * p, e.a6), "IV* translation");
  if (!divides(p4, e.a4)) return finish({KodairaKind::IIIStar, 0}, 2, ReductionType::Additive);
  if (!divides(p4 * p2, e.a6)) return finish({KodairaKind::IIStar, 0}, 1, ReductionType::Additive);
  throw InternalError("model is not minimal at " + p.get_str());
}

bool split_multiplicative_test(const WeierstrassModel& minimal, const BigInt& p) {
  const CurveInvariants inv = compute_invariants(minimal);
  const BigInt disc = inv.disc.get_num();
  const BigInt c4 = inv.c4.get_num();
  if (!divides(p, disc) || divides(p, c4))
    throw NotMultiplicative("reduction at " + p.get_str() + " is not multiplicative");
  if (p >= 5) return legendre(-BigInt(inv.c6.get_num()), p) == 1;
  IntModel e = to_int_model(minimal);
  auto [x0, y0] = singular_point(e, p);
  e.shift(x0, 0, y0);
  return tangent_split(e, p);
}

}  // namespace smallpoints
