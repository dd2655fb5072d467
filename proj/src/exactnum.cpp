#include "smallpoints/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "smallpoints/errors.hpp"

namespace smallpoints {

namespace {

// Jaeschke/Sorenson-Webster: the first 13 prime bases decide primality for
// every n < 3317044064679887385961981.
constexpr unsigned kDeterministicBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
constexpr unsigned kExtraBases[] = {43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
const BigInt kDeterministicLimit("3317044064679887385961981");

constexpr int kRhoSeeds = 8;
constexpr unsigned long kRhoIterations = 1ul << 18;

bool miller_rabin_round(const BigInt& n, const BigInt& d, unsigned long s, unsigned base) {
  BigInt a = base;
  a %= n;
  if (a == 0) return true;
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  BigInt n1 = n - 1;
  if (x == 1 || x == n1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n1) return true;
    if (x == 1) return false;
  }
  return false;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Brent's variant of Pollard rho with f(x) = x^2 + c. Returns a nontrivial
// factor or 0 if this seed fails.
BigInt brent_rho(const BigInt& n, unsigned long c) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  BigInt y = 2, x, ys, q = 1, g = 1;
  const unsigned long m = 128;
  unsigned long r = 1;
  unsigned long steps = 0;
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      unsigned long lim = std::min(m, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        y = (y * y + c) % n;
        BigInt diff = x - y;
        q = q * abs(diff) % n;
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
    steps += r;
    if (steps > kRhoIterations) return 0;
  }
  if (g == n) {
    do {
      ys = (ys * ys + c) % n;
      BigInt diff = x - ys;
      g = gcd(abs(diff), n);
    } while (g == 1);
  }
  if (g == n) return 0;
  return g;
}

void split_cofactor(const BigInt& n, const BigInt& bound_sq, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (n <= bound_sq || is_prime(n)) {
    out[n] += 1;
    return;
  }
  for (int seed = 1; seed <= kRhoSeeds; ++seed) {
    BigInt f = brent_rho(n, static_cast<unsigned long>(seed));
    if (f != 0 && f != 1 && f != n) {
      BigInt other = n / f;
      split_cofactor(f, bound_sq, out);
      split_cofactor(other, bound_sq, out);
      return;
    }
  }
  throw UnfactoredPart("composite cofactor " + n.get_str() + " resisted Pollard rho");
}

}  // namespace

BigInt Factorization::value() const {
  BigInt v = sign;
  for (const auto& pp : factors) v *= pow(pp.prime, pp.exponent);
  return v;
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  for (unsigned p : kDeterministicBases) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  BigInt d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (unsigned b : kDeterministicBases)
    if (!miller_rabin_round(n, d, s, b)) return false;
  if (n < kDeterministicLimit) return true;
  for (unsigned b : kExtraBases)
    if (!miller_rabin_round(n, d, s, b)) return false;
  return true;
}

Factorization factorize(const BigInt& n, std::uint64_t bound) {
  if (n == 0) throw ZeroInput("factorize(0)");
  Factorization result;
  result.sign = sgn(n) < 0 ? -1 : 1;
  BigInt rest = abs(n);
  std::map<BigInt, unsigned> found;

  auto take = [&](unsigned long p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e) found[BigInt(p)] += e;
  };

  take(2);
  take(3);
  // 6k +- 1 wheel
  for (unsigned long p = 5; p <= bound && rest > 1; p += 6) {
    if (BigInt(p) * p > rest) break;
    take(p);
    if (p + 2 <= bound) take(p + 2);
  }
  if (rest > 1) {
    BigInt bound_sq = BigInt(bound) * BigInt(bound);
    BigInt lim = BigInt(bound + 1) * BigInt(bound + 1);
    if (rest < lim) {
      // every composite below (bound+1)^2 has a factor <= bound
      found[rest] += 1;
    } else {
      split_cofactor(rest, bound_sq, found);
    }
  }
  for (auto& [p, e] : found) result.factors.push_back({p, e});
  return result;
}

long valuation(const BigInt& n, const BigInt& p) {
  if (n == 0) throw ZeroInput("valuation of zero");
  if (p < 2) throw InvalidArgument("valuation base must be >= 2");
  if (p == 2) return static_cast<long>(mpz_scan1(n.get_mpz_t(), 0));
  BigInt rest = n;
  long k = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    ++k;
  }
  return k;
}

long valuation(const BigRational& q, const BigInt& p) {
  if (q == 0) throw ZeroInput("valuation of zero");
  return valuation(BigInt(q.get_num()), p) - valuation(BigInt(q.get_den()), p);
}

BigInt strip_prime(const BigInt& n, const BigInt& p) {
  BigInt rest = n;
  if (rest == 0) return rest;
  while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t()))
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
  return rest;
}

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt inverse_mod(const BigInt& a, const BigInt& p) {
  BigInt r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()))
    throw InternalError("no inverse of " + a.get_str() + " mod " + p.get_str());
  return r;
}

int legendre(const BigInt& a, const BigInt& p) {
  return mpz_legendre(mod(a, p).get_mpz_t(), p.get_mpz_t());
}

BigInt reduce_mod(const BigRational& q, const BigInt& p) {
  BigInt den = q.get_den();
  if (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t()))
    throw InvalidArgument("rational is not p-integral");
  return mod(BigInt(q.get_num()) * inverse_mod(den, p), p);
}

double log_abs(const BigInt& n) {
  if (n == 0) throw ZeroInput("log of zero");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

double log_abs(const BigRational& q) {
  return log_abs(BigInt(q.get_num())) - log_abs(BigInt(q.get_den()));
}

long double to_long_double(const BigRational& q) {
  if (q == 0) return 0.0L;
  // Scale to an integer with about 70 significant bits, then rebuild the
  // value from two exactly representable halves.
  const BigInt num = q.get_num(), den = q.get_den();
  const long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                 static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  const long k = 70 - e;
  BigInt scaled;
  if (k >= 0) {
    mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_tdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  } else {
    BigInt d2;
    mpz_mul_2exp(d2.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-k));
    mpz_tdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), d2.get_mpz_t());
  }
  BigInt hi;
  mpz_tdiv_q_2exp(hi.get_mpz_t(), scaled.get_mpz_t(), 35);
  BigInt lo = scaled - (hi << 35);
  long double v = static_cast<long double>(hi.get_d()) * 34359738368.0L +
                  static_cast<long double>(lo.get_d());
  return std::ldexp(v, static_cast<int>(-k));
}

bool is_integer(const BigRational& q) { return q.get_den() == 1; }

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

BigRational pow(const BigRational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw ZeroInput("negative power of zero");
    BigRational inv = 1 / base;
    return pow(inv, -exponent);
  }
  BigRational r(pow(BigInt(base.get_num()), static_cast<unsigned long>(exponent)),
                pow(BigInt(base.get_den()), static_cast<unsigned long>(exponent)));
  r.canonicalize();
  return r;
}

BigRational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto to_int = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return BigInt(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_int(text)) throw InvalidArgument("not a rational: '" + std::string(text) + "'");
    return BigRational(to_int(text));
  }
  auto num = trim(text.substr(0, slash));
  auto den = trim(text.substr(slash + 1));
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
    throw InvalidArgument("not a rational: '" + std::string(text) + "'");
  BigInt d = to_int(den);
  if (d == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
  BigRational q(to_int(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const BigInt& n) { return n.get_str(); }

std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace smallpoints
