// Global minimal models over Q via the Laska-Kraus-Connell reduction on
// (c4, c6), followed by the standard reduced choice of a1, a2, a3.

#include <algorithm>
#include <limits>

#include "smallpoints/errors.hpp"
#include "smallpoints/weierstrass.hpp"

namespace smallpoints {

namespace {

constexpr long kInfiniteValuation = std::numeric_limits<long>::max() / 4;

long val_or_inf(const BigInt& n, const BigInt& p) {
  return n == 0 ? kInfiniteValuation : valuation(n, p);
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Kraus: integers (c4, c6) come from an integral model iff v3(c6) != 2 and
// either c6 = -1 mod 4, or v2(c4) >= 4 and c6 = 0, 8 mod 32.
bool kraus_at(const BigInt& c4, const BigInt& c6, long p) {
  if (p == 3) return val_or_inf(c6, 3) != 2;
  if (p == 2) {
    if (mod(c6, 4) == 3) return true;
    BigInt r = mod(c6, 32);
    return val_or_inf(c4, 2) >= 4 && (r == 0 || r == 8);
  }
  return true;
}

BigInt exact_div(const BigInt& a, const BigInt& b) {
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
    throw InternalError(a.get_str() + " not divisible by " + b.get_str());
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

WeierstrassModel reduced_model_from_c4c6(const BigInt& c4, const BigInt& c6) {
  BigInt b2 = mod(-c6, 12);
  if (b2 > 6) b2 -= 12;
  BigInt b4 = exact_div(b2 * b2 - c4, 24);
  BigInt b6 = exact_div(-b2 * b2 * b2 + 36 * b2 * b4 - c6, 216);
  BigInt a1 = mod(b2, 2);
  BigInt a3 = mod(b6, 2);
  BigInt a2 = exact_div(b2 - a1, 4);
  BigInt a4 = exact_div(b4 - a1 * a3, 2);
  BigInt a6 = exact_div(b6 - a3, 4);
  return {BigRational(a1), BigRational(a2), BigRational(a3), BigRational(a4), BigRational(a6)};
}

}  // namespace

MinimalModel minimal_model(const WeierstrassModel& model, std::uint64_t factor_bound) {
  const CurveInvariants in_inv = compute_invariants(model);

  // Scale to an integral model: x = x'/D^2, y = y'/D^3.
  BigInt denom = 1;
  for (const auto& a : model.coefficients()) denom = lcm(denom, BigInt(a.get_den()));
  const BigRational u_clear(BigInt(1), denom);
  const WeierstrassModel integral = apply_transform(model, ModelTransform{u_clear, 0, 0, 0});

  const CurveInvariants inv = compute_invariants(integral);
  const BigInt c4 = inv.c4.get_num();
  const BigInt c6 = inv.c6.get_num();
  const BigInt disc = inv.disc.get_num();

  const Factorization disc_fact = factorize(disc, factor_bound);
  BigInt u_min = 1;
  Factorization min_fact;
  min_fact.sign = disc_fact.sign;
  for (const auto& [p, e] : disc_fact.factors) {
    long d = 0;
    if (e >= 12) {
      d = std::min({val_or_inf(c4, p) / 4, val_or_inf(c6, p) / 6, static_cast<long>(e) / 12});
      if (p == 2 || p == 3) {
        const long pl = p.get_si();
        while (d > 0) {
          BigInt pd = pow(p, static_cast<unsigned long>(d));
          BigInt c4d = exact_div(c4, pow(pd, 4));
          BigInt c6d = exact_div(c6, pow(pd, 6));
          if (kraus_at(c4d, c6d, pl)) break;
          --d;
        }
      }
      u_min *= pow(p, static_cast<unsigned long>(d));
    }
    unsigned rest = e - static_cast<unsigned>(12 * d);
    if (rest) min_fact.factors.push_back({p, rest});
  }

  const BigInt c4m = exact_div(c4, pow(u_min, 4));
  const BigInt c6m = exact_div(c6, pow(u_min, 6));
  MinimalModel out;
  out.model = reduced_model_from_c4c6(c4m, c6m);
  out.discriminant = exact_div(disc, pow(u_min, 12));
  out.disc_factorization = std::move(min_fact);

  const BigRational u_total = u_clear * BigRational(u_min);
  out.transform = solve_transform(model, out.model, u_total);

  const CurveInvariants out_inv = compute_invariants(out.model);
  if (out_inv.disc != BigRational(out.discriminant) ||
      out_inv.disc * pow(u_total, 12) != in_inv.disc)
    throw InternalError("minimal model discriminant mismatch for " + model.to_string());
  return out;
}

}  // namespace smallpoints
