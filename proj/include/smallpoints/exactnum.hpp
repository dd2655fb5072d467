#pragma once

// Exact integers and rationals (GMP-backed), factorization, valuations.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace smallpoints {

using BigInt = mpz_class;
/// Always kept canonical: gcd(num, den) = 1 and den > 0.
using BigRational = mpq_class;

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;  // strictly increasing primes

  BigInt value() const;
};

inline constexpr std::uint64_t kDefaultFactorBound = 100000;

/// Deterministic Miller-Rabin. Exact below 3.3e24; beyond that the same
/// fixed base set (extended) is used and the answer is probabilistic.
bool is_prime(const BigInt& n);

/// Trial division up to `bound`, then Brent-Pollard rho with fixed seeds.
/// Throws UnfactoredPart when a composite cofactor above bound^2 resists rho.
Factorization factorize(const BigInt& n, std::uint64_t bound = kDefaultFactorBound);

/// ord_p(n). Throws ZeroInput for n = 0.
long valuation(const BigInt& n, const BigInt& p);
long valuation(const BigRational& q, const BigInt& p);

/// n with every factor p removed.
BigInt strip_prime(const BigInt& n, const BigInt& p);

/// Nonnegative residue of a modulo m (m > 0).
BigInt mod(const BigInt& a, const BigInt& m);
/// Inverse of a modulo the prime p. a must be a unit.
BigInt inverse_mod(const BigInt& a, const BigInt& p);
/// Legendre symbol (a|p) for an odd prime p.
int legendre(const BigInt& a, const BigInt& p);
/// Reduction of a p-integral rational modulo p.
BigInt reduce_mod(const BigRational& q, const BigInt& p);

/// Natural log of |n|, finite for any nonzero n regardless of size.
double log_abs(const BigInt& n);
double log_abs(const BigRational& q);
/// Closest long double to q, without overflow for huge num/den.
long double to_long_double(const BigRational& q);

bool is_integer(const BigRational& q);
BigInt pow(const BigInt& base, unsigned long exponent);
BigRational pow(const BigRational& base, long exponent);

/// Parses "p", "-p" or "p/q" (q != 0). Throws InvalidArgument.
BigRational parse_rational(std::string_view text);
std::string to_string(const BigInt& n);
std::string to_string(const BigRational& q);

}  // namespace smallpoints
