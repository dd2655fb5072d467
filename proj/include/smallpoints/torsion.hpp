#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smallpoints/weierstrass.hpp"

namespace smallpoints {

struct TorsionSubgroup {
  long order = 1;
  /// Invariant factors: {n} for Z/n (empty when trivial), {2, m} for Z/2 x Z/m.
  std::vector<long> structure;
  std::vector<CurvePoint> points;  // sorted, includes O

  std::string structure_name() const;  // "trivial", "Z/5", "Z/2xZ/8"
};

/// #E(F_p) for an odd prime of good reduction. Throws BadPrime.
long point_count_mod_p(const WeierstrassModel& minimal, long p);

/// gcd of #E(F_p) over the first five odd good primes below 100.
long torsion_order_bound(const WeierstrassModel& minimal, std::vector<long>* primes_used = nullptr);

/// The exact order of P if it is torsion of order <= max_order, else 0.
long torsion_order(const WeierstrassModel& model, const CurvePoint& P, long max_order);

/// Integral points of the short model (Y = 0 or Y^2 | disc) pulled back. Unverified.
std::vector<CurvePoint> torsion_candidates_lutz_nagell(const WeierstrassModel& minimal,
                                                       std::uint64_t factor_bound = kDefaultFactorBound);

/// Points whose order divides `bound`, from rational roots of division polynomials
/// for each prime power of `bound`. Excludes O.
std::vector<CurvePoint> torsion_candidates_division(const WeierstrassModel& minimal, long bound);

/// Full rational torsion subgroup. Both searches run and must agree.
TorsionSubgroup torsion_subgroup(const WeierstrassModel& minimal,
                                 std::uint64_t factor_bound = kDefaultFactorBound);

}  // namespace smallpoints
