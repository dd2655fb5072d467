#pragma once

#include <span>
#include <string>
#include <vector>

#include "smallpoints/exactnum.hpp"
#include "smallpoints/weierstrass.hpp"

namespace smallpoints {

enum class KodairaKind { I0, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };

struct KodairaSymbol {
  KodairaKind kind = KodairaKind::I0;
  int n = 0;  // only for In and InStar

  std::string name() const;  // "I0", "I5", "II", "I1*", "IV*", ...
  /// Number of components of the special fiber of the minimal regular model.
  int components() const;

  friend bool operator==(const KodairaSymbol&, const KodairaSymbol&) = default;
};

enum class ReductionType { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

std::string to_string(ReductionType r);

struct LocalReductionData {
  BigInt p;
  int delta = 0;  // ord_p of the minimal discriminant
  int eta = 0;    // conductor exponent, from Ogg's formula
  int m = 1;      // components of the special fiber
  int c = 1;      // Tamagawa number
  KodairaSymbol kodaira;
  ReductionType reduction = ReductionType::Good;

  bool is_multiplicative() const {
    return reduction == ReductionType::SplitMultiplicative ||
           reduction == ReductionType::NonsplitMultiplicative;
  }
};

/// Tate's algorithm at p on a globally minimal integral model.
LocalReductionData tate_local(const WeierstrassModel& minimal, const BigInt& p);

/// Split vs nonsplit multiplicative reduction. For p >= 5 decided by whether
/// -c6 is a square mod p; for p = 2, 3 by the tangent slopes at the node.
/// Throws NotMultiplicative.
bool split_multiplicative_test(const WeierstrassModel& minimal, const BigInt& p);

struct GlobalReductionData {
  WeierstrassModel input;
  MinimalModel minimal;
  std::vector<LocalReductionData> local;  // bad primes, increasing
  double log_norm_discriminant = 0.0;     // sum delta_p log p
  double log_norm_conductor = 0.0;        // sum eta_p log p
  double sigma = 1.0;

  BigInt conductor() const;
  const LocalReductionData* at(const BigInt& p) const;
};

/// Szpiro ratio of a list of bad-prime data; 1 when the list is empty.
double szpiro_ratio(std::span<const LocalReductionData> local);

GlobalReductionData global_data(const WeierstrassModel& model,
                                std::uint64_t factor_bound = kDefaultFactorBound);

/// max(0, -ord_p j), the exponent in log+|j|_p.
long j_pole_order(const WeierstrassModel& minimal, const BigInt& p);

}  // namespace smallpoints
