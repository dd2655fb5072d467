#pragma once

// Neron local heights normalized so that, on the identity component,
//   lambda_v(P) = 1/2 log+|x(P)|_v + 1/12 log|1/Delta|_v,
// and the canonical height is their sum, hhat(P) = 1/2 lim 4^-n h_x(2^n P).
// That is half the value reported by most current software.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smallpoints/exactnum.hpp"
#include "smallpoints/localdata.hpp"
#include "smallpoints/weierstrass.hpp"

namespace smallpoints {

struct HeightConfig {
  double series_tol = 1e-12;
  int doubling_oracle_steps = 12;
};

/// A place of Q: the real place, or a finite prime.
class Place {
 public:
  static Place archimedean() { return Place(); }
  static Place finite(BigInt p) { return Place(std::move(p)); }

  bool is_archimedean() const { return prime_ == 0; }
  const BigInt& prime() const { return prime_; }
  std::string name() const { return is_archimedean() ? "inf" : prime_.get_str(); }

  friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
  friend bool operator<(const Place& a, const Place& b) { return a.prime_ < b.prime_; }

 private:
  Place() = default;
  explicit Place(BigInt p) : prime_(std::move(p)) {}
  BigInt prime_{0};
};

/// Periodic second Bernoulli polynomial {t}^2 - {t} + 1/6.
double b2_periodic(double t);
BigRational b2_periodic(const BigRational& t);

/// Local data for a prime of good reduction.
LocalReductionData good_local_data(const BigInt& p);

/// True iff P reduces to a nonsingular point mod p (P in E_0(Q_p)).
bool in_identity_component(const WeierstrassModel& minimal, const BigInt& p, const CurvePoint& P);

/// The component map r(P) in [0, 1/2], sign-reduced. Throws NotMultiplicative.
BigRational component_fraction(const WeierstrassModel& minimal, const LocalReductionData& local,
                               const CurvePoint& P);

/// lambda_p(P) on the minimal model. Throws InfinityInput.
double nonarch_local_height(const WeierstrassModel& minimal, const LocalReductionData& local,
                            const CurvePoint& P);

/// lambda_inf(P). Throws InfinityInput, NonConvergent.
double arch_local_height(const WeierstrassModel& model, const CurvePoint& P,
                         const HeightConfig& config = {});

struct IJParts {
  double i_part = 0.0;  // nonnegative intersection term
  double j_part = 0.0;  // 1/2 B2(r(P - Q)) log|j|_p
};

/// lambda_p(P - Q) = i + j at a multiplicative prime.
IJParts ij_decomposition(const WeierstrassModel& minimal, const LocalReductionData& local,
                         const CurvePoint& P, const CurvePoint& Q);

struct LocalHeightBreakdown {
  Place place = Place::archimedean();
  double lambda = 0.0;
  std::optional<BigRational> r_value;
  std::optional<double> i_part;
  std::optional<double> j_part;
};

/// Height machinery for one curve. Points are on the minimal model.
class CurveHeights {
 public:
  explicit CurveHeights(GlobalReductionData data, HeightConfig config = {});

  const GlobalReductionData& data() const { return data_; }
  const WeierstrassModel& model() const { return data_.minimal.model; }
  const HeightConfig& config() const { return config_; }

  /// Input-model point to minimal-model point.
  CurvePoint to_minimal(const CurvePoint& input_point) const;

  LocalReductionData local_data(const BigInt& p) const;
  double local_height(const Place& place, const CurvePoint& P) const;
  double canonical_height(const CurvePoint& P) const;
  /// Every place with a nonzero contribution; factors the x denominator.
  std::vector<LocalHeightBreakdown> breakdown(const CurvePoint& P) const;

  /// Lambda_v(Z) = N^-2 sum_{i != j} lambda_v(P_i - P_j). Throws DuplicatePoints.
  double lambda_sum(std::span<const CurvePoint> Z, const Place& place) const;
  /// Lambda(Z) = N^-2 sum_{i,j} hhat(P_i - P_j).
  double height_disc_sum(std::span<const CurvePoint> Z) const;
  /// Real place, bad primes, and every prime dividing a difference denominator.
  std::vector<Place> difference_support(std::span<const CurvePoint> Z) const;

 private:
  GlobalReductionData data_;
  HeightConfig config_;
};

/// hhat(P) for P on an arbitrary model.
double canonical_height(const WeierstrassModel& model, const CurvePoint& P,
                        const HeightConfig& config = {});

}  // namespace smallpoints
