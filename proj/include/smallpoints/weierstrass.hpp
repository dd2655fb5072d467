#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "smallpoints/exactnum.hpp"

namespace smallpoints {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
struct WeierstrassModel {
  BigRational a1, a2, a3, a4, a6;

  static WeierstrassModel from_ints(long a1, long a2, long a3, long a4, long a6);
  std::array<BigRational, 5> coefficients() const { return {a1, a2, a3, a4, a6}; }
  bool is_integral() const;
  std::string to_string() const;  // "[a1,a2,a3,a4,a6]"

  friend bool operator==(const WeierstrassModel&, const WeierstrassModel&) = default;
};

struct CurveInvariants {
  BigRational b2, b4, b6, b8;
  BigRational c4, c6;
  BigRational disc;
  std::optional<BigRational> j;  // absent iff disc == 0
};

/// b/c/discriminant/j of the model. Throws SingularModel when disc == 0.
CurveInvariants compute_invariants(const WeierstrassModel& model);
/// Same formulas without the nonsingularity check.
CurveInvariants raw_invariants(const WeierstrassModel& model);

/// A rational point, or the point at infinity. Carries no model reference.
class CurvePoint {
 public:
  CurvePoint() = default;  // infinity
  CurvePoint(BigRational x, BigRational y) : affine_(std::in_place, std::move(x), std::move(y)) {}

  static CurvePoint infinity() { return {}; }

  bool is_infinity() const { return !affine_.has_value(); }
  const BigRational& x() const;
  const BigRational& y() const;
  std::string to_string() const;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
  friend bool operator<(const CurvePoint& a, const CurvePoint& b);

 private:
  std::optional<std::pair<BigRational, BigRational>> affine_;
};

bool on_curve(const WeierstrassModel& model, const CurvePoint& p);
CurvePoint negate(const WeierstrassModel& model, const CurvePoint& p);
CurvePoint add_points(const WeierstrassModel& model, const CurvePoint& p, const CurvePoint& q);
CurvePoint subtract_points(const WeierstrassModel& model, const CurvePoint& p, const CurvePoint& q);
CurvePoint double_point(const WeierstrassModel& model, const CurvePoint& p);
CurvePoint scalar_mul(const WeierstrassModel& model, std::int64_t n, const CurvePoint& p);

/// psi_n(P) for 1 <= n <= 5 with psi_2 = 2y + a1 x + a3. Throws InfinityInput.
BigRational division_polynomial(const WeierstrassModel& model, int n, const CurvePoint& p);

/// x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct ModelTransform {
  BigRational u{1}, r{0}, s{0}, t{0};

  static ModelTransform identity() { return {}; }
  /// Apply *this first, then `next`.
  ModelTransform then(const ModelTransform& next) const;
  ModelTransform inverse() const;

  friend bool operator==(const ModelTransform&, const ModelTransform&) = default;
};

WeierstrassModel apply_transform(const WeierstrassModel& model, const ModelTransform& t);
/// Maps a point of `model` to the transformed model.
CurvePoint map_point(const ModelTransform& t, const CurvePoint& p);
/// The transform carrying `from` onto `to` given the scaling u (u^12 = disc ratio).
ModelTransform solve_transform(const WeierstrassModel& from, const WeierstrassModel& to,
                               const BigRational& u);

struct MinimalModel {
  WeierstrassModel model;
  ModelTransform transform;  // input model -> minimal model
  BigInt discriminant;       // minimal discriminant
  Factorization disc_factorization;
};

/// Global minimal model in reduced form (a1, a3 in {0,1}, a2 in {-1,0,1}).
MinimalModel minimal_model(const WeierstrassModel& model,
                           std::uint64_t factor_bound = kDefaultFactorBound);

/// log max(|num x|, den x); 0 at infinity.
double naive_x_height(const CurvePoint& p);

}  // namespace smallpoints
