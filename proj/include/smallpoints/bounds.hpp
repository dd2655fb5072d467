#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "smallpoints/heights.hpp"
#include "smallpoints/localdata.hpp"
#include "smallpoints/torsion.hpp"

namespace smallpoints {

/// The explicit constants of the small-points bounds. Overridable so that a
/// shadow run can corrupt them.
struct PaperConstants {
  double c1 = 134861.0;
  double c2 = 104613.0;
  double lang_denominator_base = 1e15;
  double threshold_divisor = 24576.0;  // 2^13 * 3
  double elkies_log = 0.5;
  double elkies_j = 1.0 / 12.0;
  double elkies_const = 16.0 / 5.0;
  double torus_radius = 1.0 / 24.0;
  double torus_factor = 1.0 / 288.0;
  double tlem_factor = std::numbers::e / (std::numbers::e - 1.0);
  // |S| <= 24^2 N with N <= (e/(e-1)) (148 x log(148 x) + 971 x), x = d sigma^2.
  double pigeonhole = 576.0;
  double ratineq_a = 148.0;
  double ratineq_b = 971.0;
};

struct BoundInputs {
  int d = 1;
  double sigma = 1.0;
  double log_norm_discriminant = 0.0;
};

enum class CheckStatus { Pass, Fail, Skipped };
std::string to_string(CheckStatus s);

struct BoundReport {
  std::string label;
  std::string check;
  std::string place;  // "inf", a prime, or "-"
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // >= -slack iff pass
  CheckStatus status = CheckStatus::Skipped;
  std::string context;
};

/// lhs <= rhs.
BoundReport upper_report(std::string check, double lhs, double rhs, double slack);
/// lhs >= rhs.
BoundReport lower_report(std::string check, double lhs, double rhs, double slack);
/// lhs == rhs exactly.
BoundReport equal_report(std::string check, long lhs, long rhs);
BoundReport skipped_report(std::string check, std::string reason);

double torsion_bound(const BoundInputs& in, const PaperConstants& k = {});
double lang_constant(const BoundInputs& in, const PaperConstants& k = {});
double small_height_threshold(const BoundInputs& in, const PaperConstants& k = {});
/// The bound obtained from the pigeonhole count and the auxiliary inequality,
/// before it is rounded up to c1 x log(c2 x).
double constants_chain_value(const BoundInputs& in, const PaperConstants& k = {});

double tlem_bound(double A, double B, const PaperConstants& k = {});
/// max{N >= 1 : N <= A log N + B} over N <= scan_limit, 0 when none.
long tlem_brute(double A, double B, long scan_limit = 10000);

/// Everything the curve-level verifiers need.
struct CurveContext {
  std::string label;
  const CurveHeights* heights = nullptr;
  const TorsionSubgroup* torsion = nullptr;
  BoundInputs inputs;
};

BoundInputs curve_inputs(const GlobalReductionData& g);

BoundReport verify_ogg(const LocalReductionData& local);
BoundReport verify_local_conductor_ineq(const LocalReductionData& local);
BoundReport verify_jdisc(const WeierstrassModel& minimal, const LocalReductionData& local);
BoundReport verify_reduction_rules(const LocalReductionData& local);
BoundReport verify_jensen(const GlobalReductionData& g, double slack);
BoundReport verify_constants_chain(const BoundInputs& in, const PaperConstants& k, double slack);

BoundReport verify_theorem1(const CurveContext& c, const PaperConstants& k, double slack);
/// Throws TorsionPointSupplied when a supplied point has hhat <= 10 tol.
BoundReport verify_theorem2(const CurveContext& c, std::span<const CurvePoint> points,
                            const PaperConstants& k, double slack, double tol);
BoundReport verify_prop41(const CurveContext& c, std::span<const CurvePoint> points,
                          const PaperConstants& k, double slack);

BoundReport verify_lemma31(const CurveContext& c, std::span<const CurvePoint> Z,
                           const LocalReductionData& local, double slack);
BoundReport verify_lemma32(const CurveContext& c, std::span<const CurvePoint> Z,
                           const PaperConstants& k, double slack);
/// Sum over finite places of Lambda_v(Z) >= (1/12)(1/(16 sigma^2) - 1/N) log|N(Delta)|.
BoundReport verify_nonarch_sum(const CurveContext& c, std::span<const CurvePoint> Z, double slack);
/// Lambda(Z) <= (4/N) sum hhat(P_j).
BoundReport verify_parallelogram(const CurveContext& c, std::span<const CurvePoint> Z, double slack);
/// |Lambda(Z) - sum_v Lambda_v(Z)| <= slack.
BoundReport verify_decomposition(const CurveContext& c, std::span<const CurvePoint> Z, double slack);

/// lambda(z) >= (1/288) max{1, log|j(tau)|} on seeded samples with |r1|, |r2| <= 1/24.
BoundReport verify_hindry_torus(std::complex<double> tau, long sample_count, std::uint64_t seed,
                                const PaperConstants& k = {}, double slack = 1e-9,
                                const HeightConfig& config = {});

}  // namespace smallpoints
