#include <cmath>

#include "smallpoints/errors.hpp"
#include "smallpoints/localdata.hpp"

namespace smallpoints {

std::string KodairaSymbol::name() const {
  switch (kind) {
    case KodairaKind::I0: return "I0";
    case KodairaKind::In: return "I" + std::to_string(n);
    case KodairaKind::II: return "II";
    case KodairaKind::III: return "III";
    case KodairaKind::IV: return "IV";
    case KodairaKind::I0Star: return "I0*";
    case KodairaKind::InStar: return "I" + std::to_string(n) + "*";
    case KodairaKind::IVStar: return "IV*";
    case KodairaKind::IIIStar: return "III*";
    case KodairaKind::IIStar: return "II*";
  }
  return "?";
}

int KodairaSymbol::components() const {
  switch (kind) {
    case KodairaKind::I0: return 1;
    case KodairaKind::In: return n;
    case KodairaKind::II: return 1;
    case KodairaKind::III: return 2;
    case KodairaKind::IV: return 3;
    case KodairaKind::I0Star: return 5;
    case KodairaKind::InStar: return n + 5;
    case KodairaKind::IVStar: return 7;
    case KodairaKind::IIIStar: return 8;
    case KodairaKind::IIStar: return 9;
  }
  return 0;
}

std::string to_string(ReductionType r) {
  switch (r) {
    case ReductionType::Good: return "good";
    case ReductionType::SplitMultiplicative: return "split";
    case ReductionType::NonsplitMultiplicative: return "nonsplit";
    case ReductionType::Additive: return "additive";
  }
  return "?";
}

BigInt GlobalReductionData::conductor() const {
  BigInt n = 1;
  for (const auto& l : local) n *= pow(l.p, static_cast<unsigned long>(l.eta));
  return n;
}

const LocalReductionData* GlobalReductionData::at(const BigInt& p) const {
  for (const auto& l : local)
    if (l.p == p) return &l;
  return nullptr;
}

double szpiro_ratio(std::span<const LocalReductionData> local) {
  double disc = 0.0, cond = 0.0;
  for (const auto& l : local) {
    const double lp = log_abs(l.p);
    disc += l.delta * lp;
    cond += l.eta * lp;
  }
  if (local.empty() || cond == 0.0) return 1.0;
  return disc / cond;
}

GlobalReductionData global_data(const WeierstrassModel& model, std::uint64_t factor_bound) {
  GlobalReductionData g;
  g.input = model;
  g.minimal = minimal_model(model, factor_bound);
  for (const auto& pp : g.minimal.disc_factorization.factors) {
    LocalReductionData l = tate_local(g.minimal.model, pp.prime);
    if (l.delta != static_cast<int>(pp.exponent))
      throw InternalError("delta mismatch at " + pp.prime.get_str());
    const double lp = log_abs(pp.prime);
    g.log_norm_discriminant += l.delta * lp;
    g.log_norm_conductor += l.eta * lp;
    g.local.push_back(std::move(l));
  }
  g.sigma = szpiro_ratio(g.local);
  return g;
}

long j_pole_order(const WeierstrassModel& minimal, const BigInt& p) {
  const CurveInvariants inv = compute_invariants(minimal);
  if (*inv.j == 0) return 0;
  return std::max(0L, -valuation(*inv.j, p));
}

}  // namespace smallpoints
