#include "doctest.h"
#include "test_support.hpp"

using namespace smallpoints;
using namespace testsupport;

TEST_CASE("minimal model, discriminant and Tate data match the reference tables") {
  for (const auto& ref : reference()) {
    CAPTURE(ref.label);
    const GlobalReductionData g = global_data(ref.input);
    CHECK(g.minimal.model == ref.minimal);
    CHECK(g.minimal.discriminant == ref.disc);
    CHECK(g.conductor() == ref.conductor);
    REQUIRE(g.local.size() == ref.primes.size());
    for (std::size_t i = 0; i < g.local.size(); ++i) {
      const auto& l = g.local[i];
      const auto& r = ref.primes[i];
      CAPTURE(r.p);
      CHECK(l.p == r.p);
      CHECK(l.delta == r.delta);
      CHECK(l.eta == r.f);
      CHECK(l.c == r.c);
      CHECK(l.kodaira.name() == r.kodaira);
    }
    // The transform carries the input model onto the minimal one.
    CHECK(apply_transform(ref.input, g.minimal.transform) == g.minimal.model);
  }
}

TEST_CASE("Tate examples") {
  const WeierstrassModel k11a1 = WeierstrassModel::from_ints(0, -1, 1, -10, -20);
  const LocalReductionData l = tate_local(k11a1, BigInt(11));
  CHECK(l.kodaira.name() == "I5");
  CHECK(l.delta == 5);
  CHECK(l.eta == 1);
  CHECK(l.m == 5);
  CHECK(l.c == 5);
  CHECK(l.reduction == ReductionType::SplitMultiplicative);

  const WeierstrassModel k37a1 = WeierstrassModel::from_ints(0, 0, 1, -1, 0);
  const LocalReductionData g2 = tate_local(k37a1, BigInt(2));
  CHECK(g2.reduction == ReductionType::Good);
  CHECK(g2.delta == 0);
  CHECK(g2.eta == 0);
  CHECK(g2.m == 1);
  CHECK(g2.c == 1);

  const WeierstrassModel k11a3 = WeierstrassModel::from_ints(0, -1, 1, 0, 0);
  const LocalReductionData l3 = tate_local(k11a3, BigInt(11));
  CHECK(l3.kodaira.name() == "I1");
  CHECK(l3.reduction == ReductionType::SplitMultiplicative);

  CHECK(split_multiplicative_test(k11a1, BigInt(11)));
  CHECK(split_multiplicative_test(k11a3, BigInt(11)));
  // The -1 twist of 11a3 is nonsplit at 11.
  const WeierstrassModel tw = WeierstrassModel::from_ints(0, 1, 0, -5, -13);
  CHECK_FALSE(split_multiplicative_test(tw, BigInt(11)));
  const LocalReductionData lt = tate_local(tw, BigInt(11));
  CHECK(lt.reduction == ReductionType::NonsplitMultiplicative);
  CHECK(lt.c == 1);
  CHECK_THROWS_AS(split_multiplicative_test(k37a1, BigInt(2)), NotMultiplicative);
}

TEST_CASE("global data and Szpiro ratio") {
  const GlobalReductionData g = global_data(WeierstrassModel::from_ints(0, -1, 1, -10, -20));
  CHECK(g.log_norm_discriminant == doctest::Approx(5 * std::log(11.0)));
  CHECK(g.log_norm_conductor == doctest::Approx(std::log(11.0)));
  CHECK(g.sigma == doctest::Approx(5.0));
  CHECK(global_data(WeierstrassModel::from_ints(0, 0, 1, -1, 0)).sigma == doctest::Approx(1.0));
  CHECK(szpiro_ratio({}) == 1.0);
}

TEST_CASE("local invariants hold at every corpus prime") {
  for (const auto& ref : reference()) {
    CAPTURE(ref.label);
    const GlobalReductionData g = global_data(ref.input);
    CHECK(g.sigma >= 1.0);
    for (const auto& l : g.local) {
      CAPTURE(l.p);
      CHECK(l.delta == l.eta + l.m - 1);
      CHECK(l.eta <= l.delta);
      CHECK(l.eta * l.eta * l.c * l.c <= 16 * l.delta * l.delta);
      if (l.reduction == ReductionType::SplitMultiplicative) CHECK(l.c == l.delta);
      else CHECK(l.c <= 4);
      const long jp = j_pole_order(g.minimal.model, l.p);
      CHECK(jp <= l.delta);
      CHECK((jp == l.delta) == (l.reduction != ReductionType::Additive));
    }
  }
}
