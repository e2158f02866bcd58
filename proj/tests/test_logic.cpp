#include <doctest.h>

#include <cmath>
#include <random>

#include "smooth/adjoint.hpp"
#include "smooth/logic.hpp"

using namespace smooth;

namespace {

const Smoothing kOne{Sharpness(1.0), KernelKind::Logistic};
const Smoothing kDiscrete{Sharpness::infinite(), KernelKind::Logistic};

SmoothBool<double> sb(bool d, double p) { return {d, p}; }

}  // namespace

TEST_CASE("less-than family") {
  auto r = lt(1.0, 3.0, kOne);
  CHECK(r.discrete);
  CHECK(r.prob == doctest::Approx(0.8807970779778823).epsilon(1e-14));

  r = le(2.0, 2.0, kOne);
  CHECK(r.discrete);
  CHECK(r.prob == 0.5);

  r = lt(2.0, 2.0, kOne);
  CHECK_FALSE(r.discrete);
  CHECK(r.prob == 0.5);

  r = lt(5.0, 1.0, kDiscrete);
  CHECK_FALSE(r.discrete);
  CHECK(r.prob == 0.0);

  r = lt(2.0, 2.0, kDiscrete);
  CHECK_FALSE(r.discrete);
  CHECK(r.prob == 0.0);
  r = le(2.0, 2.0, kDiscrete);
  CHECK(r.discrete);
  CHECK(r.prob == 1.0);
}

TEST_CASE("greater-than family") {
  auto r = gt(3.0, 1.0, kOne);
  CHECK(r.discrete);
  CHECK(r.prob == doctest::Approx(0.8807970779778823).epsilon(1e-14));

  r = ge(2.0, 2.0, kOne);
  CHECK(r.discrete);
  CHECK(r.prob == 0.5);

  for (double x : {-3.0, 0.0, 7.25}) {
    r = gt(x, x, Smoothing{Sharpness(3.0), KernelKind::GaussianCdf});
    CHECK_FALSE(r.discrete);
    CHECK(r.prob == 0.5);
  }
}

TEST_CASE("equality") {
  auto r = eq(2.0, 2.0, kOne);
  CHECK(r.discrete);
  CHECK(r.prob == 0.25);

  r = eq(0.0, 4.0, kOne);
  CHECK_FALSE(r.discrete);
  CHECK(r.prob == doctest::Approx(0.017662706213291118).epsilon(1e-12));

  // Infinite sharpness uses the host comparison, ties included.
  r = eq(1.0, 1.0, kDiscrete);
  CHECK(r.discrete);
  CHECK(r.prob == 1.0);
  r = eq(1.0, 2.0, kDiscrete);
  CHECK_FALSE(r.discrete);
  CHECK(r.prob == 0.0);
}

TEST_CASE("NaN operands are rejected") {
  const double nan = std::nan("");
  CHECK_THROWS_AS(lt(nan, 1.0, kOne), NumericError);
  CHECK_THROWS_AS(ge(1.0, nan, kOne), NumericError);
  CHECK_THROWS_AS(eq(nan, nan, kOne), NumericError);
}

TEST_CASE("connective examples") {
  auto r = sb(true, 0.9) && sb(true, 0.8);
  CHECK(r.discrete);
  CHECK(r.prob == doctest::Approx(0.72).epsilon(1e-15));
  CHECK((sb(true, 0.5) && sb(true, 0.5)).prob == 0.25);
  r = sb(true, 1.0) && sb(false, 0.0);
  CHECK_FALSE(r.discrete);
  CHECK(r.prob == 0.0);

  r = sb(false, 0.2) || sb(false, 0.3);
  CHECK_FALSE(r.discrete);
  CHECK(r.prob == doctest::Approx(0.44).epsilon(1e-15));
  r = sb(true, 1.0) || sb(false, 0.0);
  CHECK(r.discrete);
  CHECK(r.prob == 1.0);
  const auto p = sb(true, 0.3);
  CHECK((p || p).prob == doctest::Approx(2 * 0.3 - 0.09).epsilon(1e-15));

  r = !sb(true, 0.9);
  CHECK_FALSE(r.discrete);
  CHECK(r.prob == doctest::Approx(0.1).epsilon(1e-15));
  r = !sb(true, 0.5);
  CHECK_FALSE(r.discrete);
  CHECK(r.prob == 0.5);
}

TEST_CASE("connective properties over random pairs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < 2000; ++i) {
    const auto p = sb(coin(rng), unit(rng));
    const auto q = sb(coin(rng), unit(rng));
    const auto a = p && q;
    const auto o = p || q;
    const auto n = !p;
    CHECK(a.discrete == (p.discrete && q.discrete));
    CHECK(o.discrete == (p.discrete || q.discrete));
    CHECK(n.discrete == !p.discrete);
    for (double v : {a.prob, o.prob, n.prob}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(std::abs((!(p && q)).prob - ((!p) || (!q)).prob) <= 1e-12);
    CHECK(std::abs((!(p || q)).prob - ((!p) && (!q)).prob) <= 1e-12);
    CHECK((!!p).prob == doctest::Approx(p.prob).epsilon(1e-15));
    CHECK((!!p).discrete == p.discrete);
  }
}

TEST_CASE("comparison properties over random operands") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> value(-4.0, 4.0);
  for (double h : {0.5, 1.0, 10.0}) {
    const Smoothing s{Sharpness(h), KernelKind::Logistic};
    for (int i = 0; i < 500; ++i) {
      const double a = value(rng);
      const double b = i % 10 == 0 ? a : value(rng);
      CHECK(lt(a, b, s).prob == le(a, b, s).prob);
      CHECK(gt(a, b, s).prob == 1.0 - lt(a, b, s).prob);
      CHECK(ge(a, b, s).prob == gt(a, b, s).prob);
      const double sigma = lt(a, b, s).prob;
      CHECK(eq(a, b, s).prob == sigma * (1.0 - sigma));
      // Orientation: discrete truth coincides with prob >= 1/2 except at ties,
      // where the host comparison decides.
      if (a != b) {
        CHECK(lt(a, b, s).discrete == (lt(a, b, s).prob >= 0.5));
        CHECK(ge(a, b, s).discrete == (ge(a, b, s).prob >= 0.5));
      }
    }
  }
}

TEST_CASE("contribution is differentiated through active comparisons") {
  Tape tape;
  const Active x = tape.variable(0.0);
  const auto r = ge(x, Active(0.0), kOne);
  const Seed seed{r.prob, 1.0};
  tape.interpret(std::span<const Seed>(&seed, 1));
  // d/dx (1 - sigma(-x)) at 0 is the logistic density 1/4.
  CHECK(tape.adjoint(x) == doctest::Approx(0.25).epsilon(1e-14));
}
