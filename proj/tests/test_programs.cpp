#include <doctest.h>

#include <cmath>
#include <random>

#include "smooth/programs.hpp"

using namespace smooth;

namespace {

double eval(std::string_view name, std::vector<double> x, Sharpness h, double eps = 1e-15) {
  TraceConfig c;
  c.h = h;
  c.epsilon = eps;
  return trace<double>(programs::find_program(name).passive, std::span<const double>(x), c).value[0];
}

}  // namespace

TEST_CASE("crescent") {
  CHECK(eval("crescent", {0.0, 1.0}, Sharpness::infinite()) == 2.0);
  CHECK(eval("crescent", {0.0, 0.0}, Sharpness::infinite()) == 0.0);
  CHECK(programs::crescent_reference(0.0, 0.0) == 0.0);

  // On the switch curve the two quadratics are mixed half and half. At
  // x1 = 0 the curve is (x2 - 1)^2 = 1, e.g. x2 = 0 where both equal 0, or
  // x2 = 2 where both equal 2.
  CHECK(eval("crescent", {0.0, 2.0}, Sharpness(1.0)) == doctest::Approx(2.0).epsilon(1e-15));
  // Off-axis point on the curve: x1 = 0.5, (x2 - 1)^2 = 0.75.
  const double x2 = 1.0 + std::sqrt(0.75);
  const double a = 0.25 + 0.75 + x2 - 1.0;
  CHECK(eval("crescent", {0.5, x2}, Sharpness(1.0)) == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("crescent mixture at the switch curve") {
  // Pick a point slightly off the curve so the two quadratics differ, and
  // compare against the two-case mixture written out by hand.
  const double x1 = 0.3;
  const double x2 = 0.2;
  const double s = x2 - 1.0;
  const double a = x1 * x1 + s * s + x2 - 1.0;
  const double b = -(x1 * x1) - s * s + x2 + 1.0;
  const double w = 1.0 - contrib_true(a - b, Sharpness(1.0), KernelKind::Logistic);
  CHECK(eval("crescent", {x1, x2}, Sharpness(1.0)) == doctest::Approx(w * a + (1.0 - w) * b).epsilon(1e-14));
}

TEST_CASE("listing1_f") {
  CHECK(eval("listing1_f", {0.0, 0.0}, Sharpness::infinite()) == 1.0);
  CHECK(eval("listing1_f", {0.0, 0.0}, Sharpness(1.0)) == doctest::Approx(0.6192029220221177).epsilon(1e-13));
  for (double h : {1.0, 10.0, 100.0}) CHECK(eval("listing1_f", {10.0, -10.0}, Sharpness(h)) == doctest::Approx(2.0));
}

TEST_CASE("discont_g") {
  CHECK(eval("discont_g", {0.0, 1.0}, Sharpness::infinite()) == 0.0);
  CHECK(eval("discont_g", {2.0, -2.0}, Sharpness::infinite()) == 2.0);
  CHECK(eval("discont_g", {0.0, 2.0}, Sharpness::infinite()) == 1.0);
  CHECK(programs::discont_g_reference(0.0, 1.0) == 0.0);
  CHECK(programs::discont_g_reference(2.0, -2.0) == 2.0);
  CHECK(programs::discont_g_reference(0.0, 2.0) == 1.0);
}

TEST_CASE("step") {
  CHECK(eval("step", {0.0}, Sharpness(1.0)) == 0.5);
  CHECK(eval("step", {-3.0}, Sharpness::infinite()) == 0.0);
  CHECK(eval("step", {0.0}, Sharpness::infinite()) == 1.0);
}

TEST_CASE("figure3_shape") {
  TraceConfig c;
  c.h = Sharpness(100.0);
  c.record_paths = true;
  const double far[] = {-10.0};
  const auto r = trace<double>(programs::find_program("figure3_shape").passive, std::span<const double>(far), c);
  CHECK(r.paths_evaluated == 1);
  CHECK(r.total_kappa == 1.0);

  // The clause's local contribution is the product of its two comparisons.
  c.h = Sharpness(1.0);
  const double mid[] = {0.4};
  const auto m = trace<double>(programs::find_program("figure3_shape").passive, std::span<const double>(mid), c);
  const double y = 2.0 * 0.4 + 0.5;
  const double clause = (1.0 - contrib_true(y, c.h, c.kernel)) * contrib_true(y - 2.0, c.h, c.kernel);
  bool found = false;
  for (const auto& p : *m.path_records) {
    if (p.decisions.size() == 3 && p.decisions[0].taken) {
      const double expected = p.decisions[1].taken ? clause : 1.0 - clause;
      CHECK(p.decisions[1].contrib == doctest::Approx(expected).epsilon(1e-14));
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("nested_fg contributions factor across the two levels") {
  TraceConfig c;
  c.h = Sharpness(2.0);
  c.epsilon = 0.0;
  c.record_paths = true;
  const double x = 0.3;
  const double in[] = {x};
  const auto r = trace<double>(programs::find_program("nested_fg").passive, std::span<const double>(in), c);
  REQUIRE(r.paths_evaluated == 4);
  const double sg = contrib_true(x, c.h, c.kernel);
  const double sf_g1 = contrib_true(x + programs::kNestedGShift, c.h, c.kernel);
  for (const auto& p : *r.path_records) {
    if (p.decisions[0].taken && !p.decisions[1].taken) {
      // Case f2∘g1: sigma_g(x) * (1 - sigma_f(g1(x))).
      CHECK(p.kappa == doctest::Approx(sg * (1.0 - sf_g1)).epsilon(1e-14));
    }
    if (p.decisions[0].taken && p.decisions[1].taken) {
      CHECK(p.kappa == doctest::Approx(sg * sf_g1).epsilon(1e-14));
    }
  }
}

TEST_CASE("infinite sharpness matches the discrete twins exactly") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  TraceConfig c;
  c.h = Sharpness::infinite();
  for (const auto& p : programs::corpus()) {
    for (int i = 0; i < 1000; ++i) {
      std::vector<double> x(p.arity);
      for (auto& xi : x) xi = u(rng);
      CHECK(trace<double>(p.passive, std::span<const double>(x), c).value == p.reference(x));
    }
  }
}

TEST_CASE("corpus programs are replay-pure") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  TraceConfig c;
  c.h = Sharpness(1.0);
  c.check_replay = true;
  for (const auto& p : programs::corpus()) {
    for (int i = 0; i < 50; ++i) {
      std::vector<double> x(p.arity);
      for (auto& xi : x) xi = u(rng);
      CHECK_NOTHROW(trace<double>(p.passive, std::span<const double>(x), c));
    }
  }
}

TEST_CASE("lookup") {
  CHECK(programs::find_program("crescent").arity == 2);
  CHECK(programs::find_program("crescent").recommended_start == std::vector<double>{-1.5, 2.0});
  CHECK(programs::corpus().size() == 6);
  CHECK_THROWS_AS(programs::find_program("rosenbrock"), ConfigError);
}
