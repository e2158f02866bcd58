#include "smooth/programs.hpp"

#include <stdexcept>

namespace smooth::programs {

namespace {

template <class Body>
ProgramSpec make_spec(std::string name, std::size_t arity, std::optional<std::vector<double>> start, Body body,
                      std::function<std::vector<double>(std::span<const double>)> reference) {
  ProgramSpec spec;
  spec.name = std::move(name);
  spec.arity = arity;
  spec.output_dim = 1;
  spec.recommended_start = std::move(start);
  spec.passive = [body](TraceContext<double>& ctx, std::span<const double> x) {
    return std::vector<double>{body(ctx, x)};
  };
  spec.active = [body](TraceContext<Active>& ctx, std::span<const Active> x) {
    return std::vector<Active>{body(ctx, x)};
  };
  spec.reference = std::move(reference);
  return spec;
}

std::vector<ProgramSpec> build_corpus() {
  std::vector<ProgramSpec> c;
  c.push_back(make_spec(
      "step", 1, std::nullopt, [](auto& ctx, auto x) { return step(ctx, x[0]); },
      [](std::span<const double> x) { return std::vector<double>{step_reference(x[0])}; }));
  c.push_back(make_spec(
      "nested_fg", 1, std::nullopt, [](auto& ctx, auto x) { return nested_fg(ctx, x[0]); },
      [](std::span<const double> x) { return std::vector<double>{nested_fg_reference(x[0])}; }));
  c.push_back(make_spec(
      "listing1_f", 2, std::nullopt, [](auto& ctx, auto x) { return listing1_f(ctx, x[0], x[1]); },
      [](std::span<const double> x) { return std::vector<double>{listing1_f_reference(x[0], x[1])}; }));
  c.push_back(make_spec(
      "discont_g", 2, std::vector<double>{1.8, -1.8}, [](auto& ctx, auto x) { return discont_g(ctx, x[0], x[1]); },
      [](std::span<const double> x) { return std::vector<double>{discont_g_reference(x[0], x[1])}; }));
  c.push_back(make_spec(
      "crescent", 2, std::vector<double>{-1.5, 2.0}, [](auto& ctx, auto x) { return crescent(ctx, x[0], x[1]); },
      [](std::span<const double> x) { return std::vector<double>{crescent_reference(x[0], x[1])}; }));
  c.push_back(make_spec(
      "figure3_shape", 1, std::nullopt, [](auto& ctx, auto x) { return figure3_shape(ctx, x[0]); },
      [](std::span<const double> x) { return std::vector<double>{figure3_shape_reference(x[0])}; }));
  return c;
}

}  // namespace

PiecewisePair nested_fg_pair() {
  return PiecewisePair{
      [](double x) { return x; },
      [](double x) { return x + kNestedGShift; },
      [](double x) { return x - kNestedGShift; },
      [](double y) { return y; },
      [](double y) { return y + kNestedFShift; },
      [](double y) { return y; },
  };
}

double step_reference(double x) { return x < 0.0 ? 0.0 : 1.0; }

double listing1_f_reference(double x1, double x2) {
  double r = 2.0;
  if (x1 * x1 + x2 * x2 < 2.0) r -= 1.0;
  if (x1 < x2) r -= 1.0;
  return r;
}

double discont_g_reference(double x1, double x2) {
  const double r2 = x1 * x1 + x2 * x2;
  if (r2 < 2.0 && x1 < x2) return 0.0;
  if (r2 >= 2.0 && x1 >= x2) return 2.0;
  return 1.0;
}

double crescent_reference(double x1, double x2) {
  const double s = x2 - 1.0;
  const double a = x1 * x1 + s * s + x2 - 1.0;
  const double b = -(x1 * x1) - s * s + x2 + 1.0;
  return a >= b ? a : b;
}

double figure3_shape_reference(double x) {
  if (x < 1.0) {
    x = 2.0 * x + 0.5;
    if (x > 0.0 && x < 2.0)
      x = x - 1.0;
    else
      x = 0.5 * x + 1.0;
  }
  x = x + 0.25;
  if (x < 1.5) x = 3.0 * x - 1.0;
  return x;
}

double nested_fg_reference(double x) {
  const double y = x <= 0.0 ? x + kNestedGShift : x - kNestedGShift;
  return y <= 0.0 ? y + kNestedFShift : y;
}

const std::vector<ProgramSpec>& corpus() {
  static const std::vector<ProgramSpec> programs = build_corpus();
  return programs;
}

const ProgramSpec& find_program(std::string_view name) {
  for (const auto& p : corpus()) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown program '" + std::string(name) + "'");
}

}  // namespace smooth::programs
