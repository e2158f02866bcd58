#pragma once

// Example programs written against the smoothing API. Each one is a template
// over the scalar type so the same body runs passively (double) and under
// reverse-mode AD (Active), and each has a plain discrete twin that never
// touches the smoothing layer.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smooth/adjoint.hpp"
#include "smooth/tracer.hpp"

namespace smooth::programs {

/// Heaviside step: 0 for x < 0, 1 otherwise.
template <class T>
T step(TraceContext<T>& ctx, const T& x) {
  return ctx.branch(ctx.lt(x, T(0.0))) ? T(0.0) : T(1.0);
}

template <class T>
T listing1_f(TraceContext<T>& ctx, const T& x1, const T& x2) {
  T r = 2.0;
  if (ctx.branch(ctx.lt(T(x1 * x1 + x2 * x2), T(2.0)))) r = r - 1.0;
  if (ctx.branch(ctx.lt(x1, x2))) r = r - 1.0;
  return r;
}

/// 0 inside the disc of radius sqrt(2) above the diagonal, 2 outside it below
/// the diagonal, 1 elsewhere.
template <class T>
T discont_g(TraceContext<T>& ctx, const T& x1, const T& x2) {
  const T r2 = x1 * x1 + x2 * x2;
  if (ctx.branch(ctx.lt(r2, T(2.0)) && ctx.lt(x1, x2))) return T(0.0);
  if (ctx.branch(ctx.ge(r2, T(2.0)) && ctx.ge(x1, x2))) return T(2.0);
  return T(1.0);
}

/// max of two quadratics, written as a single branch. At a tie the first
/// argument wins.
template <class T>
T crescent(TraceContext<T>& ctx, const T& x1, const T& x2) {
  const T s = x2 - 1.0;
  const T a = x1 * x1 + s * s + x2 - 1.0;
  const T b = -(x1 * x1) - s * s + x2 + 1.0;
  return ctx.branch(ctx.ge(a, b)) ? a : b;
}

// Control-flow skeleton with a nested clause and a re-merge:
//
//   if (x < 1) {               // c1
//     x = 2x + 0.5;            // a
//     if (x > 0 && x < 2)      // c2 && c3
//       x = x - 1;             // b
//     else
//       x = 0.5x + 1;          // h
//   }
//   x = x + 0.25;              // d
//   if (x < 1.5) x = 3x - 1;   // c4, e
//
// The tree has six leaves; paths through c1's false edge are one condition
// shorter than the others.
template <class T>
T figure3_shape(TraceContext<T>& ctx, const T& x0) {
  T x = x0;
  if (ctx.branch(ctx.lt(x, T(1.0)))) {
    x = 2.0 * x + 0.5;
    if (ctx.branch(ctx.gt(x, T(0.0)) && ctx.lt(x, T(2.0))))
      x = x - 1.0;
    else
      x = 0.5 * x + 1.0;
  }
  x = x + 0.25;
  if (ctx.branch(ctx.lt(x, T(1.5)))) x = 3.0 * x - 1.0;
  return x;
}

// g(x) = x + 1 for x <= 0, x - 1 otherwise; f(y) = y + 3 for y <= 0, y
// otherwise. Around x = 0 the composition jumps from f2∘g1 to f1∘g2.
inline constexpr double kNestedGShift = 1.0;
inline constexpr double kNestedFShift = 3.0;

template <class T>
T nested_fg(TraceContext<T>& ctx, const T& x) {
  const T y = ctx.branch(ctx.le(x, T(0.0))) ? T(x + kNestedGShift) : T(x - kNestedGShift);
  return ctx.branch(ctx.le(y, T(0.0))) ? T(y + kNestedFShift) : y;
}

PiecewisePair nested_fg_pair();

// Discrete twins.
double step_reference(double x);
double listing1_f_reference(double x1, double x2);
double discont_g_reference(double x1, double x2);
double crescent_reference(double x1, double x2);
double figure3_shape_reference(double x);
double nested_fg_reference(double x);

struct ProgramSpec {
  std::string name;
  std::size_t arity = 0;
  std::size_t output_dim = 1;
  std::optional<std::vector<double>> recommended_start;
  Program<double> passive;
  Program<Active> active;
  std::function<std::vector<double>(std::span<const double>)> reference;

  template <class T>
  const Program<T>& body() const {
    if constexpr (std::is_same_v<T, double>) {
      return passive;
    } else {
      return active;
    }
  }
};

/// step, nested_fg, listing1_f, discont_g, crescent, figure3_shape.
const std::vector<ProgramSpec>& corpus();
/// Throws ConfigError for unknown names.
const ProgramSpec& find_program(std::string_view name);

}  // namespace smooth::programs
