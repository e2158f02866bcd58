#pragma once

#include <span>
#include <vector>

#include "smooth/adjoint.hpp"
#include "smooth/tracer.hpp"

namespace smooth {

struct GradientResult {
  std::vector<double> value;
  /// d value[output_index] / d input.
  std::vector<double> gradient;
  double total_kappa = 0.0;
  std::size_t paths_evaluated = 0;
};

/// Traces the program over active scalars on a fresh tape and differentiates
/// one output of the smoothed result. Path contributions and the weighted sum
/// are recorded, so the gradient includes how contributions move with the
/// input.
template <class Fn>
GradientResult gradient(const Fn& program, std::span<const double> input, const TraceConfig& config,
                        std::size_t output_index = 0) {
  Tape tape;
  std::vector<Active> x;
  x.reserve(input.size());
  for (double v : input) x.push_back(tape.variable(v));

  const SmoothResult<Active> traced = trace<Active>(program, std::span<const Active>(x), config);
  if (output_index >= traced.value.size()) throw std::out_of_range("output index out of range");

  const Seed seed{traced.value[output_index], 1.0};
  tape.interpret(std::span<const Seed>(&seed, 1));

  GradientResult result;
  result.value.reserve(traced.value.size());
  for (const Active& v : traced.value) result.value.push_back(v.value());
  result.gradient.reserve(x.size());
  for (const Active& xi : x) result.gradient.push_back(tape.adjoint(xi));
  result.total_kappa = traced.total_kappa.value();
  result.paths_evaluated = traced.paths_evaluated;
  return result;
}

}  // namespace smooth
