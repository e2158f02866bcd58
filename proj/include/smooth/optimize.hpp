#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "smooth/programs.hpp"

namespace smooth {

enum class Method { GD, Adam };

Method parse_method(std::string_view name);

struct OptimizerConfig {
  Method method = Method::Adam;
  double learning_rate = 0.02;
  std::size_t steps = 300;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double delta = 1e-8;
  std::vector<double> start;

  void validate() const;
};

struct TrajectoryPoint {
  std::vector<double> iterate;
  double objective = 0.0;
  double gradient_norm = 0.0;
};

/// steps + 1 points, the first being the start.
using Trajectory = std::vector<TrajectoryPoint>;

/// x - lr * grad.
std::vector<double> gd_step(std::span<const double> x, std::span<const double> grad, double lr);

struct AdamState {
  std::vector<double> x;
  std::vector<double> m;
  std::vector<double> v;
  std::size_t t = 0;

  explicit AdamState(std::vector<double> start)
      : x(std::move(start)), m(x.size(), 0.0), v(x.size(), 0.0) {}
};

/// One bias-corrected ADAM update of state.x; increments the timestep.
void adam_step(AdamState& state, std::span<const double> grad, const OptimizerConfig& config);

/// Descends the smoothed program (or the discrete one for infinite
/// sharpness). Objectives are those of the traced program at each iterate.
Trajectory run_optimization(const programs::ProgramSpec& program, const OptimizerConfig& opt,
                            const TraceConfig& trace_config);

/// Objective of the unsmoothed program at x.
double discrete_objective(const programs::ProgramSpec& program, std::span<const double> x);

}  // namespace smooth
