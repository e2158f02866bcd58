#include "smooth/optimize.hpp"

#include <cmath>
#include <string>

#include "smooth/gradient.hpp"

namespace smooth {

Method parse_method(std::string_view name) {
  if (name == "gd") return Method::GD;
  if (name == "adam") return Method::Adam;
  throw ConfigError("unknown method '" + std::string(name) + "' (expected gd|adam)");
}

void OptimizerConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (steps < 1) throw ConfigError("steps must be at least 1");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("ADAM betas must lie in [0, 1)");
  }
  if (!(delta > 0.0)) throw ConfigError("ADAM delta must be positive");
}

std::vector<double> gd_step(std::span<const double> x, std::span<const double> grad, double lr) {
  if (x.size() != grad.size()) throw ConfigError("gradient and iterate sizes differ");
  std::vector<double> next(x.begin(), x.end());
  for (std::size_t i = 0; i < next.size(); ++i) next[i] -= lr * grad[i];
  return next;
}

void adam_step(AdamState& state, std::span<const double> grad, const OptimizerConfig& config) {
  if (state.x.size() != grad.size()) throw ConfigError("gradient and iterate sizes differ");
  ++state.t;
  const double t = static_cast<double>(state.t);
  const double correction1 = 1.0 - std::pow(config.beta1, t);
  const double correction2 = 1.0 - std::pow(config.beta2, t);
  for (std::size_t i = 0; i < state.x.size(); ++i) {
    state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * grad[i];
    state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
    const double m_hat = state.m[i] / correction1;
    const double v_hat = state.v[i] / correction2;
    state.x[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.delta);
  }
}

double discrete_objective(const programs::ProgramSpec& program, std::span<const double> x) {
  return program.reference(x).front();
}

Trajectory run_optimization(const programs::ProgramSpec& program, const OptimizerConfig& opt,
                            const TraceConfig& trace_config) {
  opt.validate();
  trace_config.validate();
  if (opt.start.size() != program.arity) {
    throw ConfigError("start has " + std::to_string(opt.start.size()) + " coordinates, program '" + program.name +
                      "' expects " + std::to_string(program.arity));
  }

  Trajectory trajectory;
  trajectory.reserve(opt.steps + 1);
  AdamState adam(opt.start);
  std::vector<double> x = opt.start;

  for (std::size_t k = 0;; ++k) {
    GradientResult g;
    try {
      g = gradient(program.active, x, trace_config);
    } catch (const NumericError& e) {
      throw NumericError("iteration " + std::to_string(k) + ": " + e.what());
    } catch (const BudgetError& e) {
      throw BudgetError("iteration " + std::to_string(k) + ": " + e.what(), e.paths_evaluated(), e.partial_value());
    }
    double norm = 0.0;
    for (double gi : g.gradient) norm += gi * gi;
    trajectory.push_back({x, g.value.front(), std::sqrt(norm)});
    if (k == opt.steps) break;

    if (opt.method == Method::GD) {
      x = gd_step(x, g.gradient, opt.learning_rate);
    } else {
      adam_step(adam, g.gradient, opt);
      x = adam.x;
    }
  }
  return trajectory;
}

}  // namespace smooth
