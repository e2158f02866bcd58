#pragma once

// Tree tracing: evaluates a program as the contribution-weighted sum over its
// relevant control-flow paths.
//
// A program is any callable `std::vector<T>(TraceContext<T>&, std::span<const T>)`
// that routes every data-dependent conditional through TraceContext::branch:
//
//   if (ctx.branch(ctx.lt(x[0] * x[0] + x[1] * x[1], T(2.0)))) r = r - 1.0;
//
// The program is re-executed once per path. Markers recorded at condition
// occurrences whose opposite branch is still relevant steer the next run down
// the other subtree, giving a depth-first traversal that never builds the
// tree. Programs must therefore be pure functions of their input and branch
// results; branching on primal values outside branch() is undetectable.

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smooth/errors.hpp"
#include "smooth/logic.hpp"

namespace smooth {

struct TraceConfig {
  Sharpness h = Sharpness(1.0);
  KernelKind kernel = KernelKind::Logistic;
  /// Opposite branches contributing less than this are pruned.
  double epsilon = std::numeric_limits<double>::epsilon();
  std::size_t max_paths = std::size_t{1} << 16;
  std::size_t max_conditions_per_path = std::size_t{1} << 14;
  /// Keep a PathRecord per evaluated path in the result.
  bool record_paths = false;
  /// Run every path twice and require identical decisions.
  bool check_replay = false;

  Smoothing smoothing() const { return {h, kernel}; }
  /// Throws ConfigError unless 0 <= epsilon < 0.5 and both budgets are >= 1.
  void validate() const;
};

enum class MarkerState { Set, Negated };

/// Condition occurrences whose opposite subtree still has to be visited, in
/// the order they were encountered along the current path.
class MarkerStore {
 public:
  struct Entry {
    std::size_t index;
    MarkerState state;
  };

  const MarkerState* find(std::size_t index) const;
  /// Appends a Set marker; `index` must exceed every stored index.
  void set(std::size_t index);
  void negate_last();
  void pop_last() { entries_.pop_back(); }

  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  const Entry& last() const { return entries_.back(); }
  std::span<const Entry> entries() const noexcept { return entries_; }

 private:
  std::vector<Entry> entries_;
};

template <class T>
struct Decision {
  std::size_t index;
  bool taken;
  T contrib;
};

template <class T>
struct PathRecord {
  std::vector<T> output;
  T kappa{};
  std::vector<Decision<T>> decisions;
};

template <class T>
struct SmoothResult {
  std::vector<T> value;
  T total_kappa{};
  std::size_t paths_evaluated = 0;
  std::optional<std::vector<PathRecord<T>>> path_records;
};

/// Per-execution state handed to the program: condition counter, running
/// path contribution and the marker store that drives replay.
template <class T>
class TraceContext {
 public:
  TraceContext(const TraceConfig& config, MarkerStore& markers) : config_(&config), markers_(&markers) {}

  /// Replays `forced` as the outcome of the first forced.size() conditions and
  /// follows the discrete program afterwards. Sets no markers.
  TraceContext(const TraceConfig& config, std::span<const bool> forced, std::size_t max_conditions)
      : config_(&config), forced_(forced), forced_mode_(true), max_conditions_(max_conditions) {}

  SmoothBool<T> lt(const T& a, const T& b) const { return smooth::lt(a, b, smoothing()); }
  SmoothBool<T> le(const T& a, const T& b) const { return smooth::le(a, b, smoothing()); }
  SmoothBool<T> gt(const T& a, const T& b) const { return smooth::gt(a, b, smoothing()); }
  SmoothBool<T> ge(const T& a, const T& b) const { return smooth::ge(a, b, smoothing()); }
  SmoothBool<T> eq(const T& a, const T& b) const { return smooth::eq(a, b, smoothing()); }

  /// Decides the branch at the next condition occurrence and multiplies the
  /// path contribution by the taken branch's local contribution.
  bool branch(const SmoothBool<T>& cond) {
    const std::size_t j = counter_++;
    const std::size_t limit = forced_mode_ ? max_conditions_ : config_->max_conditions_per_path;
    if (j >= limit) {
      throw BudgetError("path exceeded " + std::to_string(limit) + " conditions", 0, 0.0);
    }
    bool taken = cond.discrete;
    T contrib = taken ? cond.prob : T(1.0 - cond.prob);

    if (forced_mode_) {
      if (j < forced_.size() && forced_[j] != taken) {
        taken = !taken;
        contrib = T(1.0 - contrib);
      }
    } else {
      const MarkerState* marker = markers_->find(j);
      if (marker && *marker == MarkerState::Negated) {
        taken = !taken;
        contrib = T(1.0 - contrib);
      } else if (!marker) {
        const double opposite = 1.0 - primal(contrib);
        if (opposite >= config_->epsilon && opposite > 0.0) markers_->set(j);
      }
    }
    kappa_ = kappa_ * contrib;
    decisions_.push_back({j, taken, contrib});
    return taken;
  }

  Smoothing smoothing() const { return config_->smoothing(); }
  const TraceConfig& config() const noexcept { return *config_; }
  const T& kappa() const noexcept { return kappa_; }
  std::size_t conditions_seen() const noexcept { return counter_; }
  std::vector<Decision<T>>& decisions() noexcept { return decisions_; }

 private:
  const TraceConfig* config_;
  MarkerStore* markers_ = nullptr;
  std::span<const bool> forced_;
  bool forced_mode_ = false;
  std::size_t max_conditions_ = 0;
  std::size_t counter_ = 0;
  T kappa_ = T(1.0);
  std::vector<Decision<T>> decisions_;
};

template <class T>
using Program = std::function<std::vector<T>(TraceContext<T>&, std::span<const T>)>;

namespace detail {

template <class T, class Fn>
PathRecord<T> run_path(TraceContext<T>& ctx, const Fn& program, std::span<const T> input, std::size_t path_no) {
  std::vector<T> out;
  try {
    out = program(ctx, input);
  } catch (const NumericError& e) {
    throw NumericError("path " + std::to_string(path_no) + ": " + e.what());
  }
  return {std::move(out), ctx.kappa(), std::move(ctx.decisions())};
}

inline bool same_decisions(const auto& a, const auto& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const auto& x, const auto& y) { return x.index == y.index && x.taken == y.taken; });
}

}  // namespace detail

/// Executes the program once under the current markers, possibly appending
/// Set markers for conditions whose opposite branch is relevant.
template <class T, class Fn>
PathRecord<T> evaluate_path(TraceContext<T>& ctx, const Fn& program, std::span<const T> input) {
  return detail::run_path(ctx, program, input, 0);
}

/// Sum over all relevant paths of kappa_p * y_p.
template <class T, class Fn>
SmoothResult<T> trace(const Fn& program, std::span<const T> input, const TraceConfig& config) {
  config.validate();
  SmoothResult<T> result;
  result.total_kappa = T(0.0);
  if (config.record_paths) result.path_records.emplace();

  MarkerStore markers;
  double partial = 0.0;
  for (;;) {
    if (result.paths_evaluated >= config.max_paths) {
      throw BudgetError("trace exceeded " + std::to_string(config.max_paths) + " paths", result.paths_evaluated,
                        partial);
    }
    std::optional<MarkerStore> snapshot;
    if (config.check_replay) snapshot = markers;

    TraceContext<T> ctx(config, markers);
    PathRecord<T> path = detail::run_path(ctx, program, input, result.paths_evaluated);

    if (snapshot) {
      TraceContext<T> again(config, *snapshot);
      const PathRecord<T> replay = detail::run_path(again, program, input, result.paths_evaluated);
      if (!detail::same_decisions(path.decisions, replay.decisions)) {
        throw std::logic_error("program is not replay-pure: decisions differ on re-execution");
      }
    }

    if (result.paths_evaluated == 0) {
      result.value.assign(path.output.size(), T(0.0));
    } else if (path.output.size() != result.value.size()) {
      throw std::logic_error("program output dimension changed between paths");
    }
    for (std::size_t i = 0; i < path.output.size(); ++i) result.value[i] = result.value[i] + path.kappa * path.output[i];
    result.total_kappa = result.total_kappa + path.kappa;
    if (!result.value.empty()) partial = primal(result.value.front());
    ++result.paths_evaluated;
    if (result.path_records) result.path_records->push_back(std::move(path));

    while (!markers.empty() && markers.last().state == MarkerState::Negated) markers.pop_last();
    if (markers.empty()) break;
    markers.negate_last();
  }
  return result;
}

/// Exhaustive oracle: every path with nonzero contribution, found by replaying
/// forced decision prefixes. Ignores epsilon; at most `max_conditions`
/// conditions per path.
template <class T, class Fn>
std::vector<PathRecord<T>> enumerate_all_paths(const Fn& program, std::span<const T> input, const TraceConfig& config,
                                               std::size_t max_conditions = 20) {
  std::vector<PathRecord<T>> paths;
  std::vector<std::vector<bool>> pending{{}};
  while (!pending.empty()) {
    std::vector<bool> prefix = std::move(pending.back());
    pending.pop_back();
    if (paths.size() >= config.max_paths) {
      throw BudgetError("enumeration exceeded " + std::to_string(config.max_paths) + " paths", paths.size(), 0.0);
    }
    // std::vector<bool> has no contiguous storage.
    std::unique_ptr<bool[]> forced(new bool[prefix.size() + 1]);
    std::copy(prefix.begin(), prefix.end(), forced.get());
    TraceContext<T> ctx(config, std::span<const bool>(forced.get(), prefix.size()), max_conditions);
    PathRecord<T> path = detail::run_path(ctx, program, input, paths.size());

    for (std::size_t i = prefix.size(); i < path.decisions.size(); ++i) {
      const double opposite = 1.0 - primal(path.decisions[i].contrib);
      if (opposite <= 0.0) continue;
      std::vector<bool> next;
      next.reserve(i + 1);
      for (std::size_t k = 0; k < i; ++k) next.push_back(path.decisions[k].taken);
      next.push_back(!path.decisions[i].taken);
      pending.push_back(std::move(next));
    }
    if (primal(path.kappa) > 0.0) paths.push_back(std::move(path));
  }
  return paths;
}

/// Two-level nesting f(g(x)) of one-condition piecewise functions; each
/// condition is `distance <= 0`.
struct PiecewisePair {
  std::function<double(double)> g_distance, g_true, g_false;
  std::function<double(double)> f_distance, f_true, f_false;
};

/// (traced interpolation of the composition, composition of separately
/// interpolated f and g).
std::pair<double, double> compose_then_smooth_vs_smooth_then_compose(const PiecewisePair& pair, double x,
                                                                     const TraceConfig& config);

/// Contributions of the four cases {f1∘g1, f1∘g2, f2∘g1, f2∘g2} under both
/// interpolation schemes: first the traced one, second the naive one.
using CaseContributions = std::array<double, 4>;
std::pair<CaseContributions, CaseContributions> case_contributions(const PiecewisePair& pair, double x,
                                                                   const Smoothing& smoothing);

}  // namespace smooth
