#include "smooth/tracer.hpp"

namespace smooth {

void TraceConfig::validate() const {
  if (!(epsilon >= 0.0 && epsilon < 0.5)) throw ConfigError("epsilon must lie in [0, 0.5)");
  if (max_paths < 1) throw ConfigError("max_paths must be at least 1");
  if (max_conditions_per_path < 1) throw ConfigError("max_conditions_per_path must be at least 1");
}

const MarkerState* MarkerStore::find(std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.index < i; });
  if (it == entries_.end() || it->index != index) return nullptr;
  return &it->state;
}

void MarkerStore::set(std::size_t index) {
  if (!entries_.empty() && entries_.back().index >= index) {
    throw std::logic_error("markers must be set in increasing condition order");
  }
  entries_.push_back({index, MarkerState::Set});
}

void MarkerStore::negate_last() { entries_.back().state = MarkerState::Negated; }

std::pair<double, double> compose_then_smooth_vs_smooth_then_compose(const PiecewisePair& pair, double x,
                                                                     const TraceConfig& config) {
  auto program = [&pair](TraceContext<double>& ctx, std::span<const double> in) {
    const double y = ctx.branch(ctx.le(pair.g_distance(in[0]), 0.0)) ? pair.g_true(in[0]) : pair.g_false(in[0]);
    const double z = ctx.branch(ctx.le(pair.f_distance(y), 0.0)) ? pair.f_true(y) : pair.f_false(y);
    return std::vector<double>{z};
  };
  const double input[] = {x};
  const double traced = trace<double>(program, input, config).value.front();

  const Smoothing s = config.smoothing();
  const double sg = contrib_true(pair.g_distance(x), s.h, s.kernel);
  const double g_smooth = sg * pair.g_true(x) + (1.0 - sg) * pair.g_false(x);
  const double sf = contrib_true(pair.f_distance(g_smooth), s.h, s.kernel);
  const double naive = sf * pair.f_true(g_smooth) + (1.0 - sf) * pair.f_false(g_smooth);
  return {traced, naive};
}

std::pair<CaseContributions, CaseContributions> case_contributions(const PiecewisePair& pair, double x,
                                                                   const Smoothing& s) {
  const double sg = contrib_true(pair.g_distance(x), s.h, s.kernel);
  const double sf1 = contrib_true(pair.f_distance(pair.g_true(x)), s.h, s.kernel);
  const double sf2 = contrib_true(pair.f_distance(pair.g_false(x)), s.h, s.kernel);
  const CaseContributions traced{sg * sf1, (1.0 - sg) * sf2, sg * (1.0 - sf1), (1.0 - sg) * (1.0 - sf2)};

  const double g_smooth = sg * pair.g_true(x) + (1.0 - sg) * pair.g_false(x);
  const double sf = contrib_true(pair.f_distance(g_smooth), s.h, s.kernel);
  const CaseContributions naive{sg * sf, (1.0 - sg) * sf, sg * (1.0 - sf), (1.0 - sg) * (1.0 - sf)};
  return {traced, naive};
}

}  // namespace smooth
