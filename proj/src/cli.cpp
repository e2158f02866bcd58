#include "smooth/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <future>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "smooth/gradient.hpp"
#include "smooth/optimize.hpp"
#include "smooth/programs.hpp"

namespace smooth::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string program;
  std::string input;
  std::string h = "1";
  std::string kernel = "logistic";
  double eps = std::numeric_limits<double>::epsilon();
  std::size_t max_paths = std::size_t{1} << 16;
  std::size_t max_conditions = std::size_t{1} << 14;
  std::string grid;
  std::string format = "csv";
  std::string out;

  std::string method = "adam";
  double lr = 0.02;
  std::size_t steps = 300;
  std::string start;
  std::string sweep_h;
  std::string sweep_steps;
  std::string out_dir;
  std::string objective = "smoothed";
  bool discrete_final = false;
};

struct Grid {
  double x1_min, x1_max, x2_min, x2_max;
  std::size_t resolution;
};

std::string num(double v) { return fmt::format("{}", v); }

double parse_double(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("invalid number '" + std::string(text) + "'");
  return v;
}

std::vector<std::string> split(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t comma = text.find(',', begin);
    const std::size_t stop = comma == std::string_view::npos ? text.size() : comma;
    std::string part(text.substr(begin, stop - begin));
    if (part.empty()) throw ConfigError("empty element in list '" + std::string(text) + "'");
    parts.push_back(std::move(part));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return parts;
}

std::vector<double> parse_vector(std::string_view text) {
  std::vector<double> values;
  for (const auto& part : split(text)) {
    const double v = parse_double(part);
    if (!std::isfinite(v)) throw ConfigError("non-finite coordinate '" + part + "'");
    values.push_back(v);
  }
  return values;
}

Grid parse_grid(std::string_view text) {
  const auto parts = split(text);
  if (parts.size() != 5) throw ConfigError("grid expects x1_min,x1_max,x2_min,x2_max,resolution");
  Grid g{parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]), parse_double(parts[3]), 0};
  const double res = parse_double(parts[4]);
  if (res < 2 || res != std::floor(res) || res > 1e6) throw ConfigError("grid resolution must be an integer >= 2");
  g.resolution = static_cast<std::size_t>(res);
  if (!(g.x1_min < g.x1_max) || !(g.x2_min < g.x2_max)) throw ConfigError("grid ranges must be ordered");
  return g;
}

TraceConfig trace_config(const RunConfig& rc) {
  TraceConfig tc;
  tc.h = Sharpness::parse(rc.h);
  tc.kernel = parse_kernel(rc.kernel);
  tc.epsilon = rc.eps;
  tc.max_paths = rc.max_paths;
  tc.max_conditions_per_path = rc.max_conditions;
  tc.validate();
  return tc;
}

std::vector<double> program_input(const programs::ProgramSpec& spec, std::string_view text) {
  if (text.empty()) throw ConfigError("--input is required");
  auto x = parse_vector(text);
  if (x.size() != spec.arity) {
    throw ConfigError("program '" + spec.name + "' takes " + std::to_string(spec.arity) + " inputs, got " +
                      std::to_string(x.size()));
  }
  return x;
}

void check_format(const RunConfig& rc) {
  if (rc.format != "csv" && rc.format != "jsonl") throw ConfigError("format must be csv or jsonl");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open '" + path.string() + "' for writing");
  file << text;
  if (!file) throw ConfigError("failed writing '" + path.string() + "'");
}

void emit(const RunConfig& rc, const std::string& text, std::ostream& out) {
  if (rc.out.empty()) {
    out << text;
  } else {
    write_file(rc.out, text);
  }
}

int cmd_eval(const RunConfig& rc, std::ostream& out) {
  check_format(rc);
  const auto& spec = programs::find_program(rc.program);
  const auto tc = trace_config(rc);
  const auto x = program_input(spec, rc.input);

  const auto result = trace<double>(spec.passive, std::span<const double>(x), tc);
  std::string text;
  if (rc.format == "csv") {
    text = "value,total_kappa,paths_evaluated\n" +
           fmt::format("{},{},{}\n", num(result.value.front()), num(result.total_kappa), result.paths_evaluated);
  } else {
    json j{{"value", result.value.front()},
           {"total_kappa", result.total_kappa},
           {"paths_evaluated", result.paths_evaluated}};
    text = j.dump() + "\n";
  }
  emit(rc, text, out);
  return kOk;
}

int cmd_field(const RunConfig& rc, std::ostream& out) {
  check_format(rc);
  const auto& spec = programs::find_program(rc.program);
  if (spec.arity != 2) throw ConfigError("field requires a two-input program");
  const auto tc = trace_config(rc);
  if (rc.grid.empty()) throw ConfigError("--grid is required");
  const Grid g = parse_grid(rc.grid);

  std::string text;
  if (rc.format == "csv") text = "x1,x2,value,dv_dx1,dv_dx2,paths\n";
  const auto n = static_cast<double>(g.resolution - 1);
  for (std::size_t i = 0; i < g.resolution; ++i) {
    const double x1 = g.x1_min + (g.x1_max - g.x1_min) * static_cast<double>(i) / n;
    for (std::size_t k = 0; k < g.resolution; ++k) {
      const double x2 = g.x2_min + (g.x2_max - g.x2_min) * static_cast<double>(k) / n;
      const double x[] = {x1, x2};
      const auto r = gradient(spec.active, x, tc);
      if (rc.format == "csv") {
        text += fmt::format("{},{},{},{},{},{}\n", num(x1), num(x2), num(r.value.front()), num(r.gradient[0]),
                            num(r.gradient[1]), r.paths_evaluated);
      } else {
        json j{{"x1", x1},           {"x2", x2}, {"value", r.value.front()}, {"dv_dx1", r.gradient[0]},
               {"dv_dx2", r.gradient[1]}, {"paths", r.paths_evaluated}};
        text += j.dump() + "\n";
      }
    }
  }
  emit(rc, text, out);
  return kOk;
}

int cmd_paths(const RunConfig& rc, std::ostream& out) {
  const auto& spec = programs::find_program(rc.program);
  auto tc = trace_config(rc);
  tc.record_paths = true;
  const auto x = program_input(spec, rc.input);

  const auto result = trace<double>(spec.passive, std::span<const double>(x), tc);
  std::string text;
  for (const auto& path : *result.path_records) {
    json decisions = json::array();
    for (const auto& d : path.decisions) {
      decisions.push_back({{"index", d.index}, {"taken", d.taken}, {"contrib", d.contrib}});
    }
    json j{{"kappa", path.kappa}, {"output", path.output}, {"decisions", std::move(decisions)}};
    text += j.dump() + "\n";
  }
  text += json{{"paths_evaluated", result.paths_evaluated}, {"total_kappa", result.total_kappa}}.dump() + "\n";
  emit(rc, text, out);
  return kOk;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string text = "iter";
  const std::size_t n = trajectory.front().iterate.size();
  for (std::size_t i = 1; i <= n; ++i) text += fmt::format(",x{}", i);
  text += ",objective,grad_norm\n";
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const auto& p = trajectory[k];
    text += std::to_string(k);
    for (double xi : p.iterate) text += "," + num(xi);
    text += "," + num(p.objective) + "," + num(p.gradient_norm) + "\n";
  }
  return text;
}

int cmd_optimize(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const auto& spec = programs::find_program(rc.program);
  TraceConfig tc = trace_config(rc);
  if (rc.objective != "smoothed" && rc.objective != "discrete") {
    throw ConfigError("objective must be smoothed or discrete");
  }
  const bool discrete_table = rc.objective == "discrete";

  OptimizerConfig opt;
  opt.method = parse_method(rc.method);
  opt.learning_rate = rc.lr;
  opt.steps = rc.steps;
  if (!rc.start.empty()) {
    opt.start = parse_vector(rc.start);
  } else if (spec.recommended_start) {
    opt.start = *spec.recommended_start;
  } else {
    throw ConfigError("program '" + spec.name + "' has no recommended start; pass --start");
  }
  if (opt.start.size() != spec.arity) throw ConfigError("--start does not match the program's input dimension");

  if (rc.sweep_h.empty()) {
    if (!rc.sweep_steps.empty()) throw ConfigError("--sweep-steps requires --sweep-h");
    opt.validate();
    const Trajectory trajectory = run_optimization(spec, opt, tc);
    emit(rc, trajectory_csv(trajectory), out);
    if (rc.discrete_final) {
      err << "discrete_objective," << num(discrete_objective(spec, trajectory.back().iterate)) << "\n";
    }
    return kOk;
  }

  std::vector<Sharpness> hs;
  for (const auto& part : split(rc.sweep_h)) hs.push_back(Sharpness::parse(part));
  std::vector<std::size_t> step_counts;
  for (const auto& part : split(rc.sweep_steps.empty() ? "200,300,400,500,750,1000,1500,2000" : rc.sweep_steps)) {
    const double s = parse_double(part);
    if (s < 1 || s != std::floor(s)) throw ConfigError("sweep steps must be positive integers");
    step_counts.push_back(static_cast<std::size_t>(s));
  }
  // A run is a prefix of any longer run with the same settings, so one run per
  // sharpness covers every step count.
  opt.steps = *std::max_element(step_counts.begin(), step_counts.end());
  opt.validate();

  std::vector<std::future<Trajectory>> runs;
  for (const auto& h : hs) {
    TraceConfig cell = tc;
    cell.h = h;
    runs.push_back(std::async(std::launch::async, [&spec, opt, cell] { return run_optimization(spec, opt, cell); }));
  }
  std::vector<Trajectory> trajectories;
  for (auto& run : runs) trajectories.push_back(run.get());

  std::string table = "h";
  for (auto s : step_counts) table += "," + std::to_string(s);
  table += "\n";
  for (std::size_t r = 0; r < hs.size(); ++r) {
    table += hs[r].to_string();
    for (auto s : step_counts) {
      const auto& point = trajectories[r][s];
      table += "," + num(discrete_table ? discrete_objective(spec, point.iterate) : point.objective);
    }
    table += "\n";
  }

  if (!rc.out_dir.empty()) {
    std::filesystem::create_directories(rc.out_dir);
    for (std::size_t r = 0; r < hs.size(); ++r) {
      write_file(std::filesystem::path(rc.out_dir) / ("trajectory_h" + hs[r].to_string() + ".csv"),
                 trajectory_csv(trajectories[r]));
    }
  }
  emit(rc, table, out);
  return kOk;
}

std::string config_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return num(v.get<double>());
  if (v.is_array()) {
    std::string joined;
    for (const auto& e : v) joined += (joined.empty() ? "" : ",") + config_value(e);
    return joined;
  }
  throw ConfigError("unsupported config value " + v.dump());
}

/// Appends `--key=value` for every config-file key not given on the command
/// line, so flags override the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;

  std::ifstream file(path);
  if (!file) throw ConfigError("cannot read config '" + path + "'");
  json config;
  try {
    config = json::parse(file);
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in '" + path + "': " + e.what());
  }
  if (!config.is_object()) throw ConfigError("config must be a JSON object");

  std::vector<std::string> expanded = args;
  for (const auto& [key, value] : config.items()) {
    if (key == "config") continue;
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) expanded.push_back(flag);
      continue;
    }
    expanded.push_back(flag + "=" + config_value(value));
  }
  return expanded;
}

void add_trace_options(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--config", "JSON file mirroring these flags; flags take precedence");
  cmd->add_option("--program", rc.program, "program name")->required();
  cmd->add_option("--h", rc.h, "sharpness (positive float or inf)");
  cmd->add_option("--eps", rc.eps, "pruning threshold in [0, 0.5)");
  cmd->add_option("--kernel", rc.kernel, "logistic | gauss");
  cmd->add_option("--max-paths", rc.max_paths, "path budget per trace");
  cmd->add_option("--max-conditions", rc.max_conditions, "condition budget per path");
  cmd->add_option("--out", rc.out, "output file (default: standard output)");
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Smooth interpolation and differentiation of programs with discontinuous control flow", "smoothflow"};
  app.require_subcommand(1);
  // --h is the sharpness, so help is long-form only.
  app.set_help_flag("--help", "print this help and exit");

  auto* eval = app.add_subcommand("eval", "trace one input and print value, total contribution and path count");
  add_trace_options(eval, rc);
  eval->add_option("--input", rc.input, "comma-separated input");
  eval->add_option("--format", rc.format, "csv | jsonl");

  auto* field = app.add_subcommand("field", "value and gradient over a 2-D grid");
  add_trace_options(field, rc);
  field->add_option("--grid", rc.grid, "x1_min,x1_max,x2_min,x2_max,resolution");
  field->add_option("--format", rc.format, "csv | jsonl");

  auto* paths = app.add_subcommand("paths", "dump every evaluated path as JSON lines");
  add_trace_options(paths, rc);
  paths->add_option("--input", rc.input, "comma-separated input");

  auto* optimize = app.add_subcommand("optimize", "gradient descent / ADAM on the smoothed program");
  add_trace_options(optimize, rc);
  optimize->add_option("--method", rc.method, "gd | adam");
  optimize->add_option("--lr", rc.lr, "learning rate");
  optimize->add_option("--steps", rc.steps, "iterations");
  optimize->add_option("--start", rc.start, "comma-separated start point");
  optimize->add_option("--sweep-h", rc.sweep_h, "comma-separated sharpness values for a sweep");
  optimize->add_option("--sweep-steps", rc.sweep_steps, "comma-separated step counts for a sweep");
  optimize->add_option("--out-dir", rc.out_dir, "directory for per-run trajectories of a sweep");
  optimize->add_option("--objective", rc.objective, "objective tabulated by a sweep: smoothed | discrete");
  optimize->add_flag("--discrete-final", rc.discrete_final, "also report the discrete objective at the final iterate");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (eval->parsed()) return cmd_eval(rc, out);
    if (field->parsed()) return cmd_field(rc, out);
    if (paths->parsed()) return cmd_paths(rc, out);
    return cmd_optimize(rc, out, err);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << " (paths evaluated: " << e.paths_evaluated()
        << ", partial value: " << num(e.partial_value()) << ")\n";
    return kBudget;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumeric;
  }
}

}  // namespace smooth::cli
