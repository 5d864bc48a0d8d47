// firecal command-line front end: simulate, compare, calibrate, realtime and
// benchmark subcommands over the text-based raster formats. Every artifact-
// writing run emits a manifest.json capturing the inputs and every resolved
// default needed to reproduce the run bit-exactly.
//
// Exit codes: 0 success, 1 validation error (bad flags, missing or malformed
// inputs), 2 runtime failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include "firecal/firecal.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace firecal;

namespace {

struct CommonInputs {
  std::string grid, fuels, weather, ignition;
  int ign_row = -1, ign_col = -1;
  double ign_time = 0.0;
};

void add_common_inputs(CLI::App* cmd, CommonInputs& in) {
  cmd->add_option("--grid", in.grid, "fuel-code raster (ASCII grid)")->required();
  cmd->add_option("--fuels", in.fuels, "fuel table CSV")->required();
  cmd->add_option("--weather", in.weather, "weather stream CSV")->required();
  cmd->add_option("--ignition", in.ignition, "ignition CSV (row,col,start_time)");
  cmd->add_option("--ign-row", in.ign_row, "ignition row (alternative to --ignition)");
  cmd->add_option("--ign-col", in.ign_col, "ignition column");
  cmd->add_option("--ign-time", in.ign_time, "ignition start time [min]")->capture_default_str();
}

void require_readable(const std::string& path, const std::string& what) {
  if (path.empty() || !fs::exists(path)) {
    throw std::invalid_argument("missing " + what + " file: '" + path + "'");
  }
}

IgnitionSpec resolve_ignition(const CommonInputs& in) {
  if (!in.ignition.empty()) {
    require_readable(in.ignition, "ignition");
    return load_ignition(in.ignition);
  }
  if (in.ign_row < 0 || in.ign_col < 0) {
    throw std::invalid_argument("provide --ignition or both --ign-row and --ign-col");
  }
  return IgnitionSpec{in.ign_row, in.ign_col, in.ign_time};
}

struct LoadedInputs {
  Landscape land;
  WeatherStream weather;
  IgnitionSpec ignition;
};

LoadedInputs load_inputs(const CommonInputs& in) {
  require_readable(in.grid, "fuel grid");
  require_readable(in.fuels, "fuel table");
  require_readable(in.weather, "weather");
  LoadedInputs loaded{load_landscape(in.grid, in.fuels), load_weather(in.weather),
                      resolve_ignition(in)};
  return loaded;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> values;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    values.push_back(io_detail::parse_double(token, "factor"));
  }
  return values;
}

json factors_to_json(const AdjustmentSet& set) {
  json j;
  if (set.mode == AdjustmentSet::Mode::Global) {
    j["mode"] = "global";
    j["factors"] = {set.global_factors.x1, set.global_factors.x2, set.global_factors.x3,
                    set.global_factors.x4};
  } else {
    j["mode"] = "fms";
    json per;
    for (const auto& [id, t] : set.per_fuel) {
      per[std::to_string(id)] = {t.x1, t.x2, t.x3, t.x4};
    }
    j["per_fuel"] = per;
  }
  return j;
}

AdjustmentSet factors_from_json(const json& j) {
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "global") {
    const auto v = j.at("factors").get<std::vector<double>>();
    if (v.size() != 4) {
      throw std::invalid_argument("global factors need 4 entries");
    }
    return AdjustmentSet::global(FactorTuple{v[0], v[1], v[2], v[3]});
  }
  if (mode == "fms") {
    std::map<int, FactorTuple> per_fuel;
    for (const auto& [key, value] : j.at("per_fuel").items()) {
      const auto v = value.get<std::vector<double>>();
      if (v.size() != 4) {
        throw std::invalid_argument("per-fuel factors need 4 entries");
      }
      per_fuel[std::stoi(key)] = FactorTuple{v[0], v[1], v[2], v[3]};
    }
    return AdjustmentSet::fms(std::move(per_fuel));
  }
  throw std::invalid_argument("factor mode must be 'global' or 'fms'");
}

AdjustmentSet resolve_factors(const std::string& inline_factors,
                              const std::string& factors_file) {
  if (!factors_file.empty()) {
    require_readable(factors_file, "factors");
    return factors_from_json(json::parse(io_detail::read_text(factors_file)));
  }
  if (!inline_factors.empty()) {
    const auto v = parse_number_list(inline_factors);
    if (v.size() != 4) {
      throw std::invalid_argument("--factors needs exactly 4 comma-separated values");
    }
    return AdjustmentSet::global(FactorTuple{v[0], v[1], v[2], v[3]});
  }
  return AdjustmentSet::identity();
}

void write_json_atomic(const fs::path& path, const json& j) {
  io_detail::write_text_atomic(path, j.dump(2) + "\n");
}

std::string scar_name(double minutes) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scar_%04d.asc", static_cast<int>(std::llround(minutes)));
  return buf;
}

// Observed scars: either a directory of scar_<minutes>.asc files or an
// explicit comma-separated list spaced by --report-every.
ScarSeries load_observed(const std::string& observed, const std::string& observed_files,
                         double report_every) {
  if (!observed.empty()) {
    if (!fs::is_directory(observed)) {
      throw std::invalid_argument("--observed must name a directory: '" + observed + "'");
    }
    const std::regex pattern("scar_([0-9]+)\\.asc");
    std::map<double, fs::path> by_time;
    for (const auto& entry : fs::directory_iterator(observed)) {
      std::smatch match;
      const std::string name = entry.path().filename().string();
      if (std::regex_match(name, match, pattern)) {
        by_time[std::stod(match[1])] = entry.path();
      }
    }
    if (by_time.empty()) {
      throw std::invalid_argument("no scar_<minutes>.asc files in '" + observed + "'");
    }
    std::vector<fs::path> paths;
    std::vector<double> timestamps;
    for (const auto& [t, p] : by_time) {
      timestamps.push_back(t);
      paths.push_back(p);
    }
    return load_scars(paths, timestamps);
  }
  if (observed_files.empty()) {
    throw std::invalid_argument("provide --observed or --observed-files");
  }
  std::vector<fs::path> paths;
  std::string token;
  std::istringstream in(observed_files);
  while (std::getline(in, token, ',')) {
    require_readable(token, "observed scar");
    paths.emplace_back(token);
  }
  std::vector<double> timestamps;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    timestamps.push_back(report_every * static_cast<double>(i + 1));
  }
  return load_scars(paths, timestamps);
}

std::vector<double> resolve_mu(const std::string& preset, const std::string& mu_file,
                               std::size_t periods) {
  if (preset == "uniform") {
    return std::vector<double>(periods, 1.0 / static_cast<double>(periods));
  }
  if (preset == "final-only") {
    std::vector<double> mu(periods, 0.0);
    mu.back() = 1.0;
    return mu;
  }
  if (preset == "custom-file") {
    if (mu_file.empty()) {
      throw std::invalid_argument("--mu custom-file requires --mu-file");
    }
    require_readable(mu_file, "mu");
    std::vector<double> mu;
    std::istringstream in(io_detail::read_text(mu_file));
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r,") == std::string::npos) {
        continue;
      }
      for (double v : parse_number_list(line)) {
        mu.push_back(v);
      }
    }
    if (mu.size() != periods) {
      throw std::invalid_argument("mu file must hold one weight per observed period");
    }
    return mu;
  }
  throw std::invalid_argument("--mu must be uniform, final-only or custom-file");
}

struct CalibrationFlags {
  std::string mode = "global";
  std::string algorithm = "quadratic-tr";
  std::string mu_preset = "uniform";
  std::string mu_file;
  long long max_evals = 200;
  double max_time = std::numeric_limits<double>::infinity();
  double xtol = 1e-16;
  int m_points = 0;
  double tr_radius = 0.5;
  double lo = 0.01, hi = 10.0;
  bool unconstrained = false;
  std::string norm = "frobenius";
  double dt = 1.0;
};

void add_calibration_flags(CLI::App* cmd, CalibrationFlags& state) {
  cmd->add_option("--mode", state.mode, "global or fms")->capture_default_str()
      ->check(CLI::IsMember({"global", "fms"}));
  cmd->add_option("--algorithm", state.algorithm, "optimizer")->capture_default_str()
      ->check(CLI::IsMember({"nelder-mead", "pattern-search", "quadratic-tr"}));
  cmd->add_option("--mu", state.mu_preset, "weights: uniform, final-only or custom-file")->capture_default_str();
  cmd->add_option("--mu-file", state.mu_file, "weights file for --mu custom-file");
  cmd->add_option("--max-evals", state.max_evals, "evaluation budget")->capture_default_str();
  cmd->add_option("--max-time", state.max_time, "wall-clock budget [s]");
  cmd->add_option("--xtol", state.xtol, "absolute x tolerance")->capture_default_str();
  cmd->add_option("--m-points", state.m_points, "interpolation points (quadratic-tr)");
  cmd->add_option("--tr-radius", state.tr_radius, "initial trust-region radius")->capture_default_str();
  cmd->add_option("--lo", state.lo, "factor lower bound")->capture_default_str();
  cmd->add_option("--hi", state.hi, "factor upper bound")->capture_default_str();
  cmd->add_flag("--unconstrained", state.unconstrained,
                "do not pass the factor box to the optimizer (infeasible points "
                "still score +infinity)");
  cmd->add_option("--norm", state.norm, "frobenius or hamming")->capture_default_str()
      ->check(CLI::IsMember({"frobenius", "hamming"}));
  cmd->add_option("--dt", state.dt, "simulation step [min]")->capture_default_str();
}

CalibrationSpec build_spec(const CalibrationFlags& flags, std::size_t periods) {
  CalibrationSpec spec;
  spec.mode =
      flags.mode == "fms" ? AdjustmentSet::Mode::FMS : AdjustmentSet::Mode::Global;
  spec.mu = resolve_mu(flags.mu_preset, flags.mu_file, periods);
  spec.algorithm = algorithm_from_string(flags.algorithm);
  spec.opts.max_evals = flags.max_evals;
  spec.opts.max_time = flags.max_time;
  spec.opts.xtol_abs = flags.xtol;
  spec.opts.m_points = flags.m_points;
  spec.opts.initial_tr_radius = flags.tr_radius;
  spec.factor_bounds = {flags.lo, flags.hi};
  spec.constrain_optimizer = !flags.unconstrained;
  spec.norm = flags.norm == "hamming" ? ScarNorm::Hamming : ScarNorm::Frobenius;
  spec.dt = flags.dt;
  return spec;
}

json calibration_parameters(const CalibrationFlags& flags, const std::vector<double>& mu) {
  return json{{"mode", flags.mode},
              {"algorithm", flags.algorithm},
              {"mu_preset", flags.mu_preset},
              {"mu", mu},
              {"max_evals", flags.max_evals},
              {"max_time", flags.max_time == std::numeric_limits<double>::infinity()
                               ? json(nullptr)
                               : json(flags.max_time)},
              {"xtol_abs", flags.xtol},
              {"m_points", flags.m_points},
              {"tr_radius", flags.tr_radius},
              {"factor_bounds", {flags.lo, flags.hi}},
              {"constrain_optimizer", !flags.unconstrained},
              {"norm", flags.norm},
              {"dt", flags.dt}};
}

json inputs_json(const CommonInputs& in) {
  json j{{"grid", in.grid}, {"fuels", in.fuels}, {"weather", in.weather}};
  if (!in.ignition.empty()) {
    j["ignition"] = in.ignition;
  } else {
    j["ignition"] = {{"row", in.ign_row}, {"col", in.ign_col}, {"start_time", in.ign_time}};
  }
  return j;
}

std::string trace_csv(const dfo::OptResult& opt) {
  std::ostringstream out;
  out << "neval,f_incumbent\n";
  for (const auto& [neval, f] : opt.trace) {
    out << neval << "," << f << "\n";
  }
  return out.str();
}

json result_to_json(const CalibrationResult& result) {
  return json{{"x_star", factors_to_json(result.x_star)},
              {"initial_error", result.initial_error},
              {"final_error", result.final_error},
              {"neval", result.opt.neval},
              {"elapsed_seconds", result.opt.elapsed},
              {"termination", dfo::to_string(result.opt.termination)}};
}

int run_simulate(const CommonInputs& in, const std::string& out_dir, double horizon,
                 double report_every, double dt, const std::string& inline_factors,
                 const std::string& factors_file, bool render) {
  const LoadedInputs loaded = load_inputs(in);
  const AdjustmentSet factors = resolve_factors(inline_factors, factors_file);
  const ScarSeries scars = simulate(loaded.land, loaded.weather, loaded.ignition, factors,
                                    horizon, report_every, dt);

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  json outputs = json::array();
  for (std::size_t t = 0; t < scars.size(); ++t) {
    const std::string name = scar_name(scars.timestamps[t]);
    write_burn_grid(scars.grids[t], dir / name, loaded.land.cell_size);
    outputs.push_back(name);
    if (render) {
      const std::string pgm = name.substr(0, name.size() - 4) + ".pgm";
      write_burn_grid_pgm(scars.grids[t], dir / pgm);
      outputs.push_back(pgm);
    }
  }

  json manifest{{"command", "simulate"},
                {"inputs", inputs_json(in)},
                {"parameters",
                 {{"horizon", horizon},
                  {"report_every", report_every},
                  {"dt", dt},
                  {"factors", factors_to_json(factors)},
                  {"render", render},
                  {"deterministic", true}}},
                {"outputs", outputs}};
  write_json_atomic(dir / "manifest.json", manifest);
  std::cout << "wrote " << outputs.size() << " artifacts to " << dir.string() << "\n";
  return 0;
}

int run_compare(const std::string& a_path, const std::string& b_path,
                const std::string& format, bool windowed, const std::string& out_dir) {
  require_readable(a_path, "grid");
  require_readable(b_path, "grid");
  const BurnGrid a = load_burn_grid(a_path);
  const BurnGrid b = load_burn_grid(b_path);

  json metrics{{"frobenius", frobenius_error(a, b)},
               {"hamming", hamming_error(a, b)},
               {"mse", mse(a, b)},
               {"ssim", ssim(a, b)}};
  if (windowed) {
    metrics["ssim_windowed"] = ssim_windowed(a, b);
  }

  if (format == "json") {
    std::cout << metrics.dump(2) << "\n";
  } else {
    std::ostringstream header, values;
    bool first = true;
    for (const auto& [key, value] : metrics.items()) {
      header << (first ? "" : ",") << key;
      values << (first ? "" : ",") << value;
      first = false;
    }
    std::cout << header.str() << "\n" << values.str() << "\n";
  }

  if (!out_dir.empty()) {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_json_atomic(dir / "metrics.json", metrics);
    json manifest{{"command", "compare"},
                  {"inputs", {{"a", a_path}, {"b", b_path}}},
                  {"parameters", {{"format", format}, {"windowed_ssim", windowed}}},
                  {"outputs", {"metrics.json"}}};
    write_json_atomic(dir / "manifest.json", manifest);
  }
  return 0;
}

int run_calibrate(const CommonInputs& in, const std::string& observed,
                  const std::string& observed_files, double report_every,
                  const CalibrationFlags& flags, const std::string& out_dir) {
  const LoadedInputs loaded = load_inputs(in);
  const ScarSeries scars = load_observed(observed, observed_files, report_every);
  const CalibrationSpec spec = build_spec(flags, scars.size());

  const CalibrationResult result =
      calibrate(loaded.land, loaded.weather, loaded.ignition, scars, spec);

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_json_atomic(dir / "result.json", result_to_json(result));
  io_detail::write_text_atomic(dir / "trace.csv", trace_csv(result.opt));
  json manifest{{"command", "calibrate"},
                {"inputs", inputs_json(in)},
                {"observed", observed.empty() ? json(observed_files) : json(observed)},
                {"parameters", calibration_parameters(flags, spec.mu)},
                {"outputs", {"result.json", "trace.csv"}}};
  write_json_atomic(dir / "manifest.json", manifest);
  std::cout << "initial error " << result.initial_error << ", final error "
            << result.final_error << " after " << result.opt.neval << " evaluations\n";
  return 0;
}

int run_realtime(const CommonInputs& in, const std::string& observed,
                 const std::string& observed_files, double report_every,
                 const CalibrationFlags& flags, const std::string& out_dir) {
  const LoadedInputs loaded = load_inputs(in);
  const ScarSeries stream = load_observed(observed, observed_files, report_every);
  CalibrationSpec spec = build_spec(flags, stream.size());

  const auto steps =
      realtime_calibrate(loaded.land, loaded.weather, loaded.ignition, stream, spec);

  json steps_json = json::array();
  std::ostringstream trace;
  trace << "step,neval,f_incumbent\n";
  for (const auto& step : steps) {
    json j = result_to_json(step.result);
    j["t"] = step.t;
    j["one_step_ahead_error"] = step.one_step_ahead_error;
    steps_json.push_back(std::move(j));
    for (const auto& [neval, f] : step.result.opt.trace) {
      trace << step.t << "," << neval << "," << f << "\n";
    }
  }

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_json_atomic(dir / "realtime.json", json{{"steps", steps_json}});
  io_detail::write_text_atomic(dir / "trace.csv", trace.str());
  json manifest{{"command", "realtime"},
                {"inputs", inputs_json(in)},
                {"observed", observed.empty() ? json(observed_files) : json(observed)},
                {"parameters", calibration_parameters(flags, spec.mu)},
                {"outputs", {"realtime.json", "trace.csv"}}};
  write_json_atomic(dir / "manifest.json", manifest);
  std::cout << "completed " << steps.size() << " real-time steps\n";
  return 0;
}

int run_benchmark_cmd(const CommonInputs& in, const std::string& observed,
                      const std::string& observed_files, double report_every,
                      const CalibrationFlags& flags, const std::string& algorithms_csv,
                      const std::string& out_dir) {
  const LoadedInputs loaded = load_inputs(in);
  const ScarSeries scars = load_observed(observed, observed_files, report_every);
  const CalibrationSpec spec = build_spec(flags, scars.size());

  std::vector<Algorithm> algorithms;
  std::string token;
  std::istringstream names(algorithms_csv);
  while (std::getline(names, token, ',')) {
    algorithms.push_back(algorithm_from_string(token));
  }

  const CalibrationInstance instance{loaded.land, loaded.weather, loaded.ignition, scars};
  const BenchTable table = run_benchmark(instance, algorithms, spec);

  std::cout << table.to_csv();
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  io_detail::write_text_atomic(dir / "benchmark.csv", table.to_csv());
  json manifest{{"command", "benchmark"},
                {"inputs", inputs_json(in)},
                {"observed", observed.empty() ? json(observed_files) : json(observed)},
                {"parameters", calibration_parameters(flags, spec.mu)},
                {"algorithms", algorithms_csv},
                {"outputs", {"benchmark.csv"}}};
  write_json_atomic(dir / "manifest.json", manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"raster fire-growth simulation and rate-of-spread factor calibration"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "run the fire-growth automaton");
  CommonInputs sim_in;
  add_common_inputs(sim, sim_in);
  std::string sim_out, sim_factors, sim_factors_file;
  double sim_horizon = 420.0, sim_report = 60.0, sim_dt = 1.0;
  bool sim_render = false;
  sim->add_option("--horizon", sim_horizon, "simulation horizon [min]")->capture_default_str();
  sim->add_option("--report-every", sim_report, "report interval [min]")->capture_default_str();
  sim->add_option("--dt", sim_dt, "simulation step [min]")->capture_default_str();
  sim->add_option("--factors", sim_factors, "global factors x1,x2,x3,x4");
  sim->add_option("--factors-file", sim_factors_file, "factors JSON (global or fms)");
  sim->add_option("--out", sim_out, "output directory")->required();
  sim->add_flag("--render", sim_render, "also write PGM renders of each scar");

  // compare
  auto* cmp = app.add_subcommand("compare", "score two burn grids against each other");
  std::string cmp_a, cmp_b, cmp_format = "csv", cmp_out;
  bool cmp_windowed = false;
  cmp->add_option("--a", cmp_a, "first grid")->required();
  cmp->add_option("--b", cmp_b, "second grid")->required();
  cmp->add_option("--format", cmp_format, "csv or json")->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  cmp->add_flag("--windowed-ssim", cmp_windowed, "also report sliding-window ssim");
  cmp->add_option("--out", cmp_out, "optional output directory for metrics.json");

  // calibrate / realtime / benchmark share inputs and flags
  CommonInputs cal_in, rt_in, bench_in;
  CalibrationFlags cal_flags, rt_flags, bench_flags;
  std::string cal_observed, cal_observed_files, cal_out;
  std::string rt_observed, rt_observed_files, rt_out;
  std::string bench_observed, bench_observed_files, bench_out;
  std::string bench_algorithms = "nelder-mead,pattern-search,quadratic-tr";
  double cal_report = 60.0, rt_report = 60.0, bench_report = 60.0;

  auto* cal = app.add_subcommand("calibrate", "fit adjustment factors to observed scars");
  add_common_inputs(cal, cal_in);
  cal->add_option("--observed", cal_observed, "directory of scar_<minutes>.asc files");
  cal->add_option("--observed-files", cal_observed_files, "comma-separated scar files");
  cal->add_option("--report-every", cal_report, "spacing for --observed-files [min]")->capture_default_str();
  add_calibration_flags(cal, cal_flags);
  cal->add_option("--out", cal_out, "output directory")->required();

  auto* rt = app.add_subcommand("realtime", "hour-by-hour warm-started calibration");
  add_common_inputs(rt, rt_in);
  rt->add_option("--observed", rt_observed, "directory of scar_<minutes>.asc files");
  rt->add_option("--observed-files", rt_observed_files, "comma-separated scar files");
  rt->add_option("--report-every", rt_report, "spacing for --observed-files [min]")->capture_default_str();
  add_calibration_flags(rt, rt_flags);
  rt->add_option("--out", rt_out, "output directory")->required();

  auto* bench = app.add_subcommand("benchmark", "compare optimizers on one instance");
  add_common_inputs(bench, bench_in);
  bench->add_option("--observed", bench_observed, "directory of scar_<minutes>.asc files");
  bench->add_option("--observed-files", bench_observed_files, "comma-separated scar files");
  bench->add_option("--report-every", bench_report, "spacing for --observed-files [min]")
                    ->capture_default_str();
  add_calibration_flags(bench, bench_flags);
  bench->add_option("--algorithms", bench_algorithms, "comma-separated optimizer names")
                    ->capture_default_str();
  bench->add_option("--out", bench_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (sim->parsed()) {
      return run_simulate(sim_in, sim_out, sim_horizon, sim_report, sim_dt, sim_factors,
                          sim_factors_file, sim_render);
    }
    if (cmp->parsed()) {
      return run_compare(cmp_a, cmp_b, cmp_format, cmp_windowed, cmp_out);
    }
    if (cal->parsed()) {
      return run_calibrate(cal_in, cal_observed, cal_observed_files, cal_report, cal_flags,
                           cal_out);
    }
    if (rt->parsed()) {
      return run_realtime(rt_in, rt_observed, rt_observed_files, rt_report, rt_flags, rt_out);
    }
    if (bench->parsed()) {
      return run_benchmark_cmd(bench_in, bench_observed, bench_observed_files, bench_report,
                               bench_flags, bench_algorithms, bench_out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
