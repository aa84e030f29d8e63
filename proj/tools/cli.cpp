// Copyright 2026 The nbsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "nbsim/chain.hpp"
#include "nbsim/config.hpp"
#include "nbsim/errors.hpp"
#include "nbsim/experiment.hpp"
#include "nbsim/mechanism.hpp"
#include "nbsim/report.hpp"
#include "nbsim/summary.hpp"

namespace nbsim::cli {
namespace {

namespace fs = std::filesystem;

struct RunOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<int> steps;
  std::optional<std::string> optimize;
  std::optional<std::string> trajectory;
  std::optional<int> workers;
  std::optional<std::string> out;
  bool paper_scale = false;
  bool csv_timing = false;
};

struct FkOptions {
  std::string config;
  std::string q;
};

struct WorkspaceOptions {
  std::string config;
  std::string mode = "module";
  std::optional<int> grid;
  std::optional<int> samples;
  std::optional<int> azimuths;
  std::optional<std::uint64_t> seed;
  std::string output;
};

Eigen::VectorXd parse_vector(const std::string& text) {
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || !std::isfinite(v)) {
      throw ConfigError("malformed joint value '" + token + "'");
    }
    values.push_back(v);
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void ensure_directory(const fs::path& dir, std::ostream& err) {
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) throw Error(dir.string() + " exists and is not a directory");
    return;
  }
  fs::create_directories(dir);
  err << "warning: created output directory " << dir.string() << "\n";
}

int cmd_fk(const FkOptions& opts, std::ostream& out) {
  const ExperimentConfig config = load_config(opts.config);
  const RobotModel model = config.robot.build();
  Eigen::VectorXd q = Eigen::VectorXd::Zero(model.dof());
  if (!opts.q.empty()) {
    q = parse_vector(opts.q);
    if (q.size() != model.dof()) {
      throw ConfigError("expected " + std::to_string(model.dof()) + " joint values, got " +
                        std::to_string(q.size()));
    }
  }
  const RigidTransform tcp = forward_kinematics(model, q);
  const Eigen::IOFormat row(Eigen::FullPrecision, Eigen::DontAlignCols, " ", "\n", "  ", "");
  out << "position: " << format_number(tcp.translation.x()) << ' '
      << format_number(tcp.translation.y()) << ' ' << format_number(tcp.translation.z()) << "\n";
  out << "rotation:\n" << tcp.rotation.format(row) << "\n";
  return kOk;
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = load_config(opts.config);
  if (!config.has_experiment) {
    throw ConfigError(opts.config + ": 'run' needs trajectory, tasks and actions sections");
  }
  RunConfig& run = config.run;
  if (opts.paper_scale) {
    run.steps = run.paper_steps;
    run.repetitions = run.paper_repetitions;
  }
  if (opts.seed) run.seed = *opts.seed;
  if (opts.reps) run.repetitions = *opts.reps;
  if (opts.steps) run.steps = *opts.steps;
  if (opts.workers) run.workers = *opts.workers;
  if (opts.optimize) run.optimize = parse_optimize_mode(*opts.optimize);
  if (opts.trajectory) {
    if (*opts.trajectory == "all") {
      run.trajectories = {1, 2, 3, 4};
    } else {
      const Eigen::VectorXd ids = parse_vector(*opts.trajectory);
      run.trajectories.clear();
      for (double id : ids) {
        if (id != std::floor(id) || id < 1 || id > 4) {
          throw ConfigError("--trajectory expects 1..4 or all");
        }
        run.trajectories.push_back(static_cast<int>(id));
      }
      if (run.trajectories.empty()) throw ConfigError("--trajectory expects 1..4 or all");
    }
  }
  if (opts.out) config.output_dir = *opts.out;
  if (opts.csv_timing) config.csv_timing = true;
  if (run.workers == 0) run.workers = std::max(1u, std::thread::hardware_concurrency());
  config.experiment.workers = run.workers;

  const RobotModel model = config.robot.build();
  const ActionSet actions = build_actions(config);
  const std::vector<TrajectorySpec> trajectories = build_trajectories(config);

  const fs::path dir(config.output_dir);
  ensure_directory(dir, err);

  const auto start = std::chrono::steady_clock::now();
  const ComparisonResult result = run_comparison(model, trajectories, actions, run.repetitions,
                                                 run.seed, config.experiment, run.optimize);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (const RunRecord& record : result.records) {
    write_run_csv(dir / run_csv_name(record), record, config.csv_timing);
  }
  for (const RunFailure& f : result.failures) {
    err << "warning: trajectory " << f.trajectory << " seed " << f.seed
        << (f.optimized ? " (opt): " : " (raw): ") << f.reason << "\n";
  }

  BatchInfo info;
  info.config = opts.config;
  info.seed = run.seed;
  info.repetitions = run.repetitions;
  info.steps = run.steps;
  info.optimize = to_string(run.optimize);
  info.trajectories = run.trajectories;
  info.workers = run.workers;
  info.wall_seconds = wall;
  info.failures = result.failures;

  if (result.records.empty()) {
    err << "error: every run failed\n";
    return kRuntimeError;
  }
  const Summary summary =
      summarize(result.records, result.reach_failures,
                static_cast<int>(result.failures.size()) - result.reach_failures);
  {
    std::ofstream json(dir / "summary.json", std::ios::binary);
    json << summary_json(summary, info);
    if (!json) throw Error("failed writing " + (dir / "summary.json").string());
  }

  out << "runs: " << summary.runs << "  reach failures: " << summary.reach_failures
      << "  wall: " << std::fixed << std::setprecision(1) << wall << " s\n";
  out << std::setprecision(2);
  for (const TrajectorySummary& t : summary.trajectories) {
    out << "trajectory " << t.trajectory << ": pairs " << t.pairs;
    if (t.pairs > 0) {
      out << ", start eta " << t.start_eta_improvement.mean << "%, mean eta "
          << t.mean_eta_improvement.mean << "%, eta1 " << t.mean_eta1_improvement.mean
          << "%, eta2 " << t.mean_eta2_improvement.mean << "%";
    }
    out << ", sector gap (b,d)/(a,c) raw " << t.sector_gap_plain << "%\n";
  }
  out << "mean step: " << summary.mean_solver_us << " us\n";
  out << "summary: " << (dir / "summary.json").string() << "\n";
  return kOk;
}

int cmd_workspace(const WorkspaceOptions& opts, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = load_config(opts.config);
  const RobotModel model = config.robot.build();
  if (opts.output.empty()) throw ConfigError("--output is required");
  const fs::path path(opts.output);
  if (path.has_parent_path()) ensure_directory(path.parent_path(), err);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path.string() + " for writing");

  std::size_t count = 0;
  if (opts.mode == "module") {
    const ModuleSegment* first = nullptr;
    for (const Segment& s : model.segments()) {
      if ((first = std::get_if<ModuleSegment>(&s))) break;
    }
    if (first == nullptr) throw ConfigError("robot has no module");
    const int grid = opts.grid.value_or(config.workspace.grid);
    if (grid < 2) throw ConfigError("--grid must be at least 2");
    file << "q1,q2,phi,theta,x,y,z\n";
    for (const WorkspaceSample& s : module_workspace(first->params, grid)) {
      file << format_number(s.q.q1) << ',' << format_number(s.q.q2) << ','
           << format_number(s.angles.phi) << ',' << format_number(s.angles.theta) << ','
           << format_number(s.position.x()) << ',' << format_number(s.position.y()) << ','
           << format_number(s.position.z()) << '\n';
      ++count;
    }
  } else if (opts.mode == "robot") {
    const int samples = opts.samples.value_or(config.workspace.samples);
    const int azimuths = opts.azimuths.value_or(config.workspace.azimuths);
    if (samples < 1 || azimuths < 1) throw ConfigError("--samples and --azimuths must be >= 1");
    ExperimentParams sampling;
    sampling.start_min_height = -std::numeric_limits<double>::infinity();
    std::mt19937_64 rng = make_rng(opts.seed.value_or(config.run.seed), 0);
    file << "sample,azimuth,x,y,z\n";
    for (int i = 0; i < samples; ++i) {
      const Eigen::VectorXd q = random_start_configuration(model, rng, sampling);
      for (int j = 0; j < azimuths; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / azimuths;
        const Eigen::Vector3d p = forward_kinematics(model, rotate_about_base(model, q, angle)).translation;
        file << i << ',' << j << ',' << format_number(p.x()) << ',' << format_number(p.y()) << ','
             << format_number(p.z()) << '\n';
        ++count;
      }
    }
  } else {
    throw ConfigError("--mode must be module or robot");
  }
  if (!file) throw Error("failed writing " + path.string());
  out << count << " points written to " << path.string() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"nbsim: modular redundant robot kinematics and machining experiment"};
  app.require_subcommand(1);

  FkOptions fk;
  CLI::App* fk_cmd = app.add_subcommand("fk", "Print the TCP pose for a joint vector");
  fk_cmd->add_option("--config", fk.config, "Config file")->required();
  fk_cmd->add_option("--q", fk.q, "Joint values, comma or space separated (default: zeros)");

  RunOptions run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "Run the paired optimization comparison");
  run_cmd->add_option("--config", run_opts.config, "Config file")->required();
  run_cmd->add_option("--seed", run_opts.seed, "Base seed");
  run_cmd->add_option("--reps", run_opts.reps, "Repetitions per trajectory")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--steps", run_opts.steps, "Trajectory samples")->check(CLI::Range(2, 1 << 30));
  run_cmd->add_option("--optimize", run_opts.optimize, "on, off or both")
      ->check(CLI::IsMember({"on", "off", "both"}));
  run_cmd->add_option("--trajectory", run_opts.trajectory, "1..4 or all");
  run_cmd->add_option("--workers", run_opts.workers, "Parallel workers (0: all cores)")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--out", run_opts.out, "Output directory");
  run_cmd->add_flag("--paper-scale", run_opts.paper_scale, "Use the full-size step and repetition counts");
  run_cmd->add_flag("--csv-timing", run_opts.csv_timing, "Write solver times into the CSV files");

  WorkspaceOptions ws;
  CLI::App* ws_cmd = app.add_subcommand("workspace", "Sample module or robot workspace points");
  ws_cmd->add_option("--config", ws.config, "Config file")->required();
  ws_cmd->add_option("--mode", ws.mode, "module or robot")->check(CLI::IsMember({"module", "robot"}));
  ws_cmd->add_option("--grid", ws.grid, "Module mode: samples per actuator");
  ws_cmd->add_option("--samples", ws.samples, "Robot mode: random postures");
  ws_cmd->add_option("--azimuths", ws.azimuths, "Robot mode: rotated copies per posture");
  ws_cmd->add_option("--seed", ws.seed, "Robot mode: seed");
  ws_cmd->add_option("--output", ws.output, "CSV file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* shown = &app;
    for (const CLI::App* sub : {fk_cmd, run_cmd, ws_cmd}) {
      if (sub->parsed()) shown = sub;
    }
    out << shown->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (fk_cmd->parsed()) return cmd_fk(fk, out);
    if (run_cmd->parsed()) return cmd_run(run_opts, out, err);
    if (ws_cmd->parsed()) return cmd_workspace(ws, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kConfigError;
}

}  // namespace nbsim::cli
