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

#include "nbsim/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "nbsim/errors.hpp"

namespace nbsim {
namespace {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Typed access to a YAML tree with file:line:column diagnostics.
class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& path,
                         const std::string& message) const {
    std::ostringstream out;
    out << source_;
    if (at.IsDefined()) {
      const YAML::Mark mark = at.Mark();
      if (mark.line >= 0) out << ':' << mark.line + 1 << ':' << mark.column + 1;
    }
    out << ": " << (path.empty() ? "<root>" : path) << ": " << message;
    throw ConfigError(out.str());
  }

  void expect_map(const YAML::Node& node, const std::string& path) const {
    if (!node.IsMap()) fail(node, path, "expected a mapping");
  }

  void allow_keys(const YAML::Node& node, const std::string& path,
                  const std::set<std::string>& keys) const {
    expect_map(node, path);
    for (const auto& item : node) {
      const auto key = item.first.as<std::string>();
      if (!keys.count(key)) fail(item.first, join(path, key), "unknown key");
    }
  }

  YAML::Node required(const YAML::Node& parent, const std::string& path,
                      const std::string& key) const {
    const YAML::Node child = parent[key];
    if (!child.IsDefined() || child.IsNull()) fail(parent, join(path, key), "missing required key");
    return child;
  }

  double number(const YAML::Node& node, const std::string& path) const {
    if (!node.IsScalar()) fail(node, path, "expected a number");
    try {
      const double v = node.as<double>();
      if (!std::isfinite(v)) fail(node, path, "expected a finite number");
      return v;
    } catch (const YAML::BadConversion&) {
      fail(node, path, "expected a number, got '" + node.Scalar() + "'");
    }
  }

  double positive(const YAML::Node& node, const std::string& path) const {
    const double v = number(node, path);
    if (!(v > 0.0)) fail(node, path, "must be positive");
    return v;
  }

  double non_negative(const YAML::Node& node, const std::string& path) const {
    const double v = number(node, path);
    if (v < 0.0) fail(node, path, "must not be negative");
    return v;
  }

  long integer(const YAML::Node& node, const std::string& path, long min_value) const {
    if (!node.IsScalar()) fail(node, path, "expected an integer");
    long v = 0;
    try {
      v = node.as<long>();
    } catch (const YAML::BadConversion&) {
      fail(node, path, "expected an integer, got '" + node.Scalar() + "'");
    }
    if (v < min_value) fail(node, path, "must be at least " + std::to_string(min_value));
    return v;
  }

  bool boolean(const YAML::Node& node, const std::string& path) const {
    if (!node.IsScalar()) fail(node, path, "expected true or false");
    try {
      return node.as<bool>();
    } catch (const YAML::BadConversion&) {
      fail(node, path, "expected true or false, got '" + node.Scalar() + "'");
    }
  }

  std::string text(const YAML::Node& node, const std::string& path) const {
    if (!node.IsScalar()) fail(node, path, "expected a string");
    return node.Scalar();
  }

  Eigen::Vector3d vec3(const YAML::Node& node, const std::string& path) const {
    if (!node.IsSequence() || node.size() != 3) fail(node, path, "expected a list of 3 numbers");
    Eigen::Vector3d v;
    for (std::size_t i = 0; i < 3; ++i) v[i] = number(node[i], index(path, i));
    return v;
  }

  Eigen::Vector3d unit3(const YAML::Node& node, const std::string& path) const {
    const Eigen::Vector3d v = vec3(node, path);
    if (v.norm() < 1e-12) fail(node, path, "must be a nonzero vector");
    return v.normalized();
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }
  static std::string index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
  }

 private:
  std::string source_;
};

YAML::Node load_yaml(const std::string& text, const std::string& source) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream out;
    out << source << ':' << e.mark.line + 1 << ':' << e.mark.column + 1 << ": " << e.msg;
    throw ConfigError(out.str());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RobotConfig parse_robot(const Reader& r, const YAML::Node& node) {
  const std::string path = "robot";
  r.allow_keys(node, path, {"characteristic_length", "joint_limits", "module", "layout", "tool"});
  RobotConfig robot;
  robot.characteristic_length =
      r.positive(r.required(node, path, "characteristic_length"), path + ".characteristic_length");

  if (const YAML::Node limits = node["joint_limits"]; limits.IsDefined()) {
    const std::string lp = path + ".joint_limits";
    r.allow_keys(limits, lp, {"velocity", "acceleration"});
    robot.limits.velocity = r.positive(r.required(limits, lp, "velocity"), lp + ".velocity");
    robot.limits.acceleration =
        r.positive(r.required(limits, lp, "acceleration"), lp + ".acceleration");
  }

  auto parse_module = [&](const YAML::Node& m, const std::string& mp, ModuleParams base) {
    if (const YAML::Node v = m["r"]; v.IsDefined()) base.r = r.positive(v, mp + ".r");
    if (const YAML::Node v = m["alpha_deg"]; v.IsDefined()) {
      base.alpha = deg_to_rad(r.positive(v, mp + ".alpha_deg"));
    }
    try {
      base.validate();
    } catch (const Error& e) {
      r.fail(m, mp, e.what());
    }
    return base;
  };

  ModuleParams defaults{0.0, 0.0};
  const YAML::Node module = node["module"];
  if (module.IsDefined()) {
    r.allow_keys(module, path + ".module", {"r", "alpha_deg"});
    defaults = parse_module(module, path + ".module", defaults);
  }

  const YAML::Node layout = r.required(node, path, "layout");
  if (!layout.IsSequence() || layout.size() == 0) {
    r.fail(layout, path + ".layout", "expected a non-empty list");
  }
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const YAML::Node item = layout[i];
    const std::string ip = Reader::index(path + ".layout", i);
    r.expect_map(item, ip);
    if (item["modules"].IsDefined()) {
      r.allow_keys(item, ip, {"modules", "r", "alpha_deg"});
      const long count = r.integer(item["modules"], ip + ".modules", 1);
      const ModuleParams params = parse_module(item, ip, defaults);
      for (long k = 0; k < count; ++k) robot.segments.emplace_back(ModuleSegment{params});
    } else if (item["link"].IsDefined()) {
      r.allow_keys(item, ip, {"link"});
      robot.segments.emplace_back(FixedLink{r.positive(item["link"], ip + ".link")});
    } else if (item["revolute"].IsDefined()) {
      r.allow_keys(item, ip, {"revolute"});
      robot.segments.emplace_back(RevoluteJoint{r.unit3(item["revolute"], ip + ".revolute")});
    } else {
      r.fail(item, ip, "expected one of 'modules', 'link' or 'revolute'");
    }
  }

  robot.tool = RigidTransform::Identity();
  if (const YAML::Node tool = node["tool"]; tool.IsDefined()) {
    const std::string tp = path + ".tool";
    r.allow_keys(tool, tp, {"length", "bend_deg"});
    double length = 0.0, bend = 0.0;
    if (tool["length"].IsDefined()) length = r.non_negative(tool["length"], tp + ".length");
    if (tool["bend_deg"].IsDefined()) bend = deg_to_rad(r.number(tool["bend_deg"], tp + ".bend_deg"));
    robot.tool = RigidTransform::Translation(Eigen::Vector3d(0.0, 0.0, length)) *
                 RigidTransform::Rotation(rotation_y(bend));
  }
  return robot;
}

TrajectoryParams parse_trajectory(const Reader& r, const YAML::Node& node) {
  const std::string path = "trajectory";
  r.allow_keys(node, path, {"center", "side", "speed", "tangential_force", "radial_force",
                            "radial_direction", "faces"});
  TrajectoryParams t;
  t.center = r.vec3(r.required(node, path, "center"), path + ".center");
  t.side = r.positive(r.required(node, path, "side"), path + ".side");
  t.speed = r.positive(r.required(node, path, "speed"), path + ".speed");
  t.tangential_force =
      r.non_negative(r.required(node, path, "tangential_force"), path + ".tangential_force");
  t.radial_force = r.non_negative(r.required(node, path, "radial_force"), path + ".radial_force");
  if (const YAML::Node dir = node["radial_direction"]; dir.IsDefined()) {
    const std::string value = r.text(dir, path + ".radial_direction");
    if (value != "inward" && value != "outward") {
      r.fail(dir, path + ".radial_direction", "expected 'inward' or 'outward'");
    }
    t.radial_inward = value == "inward";
  }

  const YAML::Node faces = r.required(node, path, "faces");
  if (!faces.IsSequence() || faces.size() != 4) {
    r.fail(faces, path + ".faces", "expected a list of 4 faces");
  }
  std::set<long> seen;
  for (std::size_t i = 0; i < 4; ++i) {
    const YAML::Node f = faces[i];
    const std::string fp = Reader::index(path + ".faces", i);
    r.allow_keys(f, fp, {"id", "offset", "u_axis", "v_axis", "tool_axis", "tool_x"});
    const long id = r.integer(r.required(f, fp, "id"), fp + ".id", 1);
    if (id > 4) r.fail(f["id"], fp + ".id", "must be 1..4");
    if (!seen.insert(id).second) r.fail(f["id"], fp + ".id", "duplicate face id");
    FaceSpec face;
    face.offset = r.vec3(r.required(f, fp, "offset"), fp + ".offset");
    face.u_axis = r.unit3(r.required(f, fp, "u_axis"), fp + ".u_axis");
    face.v_axis = r.unit3(r.required(f, fp, "v_axis"), fp + ".v_axis");
    face.tool_axis = r.unit3(r.required(f, fp, "tool_axis"), fp + ".tool_axis");
    face.tool_x = r.unit3(r.required(f, fp, "tool_x"), fp + ".tool_x");
    if (std::abs(face.u_axis.dot(face.v_axis)) > 1e-9) {
      r.fail(f, fp, "u_axis and v_axis must be orthogonal");
    }
    if (std::abs(face.tool_axis.dot(face.tool_x)) > 1.0 - 1e-9) {
      r.fail(f, fp, "tool_x must not be parallel to tool_axis");
    }
    t.faces[id - 1] = face;
  }
  return t;
}

TaskKind parse_task_kind(const Reader& r, const YAML::Node& node, const std::string& path) {
  const std::string value = r.text(node, path);
  if (value == "pose") return TaskKind::kPose;
  if (value == "velocity") return TaskKind::kVelocity;
  if (value == "dexterity") return TaskKind::kDexterity;
  if (value == "rtr") return TaskKind::kRtr;
  r.fail(node, path, "unknown task kind '" + value + "' (pose, velocity, dexterity, rtr)");
}

std::vector<TaskConfig> parse_tasks(const Reader& r, const YAML::Node& node) {
  const std::string path = "tasks";
  if (!node.IsSequence() || node.size() == 0) r.fail(node, path, "expected a non-empty list");
  std::vector<TaskConfig> tasks;
  std::set<std::string> names;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const YAML::Node t = node[i];
    const std::string tp = Reader::index(path, i);
    r.allow_keys(t, tp, {"name", "kind", "type", "gain", "lower", "buffer", "regularization"});
    TaskConfig task;
    task.name = r.text(r.required(t, tp, "name"), tp + ".name");
    if (!names.insert(task.name).second) r.fail(t["name"], tp + ".name", "duplicate task name");
    task.kind = parse_task_kind(r, r.required(t, tp, "kind"), tp + ".kind");
    const bool optimization = task.kind == TaskKind::kDexterity || task.kind == TaskKind::kRtr;
    const std::string type = r.text(r.required(t, tp, "type"), tp + ".type");
    if (type != "E" && type != "I") r.fail(t["type"], tp + ".type", "expected 'E' or 'I'");
    if ((type == "I") != optimization) {
      r.fail(t["type"], tp + ".type",
             optimization ? "metric tasks are inequalities (I)" : "pose tasks are equalities (E)");
    }
    task.gain = r.positive(r.required(t, tp, "gain"), tp + ".gain");
    if (optimization) {
      task.objective.gain = task.gain;
      task.objective.lower = r.positive(r.required(t, tp, "lower"), tp + ".lower");
      task.objective.buffer = r.positive(r.required(t, tp, "buffer"), tp + ".buffer");
    } else if (t["lower"].IsDefined() || t["buffer"].IsDefined()) {
      r.fail(t, tp, "'lower' and 'buffer' apply to inequality tasks only");
    }
    if (const YAML::Node reg = t["regularization"]; reg.IsDefined()) {
      const std::string rp = tp + ".regularization";
      r.allow_keys(reg, rp, {"threshold", "damping"});
      task.regularization = Regularization{
          r.non_negative(r.required(reg, rp, "threshold"), rp + ".threshold"),
          r.non_negative(r.required(reg, rp, "damping"), rp + ".damping")};
    }
    tasks.push_back(task);
  }
  return tasks;
}

std::map<std::string, std::map<std::string, int>> parse_actions(
    const Reader& r, const YAML::Node& node, const std::vector<TaskConfig>& tasks) {
  const std::string path = "actions";
  r.allow_keys(node, path, {kActionNames.begin(), kActionNames.end()});
  std::set<std::string> known;
  for (const TaskConfig& t : tasks) known.insert(t.name);
  std::map<std::string, std::map<std::string, int>> actions;
  for (const std::string& name : kActionNames) {
    const YAML::Node action = r.required(node, path, name);
    const std::string ap = path + "." + name;
    if (!action.IsMap() || action.size() == 0) {
      r.fail(action, ap, "expected a non-empty mapping of task name to level");
    }
    for (const auto& item : action) {
      const auto task = item.first.as<std::string>();
      if (!known.count(task)) r.fail(item.first, ap + "." + task, "unknown task");
      actions[name][task] = static_cast<int>(r.integer(item.second, ap + "." + task, 1));
    }
  }
  return actions;
}

void parse_solver(const Reader& r, const YAML::Node& node, ExperimentConfig& config) {
  const std::string path = "solver";
  r.allow_keys(node, path,
               {"regularization_threshold", "damping", "partials_step", "saturate_levels",
                "secondary_velocity_limit"});
  SolverParams& s = config.experiment.solver;
  if (const auto v = node["regularization_threshold"]; v.IsDefined()) {
    s.regularization_threshold = r.non_negative(v, path + ".regularization_threshold");
  }
  if (const auto v = node["damping"]; v.IsDefined()) s.damping = r.non_negative(v, path + ".damping");
  if (const auto v = node["secondary_velocity_limit"]; v.IsDefined()) {
    s.secondary_velocity_limit = r.non_negative(v, path + ".secondary_velocity_limit");
  }
  if (const auto v = node["partials_step"]; v.IsDefined()) {
    config.experiment.partials_step = r.positive(v, path + ".partials_step");
  }
  bool saturate = true;
  if (const auto v = node["saturate_levels"]; v.IsDefined()) {
    saturate = r.boolean(v, path + ".saturate_levels");
  }
  s.velocity_limit = saturate ? config.robot.limits.velocity : 0.0;
}

void parse_experiment(const Reader& r, const YAML::Node& node, ExperimentParams& e) {
  const std::string path = "experiment";
  r.allow_keys(node, path,
               {"dt", "reach_max_steps", "reach_position_tolerance", "reach_orientation_tolerance",
                "optimize_max_steps", "local_max_gradient_tolerance", "local_max_speed_tolerance",
                "local_max_window", "tracking_tolerance", "start_min_height", "metric_weights"});
  auto pos = [&](const char* key, double& out) {
    if (const auto v = node[key]; v.IsDefined()) out = r.positive(v, path + "." + key);
  };
  auto count = [&](const char* key, int& out, long min_value) {
    if (const auto v = node[key]; v.IsDefined()) {
      out = static_cast<int>(r.integer(v, path + "." + key, min_value));
    }
  };
  pos("dt", e.dt);
  count("reach_max_steps", e.reach_max_steps, 1);
  pos("reach_position_tolerance", e.reach_position_tolerance);
  pos("reach_orientation_tolerance", e.reach_orientation_tolerance);
  count("optimize_max_steps", e.optimize_max_steps, 0);
  pos("local_max_gradient_tolerance", e.local_max_gradient_tolerance);
  if (const auto v = node["local_max_speed_tolerance"]; v.IsDefined()) {
    e.local_max_speed_tolerance = r.non_negative(v, path + ".local_max_speed_tolerance");
  }
  count("local_max_window", e.local_max_window, 1);
  pos("tracking_tolerance", e.tracking_tolerance);
  if (const auto v = node["start_min_height"]; v.IsDefined()) {
    e.start_min_height = r.number(v, path + ".start_min_height");
  }
  if (const auto v = node["metric_weights"]; v.IsDefined()) {
    const std::string wp = path + ".metric_weights";
    if (!v.IsSequence() || v.size() != 2) r.fail(v, wp, "expected [lambda1, lambda2]");
    e.metric_lambda1 = r.non_negative(v[0], wp + "[0]");
    e.metric_lambda2 = r.non_negative(v[1], wp + "[1]");
    if (std::abs(e.metric_lambda1 + e.metric_lambda2 - 1.0) > 1e-12) {
      r.fail(v, wp, "weights must sum to 1");
    }
  }
}

void parse_run(const Reader& r, const YAML::Node& node, RunConfig& run) {
  const std::string path = "run";
  r.allow_keys(node, path,
               {"steps", "repetitions", "seed", "trajectories", "optimize", "workers",
                "paper_scale"});
  if (const auto v = node["steps"]; v.IsDefined()) {
    run.steps = static_cast<int>(r.integer(v, path + ".steps", 2));
  }
  if (const auto v = node["repetitions"]; v.IsDefined()) {
    run.repetitions = static_cast<int>(r.integer(v, path + ".repetitions", 1));
  }
  if (const auto v = node["seed"]; v.IsDefined()) {
    try {
      run.seed = v.as<std::uint64_t>();
    } catch (const YAML::BadConversion&) {
      r.fail(v, path + ".seed", "expected a non-negative integer");
    }
  }
  if (const auto v = node["trajectories"]; v.IsDefined()) {
    const std::string tp = path + ".trajectories";
    if (v.IsScalar() && v.Scalar() == "all") {
      run.trajectories = {1, 2, 3, 4};
    } else if (v.IsSequence() && v.size() > 0) {
      run.trajectories.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const long id = r.integer(v[i], Reader::index(tp, i), 1);
        if (id > 4) r.fail(v[i], Reader::index(tp, i), "trajectory ids are 1..4");
        run.trajectories.push_back(static_cast<int>(id));
      }
    } else {
      r.fail(v, tp, "expected 'all' or a list of ids");
    }
  }
  if (const auto v = node["optimize"]; v.IsDefined()) {
    try {
      run.optimize = parse_optimize_mode(r.text(v, path + ".optimize"));
    } catch (const InvalidArgument& e) {
      r.fail(v, path + ".optimize", e.what());
    }
  }
  if (const auto v = node["workers"]; v.IsDefined()) {
    run.workers = static_cast<int>(r.integer(v, path + ".workers", 0));
  }
  if (const auto v = node["paper_scale"]; v.IsDefined()) {
    const std::string pp = path + ".paper_scale";
    r.allow_keys(v, pp, {"steps", "repetitions"});
    if (v["steps"].IsDefined()) run.paper_steps = static_cast<int>(r.integer(v["steps"], pp + ".steps", 2));
    if (v["repetitions"].IsDefined()) {
      run.paper_repetitions = static_cast<int>(r.integer(v["repetitions"], pp + ".repetitions", 1));
    }
  }
}

ExperimentConfig parse_root(const std::string& text, const std::string& source_name,
                            const std::filesystem::path& base_dir) {
  const Reader r(source_name);
  const YAML::Node root = load_yaml(text, source_name);
  r.allow_keys(root, "",
               {"robot", "trajectory", "tasks", "actions", "solver", "experiment", "run",
                "workspace", "output"});

  ExperimentConfig config;
  config.source = source_name;

  const YAML::Node robot = r.required(root, "", "robot");
  if (robot.IsScalar()) {
    // Robot taken from another config file.
    const std::filesystem::path preset = base_dir / robot.Scalar();
    const std::string preset_name = preset.string();
    const YAML::Node other = load_yaml(read_file(preset), preset_name);
    const Reader pr(preset_name);
    pr.expect_map(other, "");
    const YAML::Node preset_robot = pr.required(other, "", "robot");
    if (!preset_robot.IsMap()) pr.fail(preset_robot, "robot", "expected an inline robot");
    config.robot = parse_robot(pr, preset_robot);
  } else {
    config.robot = parse_robot(r, robot);
  }
  config.experiment.limits = config.robot.limits;

  const bool has_traj = root["trajectory"].IsDefined();
  const bool has_tasks = root["tasks"].IsDefined();
  const bool has_actions = root["actions"].IsDefined();
  if (has_traj || has_tasks || has_actions) {
    if (!(has_traj && has_tasks && has_actions)) {
      r.fail(root, "", "'trajectory', 'tasks' and 'actions' must be given together");
    }
    config.has_experiment = true;
    config.trajectory = parse_trajectory(r, root["trajectory"]);
    config.tasks = parse_tasks(r, root["tasks"]);
    config.actions = parse_actions(r, root["actions"], config.tasks);
    if (!(config.robot.limits.velocity > 0.0)) {
      r.fail(robot, "robot.joint_limits", "joint limits are required for experiments");
    }
  }

  if (const auto v = root["solver"]; v.IsDefined()) {
    parse_solver(r, v, config);
  } else {
    config.experiment.solver.velocity_limit = config.robot.limits.velocity;
  }
  if (const auto v = root["experiment"]; v.IsDefined()) parse_experiment(r, v, config.experiment);
  if (const auto v = root["run"]; v.IsDefined()) parse_run(r, v, config.run);

  if (const auto v = root["workspace"]; v.IsDefined()) {
    r.allow_keys(v, "workspace", {"grid", "samples", "azimuths"});
    if (v["grid"].IsDefined()) config.workspace.grid = static_cast<int>(r.integer(v["grid"], "workspace.grid", 2));
    if (v["samples"].IsDefined()) {
      config.workspace.samples = static_cast<int>(r.integer(v["samples"], "workspace.samples", 1));
    }
    if (v["azimuths"].IsDefined()) {
      config.workspace.azimuths = static_cast<int>(r.integer(v["azimuths"], "workspace.azimuths", 1));
    }
  }
  if (const auto v = root["output"]; v.IsDefined()) {
    r.allow_keys(v, "output", {"dir", "csv_timing"});
    if (v["dir"].IsDefined()) config.output_dir = r.text(v["dir"], "output.dir");
    if (v["csv_timing"].IsDefined()) config.csv_timing = r.boolean(v["csv_timing"], "output.csv_timing");
  }

  try {
    (void)config.robot.build();
  } catch (const Error& e) {
    r.fail(robot, "robot", e.what());
  }
  return config;
}

}  // namespace

RobotModel RobotConfig::build() const {
  return RobotModel(segments, tool, characteristic_length);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_root(read_file(path), path.string(), path.parent_path());
}

ExperimentConfig parse_config(const std::string& text, const std::string& source_name,
                              const std::filesystem::path& base_dir) {
  return parse_root(text, source_name, base_dir);
}

ActionSet build_actions(const ExperimentConfig& config) {
  if (!config.has_experiment) throw ConfigError(config.source + ": no experiment sections");
  std::map<std::string, const TaskConfig*> by_name;
  for (const TaskConfig& t : config.tasks) by_name[t.name] = &t;

  auto make = [&](const std::string& action_name) {
    Action action;
    action.name = action_name;
    for (const auto& [task_name, level] : config.actions.at(action_name)) {
      const TaskConfig& t = *by_name.at(task_name);
      const std::size_t before = action.tasks.size();
      switch (t.kind) {
        case TaskKind::kPose:
          action.tasks.push_back(make_pose_task(t.name, level, t.gain));
          break;
        case TaskKind::kVelocity:
          action.tasks.push_back(make_velocity_task(t.name, level, t.gain));
          break;
        case TaskKind::kDexterity:
          action.tasks.push_back(make_dexterity_task(t.name, level, t.objective));
          break;
        case TaskKind::kRtr:
          action.tasks.push_back(make_rtr_task(t.name, level, t.objective));
          break;
      }
      if (action.tasks.size() > before) action.tasks.back().regularization = t.regularization;
    }
    return action;
  };
  return ActionSet{make("reach"), make("follow"), make("reach_optimized"),
                   make("follow_optimized")};
}

std::vector<TrajectorySpec> build_trajectories(const ExperimentConfig& config) {
  if (!config.has_experiment) throw ConfigError(config.source + ": no trajectory section");
  TrajectoryParams params = config.trajectory;
  params.steps = config.run.steps;
  std::vector<TrajectorySpec> out;
  for (int id : config.run.trajectories) out.push_back(build_trajectory(id, params));
  return out;
}

std::string to_string(OptimizeMode mode) {
  switch (mode) {
    case OptimizeMode::kOff:
      return "off";
    case OptimizeMode::kOn:
      return "on";
    case OptimizeMode::kBoth:
      return "both";
  }
  return "both";
}

OptimizeMode parse_optimize_mode(const std::string& text) {
  if (text == "off") return OptimizeMode::kOff;
  if (text == "on") return OptimizeMode::kOn;
  if (text == "both") return OptimizeMode::kBoth;
  throw InvalidArgument("optimize must be on, off or both, got '" + text + "'");
}

}  // namespace nbsim
