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

#include "nbsim/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "nbsim/errors.hpp"

namespace nbsim {
namespace {

using nlohmann::json;

json to_json(const Distribution& d) {
  if (d.count == 0) return json{{"count", 0}};
  return json{{"count", d.count}, {"min", d.min},   {"q1", d.q1},       {"median", d.median},
              {"q3", d.q3},       {"max", d.max},   {"mean", d.mean},   {"stddev", d.stddev}};
}

json sector_json(const std::array<double, 4>& values) {
  return json{{"a", values[0]}, {"b", values[1]}, {"c", values[2]}, {"d", values[3]}};
}

}  // namespace

std::string run_csv_name(const RunRecord& record) {
  return "traj" + std::to_string(record.trajectory) + "_rep" + std::to_string(record.seed) +
         (record.optimized ? "_opt.csv" : "_raw.csv");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

void write_run_csv(std::ostream& out, const RunRecord& record, bool include_timing) {
  out << kRunCsvHeader << '\n';
  for (const StepRecord& s : record.steps) {
    out << s.step << ',' << format_number(s.time) << ',' << format_number(s.metrics.eta1) << ','
        << format_number(s.metrics.eta2) << ',' << format_number(s.metrics.eta) << ','
        << sector_label(s.sector) << ','
        << (include_timing ? format_number(s.solver_us) : std::string("nan")) << ','
        << format_number(s.pose_error) << '\n';
  }
}

void write_run_csv(const std::filesystem::path& path, const RunRecord& record,
                   bool include_timing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_run_csv(out, record, include_timing);
  if (!out) throw Error("failed writing " + path.string());
}

std::string summary_json(const Summary& summary, const BatchInfo& info) {
  json doc;
  doc["batch"] = {{"config", info.config},
                  {"seed", info.seed},
                  {"repetitions", info.repetitions},
                  {"steps", info.steps},
                  {"optimize", info.optimize},
                  {"trajectories", info.trajectories},
                  {"workers", info.workers},
                  {"wall_seconds", info.wall_seconds}};
  doc["runs"] = summary.runs;
  doc["reach_failures"] = summary.reach_failures;
  doc["other_failures"] = summary.other_failures;
  doc["timing"] = {{"mean_step_us", summary.mean_solver_us},
                   {"max_run_mean_step_us", summary.max_solver_us}};

  json failures = json::array();
  for (const RunFailure& f : info.failures) {
    failures.push_back({{"trajectory", f.trajectory},
                        {"seed", f.seed},
                        {"optimized", f.optimized},
                        {"reason", f.reason}});
  }
  doc["failures"] = failures;

  json trajectories = json::array();
  for (const TrajectorySummary& t : summary.trajectories) {
    trajectories.push_back({
        {"trajectory", t.trajectory},
        {"plain_runs", t.plain_runs},
        {"optimized_runs", t.optimized_runs},
        {"pairs", t.pairs},
        {"start_eta", {{"raw", to_json(t.start_eta_plain)}, {"opt", to_json(t.start_eta_optimized)}}},
        {"mean_eta", {{"raw", to_json(t.mean_eta_plain)}, {"opt", to_json(t.mean_eta_optimized)}}},
        {"improvement_percent",
         {{"start_eta", to_json(t.start_eta_improvement)},
          {"mean_eta", to_json(t.mean_eta_improvement)},
          {"mean_eta1", to_json(t.mean_eta1_improvement)},
          {"mean_eta2", to_json(t.mean_eta2_improvement)}}},
        {"negative_fraction", t.negative_fraction},
        {"negative_start_fraction", t.negative_start_fraction},
        {"sector_rtr",
         {{"raw", sector_json(t.sector_rtr_plain)},
          {"opt", sector_json(t.sector_rtr_optimized)},
          {"gap_bd_vs_ac_percent_raw", t.sector_gap_plain},
          {"gap_bd_vs_ac_percent_opt", t.sector_gap_optimized}}},
        {"mean_step_us", {{"raw", t.mean_solver_us_plain}, {"opt", t.mean_solver_us_optimized}}},
        {"mean_reach_seconds",
         {{"raw", t.mean_reach_seconds_plain}, {"opt", t.mean_reach_seconds_optimized}}},
        {"local_max_reached", t.local_max_reached},
        {"tracking_flags", t.tracking_flags},
    });
  }
  doc["trajectories"] = trajectories;
  return doc.dump(2) + "\n";
}

}  // namespace nbsim
