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

#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "nbsim/experiment.hpp"
#include "nbsim/summary.hpp"

namespace nbsim {

inline constexpr const char* kRunCsvHeader =
    "step,time,eta1,eta2,eta,sector,solver_us,pose_error";

// traj{ID}_rep{SEED}_{opt|raw}.csv
std::string run_csv_name(const RunRecord& record);

// Shortest round-trip decimal form, '.' separator, independent of locale.
std::string format_number(double value);

/// One row per logged step. Wall-clock timings are not reproducible, so the
/// solver_us column holds "nan" unless `include_timing` is set.
void write_run_csv(std::ostream& out, const RunRecord& record, bool include_timing);
void write_run_csv(const std::filesystem::path& path, const RunRecord& record,
                   bool include_timing);

struct BatchInfo {
  std::string config;
  std::uint64_t seed = 0;
  int repetitions = 0;
  int steps = 0;
  std::string optimize;
  std::vector<int> trajectories;
  int workers = 1;
  double wall_seconds = 0.0;
  std::vector<RunFailure> failures;
};

// JSON document described in docs/summary_schema.md.
std::string summary_json(const Summary& summary, const BatchInfo& info);

}  // namespace nbsim
