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

#include "nbsim/summary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "nbsim/errors.hpp"

namespace nbsim {
namespace {

double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Distribution describe_or_empty(const std::vector<double>& values) {
  return values.empty() ? Distribution{} : describe(values);
}

double mean_of(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double mean_metric(const RunRecord& record, double MetricSample::*field) {
  double total = 0.0;
  for (const StepRecord& s : record.steps) total += s.metrics.*field;
  return total / static_cast<double>(record.steps.size());
}

struct SectorAccumulator {
  std::array<double, 4> sum{};
  std::array<long, 4> count{};

  void add(const RunRecord& record) {
    for (const StepRecord& s : record.steps) {
      const auto k = static_cast<std::size_t>(s.sector);
      sum[k] += s.metrics.eta2;
      ++count[k];
    }
  }
  std::array<double, 4> means() const {
    std::array<double, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) out[k] = count[k] ? sum[k] / count[k] : 0.0;
    return out;
  }
  // (b, d) pooled against (a, c) pooled.
  double gap() const {
    const long n_bd = count[1] + count[3];
    const long n_ac = count[0] + count[2];
    if (n_bd == 0 || n_ac == 0) return 0.0;
    const double bd = (sum[1] + sum[3]) / n_bd;
    const double ac = (sum[0] + sum[2]) / n_ac;
    return ac > 0.0 ? 100.0 * (bd / ac - 1.0) : 0.0;
  }
};

}  // namespace

Distribution describe(std::vector<double> values) {
  if (values.empty()) throw EmptyInput("cannot describe an empty sample");
  std::sort(values.begin(), values.end());
  Distribution d;
  d.count = values.size();
  d.min = values.front();
  d.max = values.back();
  d.q1 = quantile(values, 0.25);
  d.median = quantile(values, 0.5);
  d.q3 = quantile(values, 0.75);
  d.mean = mean_of(values);
  double var = 0.0;
  for (double v : values) var += (v - d.mean) * (v - d.mean);
  d.stddev = std::sqrt(var / static_cast<double>(values.size()));
  return d;
}

double improvement_percent(double plain, double optimized) {
  if (plain == 0.0) throw DegenerateInput("improvement relative to a zero baseline");
  return 100.0 * (optimized - plain) / plain;
}

double mean_eta(const RunRecord& record) { return mean_metric(record, &MetricSample::eta); }

Summary summarize(const std::vector<RunRecord>& records, int reach_failures,
                  int other_failures) {
  if (records.empty()) throw EmptyInput("no run records to summarize");
  for (const RunRecord& r : records) {
    if (r.steps.empty()) throw EmptyInput("run record without logged steps");
  }

  std::map<int, std::vector<const RunRecord*>> by_trajectory;
  for (const RunRecord& r : records) by_trajectory[r.trajectory].push_back(&r);

  Summary summary;
  summary.runs = static_cast<int>(records.size());
  summary.reach_failures = reach_failures;
  summary.other_failures = other_failures;

  std::vector<double> all_solver;
  for (const auto& [id, runs] : by_trajectory) {
    TrajectorySummary ts;
    ts.trajectory = id;

    std::map<std::uint64_t, std::pair<const RunRecord*, const RunRecord*>> pairs;
    std::vector<double> start_plain, start_opt, mean_plain, mean_opt;
    std::vector<double> solver_plain, solver_opt, reach_plain, reach_opt;
    SectorAccumulator sectors_plain, sectors_opt;
    for (const RunRecord* r : runs) {
      all_solver.push_back(r->mean_solver_us);
      summary.max_solver_us = std::max(summary.max_solver_us, r->mean_solver_us);
      if (r->tracking_flagged) ++ts.tracking_flags;
      if (r->optimized) {
        ++ts.optimized_runs;
        if (r->local_max_reached) ++ts.local_max_reached;
        start_opt.push_back(r->steps.front().metrics.eta);
        mean_opt.push_back(mean_eta(*r));
        solver_opt.push_back(r->mean_solver_us);
        reach_opt.push_back(r->reach_duration);
        sectors_opt.add(*r);
        pairs[r->seed].second = r;
      } else {
        ++ts.plain_runs;
        start_plain.push_back(r->steps.front().metrics.eta);
        mean_plain.push_back(mean_eta(*r));
        solver_plain.push_back(r->mean_solver_us);
        reach_plain.push_back(r->reach_duration);
        sectors_plain.add(*r);
        pairs[r->seed].first = r;
      }
    }
    ts.start_eta_plain = describe_or_empty(start_plain);
    ts.start_eta_optimized = describe_or_empty(start_opt);
    ts.mean_eta_plain = describe_or_empty(mean_plain);
    ts.mean_eta_optimized = describe_or_empty(mean_opt);
    ts.sector_rtr_plain = sectors_plain.means();
    ts.sector_rtr_optimized = sectors_opt.means();
    ts.sector_gap_plain = sectors_plain.gap();
    ts.sector_gap_optimized = sectors_opt.gap();
    ts.mean_solver_us_plain = mean_of(solver_plain);
    ts.mean_solver_us_optimized = mean_of(solver_opt);
    ts.mean_reach_seconds_plain = mean_of(reach_plain);
    ts.mean_reach_seconds_optimized = mean_of(reach_opt);

    std::vector<double> start_gain, mean_gain, eta1_gain, eta2_gain;
    int negative = 0, negative_start = 0;
    for (const auto& [seed, pair] : pairs) {
      const auto [plain, opt] = pair;
      if (plain == nullptr || opt == nullptr) continue;
      start_gain.push_back(improvement_percent(plain->steps.front().metrics.eta,
                                               opt->steps.front().metrics.eta));
      mean_gain.push_back(improvement_percent(mean_eta(*plain), mean_eta(*opt)));
      eta1_gain.push_back(improvement_percent(mean_metric(*plain, &MetricSample::eta1),
                                              mean_metric(*opt, &MetricSample::eta1)));
      eta2_gain.push_back(improvement_percent(mean_metric(*plain, &MetricSample::eta2),
                                              mean_metric(*opt, &MetricSample::eta2)));
      if (mean_gain.back() < 0.0) ++negative;
      if (start_gain.back() < 0.0) ++negative_start;
    }
    ts.pairs = static_cast<int>(mean_gain.size());
    ts.start_eta_improvement = describe_or_empty(start_gain);
    ts.mean_eta_improvement = describe_or_empty(mean_gain);
    ts.mean_eta1_improvement = describe_or_empty(eta1_gain);
    ts.mean_eta2_improvement = describe_or_empty(eta2_gain);
    if (ts.pairs > 0) {
      ts.negative_fraction = static_cast<double>(negative) / ts.pairs;
      ts.negative_start_fraction = static_cast<double>(negative_start) / ts.pairs;
    }
    summary.trajectories.push_back(ts);
  }
  summary.mean_solver_us = mean_of(all_solver);
  return summary;
}

}  // namespace nbsim
