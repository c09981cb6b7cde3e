// Copyright 2026 The gstkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gstkit/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "gstkit/error.hpp"

namespace gstkit {

namespace {

void check_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) fail(ErrorCode::kInvalidArgument, "epsilon must lie in (0, 0.5)");
}

double xlogy_ratio(double n, double f, double p) { return n > 0 ? n * std::log(f / p) : 0.0; }

int meta_int(const Experiment& e, const char* key) {
  const auto it = e.meta.find(key);
  if (it == e.meta.end()) return -1;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    fail(ErrorCode::kInvalidArgument, "experiment '" + e.id + "' has malformed '" + key + "' metadata");
  }
}

}  // namespace

double predict_clipped(const GateSet& gs, const Sequence& seq, double epsilon) {
  check_epsilon(epsilon);
  return std::clamp(sequence_probability(seq, gs), epsilon, 1.0 - epsilon);
}

double renormalized_score(long long n_plus, long long n_total, double p_plus) {
  const double np = static_cast<double>(n_plus), nm = static_cast<double>(n_total - n_plus);
  const double f = np / static_cast<double>(n_total);
  return (xlogy_ratio(np, f, p_plus) + xlogy_ratio(nm, 1.0 - f, 1.0 - p_plus)) / static_cast<double>(n_total);
}

ScoreReport score(const GateSet& gs, const DataSet& ds_test, const ExperimentDesign& design, double epsilon) {
  check_epsilon(epsilon);
  const bool has_partials = std::any_of(design.experiments().begin(), design.experiments().end(),
                                        [](const Experiment& e) { return e.role == Role::kTestPartial; });
  ScoreReport rep;
  rep.epsilon = epsilon;
  std::map<int, std::pair<double, int>> by_length;
  for (const auto& e : design.experiments()) {
    if (has_partials && e.role != Role::kTestPartial) continue;
    if (!ds_test.contains(e.sequence)) {
      fail(ErrorCode::kMissingData, "no test data for experiment '" + e.id + "' (sequence '" + e.sequence.key() + "')");
    }
    const Counts& c = ds_test.at(e.sequence);
    SequenceScore s;
    s.sequence_key = e.sequence.key();
    s.n_plus = c.n_plus;
    s.n_total = c.n_total;
    s.predicted_p = predict_clipped(gs, e.sequence, epsilon);
    const double np = static_cast<double>(c.n_plus), nm = static_cast<double>(c.n_total - c.n_plus);
    s.raw_score = -((np > 0 ? np * std::log(s.predicted_p) : 0.0) + (nm > 0 ? nm * std::log1p(-s.predicted_p) : 0.0));
    // Relative entropy is non-negative; tiny negative values are rounding.
    s.renorm_score = std::max(0.0, renormalized_score(c.n_plus, c.n_total, s.predicted_p) * static_cast<double>(c.n_total));
    s.base = meta_int(e, "base");
    s.length = e.role == Role::kTestPartial ? meta_int(e, "L") : static_cast<int>(e.sequence.length());
    rep.total_raw += s.raw_score;
    rep.total_renorm += s.renorm_score;
    auto& acc = by_length[s.length];
    acc.first += s.renorm_score / static_cast<double>(s.n_total);
    acc.second += 1;
    rep.per_experiment.emplace(e.id, std::move(s));
  }
  for (const auto& [len, acc] : by_length) rep.per_length[len] = acc.first / acc.second;
  return rep;
}

ScoreComparison score_comparison(const std::vector<std::pair<std::string, GateSet>>& estimates, const DataSet& ds_test,
                                 const ExperimentDesign& design, double epsilon) {
  ScoreComparison out;
  for (const auto& [name, gs] : estimates) {
    out.names.push_back(name);
    out.reports.push_back(score(gs, ds_test, design, epsilon));
  }
  if (!out.reports.empty()) {
    for (const auto& [len, v] : out.reports.front().per_length) out.lengths.push_back(len);
  }
  for (const auto& r : out.reports) {
    std::vector<double> curve;
    for (const int len : out.lengths) curve.push_back(r.per_length.at(len));
    out.curves.push_back(std::move(curve));
  }
  return out;
}

std::string ScoreComparison::to_csv() const {
  std::string out = "L,estimate,mean_per_count_score\n";
  char buf[64];
  for (std::size_t l = 0; l < lengths.size(); ++l) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.10g", curves[i][l]);
      out += std::to_string(lengths[l]) + "," + names[i] + "," + buf + "\n";
    }
  }
  return out;
}

std::string score_report_to_json(const ScoreReport& report) {
  nlohmann::ordered_json j;
  j["epsilon"] = report.epsilon;
  j["total_raw"] = report.total_raw;
  j["total_renorm"] = report.total_renorm;
  nlohmann::ordered_json per_length = nlohmann::ordered_json::object();
  for (const auto& [len, v] : report.per_length) per_length[std::to_string(len)] = v;
  j["per_length"] = per_length;
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (const auto& [id, s] : report.per_experiment) {
    per[id] = {{"sequence", s.sequence_key}, {"n_plus", s.n_plus},   {"n_total", s.n_total},
               {"predicted_p", s.predicted_p}, {"raw_score", s.raw_score}, {"renorm_score", s.renorm_score},
               {"base", s.base},             {"L", s.length}};
  }
  j["per_experiment"] = per;
  return j.dump(2) + "\n";
}

}  // namespace gstkit
