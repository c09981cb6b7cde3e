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

#pragma once

#include <map>
#include <string>
#include <vector>

#include "gstkit/dataset.hpp"
#include "gstkit/design.hpp"
#include "gstkit/gateset.hpp"

namespace gstkit {

/// clamp(p, epsilon, 1 - epsilon).
double predict_clipped(const GateSet& gs, const Sequence& seq, double epsilon = 1e-3);

/// Log-score contribution of one test record, in nats.
struct SequenceScore {
  std::string sequence_key;
  long long n_plus = 0;
  long long n_total = 0;
  double predicted_p = 0.0;  ///< after clipping
  double raw_score = 0.0;    ///< -[n+ ln p+ + n- ln p-]
  double renorm_score = 0.0; ///< n+ ln(f+/p+) + n- ln(f-/p-), >= 0
  int base = -1;             ///< base test sequence, -1 if not a partial
  int length = -1;
};

struct ScoreReport {
  /// Keyed by experiment id; several ids may share one sequence record.
  std::map<std::string, SequenceScore> per_experiment;
  /// L -> mean over base sequences of renorm_score / n_total.
  std::map<int, double> per_length;
  double total_raw = 0.0;
  double total_renorm = 0.0;
  double epsilon = 0.0;
};

/// Scores every TEST_PARTIAL experiment of `design` (or every experiment if
/// the design has none) against the test data.
ScoreReport score(const GateSet& gs, const DataSet& ds_test, const ExperimentDesign& design, double epsilon = 1e-3);

/// Per-count renormalized score n+ ln(f+/p+) + n- ln(f-/p-) divided by the
/// count total, for a single record; 0 ln 0 := 0.
double renormalized_score(long long n_plus, long long n_total, double p_plus);

struct ScoreComparison {
  std::vector<std::string> names;
  std::vector<ScoreReport> reports;
  std::vector<int> lengths;
  /// curves[i][l] = per-count score of estimate i at lengths[l].
  std::vector<std::vector<double>> curves;

  /// Rows "L,estimate,mean_per_count_score".
  std::string to_csv() const;
};

ScoreComparison score_comparison(const std::vector<std::pair<std::string, GateSet>>& estimates, const DataSet& ds_test,
                                 const ExperimentDesign& design, double epsilon = 1e-3);

std::string score_report_to_json(const ScoreReport& report);

}  // namespace gstkit
