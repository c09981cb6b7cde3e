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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gstkit/dataset.hpp"
#include "gstkit/design.hpp"
#include "gstkit/gauge.hpp"
#include "gstkit/lgst.hpp"
#include "gstkit/mle.hpp"
#include "gstkit/models.hpp"
#include "gstkit/scoring.hpp"

namespace gstkit {

/// End-to-end synthetic run: simulate short/long training data and a
/// 10 x 101 test series from a noisy qubit model, then fit, gauge-fix and
/// score the target, standard-tomography, LGST, short-ML and long-ML
/// estimates.
struct DemoOptions {
  std::uint64_t seed = 2014;
  long long n_train = 1900;
  long long n_test = 950;
  double epsilon = 1e-3;
  NoiseModel noise{0.01, 0.005, 0.0, 0.0};
  /// Y rotation of rho and E in the frame assumed by standard tomography.
  double frame_miscalibration = 0.05;
  int test_length = 100;
  int num_random = 5;
  MleOptions mle;
};

struct DemoResult {
  GateSet truth;
  ExperimentDesign short_design;
  ExperimentDesign long_design;
  ExperimentDesign test_design;
  DataSet long_data;
  DataSet short_data;
  DataSet test_data;
  LgstIntermediates lgst;
  FitReport short_report;
  FitReport long_report;
  /// Gauge-fixed estimates in scoring order.
  std::vector<std::pair<std::string, GateSet>> estimates;
  std::map<std::string, GaugeResult> gauge;
  ScoreComparison comparison;
};

std::vector<std::string> qubit_labels();
FiducialSet default_fiducials(const std::vector<std::string>& labels);

DataSet restrict_to(const DataSet& ds, const ExperimentDesign& design);

DemoResult run_demo(const DemoOptions& options = {});

/// Writes every artifact of a demo run into `dir` (created if missing).
void write_demo_outputs(const DemoResult& result, const DemoOptions& options, const std::filesystem::path& dir);

std::string fit_report_to_json(const FitReport& r);
std::string lgst_diagnostics_to_json(const LgstIntermediates& r);
std::string gauge_report_to_json(const GaugeResult& r);

}  // namespace gstkit
