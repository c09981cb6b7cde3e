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

#include "gstkit/demo.hpp"

#include "json.hpp"

#include "gstkit/error.hpp"
#include "gstkit/io.hpp"
#include "gstkit/rng.hpp"
#include "gstkit/standard_tomo.hpp"

namespace gstkit {

std::vector<std::string> qubit_labels() { return {"G1", "G2", "G3", "G4"}; }

FiducialSet default_fiducials(const std::vector<std::string>& labels) {
  FiducialSet f;
  for (const auto& l : labels) f.fiducials.push_back(Sequence{{l}});
  return f;
}

DataSet restrict_to(const DataSet& ds, const ExperimentDesign& design) {
  DataSet out;
  for (const auto& s : design.unique_sequences()) out.set(s, ds.at(s));
  return out;
}

DemoResult run_demo(const DemoOptions& o) {
  const auto labels = qubit_labels();
  const auto fids = default_fiducials(labels);
  const GateSet targets = qubit_targets();

  DemoResult r{noisy_qubit_model(o.noise),
               lgst_design(labels, fids, true),
               germ_power_design(labels, fids, {2, 4, 8, 16, 32, 64, 128}, std::string("G4")),
               test_design(labels, o.test_length, o.num_random, stream_key(o.seed, "test-design")),
               {}, {}, {}, {}, {}, {}, {}, {}, {}};
  r.long_data = simulate_counts(r.truth, r.long_design, o.n_train, stream_key(o.seed, "train"));
  r.short_data = restrict_to(r.long_data, r.short_design);
  r.test_data = simulate_counts(r.truth, r.test_design, o.n_test, stream_key(o.seed, "test"));

  const GateSet frame = rotate_spam(targets, o.frame_miscalibration);
  const GateSet standard = standard_tomography_estimate(r.short_data, r.short_design, frame);
  auto lgst = lgst_estimate(r.short_data, r.short_design, labels);
  r.lgst = lgst.intermediates;
  auto ml_short = mle_estimate(lgst.estimate, r.short_data, o.mle);
  auto ml_long = mle_estimate(lgst.estimate, r.long_data, o.mle);
  r.short_report = ml_short.report;
  r.long_report = ml_long.report;

  const std::vector<std::pair<std::string, GateSet>> raw = {{"target", targets},
                                                            {"standard", standard},
                                                            {"lgst", lgst.estimate},
                                                            {"ml-short", ml_short.estimate},
                                                            {"ml-long", ml_long.estimate}};
  for (const auto& [name, gs] : raw) {
    auto g = gauge_optimize(gs, targets);
    r.estimates.emplace_back(name, g.gate_set);
    r.gauge.emplace(name, std::move(g));
  }
  r.comparison = score_comparison(r.estimates, r.test_data, r.test_design, o.epsilon);
  return r;
}

std::string fit_report_to_json(const FitReport& r) {
  nlohmann::ordered_json j;
  j["initial_nll"] = r.initial_nll;
  j["final_nll"] = r.final_nll;
  j["iterations"] = r.iterations;
  j["gradient_norm"] = r.gradient_norm;
  j["clip_events"] = r.clip_events;
  j["converged"] = r.converged;
  j["feasible_start"] = r.feasible_start;
  j["stages"] = r.stages;
  j["message"] = r.message;
  return j.dump(2) + "\n";
}

std::string lgst_diagnostics_to_json(const LgstIntermediates& r) {
  nlohmann::ordered_json j;
  j["condition_number"] = r.condition_number;
  j["min_singular_value"] = r.min_singular_value;
  j["rank"] = r.rank;
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

std::string gauge_report_to_json(const GaugeResult& r) {
  nlohmann::ordered_json j;
  j["discrepancy_before"] = r.discrepancy_before;
  j["discrepancy_after"] = r.discrepancy_after;
  j["det_m"] = r.det_m;
  j["invariance_error"] = r.invariance_error;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  return j.dump(2) + "\n";
}

void write_demo_outputs(const DemoResult& r, const DemoOptions& o, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create '" + dir.string() + "': " + ec.message());
  io::save_gateset(r.truth, dir / "truth.json");
  io::save_design(r.short_design, dir / "design_short.jsonl");
  io::save_design(r.long_design, dir / "design_long.jsonl");
  io::save_design(r.test_design, dir / "design_test.jsonl");
  io::save_dataset(r.long_data, dir / "train_long.jsonl");
  io::save_dataset(r.short_data, dir / "train_short.jsonl");
  io::save_dataset(r.test_data, dir / "test.jsonl");
  io::write_file(dir / "lgst_diagnostics.json", lgst_diagnostics_to_json(r.lgst));
  io::write_file(dir / "fit_ml_short.json", fit_report_to_json(r.short_report));
  io::write_file(dir / "fit_ml_long.json", fit_report_to_json(r.long_report));
  for (std::size_t i = 0; i < r.estimates.size(); ++i) {
    const auto& name = r.estimates[i].first;
    io::save_gateset(r.estimates[i].second, dir / ("estimate_" + name + ".json"));
    io::write_file(dir / ("gauge_" + name + ".json"), gauge_report_to_json(r.gauge.at(name)));
    io::write_file(dir / ("score_" + name + ".json"), score_report_to_json(r.comparison.reports[i]));
  }
  io::write_file(dir / "scores.csv", r.comparison.to_csv());

  nlohmann::ordered_json summary;
  summary["seed"] = o.seed;
  summary["n_train"] = o.n_train;
  summary["n_test"] = o.n_test;
  summary["epsilon"] = o.epsilon;
  for (std::size_t i = 0; i < r.comparison.names.size(); ++i) {
    const auto& rep = r.comparison.reports[i];
    summary["estimates"][r.comparison.names[i]] = {
        {"total_renorm", rep.total_renorm},
        {"per_count_L100", rep.per_length.contains(o.test_length) ? rep.per_length.at(o.test_length) : 0.0}};
  }
  io::write_file(dir / "summary.json", summary.dump(2) + "\n");
}

}  // namespace gstkit
