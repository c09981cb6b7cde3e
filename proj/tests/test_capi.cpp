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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "gstkit/gstkit.h"

namespace {

const char* const kGates[] = {"G1", "G2", "G3", "G4"};

std::string tmp_path(const char* name) {
  const char* env = std::getenv("GSTKIT_TEST_TMP");
  const std::filesystem::path dir = env ? env : (std::filesystem::temp_directory_path() / "gstkit_capi").string();
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("gate set handles") {
  gst_gateset* t = nullptr;
  REQUIRE(gst_gateset_targets(&t) == GST_OK);
  size_t n = 0;
  CHECK(gst_gateset_num_gates(t, &n) == GST_OK);
  CHECK(n == 4);
  const char* label = nullptr;
  CHECK(gst_gateset_label(t, 3, &label) == GST_OK);
  CHECK(std::string(label) == "G4");
  CHECK(gst_gateset_label(t, 4, &label) == GST_ERR_INVALID_ARGUMENT);

  double p = -1;
  CHECK(gst_gateset_probability(t, "G4", &p) == GST_OK);
  CHECK(std::abs(p - 1) < 1e-15);
  CHECK(gst_gateset_probability(t, "", &p) == GST_OK);
  CHECK(std::abs(p) < 1e-15);
  CHECK(gst_gateset_probability(t, "G2:G7", &p) == GST_ERR_UNKNOWN_LABEL);
  CHECK(std::string(gst_last_error()).find("G7") != std::string::npos);
  CHECK(std::string(gst_status_name(GST_ERR_UNKNOWN_LABEL)).size() > 0);

  char* json = nullptr;
  REQUIRE(gst_gateset_to_json(t, &json) == GST_OK);
  gst_gateset* back = nullptr;
  CHECK(gst_gateset_from_json(json, &back) == GST_OK);
  char* json2 = nullptr;
  CHECK(gst_gateset_to_json(back, &json2) == GST_OK);
  CHECK(std::string(json) == std::string(json2));
  gst_string_free(json);
  gst_string_free(json2);

  CHECK(gst_gateset_from_json("{not json", &back) == GST_ERR_PARSE);
  CHECK(gst_gateset_load(tmp_path("missing.json").c_str(), &back) == GST_ERR_IO);
  CHECK(gst_gateset_targets(nullptr) == GST_ERR_INVALID_ARGUMENT);
  CHECK(gst_gateset_probability(nullptr, "G1", &p) == GST_ERR_INVALID_ARGUMENT);

  gst_gateset_free(back);
  gst_gateset_free(t);
  gst_gateset_free(nullptr);
}

TEST_CASE("designs") {
  gst_design* d = nullptr;
  size_t n = 0;
  REQUIRE(gst_design_lgst(kGates, 4, kGates, 4, 1, &d) == GST_OK);
  gst_design_size(d, &n);
  CHECK(n == 85);
  gst_design_free(d);
  REQUIRE(gst_design_lgst(kGates, 4, kGates, 4, 0, &d) == GST_OK);
  gst_design_size(d, &n);
  CHECK(n == 84);
  gst_design_free(d);

  const int powers[] = {2, 4, 8, 16, 32, 64, 128};
  REQUIRE(gst_design_germ(kGates, 4, kGates, 4, powers, 7, nullptr, &d) == GST_OK);
  gst_design_size(d, &n);
  CHECK(n == 533);
  gst_design_free(d);
  REQUIRE(gst_design_germ(kGates, 4, kGates, 4, powers, 7, "G4", &d) == GST_OK);
  gst_design_size(d, &n);
  CHECK(n == 1066);

  const auto path = tmp_path("germ.jsonl");
  CHECK(gst_design_save(d, path.c_str()) == GST_OK);
  gst_design* loaded = nullptr;
  CHECK(gst_design_load(path.c_str(), &loaded) == GST_OK);
  gst_design_size(loaded, &n);
  CHECK(n == 1066);
  gst_design_free(loaded);
  gst_design_free(d);

  REQUIRE(gst_design_test(kGates, 4, 100, 5, 1, &d) == GST_OK);
  gst_design_size(d, &n);
  CHECK(n == 1010);
  gst_design_free(d);
  CHECK(gst_design_test(kGates, 2, 100, 5, 1, &d) != GST_OK);
}

TEST_CASE("simulate, fit, gauge and score through the C interface") {
  gst_gateset* truth = nullptr;
  REQUIRE(gst_gateset_noisy(0.01, 0.005, 0.0, 0.0, &truth) == GST_OK);
  gst_design* design = nullptr;
  REQUIRE(gst_design_lgst(kGates, 4, kGates, 4, 1, &design) == GST_OK);
  gst_dataset* ds = nullptr;
  REQUIRE(gst_dataset_simulate(truth, design, 1900, 7, &ds) == GST_OK);
  size_t n = 0;
  gst_dataset_size(ds, &n);
  CHECK(n > 0);

  const auto path = tmp_path("train.jsonl");
  CHECK(gst_dataset_save(ds, path.c_str()) == GST_OK);
  gst_dataset* loaded = nullptr;
  CHECK(gst_dataset_load(path.c_str(), &loaded) == GST_OK);
  long long a = 0, b = 0, c = 0, e = 0;
  CHECK(gst_dataset_counts(ds, "G2:G3", &a, &b) == GST_OK);
  CHECK(gst_dataset_counts(loaded, "G2:G3", &c, &e) == GST_OK);
  CHECK(a == c);
  CHECK(b == 1900);
  CHECK(gst_dataset_counts(ds, "G1:G1:G1:G1:G1", &a, &b) == GST_ERR_MISSING_DATA);
  gst_dataset* merged = nullptr;
  CHECK(gst_dataset_merge(ds, loaded, &merged) == GST_OK);
  gst_dataset_counts(merged, "G2:G3", &c, &e);
  CHECK(e == 3800);
  gst_dataset_free(merged);
  gst_dataset_free(loaded);

  gst_gateset* lgst = nullptr;
  gst_lgst_diagnostics diag{};
  REQUIRE(gst_fit_lgst(ds, design, nullptr, 0, &lgst, &diag) == GST_OK);
  CHECK(diag.rank == 4);
  CHECK(diag.condition_number > 1.0);

  gst_mle_options opts;
  gst_mle_options_default(&opts);
  CHECK(opts.floor == 1e-6);
  CHECK(opts.max_iterations == 10000);
  gst_gateset* mle = nullptr;
  gst_fit_report report{};
  REQUIRE(gst_fit_mle(lgst, ds, &opts, &mle, &report) == GST_OK);
  CHECK(report.final_nll <= report.initial_nll);
  double nll = 0;
  int clips = -1;
  CHECK(gst_neg_log_likelihood(mle, ds, opts.floor, &nll, &clips) == GST_OK);
  CHECK(std::abs(nll - report.final_nll) < 1e-6);

  gst_gateset* targets = nullptr;
  gst_gateset_targets(&targets);
  gst_gateset* fixed = nullptr;
  gst_gauge_report g{};
  REQUIRE(gst_gauge_optimize(mle, targets, 0.0, &fixed, &g) == GST_OK);
  CHECK(g.discrepancy_after <= g.discrepancy_before);
  CHECK(g.invariance_error < 1e-9);

  gst_gateset* frame = nullptr;
  REQUIRE(gst_gateset_rotate_spam(targets, 0.05, &frame) == GST_OK);
  gst_gateset* standard = nullptr;
  REQUIRE(gst_fit_standard(ds, design, frame, &standard) == GST_OK);

  gst_design* test = nullptr;
  REQUIRE(gst_design_test(kGates, 4, 20, 2, 3, &test) == GST_OK);
  gst_dataset* test_ds = nullptr;
  REQUIRE(gst_dataset_simulate(truth, test, 950, 9, &test_ds) == GST_OK);
  const gst_gateset* estimates[] = {targets, fixed, standard};
  const char* names[] = {"target", "mle", "standard"};
  char* json = nullptr;
  char* csv = nullptr;
  REQUIRE(gst_score(estimates, names, 3, test_ds, test, 1e-3, &json, &csv) == GST_OK);
  CHECK(std::string(json).find("\"mle\"") != std::string::npos);
  CHECK(std::string(csv).rfind("L,estimate,mean_per_count_score\n", 0) == 0);
  gst_string_free(json);
  gst_string_free(csv);
  CHECK(gst_score(estimates, names, 3, test_ds, test, 1e-3, nullptr, nullptr) == GST_OK);

  for (auto* p : {truth, lgst, mle, targets, fixed, frame, standard}) gst_gateset_free(p);
  gst_dataset_free(test_ds);
  gst_dataset_free(ds);
  gst_design_free(test);
  gst_design_free(design);
}
