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

#include "gstkit/gstkit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gstkit/demo.hpp"
#include "gstkit/error.hpp"
#include "gstkit/gauge.hpp"
#include "gstkit/io.hpp"
#include "gstkit/lgst.hpp"
#include "gstkit/mle.hpp"
#include "gstkit/models.hpp"
#include "gstkit/scoring.hpp"
#include "gstkit/standard_tomo.hpp"
#include "json.hpp"

struct gst_gateset {
  gstkit::GateSet value;
};
struct gst_design {
  gstkit::ExperimentDesign value;
};
struct gst_dataset {
  gstkit::DataSet value;
};

namespace {

thread_local std::string g_last_error;

gst_status record(gst_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
gst_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return GST_OK;
  } catch (const gstkit::Error& e) {
    return record(static_cast<gst_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return record(GST_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(GST_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(GST_ERR_INTERNAL, "unknown error");
  }
}

template <class T>
const T& deref(const T* p, const char* what) {
  if (p == nullptr) gstkit::fail(gstkit::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
  return *p;
}

const char* cstr(const char* p, const char* what) {
  if (p == nullptr) gstkit::fail(gstkit::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
  return p;
}

template <class T>
void need_out(T** out) {
  if (out == nullptr) gstkit::fail(gstkit::ErrorCode::kInvalidArgument, "output pointer is NULL");
}

std::vector<std::string> strings(const char* const* items, std::size_t n, const char* what) {
  if (n > 0 && items == nullptr) gstkit::fail(gstkit::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (items[i] == nullptr) gstkit::fail(gstkit::ErrorCode::kInvalidArgument, std::string(what) + " has a NULL entry");
    out.emplace_back(items[i]);
  }
  return out;
}

gstkit::FiducialSet fiducial_set(const char* const* items, std::size_t n) {
  gstkit::FiducialSet f;
  for (const auto& key : strings(items, n, "fiducials")) f.fiducials.push_back(gstkit::Sequence::from_key(key));
  return f;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Handle, class V>
void emit(Handle** out, V&& value) {
  *out = new Handle{std::forward<V>(value)};
}

// Gate labels of every SANDWICH experiment, in first-seen order.
std::vector<std::string> sandwich_labels(const gstkit::ExperimentDesign& design) {
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (const auto& e : design.experiments()) {
    if (e.role != gstkit::Role::kSandwich || e.meta.contains("append")) continue;
    const auto it = e.meta.find("gate");
    if (it != e.meta.end() && seen.insert(it->second).second) labels.push_back(it->second);
  }
  return labels;
}

}  // namespace

extern "C" {

const char* gst_version(void) { return "0.1.0"; }

const char* gst_last_error(void) { return g_last_error.c_str(); }

const char* gst_status_name(gst_status status) {
  if (status == GST_OK) return "ok";
  if (status == GST_ERR_INTERNAL) return "internal";
  return gstkit::error_code_name(static_cast<gstkit::ErrorCode>(static_cast<int>(status)));
}

void gst_string_free(char* s) { std::free(s); }

gst_status gst_gateset_targets(gst_gateset** out) {
  return guarded([&] {
    need_out(out);
    emit(out, gstkit::qubit_targets());
  });
}

gst_status gst_gateset_noisy(double over_rotation, double depolarization, double spam_depolarization,
                             double spam_rotation, gst_gateset** out) {
  return guarded([&] {
    need_out(out);
    emit(out, gstkit::noisy_qubit_model({over_rotation, depolarization, spam_depolarization, spam_rotation}));
  });
}

gst_status gst_gateset_rotate_spam(const gst_gateset* gs, double angle, gst_gateset** out) {
  return guarded([&] {
    need_out(out);
    emit(out, gstkit::rotate_spam(deref(gs, "gate set").value, angle));
  });
}

gst_status gst_gateset_load(const char* path, gst_gateset** out) {
  return guarded([&] {
    need_out(out);
    emit(out, gstkit::io::load_gateset(cstr(path, "path")));
  });
}

gst_status gst_gateset_save(const gst_gateset* gs, const char* path) {
  return guarded([&] { gstkit::io::save_gateset(deref(gs, "gate set").value, cstr(path, "path")); });
}

gst_status gst_gateset_from_json(const char* json, gst_gateset** out) {
  return guarded([&] {
    need_out(out);
    emit(out, gstkit::io::gateset_from_json(cstr(json, "json")));
  });
}

gst_status gst_gateset_to_json(const gst_gateset* gs, char** out) {
  return guarded([&] {
    need_out(out);
    *out = dup_string(gstkit::io::gateset_to_json(deref(gs, "gate set").value));
  });
}

gst_status gst_gateset_num_gates(const gst_gateset* gs, size_t* out) {
  return guarded([&] {
    if (out == nullptr) gstkit::fail(gstkit::ErrorCode::kInvalidArgument, "output pointer is NULL");
    *out = deref(gs, "gate set").value.labels().size();
  });
}

gst_status gst_gateset_label(const gst_gateset* gs, size_t index, const char** out) {
  return guarded([&] {
    need_out(out);
    const auto& labels = deref(gs, "gate set").value.labels();
    if (index >= labels.size()) gstkit::fail(gstkit::ErrorCode::kInvalidArgument, "gate index out of range");
    *out = labels[index].c_str();
  });
}

gst_status gst_gateset_probability(const gst_gateset* gs, const char* sequence_key, double* out) {
  return guarded([&] {
    if (out == nullptr) gstkit::fail(gstkit::ErrorCode::kInvalidArgument, "output pointer is NULL");
    *out = gstkit::sequence_probability(gstkit::Sequence::from_key(cstr(sequence_key, "sequence")),
                                        deref(gs, "gate set").value);
  });
}

void gst_gateset_free(gst_gateset* gs) { delete gs; }

gst_status gst_design_lgst(const char* const* gates, size_t num_gates, const char* const* fiducials,
                           size_t num_fiducials, int include_spam, gst_design** out) {
  return guarded([&] {
    need_out(out);
    emit(out, gstkit::lgst_design(strings(gates, num_gates, "gates"), fiducial_set(fiducials, num_fiducials),
                                  include_spam != 0));
  });
}

gst_status gst_design_germ(const char* const* gates, size_t num_gates, const char* const* fiducials,
                           size_t num_fiducials, const int* powers, size_t num_powers, const char* append_gate,
                           gst_design** out) {
  return guarded([&] {
    need_out(out);
    if (num_powers > 0 && powers == nullptr) gstkit::fail(gstkit::ErrorCode::kInvalidArgument, "powers is NULL");
    std::vector<int> p(powers, powers + num_powers);
    std::optional<std::string> append;
    if (append_gate != nullptr) append = append_gate;
    emit(out, gstkit::germ_power_design(strings(gates, num_gates, "gates"), fiducial_set(fiducials, num_fiducials),
                                        p, append));
  });
}

gst_status gst_design_test(const char* const* gates, size_t num_gates, int length, int num_random, uint64_t seed,
                           gst_design** out) {
  return guarded([&] {
    need_out(out);
    emit(out, gstkit::test_design(strings(gates, num_gates, "gates"), length, num_random, seed));
  });
}

gst_status gst_design_load(const char* path, gst_design** out) {
  return guarded([&] {
    need_out(out);
    emit(out, gstkit::io::load_design(cstr(path, "path")));
  });
}

gst_status gst_design_save(const gst_design* design, const char* path) {
  return guarded([&] { gstkit::io::save_design(deref(design, "design").value, cstr(path, "path")); });
}

gst_status gst_design_size(const gst_design* design, size_t* out) {
  return guarded([&] {
    if (out == nullptr) gstkit::fail(gstkit::ErrorCode::kInvalidArgument, "output pointer is NULL");
    *out = deref(design, "design").value.size();
  });
}

void gst_design_free(gst_design* design) { delete design; }

gst_status gst_dataset_simulate(const gst_gateset* gs, const gst_design* design, long long n_total, uint64_t seed,
                                gst_dataset** out) {
  return guarded([&] {
    need_out(out);
    emit(out, gstkit::simulate_counts(deref(gs, "gate set").value, deref(design, "design").value, n_total, seed));
  });
}

gst_status gst_dataset_load(const char* path, gst_dataset** out) {
  return guarded([&] {
    need_out(out);
    emit(out, gstkit::io::load_dataset(cstr(path, "path")));
  });
}

gst_status gst_dataset_save(const gst_dataset* ds, const char* path) {
  return guarded([&] { gstkit::io::save_dataset(deref(ds, "dataset").value, cstr(path, "path")); });
}

gst_status gst_dataset_merge(const gst_dataset* a, const gst_dataset* b, gst_dataset** out) {
  return guarded([&] {
    need_out(out);
    emit(out, gstkit::merge(deref(a, "dataset").value, deref(b, "dataset").value));
  });
}

gst_status gst_dataset_size(const gst_dataset* ds, size_t* out) {
  return guarded([&] {
    if (out == nullptr) gstkit::fail(gstkit::ErrorCode::kInvalidArgument, "output pointer is NULL");
    *out = deref(ds, "dataset").value.size();
  });
}

gst_status gst_dataset_counts(const gst_dataset* ds, const char* sequence_key, long long* n_plus,
                              long long* n_total) {
  return guarded([&] {
    const auto& c =
        deref(ds, "dataset").value.at(gstkit::Sequence::from_key(cstr(sequence_key, "sequence")));
    if (n_plus != nullptr) *n_plus = c.n_plus;
    if (n_total != nullptr) *n_total = c.n_total;
  });
}

void gst_dataset_free(gst_dataset* ds) { delete ds; }

gst_status gst_fit_lgst(const gst_dataset* ds, const gst_design* design, const char* const* gates, size_t num_gates,
                        gst_gateset** out, gst_lgst_diagnostics* diagnostics) {
  return guarded([&] {
    need_out(out);
    const auto& d = deref(design, "design").value;
    const auto labels = gates == nullptr ? sandwich_labels(d) : strings(gates, num_gates, "gates");
    auto r = gstkit::lgst_estimate(deref(ds, "dataset").value, d, labels);
    if (diagnostics != nullptr) {
      diagnostics->condition_number = r.intermediates.condition_number;
      diagnostics->min_singular_value = r.intermediates.min_singular_value;
      diagnostics->rank = r.intermediates.rank;
      diagnostics->ill_conditioned = r.intermediates.warnings.empty() ? 0 : 1;
    }
    emit(out, std::move(r.estimate));
  });
}

gst_status gst_fit_standard(const gst_dataset* ds, const gst_design* design, const gst_gateset* frame,
                            gst_gateset** out) {
  return guarded([&] {
    need_out(out);
    emit(out, gstkit::standard_tomography_estimate(deref(ds, "dataset").value, deref(design, "design").value,
                                                   deref(frame, "frame").value));
  });
}

void gst_mle_options_default(gst_mle_options* options) {
  if (options == nullptr) return;
  const gstkit::MleOptions d;
  options->floor = d.floor;
  options->tol = d.tol;
  options->max_iterations = d.max_iterations;
  options->delta = d.delta;
  options->project = d.project ? 1 : 0;
  options->staged = d.staged ? 1 : 0;
}

gst_status gst_fit_mle(const gst_gateset* seed, const gst_dataset* ds, const gst_mle_options* options,
                       gst_gateset** out, gst_fit_report* report) {
  return guarded([&] {
    need_out(out);
    gstkit::MleOptions o;
    if (options != nullptr) {
      o.floor = options->floor;
      o.tol = options->tol;
      o.max_iterations = options->max_iterations;
      o.delta = options->delta;
      o.project = options->project != 0;
      o.staged = options->staged != 0;
    }
    auto r = gstkit::mle_estimate(deref(seed, "seed").value, deref(ds, "dataset").value, o);
    if (report != nullptr) {
      report->initial_nll = r.report.initial_nll;
      report->final_nll = r.report.final_nll;
      report->iterations = r.report.iterations;
      report->gradient_norm = r.report.gradient_norm;
      report->clip_events = r.report.clip_events;
      report->converged = r.report.converged ? 1 : 0;
      report->feasible_start = r.report.feasible_start ? 1 : 0;
      report->stages = r.report.stages;
    }
    emit(out, std::move(r.estimate));
  });
}

gst_status gst_neg_log_likelihood(const gst_gateset* gs, const gst_dataset* ds, double floor, double* value,
                                  int* clip_events) {
  return guarded([&] {
    const auto v = gstkit::neg_log_likelihood(deref(gs, "gate set").value, deref(ds, "dataset").value, floor);
    if (value != nullptr) *value = v.value;
    if (clip_events != nullptr) *clip_events = v.clip_events;
  });
}

gst_status gst_gauge_optimize(const gst_gateset* estimate, const gst_gateset* target, double spam_weight,
                              gst_gateset** out, gst_gauge_report* report) {
  return guarded([&] {
    need_out(out);
    gstkit::GaugeOptions o;
    o.spam_weight = spam_weight;
    auto r = gstkit::gauge_optimize(deref(estimate, "estimate").value, deref(target, "target").value, o);
    if (report != nullptr) {
      report->discrepancy_before = r.discrepancy_before;
      report->discrepancy_after = r.discrepancy_after;
      report->det_m = r.det_m;
      report->invariance_error = r.invariance_error;
      report->iterations = r.iterations;
      report->converged = r.converged ? 1 : 0;
    }
    emit(out, std::move(r.gate_set));
  });
}

gst_status gst_score(const gst_gateset* const* estimates, const char* const* names, size_t num_estimates,
                     const gst_dataset* test_data, const gst_design* design, double epsilon, char** report_json,
                     char** csv) {
  return guarded([&] {
    if (num_estimates > 0 && estimates == nullptr) {
      gstkit::fail(gstkit::ErrorCode::kInvalidArgument, "estimates is NULL");
    }
    const auto labels = strings(names, num_estimates, "names");
    std::vector<std::pair<std::string, gstkit::GateSet>> list;
    for (std::size_t i = 0; i < num_estimates; ++i) list.emplace_back(labels[i], deref(estimates[i], "estimate").value);
    const auto cmp =
        gstkit::score_comparison(list, deref(test_data, "test data").value, deref(design, "design").value, epsilon);
    std::string json_text;
    std::string csv_text;
    if (report_json != nullptr) {
      nlohmann::ordered_json j;
      j["epsilon"] = epsilon;
      j["estimates"] = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < cmp.names.size(); ++i) {
        j["estimates"][cmp.names[i]] = nlohmann::ordered_json::parse(gstkit::score_report_to_json(cmp.reports[i]));
      }
      json_text = j.dump(2) + "\n";
    }
    if (csv != nullptr) csv_text = cmp.to_csv();
    // Allocate last so a failure cannot leak the first string.
    char* j = report_json != nullptr ? dup_string(json_text) : nullptr;
    try {
      if (csv != nullptr) *csv = dup_string(csv_text);
    } catch (...) {
      std::free(j);
      throw;
    }
    if (report_json != nullptr) *report_json = j;
  });
}

void gst_demo_options_default(gst_demo_options* options) {
  if (options == nullptr) return;
  const gstkit::DemoOptions d;
  options->seed = d.seed;
  options->n_train = d.n_train;
  options->n_test = d.n_test;
  options->epsilon = d.epsilon;
  options->frame_miscalibration = d.frame_miscalibration;
}

gst_status gst_demo_run(const gst_demo_options* options, const char* out_dir) {
  return guarded([&] {
    gstkit::DemoOptions o;
    if (options != nullptr) {
      o.seed = options->seed;
      o.n_train = options->n_train;
      o.n_test = options->n_test;
      o.epsilon = options->epsilon;
      o.frame_miscalibration = options->frame_miscalibration;
    }
    const auto result = gstkit::run_demo(o);
    gstkit::write_demo_outputs(result, o, cstr(out_dir, "output directory"));
  });
}

}  // extern "C"
