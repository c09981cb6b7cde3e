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

// gstkit command-line interface. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gstkit/gstkit.h"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

struct Failure : std::runtime_error {
  gst_status status;
  Failure(gst_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(gst_status s) {
  if (s != GST_OK) throw Failure(s, std::string(gst_status_name(s)) + ": " + gst_last_error());
}

struct GateSetDel {
  void operator()(gst_gateset* p) const { gst_gateset_free(p); }
};
struct DesignDel {
  void operator()(gst_design* p) const { gst_design_free(p); }
};
struct DataSetDel {
  void operator()(gst_dataset* p) const { gst_dataset_free(p); }
};
struct StringDel {
  void operator()(char* p) const { gst_string_free(p); }
};
using GateSetPtr = std::unique_ptr<gst_gateset, GateSetDel>;
using DesignPtr = std::unique_ptr<gst_design, DesignDel>;
using DataSetPtr = std::unique_ptr<gst_dataset, DataSetDel>;
using StringPtr = std::unique_ptr<char, StringDel>;

GateSetPtr load_gateset(const std::string& path) {
  gst_gateset* p = nullptr;
  check(gst_gateset_load(path.c_str(), &p));
  return GateSetPtr(p);
}

DesignPtr load_design(const std::string& path) {
  gst_design* p = nullptr;
  check(gst_design_load(path.c_str(), &p));
  return DesignPtr(p);
}

DataSetPtr load_dataset(const std::string& path) {
  gst_dataset* p = nullptr;
  check(gst_dataset_load(path.c_str(), &p));
  return DataSetPtr(p);
}

GateSetPtr targets() {
  gst_gateset* p = nullptr;
  check(gst_gateset_targets(&p));
  return GateSetPtr(p);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Failure(GST_ERR_IO, "cannot write '" + path + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

// Fiducial keys, comma separated; "{}" denotes the empty sequence.
std::vector<std::string> parse_fiducials(const std::string& s) {
  auto out = split(s, ',');
  for (auto& f : out) {
    if (f == "{}") f.clear();
  }
  return out;
}

std::vector<const char*> c_strs(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

void save_gateset_or_print(const gst_gateset* gs, const std::string& path) {
  if (path.empty() || path == "-") {
    char* text = nullptr;
    check(gst_gateset_to_json(gs, &text));
    StringPtr own(text);
    std::cout << text;
    return;
  }
  check(gst_gateset_save(gs, path.c_str()));
}

json fit_report_json(const gst_fit_report& r) {
  json j;
  j["initial_nll"] = r.initial_nll;
  j["final_nll"] = r.final_nll;
  j["iterations"] = r.iterations;
  j["gradient_norm"] = r.gradient_norm;
  j["clip_events"] = r.clip_events;
  j["converged"] = r.converged != 0;
  j["feasible_start"] = r.feasible_start != 0;
  j["stages"] = r.stages;
  return j;
}

json lgst_json(const gst_lgst_diagnostics& d) {
  json j;
  j["condition_number"] = d.condition_number;
  j["min_singular_value"] = d.min_singular_value;
  j["rank"] = d.rank;
  j["ill_conditioned"] = d.ill_conditioned != 0;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gstkit: gate set tomography for qubit gate sets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gst_version());

  // model
  std::string model_kind = "target";
  double over_rotation = 0.01, depolarization = 0.005, spam_depol = 0.0, spam_rotation = 0.0;
  std::string model_out;
  auto* model = app.add_subcommand("model", "Write the target or a noisy qubit gate set");
  model->add_option("--kind", model_kind, "target | noisy")->check(CLI::IsMember({"target", "noisy"}));
  model->add_option("--over-rotation", over_rotation, "Z over-rotation of G1 (rad)");
  model->add_option("--depolarization", depolarization, "gate depolarization");
  model->add_option("--spam-depolarization", spam_depol, "depolarization of rho and E");
  model->add_option("--spam-rotation", spam_rotation, "Y rotation of rho and E (rad)");
  model->add_option("-o,--out", model_out, "output JSON (default stdout)");

  // design
  std::string design_kind = "lgst";
  std::string gates = "G1,G2,G3,G4";
  std::string fiducials = "G1,G2,G3,G4";
  std::vector<int> powers{2, 4, 8, 16, 32, 64, 128};
  std::string append_gate;
  bool include_spam = true;
  int test_length = 100, num_random = 5;
  std::uint64_t design_seed = 2014;
  std::string design_out;
  auto* design = app.add_subcommand("design", "Generate an experiment design (JSONL)");
  design->add_option("--kind", design_kind, "lgst | germ | test")->check(CLI::IsMember({"lgst", "germ", "test"}));
  design->add_option("--gates", gates, "comma-separated gate labels");
  design->add_option("--fiducials", fiducials, "comma-separated fiducial keys ('{}' = empty)");
  design->add_option("--powers", powers, "germ powers")->delimiter(',');
  design->add_option("--append", append_gate, "duplicate every germ-design experiment with this gate appended");
  design->add_flag("!--no-spam", include_spam, "omit the SPAM experiment from an lgst design");
  design->add_option("--length", test_length, "test sequence length");
  design->add_option("--num-random", num_random, "number of random test sequences");
  design->add_option("--seed", design_seed, "seed for random test sequences");
  design->add_option("-o,--out", design_out, "output JSONL (default stdout)");

  // simulate
  std::string sim_model, sim_design, sim_out;
  long long sim_n = 1900;
  std::uint64_t sim_seed = 2014;
  auto* simulate = app.add_subcommand("simulate", "Sample binomial counts for a design");
  simulate->add_option("--model", sim_model, "gate set JSON")->required();
  simulate->add_option("--design", sim_design, "design JSONL")->required();
  simulate->add_option("--n", sim_n, "counts per sequence");
  simulate->add_option("--seed", sim_seed, "RNG seed");
  simulate->add_option("-o,--out", sim_out, "output dataset JSONL")->required();

  // fit
  std::string fit_method = "mle", fit_data, fit_design, fit_seed, fit_frame, fit_out, fit_report;
  double frame_rotation = 0.0;
  gst_mle_options mle;
  gst_mle_options_default(&mle);
  bool no_project = false, no_stage = false;
  auto* fit = app.add_subcommand("fit", "Estimate a gate set");
  fit->add_option("--method", fit_method, "standard | lgst | mle")
      ->check(CLI::IsMember({"standard", "lgst", "mle"}));
  fit->add_option("--data", fit_data, "dataset JSONL")->required();
  fit->add_option("--design", fit_design, "design JSONL (standard, lgst, and mle without --seed-model)");
  fit->add_option("--seed-model", fit_seed, "MLE starting gate set (default: LGST on --design)");
  fit->add_option("--frame", fit_frame, "assumed SPAM/fiducial frame for standard tomography (default: targets)");
  fit->add_option("--frame-rotation", frame_rotation, "extra Y rotation of the assumed frame's rho and E (rad)");
  fit->add_option("--floor", mle.floor, "probability floor in the likelihood");
  fit->add_option("--tol", mle.tol, "gradient-norm tolerance (<= 0: 1e-6 sqrt(#params))");
  fit->add_option("--max-iter", mle.max_iterations, "optimizer iteration limit");
  fit->add_option("--delta", mle.delta, "feasibility margin for the starting point");
  fit->add_flag("--no-project", no_project, "skip the feasibility projection");
  fit->add_flag("--no-stage", no_stage, "fit the full dataset directly");
  fit->add_option("-o,--out", fit_out, "output gate set JSON (default stdout)");
  fit->add_option("--report", fit_report, "write a fit report JSON");

  // gauge-opt
  std::string g_estimate, g_target, g_out, g_report;
  double spam_weight = 0.0;
  auto* gauge = app.add_subcommand("gauge-opt", "Gauge-fix an estimate to a target");
  gauge->add_option("--estimate", g_estimate, "estimate gate set JSON")->required();
  gauge->add_option("--target", g_target, "target gate set JSON (default: qubit targets)");
  gauge->add_option("--spam-weight", spam_weight, "weight of rho/E in the discrepancy");
  gauge->add_option("-o,--out", g_out, "output gate set JSON (default stdout)");
  gauge->add_option("--report", g_report, "write a gauge report JSON");

  // score
  std::vector<std::string> s_estimates;
  std::string s_data, s_design, s_out, s_csv;
  double epsilon = 1e-3;
  auto* score = app.add_subcommand("score", "Log-score estimates on test data");
  score->add_option("--estimate", s_estimates, "NAME=PATH, repeatable")->required();
  score->add_option("--data", s_data, "test dataset JSONL")->required();
  score->add_option("--design", s_design, "test design JSONL")->required();
  score->add_option("--epsilon", epsilon, "probability clip");
  score->add_option("-o,--out", s_out, "report JSON (default stdout)");
  score->add_option("--csv", s_csv, "per-length CSV");

  // demo
  gst_demo_options demo_opts;
  gst_demo_options_default(&demo_opts);
  std::string demo_out = "demo_out";
  auto* demo = app.add_subcommand("demo", "Run the full synthetic pipeline");
  demo->add_option("--seed", demo_opts.seed, "master seed");
  demo->add_option("--n-train", demo_opts.n_train, "training counts per sequence");
  demo->add_option("--n-test", demo_opts.n_test, "test counts per sequence");
  demo->add_option("--epsilon", demo_opts.epsilon, "score clip");
  demo->add_option("--frame-miscalibration", demo_opts.frame_miscalibration,
                   "Y rotation of the frame assumed by standard tomography (rad)");
  demo->add_option("-o,--out", demo_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (model->parsed()) {
      gst_gateset* p = nullptr;
      if (model_kind == "target") {
        check(gst_gateset_targets(&p));
      } else {
        check(gst_gateset_noisy(over_rotation, depolarization, spam_depol, spam_rotation, &p));
      }
      GateSetPtr gs(p);
      save_gateset_or_print(gs.get(), model_out);
    } else if (design->parsed()) {
      const auto g = split(gates, ',');
      const auto f = parse_fiducials(fiducials);
      const auto gc = c_strs(g);
      const auto fc = c_strs(f);
      gst_design* p = nullptr;
      if (design_kind == "lgst") {
        check(gst_design_lgst(gc.data(), gc.size(), fc.data(), fc.size(), include_spam ? 1 : 0, &p));
      } else if (design_kind == "germ") {
        check(gst_design_germ(gc.data(), gc.size(), fc.data(), fc.size(), powers.data(), powers.size(),
                              append_gate.empty() ? nullptr : append_gate.c_str(), &p));
      } else {
        check(gst_design_test(gc.data(), gc.size(), test_length, num_random, design_seed, &p));
      }
      DesignPtr d(p);
      if (design_out.empty() || design_out == "-") {
        check(gst_design_save(d.get(), "/dev/stdout"));
      } else {
        check(gst_design_save(d.get(), design_out.c_str()));
      }
    } else if (simulate->parsed()) {
      const auto gs = load_gateset(sim_model);
      const auto d = load_design(sim_design);
      gst_dataset* p = nullptr;
      check(gst_dataset_simulate(gs.get(), d.get(), sim_n, sim_seed, &p));
      DataSetPtr ds(p);
      check(gst_dataset_save(ds.get(), sim_out.c_str()));
    } else if (fit->parsed()) {
      const auto ds = load_dataset(fit_data);
      json report;
      report["method"] = fit_method;
      gst_gateset* p = nullptr;
      if (fit_method == "standard") {
        if (fit_design.empty()) throw Failure(GST_ERR_INVALID_ARGUMENT, "--design is required for standard tomography");
        const auto d = load_design(fit_design);
        auto frame = fit_frame.empty() ? targets() : load_gateset(fit_frame);
        if (frame_rotation != 0.0) {
          gst_gateset* r = nullptr;
          check(gst_gateset_rotate_spam(frame.get(), frame_rotation, &r));
          frame.reset(r);
        }
        check(gst_fit_standard(ds.get(), d.get(), frame.get(), &p));
      } else {
        GateSetPtr seed;
        if (fit_method == "lgst" || fit_seed.empty()) {
          if (fit_design.empty()) throw Failure(GST_ERR_INVALID_ARGUMENT, "--design is required for LGST");
          const auto d = load_design(fit_design);
          gst_lgst_diagnostics diag{};
          gst_gateset* l = nullptr;
          check(gst_fit_lgst(ds.get(), d.get(), nullptr, 0, &l, &diag));
          seed.reset(l);
          report["lgst"] = lgst_json(diag);
          if (diag.ill_conditioned) std::cerr << "warning: LGST Gram matrix is ill-conditioned\n";
        } else {
          seed = load_gateset(fit_seed);
        }
        if (fit_method == "lgst") {
          p = seed.release();
        } else {
          mle.project = no_project ? 0 : 1;
          mle.staged = no_stage ? 0 : 1;
          gst_fit_report r{};
          check(gst_fit_mle(seed.get(), ds.get(), &mle, &p, &r));
          report["mle"] = fit_report_json(r);
          if (!r.converged) std::cerr << "warning: MLE did not reach the gradient tolerance\n";
        }
      }
      GateSetPtr est(p);
      save_gateset_or_print(est.get(), fit_out);
      if (!fit_report.empty()) write_text(fit_report, report.dump(2) + "\n");
    } else if (gauge->parsed()) {
      const auto est = load_gateset(g_estimate);
      const auto tgt = g_target.empty() ? targets() : load_gateset(g_target);
      gst_gauge_report r{};
      gst_gateset* p = nullptr;
      check(gst_gauge_optimize(est.get(), tgt.get(), spam_weight, &p, &r));
      GateSetPtr out(p);
      save_gateset_or_print(out.get(), g_out);
      if (!g_report.empty()) {
        json j;
        j["discrepancy_before"] = r.discrepancy_before;
        j["discrepancy_after"] = r.discrepancy_after;
        j["det_m"] = r.det_m;
        j["invariance_error"] = r.invariance_error;
        j["iterations"] = r.iterations;
        j["converged"] = r.converged != 0;
        write_text(g_report, j.dump(2) + "\n");
      }
    } else if (score->parsed()) {
      std::vector<std::string> names;
      std::vector<GateSetPtr> owned;
      for (const auto& arg : s_estimates) {
        const auto eq = arg.find('=');
        if (eq == std::string::npos || eq == 0) {
          throw Failure(GST_ERR_INVALID_ARGUMENT, "--estimate expects NAME=PATH, got '" + arg + "'");
        }
        names.push_back(arg.substr(0, eq));
        owned.push_back(load_gateset(arg.substr(eq + 1)));
      }
      std::vector<const gst_gateset*> ptrs;
      for (const auto& g : owned) ptrs.push_back(g.get());
      const auto nc = c_strs(names);
      const auto ds = load_dataset(s_data);
      const auto d = load_design(s_design);
      char* report = nullptr;
      char* csv = nullptr;
      check(gst_score(ptrs.data(), nc.data(), ptrs.size(), ds.get(), d.get(), epsilon, &report, &csv));
      StringPtr own_report(report), own_csv(csv);
      write_text(s_out, report);
      if (!s_csv.empty()) write_text(s_csv, csv);
    } else if (demo->parsed()) {
      check(gst_demo_run(&demo_opts, demo_out.c_str()));
      std::cout << "wrote demo outputs to " << demo_out << "\n";
    }
  } catch (const Failure& e) {
    std::cerr << "gstkit: " << e.what() << "\n";
    return 1 + (e.status == GST_ERR_INTERNAL ? 0 : 1);
  } catch (const std::exception& e) {
    std::cerr << "gstkit: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
