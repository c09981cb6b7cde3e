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
#include <vector>

#include "gstkit/dataset.hpp"
#include "gstkit/gateset.hpp"

namespace gstkit {

/// Flat parameter layout: rho (d^2), effect (d^2), then each gate in label
/// order, row-major (d^4 each).
Vector flatten(const GateSet& gs);
/// Inverse of flatten(); labels and basis are taken from `like`.
GateSet unflatten(const Vector& params, const GateSet& like);

/// Dataset records resolved against a gate set's labels, ready for repeated
/// likelihood evaluation.
class LikelihoodModel {
 public:
  LikelihoodModel(const GateSet& like, const DataSet& ds);

  struct Evaluation {
    double value = 0.0;
    int clip_events = 0;
  };

  /// -sum_s [n_s ln p~_s + (N_s - n_s) ln(1 - p~_s)], p~ = clamp(p, floor, 1 - floor).
  /// Clamped sequences contribute zero gradient.
  Evaluation nll(const Vector& params, double floor, Vector* grad = nullptr) const;

  /// Model probabilities for every record, in record order.
  std::vector<double> probabilities(const Vector& params) const;

  std::size_t num_records() const noexcept { return seqs_.size(); }
  std::size_t num_params() const noexcept { return num_params_; }
  const GateSet& like() const noexcept { return like_; }
  /// Restricts evaluation to records whose sequence length is <= max_length.
  LikelihoodModel truncated(std::size_t max_length) const;
  std::size_t max_length() const noexcept;

 private:
  LikelihoodModel(const GateSet& like) : like_(like) {}

  GateSet like_;
  int n_ = 0;
  std::size_t num_params_ = 0;
  std::vector<std::vector<std::uint32_t>> seqs_;
  std::vector<double> n_plus_;
  std::vector<double> n_total_;
};

struct NllValue {
  double value = 0.0;
  int clip_events = 0;
};

NllValue neg_log_likelihood(const GateSet& gs, const DataSet& ds, double floor = 1e-6);
Vector nll_gradient(const GateSet& gs, const DataSet& ds, double floor = 1e-6);

struct FeasibilityOptions {
  double delta = 1e-6;
  double initial_penalty = 1.0;
  int max_escalations = 8;
  int max_evaluations = 20000;  ///< per penalty level
};

struct FeasibilityResult {
  GateSet gate_set;
  bool feasible = false;
  double distance = 0.0;  ///< Euclidean distance in flat parameters
  double max_violation = 0.0;
  int escalations = 0;
  int evaluations = 0;
};

/// Nearest gate set (Euclidean, flat parameters) whose training
/// probabilities all lie in [delta, 1 - delta]. Derivative-free: downhill
/// simplex on ||x - x0||^2 + w * sum hinge^2, escalating w by 10x until
/// feasible. Returns the input unchanged when it is already feasible.
FeasibilityResult project_to_feasible(const GateSet& gs, const DataSet& ds, const FeasibilityOptions& options = {});

struct MleOptions {
  double floor = 1e-6;
  double tol = -1.0;  ///< gradient-norm tolerance; < 0 means 1e-6 * sqrt(#params)
  int max_iterations = 10000;
  double delta = 1e-6;
  bool project = true;
  /// Fit successively on records of length <= 2, 4, 8, ... before the full
  /// dataset, seeding each stage with the previous one.
  bool staged = true;
};

struct FitReport {
  double initial_nll = 0.0;
  double final_nll = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;
  int clip_events = 0;
  bool converged = false;
  bool feasible_start = false;
  int stages = 0;
  std::string message;
};

struct MleResult {
  GateSet estimate;
  FitReport report;
};

MleResult mle_estimate(const GateSet& seed, const DataSet& ds, const MleOptions& options = {});

}  // namespace gstkit
