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

#include "gstkit/gateset.hpp"

namespace gstkit {

/// Invertible d^2 x d^2 similarity acting as rho -> M rho, E -> E M^-1,
/// G -> M G M^-1.
struct GaugeTransform {
  Matrix m;
};

GateSet apply_gauge(const GateSet& gs, const GaugeTransform& t);

/// sum_k ||A_k - B_k||_F^2 + spam_weight (||rho_a - rho_b||^2 + ||E_a - E_b||^2).
double frobenius_discrepancy(const GateSet& a, const GateSet& b, double spam_weight = 0.0);

struct GaugeOptions {
  double spam_weight = 0.0;
  int max_iterations = 2000;
  double gradient_tol = 1e-10;
  double det_floor = 1e-8;  ///< |det M| below this is treated as outside the domain
  int starts = 1;           ///< extra starts perturb the identity with the seed below
  std::uint64_t seed = 0;
  double start_scale = 0.1;
};

struct GaugeResult {
  GaugeTransform transform;
  GateSet gate_set;
  double discrepancy_before = 0.0;
  double discrepancy_after = 0.0;
  double det_m = 1.0;
  /// Max |p_s(out) - p_s(in)| over all sequences of length <= 3.
  double invariance_error = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Local search for M minimizing frobenius_discrepancy(apply_gauge(gs, M),
/// target), started at the identity. Never returns a worse discrepancy than
/// M = 1l.
GaugeResult gauge_optimize(const GateSet& gs, const GateSet& target, const GaugeOptions& options = {});

/// Analytic gradient of the discrepancy with respect to the entries of M
/// (row-major), exposed for verification.
Matrix gauge_discrepancy_gradient(const GateSet& gs, const GateSet& target, const Matrix& m, double spam_weight);

/// Max probability difference between two gate sets over every sequence of
/// length <= max_length.
double max_probability_difference(const GateSet& a, const GateSet& b, int max_length);

}  // namespace gstkit
