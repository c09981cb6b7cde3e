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

#include <optional>
#include <vector>

#include "gstkit/dataset.hpp"
#include "gstkit/design.hpp"
#include "gstkit/gateset.hpp"

namespace gstkit {

/// Least-squares rho minimizing sum_k w_k (<<E_k|rho>> - f_k)^2. Weights
/// default to uniform. Throws kIncomplete if the effects do not span B(H).
StateVector state_tomography(const std::vector<EffectVector>& effects, const std::vector<double>& freqs,
                             const std::optional<std::vector<double>>& weights = std::nullopt);

/// Least-squares G minimizing sum_jk w_jk (<<E_k|G|rho_j>> - f_kj)^2, where
/// freq_matrix(k, j) is the frequency for effect k after state j.
SuperOperator process_tomography(const std::vector<StateVector>& states, const std::vector<EffectVector>& effects,
                                 const Matrix& freq_matrix, const std::optional<Matrix>& weights = std::nullopt);

/// Standard tomography on LGST-shaped data. Fiducial states F_k|rho>> and
/// effects <<E|F_j are taken from `assumed_frame` (normally the targets);
/// rho is fitted from the FID data against the assumed effects, E from the
/// same data against the assumed states, and each gate by process
/// tomography on its SANDWICH block.
GateSet standard_tomography_estimate(const DataSet& ds, const ExperimentDesign& design, const GateSet& assumed_frame);

}  // namespace gstkit
