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

#include "gstkit/gateset.hpp"

namespace gstkit {

/// The four-gate qubit target set {G1 = 1l, G2 = X(pi/2), G3 = Y(pi/2),
/// G4 = X(pi)} with rho = |1><1| and E = |0><0|, in the normalized Pauli
/// basis. Rotations follow exp(-i angle/2 sigma), which reproduces the
/// published transfer matrices exactly.
GateSet qubit_targets();

/// Synthetic noise applied on top of qubit_targets().
struct NoiseModel {
  double over_rotation = 0.0;   ///< added to every rotation angle (rad); G1 becomes a Z rotation
  double depolarization = 0.0;  ///< depolarizing strength p after each gate
  double spam_depolarization = 0.0;  ///< mixes rho toward 1l/2 and E toward 1l/2
  double spam_rotation = 0.0;   ///< Y rotation (rad) applied to both rho and E
};

GateSet noisy_qubit_model(const NoiseModel& noise);

/// Rotates rho and E about the Y axis by `angle` while leaving the gates
/// untouched. Models a miscalibrated reference frame.
GateSet rotate_spam(const GateSet& gs, double angle);

/// Random qubit gate set for property tests: Haar-ish random unitaries
/// followed by depolarization of strength up to `max_depolarization`,
/// with partially mixed random pure rho and E.
GateSet random_qubit_gateset(std::uint64_t seed, int num_gates, double max_depolarization);

}  // namespace gstkit
