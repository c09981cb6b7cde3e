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

#include "gstkit/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gstkit/error.hpp"
#include "gstkit/rng.hpp"

namespace gstkit {

namespace {

using std::numbers::pi;

CMatrix projector(int level) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(level, level) = 1.0;
  return m;
}

Matrix depolarize(const Matrix& g, double p, const BasisPtr& basis) {
  if (p == 0.0) return g;
  const auto kraus = depolarizing_kraus(p);
  return kraus_to_superop(kraus, basis).matrix * g;
}

}  // namespace

GateSet qubit_targets() { return noisy_qubit_model({}); }

GateSet noisy_qubit_model(const NoiseModel& noise) {
  const auto basis = pauli_basis(2);
  const double eps = noise.over_rotation;
  const CMatrix u1 = eps == 0.0 ? CMatrix(CMatrix::Identity(2, 2)) : rotation_unitary(0, 0, 1, eps);
  const CMatrix u2 = rotation_unitary(1, 0, 0, pi / 2 + eps);
  const CMatrix u3 = rotation_unitary(0, 1, 0, pi / 2 + eps);
  const CMatrix u4 = rotation_unitary(1, 0, 0, pi + eps);

  std::vector<std::pair<std::string, SuperOperator>> gates;
  int k = 1;
  for (const CMatrix* u : {&u1, &u2, &u3, &u4}) {
    Matrix g = unitary_to_superop(*u, basis).matrix;
    g = depolarize(g, noise.depolarization, basis);
    // Exact zeros keep the ideal targets printable as clean integers.
    g = g.unaryExpr([](double x) { return std::abs(x) < 1e-15 ? 0.0 : x; });
    gates.emplace_back("G" + std::to_string(k++), SuperOperator{g, basis});
  }

  const double s = noise.spam_depolarization;
  const CMatrix half = CMatrix::Identity(2, 2) / 2.0;
  CMatrix rho = (1.0 - s) * projector(1) + s * half;
  CMatrix eff = (1.0 - s) * projector(0) + s * half;
  if (noise.spam_rotation != 0.0) {
    const CMatrix r = rotation_unitary(0, 1, 0, noise.spam_rotation);
    rho = r * rho * r.adjoint();
    eff = r * eff * r.adjoint();
  }
  return GateSet(density_to_vector(rho, basis), effect_from_operator(eff, basis), std::move(gates));
}

GateSet rotate_spam(const GateSet& gs, double angle) {
  if (gs.dim() != 2) fail(ErrorCode::kUnsupportedDimension, "rotate_spam is defined for qubits");
  const Matrix r = unitary_to_superop(rotation_unitary(0, 1, 0, angle), gs.basis()).matrix;
  GateSet out = gs;
  out.set_rho(r * gs.rho());
  // E -> R E R^dagger, same action as on rho.
  out.set_effect(r * gs.effect());
  return out;
}

GateSet random_qubit_gateset(std::uint64_t seed, int num_gates, double max_depolarization) {
  if (num_gates < 1) fail(ErrorCode::kInvalidArgument, "need at least one gate");
  const auto basis = pauli_basis(2);
  CounterRng rng(stream_key(seed, "random-gateset"));

  auto random_unitary = [&] {
    // Random axis on the sphere and uniform angle.
    double x = rng.normal(), y = rng.normal(), z = rng.normal();
    while (x * x + y * y + z * z < 1e-12) {
      x = rng.normal();
      y = rng.normal();
      z = rng.normal();
    }
    return rotation_unitary(x, y, z, 2 * pi * rng.uniform());
  };

  std::vector<std::pair<std::string, SuperOperator>> gates;
  for (int k = 0; k < num_gates; ++k) {
    Matrix g = unitary_to_superop(random_unitary(), basis).matrix;
    g = depolarize(g, max_depolarization * rng.uniform(), basis);
    gates.emplace_back("G" + std::to_string(k + 1), SuperOperator{g, basis});
  }
  const CMatrix half = CMatrix::Identity(2, 2) / 2.0;
  const CMatrix ur = random_unitary(), ue = random_unitary();
  const double mr = 0.1 * rng.uniform(), me = 0.1 * rng.uniform();
  const CMatrix rho = (1 - mr) * ur * projector(0) * ur.adjoint() + mr * half;
  const CMatrix eff = (1 - me) * ue * projector(0) * ue.adjoint() + me * half;
  return GateSet(density_to_vector(rho, basis), effect_from_operator(eff, basis), std::move(gates));
}

}  // namespace gstkit
