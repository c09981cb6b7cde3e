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
#include <numbers>

#include "doctest.h"
#include "gstkit/error.hpp"
#include "gstkit/gauge.hpp"
#include "gstkit/models.hpp"
#include "gstkit/optimize.hpp"
#include "gstkit/rng.hpp"

using namespace gstkit;
using std::numbers::pi;

namespace {

Matrix random_gauge(std::uint64_t seed, double scale) {
  CounterRng rng(seed);
  Matrix m = Matrix::Identity(4, 4);
  for (Eigen::Index i = 0; i < 16; ++i) m.data()[i] += scale * (2 * rng.uniform() - 1);
  return m;
}

std::vector<Sequence> random_sequences(const std::vector<std::string>& labels, std::uint64_t seed, int n, int len) {
  CounterRng rng(seed);
  std::vector<Sequence> out;
  for (int i = 0; i < n; ++i) {
    Sequence s;
    const auto l = rng.below(static_cast<std::uint64_t>(len) + 1);
    for (std::uint64_t j = 0; j < l; ++j) s.labels.push_back(labels[rng.below(labels.size())]);
    out.push_back(s);
  }
  return out;
}

// exp(+i pi/4 sigma), written out literally.
CMatrix exp_i_quarter(const CMatrix& sigma) {
  const double c = std::cos(pi / 4);
  return c * CMatrix::Identity(2, 2) + Complex(0, c) * sigma;
}

Matrix mat4(std::initializer_list<double> v) {
  Matrix m(4, 4);
  auto it = v.begin();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = *it++;
  return m;
}

}  // namespace

TEST_CASE("trivial gauges") {
  const auto gs = random_qubit_gateset(2, 4, 0.1);
  const auto same = apply_gauge(gs, {Matrix::Identity(4, 4)});
  CHECK((same.rho() - gs.rho()).norm() < 1e-15);
  for (std::size_t i = 0; i < 4; ++i) CHECK((same.gate(i) - gs.gate(i)).norm() < 1e-14);

  const auto scaled = apply_gauge(gs, {Matrix::Identity(4, 4) * -3.5});
  for (std::size_t i = 0; i < 4; ++i) CHECK((scaled.gate(i) - gs.gate(i)).norm() < 1e-13);
  CHECK(max_probability_difference(scaled, gs, 3) < 1e-13);

  try {
    apply_gauge(gs, {Matrix::Zero(4, 4)});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSingular);
  }
}

TEST_CASE("gauge transforms preserve every probability") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto gs = random_qubit_gateset(seed, 4, 0.1);
    const auto moved = apply_gauge(gs, {random_gauge(seed + 50, 0.5)});
    for (const auto& s : random_sequences(gs.labels(), seed, 20, 12)) {
      CHECK(std::abs(sequence_probability(s, gs) - sequence_probability(s, moved)) < 1e-9);
    }
  }
}

TEST_CASE("the gauge-equivalent pair from the two-gate example") {
  const auto b = pauli_basis(2);
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  CMatrix zero = CMatrix::Zero(2, 2);
  zero(0, 0) = 1;
  const CMatrix plus = CMatrix::Constant(2, 2, 0.5);

  const GateSet g0(density_to_vector(zero, b), effect_from_operator(zero, b),
                   {{"A", unitary_to_superop(exp_i_quarter(sz), b)}, {"B", unitary_to_superop(exp_i_quarter(sx), b)}});
  const GateSet g1(density_to_vector(plus, b), effect_from_operator(plus, b),
                   {{"A", unitary_to_superop(exp_i_quarter(sx), b)}, {"B", unitary_to_superop(exp_i_quarter(sy), b)}});
  double worst = 0;
  for (const auto& s : random_sequences({"A", "B"}, 77, 100, 20)) {
    worst = std::max(worst, std::abs(sequence_probability(s, g0) - sequence_probability(s, g1)));
  }
  CHECK(worst < 1e-12);
  // Yet the matrices differ, so no gauge-blind comparison would find them equal.
  CHECK(frobenius_discrepancy(g0, g1) > 1.0);
}

TEST_CASE("frobenius discrepancy") {
  const auto t = qubit_targets();
  CHECK(frobenius_discrepancy(t, t) == 0.0);
  auto moved = t;
  moved.set_rho(t.rho() * 0.9);
  CHECK(frobenius_discrepancy(moved, t) == 0.0);
  CHECK(frobenius_discrepancy(moved, t, 1.0) > 0.0);

  // Regression pin: a fixed set of slightly noisy gates against the targets.
  std::vector<std::pair<std::string, SuperOperator>> printed{
      {"G1", {mat4({0.9977, -0.0219, -0.0204, 0.0024, -0.0152, 0.9657, 0.017, 0.0291, 0.0031, 0.0627, 1.0172, 0.0335,
                    0.001, 0.0065, 0.0335, 0.9915}),
              t.basis()}},
      {"G2", {mat4({0.9974, -0.048, -0.0304, 0.0161, -0.0077, 0.9538, -0.0033, -0.0045, -0.0113, 0.0332, 0.0066,
                    -1.0044, -0.0029, 0.0042, 1.0099, 0.0284}),
              t.basis()}},
      {"G3", {mat4({0.9923, -0.0163, -0.0066, 0.001, -0.0049, -0.0087, -0.0087, 0.9839, 0.0124, -0.0082, 1.0136,
                    -0.0017, -0.0074, -0.9797, 0.0043, 0.0025}),
              t.basis()}},
      {"G4", {mat4({0.9991, -0.0291, 0.0028, 0.0194, 0.0096, 0.9796, -0.0049, 0.0013, 0.0083, -0.0211, -1.0494,
                    -0.0632, -0.0091, -0.0123, -0.0427, -1.0012}),
              t.basis()}}};
  const GateSet table(t.rho_vector(), t.effect_vector(), printed);
  CHECK(std::abs(frobenius_discrepancy(table, t) - 0.03046732) < 1e-10);
}

TEST_CASE("gauge optimization recovers a hidden gauge") {
  const auto t = qubit_targets();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto hidden = apply_gauge(t, {random_gauge(seed, 0.2)});
    const auto r = gauge_optimize(hidden, t);
    CHECK(r.discrepancy_before > 1e-3);
    CHECK(r.discrepancy_after < 1e-6);
    CHECK(r.invariance_error < 1e-9);
  }
  const auto fixed = gauge_optimize(t, t);
  CHECK(fixed.discrepancy_after < 1e-20);
  CHECK((fixed.transform.m - Matrix::Identity(4, 4)).norm() < 1e-9);

  const auto dep = noisy_qubit_model({0.0, 0.02, 0.0, 0.0});
  const auto d = gauge_optimize(dep, t);
  CHECK(d.discrepancy_after <= d.discrepancy_before);

  GaugeOptions multi;
  multi.starts = 4;
  multi.seed = 3;
  const auto noisy = apply_gauge(noisy_qubit_model({0.01, 0.005, 0.0, 0.0}), {random_gauge(9, 0.3)});
  const auto one = gauge_optimize(noisy, t);
  const auto many = gauge_optimize(noisy, t, multi);
  CHECK(many.discrepancy_after <= one.discrepancy_after + 1e-12);
}

TEST_CASE("gauge gradient matches finite differences") {
  const auto gs = random_qubit_gateset(12, 4, 0.1);
  const auto t = qubit_targets();
  const Matrix m = random_gauge(13, 0.3);
  for (double w : {0.0, 0.5}) {
    const Matrix g = gauge_discrepancy_gradient(gs, t, m, w);
    Vector x(16);
    for (int i = 0; i < 16; ++i) x(i) = m(i / 4, i % 4);
    const Vector fd = opt::finite_difference_gradient(
        [&](const Vector& y) {
          Matrix mm(4, 4);
          for (int i = 0; i < 16; ++i) mm(i / 4, i % 4) = y(i);
          return frobenius_discrepancy(apply_gauge(gs, {mm}), t, w);
        },
        x, 1e-6);
    Vector gv(16);
    for (int i = 0; i < 16; ++i) gv(i) = g(i / 4, i % 4);
    CHECK((gv - fd).norm() / fd.norm() < 1e-6);
  }
}
