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
#include "gstkit/gateset.hpp"
#include "gstkit/models.hpp"

using namespace gstkit;
using std::numbers::pi;

namespace {

Matrix mat4(std::initializer_list<double> v) {
  Matrix m(4, 4);
  auto it = v.begin();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = *it++;
  return m;
}

const Matrix kT2 = mat4({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0});
const Matrix kT3 = mat4({1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0});
const Matrix kT4 = mat4({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1});

}  // namespace

TEST_CASE("pauli basis is orthonormal and normalized") {
  for (int d : {2, 3, 4}) {
    const auto b = pauli_basis(d);
    REQUIRE(b->size() == d * d);
    for (int i = 0; i < b->size(); ++i) {
      CHECK(((*b)[i] - (*b)[i].adjoint()).norm() < 1e-14);
      for (int j = 0; j < b->size(); ++j) {
        const Complex ip = ((*b)[i].adjoint() * (*b)[j]).trace();
        CHECK(std::abs(ip - Complex(i == j ? 1.0 : 0.0)) < 1e-14);
      }
    }
  }
  const auto b = pauli_basis(2);
  const double r = 1 / std::sqrt(2.0);
  CHECK(std::abs((*b)[0](0, 0) - r) < 1e-15);
  CHECK(std::abs((*b)[0](1, 1) - r) < 1e-15);
  CHECK(std::abs((*b)[3](0, 0) - r) < 1e-15);
  CHECK(std::abs((*b)[3](1, 1) + r) < 1e-15);
  CHECK_THROWS_AS(pauli_basis(1), Error);
}

TEST_CASE("density coordinates") {
  const auto b = pauli_basis(2);
  const double r = 1 / std::sqrt(2.0);
  CMatrix zero = CMatrix::Zero(2, 2), one = CMatrix::Zero(2, 2);
  zero(0, 0) = 1;
  one(1, 1) = 1;
  Vector e0(4), e1(4);
  e0 << r, 0, 0, r;
  e1 << r, 0, 0, -r;
  CHECK((density_to_vector(zero, b).entries - e0).norm() < 1e-15);
  CHECK((density_to_vector(one, b).entries - e1).norm() < 1e-15);
  CHECK((qubit_targets().rho() - e1).norm() < 1e-15);
  CHECK((vector_to_density(density_to_vector(one, b)) - one).norm() < 1e-15);

  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1;
  try {
    density_to_vector(bad, b);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotHermitian);
  }
}

TEST_CASE("superoperators reproduce the targets") {
  const auto b = pauli_basis(2);
  CHECK((unitary_to_superop(CMatrix::Identity(2, 2), b).matrix - Matrix::Identity(4, 4)).norm() < 1e-15);
  CHECK((unitary_to_superop(rotation_unitary(1, 0, 0, pi / 2), b).matrix - kT2).norm() < 1e-14);
  CHECK((unitary_to_superop(rotation_unitary(0, 1, 0, pi / 2), b).matrix - kT3).norm() < 1e-14);
  CHECK((unitary_to_superop(rotation_unitary(1, 0, 0, pi), b).matrix - kT4).norm() < 1e-14);

  const auto t = qubit_targets();
  CHECK(t.labels() == std::vector<std::string>{"G1", "G2", "G3", "G4"});
  CHECK((t.gate("G1") - Matrix::Identity(4, 4)).norm() < 1e-15);
  CHECK((t.gate("G2") - kT2).norm() < 1e-15);
  CHECK((t.gate("G3") - kT3).norm() < 1e-15);
  CHECK((t.gate("G4") - kT4).norm() < 1e-15);

  CMatrix notu = CMatrix::Identity(2, 2) * 1.1;
  CHECK_THROWS_AS(unitary_to_superop(notu, b), Error);
}

TEST_CASE("kraus channels") {
  const auto b = pauli_basis(2);
  const std::vector<CMatrix> id{CMatrix::Identity(2, 2)};
  CHECK((kraus_to_superop(id, b).matrix - Matrix::Identity(4, 4)).norm() < 1e-15);
  CHECK((kraus_to_superop(depolarizing_kraus(0.0), b).matrix - Matrix::Identity(4, 4)).norm() < 1e-15);
  Vector diag(4);
  diag << 1, 0.9, 0.9, 0.9;
  CHECK((kraus_to_superop(depolarizing_kraus(0.1), b).matrix - Matrix(diag.asDiagonal())).norm() < 1e-14);

  const std::vector<CMatrix> leaky{CMatrix::Identity(2, 2) * 0.5};
  try {
    kraus_to_superop(leaky, b);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotTracePreserving);
  }
}

TEST_CASE("composition") {
  const auto t = qubit_targets();
  CHECK((compose(Sequence{}, t) - Matrix::Identity(4, 4)).norm() == 0.0);
  CHECK((compose(Sequence{{"G2", "G2"}}, t) - kT4).norm() < 1e-14);
  CHECK((compose(Sequence{{"G1", "G3"}}, t) - kT3).norm() < 1e-14);

  // Homomorphism: the first label is applied first.
  const auto noisy = random_qubit_gateset(5, 4, 0.1);
  const Sequence a{{"G2", "G3"}}, c{{"G4", "G1", "G2"}};
  CHECK((compose(a.then(c), noisy) - compose(c, noisy) * compose(a, noisy)).norm() < 1e-13);

  // X(pi/2)^p: p = 4k is the identity, and errors stay small up to p = 128.
  for (int p : {4, 8, 16, 32, 64, 128}) {
    Sequence s;
    s.labels.assign(static_cast<std::size_t>(p), "G2");
    CHECK((compose(s, t) - Matrix::Identity(4, 4)).norm() < 1e-12);
  }
  CHECK_THROWS_AS(compose(Sequence{{"G9"}}, t), Error);
}

TEST_CASE("probabilities of the ideal targets") {
  const auto t = qubit_targets();
  CHECK(std::abs(sequence_probability(Sequence{}, t)) < 1e-15);
  CHECK(std::abs(sequence_probability(Sequence{{"G4"}}, t) - 1.0) < 1e-15);
  CHECK(std::abs(sequence_probability(Sequence{{"G2"}}, t) - 0.5) < 1e-15);
  try {
    sequence_probability(Sequence{{"G2", "Gx"}}, t);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownLabel);
    CHECK(std::string(e.what()).find("Gx") != std::string::npos);
  }
}

TEST_CASE("sequence keys") {
  const Sequence s{{"G1", "G2", "G4"}};
  CHECK(s.key() == "G1:G2:G4");
  CHECK(Sequence::from_key("G1:G2:G4") == s);
  CHECK(Sequence::from_key("").length() == 0);
  CHECK(Sequence{}.key().empty());
}

TEST_CASE("gate set validation") {
  const auto t = qubit_targets();
  auto g = [&](const char* l) { return std::pair<std::string, SuperOperator>{l, t.superop(0)}; };
  CHECK_THROWS_AS(GateSet(t.rho_vector(), t.effect_vector(), {g("A"), g("A")}), Error);
  CHECK_THROWS_AS(GateSet(t.rho_vector(), t.effect_vector(), {g("A:B")}), Error);
  CHECK_THROWS_AS(GateSet(t.rho_vector(), t.effect_vector(), {g("")}), Error);
  StateVector small{Vector::Zero(3), t.basis()};
  CHECK_THROWS_AS(GateSet(small, t.effect_vector(), {g("A")}), Error);
}

TEST_CASE("parameter count formula") {
  CHECK(parameter_count(4, 2) == 55);
  CHECK(parameter_count(2, 2) == 31);
  // 1*16 - (1 - 2)*4 - 1.
  CHECK(parameter_count(1, 2) == 19);
}

TEST_CASE("choi diagnostic") {
  const auto t = qubit_targets();
  CHECK(choi_min_eigenvalue(t.superop(1)) > -1e-12);
  // Transpose map: trace preserving but not completely positive.
  SuperOperator transpose{Matrix::Identity(4, 4), t.basis()};
  transpose.matrix(2, 2) = -1;
  CHECK(choi_min_eigenvalue(transpose) < -0.1);
}

TEST_CASE("noise model") {
  const auto n = noisy_qubit_model({0.01, 0.005, 0.0, 0.0});
  const auto t = qubit_targets();
  CHECK((n.gate("G1") - t.gate("G1")).norm() > 0.0);
  CHECK((n.rho() - t.rho()).norm() == 0.0);
  // Depolarization shrinks the Bloch part uniformly.
  CHECK(std::abs(n.gate("G4")(1, 1) - 0.995) < 1e-12);
  CHECK(std::abs(n.gate("G4")(2, 2) - 0.995 * std::cos(pi + 0.01)) < 1e-12);
  // Rotating rho and E together keeps them orthogonal but tilts both.
  const auto r = rotate_spam(t, 0.05);
  CHECK(std::abs(sequence_probability(Sequence{}, r)) < 1e-15);
  CHECK(std::abs(std::abs(r.rho()(1)) - std::sin(0.05) / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(r.rho()(2)) < 1e-15);
}
