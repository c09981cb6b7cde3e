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

#include "gstkit/gateset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "gstkit/error.hpp"

namespace gstkit {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;

void check_basis(const BasisPtr& basis) {
  if (!basis) fail(ErrorCode::kInvalidArgument, "null basis");
}

}  // namespace

std::string Sequence::key() const {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ':';
    out += labels[i];
  }
  return out;
}

Sequence Sequence::from_key(std::string_view key) {
  Sequence s;
  if (key.empty()) return s;
  std::size_t start = 0;
  while (true) {
    const auto pos = key.find(':', start);
    s.labels.emplace_back(key.substr(start, pos == std::string_view::npos ? key.size() - start : pos - start));
    if (s.labels.back().empty()) fail(ErrorCode::kParse, "empty label in sequence key '" + std::string(key) + "'");
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return s;
}

Sequence Sequence::then(const Sequence& next) const {
  Sequence s = *this;
  s.labels.insert(s.labels.end(), next.labels.begin(), next.labels.end());
  return s;
}

GateSet::GateSet(StateVector rho, EffectVector effect,
                 std::vector<std::pair<std::string, SuperOperator>> gates)
    : basis_(rho.basis), rho_(std::move(rho.entries)), effect_(std::move(effect.entries)) {
  check_basis(basis_);
  const int n = basis_->size();
  if (effect.basis != basis_ && (!effect.basis || effect.basis->dim() != basis_->dim())) {
    fail(ErrorCode::kDimensionMismatch, "state and effect use different bases");
  }
  if (rho_.size() != n || effect_.size() != n) {
    fail(ErrorCode::kDimensionMismatch, "state/effect length must be d^2");
  }
  std::unordered_set<std::string> seen;
  for (auto& [label, op] : gates) {
    if (label.empty()) fail(ErrorCode::kInvalidArgument, "gate labels must be non-empty");
    if (label.find(':') != std::string::npos) {
      fail(ErrorCode::kInvalidArgument, "gate label '" + label + "' contains ':'");
    }
    if (!seen.insert(label).second) fail(ErrorCode::kInvalidArgument, "duplicate gate label '" + label + "'");
    if (op.basis && op.basis->dim() != basis_->dim()) {
      fail(ErrorCode::kDimensionMismatch, "gate '" + label + "' uses a different basis");
    }
    if (op.matrix.rows() != n || op.matrix.cols() != n) {
      fail(ErrorCode::kDimensionMismatch, "gate '" + label + "' must be d^2 x d^2");
    }
    labels_.push_back(label);
    gates_.push_back(std::move(op.matrix));
  }
}

const Matrix& GateSet::gate(std::string_view label) const {
  const auto idx = find(label);
  if (!idx) fail(ErrorCode::kUnknownLabel, "unknown gate label '" + std::string(label) + "'");
  return gates_[*idx];
}

std::optional<std::size_t> GateSet::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

void GateSet::set_rho(const Vector& v) {
  if (v.size() != hs_dim()) fail(ErrorCode::kDimensionMismatch, "state length must be d^2");
  rho_ = v;
}

void GateSet::set_effect(const Vector& v) {
  if (v.size() != hs_dim()) fail(ErrorCode::kDimensionMismatch, "effect length must be d^2");
  effect_ = v;
}

void GateSet::set_gate(std::size_t i, const Matrix& m) {
  if (m.rows() != hs_dim() || m.cols() != hs_dim()) fail(ErrorCode::kDimensionMismatch, "gate must be d^2 x d^2");
  gates_.at(i) = m;
}

std::vector<std::size_t> GateSet::resolve(const Sequence& seq) const {
  std::vector<std::size_t> out;
  out.reserve(seq.labels.size());
  for (const auto& l : seq.labels) {
    const auto idx = find(l);
    if (!idx) fail(ErrorCode::kUnknownLabel, "unknown gate label '" + l + "' in sequence '" + seq.key() + "'");
    out.push_back(*idx);
  }
  return out;
}

StateVector density_to_vector(const CMatrix& m, const BasisPtr& basis) {
  check_basis(basis);
  if (m.rows() != basis->dim() || m.cols() != basis->dim()) {
    fail(ErrorCode::kDimensionMismatch, "density matrix dimension does not match basis");
  }
  if ((m - m.adjoint()).norm() > kHermitianTol) fail(ErrorCode::kNotHermitian, "density matrix is not Hermitian");
  return {basis->coordinates(m), basis};
}

CMatrix vector_to_density(const StateVector& v) {
  check_basis(v.basis);
  return v.basis->reconstruct(v.entries);
}

EffectVector effect_from_operator(const CMatrix& e, const BasisPtr& basis) {
  auto v = density_to_vector(e, basis);
  return {std::move(v.entries), basis};
}

SuperOperator unitary_to_superop(const CMatrix& u, const BasisPtr& basis) {
  check_basis(basis);
  const int d = basis->dim();
  if (u.rows() != d || u.cols() != d) fail(ErrorCode::kDimensionMismatch, "unitary dimension does not match basis");
  if ((u.adjoint() * u - CMatrix::Identity(d, d)).norm() > kUnitaryTol) {
    fail(ErrorCode::kNotUnitary, "matrix is not unitary");
  }
  const int n = basis->size();
  Matrix out(n, n);
  for (int j = 0; j < n; ++j) out.col(j) = basis->coordinates(u * (*basis)[j] * u.adjoint());
  return {out, basis};
}

SuperOperator kraus_to_superop(std::span<const CMatrix> kraus, const BasisPtr& basis) {
  check_basis(basis);
  const int d = basis->dim();
  if (kraus.empty()) fail(ErrorCode::kInvalidArgument, "empty Kraus set");
  CMatrix completeness = CMatrix::Zero(d, d);
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) fail(ErrorCode::kDimensionMismatch, "Kraus operator dimension mismatch");
    completeness += k.adjoint() * k;
  }
  if ((completeness - CMatrix::Identity(d, d)).norm() > kUnitaryTol) {
    fail(ErrorCode::kNotTracePreserving, "Kraus operators violate sum K^dagger K = 1l");
  }
  const int n = basis->size();
  Matrix out(n, n);
  for (int j = 0; j < n; ++j) {
    CMatrix img = CMatrix::Zero(d, d);
    for (const auto& k : kraus) img += k * (*basis)[j] * k.adjoint();
    out.col(j) = basis->coordinates(img);
  }
  return {out, basis};
}

CMatrix rotation_unitary(double nx, double ny, double nz, double angle) {
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (norm == 0.0) fail(ErrorCode::kInvalidArgument, "rotation axis must be non-zero");
  nx /= norm;
  ny /= norm;
  nz /= norm;
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  const Complex i(0, 1);
  CMatrix u(2, 2);
  u(0, 0) = c - i * s * nz;
  u(0, 1) = -i * s * nx - s * ny;
  u(1, 0) = -i * s * nx + s * ny;
  u(1, 1) = c + i * s * nz;
  return u;
}

std::vector<CMatrix> depolarizing_kraus(double p) {
  if (p < 0.0 || p > 4.0 / 3.0) fail(ErrorCode::kInvalidArgument, "depolarizing strength out of range");
  const Complex i(0, 1);
  CMatrix id = CMatrix::Identity(2, 2), x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  const double a = std::sqrt(1.0 - 3.0 * p / 4.0), b = std::sqrt(p / 4.0);
  return {a * id, b * x, b * y, b * z};
}

Matrix compose(std::span<const std::size_t> indices, const GateSet& gs) {
  Matrix out = Matrix::Identity(gs.hs_dim(), gs.hs_dim());
  for (const auto idx : indices) out = gs.gate(idx) * out;
  return out;
}

Matrix compose(const Sequence& seq, const GateSet& gs) {
  const auto idx = gs.resolve(seq);
  return compose(idx, gs);
}

double sequence_probability(std::span<const std::size_t> indices, const GateSet& gs) {
  Vector state = gs.rho();
  for (const auto idx : indices) state = gs.gate(idx) * state;
  return gs.effect().dot(state);
}

double sequence_probability(const Sequence& seq, const GateSet& gs) {
  const auto idx = gs.resolve(seq);
  return sequence_probability(idx, gs);
}

long long parameter_count(int num_gates, int dim) {
  if (num_gates < 1 || dim < 2) fail(ErrorCode::kInvalidArgument, "parameter_count needs K >= 1 and d >= 2");
  const long long k = num_gates, d2 = static_cast<long long>(dim) * dim;
  return k * d2 * d2 - (k - 2) * d2 - 1;
}

double choi_min_eigenvalue(const SuperOperator& op) {
  check_basis(op.basis);
  const auto& basis = *op.basis;
  const int d = basis.dim(), n = basis.size();
  if (op.matrix.rows() != n || op.matrix.cols() != n) fail(ErrorCode::kDimensionMismatch, "superoperator size");
  CMatrix choi = CMatrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      CMatrix unit = CMatrix::Zero(d, d);
      unit(a, b) = 1.0;
      Eigen::VectorXcd c(n);
      for (int j = 0; j < n; ++j) c(j) = (basis[j].conjugate().cwiseProduct(unit)).sum();
      CMatrix img = CMatrix::Zero(d, d);
      for (int i = 0; i < n; ++i) {
        Complex coef = 0;
        for (int j = 0; j < n; ++j) coef += op.matrix(i, j) * c(j);
        img += coef * basis[i];
      }
      choi.block(a * d, b * d, d, d) = img;
    }
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(choi, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace gstkit
