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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gstkit/basis.hpp"

namespace gstkit {

/// Hilbert-Schmidt coordinates of a density operator, |rho>>.
struct StateVector {
  Vector entries;
  BasisPtr basis;
};

/// Hilbert-Schmidt coordinates of a POVM effect, <<E|.
struct EffectVector {
  Vector entries;
  BasisPtr basis;
};

/// Real d^2 x d^2 transfer matrix in the basis.
struct SuperOperator {
  Matrix matrix;
  BasisPtr basis;
};

/// Ordered list of gate labels; the first label is applied first.
struct Sequence {
  std::vector<std::string> labels;

  std::size_t length() const noexcept { return labels.size(); }
  bool operator==(const Sequence&) const = default;
  auto operator<=>(const Sequence&) const = default;

  /// Labels joined by ':'; the empty sequence has the empty key.
  std::string key() const;
  static Sequence from_key(std::string_view key);

  Sequence then(const Sequence& next) const;
};

/// State, two-outcome effect and labeled gates sharing one basis.
class GateSet {
 public:
  GateSet(StateVector rho, EffectVector effect,
          std::vector<std::pair<std::string, SuperOperator>> gates);

  int dim() const noexcept { return basis_->dim(); }
  int hs_dim() const noexcept { return basis_->size(); }
  const BasisPtr& basis() const noexcept { return basis_; }

  const Vector& rho() const noexcept { return rho_; }
  const Vector& effect() const noexcept { return effect_; }
  std::size_t num_gates() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Matrix& gate(std::size_t i) const { return gates_.at(i); }
  const Matrix& gate(std::string_view label) const;
  std::optional<std::size_t> find(std::string_view label) const;

  StateVector rho_vector() const { return {rho_, basis_}; }
  EffectVector effect_vector() const { return {effect_, basis_}; }
  SuperOperator superop(std::size_t i) const { return {gates_.at(i), basis_}; }

  void set_rho(const Vector& v);
  void set_effect(const Vector& v);
  void set_gate(std::size_t i, const Matrix& m);

  /// Maps labels to gate indices; throws kUnknownLabel naming the first miss.
  std::vector<std::size_t> resolve(const Sequence& seq) const;

 private:
  BasisPtr basis_;
  Vector rho_;
  Vector effect_;
  std::vector<std::string> labels_;
  std::vector<Matrix> gates_;
};

StateVector density_to_vector(const CMatrix& m, const BasisPtr& basis);
CMatrix vector_to_density(const StateVector& v);
EffectVector effect_from_operator(const CMatrix& e, const BasisPtr& basis);

SuperOperator unitary_to_superop(const CMatrix& u, const BasisPtr& basis);
SuperOperator kraus_to_superop(std::span<const CMatrix> kraus, const BasisPtr& basis);

/// exp(-i angle/2 n.sigma) for a qubit; rotation of the Bloch vector by
/// +angle about the unit axis n.
CMatrix rotation_unitary(double nx, double ny, double nz, double angle);
/// Kraus set {sqrt(1-3p/4) 1l, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}.
std::vector<CMatrix> depolarizing_kraus(double p);

/// Product of gate matrices, first label rightmost. Empty sequence -> 1l.
Matrix compose(const Sequence& seq, const GateSet& gs);
Matrix compose(std::span<const std::size_t> indices, const GateSet& gs);

/// Born-rule probability <<E| G_sL ... G_s1 |rho>>, unclipped.
double sequence_probability(const Sequence& seq, const GateSet& gs);
double sequence_probability(std::span<const std::size_t> indices, const GateSet& gs);

/// K d^4 - (K - 2) d^2 - 1.
long long parameter_count(int num_gates, int dim);

/// Smallest eigenvalue of the Choi matrix of a superoperator. Diagnostic
/// only; nothing in the library enforces complete positivity.
double choi_min_eigenvalue(const SuperOperator& op);

}  // namespace gstkit
