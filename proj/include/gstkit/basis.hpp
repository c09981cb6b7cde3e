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

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gstkit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Orthonormal Hermitian operator basis of B(H) for a d-level system.
/// Element 0 is always 1l/sqrt(d). For d = 2 the ordering is the normalized
/// Pauli basis (1l, X, Y, Z)/sqrt(2); larger d uses generalized Gell-Mann
/// matrices ordered symmetric, antisymmetric, diagonal.
class HermitianBasis {
 public:
  HermitianBasis(std::string name, int dim, std::vector<CMatrix> elements);

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return dim_ * dim_; }
  const std::string& name() const noexcept { return name_; }
  const CMatrix& operator[](int i) const { return elements_[static_cast<std::size_t>(i)]; }
  const std::vector<CMatrix>& elements() const noexcept { return elements_; }

  /// Coordinates x_i = Tr[B_i^dagger m] for Hermitian m.
  Vector coordinates(const CMatrix& m) const;
  /// Inverse of coordinates(): sum_i x_i B_i.
  CMatrix reconstruct(const Vector& x) const;

 private:
  std::string name_;
  int dim_;
  std::vector<CMatrix> elements_;
};

using BasisPtr = std::shared_ptr<const HermitianBasis>;

/// Canonical basis for `dim`; instances are cached and shared.
BasisPtr pauli_basis(int dim);

}  // namespace gstkit
