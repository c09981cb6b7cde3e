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

#include "gstkit/basis.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "gstkit/error.hpp"

namespace gstkit {

HermitianBasis::HermitianBasis(std::string name, int dim, std::vector<CMatrix> elements)
    : name_(std::move(name)), dim_(dim), elements_(std::move(elements)) {
  if (dim_ < 2) fail(ErrorCode::kUnsupportedDimension, "basis dimension must be at least 2");
  if (static_cast<int>(elements_.size()) != dim_ * dim_) {
    fail(ErrorCode::kDimensionMismatch, "basis needs d^2 elements");
  }
}

Vector HermitianBasis::coordinates(const CMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) {
    fail(ErrorCode::kDimensionMismatch, "operator dimension does not match basis");
  }
  Vector x(size());
  for (int i = 0; i < size(); ++i) {
    // Tr[B_i^dagger m] = sum_ab conj(B_i)_ab m_ab
    x(i) = (elements_[static_cast<std::size_t>(i)].conjugate().cwiseProduct(m)).sum().real();
  }
  return x;
}

CMatrix HermitianBasis::reconstruct(const Vector& x) const {
  if (x.size() != size()) fail(ErrorCode::kDimensionMismatch, "coordinate vector has wrong length");
  CMatrix m = CMatrix::Zero(dim_, dim_);
  for (int i = 0; i < size(); ++i) m += x(i) * elements_[static_cast<std::size_t>(i)];
  return m;
}

namespace {

BasisPtr make_basis(int dim) {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<CMatrix> el;
  el.push_back(CMatrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim)));
  for (int a = 0; a < dim; ++a) {
    for (int b = a + 1; b < dim; ++b) {
      CMatrix m = CMatrix::Zero(dim, dim);
      m(a, b) = s;
      m(b, a) = s;
      el.push_back(m);
    }
  }
  for (int a = 0; a < dim; ++a) {
    for (int b = a + 1; b < dim; ++b) {
      CMatrix m = CMatrix::Zero(dim, dim);
      m(a, b) = Complex(0, -s);
      m(b, a) = Complex(0, s);
      el.push_back(m);
    }
  }
  // Diagonal generators, normalized so that Tr[B^2] = 1. For d = 2 this is Z/sqrt(2).
  for (int l = 1; l < dim; ++l) {
    CMatrix m = CMatrix::Zero(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (int a = 0; a < l; ++a) m(a, a) = norm;
    m(l, l) = -l * norm;
    el.push_back(m);
  }
  std::string name = dim == 2 ? "pauli-normalized" : "gell-mann-normalized";
  return std::make_shared<const HermitianBasis>(std::move(name), dim, std::move(el));
}

}  // namespace

BasisPtr pauli_basis(int dim) {
  if (dim < 2 || dim > 16) fail(ErrorCode::kUnsupportedDimension, "basis dimension must be in [2, 16]");
  static std::mutex mu;
  static std::map<int, BasisPtr> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[dim];
  if (!slot) slot = make_basis(dim);
  return slot;
}

}  // namespace gstkit
