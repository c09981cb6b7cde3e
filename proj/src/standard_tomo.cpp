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

#include "gstkit/standard_tomo.hpp"

#include <cmath>

#include "gstkit/error.hpp"
#include "gstkit/lgst.hpp"

namespace gstkit {

namespace {

constexpr double kRankTol = 1e-10;

int numerical_rank(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  return static_cast<int>((sv.array() > kRankTol * sv(0)).count());
}

Vector weighted_lstsq(const Matrix& a, const Vector& b, const Vector& w) {
  const Vector sw = w.cwiseSqrt();
  const Matrix aw = sw.asDiagonal() * a;
  const Vector bw = sw.cwiseProduct(b);
  return aw.completeOrthogonalDecomposition().solve(bw);
}

BasisPtr common_basis(const BasisPtr& a) {
  if (!a) fail(ErrorCode::kInvalidArgument, "null basis");
  return a;
}

}  // namespace

StateVector state_tomography(const std::vector<EffectVector>& effects, const std::vector<double>& freqs,
                             const std::optional<std::vector<double>>& weights) {
  if (effects.empty()) fail(ErrorCode::kIncomplete, "no effects given");
  if (effects.size() != freqs.size()) fail(ErrorCode::kDimensionMismatch, "one frequency per effect required");
  const auto basis = common_basis(effects.front().basis);
  const int n = basis->size();
  Matrix a(static_cast<Eigen::Index>(effects.size()), n);
  Vector b(a.rows());
  for (std::size_t k = 0; k < effects.size(); ++k) {
    if (effects[k].entries.size() != n) fail(ErrorCode::kDimensionMismatch, "effect length must be d^2");
    a.row(static_cast<Eigen::Index>(k)) = effects[k].entries.transpose();
    b(static_cast<Eigen::Index>(k)) = freqs[k];
  }
  if (numerical_rank(a) < n) fail(ErrorCode::kIncomplete, "effects do not span the operator space");
  Vector w = Vector::Ones(a.rows());
  if (weights) {
    if (weights->size() != effects.size()) fail(ErrorCode::kDimensionMismatch, "one weight per effect required");
    for (std::size_t k = 0; k < weights->size(); ++k) w(static_cast<Eigen::Index>(k)) = (*weights)[k];
  }
  return {weighted_lstsq(a, b, w), basis};
}

SuperOperator process_tomography(const std::vector<StateVector>& states, const std::vector<EffectVector>& effects,
                                 const Matrix& freq_matrix, const std::optional<Matrix>& weights) {
  if (states.empty() || effects.empty()) fail(ErrorCode::kIncomplete, "states and effects must be non-empty");
  const auto basis = common_basis(states.front().basis);
  const int n = basis->size();
  const auto ns = static_cast<Eigen::Index>(states.size()), ne = static_cast<Eigen::Index>(effects.size());
  if (freq_matrix.rows() != ne || freq_matrix.cols() != ns) {
    fail(ErrorCode::kDimensionMismatch, "frequency matrix must be (#effects) x (#states)");
  }
  Matrix emat(ne, n), smat(n, ns);
  for (Eigen::Index k = 0; k < ne; ++k) emat.row(k) = effects[static_cast<std::size_t>(k)].entries.transpose();
  for (Eigen::Index j = 0; j < ns; ++j) smat.col(j) = states[static_cast<std::size_t>(j)].entries;
  if (numerical_rank(emat) < n) fail(ErrorCode::kIncomplete, "effects do not span the operator space");
  if (numerical_rank(smat) < n) fail(ErrorCode::kIncomplete, "states do not span the operator space");

  if (!weights) {
    // Uniform weights separate: argmin ||A G B - P||_F = A^+ P B^+.
    const Matrix a_pinv = emat.completeOrthogonalDecomposition().pseudoInverse();
    const Matrix b_pinv = smat.completeOrthogonalDecomposition().pseudoInverse();
    return {a_pinv * freq_matrix * b_pinv, basis};
  }
  if (weights->rows() != ne || weights->cols() != ns) fail(ErrorCode::kDimensionMismatch, "weight matrix shape");
  // vec(A G B) = (B^T kron A) vec(G), column-major vec.
  Matrix design(ne * ns, n * n);
  Vector rhs(ne * ns), w(ne * ns);
  for (Eigen::Index j = 0; j < ns; ++j) {
    for (Eigen::Index k = 0; k < ne; ++k) {
      const Eigen::Index r = j * ne + k;
      for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index a = 0; a < n; ++a) design(r, c * n + a) = emat(k, a) * smat(c, j);
      }
      rhs(r) = freq_matrix(k, j);
      w(r) = (*weights)(k, j);
    }
  }
  const Vector g = weighted_lstsq(design, rhs, w);
  return {Eigen::Map<const Matrix>(g.data(), n, n), basis};
}

GateSet standard_tomography_estimate(const DataSet& ds, const ExperimentDesign& design, const GateSet& assumed_frame) {
  const auto blocks = collect_lgst_blocks(design, assumed_frame.labels());
  const auto& fids = blocks.fiducials;
  const auto nf = fids.size();
  const auto basis = assumed_frame.basis();

  std::vector<StateVector> states;
  std::vector<EffectVector> effects;
  for (const auto& f : fids) {
    const Matrix fm = compose(f, assumed_frame);
    states.push_back({fm * assumed_frame.rho(), basis});
    effects.push_back({fm.transpose() * assumed_frame.effect(), basis});
  }
  std::vector<double> fid_freqs(nf);
  for (std::size_t j = 0; j < nf; ++j) fid_freqs[j] = ds.at(*blocks.fid[j]).frequency();

  const StateVector rho = state_tomography(effects, fid_freqs);
  // <<E|rho_k>> = f_k is the same linear problem with the roles swapped.
  std::vector<EffectVector> state_rows;
  for (const auto& s : states) state_rows.push_back({s.entries, basis});
  const StateVector e = state_tomography(state_rows, fid_freqs);

  std::vector<std::pair<std::string, SuperOperator>> gates;
  for (std::size_t g = 0; g < assumed_frame.num_gates(); ++g) {
    Matrix p(static_cast<Eigen::Index>(nf), static_cast<Eigen::Index>(nf));
    for (std::size_t j = 0; j < nf; ++j) {
      for (std::size_t k = 0; k < nf; ++k) {
        p(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = ds.at(*blocks.sandwich[g][j][k]).frequency();
      }
    }
    gates.emplace_back(assumed_frame.labels()[g], process_tomography(states, effects, p));
  }
  return GateSet(rho, EffectVector{e.entries, basis}, std::move(gates));
}

}  // namespace gstkit
