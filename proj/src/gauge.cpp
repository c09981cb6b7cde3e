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

#include "gstkit/gauge.hpp"

#include <cmath>
#include <limits>

#include "gstkit/error.hpp"
#include "gstkit/optimize.hpp"
#include "gstkit/rng.hpp"

namespace gstkit {

namespace {

void check_compatible(const GateSet& a, const GateSet& b) {
  if (a.hs_dim() != b.hs_dim()) fail(ErrorCode::kDimensionMismatch, "gate sets have different dimensions");
  if (a.labels() != b.labels()) fail(ErrorCode::kInvalidArgument, "gate sets have different gate labels");
}

Matrix checked_inverse(const Matrix& m, double det_floor) {
  Eigen::FullPivLU<Matrix> lu(m);
  if (!lu.isInvertible() || std::abs(lu.determinant()) <= det_floor) {
    fail(ErrorCode::kSingular, "gauge transform is singular");
  }
  return lu.inverse();
}

}  // namespace

GateSet apply_gauge(const GateSet& gs, const GaugeTransform& t) {
  const int n = gs.hs_dim();
  if (t.m.rows() != n || t.m.cols() != n) fail(ErrorCode::kDimensionMismatch, "gauge matrix must be d^2 x d^2");
  const Matrix inv = checked_inverse(t.m, 1e-12);
  GateSet out = gs;
  out.set_rho(t.m * gs.rho());
  out.set_effect(inv.transpose() * gs.effect());
  for (std::size_t k = 0; k < gs.num_gates(); ++k) out.set_gate(k, t.m * gs.gate(k) * inv);
  return out;
}

double frobenius_discrepancy(const GateSet& a, const GateSet& b, double spam_weight) {
  check_compatible(a, b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.num_gates(); ++k) s += (a.gate(k) - b.gate(k)).squaredNorm();
  if (spam_weight != 0.0) {
    s += spam_weight * ((a.rho() - b.rho()).squaredNorm() + (a.effect() - b.effect()).squaredNorm());
  }
  return s;
}

Matrix gauge_discrepancy_gradient(const GateSet& gs, const GateSet& target, const Matrix& m, double spam_weight) {
  check_compatible(gs, target);
  const Matrix inv = checked_inverse(m, 0.0);
  const Matrix inv_t = inv.transpose();
  Matrix grad = Matrix::Zero(m.rows(), m.cols());
  for (std::size_t k = 0; k < gs.num_gates(); ++k) {
    const Matrix g = gs.gate(k);
    const Matrix gp = m * g * inv;
    const Matrix r = gp - target.gate(k);
    // d tr(R^T R) = 2 tr(R^T (dM G M^-1 - G' dM M^-1))
    grad += 2.0 * (r * inv_t * g.transpose() - gp.transpose() * r * inv_t);
  }
  if (spam_weight != 0.0) {
    const Vector rp = m * gs.rho();
    grad += spam_weight * 2.0 * (rp - target.rho()) * gs.rho().transpose();
    const Vector ep = inv_t * gs.effect();  // E' as a column
    grad -= spam_weight * 2.0 * ep * (ep - target.effect()).transpose() * inv_t;
  }
  return grad;
}

double max_probability_difference(const GateSet& a, const GateSet& b, int max_length) {
  check_compatible(a, b);
  const std::size_t k = a.num_gates();
  double worst = 0.0;
  std::vector<std::size_t> idx;
  for (int len = 0; len <= max_length; ++len) {
    idx.assign(static_cast<std::size_t>(len), 0);
    while (true) {
      worst = std::max(worst, std::abs(sequence_probability(idx, a) - sequence_probability(idx, b)));
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == k) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  return worst;
}

GaugeResult gauge_optimize(const GateSet& gs, const GateSet& target, const GaugeOptions& options) {
  check_compatible(gs, target);
  const int n = gs.hs_dim();
  auto objective = [&](const Vector& x, Vector* grad) {
    const Eigen::Map<const Matrix> mt(x.data(), n, n);  // column-major view of row-major M^T
    const Matrix m = mt.transpose();
    const double det = m.determinant();
    if (!std::isfinite(det) || std::abs(det) < options.det_floor) return std::numeric_limits<double>::infinity();
    const double v = frobenius_discrepancy(apply_gauge(gs, {m}), target, options.spam_weight);
    if (grad) {
      const Matrix g = gauge_discrepancy_gradient(gs, target, m, options.spam_weight);
      const Matrix gt = g.transpose();
      *grad = Eigen::Map<const Vector>(gt.data(), n * n);
    }
    return v;
  };
  auto to_params = [&](const Matrix& m) {
    const Matrix mt = m.transpose();
    return Vector(Eigen::Map<const Vector>(mt.data(), n * n));
  };

  GaugeResult best{{Matrix::Identity(n, n)}, gs, 0.0, 0.0, 1.0, 0.0, 0, true};
  best.discrepancy_before = frobenius_discrepancy(gs, target, options.spam_weight);
  best.discrepancy_after = best.discrepancy_before;

  opt::BfgsOptions bo;
  bo.max_iterations = options.max_iterations;
  bo.gradient_tol = options.gradient_tol;
  const int starts = std::max(1, options.starts);
  for (int s = 0; s < starts; ++s) {
    Matrix m0 = Matrix::Identity(n, n);
    if (s > 0) {
      CounterRng rng(stream_key(options.seed, "gauge-start:" + std::to_string(s)));
      for (int i = 0; i < n * n; ++i) m0.data()[i] += options.start_scale * rng.normal();
      if (std::abs(m0.determinant()) < options.det_floor) continue;
    }
    const auto res = opt::minimize_bfgs(objective, to_params(m0), bo);
    best.iterations += res.iterations;
    if (std::isfinite(res.value) && res.value < best.discrepancy_after) {
      const Eigen::Map<const Matrix> mt(res.x.data(), n, n);
      best.transform.m = mt.transpose();
      best.discrepancy_after = res.value;
      best.converged = res.converged;
    }
  }
  best.gate_set = apply_gauge(gs, best.transform);
  best.discrepancy_after = frobenius_discrepancy(best.gate_set, target, options.spam_weight);
  best.det_m = best.transform.m.determinant();
  best.invariance_error = max_probability_difference(gs, best.gate_set, 3);
  return best;
}

}  // namespace gstkit
