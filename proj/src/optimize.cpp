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

#include "gstkit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace gstkit::opt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Probe {
  double alpha = 0.0;
  double f = 0.0;
  double slope = 0.0;  // directional derivative
  Vector grad;
};

/// Minimizer of the cubic through (a, fa, da), (b, fb, db), clamped into the
/// interior of [lo, hi]; falls back to bisection.
double interpolate(const Probe& a, const Probe& b) {
  const double lo = std::min(a.alpha, b.alpha), hi = std::max(a.alpha, b.alpha);
  double t = 0.5 * (lo + hi);
  if (std::isfinite(a.f) && std::isfinite(b.f)) {
    const double d1 = a.slope + b.slope - 3 * (a.f - b.f) / (a.alpha - b.alpha);
    const double disc = d1 * d1 - a.slope * b.slope;
    if (disc >= 0) {
      const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
      const double cand = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / (b.slope - a.slope + 2 * d2);
      if (std::isfinite(cand)) t = cand;
    }
  }
  const double margin = 0.1 * (hi - lo);
  return std::clamp(t, lo + margin, hi - margin);
}

class LineSearch {
 public:
  LineSearch(const Objective& f, const Vector& x, const Vector& dir, double f0, double slope0, int& evals)
      : f_(f), x_(x), dir_(dir), f0_(f0), slope0_(slope0), evals_(evals) {}

  /// Strong-Wolfe search (bracket then zoom). Returns false if no step
  /// satisfying the sufficient-decrease condition was found.
  bool run(double alpha0, Probe& out) {
    Probe prev{0.0, f0_, slope0_, {}};
    double alpha = alpha0;
    for (int i = 0; i < 40; ++i) {
      Probe cur = eval(alpha);
      if (!std::isfinite(cur.f)) {
        // Outside the domain: shrink toward the last good point.
        alpha = prev.alpha + 0.25 * (alpha - prev.alpha);
        continue;
      }
      if (cur.f > f0_ + kC1 * alpha * slope0_ || (i > 0 && cur.f >= prev.f)) return zoom(prev, cur, out);
      if (std::abs(cur.slope) <= -kC2 * slope0_) {
        out = std::move(cur);
        return true;
      }
      if (cur.slope >= 0) return zoom(cur, prev, out);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    return false;
  }

 private:
  static constexpr double kC1 = 1e-4;
  static constexpr double kC2 = 0.9;

  Probe eval(double alpha) {
    Probe p;
    p.alpha = alpha;
    p.grad.resize(x_.size());
    ++evals_;
    p.f = f_(x_ + alpha * dir_, &p.grad);
    p.slope = std::isfinite(p.f) ? p.grad.dot(dir_) : kInf;
    return p;
  }

  bool zoom(Probe lo, Probe hi, Probe& out) {
    Probe best_armijo;
    bool have = false;
    if (lo.alpha > 0 && lo.f <= f0_ + kC1 * lo.alpha * slope0_) {
      best_armijo = lo;
      have = true;
    }
    for (int i = 0; i < 30; ++i) {
      const double alpha = interpolate(lo, hi);
      Probe cur = eval(alpha);
      if (!std::isfinite(cur.f) || cur.f > f0_ + kC1 * alpha * slope0_ || cur.f >= lo.f) {
        hi = std::move(cur);
        if (!std::isfinite(hi.f)) hi.f = kInf;
      } else {
        if (std::abs(cur.slope) <= -kC2 * slope0_) {
          out = std::move(cur);
          return true;
        }
        if (cur.slope * (hi.alpha - lo.alpha) >= 0) hi = lo;
        lo = cur;
        best_armijo = std::move(cur);
        have = true;
      }
      if (std::abs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, std::abs(lo.alpha))) break;
    }
    if (have) {
      out = std::move(best_armijo);
      return true;
    }
    return false;
  }

  const Objective& f_;
  const Vector& x_;
  const Vector& dir_;
  double f0_;
  double slope0_;
  int& evals_;
};

}  // namespace

BfgsResult minimize_bfgs(const Objective& f, const Vector& x0, const BfgsOptions& options) {
  BfgsResult r;
  const auto n = x0.size();
  Vector x = x0, g(n);
  double fx = f(x, &g);
  r.evaluations = 1;
  r.initial_value = fx;
  if (!std::isfinite(fx)) {
    r.x = x;
    r.value = fx;
    r.message = "objective is not finite at the starting point";
    return r;
  }
  Matrix h = Matrix::Identity(n, n);
  bool scaled = false;
  int stall = 0;

  for (r.iterations = 0; r.iterations < options.max_iterations; ++r.iterations) {
    const double gnorm = g.norm();
    if (gnorm < options.gradient_tol) {
      r.converged = true;
      r.message = "gradient norm below tolerance";
      break;
    }
    Vector dir = -h * g;
    double slope = dir.dot(g);
    if (!(slope < 0)) {
      h.setIdentity();
      dir = -g;
      slope = -gnorm * gnorm;
    }
    // First step is scaled so that it moves at most unit length.
    const double alpha0 = scaled ? 1.0 : std::min(1.0, 1.0 / gnorm);
    Probe step;
    LineSearch ls(f, x, dir, fx, slope, r.evaluations);
    if (!ls.run(alpha0, step)) {
      if (!h.isIdentity()) {
        h.setIdentity();
        scaled = false;
        continue;
      }
      r.message = "line search failed";
      break;
    }
    const Vector s = step.alpha * dir;
    const Vector y = step.grad - g;
    const double rel = (fx - step.f) / std::max({std::abs(fx), std::abs(step.f), 1.0});
    x += s;
    fx = step.f;
    g = step.grad;

    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (!scaled) {
        h *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Vector hy = h * y;
      const double yhy = y.dot(hy);
      // H+ = (I - rho s y^T) H (I - rho y s^T) + rho s s^T, expanded.
      h.noalias() += (rho * rho * yhy + rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
    }
    stall = rel < options.stall_tol ? stall + 1 : 0;
    if (stall >= options.stall_iterations) {
      r.message = "objective stalled";
      ++r.iterations;
      break;
    }
  }
  if (r.message.empty()) r.message = r.converged ? "converged" : "iteration limit reached";
  r.x = x;
  r.value = fx;
  r.gradient_norm = g.norm();
  return r;
}

NelderMeadResult minimize_nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                                      const NelderMeadOptions& options) {
  const auto n = x0.size();
  const double dn = static_cast<double>(n);
  const double alpha = 1.0, gamma = 1.0 + 2.0 / dn, beta = 0.75 - 1.0 / (2.0 * dn), delta = 1.0 - 1.0 / dn;

  std::vector<Vector> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> vals(pts.size());
  NelderMeadResult r;
  auto eval = [&](const Vector& x) {
    ++r.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    auto& p = pts[static_cast<std::size_t>(i + 1)];
    p(i) += x0(i) != 0.0 ? options.initial_step * std::max(std::abs(x0(i)), 0.1) : options.initial_step;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(pts.size());
  while (r.evaluations < options.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];

    double size = 0.0;
    for (const auto& p : pts) size = std::max(size, (p - pts[best]).lpNorm<Eigen::Infinity>());
    if (std::abs(vals[worst] - vals[best]) <= options.f_tol * (1.0 + std::abs(vals[best])) && size <= options.x_tol) {
      r.converged = true;
      break;
    }

    Vector centroid = Vector::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= dn;

    const Vector xr = centroid + alpha * (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const Vector xe = centroid + gamma * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vector xc = outside ? Vector(centroid + beta * (xr - centroid)) : Vector(centroid - beta * (centroid - pts[worst]));
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + delta * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  r.x = pts[static_cast<std::size_t>(it - vals.begin())];
  r.value = *it;
  return r;
}

Vector finite_difference_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double h) {
  Vector g(x.size());
  Vector xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x(i);
    xp(i) = xi + h;
    const double fp = f(xp);
    xp(i) = xi - h;
    const double fm = f(xp);
    xp(i) = xi;
    g(i) = (fp - fm) / (2 * h);
  }
  return g;
}

}  // namespace gstkit::opt
