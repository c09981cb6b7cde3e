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

#include "gstkit/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gstkit/error.hpp"
#include "gstkit/optimize.hpp"
#include "gstkit/parallel.hpp"

namespace gstkit {

Vector flatten(const GateSet& gs) {
  const int n = gs.hs_dim();
  Vector x(2 * n + static_cast<Eigen::Index>(gs.num_gates()) * n * n);
  x.segment(0, n) = gs.rho();
  x.segment(n, n) = gs.effect();
  Eigen::Index off = 2 * n;
  for (std::size_t k = 0; k < gs.num_gates(); ++k) {
    const Matrix& g = gs.gate(k);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) x(off++) = g(a, b);
    }
  }
  return x;
}

GateSet unflatten(const Vector& params, const GateSet& like) {
  const int n = like.hs_dim();
  if (params.size() != 2 * n + static_cast<Eigen::Index>(like.num_gates()) * n * n) {
    fail(ErrorCode::kDimensionMismatch, "parameter vector length does not match the gate set");
  }
  GateSet out = like;
  out.set_rho(params.segment(0, n));
  out.set_effect(params.segment(n, n));
  Eigen::Index off = 2 * n;
  Matrix g(n, n);
  for (std::size_t k = 0; k < like.num_gates(); ++k) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) g(a, b) = params(off++);
    }
    out.set_gate(k, g);
  }
  return out;
}

LikelihoodModel::LikelihoodModel(const GateSet& like, const DataSet& ds) : like_(like) {
  n_ = like.hs_dim();
  num_params_ = static_cast<std::size_t>(2 * n_) + like.num_gates() * static_cast<std::size_t>(n_ * n_);
  for (const auto& [key, c] : ds.records()) {
    const auto idx = like.resolve(Sequence::from_key(key));
    seqs_.emplace_back(idx.begin(), idx.end());
    n_plus_.push_back(static_cast<double>(c.n_plus));
    n_total_.push_back(static_cast<double>(c.n_total));
  }
}

LikelihoodModel LikelihoodModel::truncated(std::size_t max_length) const {
  LikelihoodModel out(like_);
  out.n_ = n_;
  out.num_params_ = num_params_;
  for (std::size_t i = 0; i < seqs_.size(); ++i) {
    if (seqs_[i].size() <= max_length) {
      out.seqs_.push_back(seqs_[i]);
      out.n_plus_.push_back(n_plus_[i]);
      out.n_total_.push_back(n_total_[i]);
    }
  }
  return out;
}

std::size_t LikelihoodModel::max_length() const noexcept {
  std::size_t m = 0;
  for (const auto& s : seqs_) m = std::max(m, s.size());
  return m;
}

namespace {

/// Forward pass; states must hold (L + 1) * n doubles. Returns p.
double forward(const double* x, int n, const std::vector<std::uint32_t>& seq, double* states) {
  const double* gates = x + 2 * n;
  const std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::copy(x, x + n, states);
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const double* g = gates + seq[t] * nn;
    const double* in = states + t * static_cast<std::size_t>(n);
    double* out = states + (t + 1) * static_cast<std::size_t>(n);
    for (int a = 0; a < n; ++a) {
      double acc = 0.0;
      for (int b = 0; b < n; ++b) acc += g[a * n + b] * in[b];
      out[a] = acc;
    }
  }
  const double* last = states + seq.size() * static_cast<std::size_t>(n);
  double p = 0.0;
  for (int a = 0; a < n; ++a) p += x[n + a] * last[a];
  return p;
}

/// Adds coef * dp/dx into grad, using the states from forward().
void backward(const double* x, int n, const std::vector<std::uint32_t>& seq, const double* states, double coef,
              double* grad, std::vector<double>& u, std::vector<double>& tmp) {
  const double* gates = x + 2 * n;
  double* ggates = grad + 2 * n;
  const std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  const double* last = states + seq.size() * static_cast<std::size_t>(n);
  for (int a = 0; a < n; ++a) {
    grad[n + a] += coef * last[a];
    u[static_cast<std::size_t>(a)] = coef * x[n + a];
  }
  for (std::size_t t = seq.size(); t-- > 0;) {
    const double* g = gates + seq[t] * nn;
    double* gg = ggates + seq[t] * nn;
    const double* in = states + t * static_cast<std::size_t>(n);
    for (int a = 0; a < n; ++a) {
      const double ua = u[static_cast<std::size_t>(a)];
      for (int b = 0; b < n; ++b) gg[a * n + b] += ua * in[b];
    }
    for (int b = 0; b < n; ++b) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a) acc += u[static_cast<std::size_t>(a)] * g[a * n + b];
      tmp[static_cast<std::size_t>(b)] = acc;
    }
    std::swap(u, tmp);
  }
  for (int a = 0; a < n; ++a) grad[a] += u[static_cast<std::size_t>(a)];
}

constexpr std::size_t kChunks = 16;

}  // namespace

LikelihoodModel::Evaluation LikelihoodModel::nll(const Vector& params, double floor, Vector* grad) const {
  if (static_cast<std::size_t>(params.size()) != num_params_) {
    fail(ErrorCode::kDimensionMismatch, "parameter vector length does not match the model");
  }
  if (!(floor > 0.0 && floor < 0.5)) fail(ErrorCode::kInvalidArgument, "likelihood floor must lie in (0, 0.5)");
  const std::size_t m = seqs_.size();
  const std::size_t chunks = std::max<std::size_t>(1, std::min(kChunks, m));
  std::vector<double> values(chunks, 0.0);
  std::vector<int> clips(chunks, 0);
  std::vector<Vector> grads(grad ? chunks : 0, Vector::Zero(static_cast<Eigen::Index>(num_params_)));
  const double* x = params.data();

  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> states, u(static_cast<std::size_t>(n_)), tmp(static_cast<std::size_t>(n_));
    double value = 0.0;
    int clipped = 0;
    for (std::size_t i = c * m / chunks; i < (c + 1) * m / chunks; ++i) {
      const auto& seq = seqs_[i];
      states.resize((seq.size() + 1) * static_cast<std::size_t>(n_));
      const double p = forward(x, n_, seq, states.data());
      const double np = n_plus_[i], nm = n_total_[i] - n_plus_[i];
      double pc = p;
      bool clip = false;
      if (!(p >= floor)) {
        pc = floor;
        clip = true;
      } else if (p > 1.0 - floor) {
        pc = 1.0 - floor;
        clip = true;
      }
      // 0 * ln(.) terms are dropped so that p = 1 with n_minus = 0 stays exact.
      if (np > 0) value -= np * std::log(pc);
      if (nm > 0) value -= nm * std::log1p(-pc);
      if (clip) {
        ++clipped;
        continue;
      }
      if (grad) {
        const double coef = -(np / p) + nm / (1.0 - p);
        backward(x, n_, seq, states.data(), coef, grads[c].data(), u, tmp);
      }
    }
    values[c] = value;
    clips[c] = clipped;
  });

  Evaluation e;
  for (std::size_t c = 0; c < chunks; ++c) {
    e.value += values[c];
    e.clip_events += clips[c];
  }
  if (grad) {
    grad->setZero(static_cast<Eigen::Index>(num_params_));
    for (const auto& g : grads) *grad += g;
  }
  return e;
}

std::vector<double> LikelihoodModel::probabilities(const Vector& params) const {
  std::vector<double> out(seqs_.size());
  const double* x = params.data();
  const std::size_t m = seqs_.size();
  const std::size_t chunks = std::max<std::size_t>(1, std::min(kChunks, m));
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> states;
    for (std::size_t i = c * m / chunks; i < (c + 1) * m / chunks; ++i) {
      states.resize((seqs_[i].size() + 1) * static_cast<std::size_t>(n_));
      out[i] = forward(x, n_, seqs_[i], states.data());
    }
  });
  return out;
}

NllValue neg_log_likelihood(const GateSet& gs, const DataSet& ds, double floor) {
  const LikelihoodModel model(gs, ds);
  const auto e = model.nll(flatten(gs), floor);
  return {e.value, e.clip_events};
}

Vector nll_gradient(const GateSet& gs, const DataSet& ds, double floor) {
  const LikelihoodModel model(gs, ds);
  Vector g;
  model.nll(flatten(gs), floor, &g);
  return g;
}

namespace {

double violation(const std::vector<double>& probs, double delta, double* max_violation = nullptr) {
  double sum = 0.0, worst = 0.0;
  for (const double p : probs) {
    const double v = std::max(0.0, delta - p) + std::max(0.0, p - (1.0 - delta));
    sum += v * v;
    worst = std::max(worst, v);
  }
  if (max_violation) *max_violation = worst;
  return sum;
}

FeasibilityResult project_model(const LikelihoodModel& model, const Vector& x0, const FeasibilityOptions& options) {
  if (!(options.delta > 0.0 && options.delta < 0.5)) fail(ErrorCode::kInvalidArgument, "delta must lie in (0, 0.5)");
  FeasibilityResult r{model.like(), false, 0.0, 0.0, 0, 0};
  double worst = 0.0;
  violation(model.probabilities(x0), options.delta, &worst);
  if (worst == 0.0) {
    r.gate_set = unflatten(x0, model.like());
    r.feasible = true;
    return r;
  }
  // A quadratic penalty settles slightly outside its bound, so aim 1% inside.
  const double target = std::min(options.delta * 1.01, 0.5 * (options.delta + 0.5));
  Vector x = x0;
  double weight = options.initial_penalty;
  for (int level = 0; level <= options.max_escalations; ++level) {
    auto objective = [&](const Vector& y) {
      return (y - x0).squaredNorm() + weight * violation(model.probabilities(y), target);
    };
    opt::NelderMeadOptions nm;
    nm.max_evaluations = options.max_evaluations;
    nm.initial_step = level == 0 ? 0.02 : 0.02 / std::pow(3.0, level);
    const auto res = opt::minimize_nelder_mead(objective, x, nm);
    r.evaluations += res.evaluations;
    x = res.x;
    r.escalations = level;
    violation(model.probabilities(x), options.delta, &worst);
    if (worst == 0.0) {
      r.feasible = true;
      break;
    }
    weight *= 10.0;
  }
  r.gate_set = unflatten(x, model.like());
  r.distance = (x - x0).norm();
  r.max_violation = worst;
  return r;
}

}  // namespace

FeasibilityResult project_to_feasible(const GateSet& gs, const DataSet& ds, const FeasibilityOptions& options) {
  const LikelihoodModel model(gs, ds);
  return project_model(model, flatten(gs), options);
}

MleResult mle_estimate(const GateSet& seed, const DataSet& ds, const MleOptions& options) {
  const LikelihoodModel full(seed, ds);
  const Vector x_seed = flatten(seed);
  const double tol = options.tol > 0 ? options.tol : 1e-6 * std::sqrt(static_cast<double>(full.num_params()));

  FitReport rep;
  rep.initial_nll = full.nll(x_seed, options.floor).value;
  if (!std::isfinite(rep.initial_nll)) fail(ErrorCode::kNumerical, "non-finite likelihood at the seed");

  // Length schedule: 2, 4, 8, ... then everything.
  std::vector<std::size_t> stages;
  const std::size_t longest = full.max_length();
  if (options.staged) {
    for (std::size_t len = 2; len < longest; len *= 2) stages.push_back(len);
  }
  stages.push_back(longest);

  auto fit = [&](const LikelihoodModel& model, const Vector& x0) {
    opt::BfgsOptions bo;
    bo.gradient_tol = tol;
    bo.max_iterations = options.max_iterations;
    return opt::minimize_bfgs(
        [&](const Vector& x, Vector* g) {
          const double v = model.nll(x, options.floor, g).value;
          return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
        },
        x0, bo);
  };

  Vector x = x_seed;
  std::size_t prev_records = 0;
  opt::BfgsResult last;
  bool have_last = false;
  for (const auto len : stages) {
    const LikelihoodModel model = len >= longest ? full : full.truncated(len);
    if (model.num_records() == prev_records && len < longest) continue;
    prev_records = model.num_records();
    if (options.project) {
      FeasibilityOptions fo;
      fo.delta = options.delta;
      const auto proj = project_model(model, x, fo);
      if (len >= longest) rep.feasible_start = proj.feasible;
      x = flatten(proj.gate_set);
    }
    last = fit(model, x);
    have_last = true;
    x = last.x;
    rep.iterations += last.iterations;
    ++rep.stages;
  }

  double final_value = full.nll(x, options.floor).value;
  if (final_value > rep.initial_nll) {
    // The projected or staged path ended worse than the seed; fall back to a
    // direct descent from the seed, which cannot increase the objective.
    const auto direct = fit(full, x_seed);
    rep.iterations += direct.iterations;
    x = direct.x;
    last = direct;
    final_value = direct.value;
  }
  if (!std::isfinite(final_value)) fail(ErrorCode::kNumerical, "non-finite likelihood after optimization");

  Vector grad;
  const auto e = full.nll(x, options.floor, &grad);
  rep.final_nll = e.value;
  rep.clip_events = e.clip_events;
  rep.gradient_norm = grad.norm();
  rep.converged = rep.gradient_norm < tol;
  rep.message = have_last ? last.message : "no optimization performed";
  return {unflatten(x, seed), rep};
}

}  // namespace gstkit
