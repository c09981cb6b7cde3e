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

#include <functional>
#include <string>

#include "gstkit/basis.hpp"

namespace gstkit::opt {

/// Objective returning f(x); when `grad` is non-null it must also be filled.
/// Returning +inf marks x as outside the domain; line searches back off.
using Objective = std::function<double(const Vector& x, Vector* grad)>;

struct BfgsOptions {
  double gradient_tol = 1e-6;
  int max_iterations = 10000;
  /// Stop after this many consecutive iterations whose relative decrease
  /// is below `stall_tol`.
  double stall_tol = 1e-15;
  int stall_iterations = 20;
};

struct BfgsResult {
  Vector x;
  double value = 0.0;
  double initial_value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string message;
};

/// Quasi-Newton minimization with a dense inverse-Hessian update and a
/// strong-Wolfe line search. The returned value never exceeds f(x0).
BfgsResult minimize_bfgs(const Objective& f, const Vector& x0, const BfgsOptions& options = {});

struct NelderMeadOptions {
  double initial_step = 0.05;
  int max_evaluations = 20000;
  double f_tol = 1e-12;
  double x_tol = 1e-10;
};

struct NelderMeadResult {
  Vector x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Downhill simplex with dimension-adaptive coefficients
/// (reflection 1, expansion 1 + 2/n, contraction 0.75 - 1/(2n),
/// shrink 1 - 1/n).
NelderMeadResult minimize_nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                                      const NelderMeadOptions& options = {});

/// Central differences with step h; used by tests and as a gradient
/// fallback.
Vector finite_difference_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double h = 1e-6);

}  // namespace gstkit::opt
