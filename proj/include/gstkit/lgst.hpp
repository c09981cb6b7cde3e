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

#include <map>
#include <string>
#include <vector>

#include "gstkit/dataset.hpp"
#include "gstkit/design.hpp"
#include "gstkit/gateset.hpp"

namespace gstkit {

/// Sequences of an LGST design arranged by fiducial index. fid[j] is F_j,
/// pair[j][k] is F_k then F_j, sandwich[g][j][k] is F_k, gate g, F_j.
/// Entries carrying an "append" tag are ignored.
struct LgstBlocks {
  std::vector<Sequence> fiducials;
  std::vector<const Sequence*> fid;
  std::vector<std::vector<const Sequence*>> pair;
  std::vector<std::vector<std::vector<const Sequence*>>> sandwich;
};

/// Throws kInvalidArgument when roles are missing or indices inconsistent.
/// The returned pointers refer into `design`.
LgstBlocks collect_lgst_blocks(const ExperimentDesign& design, const std::vector<std::string>& gate_labels);

struct LgstIntermediates {
  Matrix gram;                            ///< gram(j, k) = f(F_k then F_j)
  std::map<std::string, Matrix> tilde_gates;  ///< (j, k) = f(F_k, G, F_j)
  Vector tilde_rho;                       ///< f(F_j)
  Vector tilde_effect;                    ///< f(F_k)
  double condition_number = 0.0;
  double min_singular_value = 0.0;
  int rank = 0;
  std::vector<std::string> warnings;
};

LgstIntermediates assemble(const DataSet& ds, const ExperimentDesign& design,
                           const std::vector<std::string>& gate_labels);

struct LgstOptions {
  double singular_threshold = 1e-10;  ///< relative to the largest singular value
  double condition_warning = 1e4;
};

struct LgstResult {
  GateSet estimate;
  LgstIntermediates intermediates;
};

/// Closed-form estimate {gram^-1 rho~, E~, gram^-1 G~_i} for d^2 fiducials.
/// `dim` is the Hilbert-space dimension of the system.
LgstResult lgst_estimate(const DataSet& ds, const ExperimentDesign& design, const std::vector<std::string>& gate_labels,
                         int dim = 2, const LgstOptions& options = {});

/// LGST on exact model probabilities instead of sampled frequencies.
LgstResult lgst_from_model(const GateSet& truth, const ExperimentDesign& design, const LgstOptions& options = {});

}  // namespace gstkit
