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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gstkit/gateset.hpp"

namespace gstkit {

enum class Role { kSpam, kFid, kFidPair, kSandwich, kGermPower, kTestPartial };

const char* role_name(Role r) noexcept;
Role role_from_name(const std::string& name);

struct Experiment {
  std::string id;
  Sequence sequence;
  Role role = Role::kSpam;
  std::map<std::string, std::string> meta;
};

/// Ordered experiment list. Entries are unique per (role, sequence), except
/// TEST_PARTIAL entries which are identified by (base, L) so every base
/// sequence keeps its full partial series.
class ExperimentDesign {
 public:
  ExperimentDesign() = default;

  /// Returns false when an equivalent entry already exists.
  bool add(Experiment e);
  /// Appends every entry of `other` that is not already present.
  void merge(const ExperimentDesign& other);

  const std::vector<Experiment>& experiments() const noexcept { return experiments_; }
  std::size_t size() const noexcept { return experiments_.size(); }
  /// Distinct sequences in first-appearance order.
  std::vector<Sequence> unique_sequences() const;

  std::map<std::string, std::string> metadata;

 private:
  std::string identity(const Experiment& e) const;

  std::vector<Experiment> experiments_;
  std::map<std::string, std::size_t> index_;
  std::set<std::string> ids_;
};

struct FiducialSet {
  std::vector<Sequence> fiducials;
};

/// F_j, F_k F_j pairs and F_k G_i F_j sandwiches (application order).
ExperimentDesign lgst_design(const std::vector<std::string>& gate_labels, const FiducialSet& fiducials,
                             bool include_spam = false);

/// LGST design plus the SPAM experiment plus F_k G_i^p F_j for each power.
/// With `append_gate`, every experiment is duplicated with that gate applied
/// last (meta "append").
ExperimentDesign germ_power_design(const std::vector<std::string>& gate_labels, const FiducialSet& fiducials,
                                   const std::vector<int>& powers,
                                   const std::optional<std::string>& append_gate = std::nullopt);

/// Base sequences: one uniform repetition per label, one alternating
/// (labels[1], labels[2]) string, then `num_random` seeded random strings.
/// Emits TEST_PARTIAL prefixes L = 0..length of each.
ExperimentDesign test_design(const std::vector<std::string>& gate_labels, int length, int num_random,
                             std::uint64_t seed);

struct CompletenessReport {
  double min_singular_value = 0.0;
  int rank = 0;
  Matrix gram;
};

/// Model-predicted Gram matrix <<E|F_j F_k|rho>> and its numerical rank
/// (singular values above 1e-10 of the largest).
CompletenessReport completeness_diagnostic(const GateSet& gs, const FiducialSet& fiducials);

/// Gram matrix of `fiducials` under the model, row j / column k.
Matrix model_gram(const GateSet& gs, const FiducialSet& fiducials);

/// The d^2-th largest singular value of a Gram matrix: its smallest
/// informative singular value. Equals the minimum singular value when the
/// matrix is d^2 x d^2.
double informative_singular_value(const Matrix& gram, int hs_dim);

/// Greedy removal of the fiducial whose removal maximizes the surviving
/// Gram matrix's informative singular value; ties go to the lowest index.
FiducialSet select_fiducials(const GateSet& gs, const FiducialSet& candidates, int target_count);

}  // namespace gstkit
