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

#include "gstkit/design.hpp"

#include <algorithm>
#include <set>
#include <cmath>

#include "gstkit/error.hpp"
#include "gstkit/rng.hpp"

namespace gstkit {

const char* role_name(Role r) noexcept {
  switch (r) {
    case Role::kSpam: return "SPAM";
    case Role::kFid: return "FID";
    case Role::kFidPair: return "FID_PAIR";
    case Role::kSandwich: return "SANDWICH";
    case Role::kGermPower: return "GERM_POWER";
    case Role::kTestPartial: return "TEST_PARTIAL";
  }
  return "?";
}

Role role_from_name(const std::string& name) {
  for (Role r : {Role::kSpam, Role::kFid, Role::kFidPair, Role::kSandwich, Role::kGermPower, Role::kTestPartial}) {
    if (name == role_name(r)) return r;
  }
  fail(ErrorCode::kParse, "unknown experiment role '" + name + "'");
}

std::string ExperimentDesign::identity(const Experiment& e) const {
  std::string id = role_name(e.role);
  id += '|';
  if (e.role == Role::kTestPartial) {
    const auto b = e.meta.find("base");
    const auto l = e.meta.find("L");
    if (b == e.meta.end() || l == e.meta.end()) {
      fail(ErrorCode::kInvalidArgument, "TEST_PARTIAL entries need 'base' and 'L' metadata");
    }
    return id + b->second + '|' + l->second;
  }
  return id + e.sequence.key();
}

bool ExperimentDesign::add(Experiment e) {
  const auto ident = identity(e);
  if (index_.contains(ident)) return false;
  if (!ids_.insert(e.id).second) fail(ErrorCode::kInvalidArgument, "duplicate experiment id '" + e.id + "'");
  index_.emplace(ident, experiments_.size());
  experiments_.push_back(std::move(e));
  return true;
}

void ExperimentDesign::merge(const ExperimentDesign& other) {
  for (const auto& e : other.experiments_) add(e);
  for (const auto& [k, v] : other.metadata) metadata.emplace(k, v);
}

std::vector<Sequence> ExperimentDesign::unique_sequences() const {
  std::vector<Sequence> out;
  std::map<std::string, bool> seen;
  for (const auto& e : experiments_) {
    if (seen.emplace(e.sequence.key(), true).second) out.push_back(e.sequence);
  }
  return out;
}

namespace {

void check_fiducials(const FiducialSet& f) {
  if (f.fiducials.empty()) fail(ErrorCode::kInvalidArgument, "fiducial set is empty");
}

void check_distinct(const FiducialSet& f) {
  std::set<Sequence> seen;
  for (const auto& s : f.fiducials) {
    if (!seen.insert(s).second) fail(ErrorCode::kInvalidArgument, "duplicate fiducial '" + s.key() + "'");
  }
}

std::string idx(std::size_t i) { return std::to_string(i); }

}  // namespace

ExperimentDesign lgst_design(const std::vector<std::string>& gate_labels, const FiducialSet& fiducials,
                             bool include_spam) {
  check_fiducials(fiducials);
  check_distinct(fiducials);
  const auto& f = fiducials.fiducials;
  ExperimentDesign d;
  if (include_spam) d.add({"spam", {}, Role::kSpam, {}});
  for (std::size_t j = 0; j < f.size(); ++j) {
    d.add({"fid:" + idx(j), f[j], Role::kFid, {{"j", idx(j)}}});
  }
  for (std::size_t j = 0; j < f.size(); ++j) {
    for (std::size_t k = 0; k < f.size(); ++k) {
      d.add({"pair:" + idx(j) + ":" + idx(k), f[k].then(f[j]), Role::kFidPair, {{"j", idx(j)}, {"k", idx(k)}}});
    }
  }
  for (const auto& g : gate_labels) {
    const Sequence gate{{g}};
    for (std::size_t j = 0; j < f.size(); ++j) {
      for (std::size_t k = 0; k < f.size(); ++k) {
        d.add({"sandwich:" + idx(j) + ":" + g + ":" + idx(k), f[k].then(gate).then(f[j]), Role::kSandwich,
               {{"j", idx(j)}, {"k", idx(k)}, {"gate", g}}});
      }
    }
  }
  d.metadata["kind"] = include_spam ? "lgst+spam" : "lgst";
  return d;
}

ExperimentDesign germ_power_design(const std::vector<std::string>& gate_labels, const FiducialSet& fiducials,
                                   const std::vector<int>& powers, const std::optional<std::string>& append_gate) {
  ExperimentDesign base = lgst_design(gate_labels, fiducials, true);
  const auto& f = fiducials.fiducials;
  for (const int p : powers) {
    if (p < 1) fail(ErrorCode::kInvalidArgument, "germ powers must be positive");
    for (const auto& g : gate_labels) {
      Sequence germ;
      germ.labels.assign(static_cast<std::size_t>(p), g);
      for (std::size_t j = 0; j < f.size(); ++j) {
        for (std::size_t k = 0; k < f.size(); ++k) {
          base.add({"germ:" + idx(j) + ":" + g + "^" + std::to_string(p) + ":" + idx(k), f[k].then(germ).then(f[j]),
                    Role::kGermPower, {{"j", idx(j)}, {"k", idx(k)}, {"germ", g}, {"p", std::to_string(p)}}});
        }
      }
    }
  }
  base.metadata["kind"] = "germ";
  if (!append_gate) return base;
  if (append_gate->empty()) fail(ErrorCode::kInvalidArgument, "append gate label is empty");

  ExperimentDesign out = base;
  const Sequence tail{{*append_gate}};
  for (const auto& e : base.experiments()) {
    Experiment copy = e;
    copy.id += "+" + *append_gate;
    copy.sequence = e.sequence.then(tail);
    copy.meta["append"] = *append_gate;
    out.add(std::move(copy));
  }
  out.metadata["append"] = *append_gate;
  return out;
}

ExperimentDesign test_design(const std::vector<std::string>& gate_labels, int length, int num_random,
                             std::uint64_t seed) {
  if (length < 1) fail(ErrorCode::kInvalidArgument, "test sequence length must be >= 1");
  if (num_random < 0) fail(ErrorCode::kInvalidArgument, "num_random must be >= 0");
  if (gate_labels.size() < 3) fail(ErrorCode::kInvalidArgument, "the alternating test sequence needs at least 3 gate labels");
  const auto n = static_cast<std::size_t>(length);

  std::vector<std::pair<std::string, Sequence>> bases;
  for (const auto& g : gate_labels) {
    Sequence s;
    s.labels.assign(n, g);
    bases.emplace_back("uniform:" + g, std::move(s));
  }
  {
    Sequence s;
    for (std::size_t i = 0; i < n; ++i) s.labels.push_back(gate_labels[1 + i % 2]);
    bases.emplace_back("alternating:" + gate_labels[1] + "," + gate_labels[2], std::move(s));
  }
  for (int r = 0; r < num_random; ++r) {
    CounterRng rng(stream_key(seed, "test-random:" + std::to_string(r)));
    Sequence s;
    for (std::size_t i = 0; i < n; ++i) s.labels.push_back(gate_labels[rng.below(gate_labels.size())]);
    bases.emplace_back("random:" + std::to_string(r), std::move(s));
  }

  ExperimentDesign d;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    const auto& [name, full] = bases[b];
    for (std::size_t len = 0; len <= n; ++len) {
      Sequence prefix;
      prefix.labels.assign(full.labels.begin(), full.labels.begin() + static_cast<std::ptrdiff_t>(len));
      d.add({"test:" + idx(b) + ":" + idx(len), std::move(prefix), Role::kTestPartial,
             {{"base", idx(b)}, {"base_name", name}, {"L", idx(len)}}});
    }
  }
  d.metadata["kind"] = "test";
  d.metadata["seed"] = std::to_string(seed);
  return d;
}

Matrix model_gram(const GateSet& gs, const FiducialSet& fiducials) {
  check_fiducials(fiducials);
  const auto& f = fiducials.fiducials;
  const auto n = static_cast<Eigen::Index>(f.size());
  // rho_k = F_k|rho>>, E_j = <<E|F_j
  Matrix states(gs.hs_dim(), n), effects(n, gs.hs_dim());
  for (Eigen::Index k = 0; k < n; ++k) {
    const Matrix fk = compose(f[static_cast<std::size_t>(k)], gs);
    states.col(k) = fk * gs.rho();
    effects.row(k) = gs.effect().transpose() * fk;
  }
  return effects * states;
}

double informative_singular_value(const Matrix& gram, int hs_dim) {
  Eigen::JacobiSVD<Matrix> svd(gram);
  const auto& sv = svd.singularValues();
  if (sv.size() < hs_dim) return 0.0;
  return sv(hs_dim - 1);
}

CompletenessReport completeness_diagnostic(const GateSet& gs, const FiducialSet& fiducials) {
  CompletenessReport r;
  r.gram = model_gram(gs, fiducials);
  Eigen::JacobiSVD<Matrix> svd(r.gram);
  const auto& sv = svd.singularValues();
  r.min_singular_value = sv.minCoeff();
  // Gram entries are probabilities, so an absolute floor applies as well.
  const double thresh = std::max(1e-10 * sv.maxCoeff(), 1e-12);
  r.rank = static_cast<int>((sv.array() > thresh).count());
  return r;
}

FiducialSet select_fiducials(const GateSet& gs, const FiducialSet& candidates, int target_count) {
  check_fiducials(candidates);
  const int n2 = gs.hs_dim();
  if (target_count < n2) fail(ErrorCode::kInvalidArgument, "target fiducial count must be at least d^2");
  if (static_cast<int>(candidates.fiducials.size()) < target_count) {
    fail(ErrorCode::kInvalidArgument, "fewer candidates than the target count");
  }
  std::vector<std::size_t> keep(candidates.fiducials.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  const Matrix full = model_gram(gs, candidates);

  auto sub_gram = [&](const std::vector<std::size_t>& ids) {
    const auto m = static_cast<Eigen::Index>(ids.size());
    Matrix g(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) g(a, b) = full(static_cast<Eigen::Index>(ids[a]), static_cast<Eigen::Index>(ids[b]));
    }
    return g;
  };

  while (static_cast<int>(keep.size()) > target_count) {
    std::size_t best_pos = 0;
    double best = -1.0;
    for (std::size_t pos = 0; pos < keep.size(); ++pos) {
      auto trial = keep;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(pos));
      const double v = informative_singular_value(sub_gram(trial), n2);
      if (v > best + 1e-12 * (1.0 + std::abs(best))) {
        best = v;
        best_pos = pos;
      }
    }
    keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(best_pos));
  }

  const Matrix final_gram = sub_gram(keep);
  Eigen::JacobiSVD<Matrix> svd(final_gram);
  const auto& sv = svd.singularValues();
  if (informative_singular_value(final_gram, n2) <= std::max(1e-10 * sv.maxCoeff(), 1e-12)) {
    fail(ErrorCode::kIncomplete,
         "selected fiducials are informationally incomplete; the gate set cannot generate a spanning set");
  }
  FiducialSet out;
  for (const auto i : keep) out.fiducials.push_back(candidates.fiducials[i]);
  return out;
}

}  // namespace gstkit
