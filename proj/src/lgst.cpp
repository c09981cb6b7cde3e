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

#include "gstkit/lgst.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "gstkit/error.hpp"

namespace gstkit {

namespace {

std::size_t meta_index(const Experiment& e, const char* key) {
  const auto it = e.meta.find(key);
  if (it == e.meta.end()) {
    fail(ErrorCode::kInvalidArgument, "experiment '" + e.id + "' lacks fiducial index '" + key + "'");
  }
  try {
    std::size_t pos = 0;
    const auto v = std::stoul(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::kInvalidArgument, "experiment '" + e.id + "' has a malformed index '" + key + "'");
  }
}

void expect_sequence(const Experiment& e, const Sequence& expected) {
  if (e.sequence != expected) {
    fail(ErrorCode::kInvalidArgument, "inconsistent fiducial indexing: experiment '" + e.id + "' has sequence '" +
                                          e.sequence.key() + "', expected '" + expected.key() + "'");
  }
}

}  // namespace

LgstBlocks collect_lgst_blocks(const ExperimentDesign& design, const std::vector<std::string>& gate_labels) {
  LgstBlocks b;
  std::map<std::size_t, const Experiment*> fids;
  for (const auto& e : design.experiments()) {
    if (e.role == Role::kFid && !e.meta.contains("append")) {
      const auto j = meta_index(e, "j");
      if (!fids.emplace(j, &e).second) fail(ErrorCode::kInvalidArgument, "duplicate fiducial index " + std::to_string(j));
    }
  }
  if (fids.empty()) fail(ErrorCode::kInvalidArgument, "design has no FID experiments");
  const std::size_t nf = fids.size();
  if (fids.rbegin()->first != nf - 1) fail(ErrorCode::kInvalidArgument, "fiducial indices are not contiguous from 0");
  for (const auto& [j, e] : fids) {
    b.fiducials.push_back(e->sequence);
    b.fid.push_back(&e->sequence);
  }

  b.pair.assign(nf, std::vector<const Sequence*>(nf, nullptr));
  b.sandwich.assign(gate_labels.size(), b.pair);
  std::set<std::string> wanted(gate_labels.begin(), gate_labels.end());

  // Blocks are located by sequence: when two (j, k) cells share a sequence
  // the design keeps a single entry, and both cells read it.
  std::map<std::string, const Sequence*> pairs, sandwiches;
  for (const auto& e : design.experiments()) {
    if (e.meta.contains("append")) continue;
    if (e.role == Role::kFidPair) {
      const auto j = meta_index(e, "j"), k = meta_index(e, "k");
      if (j >= nf || k >= nf) fail(ErrorCode::kInvalidArgument, "fiducial index out of range in '" + e.id + "'");
      expect_sequence(e, b.fiducials[k].then(b.fiducials[j]));
      pairs.emplace(e.sequence.key(), &e.sequence);
    } else if (e.role == Role::kSandwich) {
      const auto j = meta_index(e, "j"), k = meta_index(e, "k");
      const auto git = e.meta.find("gate");
      if (git == e.meta.end()) fail(ErrorCode::kInvalidArgument, "sandwich '" + e.id + "' lacks a gate label");
      if (!wanted.contains(git->second)) continue;  // a gate the caller did not ask for
      if (j >= nf || k >= nf) fail(ErrorCode::kInvalidArgument, "fiducial index out of range in '" + e.id + "'");
      expect_sequence(e, b.fiducials[k].then(Sequence{{git->second}}).then(b.fiducials[j]));
      sandwiches.emplace(e.sequence.key(), &e.sequence);
    }
  }
  auto lookup = [](const std::map<std::string, const Sequence*>& m, const Sequence& s) -> const Sequence* {
    const auto it = m.find(s.key());
    return it == m.end() ? nullptr : it->second;
  };
  for (std::size_t j = 0; j < nf; ++j) {
    for (std::size_t k = 0; k < nf; ++k) {
      b.pair[j][k] = lookup(pairs, b.fiducials[k].then(b.fiducials[j]));
      for (std::size_t g = 0; g < gate_labels.size(); ++g) {
        b.sandwich[g][j][k] =
            lookup(sandwiches, b.fiducials[k].then(Sequence{{gate_labels[g]}}).then(b.fiducials[j]));
      }
    }
  }
  for (std::size_t j = 0; j < nf; ++j) {
    for (std::size_t k = 0; k < nf; ++k) {
      if (!b.pair[j][k]) {
        fail(ErrorCode::kInvalidArgument, "design lacks FID_PAIR (j=" + std::to_string(j) + ", k=" + std::to_string(k) + ")");
      }
      for (std::size_t g = 0; g < gate_labels.size(); ++g) {
        if (!b.sandwich[g][j][k]) {
          fail(ErrorCode::kInvalidArgument, "design lacks SANDWICH for gate '" + gate_labels[g] +
                                                "' (j=" + std::to_string(j) + ", k=" + std::to_string(k) + ")");
        }
      }
    }
  }
  return b;
}

namespace {

template <class Prob>
LgstIntermediates assemble_with(const LgstBlocks& b, const std::vector<std::string>& gate_labels, Prob&& prob) {
  const auto nf = static_cast<Eigen::Index>(b.fiducials.size());
  auto at = [](auto& v, Eigen::Index i) -> decltype(auto) { return v[static_cast<std::size_t>(i)]; };

  LgstIntermediates r;
  r.gram.resize(nf, nf);
  r.tilde_rho.resize(nf);
  for (Eigen::Index j = 0; j < nf; ++j) {
    r.tilde_rho(j) = prob(*at(b.fid, j));
    for (Eigen::Index k = 0; k < nf; ++k) r.gram(j, k) = prob(*at(at(b.pair, j), k));
  }
  r.tilde_effect = r.tilde_rho;
  for (std::size_t g = 0; g < gate_labels.size(); ++g) {
    Matrix m(nf, nf);
    for (Eigen::Index j = 0; j < nf; ++j) {
      for (Eigen::Index k = 0; k < nf; ++k) m(j, k) = prob(*at(at(b.sandwich[g], j), k));
    }
    r.tilde_gates.emplace(gate_labels[g], std::move(m));
  }

  Eigen::JacobiSVD<Matrix> svd(r.gram);
  const auto& sv = svd.singularValues();
  r.min_singular_value = sv.minCoeff();
  r.condition_number = r.min_singular_value > 0 ? sv.maxCoeff() / r.min_singular_value
                                                : std::numeric_limits<double>::infinity();
  r.rank = static_cast<int>((sv.array() > std::max(1e-10 * sv.maxCoeff(), 1e-12)).count());
  return r;
}

}  // namespace

LgstIntermediates assemble(const DataSet& ds, const ExperimentDesign& design,
                           const std::vector<std::string>& gate_labels) {
  const auto b = collect_lgst_blocks(design, gate_labels);
  return assemble_with(b, gate_labels, [&](const Sequence& s) { return ds.at(s).frequency(); });
}

namespace {

LgstResult estimate_from(LgstIntermediates r, const std::vector<std::string>& gate_labels, int dim,
                         const LgstOptions& options) {
  const auto basis = pauli_basis(dim);
  const int n = basis->size();
  if (r.gram.rows() != n) {
    fail(ErrorCode::kInvalidArgument, "LGST needs exactly d^2 = " + std::to_string(n) + " fiducials, got " +
                                          std::to_string(r.gram.rows()) + "; reduce them with select_fiducials");
  }
  Eigen::JacobiSVD<Matrix> svd(r.gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector sv = svd.singularValues();
  if (sv(0) <= 0.0 || sv(n - 1) <= std::max(options.singular_threshold * sv(0), 1e-12)) {
    std::ostringstream msg;
    msg << "Gram matrix is singular (min singular value " << sv(n - 1)
        << "); fiducials are informationally incomplete, replace some of them";
    fail(ErrorCode::kSingular, msg.str());
  }
  if (r.condition_number > options.condition_warning) {
    std::ostringstream msg;
    msg << "Gram matrix is ill-conditioned (condition number " << r.condition_number << ")";
    r.warnings.push_back(msg.str());
  }
  const Matrix inv = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();

  std::vector<std::pair<std::string, SuperOperator>> gates;
  for (const auto& label : gate_labels) gates.emplace_back(label, SuperOperator{inv * r.tilde_gates.at(label), basis});
  GateSet gs(StateVector{inv * r.tilde_rho, basis}, EffectVector{r.tilde_effect, basis}, std::move(gates));
  return {std::move(gs), std::move(r)};
}

}  // namespace

LgstResult lgst_estimate(const DataSet& ds, const ExperimentDesign& design, const std::vector<std::string>& gate_labels,
                         int dim, const LgstOptions& options) {
  return estimate_from(assemble(ds, design, gate_labels), gate_labels, dim, options);
}

LgstResult lgst_from_model(const GateSet& truth, const ExperimentDesign& design, const LgstOptions& options) {
  const auto b = collect_lgst_blocks(design, truth.labels());
  auto r = assemble_with(b, truth.labels(), [&](const Sequence& s) { return sequence_probability(s, truth); });
  return estimate_from(std::move(r), truth.labels(), truth.dim(), options);
}

}  // namespace gstkit
