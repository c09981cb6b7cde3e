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

#include "gstkit/dataset.hpp"

#include <vector>

#include "gstkit/error.hpp"
#include "gstkit/parallel.hpp"
#include "gstkit/rng.hpp"

namespace gstkit {

namespace {

void check_counts(const std::string& key, Counts c) {
  if (c.n_total < 1 || c.n_plus < 0 || c.n_plus > c.n_total) {
    fail(ErrorCode::kInvalidArgument, "invalid counts for sequence '" + key + "': n_plus=" +
                                          std::to_string(c.n_plus) + " n_total=" + std::to_string(c.n_total));
  }
}

}  // namespace

void DataSet::add(const Sequence& seq, Counts c) {
  const auto key = seq.key();
  check_counts(key, c);
  auto [it, inserted] = records_.emplace(key, c);
  if (!inserted) {
    it->second.n_plus += c.n_plus;
    it->second.n_total += c.n_total;
  }
}

void DataSet::set(const Sequence& seq, Counts c) {
  const auto key = seq.key();
  check_counts(key, c);
  records_[key] = c;
}

const Counts& DataSet::at(const Sequence& seq) const {
  const auto key = seq.key();
  const auto it = records_.find(key);
  if (it == records_.end()) fail(ErrorCode::kMissingData, "no data for sequence '" + key + "'");
  return it->second;
}

long long sample_binomial(long long n, double p, std::uint64_t key) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return n;
  CounterRng rng(key);
  long long k = 0;
  for (long long i = 0; i < n; ++i) k += rng.uniform() < p ? 1 : 0;
  return k;
}

DataSet simulate_counts(const GateSet& gs, const ExperimentDesign& design, long long n_total, std::uint64_t seed) {
  if (n_total < 1) fail(ErrorCode::kInvalidArgument, "n_total must be >= 1");
  const auto seqs = design.unique_sequences();
  std::vector<double> probs(seqs.size());
  std::vector<long long> counts(seqs.size());
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    const double p = sequence_probability(seqs[i], gs);
    // Rounding noise on an exact 0 or 1 is not a physicality violation.
    if (p < -1e-12 || p > 1.0 + 1e-12) {
      fail(ErrorCode::kNonPhysical, "model probability " + std::to_string(p) + " for sequence '" + seqs[i].key() +
                                        "' is outside [0, 1]");
    }
    probs[i] = p;
  }
  parallel_for(seqs.size(), [&](std::size_t i) {
    counts[i] = sample_binomial(n_total, probs[i], stream_key(seed, seqs[i].key()));
  });
  DataSet ds;
  for (std::size_t i = 0; i < seqs.size(); ++i) ds.set(seqs[i], {counts[i], n_total});
  return ds;
}

std::map<std::string, double> frequencies(const DataSet& ds) {
  std::map<std::string, double> out;
  for (const auto& [k, c] : ds.records()) out.emplace(k, c.frequency());
  return out;
}

DataSet merge(const DataSet& a, const DataSet& b) {
  DataSet out = a;
  for (const auto& [k, c] : b.records()) out.add(Sequence::from_key(k), c);
  return out;
}

}  // namespace gstkit
