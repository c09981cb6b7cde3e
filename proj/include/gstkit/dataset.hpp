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
#include <string>

#include "gstkit/design.hpp"
#include "gstkit/gateset.hpp"

namespace gstkit {

struct Counts {
  long long n_plus = 0;
  long long n_total = 0;

  double frequency() const noexcept { return static_cast<double>(n_plus) / static_cast<double>(n_total); }
  bool operator==(const Counts&) const = default;
};

/// Outcome counts keyed by canonical sequence key (labels joined by ':').
class DataSet {
 public:
  /// Adds counts to the record for `seq`, creating it if needed.
  void add(const Sequence& seq, Counts c);
  void set(const Sequence& seq, Counts c);

  bool contains(const Sequence& seq) const { return records_.contains(seq.key()); }
  const Counts& at(const Sequence& seq) const;
  const std::map<std::string, Counts>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  bool operator==(const DataSet&) const = default;

 private:
  std::map<std::string, Counts> records_;
};

/// n_plus ~ Binomial(n_total, p_s) for each distinct design sequence. Each
/// sequence draws from its own CounterRng substream keyed by (seed, key) and
/// counts Bernoulli trials u < p, so results are bit-identical across runs,
/// platforms and thread counts.
DataSet simulate_counts(const GateSet& gs, const ExperimentDesign& design, long long n_total, std::uint64_t seed);

long long sample_binomial(long long n, double p, std::uint64_t key);

std::map<std::string, double> frequencies(const DataSet& ds);

DataSet merge(const DataSet& a, const DataSet& b);

}  // namespace gstkit
