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

#include <algorithm>
#include <set>

#include <Eigen/SVD>

#include "doctest.h"
#include "gstkit/demo.hpp"
#include "gstkit/design.hpp"
#include "gstkit/error.hpp"
#include "gstkit/models.hpp"

using namespace gstkit;

namespace {

const std::vector<std::string> kGates{"G1", "G2", "G3", "G4"};

FiducialSet fids(std::initializer_list<const char*> keys) {
  FiducialSet f;
  for (const char* k : keys) f.fiducials.push_back(Sequence::from_key(k));
  return f;
}

std::size_t count_role(const ExperimentDesign& d, Role r) {
  return static_cast<std::size_t>(
      std::count_if(d.experiments().begin(), d.experiments().end(), [&](const Experiment& e) { return e.role == r; }));
}

double min_sv(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues().minCoeff(); }

}  // namespace

TEST_CASE("lgst design counts") {
  const auto f = default_fiducials(kGates);
  const auto d84 = lgst_design(kGates, f);
  CHECK(d84.size() == 84);
  CHECK(count_role(d84, Role::kFid) == 4);
  CHECK(count_role(d84, Role::kFidPair) == 16);
  CHECK(count_role(d84, Role::kSandwich) == 64);
  CHECK(lgst_design(kGates, f, true).size() == 85);
  CHECK(lgst_design({"G1"}, fids({"G1"})).size() == 3);
  CHECK_THROWS_AS(lgst_design(kGates, FiducialSet{}), Error);

  // Pair j,k is F_k then F_j; sandwich j,G,k is F_k G F_j.
  for (const auto& e : d84.experiments()) {
    if (e.id == "pair:0:2") CHECK(e.sequence.key() == "G3:G1");
    if (e.id == "sandwich:1:G4:3") CHECK(e.sequence.key() == "G4:G4:G2");
  }
}

TEST_CASE("germ design counts") {
  const auto f = default_fiducials(kGates);
  const std::vector<int> powers{2, 4, 8, 16, 32, 64, 128};
  const auto d = germ_power_design(kGates, f, powers);
  CHECK(d.size() == 533);
  CHECK(count_role(d, Role::kGermPower) == 448);
  const auto a = germ_power_design(kGates, f, powers, std::string("G4"));
  CHECK(a.size() == 1066);
  CHECK(a.unique_sequences().size() <= 1066);
  CHECK(germ_power_design(kGates, f, {}).size() == 85);
  std::size_t appended = 0;
  for (const auto& e : a.experiments()) {
    if (e.meta.contains("append")) {
      ++appended;
      CHECK(e.sequence.labels.back() == "G4");
    }
  }
  CHECK(appended == 533);
  CHECK_THROWS_AS(germ_power_design(kGates, f, {0}), Error);
}

TEST_CASE("test design") {
  const auto d = test_design(kGates, 100, 5, 99);
  CHECK(d.size() == 1010);
  std::map<std::string, std::set<int>> lengths;
  for (const auto& e : d.experiments()) {
    CHECK(e.role == Role::kTestPartial);
    const int l = std::stoi(e.meta.at("L"));
    CHECK(static_cast<int>(e.sequence.length()) == l);
    lengths[e.meta.at("base")].insert(l);
  }
  CHECK(lengths.size() == 10);
  for (const auto& [b, ls] : lengths) CHECK(ls.size() == 101);

  const auto small = test_design(kGates, 1, 0, 1);
  CHECK(small.size() == 10);
  for (const auto& e : small.experiments()) CHECK(e.sequence.length() <= 1);

  const auto again = test_design(kGates, 100, 5, 99);
  const auto other = test_design(kGates, 100, 5, 100);
  bool same = true, differs = false;
  for (std::size_t i = 0; i < d.size(); ++i) {
    same = same && d.experiments()[i].sequence == again.experiments()[i].sequence;
    differs = differs || d.experiments()[i].sequence != other.experiments()[i].sequence;
  }
  CHECK(same);
  CHECK(differs);
  CHECK_THROWS_AS(test_design({"G1", "G2"}, 10, 1, 0), Error);
}

TEST_CASE("design identity and ids") {
  ExperimentDesign d;
  CHECK(d.add({"a", Sequence{{"G1"}}, Role::kFid, {}}));
  CHECK_FALSE(d.add({"b", Sequence{{"G1"}}, Role::kFid, {}}));
  CHECK(d.add({"c", Sequence{{"G1"}}, Role::kFidPair, {}}));
  CHECK_THROWS_AS(d.add({"a", Sequence{{"G2"}}, Role::kFid, {}}), Error);
  CHECK(d.size() == 2);
  CHECK(d.unique_sequences().size() == 1);
  for (Role r : {Role::kSpam, Role::kFid, Role::kFidPair, Role::kSandwich, Role::kGermPower, Role::kTestPartial}) {
    CHECK(role_from_name(role_name(r)) == r);
  }
  CHECK_THROWS_AS(role_from_name("BOGUS"), Error);
}

TEST_CASE("completeness diagnostic") {
  const auto t = qubit_targets();
  const auto r = completeness_diagnostic(t, default_fiducials(kGates));
  Matrix expected(4, 4);
  expected << 0, .5, .5, 1, .5, 1, .5, .5, .5, .5, 1, .5, 1, .5, .5, 0;
  CHECK((r.gram - expected).norm() < 1e-14);
  CHECK(r.rank == 4);
  CHECK(r.min_singular_value > 0.1);
  // Identical fiducials: every entry is <<E|rho>>, zero for the ideal targets.
  CHECK(completeness_diagnostic(t, fids({"G1", "G1", "G1", "G1"})).rank <= 1);
  CHECK(completeness_diagnostic(t, fids({"G1", "G1", "G1", "G1"})).rank == 0);
  const auto mixed = noisy_qubit_model({0.0, 0.0, 0.1, 0.0});
  CHECK(completeness_diagnostic(mixed, fids({"G1", "G1", "G1", "G1"})).rank == 1);
  CHECK(completeness_diagnostic(t, fids({"G1", "G4", "G4:G4", "G1"})).rank <= 2);
}

TEST_CASE("fiducial selection") {
  const auto t = qubit_targets();
  const auto four = default_fiducials(kGates);
  CHECK(select_fiducials(t, four, 4).fiducials == four.fiducials);

  const auto dup = fids({"G1", "G2", "G3", "G2", "G4"});
  const auto kept = select_fiducials(t, dup, 4);
  REQUIRE(kept.fiducials.size() == 4);
  const std::set<Sequence> distinct(kept.fiducials.begin(), kept.fiducials.end());
  CHECK(distinct.size() == 4);

  // Six heterogeneous candidates: compare against an independent greedy
  // replay and the exhaustive optimum over all C(6,4) subsets.
  const auto six = fids({"G1", "G2", "G3", "G4", "G2:G3", "G3:G3:G2"});
  const auto chosen = select_fiducials(t, six, 4);
  REQUIRE(chosen.fiducials.size() == 4);

  auto value = [&](const std::vector<Sequence>& s) { return min_sv(model_gram(t, FiducialSet{s})); };
  std::vector<Sequence> cur = six.fiducials;
  while (cur.size() > 4) {
    double best = -1;
    std::size_t drop = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      auto trial = cur;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      const double v = informative_singular_value(model_gram(t, FiducialSet{trial}), 4);
      if (v > best + 1e-12) {
        best = v;
        drop = i;
      }
    }
    cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(drop));
  }
  CHECK(chosen.fiducials == cur);

  double exhaustive = 0;
  for (int mask = 0; mask < 64; ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != 4) continue;
    std::vector<Sequence> s;
    for (int i = 0; i < 6; ++i)
      if (mask & (1 << i)) s.push_back(six.fiducials[static_cast<std::size_t>(i)]);
    exhaustive = std::max(exhaustive, value(s));
  }
  MESSAGE("greedy lambda_min = " << value(chosen.fiducials) << ", exhaustive = " << exhaustive);
  CHECK(value(chosen.fiducials) <= exhaustive + 1e-12);
  CHECK(value(chosen.fiducials) >= 0.5 * exhaustive);

  CHECK_THROWS_AS(select_fiducials(t, fids({"G1", "G1", "G4", "G4:G4", "G1"}), 4), Error);
}
