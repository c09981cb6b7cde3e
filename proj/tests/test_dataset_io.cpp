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

#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "gstkit/dataset.hpp"
#include "gstkit/demo.hpp"
#include "gstkit/error.hpp"
#include "gstkit/io.hpp"
#include "gstkit/models.hpp"
#include "gstkit/rng.hpp"

using namespace gstkit;

namespace {

ExperimentDesign single(const Sequence& s) {
  ExperimentDesign d;
  d.add({"x", s, Role::kFid, {}});
  return d;
}

std::filesystem::path tmp(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / "gstkit_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("counter rng") {
  CounterRng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
  CounterRng u(7);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double v = u.uniform();
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
    sum += v;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < 0.01);
  CHECK(stream_key(1, "train") != stream_key(1, "test"));
  CHECK(stream_key(1, "train") != stream_key(2, "train"));
  CHECK(stream_key(1, "train") == stream_key(1, "train"));
}

TEST_CASE("binomial sampling edge cases") {
  const auto t = qubit_targets();
  // p = 0 and p = 1 exactly.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CHECK(simulate_counts(t, single(Sequence{}), 1900, seed).at(Sequence{}).n_plus == 0);
    CHECK(simulate_counts(t, single(Sequence{{"G4"}}), 1900, seed).at(Sequence{{"G4"}}).n_plus == 1900);
  }
  CHECK(sample_binomial(0, 0.3, 1) == 0);
}

TEST_CASE("binomial convergence") {
  const auto t = qubit_targets();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto ds = simulate_counts(t, single(Sequence{{"G2"}}), 1000000, seed);
    CHECK(std::abs(ds.at(Sequence{{"G2"}}).frequency() - 0.5) < 0.0015);
  }
  const auto noisy = noisy_qubit_model({0.01, 0.005, 0.0, 0.0});
  const auto design = lgst_design(qubit_labels(), default_fiducials(qubit_labels()), true);
  const auto ds = simulate_counts(noisy, design, 1000000, 3);
  double worst = 0;
  for (const auto& [key, c] : ds.records()) {
    worst = std::max(worst, std::abs(c.frequency() - sequence_probability(Sequence::from_key(key), noisy)));
  }
  CHECK(worst < 0.005);
}

TEST_CASE("simulation is deterministic and seed dependent") {
  const auto noisy = noisy_qubit_model({0.01, 0.005, 0.0, 0.0});
  const auto design = lgst_design(qubit_labels(), default_fiducials(qubit_labels()), true);
  const auto a = simulate_counts(noisy, design, 1900, 7);
  CHECK(a == simulate_counts(noisy, design, 1900, 7));
  CHECK_FALSE(a == simulate_counts(noisy, design, 1900, 8));
  CHECK(a.size() == design.unique_sequences().size());
}

TEST_CASE("non-physical probabilities are rejected") {
  auto t = qubit_targets();
  Vector e = t.effect();
  e *= 3.0;
  t.set_effect(e);
  try {
    simulate_counts(t, single(Sequence{{"G4"}}), 10, 1);
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kNonPhysical);
  }
}

TEST_CASE("frequencies and merge") {
  CHECK(Counts{950, 1900}.frequency() == 0.5);
  CHECK(Counts{0, 1900}.frequency() == 0.0);
  CHECK(Counts{1900, 1900}.frequency() == 1.0);

  DataSet x, y;
  x.set(Sequence{{"G1"}}, {5, 10});
  x.set(Sequence{{"G2"}}, {1, 4});
  y.set(Sequence{{"G1"}}, {3, 10});
  CHECK(merge(x, DataSet{}) == x);
  CHECK(merge(x, y).at(Sequence{{"G1"}}).n_plus == 8);
  CHECK(merge(x, y).at(Sequence{{"G1"}}).n_total == 20);
  CHECK(merge(x, y) == merge(y, x));
  CHECK(frequencies(x).at("G2") == 0.25);
  try {
    x.at(Sequence{{"G3"}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingData);
  }
}

TEST_CASE("dataset jsonl round trip") {
  const auto noisy = noisy_qubit_model({0.01, 0.005, 0.0, 0.0});
  const auto design = germ_power_design(qubit_labels(), default_fiducials(qubit_labels()), {2, 4});
  const auto ds = simulate_counts(noisy, design, 1900, 11);
  const auto path = tmp("ds.jsonl");
  io::save_dataset(ds, path);
  CHECK(io::load_dataset(path) == ds);
  CHECK(io::dataset_to_jsonl(io::load_dataset(path)) == io::read_file(path));

  CHECK(io::dataset_from_jsonl("").empty());
  CHECK(io::dataset_from_jsonl("{\"sequence\":[\"G1\"],\"n_plus\":1,\"n_total\":10}\n").size() == 1);
  CHECK_THROWS_AS(io::dataset_from_jsonl("{\"sequence\":[\"G1\"],\"n_plus\":11,\"n_total\":10}\n"), Error);
  CHECK_THROWS_AS(io::dataset_from_jsonl("{\"sequence\":[\"G1\"],\"n_plus\":-1,\"n_total\":10}\n"), Error);
  try {
    io::dataset_from_jsonl("{\"sequence\":[\"G1\"],\"n_plus\":1,\"n_total\":10}\nnot json\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(io::load_dataset(tmp("missing.jsonl")), Error);
}

TEST_CASE("design and gate set round trips") {
  const auto design = germ_power_design(qubit_labels(), default_fiducials(qubit_labels()), {2, 4}, std::string("G4"));
  const auto text = io::design_to_jsonl(design);
  const auto back = io::design_from_jsonl(text);
  REQUIRE(back.size() == design.size());
  for (std::size_t i = 0; i < design.size(); ++i) {
    CHECK(back.experiments()[i].id == design.experiments()[i].id);
    CHECK(back.experiments()[i].sequence == design.experiments()[i].sequence);
    CHECK(back.experiments()[i].role == design.experiments()[i].role);
    CHECK(back.experiments()[i].meta == design.experiments()[i].meta);
  }
  CHECK(io::design_to_jsonl(back) == text);

  const auto gs = random_qubit_gateset(3, 4, 0.1);
  const auto loaded = io::gateset_from_json(io::gateset_to_json(gs));
  CHECK(loaded.labels() == gs.labels());
  CHECK((loaded.rho() - gs.rho()).norm() == 0.0);
  CHECK((loaded.effect() - gs.effect()).norm() == 0.0);
  for (std::size_t i = 0; i < gs.num_gates(); ++i) CHECK((loaded.gate(i) - gs.gate(i)).norm() == 0.0);
  CHECK_THROWS_AS(io::gateset_from_json("{\"dim\":2}"), Error);
}
