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

#include "gstkit/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gstkit/error.hpp"

namespace gstkit::io {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json vec_to_json(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vector vec_from_json(const ordered_json& a, Eigen::Index n, const char* what) {
  if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != n) {
    fail(ErrorCode::kParse, std::string(what) + " must be an array of " + std::to_string(n) + " numbers");
  }
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!a[static_cast<std::size_t>(i)].is_number()) fail(ErrorCode::kParse, std::string(what) + " has a non-numeric entry");
    v(i) = a[static_cast<std::size_t>(i)].get<double>();
  }
  return v;
}

ordered_json sequence_to_json(const Sequence& s) {
  ordered_json a = ordered_json::array();
  for (const auto& l : s.labels) a.push_back(l);
  return a;
}

Sequence sequence_from_json(const ordered_json& a) {
  if (!a.is_array()) fail(ErrorCode::kParse, "sequence must be an array of labels");
  Sequence s;
  for (const auto& l : a) {
    if (!l.is_string() || l.get<std::string>().empty()) fail(ErrorCode::kParse, "sequence labels must be non-empty strings");
    const auto label = l.get<std::string>();
    if (label.find(':') != std::string::npos) fail(ErrorCode::kParse, "sequence label '" + label + "' contains ':'");
    s.labels.push_back(label);
  }
  return s;
}

template <class F>
void for_each_line(const std::string& text, F&& f) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const json::exception& e) {
      fail(ErrorCode::kParse, "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!j.is_object()) fail(ErrorCode::kParse, "line " + std::to_string(lineno) + ": expected a JSON object");
    try {
      f(j);
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
    } catch (const json::exception& e) {
      fail(ErrorCode::kParse, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace

std::string gateset_to_json(const GateSet& gs) {
  ordered_json j;
  j["dim"] = gs.dim();
  j["basis"] = gs.basis()->name();
  j["rho"] = vec_to_json(gs.rho());
  j["effect"] = vec_to_json(gs.effect());
  ordered_json gates = ordered_json::object();
  for (std::size_t k = 0; k < gs.num_gates(); ++k) {
    const Matrix& m = gs.gate(k);
    ordered_json rows = ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vec_to_json(m.row(r).transpose()));
    gates[gs.labels()[k]] = rows;
  }
  j["gates"] = gates;
  return j.dump(2) + "\n";
}

GateSet gateset_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("gate set: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("dim") || !j.contains("rho") || !j.contains("effect") || !j.contains("gates")) {
      fail(ErrorCode::kParse, "gate set needs dim, rho, effect and gates");
    }
    const int dim = j["dim"].get<int>();
    const auto basis = pauli_basis(dim);
    if (j.contains("basis") && j["basis"].get<std::string>() != basis->name()) {
      fail(ErrorCode::kParse, "unsupported basis '" + j["basis"].get<std::string>() + "'");
    }
    const int n = basis->size();
    StateVector rho{vec_from_json(j["rho"], n, "rho"), basis};
    EffectVector eff{vec_from_json(j["effect"], n, "effect"), basis};
    std::vector<std::pair<std::string, SuperOperator>> gates;
    if (!j["gates"].is_object()) fail(ErrorCode::kParse, "gates must be an object");
    for (const auto& [label, rows] : j["gates"].items()) {
      if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
        fail(ErrorCode::kParse, "gate '" + label + "' must have " + std::to_string(n) + " rows");
      }
      Matrix m(n, n);
      for (int r = 0; r < n; ++r) m.row(r) = vec_from_json(rows[static_cast<std::size_t>(r)], n, "gate row").transpose();
      gates.emplace_back(label, SuperOperator{m, basis});
    }
    return GateSet(std::move(rho), std::move(eff), std::move(gates));
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("gate set: ") + e.what());
  }
}

std::string design_to_jsonl(const ExperimentDesign& design) {
  std::string out;
  for (const auto& e : design.experiments()) {
    ordered_json j;
    j["id"] = e.id;
    j["sequence"] = sequence_to_json(e.sequence);
    j["role"] = role_name(e.role);
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : e.meta) meta[k] = v;
    j["meta"] = meta;
    out += j.dump() + "\n";
  }
  return out;
}

ExperimentDesign design_from_jsonl(const std::string& text) {
  ExperimentDesign d;
  for_each_line(text, [&](const ordered_json& j) {
    Experiment e;
    e.id = j.at("id").get<std::string>();
    e.sequence = sequence_from_json(j.at("sequence"));
    e.role = role_from_name(j.at("role").get<std::string>());
    if (j.contains("meta")) {
      for (const auto& [k, v] : j["meta"].items()) e.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    if (!d.add(std::move(e))) fail(ErrorCode::kParse, "duplicate experiment");
  });
  return d;
}

std::string dataset_to_jsonl(const DataSet& ds) {
  std::string out;
  for (const auto& [key, c] : ds.records()) {
    ordered_json j;
    j["sequence"] = sequence_to_json(Sequence::from_key(key));
    j["n_plus"] = c.n_plus;
    j["n_total"] = c.n_total;
    out += j.dump() + "\n";
  }
  return out;
}

DataSet dataset_from_jsonl(const std::string& text) {
  DataSet ds;
  for_each_line(text, [&](const ordered_json& j) {
    const auto seq = sequence_from_json(j.at("sequence"));
    const Counts c{j.at("n_plus").get<long long>(), j.at("n_total").get<long long>()};
    if (ds.contains(seq)) fail(ErrorCode::kParse, "duplicate record for sequence '" + seq.key() + "'");
    try {
      ds.set(seq, c);
    } catch (const Error& e) {
      fail(ErrorCode::kParse, e.what());
    }
  });
  return ds;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) fail(ErrorCode::kIo, "write to '" + path.string() + "' failed");
}

void save_gateset(const GateSet& gs, const std::filesystem::path& path) { write_file(path, gateset_to_json(gs)); }
GateSet load_gateset(const std::filesystem::path& path) { return gateset_from_json(read_file(path)); }
void save_design(const ExperimentDesign& d, const std::filesystem::path& path) { write_file(path, design_to_jsonl(d)); }
ExperimentDesign load_design(const std::filesystem::path& path) { return design_from_jsonl(read_file(path)); }
void save_dataset(const DataSet& ds, const std::filesystem::path& path) { write_file(path, dataset_to_jsonl(ds)); }
DataSet load_dataset(const std::filesystem::path& path) { return dataset_from_jsonl(read_file(path)); }

}  // namespace gstkit::io
