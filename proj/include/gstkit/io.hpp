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

#include <filesystem>
#include <string>

#include "gstkit/dataset.hpp"
#include "gstkit/design.hpp"
#include "gstkit/gateset.hpp"

namespace gstkit::io {

// Gate set:  {"dim":2,"basis":"pauli-normalized","rho":[..],"effect":[..],
//             "gates":{"G1":[[..],..],..}}  (matrices row-major; gate order
//             is preserved on write and read)
// Design:    one JSON object per line,
//             {"id":..,"sequence":[..],"role":"SANDWICH","meta":{..}}
// Dataset:   one JSON object per line,
//             {"sequence":[..],"n_plus":..,"n_total":..}, sorted by key

std::string gateset_to_json(const GateSet& gs);
GateSet gateset_from_json(const std::string& text);
void save_gateset(const GateSet& gs, const std::filesystem::path& path);
GateSet load_gateset(const std::filesystem::path& path);

std::string design_to_jsonl(const ExperimentDesign& design);
ExperimentDesign design_from_jsonl(const std::string& text);
void save_design(const ExperimentDesign& design, const std::filesystem::path& path);
ExperimentDesign load_design(const std::filesystem::path& path);

std::string dataset_to_jsonl(const DataSet& ds);
DataSet dataset_from_jsonl(const std::string& text);
void save_dataset(const DataSet& ds, const std::filesystem::path& path);
DataSet load_dataset(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace gstkit::io
