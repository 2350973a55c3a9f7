// Copyright 2026 The excl Authors
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

#include <optional>
#include <string>

#include <json.hpp>

#include "excl/ensemble.hpp"

// File formats used by the CLI.
//
// Ensemble files:
//   { "dim": d, "subnormalized": false,
//     "states": [ {"label": "1", "prob": 0.5, "matrix": [[[re,im],...],...]}, ... ] }
// With "subnormalized": true the matrices are taken verbatim as the
// weighted operators (prob is informational, conventionally the trace).
//
// Measurement files:
//   { "dim": d, "has_inconclusive": false,
//     "elements": [ {"label": "1", "matrix": ...}, ... ] }
//
// Matrices are row-major nested arrays of [re, im] pairs. Reports are
// written with every double at 17 significant digits so that a written
// report re-parses bit-for-bit.

namespace excl::io {

using json = nlohmann::ordered_json;

struct LoadedEnsemble {
  OperatorSet weighted;              // the operators the SDP layer consumes
  bool subnormalized = false;
  std::optional<Ensemble> ensemble;  // present when the file is a proper ensemble
};

LoadedEnsemble read_ensemble_file(const std::string& path);
Measurement read_measurement_file(const std::string& path);

json matrix_to_json(const ComplexMatrix& m);
json matrix_to_json(const HermitianMatrix& m);
ComplexMatrix matrix_from_json(const json& j, const std::string& path, const std::string& field);

/// Serialize with "%.17g" doubles, 2-space indentation and a trailing
/// newline. Rejects non-finite numbers.
std::string dump_json(const json& j);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace excl::io
