// Copyright 2026 The acausal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "json.hpp"

#include "acausal/channel.hpp"
#include "acausal/circuit.hpp"
#include "acausal/pctc.hpp"
#include "acausal/process.hpp"

// JSON encodings. Complex numbers are [re, im]; matrices are arrays of rows.
// Every *_from_json throws ParseError on malformed input.
namespace acausal::io {

using json = nlohmann::ordered_json;

json to_json(Complex z);
Complex complex_from_json(const json& j);

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

json to_json(const Subsystems& s);
Subsystems subsystems_from_json(const json& j);

/// {"format": "state", "subsystems": [...], "amplitudes": [...]}
json to_json(const StateVector& psi);
StateVector state_from_json(const json& j);

/// {"format": "operator", "rows": [...], "cols": [...], "matrix": [...]}
json to_json(const LabeledOperator& op);
LabeledOperator operator_from_json(const json& j);

/// {"in_dim", "out_dim", "kraus": [...]}
json to_json(const Channel& c);
Channel channel_from_json(const json& j);

/// Operator file with an extra "ctc_pairs": [[out, in], ...].
pctc::PctcSpec pctc_spec_from_json(const json& j);

/// {"format": "process", "dims": {"P", "F", "slots": [{"in", "out"}]},
///  "order": ["P", "AI0", "AO0", ..., "F"], "vector" | "matrix"}.
/// Past and future factors are merged into single factors P and F; slots are
/// renamed A<k>.
json to_json(const ProcessMatrix& w);
ProcessMatrix process_from_json(const json& j);

json to_json(const ValidityReport& r);

/// {"wires": [{"label", "dim"}], "gates": [{"name", "controls", "targets",
/// "party"?, "matrix"?}]}; standard gate names carry no matrix.
json to_json(const Circuit& c);

/// Parses text, mapping syntax errors to ParseError.
json parse(const std::string& text);
json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace acausal::io
