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

#include "acausal/json_io.hpp"

#include <fstream>
#include <sstream>

namespace acausal::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ParseError(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

// Library errors raised while building objects from parsed data are input
// errors from the caller's point of view.
template <typename F>
auto as_parse_error(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex numbers are [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError("matrix must be a list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("matrix rows have different lengths");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("vector must be a list");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

json to_json(const Subsystems& s) {
  json out = json::array();
  for (const auto& sub : s) out.push_back({{"label", sub.label}, {"dim", sub.dim}});
  return out;
}

Subsystems subsystems_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("subsystems must be a list");
  Subsystems out;
  for (const auto& e : j) {
    const auto& label = field(e, "label");
    if (!label.is_string()) throw ParseError("subsystem label must be a string");
    out.push_back({label.get<std::string>(), size_field(e, "dim")});
  }
  return out;
}

json to_json(const StateVector& psi) {
  return {{"format", "state"},
          {"subsystems", to_json(psi.subsystems())},
          {"amplitudes", vector_to_json(psi.amplitudes())}};
}

StateVector state_from_json(const json& j) {
  return as_parse_error([&] {
    return StateVector(subsystems_from_json(field(j, "subsystems")),
                       vector_from_json(field(j, "amplitudes")));
  });
}

json to_json(const LabeledOperator& op) {
  return {{"format", "operator"},
          {"rows", to_json(op.rows())},
          {"cols", to_json(op.cols())},
          {"matrix", to_json(op.data())}};
}

LabeledOperator operator_from_json(const json& j) {
  return as_parse_error([&] {
    return LabeledOperator(subsystems_from_json(field(j, "rows")),
                           subsystems_from_json(field(j, "cols")), matrix_from_json(field(j, "matrix")));
  });
}

json to_json(const Channel& c) {
  json kraus = json::array();
  for (const auto& k : c.kraus()) kraus.push_back(to_json(k));
  return {{"in_dim", c.in_dim()}, {"out_dim", c.out_dim()}, {"kraus", std::move(kraus)}};
}

Channel channel_from_json(const json& j) {
  return as_parse_error([&] {
    std::vector<Matrix> kraus;
    const auto& list = field(j, "kraus");
    if (!list.is_array()) throw ParseError("kraus must be a list of matrices");
    for (const auto& k : list) kraus.push_back(matrix_from_json(k));
    return Channel(size_field(j, "in_dim"), size_field(j, "out_dim"), std::move(kraus));
  });
}

pctc::PctcSpec pctc_spec_from_json(const json& j) {
  auto op = operator_from_json(j);
  std::vector<pctc::CtcPair> pairs;
  const auto& list = field(j, "ctc_pairs");
  if (!list.is_array()) throw ParseError("ctc_pairs must be a list");
  for (const auto& p : list) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
      throw ParseError("each ctc pair is [output label, input label]");
    }
    pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return {std::move(op), std::move(pairs)};
}

json to_json(const ProcessMatrix& w) {
  json slots = json::array();
  json order = json::array({"P"});
  for (std::size_t k = 0; k < w.slots().size(); ++k) {
    slots.push_back({{"in", w.slots()[k].input.dim}, {"out", w.slots()[k].output.dim}});
    order.push_back("AI" + std::to_string(k));
    order.push_back("AO" + std::to_string(k));
  }
  order.push_back("F");
  json out = {{"format", "process"},
              {"dims", {{"P", w.past_dim()}, {"F", w.future_dim()}, {"slots", std::move(slots)}}},
              {"order", std::move(order)}};
  const auto canonical = labels_of(w.canonical_order());
  if (w.is_pure()) {
    out["vector"] = vector_to_json(w.vector().permuted(canonical).amplitudes());
  } else {
    out["matrix"] = to_json(w.matrix().permuted(canonical, canonical).data());
  }
  return out;
}

ProcessMatrix process_from_json(const json& j) {
  return as_parse_error([&] {
    const auto& fmt = field(j, "format");
    if (!fmt.is_string() || fmt.get<std::string>() != "process") {
      throw ParseError("expected \"format\": \"process\"");
    }
    const auto& dims = field(j, "dims");
    const std::size_t dp = size_field(dims, "P");
    const std::size_t df = size_field(dims, "F");
    const auto& slot_list = field(dims, "slots");
    if (!slot_list.is_array()) throw ParseError("dims.slots must be a list");
    std::vector<Slot> slots;
    Subsystems canonical{{"P", dp}};
    for (std::size_t k = 0; k < slot_list.size(); ++k) {
      const auto id = std::to_string(k);
      slots.push_back({"A" + id, {"AI" + id, size_field(slot_list[k], "in")},
                       {"AO" + id, size_field(slot_list[k], "out")}});
      canonical.push_back(slots.back().input);
      canonical.push_back(slots.back().output);
    }
    canonical.push_back({"F", df});
    if (j.contains("order")) {
      const auto& order = j.at("order");
      if (!order.is_array() || order.size() != canonical.size()) {
        throw ParseError("order does not list every factor");
      }
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (!order[i].is_string() || order[i].get<std::string>() != canonical[i].label) {
          throw ParseError("order must be P, AI0, AO0, ..., F");
        }
      }
    }
    const bool has_vector = j.contains("vector");
    if (has_vector == j.contains("matrix")) {
      throw ParseError("process needs exactly one of \"vector\" or \"matrix\"");
    }
    if (has_vector) {
      return ProcessMatrix::pure({{"P", dp}}, {{"F", df}}, std::move(slots),
                                 StateVector(canonical, vector_from_json(j.at("vector"))));
    }
    Matrix m = matrix_from_json(j.at("matrix"));
    if (static_cast<std::size_t>(m.rows()) != total_dim(canonical) ||
        static_cast<std::size_t>(m.cols()) != total_dim(canonical)) {
      throw ParseError("process matrix does not match the declared dims");
    }
    return ProcessMatrix::mixed({{"P", dp}}, {{"F", df}}, std::move(slots),
                                LabeledOperator(canonical, std::move(m)));
  });
}

json to_json(const ValidityReport& r) {
  json per = json::array();
  for (const auto& d : r.per_sample) per.push_back({{"tp", d.tp}, {"probability", d.probability}});
  json out = {{"valid", r.valid},
              {"samples", r.samples},
              {"max_tp_deviation", r.max_tp_deviation},
              {"max_probability_deviation", r.max_probability_deviation},
              {"expected_probability", r.expected_probability}};
  if (r.psd_floor) out["psd_floor"] = *r.psd_floor;
  if (r.basis_terms) out["basis_terms"] = *r.basis_terms;
  if (r.basis_max_deviation) out["basis_max_deviation"] = *r.basis_max_deviation;
  out["per_sample"] = std::move(per);
  return out;
}

json to_json(const Circuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates()) {
    json e = {{"name", g.name}, {"controls", g.controls}, {"targets", g.targets}};
    if (g.party) e["party"] = *g.party;
    if (!is_standard_gate(g.name)) {
      if (g.matrix) {
        e["matrix"] = to_json(*g.matrix);
      } else {
        e["permutation"] = *g.permutation;
      }
    }
    gates.push_back(std::move(e));
  }
  return {{"wires", to_json(c.wires())}, {"gates", std::move(gates)}};
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace acausal::io
