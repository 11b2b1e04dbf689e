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

#include "acausal/circuit.hpp"

#include <algorithm>
#include <set>

namespace acausal {

bool is_standard_gate(const std::string& name) {
  static const std::set<std::string> known{"CSWAP", "CNOT", "X", "SWAP", "F-ORACLE"};
  return known.count(name) > 0;
}

Circuit::Circuit(Subsystems wires) : wires_(std::move(wires)) {
  std::set<std::string> seen;
  for (const auto& w : wires_) {
    if (!seen.insert(w.label).second) throw DuplicateLabel("wire '" + w.label + "'");
  }
}

void Circuit::check_gate(const Gate& g) const {
  std::set<std::string> used;
  std::size_t dt = 1;
  for (const auto& t : g.targets) {
    dt *= find_subsystem(wires_, t).dim;
    if (!used.insert(t).second) throw DuplicateLabel("gate " + g.name + " repeats wire " + t);
  }
  for (const auto& c : g.controls) {
    if (find_subsystem(wires_, c).dim < 2) {
      throw DimensionMismatch("control wire " + c + " is one-dimensional");
    }
    if (!used.insert(c).second) throw DuplicateLabel("gate " + g.name + " repeats wire " + c);
  }
  if (g.matrix.has_value() == g.permutation.has_value()) {
    throw ShapeMismatch("gate " + g.name + " needs exactly one of matrix or permutation");
  }
  if (g.matrix && (static_cast<std::size_t>(g.matrix->rows()) != dt ||
                   static_cast<std::size_t>(g.matrix->cols()) != dt)) {
    throw ShapeMismatch("gate " + g.name + " matrix does not match its targets");
  }
  if (g.permutation) {
    if (g.permutation->size() != dt) {
      throw ShapeMismatch("gate " + g.name + " permutation does not match its targets");
    }
    std::vector<bool> hit(dt, false);
    for (auto p : *g.permutation) {
      if (p >= dt || hit[p]) throw ShapeMismatch("gate " + g.name + " is not a permutation");
      hit[p] = true;
    }
  }
}

Circuit& Circuit::add(Gate gate) {
  check_gate(gate);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::swap(const std::string& a, const std::string& b,
                       std::vector<std::string> controls) {
  const auto da = find_subsystem(wires_, a).dim;
  if (find_subsystem(wires_, b).dim != da) throw DimensionMismatch("SWAP of unequal wires");
  std::vector<std::size_t> perm(da * da);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) perm[i * da + j] = j * da + i;
  }
  Gate g{controls.empty() ? "SWAP" : "CSWAP", std::move(controls), {a, b}, {}, perm, {}};
  return add(std::move(g));
}

Circuit& Circuit::cnot(const std::string& control, const std::string& target) {
  Gate g{"CNOT", {control}, {target}, {}, std::vector<std::size_t>{1, 0}, {}};
  if (find_subsystem(wires_, target).dim != 2) throw DimensionMismatch("CNOT target not a qubit");
  return add(std::move(g));
}

Circuit& Circuit::x(const std::string& target) {
  if (find_subsystem(wires_, target).dim != 2) throw DimensionMismatch("X target not a qubit");
  return add({"X", {}, {target}, {}, std::vector<std::size_t>{1, 0}, {}});
}

Circuit& Circuit::unitary(std::string name, std::vector<std::string> targets, Matrix u,
                          std::optional<std::size_t> party) {
  return add({std::move(name), {}, std::move(targets), std::move(u), {}, party});
}

Circuit& Circuit::append(const Circuit& other) {
  for (const auto& g : other.gates()) add(g);
  return *this;
}

Circuit Circuit::reversed_self_inverse() const {
  Circuit out(wires_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.add(*it);
  return out;
}

std::size_t Circuit::party_queries() const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [](const Gate& g) { return g.party.has_value(); }));
}

void Circuit::apply_gate(const Gate& g, Matrix& states) const {
  const std::size_t n = wires_.size();
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t k = n; k-- > 1;) stride[k - 1] = stride[k] * wires_[k].dim;
  auto index_of = [&](const std::string& label) {
    for (std::size_t k = 0; k < n; ++k) {
      if (wires_[k].label == label) return k;
    }
    throw UnknownLabel(label);
  };
  std::vector<std::size_t> tw, cw;
  for (const auto& t : g.targets) tw.push_back(index_of(t));
  for (const auto& c : g.controls) cw.push_back(index_of(c));

  std::size_t dt = 1;
  for (auto k : tw) dt *= wires_[k].dim;
  std::vector<Eigen::Index> offset(dt);
  for (std::size_t j = 0; j < dt; ++j) {
    std::size_t rem = j;
    std::size_t off = 0;
    for (std::size_t t = tw.size(); t-- > 0;) {
      off += (rem % wires_[tw[t]].dim) * stride[tw[t]];
      rem /= wires_[tw[t]].dim;
    }
    offset[j] = static_cast<Eigen::Index>(off);
  }

  const auto total = static_cast<std::size_t>(states.rows());
  Vector in(static_cast<Eigen::Index>(dt));
  for (std::size_t base = 0; base < total; ++base) {
    bool anchor = true;
    for (auto k : tw) anchor = anchor && (base / stride[k]) % wires_[k].dim == 0;
    for (auto k : cw) anchor = anchor && (base / stride[k]) % wires_[k].dim == 1;
    if (!anchor) continue;
    const auto b = static_cast<Eigen::Index>(base);
    for (Eigen::Index c = 0; c < states.cols(); ++c) {
      for (std::size_t j = 0; j < dt; ++j) in(static_cast<Eigen::Index>(j)) = states(b + offset[j], c);
      if (g.permutation) {
        for (std::size_t j = 0; j < dt; ++j) {
          states(b + offset[(*g.permutation)[j]], c) = in(static_cast<Eigen::Index>(j));
        }
      } else {
        Vector out = (*g.matrix) * in;
        for (std::size_t j = 0; j < dt; ++j) states(b + offset[j], c) = out(static_cast<Eigen::Index>(j));
      }
    }
  }
}

Matrix Circuit::simulate(Matrix states) const {
  if (static_cast<std::size_t>(states.rows()) != dim()) {
    throw DimensionMismatch("state has " + std::to_string(states.rows()) + " rows, circuit has dim " +
                            std::to_string(dim()));
  }
  for (const auto& g : gates_) apply_gate(g, states);
  return states;
}

LabeledOperator Circuit::unitary_matrix(std::size_t budget) const {
  const auto d = dim();
  check_budget(d * d, budget, "circuit unitary");
  const auto n = static_cast<Eigen::Index>(d);
  return LabeledOperator(wires_, simulate(Matrix::Identity(n, n)));
}

}  // namespace acausal
