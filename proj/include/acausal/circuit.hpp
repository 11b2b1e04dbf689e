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

#include <optional>
#include <string>
#include <vector>

#include "acausal/errors.hpp"
#include "acausal/tensor.hpp"

namespace acausal {

/// A gate acting on `targets`, conditioned on every control wire holding |1>.
/// The action is either a dense matrix or a basis permutation (out = perm[in])
/// over the target factors in the listed order.
struct Gate {
  std::string name;
  std::vector<std::string> controls;
  std::vector<std::string> targets;
  std::optional<Matrix> matrix;
  std::optional<std::vector<std::size_t>> permutation;
  /// Set when the gate is one use of a party's operation.
  std::optional<std::size_t> party;
};

/// Gate names whose action is implied by the name; they are written without
/// a matrix.
bool is_standard_gate(const std::string& name);

/// Straight-line circuit over labeled wires; the basis index is big-endian in
/// wire order.
class Circuit {
 public:
  explicit Circuit(Subsystems wires);

  const Subsystems& wires() const { return wires_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t dim() const { return total_dim(wires_); }

  Circuit& add(Gate gate);
  Circuit& swap(const std::string& a, const std::string& b,
                std::vector<std::string> controls = {});
  Circuit& cnot(const std::string& control, const std::string& target);
  Circuit& x(const std::string& target);
  Circuit& unitary(std::string name, std::vector<std::string> targets, Matrix u,
                   std::optional<std::size_t> party = std::nullopt);
  /// Appends the gates of `other` (same wires) in order.
  Circuit& append(const Circuit& other);
  /// Gates in reverse order; each gate must be self-inverse.
  Circuit reversed_self_inverse() const;

  std::size_t party_queries() const;

  /// Runs every column of `states` (dim() rows) through the circuit.
  Matrix simulate(Matrix states) const;
  /// Full unitary; throws ResourceLimit when dim()^2 exceeds `budget`.
  LabeledOperator unitary_matrix(std::size_t budget = kDefaultBudget) const;

 private:
  void check_gate(const Gate& g) const;
  void apply_gate(const Gate& g, Matrix& states) const;

  Subsystems wires_;
  std::vector<Gate> gates_;
};

}  // namespace acausal
