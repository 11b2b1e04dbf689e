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

#include <vector>

#include "acausal/channel.hpp"
#include "acausal/circuit.hpp"
#include "acausal/pctc.hpp"
#include "acausal/process.hpp"

// The deterministic n-party process built from the one-hot function f, its
// acausal evolution, and the 3n-query causally ordered simulation.
namespace acausal::det {

/// Bits x_0..x_{n-1}. As a basis index x_0 is the most significant bit.
using BitString = std::vector<int>;

std::size_t to_index(const BitString& x);
BitString from_index(std::size_t index, std::size_t n);

/// f(x)_k = x_{k-1} AND NOT x_{k+1} AND ... AND NOT x_{k+n-2}, indices mod n.
BitString f(const BitString& x);
/// f on basis indices.
std::size_t f_index(std::size_t x, std::size_t n);

/// U_{f(x)} = X^{f(x)_0} ⊗ ... ⊗ X^{f(x)_{n-1}} as a basis permutation.
std::size_t flip(std::size_t y, std::size_t mask);

/// Process vector sum_{x,y} |y>_P |x>_{A_O} |y xor f(x)>_{A_I} |x>_F with
/// P, F single 2^n-dimensional factors and qubit slots A<k>. Requires n >= 3.
ProcessMatrix build_det_vector(std::size_t n, std::size_t budget = kDefaultBudget);

/// U_G = sum_x |x><x| R U_{f(x)} for party unitaries R = ⊗ U_k.
Matrix induced_unitary_closed_form(const std::vector<Matrix>& unitaries);

/// Evolution P -> F when the parties apply `unitaries` (closed form).
Channel acausal_evolution(const std::vector<Matrix>& unitaries);
/// Evolution P -> F for arbitrary party channels (contraction with the
/// process vector).
Channel acausal_evolution(const std::vector<Channel>& channels, std::size_t budget = kDefaultBudget);

/// The time-loop circuit: F-ORACLE on (c, s), SWAP c_k <-> s_k, then party k
/// on c_k; each c_k output is teleported back to its input. Party maps act on
/// (ancilla, qubit) when larger than 2x2; ancilla wires are anc<k>.
struct AcausalCircuit {
  Circuit circuit;
  std::vector<pctc::CtcPair> ctc_pairs;
};
AcausalCircuit acausal_circuit(const std::vector<Matrix>& party_unitaries);

struct OrderedSimulation {
  Channel channel;
  Circuit circuit;
  std::size_t party_queries = 0;
  /// Weight left on the nonzero states of the f-register at the end,
  /// maximized over computational-basis inputs.
  double oracle_register_residual = 0.0;
};

/// R, F-ORACLE, R^dagger, CNOTs, R, F-ORACLE with the f-register traced out.
OrderedSimulation ordered_simulation_unitary(const std::vector<Matrix>& unitaries,
                                             std::size_t budget = kDefaultBudget);
/// Same circuit with every party replaced by its Stinespring unitary; the
/// party ancillas are traced out with the f-register.
OrderedSimulation ordered_simulation_general(const std::vector<Channel>& channels,
                                             std::size_t budget = kDefaultBudget);

/// Operator norm of (<z| ⊗ 1) R (1 ⊗ U_{f(y)}) R^dagger (|y> ⊗ 1), where each
/// party map acts on (ancilla, qubit) with the ancilla as the leading factor
/// (a plain qubit unitary has a trivial ancilla).
double orthogonality_element(const std::vector<Matrix>& party_unitaries, const BitString& y,
                             const BitString& z);
/// orthogonality_element(...) < tol.
bool orthogonality_property(const std::vector<Matrix>& party_unitaries, const BitString& y,
                            const BitString& z, double tol = 1e-10);

}  // namespace acausal::det
