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
#include <vector>

#include "acausal/circuit.hpp"
#include "acausal/pctc.hpp"
#include "acausal/process.hpp"

// The n-party quantum switch: the coherent superposition of all n! orders of
// the parties, as a process vector and as a controlled-SWAP circuit.
namespace acausal::qswitch {

/// s in the factoradic basis, s = sum_k a_k k!, plus its unary expansion
/// b_{k,i} = [i <= a_k].
struct FactoradicCode {
  std::size_t n = 0;
  std::size_t s = 0;
  /// digits[k - 1] = a_k for k = 1..n-1.
  std::vector<std::size_t> digits;
  /// bits[k - 1][i - 1] = b_{k,i} for 1 <= i <= k.
  std::vector<std::vector<int>> bits;

  /// Unary bits in register order b_{1,1}, b_{2,1}, b_{2,2}, b_{3,1}, ...
  std::vector<int> flat_bits() const;
};

std::size_t factorial(std::size_t n);

/// Throws OutOfRange unless s < n!.
FactoradicCode encode_permutation(std::size_t n, std::size_t s);
/// Throws OutOfRange for a digit a_k > k.
std::size_t decode(const FactoradicCode& code);

/// Wire label of the unary control bit b_{k,i}.
std::string control_label(std::size_t k, std::size_t i);
/// Number of unary control qubits, n(n-1)/2.
std::size_t control_qubits(std::size_t n);

/// Order realized by the SWAP staircase for arbitrary control bits (register
/// order): entry j is the party acting at time step j.
std::vector<std::size_t> staircase_order(std::size_t n, const std::vector<int>& flat_bits);
/// order_of(n, s) = staircase_order(n, encode_permutation(n, s).flat_bits()).
std::vector<std::size_t> order_of(std::size_t n, std::size_t s);

struct SwitchProcess {
  std::size_t n = 0;
  std::size_t d = 0;
  /// Past (P1: n!, P2: d), future (F1: n!, F2: d), slots A<k>.
  ProcessMatrix process;
  /// orders[s][j] = party at step j for control value s.
  std::vector<std::vector<std::size_t>> orders;
};

/// Throws ResourceLimit when the vector length exceeds `budget`.
SwitchProcess build_switch_vector(std::size_t n, std::size_t d, std::size_t budget = kDefaultBudget);

struct SwitchCircuit {
  std::size_t n = 0;
  std::size_t d = 0;
  /// Wires w<k> (party k), t (target), then the unary controls.
  Circuit circuit;
  /// Box unitary: cols (AO<k>..., P2, P<b>...), rows (AI<k>..., F2, F<b>...).
  LabeledOperator box;
  /// Teleportation loops closing each party wire, (row label, col label).
  std::vector<pctc::CtcPair> ctc_pairs;
};

/// Throws ResourceLimit when the box unitary exceeds `budget` entries.
SwitchCircuit build_switch_circuit(std::size_t n, std::size_t d, std::size_t budget = kDefaultBudget);

/// Process vector |U>> of the box with past (P<b>..., P2) and future
/// (F<b>..., F2).
ProcessMatrix circuit_process(const SwitchCircuit& c);

/// Largest phase-aligned distance, over all s, between the circuit process
/// restricted to control |b(s)> and the switch vector restricted to |s>.
double check_switch_equivalence(std::size_t n, std::size_t d, std::size_t budget = kDefaultBudget);

}  // namespace acausal::qswitch
