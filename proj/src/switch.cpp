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

#include "acausal/switch.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace acausal::qswitch {

namespace {

std::size_t mul_sat(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

std::size_t pow_sat(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r = mul_sat(r, base);
  return r;
}

void require_size(std::size_t n, std::size_t d) {
  if (n < 2) throw OutOfRange("the switch needs at least 2 parties");
  if (d < 2) throw OutOfRange("target dimension must be at least 2");
}

// Amplitudes of v with the `fixed` factors set to the given values, over the
// remaining factors in `rest` order.
Vector restrict(const StateVector& v, const std::vector<std::pair<std::string, std::size_t>>& fixed,
                const std::vector<std::string>& rest) {
  std::vector<std::string> order;
  std::size_t offset = 0;
  for (const auto& [label, value] : fixed) {
    order.push_back(label);
    offset = offset * find_subsystem(v.subsystems(), label).dim + value;
  }
  std::size_t rest_dim = 1;
  for (const auto& label : rest) {
    order.push_back(label);
    rest_dim *= find_subsystem(v.subsystems(), label).dim;
  }
  auto p = v.permuted(order);
  return p.amplitudes().segment(static_cast<Eigen::Index>(offset * rest_dim),
                                static_cast<Eigen::Index>(rest_dim));
}

std::vector<std::string> target_and_slot_labels(std::size_t n) {
  std::vector<std::string> out{"P2"};
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back("AI" + std::to_string(k));
    out.push_back("AO" + std::to_string(k));
  }
  out.push_back("F2");
  return out;
}

}  // namespace

std::vector<int> FactoradicCode::flat_bits() const {
  std::vector<int> out;
  for (const auto& stage : bits) out.insert(out.end(), stage.begin(), stage.end());
  return out;
}

std::size_t factorial(std::size_t n) {
  std::size_t r = 1;
  for (std::size_t k = 2; k <= n; ++k) r = mul_sat(r, k);
  return r;
}

FactoradicCode encode_permutation(std::size_t n, std::size_t s) {
  if (n == 0 || s >= factorial(n)) {
    throw OutOfRange("s = " + std::to_string(s) + " is not below " + std::to_string(n) + "!");
  }
  FactoradicCode code;
  code.n = n;
  code.s = s;
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t a = (s / factorial(k)) % (k + 1);
    code.digits.push_back(a);
    std::vector<int> stage(k);
    for (std::size_t i = 1; i <= k; ++i) stage[i - 1] = i <= a ? 1 : 0;
    code.bits.push_back(std::move(stage));
  }
  return code;
}

std::size_t decode(const FactoradicCode& code) {
  std::size_t s = 0;
  for (std::size_t k = 1; k <= code.digits.size(); ++k) {
    if (code.digits[k - 1] > k) {
      throw OutOfRange("factoradic digit a_" + std::to_string(k) + " exceeds " + std::to_string(k));
    }
    s += code.digits[k - 1] * factorial(k);
  }
  return s;
}

std::string control_label(std::size_t k, std::size_t i) {
  return "b" + std::to_string(k) + "_" + std::to_string(i);
}

std::size_t control_qubits(std::size_t n) { return n * (n - 1) / 2; }

std::vector<std::size_t> staircase_order(std::size_t n, const std::vector<int>& flat_bits) {
  if (flat_bits.size() != control_qubits(n)) {
    throw DimensionMismatch("expected " + std::to_string(control_qubits(n)) + " control bits");
  }
  std::vector<std::size_t> at(n);
  std::iota(at.begin(), at.end(), 0);
  std::size_t b = 0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 1; i <= k; ++i, ++b) {
      if (flat_bits[b]) std::swap(at[k - i], at[k - i + 1]);
    }
  }
  return at;
}

std::vector<std::size_t> order_of(std::size_t n, std::size_t s) {
  return staircase_order(n, encode_permutation(n, s).flat_bits());
}

SwitchProcess build_switch_vector(std::size_t n, std::size_t d, std::size_t budget) {
  require_size(n, d);
  const std::size_t nf = factorial(n);
  const std::size_t length = mul_sat(mul_sat(mul_sat(nf, nf), d * d), pow_sat(d, 2 * n));
  check_budget(length, budget, "switch process vector");

  auto slots = standard_slots(n, d);
  Subsystems past{{"P1", nf}, {"P2", d}};
  Subsystems future{{"F1", nf}, {"F2", d}};

  // Canonical order: P1, P2, (AI0, AO0), ..., F1, F2.
  std::vector<std::size_t> ai_stride(n), ao_stride(n);
  std::size_t stride = 1;
  const std::size_t f2_stride = stride;
  stride *= d;
  const std::size_t f1_stride = stride;
  stride *= nf;
  for (std::size_t k = n; k-- > 0;) {
    ao_stride[k] = stride;
    stride *= d;
    ai_stride[k] = stride;
    stride *= d;
  }
  const std::size_t p2_stride = stride;
  stride *= d;
  const std::size_t p1_stride = stride;

  Vector amp = Vector::Zero(static_cast<Eigen::Index>(length));
  std::vector<std::vector<std::size_t>> orders;
  std::vector<std::size_t> v(n + 1);
  for (std::size_t s = 0; s < nf; ++s) {
    const auto order = order_of(n, s);
    std::fill(v.begin(), v.end(), 0);
    while (true) {
      std::size_t idx = s * p1_stride + s * f1_stride + v[0] * p2_stride + v[n] * f2_stride;
      for (std::size_t j = 0; j < n; ++j) {
        idx += v[j] * ai_stride[order[j]] + v[j + 1] * ao_stride[order[j]];
      }
      amp(static_cast<Eigen::Index>(idx)) = 1.0;
      std::size_t j = n + 1;
      while (j-- > 0) {
        if (++v[j] < d) break;
        v[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
    orders.push_back(order);
  }

  Subsystems canonical = past;
  for (const auto& sl : slots) {
    canonical.push_back(sl.input);
    canonical.push_back(sl.output);
  }
  canonical.insert(canonical.end(), future.begin(), future.end());
  auto process = ProcessMatrix::pure(past, future, slots, StateVector(canonical, std::move(amp)));
  return SwitchProcess{n, d, std::move(process), std::move(orders)};
}

SwitchCircuit build_switch_circuit(std::size_t n, std::size_t d, std::size_t budget) {
  require_size(n, d);
  const std::size_t box_dim = mul_sat(pow_sat(d, n + 1), pow_sat(2, control_qubits(n)));
  check_budget(mul_sat(box_dim, box_dim), budget, "switch circuit unitary");

  Subsystems wires;
  for (std::size_t k = 0; k < n; ++k) wires.push_back({"w" + std::to_string(k), d});
  wires.push_back({"t", d});
  std::vector<std::string> controls;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 1; i <= k; ++i) {
      controls.push_back(control_label(k, i));
      wires.push_back({controls.back(), 2});
    }
  }
  auto w = [](std::size_t k) { return "w" + std::to_string(k); };

  Circuit network(wires);
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 1; i <= k; ++i) network.swap(w(k - i), w(k - i + 1), {control_label(k, i)});
  }
  Circuit circuit = network;
  circuit.swap(w(n - 1), "t");
  for (std::size_t k = n - 1; k-- > 0;) circuit.swap(w(k), w(k + 1));
  circuit.append(network.reversed_self_inverse());

  const auto u = circuit.unitary_matrix(budget);
  Subsystems rows, cols;
  std::vector<pctc::CtcPair> pairs;
  for (std::size_t k = 0; k < n; ++k) {
    const auto id = std::to_string(k);
    cols.push_back({"AO" + id, d});
    rows.push_back({"AI" + id, d});
    pairs.emplace_back("AI" + id, "AO" + id);
  }
  cols.push_back({"P2", d});
  rows.push_back({"F2", d});
  for (const auto& c : controls) {
    cols.push_back({"P" + c, 2});
    rows.push_back({"F" + c, 2});
  }
  return SwitchCircuit{n, d, std::move(circuit), LabeledOperator(rows, cols, u.data()),
                       std::move(pairs)};
}

ProcessMatrix circuit_process(const SwitchCircuit& c) {
  Subsystems past, future;
  for (std::size_t k = 1; k < c.n; ++k) {
    for (std::size_t i = 1; i <= k; ++i) {
      past.push_back({"P" + control_label(k, i), 2});
      future.push_back({"F" + control_label(k, i), 2});
    }
  }
  past.push_back({"P2", c.d});
  future.push_back({"F2", c.d});
  return ProcessMatrix::pure(past, future, standard_slots(c.n, c.d), double_ket(c.box));
}

double check_switch_equivalence(std::size_t n, std::size_t d, std::size_t budget) {
  const auto vec = build_switch_vector(n, d, budget);
  const auto circ = build_switch_circuit(n, d, budget);
  const auto cproc = circuit_process(circ);
  const auto rest = target_and_slot_labels(n);
  double worst = 0.0;
  for (std::size_t s = 0; s < factorial(n); ++s) {
    const auto bits = encode_permutation(n, s).flat_bits();
    std::vector<std::pair<std::string, std::size_t>> fixed;
    std::size_t b = 0;
    for (std::size_t k = 1; k < n; ++k) {
      for (std::size_t i = 1; i <= k; ++i, ++b) {
        fixed.emplace_back("P" + control_label(k, i), static_cast<std::size_t>(bits[b]));
        fixed.emplace_back("F" + control_label(k, i), static_cast<std::size_t>(bits[b]));
      }
    }
    const Vector from_circuit = restrict(cproc.vector(), fixed, rest);
    const Vector from_vector = restrict(vec.process.vector(), {{"P1", s}, {"F1", s}}, rest);
    worst = std::max(worst, phase_aligned_distance(from_circuit, from_vector));
  }
  return worst;
}

}  // namespace acausal::qswitch
