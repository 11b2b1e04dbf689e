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

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace acausal;
using namespace acausal::testing;

namespace {

Matrix p0() { return (Matrix(2, 2) << 1, 0, 0, 0).finished(); }
Matrix p1() { return (Matrix(2, 2) << 0, 0, 0, 1).finished(); }

Matrix swap2() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
  return s;
}

}  // namespace

TEST(Circuit, cnot_and_x_match_kron_oracle) {
  Circuit c({{"a", 2}, {"b", 2}, {"c", 2}});
  c.cnot("c", "a").x("b");
  Matrix cnot = naive_kron({eye(2), eye(2), p0()}) + naive_kron({pauli_x(), eye(2), p1()});
  Matrix expected = naive_kron({eye(2), pauli_x(), eye(2)}) * cnot;
  EXPECT_LT((c.unitary_matrix().data() - expected).norm(), 1e-15);
}

TEST(Circuit, controlled_swap_matches_oracle) {
  Circuit c({{"q", 2}, {"a", 2}, {"b", 2}});
  c.swap("a", "b", {"q"});
  Matrix expected = naive_kron(p0(), eye(4)) + naive_kron(p1(), swap2());
  EXPECT_LT((c.unitary_matrix().data() - expected).norm(), 1e-15);
  EXPECT_EQ(c.gates()[0].name, "CSWAP");
}

TEST(Circuit, qutrit_swap_on_non_adjacent_wires) {
  Circuit c({{"a", 3}, {"m", 2}, {"b", 3}});
  c.swap("a", "b");
  const Matrix u = c.unitary_matrix().data();
  for (int a = 0; a < 3; ++a)
    for (int m = 0; m < 2; ++m)
      for (int b = 0; b < 3; ++b) EXPECT_EQ(u(b * 6 + m * 3 + a, a * 6 + m * 3 + b), Complex(1.0));
}

TEST(Circuit, dense_gate_respects_target_order) {
  Rng rng(1);
  Matrix g = haar_unitary(rng, 4);
  Circuit c({{"a", 2}, {"b", 2}});
  c.unitary("G", {"b", "a"}, g);
  EXPECT_LT((c.unitary_matrix().data() - swap2() * g * swap2()).norm(), 1e-14);
}

TEST(Circuit, simulate_columns_equals_unitary_columns) {
  Rng rng(2);
  Circuit c({{"a", 2}, {"b", 3}});
  c.unitary("G", {"b"}, haar_unitary(rng, 3), 0).unitary("H", {"a", "b"}, haar_unitary(rng, 6), 1);
  Matrix states = random_matrix(rng, 6, 3);
  EXPECT_LT((c.simulate(states) - c.unitary_matrix().data() * states).norm(), 1e-13);
  EXPECT_EQ(c.party_queries(), 2u);
}

TEST(Circuit, reversed_self_inverse_undoes_network) {
  Circuit c({{"q", 2}, {"a", 2}, {"b", 2}, {"e", 2}});
  c.swap("a", "b", {"q"}).swap("b", "e", {"q"}).cnot("q", "a");
  Circuit both = c;
  both.append(c.reversed_self_inverse());
  EXPECT_LT((both.unitary_matrix().data() - eye(16)).norm(), 1e-15);
}

TEST(Circuit, gate_validation) {
  Circuit c({{"a", 2}, {"b", 3}});
  EXPECT_THROW(c.swap("a", "b"), DimensionMismatch);
  EXPECT_THROW(c.unitary("G", {"a"}, eye(3)), ShapeMismatch);
  EXPECT_THROW(c.unitary("G", {"zz"}, eye(2)), UnknownLabel);
  EXPECT_THROW(c.add({"P", {}, {"a"}, {}, std::vector<std::size_t>{0, 0}, {}}), ShapeMismatch);
  EXPECT_THROW(c.add({"P", {"a"}, {"a"}, eye(2), {}, {}}), DuplicateLabel);
  EXPECT_THROW(Circuit({{"a", 2}, {"a", 2}}), DuplicateLabel);
  EXPECT_THROW(c.unitary_matrix(10), ResourceLimit);
}

TEST(Circuit, standard_gate_names) {
  for (const char* name : {"CSWAP", "CNOT", "X", "SWAP", "F-ORACLE"}) EXPECT_TRUE(is_standard_gate(name));
  EXPECT_FALSE(is_standard_gate("U0"));
}
