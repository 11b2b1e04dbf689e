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

#include "gtest/gtest.h"

#include "acausal/det_process.hpp"
#include "acausal/switch.hpp"
#include "test_util.hpp"

using namespace acausal;
using namespace acausal::testing;

TEST(Json, complex_and_matrix_roundtrip) {
  Rng rng(1);
  Matrix m = random_matrix(rng, 3, 2);
  EXPECT_EQ(io::matrix_from_json(io::to_json(m)), m);
  EXPECT_EQ(io::complex_from_json(io::parse("[1.5, -2]")), Complex(1.5, -2));
  EXPECT_EQ(io::complex_from_json(io::parse("3")), Complex(3, 0));
}

TEST(Json, state_operator_channel_roundtrip) {
  Rng rng(2);
  auto psi = random_state(rng, {{"a", 2}, {"b", 3}});
  auto back = io::state_from_json(io::to_json(psi));
  EXPECT_EQ(back.subsystems(), psi.subsystems());
  EXPECT_EQ(back.amplitudes(), psi.amplitudes());

  auto rho = random_density(rng, {{"a", 2}});
  auto op = io::operator_from_json(io::to_json(rho));
  EXPECT_EQ(op.data(), rho.data());

  auto c = random_cptp(rng, 2, 3);
  auto c2 = io::channel_from_json(io::to_json(c));
  EXPECT_EQ(c2.in_dim(), 2u);
  EXPECT_EQ(c2.out_dim(), 3u);
  EXPECT_LT(choi_distance(c, c2), 1e-15);
}

TEST(Json, process_roundtrip_pure_and_mixed) {
  auto w = qswitch::build_switch_vector(2, 2).process;
  auto back = io::process_from_json(io::parse(io::to_json(w).dump()));
  ASSERT_TRUE(back.is_pure());
  EXPECT_EQ(back.past_dim(), 4u);
  EXPECT_EQ(back.slots().size(), 2u);
  EXPECT_LT((back.vector().amplitudes() - w.vector().amplitudes()).norm(), 1e-15);

  auto m = causal_chain_process(2, 2).as_matrix();
  auto mb = io::process_from_json(io::to_json(m));
  EXPECT_FALSE(mb.is_pure());
  EXPECT_LT((mb.matrix().data() - m.matrix().data()).norm(), 1e-15);
}

TEST(Json, pctc_spec) {
  auto j = io::parse(R"({"format":"operator",
    "rows":[{"label":"A","dim":2},{"label":"B","dim":2}],
    "cols":[{"label":"A","dim":2},{"label":"B","dim":2}],
    "matrix":[[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]],
    "ctc_pairs":[["B","B"]]})");
  auto spec = io::pctc_spec_from_json(j);
  auto k = pctc::contract(spec);
  EXPECT_LT((k.data() - 0.5 * eye(2)).norm(), 1e-15);
}

TEST(Json, circuit_gate_list) {
  auto c = qswitch::build_switch_circuit(2, 2);
  auto j = io::to_json(c.circuit);
  EXPECT_EQ(j["gates"].size(), c.circuit.gates().size());
  EXPECT_EQ(j["gates"][0]["name"], "CSWAP");
  EXPECT_FALSE(j["gates"][0].contains("matrix"));
  Rng rng(3);
  auto ac = det::acausal_circuit({haar_unitary(rng, 2), haar_unitary(rng, 2), haar_unitary(rng, 2)});
  auto dj = io::to_json(ac.circuit);
  bool party_gate_has_matrix = false;
  for (const auto& g : dj["gates"])
    if (g.contains("party")) party_gate_has_matrix = g.contains("matrix");
  EXPECT_TRUE(party_gate_has_matrix);
}

TEST(Json, malformed_inputs_raise_parse_error) {
  EXPECT_THROW(io::parse("{not json"), ParseError);
  EXPECT_THROW(io::matrix_from_json(io::parse("[[1,2],[3]]")), ParseError);
  EXPECT_THROW(io::complex_from_json(io::parse("[1,2,3]")), ParseError);
  EXPECT_THROW(io::state_from_json(io::parse(R"({"format":"state","subsystems":[{"label":"a","dim":2}],"amplitudes":[1]})")),
               ParseError);
  EXPECT_THROW(io::process_from_json(io::parse(R"({"format":"state"})")), ParseError);
  EXPECT_THROW(io::process_from_json(io::parse(R"({"format":"process","dims":{"P":2,"F":2,"slots":[]},"order":["P","F"],"vector":[1,0]})")),
               ParseError);
  EXPECT_THROW(io::channel_from_json(io::parse(R"({"in_dim":2,"out_dim":2,"kraus":[[[1,0],[0,1],[0,0]]]})")), ParseError);
  EXPECT_THROW(io::read_file("/nonexistent/file.json"), ParseError);
}
