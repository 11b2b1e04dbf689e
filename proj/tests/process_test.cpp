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

#include "acausal/process.hpp"

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace acausal;
using namespace acausal::testing;

namespace {

Matrix counterexample_u() {
  Matrix u = eye(2);
  u(1, 1) = std::polar(1.0, 2.0 * M_PI / 3.0);
  return u;
}

std::vector<Channel> unitary_channels(const std::vector<Matrix>& us) {
  std::vector<Channel> out;
  for (const auto& u : us) out.push_back(Channel::unitary(u));
  return out;
}

// U_G by explicit index loops over U_W with A_I^k wired to A_O^k:
// U_G(f, p) = sum_{a} U_W[(f, a_0..a_{n-1}), (p, a_0..a_{n-1})].
Matrix wired_trace_oracle(const ProcessMatrix& w) {
  const auto u = w.process_operator();
  std::vector<std::string> rows{"F"}, cols{"P"};
  Eigen::Index dslots = 1;
  for (const auto& s : w.slots()) {
    rows.push_back(s.input.label);
    cols.push_back(s.output.label);
    dslots *= static_cast<Eigen::Index>(s.input.dim);
  }
  const Matrix m = u.permuted(rows, cols).data();
  const auto df = static_cast<Eigen::Index>(w.future_dim());
  const auto dp = static_cast<Eigen::Index>(w.past_dim());
  Matrix g = Matrix::Zero(df, dp);
  for (Eigen::Index f = 0; f < df; ++f)
    for (Eigen::Index p = 0; p < dp; ++p)
      for (Eigen::Index a = 0; a < dslots; ++a) g(f, p) += m(f * dslots + a, p * dslots + a);
  return g;
}

}  // namespace

TEST(Process, causal_chain_composes_unitaries) {
  Rng rng(1);
  auto w = causal_chain_process(2, 2);
  Matrix ua = haar_unitary(rng, 2), ub = haar_unitary(rng, 2);
  auto g = apply_process(w, unitary_channels({ua, ub}));
  ASSERT_EQ(g.rank(), 1u);
  EXPECT_LT((g.kraus()[0] - ub * ua).norm(), 1e-12);
}

TEST(Process, chain_probability_is_constant) {
  Rng rng(2);
  auto w = causal_chain_process(2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    auto channels = random_channel_tuple(rng, w);
    Matrix rho = random_density(rng, w.past()).data();
    EXPECT_NEAR(postselection_probability(w, channels, rho), 1.0 / 16.0, 1e-12);
  }
}

TEST(Process, counterexample_probability_closed_form) {
  Rng rng(3);
  const Matrix u = counterexample_u();
  ASSERT_NEAR(std::abs(u.trace()), 1.0, 1e-15);
  auto w = product_unitary_process(2, u);
  double lo = 1.0, hi = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    Matrix v = haar_unitary(rng, 2);
    Matrix rho = random_density(rng, w.past()).data();
    const double p = postselection_probability(w, unitary_channels({v, v}), rho);
    EXPECT_NEAR(p, std::pow(std::abs((u * v).trace()), 4) / 16.0, 1e-12);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  EXPECT_GT(hi - lo, 0.1);
  EXPECT_NEAR(postselection_probability(w, unitary_channels({eye(2), eye(2)}), eye(2) / 2.0), 1.0 / 16.0,
              1e-12);
  // V = U^dagger Z: tr(UV) = tr(Z) = 0.
  Matrix v0 = u.adjoint() * pauli_z();
  EXPECT_NEAR(postselection_probability(w, unitary_channels({v0, v0}), eye(2) / 2.0), 0.0, 1e-14);
}

TEST(Process, validity_accepts_chain_and_rejects_counterexample) {
  ValidityConfig cfg;
  cfg.samples = 30;
  cfg.seed = 5;
  auto good = check_validity(causal_chain_process(3, 2), cfg);
  EXPECT_TRUE(good.valid);
  EXPECT_LT(good.max_tp_deviation, 1e-12);
  EXPECT_EQ(good.per_sample.size(), 30u);
  auto bad = check_validity(product_unitary_process(2, counterexample_u()), cfg);
  EXPECT_FALSE(bad.valid);
  EXPECT_GT(bad.max_probability_deviation, 1e-3);
}

TEST(Process, validity_independent_of_threads) {
  Rng rng(6);
  auto w = random_pure_process(rng, 2, 2, 2);
  ValidityConfig one;
  one.samples = 16;
  one.seed = 9;
  ValidityConfig four = one;
  four.threads = 4;
  auto a = check_validity(w, one), b = check_validity(w, four);
  ASSERT_EQ(a.per_sample.size(), b.per_sample.size());
  for (std::size_t i = 0; i < a.per_sample.size(); ++i) {
    EXPECT_EQ(a.per_sample[i].tp, b.per_sample[i].tp);
    EXPECT_EQ(a.per_sample[i].probability, b.per_sample[i].probability);
  }
  EXPECT_EQ(a.max_tp_deviation, b.max_tp_deviation);
}

TEST(Process, sampler_first_slot_non_unital) {
  Rng rng(7);
  auto w = causal_chain_process(3, 2);
  for (int trial = 0; trial < 20; ++trial) {
    auto channels = random_channel_tuple(rng, w);
    EXPECT_GT(unitality_deviation(channels[0]), 1e-6);
    for (const auto& c : channels) EXPECT_TRUE(is_cptp(c).ok());
  }
}

TEST(Process, basis_mode_certifies_chain_and_rejects_counterexample) {
  ValidityConfig cfg;
  cfg.samples = 4;
  cfg.basis = true;
  auto good = check_validity(causal_chain_process(2, 2), cfg);
  ASSERT_TRUE(good.basis_terms.has_value());
  EXPECT_EQ(*good.basis_terms, 13u * 13u);
  EXPECT_LT(*good.basis_max_deviation, 1e-12);
  EXPECT_TRUE(good.valid);
  auto bad = check_validity(product_unitary_process(2, counterexample_u()), cfg);
  EXPECT_GT(*bad.basis_max_deviation, 1e-3);
  EXPECT_FALSE(bad.valid);
  cfg.basis_limit = 100;
  EXPECT_THROW(check_validity(causal_chain_process(2, 2), cfg), ResourceLimit);
}

TEST(Process, induced_unitary_matches_contraction_and_loop_oracle) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto w = random_pure_process(rng, 2, 2, 2);
    auto ug = induced_unitary(w);
    auto g = apply_process(w, {Channel::identity(2), Channel::identity(2)});
    ASSERT_EQ(g.rank(), 1u);
    EXPECT_LT((ug.data() - g.kraus()[0]).norm(), 1e-12);
    EXPECT_LT((ug.data() - wired_trace_oracle(w)).norm(), 1e-12);
  }
}

TEST(Process, induced_unitary_of_chain_is_identity) {
  auto ug = induced_unitary(causal_chain_process(3, 3));
  EXPECT_LT((ug.data() - eye(3)).norm(), 1e-12);
}

TEST(Process, induced_unitary_requires_pure) {
  EXPECT_THROW(induced_unitary(causal_chain_process(1, 2).as_matrix()), NotPure);
}

TEST(Process, matrix_form_agrees_with_vector_form) {
  Rng rng(9);
  auto w = causal_chain_process(2, 2);
  auto m = w.as_matrix();
  EXPECT_FALSE(m.is_pure());
  auto channels = random_channel_tuple(rng, w);
  EXPECT_LT(max_abs_diff(induced_choi(w, channels), induced_choi(m, channels)), 1e-12);
  auto v = random_pure_process(rng, 2, 2, 2);
  EXPECT_LT(max_abs_diff(induced_choi(v, channels), induced_choi(v.as_matrix(), channels)), 1e-12);
  ValidityConfig cfg;
  cfg.samples = 5;
  auto rep = check_validity(m, cfg);
  ASSERT_TRUE(rep.psd_floor.has_value());
  EXPECT_GT(*rep.psd_floor, -1e-12);
  EXPECT_TRUE(rep.valid);
}

TEST(Process, contraction_is_affine_in_each_channel) {
  Rng rng(10);
  auto w = random_pure_process(rng, 2, 2, 2);
  auto a = random_cptp(rng, 2, 2), a2 = random_cptp(rng, 2, 2), b = random_cptp(rng, 2, 2);
  for (double lambda : {0.0, 0.25, 0.5, 1.0}) {
    auto mixed = induced_choi(w, {mixture(lambda, a, a2), b}).data();
    Matrix expected = lambda * induced_choi(w, {a, b}).data() + (1 - lambda) * induced_choi(w, {a2, b}).data();
    EXPECT_LT((mixed - expected).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Process, mixed_contraction_matches_explicit_trace_formula) {
  // G = tr_slots[W (1 ⊗ A^T)], checked by kron + partial trace on a small case.
  Rng rng(11);
  auto w = random_pure_process(rng, 1, 2, 2);
  auto c = random_cptp(rng, 2, 2);
  auto W = w.matrix();
  auto a = kraus_to_choi(c).renamed({{"in", "AI0"}, {"out", "AO0"}});
  auto full = W * kron(LabeledOperator::identity({{"P", 2}, {"F", 2}}), a.transpose());
  auto g = partial_trace(full, {"AI0", "AO0"}).permuted({"P", "F"}, {"P", "F"});
  EXPECT_LT(max_abs_diff(g, induced_choi(w, {c})), 1e-12);
}

TEST(Process, outcome_probabilities_trivial_and_noisy) {
  Rng rng(12);
  auto w = causal_chain_process(2, 2);
  Matrix rho = random_density(rng, w.past()).data();
  std::vector<Instrument> trivial{trivial_instrument(random_cptp(rng, 2, 2)),
                                  trivial_instrument(random_cptp(rng, 2, 2))};
  auto dist = outcome_probabilities(w, trivial, rho);
  ASSERT_EQ(dist.size(), 1u);
  EXPECT_NEAR(dist.at({0, 0}), 1.0, 1e-12);

  // Measure, then prepare a uniformly random bit.
  std::vector<InstrumentElement> elems;
  for (int a = 0; a < 2; ++a) {
    std::vector<Matrix> kraus;
    for (int b = 0; b < 2; ++b) {
      Matrix k = Matrix::Zero(2, 2);
      k(b, a) = std::sqrt(0.5);
      kraus.push_back(k);
    }
    elems.push_back({a, Channel(2, 2, kraus)});
  }
  std::vector<Instrument> noisy{Instrument(elems), Instrument(elems)};
  dist = outcome_probabilities(w, noisy, rho);
  double total = 0.0;
  for (const auto& [a, p] : dist) {
    EXPECT_GT(p, -1e-12);
    total += p;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(dist.at({0, 0}) + dist.at({0, 1}), rho(0, 0).real(), 1e-12);
}

TEST(Process, rejects_mismatched_channels) {
  auto w = causal_chain_process(2, 2);
  EXPECT_THROW(apply_process(w, {Channel::identity(2)}), DimensionMismatch);
  EXPECT_THROW(apply_process(w, {Channel::identity(2), Channel::identity(3)}), DimensionMismatch);
}

TEST(Process, constructor_checks_factors) {
  auto slots = standard_slots(1, 2);
  Subsystems wrong{{"P", 2}, {"AI0", 2}, {"AO0", 3}, {"F", 2}};
  EXPECT_THROW(ProcessMatrix::pure({{"P", 2}}, {{"F", 2}}, slots, StateVector(wrong, Vector::Zero(24))),
               DimensionMismatch);
  Subsystems dup{{"P", 2}, {"AI0", 2}, {"AO0", 2}, {"AI0", 2}};
  EXPECT_THROW(ProcessMatrix::pure({{"P", 2}}, {{"AI0", 2}}, slots, StateVector(dup, Vector::Zero(16))),
               DuplicateLabel);
}
