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

#include "acausal/det_process.hpp"

#include <algorithm>
#include <set>

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace acausal;
using namespace acausal::det;
using namespace acausal::testing;

namespace {

BitString rotate(const BitString& x) {
  BitString out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[(k + 1) % x.size()] = x[k];
  return out;
}

std::vector<Matrix> random_unitaries(Rng& rng, std::size_t n, std::size_t dim = 2) {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(haar_unitary(rng, dim));
  return out;
}

std::vector<Channel> random_channels(Rng& rng, std::size_t n) {
  std::vector<Channel> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(random_cptp(rng, 2, 2));
  return out;
}

Channel amplitude_damping(double gamma) {
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return Channel(2, 2, {k0, k1});
}

Matrix x_mask(std::size_t n, std::size_t mask) {
  std::vector<Matrix> fs;
  for (std::size_t k = 0; k < n; ++k) fs.push_back((mask >> (n - 1 - k)) & 1 ? pauli_x() : eye(2));
  return naive_kron(fs);
}

// Full-matrix evaluation of (<z| ⊗ 1) R (1 ⊗ U_f(y)) R^dagger (|y> ⊗ 1) with
// the factors interleaved as (anc_0, q_0, anc_1, q_1, ...).
double orthogonality_oracle(const std::vector<Matrix>& parties, std::size_t y, std::size_t z) {
  const std::size_t n = parties.size();
  std::vector<Eigen::Index> anc(n);
  Matrix r = Matrix::Identity(1, 1), flips = Matrix::Identity(1, 1);
  const std::size_t fy = f_index(y, n);
  for (std::size_t k = 0; k < n; ++k) {
    anc[k] = parties[k].rows() / 2;
    r = naive_kron(r, parties[k]);
    flips = naive_kron(flips, naive_kron(eye(anc[k]), (fy >> (n - 1 - k)) & 1 ? pauli_x() : eye(2)));
  }
  auto embed = [&](std::size_t bits) {
    Matrix e = Matrix::Identity(1, 1);
    for (std::size_t k = 0; k < n; ++k) {
      Matrix ket = Matrix::Zero(2, 1);
      ket((bits >> (n - 1 - k)) & 1, 0) = 1.0;
      e = naive_kron(e, naive_kron(eye(anc[k]), ket));
    }
    return e;
  };
  return op_norm(embed(z).adjoint() * r * flips * r.adjoint() * embed(y));
}

}  // namespace

TEST(DetFunction, examples) {
  EXPECT_EQ(f({1, 0, 0}), (BitString{0, 1, 0}));
  EXPECT_EQ(f({1, 1, 0, 0}), (BitString{0, 1, 0, 0}));
  for (std::size_t n = 3; n <= 6; ++n) EXPECT_EQ(f(BitString(n, 0)), BitString(n, 0));
}

TEST(DetFunction, three_party_formula) {
  for (std::size_t i = 0; i < 8; ++i) {
    auto x = from_index(i, 3);
    BitString expected{x[2] && !x[1], x[0] && !x[2], x[1] && !x[0]};
    EXPECT_EQ(f(x), expected);
    EXPECT_EQ(to_index(x), i);
    EXPECT_EQ(f_index(i, 3), to_index(expected));
  }
  EXPECT_EQ(to_index({1, 0, 0}), 4u);
}

TEST(DetFunction, one_hot_with_two_preimages) {
  for (std::size_t n = 3; n <= 8; ++n) {
    std::map<std::size_t, std::size_t> preimages;
    for (std::size_t x = 0; x < (1u << n); ++x) {
      auto fx = f(from_index(x, n));
      EXPECT_LE(std::count(fx.begin(), fx.end(), 1), 1);
      ++preimages[to_index(fx)];
    }
    for (const auto& [value, count] : preimages) {
      if (value != 0) EXPECT_EQ(count, 2u);
    }
    EXPECT_EQ(preimages.size(), n + 1);
  }
}

TEST(DetFunction, support_is_translations_of_two_patterns) {
  for (std::size_t n = 3; n <= 8; ++n) {
    std::set<BitString> support, translations;
    for (std::size_t x = 0; x < (1u << n); ++x) {
      auto bits = from_index(x, n);
      if (to_index(f(bits)) != 0) support.insert(bits);
    }
    BitString a(n, 0), b(n, 0);
    a[0] = 1;
    b[0] = b[1] = 1;
    for (std::size_t r = 0; r < n; ++r) {
      translations.insert(a);
      translations.insert(b);
      a = rotate(a);
      b = rotate(b);
    }
    EXPECT_EQ(support.size(), 2 * n);
    EXPECT_EQ(support, translations);
  }
}

TEST(DetFunction, translation_equivariance) {
  for (std::size_t n = 3; n <= 6; ++n) {
    for (std::size_t x = 0; x < (1u << n); ++x) {
      auto bits = from_index(x, n);
      EXPECT_EQ(f(rotate(bits)), rotate(f(bits)));
    }
  }
}

TEST(DetProcess, vector_shape_and_classical_recovery) {
  auto w = build_det_vector(3);
  const auto order = w.canonical_order();
  ASSERT_EQ(order.size(), 8u);
  EXPECT_EQ(order.front().dim, 8u);
  EXPECT_EQ(order.back().dim, 8u);
  const Vector& amp = w.vector().amplitudes();
  EXPECT_NEAR(amp.squaredNorm(), 64.0, 1e-12);
  // Index layout [P, AI0, AO0, AI1, AO1, AI2, AO2, F].
  std::size_t hits = 0;
  for (std::size_t idx = 0; idx < 64 * 8; ++idx) {
    const std::size_t fut = idx % 8;
    std::size_t ai = 0, ao = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t pair = (idx / 8 >> (2 * (2 - k))) & 3;
      ai = ai << 1 | pair >> 1;
      ao = ao << 1 | (pair & 1);
    }
    const bool expected = ao == fut && ai == f_index(ao, 3);
    EXPECT_EQ(std::abs(amp(static_cast<Eigen::Index>(idx))), expected ? 1.0 : 0.0) << idx;
    hits += expected;
  }
  EXPECT_EQ(hits, 8u);
}

TEST(DetProcess, valid_for_three_and_four_parties) {
  ValidityConfig cfg;
  cfg.samples = 30;
  cfg.seed = 5;
  for (std::size_t n : {3u, 4u}) {
    auto r = check_validity(build_det_vector(n), cfg);
    EXPECT_TRUE(r.valid) << n;
    EXPECT_LT(r.max_tp_deviation, 1e-9);
  }
}

TEST(DetProcess, rejects_small_and_oversized) {
  EXPECT_THROW(build_det_vector(2), OutOfRange);
  EXPECT_THROW(build_det_vector(7), ResourceLimit);
}

TEST(DetEvolution, identity_parties) {
  Matrix ug = induced_unitary_closed_form(std::vector<Matrix>(3, eye(2)));
  EXPECT_EQ(ug(to_index({1, 0, 0}), to_index({1, 1, 0})), Complex(1.0));
  for (std::size_t x = 0; x < 8; ++x) {
    Vector in = Vector::Zero(8);
    in(static_cast<Eigen::Index>(flip(x, f_index(x, 3)))) = 1.0;
    EXPECT_LT((ug * in - Vector::Unit(8, static_cast<Eigen::Index>(x))).norm(), 1e-15);
  }
}

TEST(DetEvolution, closed_form_matches_contraction) {
  Rng rng(7);
  for (std::size_t n : {3u, 4u}) {
    auto us = random_unitaries(rng, n);
    std::vector<Channel> chans;
    for (const auto& u : us) chans.push_back(Channel::unitary(u));
    Channel g = acausal_evolution(chans);
    Matrix ug = induced_unitary_closed_form(us);
    EXPECT_LT((ug.adjoint() * ug - eye(ug.rows())).norm(), 1e-10);
    EXPECT_LT(choi_distance(g, Channel::unitary(ug)), 1e-9);
    EXPECT_LT(choi_distance(acausal_evolution(us), Channel::unitary(ug)), 1e-12);
  }
}

TEST(DetEvolution, inverse_relation_on_every_basis_string) {
  Rng rng(8);
  for (std::size_t n : {3u, 4u}) {
    auto us = random_unitaries(rng, n);
    Matrix r = naive_kron(us);
    Matrix ug = induced_unitary_closed_form(us);
    for (std::size_t x = 0; x < (1u << n); ++x) {
      Vector ket = Vector::Unit(ug.rows(), static_cast<Eigen::Index>(x));
      Vector out = ug * x_mask(n, f_index(x, n)) * r.adjoint() * ket;
      EXPECT_LT((out - ket).norm(), 1e-10) << n << " " << x;
    }
  }
}

TEST(DetEvolution, random_channels_give_cptp_output) {
  Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    auto chans = random_channels(rng, 3);
    Channel g = acausal_evolution(chans);
    EXPECT_LT(tp_deviation(g), 1e-9);
  }
}

TEST(DetEvolution, kraus_resolution_of_identity) {
  Rng rng(10);
  for (std::size_t n : {3u, 4u}) {
    auto chans = random_channels(rng, n);
    chans[0] = amplitude_damping(0.4);
    // Product Kraus operators A_i of the joint channel.
    std::vector<Matrix> joint{Matrix::Identity(1, 1)};
    for (const auto& c : chans) {
      std::vector<Matrix> next;
      for (const auto& a : joint)
        for (const auto& k : c.kraus()) next.push_back(naive_kron(a, k));
      joint = std::move(next);
    }
    const auto dim = static_cast<Eigen::Index>(1u << n);
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& a : joint) {
      for (std::size_t x = 0; x < (1u << n); ++x) {
        Matrix proj = Matrix::Zero(dim, dim);
        proj(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = 1.0;
        Matrix fx = x_mask(n, f_index(x, n));
        sum += fx * a.adjoint() * proj * a * fx;
      }
    }
    EXPECT_LT((sum - eye(dim)).norm(), 1e-9);
  }
}

TEST(DetOrdered, unitary_parties_match_acausal_evolution) {
  Rng rng(11);
  for (std::size_t n : {3u, 4u}) {
    for (int trial = 0; trial < 3; ++trial) {
      auto us = random_unitaries(rng, n);
      auto sim = ordered_simulation_unitary(us);
      EXPECT_LT(choi_distance(sim.channel, acausal_evolution(us)), 1e-9);
      EXPECT_EQ(sim.party_queries, 3 * n);
      EXPECT_EQ(sim.circuit.party_queries(), 3 * n);
      EXPECT_LT(sim.oracle_register_residual, 1e-12);
    }
  }
}

TEST(DetOrdered, identity_parties_give_identity_equivalent_map) {
  std::vector<Matrix> ids(3, eye(2));
  auto sim = ordered_simulation_unitary(ids);
  EXPECT_LT(choi_distance(sim.channel, Channel::unitary(induced_unitary_closed_form(ids))), 1e-12);
  EXPECT_LT(tp_deviation(sim.channel), 1e-12);
}

TEST(DetOrdered, general_channels_match_acausal_evolution) {
  Rng rng(23);
  for (std::size_t n : {3u, 4u}) {
    for (int trial = 0; trial < 3; ++trial) {
      auto chans = random_channels(rng, n);
      auto sim = ordered_simulation_general(chans);
      EXPECT_LT(choi_distance(sim.channel, acausal_evolution(chans)), 1e-9);
      EXPECT_EQ(sim.party_queries, 3 * n);
      EXPECT_LT(sim.oracle_register_residual, 1e-12);
    }
  }
}

TEST(DetOrdered, general_reduces_to_unitary_case) {
  Rng rng(12);
  auto us = random_unitaries(rng, 3);
  std::vector<Channel> chans;
  for (const auto& u : us) chans.push_back(Channel::unitary(u));
  EXPECT_LT(choi_distance(ordered_simulation_general(chans).channel,
                          ordered_simulation_unitary(us).channel),
            1e-10);
}

TEST(DetOrdered, non_unital_parties) {
  std::vector<Channel> chans{amplitude_damping(0.3), amplitude_damping(0.9), amplitude_damping(0.5)};
  auto sim = ordered_simulation_general(chans);
  EXPECT_LT(choi_distance(sim.channel, acausal_evolution(chans)), 1e-9);
  EXPECT_THROW(ordered_simulation_general({Channel(2, 2, {2.0 * eye(2)}), chans[1], chans[2]}), NotCPTP);
}

TEST(DetCircuit, wired_trace_equals_induced_unitary) {
  Rng rng(13);
  auto us = random_unitaries(rng, 3);
  auto ac = acausal_circuit(us);
  Matrix k = pctc::contract({ac.circuit.unitary_matrix(), ac.ctc_pairs}).data() * 8.0;
  EXPECT_LT((k - induced_unitary_closed_form(us)).norm(), 1e-10);
  EXPECT_EQ(ac.circuit.party_queries(), 3u);
}

TEST(DetOrthogonality, unitary_parties) {
  Rng rng(14);
  for (std::size_t n : {3u, 4u}) {
    auto us = random_unitaries(rng, n);
    bool saw_diagonal_nonzero = false;
    for (std::size_t y = 0; y < (1u << n); ++y) {
      for (std::size_t z = 0; z < (1u << n); ++z) {
        const auto by = from_index(y, n), bz = from_index(z, n);
        const double value = orthogonality_element(us, by, bz);
        EXPECT_NEAR(value, orthogonality_oracle(us, y, z), 1e-12);
        if (f_index(y, n) != f_index(z, n)) {
          EXPECT_LT(value, 1e-10);
          EXPECT_TRUE(orthogonality_property(us, by, bz));
        }
        if (y == z && value > 1e-3) saw_diagonal_nonzero = true;
      }
    }
    EXPECT_TRUE(saw_diagonal_nonzero);
  }
}

TEST(DetOrthogonality, dilated_parties) {
  Rng rng(15);
  for (std::size_t n : {3u, 4u}) {
    std::vector<Matrix> dilated;
    for (std::size_t k = 0; k < n; ++k) dilated.push_back(purify(random_cptp(rng, 2, 2)).unitary.data());
    for (std::size_t y = 0; y < (1u << n); ++y) {
      for (std::size_t z = 0; z < (1u << n); ++z) {
        const double value = orthogonality_element(dilated, from_index(y, n), from_index(z, n));
        // The dense oracle is only affordable for three parties.
        if (n == 3) EXPECT_NEAR(value, orthogonality_oracle(dilated, y, z), 1e-12);
        if (f_index(y, n) != f_index(z, n)) EXPECT_LT(value, 1e-10);
      }
    }
  }
}
