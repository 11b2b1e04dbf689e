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
#include <cmath>

namespace acausal::det {

namespace {

void require_parties(std::size_t n) {
  if (n < 3) throw OutOfRange("the deterministic process needs n >= 3, got " + std::to_string(n));
  if (n > 30) throw ResourceLimit("n = " + std::to_string(n) + " is too large");
}

std::string wire(const char* prefix, std::size_t k) { return prefix + std::to_string(k); }

std::vector<std::size_t> oracle_permutation(std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::size_t> perm(dim * dim);
  for (std::size_t x = 0; x < dim; ++x) {
    const std::size_t fx = f_index(x, n);
    for (std::size_t y = 0; y < dim; ++y) perm[x * dim + y] = x * dim + (y ^ fx);
  }
  return perm;
}

struct PartyGate {
  std::string name;
  std::vector<std::string> targets;
  Matrix u;
};

// Runs the ordered circuit for party gates acting on the system qubits s<k>
// (plus optional ancillas) and reads the P -> F Kraus operators off the
// remaining registers.
OrderedSimulation run_ordered(std::size_t n, const std::vector<PartyGate>& parties,
                              const Subsystems& party_ancillas, std::size_t budget) {
  Subsystems wires;
  for (std::size_t k = 0; k < n; ++k) wires.push_back({wire("s", k), 2});
  for (std::size_t k = 0; k < n; ++k) wires.push_back({wire("a", k), 2});
  wires.insert(wires.end(), party_ancillas.begin(), party_ancillas.end());

  Circuit c(wires);
  const std::size_t dim_p = std::size_t{1} << n;
  check_budget(total_dim(wires) * dim_p, budget, "ordered simulation state");
  std::vector<std::string> oracle_targets;
  for (std::size_t k = 0; k < n; ++k) oracle_targets.push_back(wire("s", k));
  for (std::size_t k = 0; k < n; ++k) oracle_targets.push_back(wire("a", k));
  const auto perm = oracle_permutation(n);

  auto apply_r = [&](bool dagger) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& p = parties[k];
      c.unitary(dagger ? p.name + "^dag" : p.name, p.targets, dagger ? Matrix(p.u.adjoint()) : p.u,
                k);
    }
  };
  auto oracle = [&] { c.add({"F-ORACLE", {}, oracle_targets, {}, perm, {}}); };

  apply_r(false);
  oracle();
  apply_r(true);
  for (std::size_t k = 0; k < n; ++k) c.cnot(wire("a", k), wire("s", k));
  apply_r(false);
  oracle();

  const auto total = static_cast<Eigen::Index>(total_dim(wires));
  const auto rest = static_cast<Eigen::Index>(total_dim(wires) / dim_p);
  const auto dp = static_cast<Eigen::Index>(dim_p);
  Matrix in = Matrix::Zero(total, dp);
  for (Eigen::Index x = 0; x < dp; ++x) in(x * rest, x) = 1.0;
  const Matrix out = c.simulate(std::move(in));

  // Row index = s * rest + j with j the joint (f-register, party ancilla) value.
  const Eigen::Index anc = rest / dp;
  std::vector<Matrix> kraus;
  double residual = 0.0;
  for (Eigen::Index j = 0; j < rest; ++j) {
    Matrix k(dp, dp);
    for (Eigen::Index s = 0; s < dp; ++s) k.row(s) = out.row(s * rest + j);
    if (j >= anc) residual = std::max(residual, k.colwise().squaredNorm().maxCoeff());
    if (k.norm() >= 1e-14) kraus.push_back(std::move(k));
  }
  if (kraus.empty()) kraus.push_back(Matrix::Zero(dp, dp));
  const auto queries = c.party_queries();
  return OrderedSimulation{Channel(dim_p, dim_p, std::move(kraus)), std::move(c), queries, residual};
}

void check_qubit_unitaries(const std::vector<Matrix>& us) {
  for (const auto& u : us) {
    if (u.rows() != 2 || u.cols() != 2) throw DimensionMismatch("party unitaries must be 2x2");
  }
}

}  // namespace

std::size_t to_index(const BitString& x) {
  std::size_t idx = 0;
  for (int b : x) idx = (idx << 1) | static_cast<std::size_t>(b != 0);
  return idx;
}

BitString from_index(std::size_t index, std::size_t n) {
  BitString x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = static_cast<int>((index >> (n - 1 - k)) & 1u);
  return x;
}

BitString f(const BitString& x) {
  const std::size_t n = x.size();
  if (n < 3) throw OutOfRange("f needs at least 3 bits");
  BitString out(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    bool v = x[(k + n - 1) % n] != 0;
    for (std::size_t l = 1; l + 1 < n && v; ++l) v = x[(k + l) % n] == 0;
    out[k] = v ? 1 : 0;
  }
  return out;
}

std::size_t f_index(std::size_t x, std::size_t n) { return to_index(f(from_index(x, n))); }

std::size_t flip(std::size_t y, std::size_t mask) { return y ^ mask; }

ProcessMatrix build_det_vector(std::size_t n, std::size_t budget) {
  require_parties(n);
  check_budget(std::size_t{1} << std::min<std::size_t>(4 * n, 63), budget, "deterministic process vector");
  const std::size_t dim = std::size_t{1} << n;
  auto slots = standard_slots(n, 2);
  Subsystems canonical{{"P", dim}};
  for (const auto& s : slots) {
    canonical.push_back(s.input);
    canonical.push_back(s.output);
  }
  canonical.push_back({"F", dim});

  // Slot k sits at bits (2(n-1-k) + 1, 2(n-1-k)) of the interleaved index.
  auto interleave = [n](std::size_t ai, std::size_t ao) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t shift = n - 1 - k;
      idx = (idx << 2) | (((ai >> shift) & 1u) << 1) | ((ao >> shift) & 1u);
    }
    return idx;
  };
  Vector amp = Vector::Zero(static_cast<Eigen::Index>(dim * dim * dim * dim));
  for (std::size_t x = 0; x < dim; ++x) {
    const std::size_t fx = f_index(x, n);
    for (std::size_t y = 0; y < dim; ++y) {
      const std::size_t idx = (y * dim * dim + interleave(flip(y, fx), x)) * dim + x;
      amp(static_cast<Eigen::Index>(idx)) = 1.0;
    }
  }
  return ProcessMatrix::pure({{"P", dim}}, {{"F", dim}}, std::move(slots),
                             StateVector(canonical, std::move(amp)));
}

Matrix induced_unitary_closed_form(const std::vector<Matrix>& unitaries) {
  const std::size_t n = unitaries.size();
  require_parties(n);
  check_qubit_unitaries(unitaries);
  Matrix r = unitaries[0];
  for (std::size_t k = 1; k < n; ++k) r = kron(r, unitaries[k]);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Matrix g = Matrix::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    const auto fx = f_index(static_cast<std::size_t>(x), n);
    // Row x of R U_{f(x)}: column c of R U_f is column flip(c, f) of R.
    for (Eigen::Index c = 0; c < dim; ++c) {
      g(x, c) = r(x, static_cast<Eigen::Index>(flip(static_cast<std::size_t>(c), fx)));
    }
  }
  return g;
}

Channel acausal_evolution(const std::vector<Matrix>& unitaries) {
  return Channel::unitary(induced_unitary_closed_form(unitaries));
}

Channel acausal_evolution(const std::vector<Channel>& channels, std::size_t budget) {
  for (const auto& c : channels) {
    if (c.in_dim() != 2 || c.out_dim() != 2) throw DimensionMismatch("party channels must be qubit maps");
  }
  const auto w = build_det_vector(channels.size(), budget);
  return apply_process(w, channels);
}

AcausalCircuit acausal_circuit(const std::vector<Matrix>& party_unitaries) {
  const std::size_t n = party_unitaries.size();
  require_parties(n);
  Subsystems wires;
  for (std::size_t k = 0; k < n; ++k) wires.push_back({wire("c", k), 2});
  for (std::size_t k = 0; k < n; ++k) wires.push_back({wire("s", k), 2});
  for (std::size_t k = 0; k < n; ++k) {
    const auto& u = party_unitaries[k];
    if (u.rows() != u.cols() || u.rows() % 2 != 0) {
      throw DimensionMismatch("party unitary must act on (ancilla, qubit)");
    }
    if (u.rows() > 2) wires.push_back({wire("anc", k), static_cast<std::size_t>(u.rows() / 2)});
  }
  Circuit c(wires);
  std::vector<std::string> targets;
  for (std::size_t k = 0; k < n; ++k) targets.push_back(wire("c", k));
  for (std::size_t k = 0; k < n; ++k) targets.push_back(wire("s", k));
  c.add({"F-ORACLE", {}, targets, {}, oracle_permutation(n), {}});
  for (std::size_t k = 0; k < n; ++k) c.swap(wire("c", k), wire("s", k));
  std::vector<pctc::CtcPair> pairs;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& u = party_unitaries[k];
    if (u.rows() > 2) {
      c.unitary(wire("V", k), {wire("anc", k), wire("c", k)}, u, k);
    } else {
      c.unitary(wire("U", k), {wire("c", k)}, u, k);
    }
    pairs.emplace_back(wire("c", k), wire("c", k));
  }
  return {std::move(c), std::move(pairs)};
}

OrderedSimulation ordered_simulation_unitary(const std::vector<Matrix>& unitaries,
                                             std::size_t budget) {
  const std::size_t n = unitaries.size();
  require_parties(n);
  check_qubit_unitaries(unitaries);
  std::vector<PartyGate> parties;
  for (std::size_t k = 0; k < n; ++k) parties.push_back({wire("U", k), {wire("s", k)}, unitaries[k]});
  return run_ordered(n, parties, {}, budget);
}

OrderedSimulation ordered_simulation_general(const std::vector<Channel>& channels,
                                             std::size_t budget) {
  const std::size_t n = channels.size();
  require_parties(n);
  std::vector<PartyGate> parties;
  Subsystems ancillas;
  for (std::size_t k = 0; k < n; ++k) {
    if (channels[k].in_dim() != 2 || channels[k].out_dim() != 2) {
      throw DimensionMismatch("party channels must be qubit maps");
    }
    const auto p = purify(channels[k]);
    const auto u = p.unitary.permuted({"anc", "sys"}, {"anc", "sys"});
    ancillas.push_back({wire("anc", k), p.ancilla_in_dim});
    parties.push_back({wire("V", k), {wire("anc", k), wire("s", k)}, u.data()});
  }
  return run_ordered(n, parties, ancillas, budget);
}

double orthogonality_element(const std::vector<Matrix>& party_unitaries, const BitString& y,
                             const BitString& z) {
  const std::size_t n = party_unitaries.size();
  if (y.size() != n || z.size() != n) throw DimensionMismatch("bit strings must have n bits");
  const BitString fy = f(y);
  const Matrix x_gate = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  double norm = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix& u = party_unitaries[k];
    if (u.rows() != u.cols() || u.rows() % 2 != 0) {
      throw DimensionMismatch("party unitary must act on (ancilla, qubit)");
    }
    const Eigen::Index a = u.rows() / 2;
    Matrix flip_k = Matrix::Identity(2, 2);
    if (fy[k]) flip_k = x_gate;
    const Matrix middle = u * kron(Matrix(Matrix::Identity(a, a)), flip_k) * u.adjoint();
    // Rows with qubit value z_k, columns with qubit value y_k.
    Matrix block(a, a);
    for (Eigen::Index i = 0; i < a; ++i) {
      for (Eigen::Index j = 0; j < a; ++j) block(i, j) = middle(2 * i + z[k], 2 * j + y[k]);
    }
    Eigen::JacobiSVD<Matrix> svd(block);
    norm *= svd.singularValues()(0);
  }
  return norm;
}

bool orthogonality_property(const std::vector<Matrix>& party_unitaries, const BitString& y,
                            const BitString& z, double tol) {
  return orthogonality_element(party_unitaries, y, z) < tol;
}

}  // namespace acausal::det
