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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "acausal/channel.hpp"
#include "acausal/random.hpp"
#include "acausal/tensor.hpp"

namespace acausal {

/// One party's laboratory: it receives `input` (A_I) and emits `output` (A_O).
struct Slot {
  std::string name;
  Subsystem input;
  Subsystem output;
};

/// Process matrix W on P ⊗ F ⊗ (A_I ⊗ A_O)^n. Pure processes are kept as the
/// process vector |w> with W = |w><w|; |w> = |U_W>> for the operator
/// U_W : P ⊗ A_O -> F ⊗ A_I.
class ProcessMatrix {
 public:
  static ProcessMatrix pure(Subsystems past, Subsystems future, std::vector<Slot> slots,
                            StateVector w);
  static ProcessMatrix mixed(Subsystems past, Subsystems future, std::vector<Slot> slots,
                             LabeledOperator w);

  const Subsystems& past() const { return past_; }
  const Subsystems& future() const { return future_; }
  const std::vector<Slot>& slots() const { return slots_; }
  std::size_t past_dim() const { return total_dim(past_); }
  std::size_t future_dim() const { return total_dim(future_); }

  bool is_pure() const { return std::holds_alternative<StateVector>(body_); }
  /// Throws NotPure for matrix-form processes.
  const StateVector& vector() const;
  /// W itself; materializes |w><w| for pure processes.
  LabeledOperator matrix() const;
  /// Same process stored in matrix form.
  ProcessMatrix as_matrix() const;
  /// U_W with inputs past ++ A_O and outputs future ++ A_I. Throws NotPure.
  LabeledOperator process_operator() const;

  /// past ++ (A_I^k, A_O^k for every slot) ++ future
  Subsystems canonical_order() const;

 private:
  ProcessMatrix(Subsystems past, Subsystems future, std::vector<Slot> slots,
                std::variant<StateVector, LabeledOperator> body);

  Subsystems past_;
  Subsystems future_;
  std::vector<Slot> slots_;
  std::variant<StateVector, LabeledOperator> body_;
};

/// Rank-one term weight * |v><v| of a slot operator, v on (A_I, A_O) input
/// first. A channel contributes one term per Kraus operator, v = |K>>.
struct WeightedVector {
  double weight = 1.0;
  Vector vec;
};
using SlotTerms = std::vector<WeightedVector>;

SlotTerms slot_terms(const Channel& c);
/// Signed eigen-decomposition of a Hermitian operator on (A_I, A_O).
SlotTerms slot_terms(const Matrix& hermitian);

/// Result of plugging slot operators into a process: either the list of
/// weighted vectors g with G = sum weight |g><g| (pure processes) or the
/// dense G (matrix form). G is the Choi operator on past ++ future.
class InducedMap {
 public:
  InducedMap(Subsystems past, Subsystems future, std::vector<WeightedVector> terms);
  InducedMap(Subsystems past, Subsystems future, Matrix choi);

  const Subsystems& past() const { return past_; }
  const Subsystems& future() const { return future_; }

  LabeledOperator choi() const;
  /// Kraus form; requires non-negative weights (or a PSD Choi operator).
  Channel channel() const;
  /// tr_F G transposed back, i.e. sum K^dagger K.
  Matrix transfer_sum() const;
  /// tr G(rho) for rho on the past in canonical order.
  double trace_of_output(const Matrix& rho) const;

 private:
  Subsystems past_;
  Subsystems future_;
  std::vector<WeightedVector> terms_;
  std::optional<Matrix> choi_;
};

/// G = tr[W^{T_parties} (⊗_k A^k)] for arbitrary slot operators.
InducedMap contract_slots(const ProcessMatrix& w, std::span<const SlotTerms> slots);

/// Induced map from P to F when the parties apply `channels`.
Channel apply_process(const ProcessMatrix& w, const std::vector<Channel>& channels);
LabeledOperator induced_choi(const ProcessMatrix& w, const std::vector<Channel>& channels);

/// Probability that every teleportation post-selection in the P-CTC circuit
/// succeeds: tr G(rho) / prod_k d_{A_O^k}^2. `rho` lives on the past factors
/// (canonical order).
double postselection_probability(const ProcessMatrix& w, const std::vector<Channel>& channels,
                                 const Matrix& rho);

struct ValidityConfig {
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
  unsigned threads = 1;
  /// Also run the exact affine-basis check.
  bool basis = false;
  /// Cap on the number of slot-operator combinations in basis mode.
  std::size_t basis_limit = 50000;
};

struct SampleDeviation {
  double tp = 0.0;
  double probability = 0.0;
};

struct ValidityReport {
  std::size_t samples = 0;
  double max_tp_deviation = 0.0;
  double max_probability_deviation = 0.0;
  double expected_probability = 0.0;
  std::vector<SampleDeviation> per_sample;
  /// Smallest eigenvalue of W (matrix form only).
  std::optional<double> psd_floor;
  std::optional<std::size_t> basis_terms;
  std::optional<double> basis_max_deviation;
  bool valid = false;
};

/// Randomized (and optionally exact) certification that G is CPTP for all
/// CPTP party maps. Every sample draws its own generator from (seed, index),
/// so the report does not depend on `threads`.
ValidityReport check_validity(const ProcessMatrix& w, const ValidityConfig& config = {});

/// Random CPTP tuple for the slots of `w`: slot 0 always gets a full-rank,
/// non-unital map.
std::vector<Channel> random_channel_tuple(Rng& rng, const ProcessMatrix& w);

/// U_G = (prod_k d_k) <phi+|U_W|phi+> over the wires A_I^k -> A_O^k, the
/// unitary induced by identity party maps. Rows future, cols past.
LabeledOperator induced_unitary(const ProcessMatrix& w);

/// Joint outcome distribution p(a) = tr G_a(rho) where G_a plugs in the
/// instrument elements selected by a.
std::map<std::vector<int>, double> outcome_probabilities(const ProcessMatrix& w,
                                                         const std::vector<Instrument>& instruments,
                                                         const Matrix& rho);

// Standard processes. Slots are named A<k> with factors AI<k>, AO<k>; past
// and future are single factors P and F.

/// P -> A_I^0, A_O^k -> A_I^{k+1}, A_O^{n-1} -> F, all of dimension d.
ProcessMatrix causal_chain_process(std::size_t parties, std::size_t d);

/// U_W = 1_{P->F} ⊗ U^{⊗n} with U : A_O^k -> A_I^k. Not a valid process
/// unless U is special; used as the linearity counterexample.
ProcessMatrix product_unitary_process(std::size_t parties, const Matrix& u);

/// |U_W>> for a Haar-random U_W : P ⊗ A_O -> F ⊗ A_I (not a valid process).
ProcessMatrix random_pure_process(Rng& rng, std::size_t parties, std::size_t d,
                                  std::size_t past_dim);

std::vector<Slot> standard_slots(std::size_t parties, std::size_t d);

}  // namespace acausal
