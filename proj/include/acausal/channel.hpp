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
#include <vector>

#include "acausal/random.hpp"
#include "acausal/tensor.hpp"

namespace acausal {

/// Completely positive map in Kraus form, K_i of shape out_dim x in_dim.
/// Trace preservation is not enforced here; see is_cptp().
class Channel {
 public:
  Channel(std::size_t in_dim, std::size_t out_dim, std::vector<Matrix> kraus);

  static Channel unitary(const Matrix& u);
  static Channel identity(std::size_t dim);

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  std::size_t rank() const { return kraus_.size(); }

  Matrix apply(const Matrix& rho) const;
  /// sum_i K_i^dagger K_i
  Matrix kraus_sum() const;

 private:
  std::size_t in_dim_;
  std::size_t out_dim_;
  std::vector<Matrix> kraus_;
};

/// lambda * a + (1 - lambda) * b as a Kraus list.
Channel mixture(double lambda, const Channel& a, const Channel& b);

/// Choi operator sum_i |K_i>><<K_i| on ("in", "out").
LabeledOperator kraus_to_choi(const Channel& c);

/// Kraus operators from the eigendecomposition of a Choi operator whose data
/// is ordered input-first. Eigenvalues below 1e-12 are dropped.
Channel choi_to_kraus(const LabeledOperator& choi, std::size_t in_dim, std::size_t out_dim);

/// Random CPTP map from a Haar isometry in -> rank ⊗ out. `rank == 0`
/// selects full Kraus rank in_dim * out_dim. Requires rank * out_dim >= in_dim.
Channel random_cptp(std::uint64_t seed, std::size_t in_dim, std::size_t out_dim,
                    std::size_t rank = 0);
Channel random_cptp(Rng& rng, std::size_t in_dim, std::size_t out_dim, std::size_t rank = 0);

/// Stinespring unitary of a CPTP map. `unitary` has rows ("anc", "sys") of
/// dims (ancilla_out_dim, out_dim) and cols ("anc", "sys") of dims
/// (ancilla_in_dim, in_dim); K_i = (<i| ⊗ 1) U (|0> ⊗ 1).
struct Purification {
  LabeledOperator unitary;
  std::size_t ancilla_in_dim = 1;
  std::size_t ancilla_out_dim = 1;
};

/// The ancilla output dimension is the smallest power of two not below the
/// Kraus rank (grown further only if the total dimensions cannot match).
Purification purify(const Channel& c, double tol = kDefaultTolerance);

struct CptpReport {
  double cp_floor = 0.0;      // smallest Choi eigenvalue
  double tp_deviation = 0.0;  // || sum K^dagger K - I ||_op
  bool completely_positive = false;
  bool trace_preserving = false;

  bool ok() const { return completely_positive && trace_preserving; }
};

CptpReport is_cptp(const Channel& c, double tol = kDefaultTolerance);

/// || sum K^dagger K - I ||_op
double tp_deviation(const Channel& c);
/// || sum K K^dagger - I ||_op, meaningful for in_dim == out_dim.
double unitality_deviation(const Channel& c);
/// Frobenius norm of the difference of the Choi operators.
double choi_distance(const Channel& a, const Channel& b);

struct InstrumentElement {
  int outcome = 0;
  Channel map;
};

/// CP maps labeled by classical outcomes whose sum is trace preserving.
class Instrument {
 public:
  explicit Instrument(std::vector<InstrumentElement> elements);

  const std::vector<InstrumentElement>& elements() const { return elements_; }
  std::size_t in_dim() const { return elements_.front().map.in_dim(); }
  std::size_t out_dim() const { return elements_.front().map.out_dim(); }

  /// Sum of the elements as one channel.
  Channel total() const;
  /// CP of every element and TP of the sum.
  CptpReport check(double tol = kDefaultTolerance) const;

 private:
  std::vector<InstrumentElement> elements_;
};

/// Single-outcome instrument wrapping a channel.
Instrument trivial_instrument(const Channel& c, int outcome = 0);

}  // namespace acausal
