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

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "acausal/errors.hpp"

namespace acausal {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Entrywise tolerance used by comparisons that do not take an explicit one.
inline constexpr double kDefaultTolerance = 1e-9;

/// A named tensor factor of a Hilbert space.
struct Subsystem {
  std::string label;
  std::size_t dim = 1;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

/// Ordered list of tensor factors. The first entry is the most significant
/// digit of a basis index.
using Subsystems = std::vector<Subsystem>;

std::size_t total_dim(const Subsystems& subsystems);
std::vector<std::string> labels_of(const Subsystems& subsystems);
const Subsystem& find_subsystem(const Subsystems& subsystems, const std::string& label);
bool has_label(const Subsystems& subsystems, const std::string& label);

/// Pure state (not necessarily normalized) over labeled subsystems.
class StateVector {
 public:
  StateVector(Subsystems subsystems, Vector amplitudes);

  static StateVector basis(Subsystems subsystems, std::size_t index);

  const Subsystems& subsystems() const { return subsystems_; }
  const Vector& amplitudes() const { return amplitudes_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  double norm() const { return amplitudes_.norm(); }

  StateVector normalized() const;
  /// Reorders the tensor factors; `order` must name every subsystem once.
  StateVector permuted(const std::vector<std::string>& order) const;
  /// Reinterprets the amplitudes under a different factorization of the
  /// same total dimension.
  StateVector with_subsystems(Subsystems subsystems) const;
  StateVector renamed(const std::map<std::string, std::string>& names) const;

 private:
  Subsystems subsystems_;
  Vector amplitudes_;
};

/// Dense operator whose output (row) and input (column) spaces are ordered
/// lists of labeled subsystems. States, unitaries, Choi operators and
/// process matrices all use this carrier.
class LabeledOperator {
 public:
  LabeledOperator(Subsystems rows, Subsystems cols, Matrix data);
  /// Square operator with identical row and column factors.
  LabeledOperator(Subsystems both, Matrix data);

  static LabeledOperator identity(const Subsystems& subsystems);

  const Subsystems& rows() const { return rows_; }
  const Subsystems& cols() const { return cols_; }
  const Matrix& data() const { return data_; }

  /// True when row and column factors coincide in order and dimension.
  bool is_square() const { return rows_ == cols_; }

  LabeledOperator permuted(const std::vector<std::string>& row_order,
                           const std::vector<std::string>& col_order) const;
  /// Permutes factors so labels appear in the same order as in `reference`.
  LabeledOperator aligned_to(const LabeledOperator& reference) const;
  LabeledOperator with_subsystems(Subsystems rows, Subsystems cols) const;
  LabeledOperator renamed(const std::map<std::string, std::string>& names) const;

  LabeledOperator adjoint() const;
  LabeledOperator transpose() const;
  /// Full trace; requires the same label set on both sides.
  Complex trace() const;

 private:
  Subsystems rows_;
  Subsystems cols_;
  Matrix data_;
};

/// Composition `a * b`; a's input factors must match b's output factors as
/// a labeled set.
LabeledOperator operator*(const LabeledOperator& a, const LabeledOperator& b);
LabeledOperator operator+(const LabeledOperator& a, const LabeledOperator& b);
LabeledOperator operator-(const LabeledOperator& a, const LabeledOperator& b);
LabeledOperator operator*(Complex scale, const LabeledOperator& a);

/// Applies `op` to the factors of `psi` named by op's input labels. The
/// result lists op's output factors first, then the untouched factors of
/// `psi` in their original order.
StateVector apply(const LabeledOperator& op, const StateVector& psi);

LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b);
StateVector kron(const StateVector& a, const StateVector& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// |psi><phi|
LabeledOperator outer(const StateVector& psi, const StateVector& phi);
LabeledOperator projector(const StateVector& psi);

/// Traces out `labels`, which must label equal-dimension factors on both sides.
LabeledOperator partial_trace(const LabeledOperator& m, const std::vector<std::string>& labels);

/// Generalized partial trace that wires output factor `first` to input
/// factor `second` for every pair, i.e. sum_i <i|_first m |i>_second.
LabeledOperator trace_pairs(const LabeledOperator& m,
                            const std::vector<std::pair<std::string, std::string>>& pairs);

/// Transposes the factors in `labels`. Moves entries only, so applying it
/// twice returns the input bit for bit.
LabeledOperator partial_transpose(const LabeledOperator& m, const std::vector<std::string>& labels);

/// tr_S[m (I ⊗ op)] where S is op's (square) factor list.
LabeledOperator contract(const LabeledOperator& m, const LabeledOperator& op);

/// |M>> = sum_i |i> ⊗ M|i>, input index first. Labels are "in", "out".
StateVector double_ket(const Matrix& m);
/// Labeled version: the vector lives on cols ++ rows.
StateVector double_ket(const LabeledOperator& m);
/// Inverse of double_ket for an (in_dim * out_dim)-long vector.
Matrix undouble(const StateVector& v, std::size_t in_dim, std::size_t out_dim);
/// Labeled inverse: `inputs` become the columns, `outputs` the rows.
LabeledOperator undouble(const StateVector& v, const std::vector<std::string>& inputs,
                         const std::vector<std::string>& outputs);

/// Largest entrywise modulus of a - b after aligning labels.
double max_abs_diff(const LabeledOperator& a, const LabeledOperator& b);
double max_abs_diff(const StateVector& a, const StateVector& b);
bool approx_equal(const LabeledOperator& a, const LabeledOperator& b,
                  double tol = kDefaultTolerance);

/// min over phases of || a - e^{i phi} b ||_2 for equal-shape vectors.
double phase_aligned_distance(const Vector& a, const Vector& b);

namespace detail {

/// For the factor order `perm` of `from` (new position i holds old factor
/// perm[i]), returns old flat index for every new flat index.
std::vector<std::size_t> permutation_map(const Subsystems& from,
                                         const std::vector<std::size_t>& perm);
/// Positions of `labels` in `subsystems`; throws UnknownLabel.
std::vector<std::size_t> positions_of(const Subsystems& subsystems,
                                      const std::vector<std::string>& labels);
/// Permutation listing every position not in `moved`, followed by `moved`.
std::vector<std::size_t> move_to_back(std::size_t count, const std::vector<std::size_t>& moved);

}  // namespace detail

}  // namespace acausal
