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

#include "acausal/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace acausal {

namespace {

void check_unique(const Subsystems& subsystems, const char* side) {
  std::set<std::string> seen;
  for (const auto& s : subsystems) {
    if (s.dim == 0) {
      throw ShapeMismatch("subsystem '" + s.label + "' has dimension zero");
    }
    if (!seen.insert(s.label).second) {
      throw DuplicateLabel("label '" + s.label + "' repeated on the " + side + " side");
    }
  }
}

Subsystems reorder(const Subsystems& from, const std::vector<std::size_t>& perm) {
  Subsystems out;
  out.reserve(perm.size());
  for (auto p : perm) {
    out.push_back(from[p]);
  }
  return out;
}

bool is_identity(const std::vector<std::size_t>& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] != i) return false;
  }
  return true;
}

Matrix permute_matrix(const Matrix& m, const Subsystems& rows, const std::vector<std::size_t>& row_perm,
                      const Subsystems& cols, const std::vector<std::size_t>& col_perm) {
  if (is_identity(row_perm) && is_identity(col_perm)) {
    return m;
  }
  auto rmap = detail::permutation_map(rows, row_perm);
  auto cmap = detail::permutation_map(cols, col_perm);
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const auto oc = static_cast<Eigen::Index>(cmap[c]);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      out(r, c) = m(static_cast<Eigen::Index>(rmap[r]), oc);
    }
  }
  return out;
}

// Brings `b` to the label order of (rows, cols); throws if the label sets differ.
Matrix aligned_data(const LabeledOperator& b, const Subsystems& rows, const Subsystems& cols) {
  if (rows.size() != b.rows().size() || cols.size() != b.cols().size()) {
    throw ShapeMismatch("operands have different subsystem lists");
  }
  auto aligned = b.permuted(labels_of(rows), labels_of(cols));
  if (aligned.rows() != rows || aligned.cols() != cols) {
    throw ShapeMismatch("operands have different subsystem dimensions");
  }
  return aligned.data();
}

}  // namespace

std::size_t total_dim(const Subsystems& subsystems) {
  std::size_t d = 1;
  for (const auto& s : subsystems) d *= s.dim;
  return d;
}

std::vector<std::string> labels_of(const Subsystems& subsystems) {
  std::vector<std::string> out;
  out.reserve(subsystems.size());
  for (const auto& s : subsystems) out.push_back(s.label);
  return out;
}

const Subsystem& find_subsystem(const Subsystems& subsystems, const std::string& label) {
  for (const auto& s : subsystems) {
    if (s.label == label) return s;
  }
  throw UnknownLabel("no subsystem named '" + label + "'");
}

bool has_label(const Subsystems& subsystems, const std::string& label) {
  return std::any_of(subsystems.begin(), subsystems.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

namespace detail {

std::vector<std::size_t> permutation_map(const Subsystems& from,
                                         const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  std::vector<std::size_t> old_stride(from.size(), 1);
  for (std::size_t i = from.size(); i-- > 1;) {
    old_stride[i - 1] = old_stride[i] * from[i].dim;
  }
  std::vector<std::size_t> dims(n), stride(n);
  for (std::size_t i = 0; i < n; ++i) {
    dims[i] = from[perm[i]].dim;
    stride[i] = old_stride[perm[i]];
  }
  const std::size_t total = total_dim(from);
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digit(n, 0);
  std::size_t old = 0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    map[idx] = old;
    for (std::size_t i = n; i-- > 0;) {
      ++digit[i];
      old += stride[i];
      if (digit[i] < dims[i]) break;
      old -= stride[i] * dims[i];
      digit[i] = 0;
    }
  }
  return map;
}

std::vector<std::size_t> positions_of(const Subsystems& subsystems,
                                      const std::vector<std::string>& labels) {
  std::vector<std::size_t> pos;
  pos.reserve(labels.size());
  for (const auto& l : labels) {
    auto it = std::find_if(subsystems.begin(), subsystems.end(),
                           [&](const Subsystem& s) { return s.label == l; });
    if (it == subsystems.end()) {
      throw UnknownLabel("no subsystem named '" + l + "'");
    }
    pos.push_back(static_cast<std::size_t>(it - subsystems.begin()));
  }
  return pos;
}

std::vector<std::size_t> move_to_back(std::size_t count, const std::vector<std::size_t>& moved) {
  std::vector<bool> taken(count, false);
  for (auto m : moved) {
    if (taken[m]) throw DuplicateLabel("subsystem addressed twice");
    taken[m] = true;
  }
  std::vector<std::size_t> perm;
  perm.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!taken[i]) perm.push_back(i);
  }
  perm.insert(perm.end(), moved.begin(), moved.end());
  return perm;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Subsystems subsystems, Vector amplitudes)
    : subsystems_(std::move(subsystems)), amplitudes_(std::move(amplitudes)) {
  check_unique(subsystems_, "state");
  if (total_dim(subsystems_) != static_cast<std::size_t>(amplitudes_.size())) {
    throw ShapeMismatch("state length " + std::to_string(amplitudes_.size()) +
                        " does not match product of dimensions " +
                        std::to_string(total_dim(subsystems_)));
  }
  if (!std::isfinite(amplitudes_.squaredNorm())) {
    throw ShapeMismatch("state has non-finite norm");
  }
}

StateVector StateVector::basis(Subsystems subsystems, std::size_t index) {
  const auto d = total_dim(subsystems);
  if (index >= d) throw OutOfRange("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(subsystems), std::move(v));
}

StateVector StateVector::normalized() const {
  return StateVector(subsystems_, amplitudes_ / amplitudes_.norm());
}

StateVector StateVector::permuted(const std::vector<std::string>& order) const {
  if (order.size() != subsystems_.size()) {
    throw ShapeMismatch("permutation must name every subsystem");
  }
  auto perm = detail::positions_of(subsystems_, order);
  if (is_identity(perm)) return *this;
  auto map = detail::permutation_map(subsystems_, perm);
  Vector out(amplitudes_.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = amplitudes_(static_cast<Eigen::Index>(map[i]));
  }
  return StateVector(reorder(subsystems_, perm), std::move(out));
}

StateVector StateVector::with_subsystems(Subsystems subsystems) const {
  return StateVector(std::move(subsystems), amplitudes_);
}

StateVector StateVector::renamed(const std::map<std::string, std::string>& names) const {
  Subsystems s = subsystems_;
  for (auto& sub : s) {
    if (auto it = names.find(sub.label); it != names.end()) sub.label = it->second;
  }
  return StateVector(std::move(s), amplitudes_);
}

// ---------------------------------------------------------------------------
// LabeledOperator

LabeledOperator::LabeledOperator(Subsystems rows, Subsystems cols, Matrix data)
    : rows_(std::move(rows)), cols_(std::move(cols)), data_(std::move(data)) {
  check_unique(rows_, "row");
  check_unique(cols_, "column");
  if (total_dim(rows_) != static_cast<std::size_t>(data_.rows()) ||
      total_dim(cols_) != static_cast<std::size_t>(data_.cols())) {
    throw ShapeMismatch("matrix is " + std::to_string(data_.rows()) + "x" +
                        std::to_string(data_.cols()) + " but subsystems declare " +
                        std::to_string(total_dim(rows_)) + "x" + std::to_string(total_dim(cols_)));
  }
}

LabeledOperator::LabeledOperator(Subsystems both, Matrix data)
    : LabeledOperator(both, both, std::move(data)) {}

LabeledOperator LabeledOperator::identity(const Subsystems& subsystems) {
  const auto d = static_cast<Eigen::Index>(total_dim(subsystems));
  return LabeledOperator(subsystems, Matrix::Identity(d, d));
}

LabeledOperator LabeledOperator::permuted(const std::vector<std::string>& row_order,
                                          const std::vector<std::string>& col_order) const {
  if (row_order.size() != rows_.size() || col_order.size() != cols_.size()) {
    throw ShapeMismatch("permutation must name every subsystem");
  }
  auto rp = detail::positions_of(rows_, row_order);
  auto cp = detail::positions_of(cols_, col_order);
  return LabeledOperator(reorder(rows_, rp), reorder(cols_, cp),
                         permute_matrix(data_, rows_, rp, cols_, cp));
}

LabeledOperator LabeledOperator::aligned_to(const LabeledOperator& reference) const {
  return permuted(labels_of(reference.rows()), labels_of(reference.cols()));
}

LabeledOperator LabeledOperator::with_subsystems(Subsystems rows, Subsystems cols) const {
  return LabeledOperator(std::move(rows), std::move(cols), data_);
}

LabeledOperator LabeledOperator::renamed(const std::map<std::string, std::string>& names) const {
  auto rename = [&](Subsystems s) {
    for (auto& sub : s) {
      if (auto it = names.find(sub.label); it != names.end()) sub.label = it->second;
    }
    return s;
  };
  return LabeledOperator(rename(rows_), rename(cols_), data_);
}

LabeledOperator LabeledOperator::adjoint() const {
  return LabeledOperator(cols_, rows_, data_.adjoint());
}

LabeledOperator LabeledOperator::transpose() const {
  return LabeledOperator(cols_, rows_, data_.transpose());
}

Complex LabeledOperator::trace() const {
  auto aligned = permuted(labels_of(rows_), labels_of(rows_));
  if (aligned.cols() != rows_) {
    throw NonSquareSubsystem("trace of an operator with mismatched factor dimensions");
  }
  return aligned.data().trace();
}

LabeledOperator operator*(const LabeledOperator& a, const LabeledOperator& b) {
  if (a.cols().size() != b.rows().size()) {
    throw ShapeMismatch("composition: input and output factor lists differ");
  }
  auto bb = b.permuted(labels_of(a.cols()), labels_of(b.cols()));
  if (bb.rows() != a.cols()) {
    throw ShapeMismatch("composition: factor dimensions differ");
  }
  return LabeledOperator(a.rows(), bb.cols(), a.data() * bb.data());
}

LabeledOperator operator+(const LabeledOperator& a, const LabeledOperator& b) {
  return LabeledOperator(a.rows(), a.cols(), a.data() + aligned_data(b, a.rows(), a.cols()));
}

LabeledOperator operator-(const LabeledOperator& a, const LabeledOperator& b) {
  return LabeledOperator(a.rows(), a.cols(), a.data() - aligned_data(b, a.rows(), a.cols()));
}

LabeledOperator operator*(Complex scale, const LabeledOperator& a) {
  return LabeledOperator(a.rows(), a.cols(), scale * a.data());
}

StateVector apply(const LabeledOperator& op, const StateVector& psi) {
  const auto& subs = psi.subsystems();
  auto pos = detail::positions_of(subs, labels_of(op.cols()));
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (subs[pos[i]].dim != op.cols()[i].dim) {
      throw DimensionMismatch("operator input '" + op.cols()[i].label + "' has the wrong dimension");
    }
  }
  // Bring the addressed factors to the front in op's column order.
  std::vector<std::size_t> perm = pos;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (std::find(pos.begin(), pos.end(), i) == pos.end()) perm.push_back(i);
  }
  Subsystems rest(subs.size() - pos.size());
  std::transform(perm.begin() + static_cast<std::ptrdiff_t>(pos.size()), perm.end(), rest.begin(),
                 [&](std::size_t p) { return subs[p]; });
  auto moved = psi.permuted(labels_of(reorder(subs, perm)));

  const auto in_dim = static_cast<Eigen::Index>(total_dim(op.cols()));
  const auto rest_dim = static_cast<Eigen::Index>(total_dim(rest));
  // Row-major (in, rest) view of the amplitudes is a col-major (rest, in) matrix.
  Eigen::Map<const Matrix> view(moved.amplitudes().data(), rest_dim, in_dim);
  Matrix result = view * op.data().transpose();
  Subsystems out_subs = op.rows();
  out_subs.insert(out_subs.end(), rest.begin(), rest.end());
  return StateVector(std::move(out_subs),
                     Eigen::Map<const Vector>(result.data(), result.size()));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b) {
  Subsystems rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  Subsystems cols = a.cols();
  cols.insert(cols.end(), b.cols().begin(), b.cols().end());
  return LabeledOperator(std::move(rows), std::move(cols), kron(a.data(), b.data()));
}

StateVector kron(const StateVector& a, const StateVector& b) {
  Subsystems subs = a.subsystems();
  subs.insert(subs.end(), b.subsystems().begin(), b.subsystems().end());
  Vector v(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
  }
  return StateVector(std::move(subs), std::move(v));
}

LabeledOperator outer(const StateVector& psi, const StateVector& phi) {
  return LabeledOperator(psi.subsystems(), phi.subsystems(),
                         psi.amplitudes() * phi.amplitudes().adjoint());
}

LabeledOperator projector(const StateVector& psi) { return outer(psi, psi); }

LabeledOperator trace_pairs(const LabeledOperator& m,
                            const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::string> row_labels, col_labels;
  for (const auto& [r, c] : pairs) {
    row_labels.push_back(r);
    col_labels.push_back(c);
  }
  auto rpos = detail::positions_of(m.rows(), row_labels);
  auto cpos = detail::positions_of(m.cols(), col_labels);
  std::size_t block = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (m.rows()[rpos[i]].dim != m.cols()[cpos[i]].dim) {
      throw NonSquareSubsystem("cannot trace '" + pairs[i].first + "' against '" +
                               pairs[i].second + "': dimensions differ");
    }
    block *= m.rows()[rpos[i]].dim;
  }
  auto rperm = detail::move_to_back(m.rows().size(), rpos);
  auto cperm = detail::move_to_back(m.cols().size(), cpos);
  Matrix p = permute_matrix(m.data(), m.rows(), rperm, m.cols(), cperm);
  Subsystems rows = reorder(m.rows(), rperm);
  Subsystems cols = reorder(m.cols(), cperm);
  rows.resize(rows.size() - pairs.size());
  cols.resize(cols.size() - pairs.size());

  const auto k = static_cast<Eigen::Index>(block);
  const auto nr = static_cast<Eigen::Index>(total_dim(rows));
  const auto nc = static_cast<Eigen::Index>(total_dim(cols));
  Matrix out = Matrix::Zero(nr, nc);
  for (Eigen::Index c = 0; c < nc; ++c) {
    for (Eigen::Index r = 0; r < nr; ++r) {
      Complex acc = 0.0;
      for (Eigen::Index i = 0; i < k; ++i) acc += p(r * k + i, c * k + i);
      out(r, c) = acc;
    }
  }
  return LabeledOperator(std::move(rows), std::move(cols), std::move(out));
}

LabeledOperator partial_trace(const LabeledOperator& m, const std::vector<std::string>& labels) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& l : labels) pairs.emplace_back(l, l);
  return trace_pairs(m, pairs);
}

LabeledOperator partial_transpose(const LabeledOperator& m, const std::vector<std::string>& labels) {
  auto rpos = detail::positions_of(m.rows(), labels);
  auto cpos = detail::positions_of(m.cols(), labels);
  std::size_t block = 1;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (m.rows()[rpos[i]].dim != m.cols()[cpos[i]].dim) {
      throw NonSquareSubsystem("cannot transpose '" + labels[i] + "': dimensions differ");
    }
    block *= m.rows()[rpos[i]].dim;
  }
  auto rperm = detail::move_to_back(m.rows().size(), rpos);
  auto cperm = detail::move_to_back(m.cols().size(), cpos);
  Matrix p = permute_matrix(m.data(), m.rows(), rperm, m.cols(), cperm);
  const auto k = static_cast<Eigen::Index>(block);
  for (Eigen::Index r = 0; r < p.rows(); r += k) {
    for (Eigen::Index c = 0; c < p.cols(); c += k) {
      p.block(r, c, k, k).transposeInPlace();
    }
  }
  LabeledOperator moved(reorder(m.rows(), rperm), reorder(m.cols(), cperm), std::move(p));
  return moved.permuted(labels_of(m.rows()), labels_of(m.cols()));
}

LabeledOperator contract(const LabeledOperator& m, const LabeledOperator& op) {
  if (!op.is_square()) {
    throw NonSquareSubsystem("contraction operator must have identical row and column factors");
  }
  auto labels = labels_of(op.rows());
  auto rpos = detail::positions_of(m.rows(), labels);
  auto cpos = detail::positions_of(m.cols(), labels);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (m.rows()[rpos[i]].dim != op.rows()[i].dim || m.cols()[cpos[i]].dim != op.rows()[i].dim) {
      throw DimensionMismatch("contraction over '" + labels[i] + "': dimensions differ");
    }
  }
  auto rperm = detail::move_to_back(m.rows().size(), rpos);
  auto cperm = detail::move_to_back(m.cols().size(), cpos);
  Matrix p = permute_matrix(m.data(), m.rows(), rperm, m.cols(), cperm);
  Subsystems rows = reorder(m.rows(), rperm);
  Subsystems cols = reorder(m.cols(), cperm);
  rows.resize(rows.size() - labels.size());
  cols.resize(cols.size() - labels.size());

  const auto k = static_cast<Eigen::Index>(total_dim(op.rows()));
  const auto nr = static_cast<Eigen::Index>(total_dim(rows));
  const auto nc = static_cast<Eigen::Index>(total_dim(cols));
  const Matrix op_t = op.data().transpose();
  Matrix out(nr, nc);
  for (Eigen::Index c = 0; c < nc; ++c) {
    for (Eigen::Index r = 0; r < nr; ++r) {
      out(r, c) = p.block(r * k, c * k, k, k).cwiseProduct(op_t).sum();
    }
  }
  return LabeledOperator(std::move(rows), std::move(cols), std::move(out));
}

StateVector double_ket(const Matrix& m) {
  const auto out_dim = static_cast<std::size_t>(m.rows());
  const auto in_dim = static_cast<std::size_t>(m.cols());
  // Column-major storage of M is exactly sum_i |i> ⊗ M|i>.
  return StateVector({{"in", in_dim}, {"out", out_dim}}, Eigen::Map<const Vector>(m.data(), m.size()));
}

StateVector double_ket(const LabeledOperator& m) {
  Subsystems subs = m.cols();
  subs.insert(subs.end(), m.rows().begin(), m.rows().end());
  const Matrix& d = m.data();
  return StateVector(std::move(subs), Eigen::Map<const Vector>(d.data(), d.size()));
}

Matrix undouble(const StateVector& v, std::size_t in_dim, std::size_t out_dim) {
  if (v.dim() != in_dim * out_dim) {
    throw ShapeMismatch("vector of length " + std::to_string(v.dim()) + " is not " +
                        std::to_string(in_dim) + "x" + std::to_string(out_dim));
  }
  return Eigen::Map<const Matrix>(v.amplitudes().data(), static_cast<Eigen::Index>(out_dim),
                                  static_cast<Eigen::Index>(in_dim));
}

LabeledOperator undouble(const StateVector& v, const std::vector<std::string>& inputs,
                         const std::vector<std::string>& outputs) {
  std::vector<std::string> order = inputs;
  order.insert(order.end(), outputs.begin(), outputs.end());
  auto p = v.permuted(order);
  Subsystems cols(p.subsystems().begin(),
                  p.subsystems().begin() + static_cast<std::ptrdiff_t>(inputs.size()));
  Subsystems rows(p.subsystems().begin() + static_cast<std::ptrdiff_t>(inputs.size()),
                  p.subsystems().end());
  Matrix m = undouble(p, total_dim(cols), total_dim(rows));
  return LabeledOperator(std::move(rows), std::move(cols), std::move(m));
}

double max_abs_diff(const LabeledOperator& a, const LabeledOperator& b) {
  return (a.data() - aligned_data(b, a.rows(), a.cols())).cwiseAbs().maxCoeff();
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
  if (a.subsystems().size() != b.subsystems().size()) {
    throw ShapeMismatch("states have different subsystem lists");
  }
  auto bb = b.permuted(labels_of(a.subsystems()));
  if (bb.subsystems() != a.subsystems()) {
    throw ShapeMismatch("states have different subsystem dimensions");
  }
  return (a.amplitudes() - bb.amplitudes()).cwiseAbs().maxCoeff();
}

bool approx_equal(const LabeledOperator& a, const LabeledOperator& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

double phase_aligned_distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ShapeMismatch("vectors differ in length");
  const Complex overlap = b.dot(a);
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a - phase * b).norm();
}

}  // namespace acausal
