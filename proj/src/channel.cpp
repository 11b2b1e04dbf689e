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

#include "acausal/channel.hpp"

#include <algorithm>
#include <cmath>

namespace acausal {

namespace {

double hermitian_norm(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

Channel::Channel(std::size_t in_dim, std::size_t out_dim, std::vector<Matrix> kraus)
    : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)) {
  if (in_dim_ == 0 || out_dim_ == 0) throw ShapeMismatch("channel dimensions must be positive");
  if (kraus_.empty()) throw ShapeMismatch("channel needs at least one Kraus operator");
  for (const auto& k : kraus_) {
    if (static_cast<std::size_t>(k.rows()) != out_dim_ ||
        static_cast<std::size_t>(k.cols()) != in_dim_) {
      throw ShapeMismatch("Kraus operator is " + std::to_string(k.rows()) + "x" +
                          std::to_string(k.cols()) + ", expected " + std::to_string(out_dim_) +
                          "x" + std::to_string(in_dim_));
    }
  }
}

Channel Channel::unitary(const Matrix& u) {
  return Channel(static_cast<std::size_t>(u.cols()), static_cast<std::size_t>(u.rows()), {u});
}

Channel Channel::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return unitary(Matrix::Identity(d, d));
}

Matrix Channel::apply(const Matrix& rho) const {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(out_dim_), static_cast<Eigen::Index>(out_dim_));
  for (const auto& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

Matrix Channel::kraus_sum() const {
  Matrix s = Matrix::Zero(static_cast<Eigen::Index>(in_dim_), static_cast<Eigen::Index>(in_dim_));
  for (const auto& k : kraus_) s += k.adjoint() * k;
  return s;
}

Channel mixture(double lambda, const Channel& a, const Channel& b) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
    throw DimensionMismatch("mixture of channels with different dimensions");
  }
  std::vector<Matrix> kraus;
  if (lambda > 0.0) {
    for (const auto& k : a.kraus()) kraus.push_back(std::sqrt(lambda) * k);
  }
  if (lambda < 1.0) {
    for (const auto& k : b.kraus()) kraus.push_back(std::sqrt(1.0 - lambda) * k);
  }
  return Channel(a.in_dim(), a.out_dim(), std::move(kraus));
}

LabeledOperator kraus_to_choi(const Channel& c) {
  const auto d = static_cast<Eigen::Index>(c.in_dim() * c.out_dim());
  Matrix choi = Matrix::Zero(d, d);
  for (const auto& k : c.kraus()) {
    Eigen::Map<const Vector> v(k.data(), k.size());
    choi.noalias() += v * v.adjoint();
  }
  return LabeledOperator({{"in", c.in_dim()}, {"out", c.out_dim()}}, std::move(choi));
}

Channel choi_to_kraus(const LabeledOperator& choi, std::size_t in_dim, std::size_t out_dim) {
  const auto d = static_cast<Eigen::Index>(in_dim * out_dim);
  if (choi.data().rows() != d || choi.data().cols() != d) {
    throw ShapeMismatch("Choi operator does not have dimension in_dim * out_dim");
  }
  const Matrix herm = 0.5 * (choi.data() + choi.data().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  const auto& evals = es.eigenvalues();
  if (evals.minCoeff() < -kDefaultTolerance) {
    throw NotPSD("Choi operator has eigenvalue " + std::to_string(evals.minCoeff()));
  }
  std::vector<Matrix> kraus;
  for (Eigen::Index i = d; i-- > 0;) {
    if (evals(i) <= 1e-12) continue;
    Vector v = std::sqrt(evals(i)) * es.eigenvectors().col(i);
    kraus.push_back(Eigen::Map<const Matrix>(v.data(), static_cast<Eigen::Index>(out_dim),
                                             static_cast<Eigen::Index>(in_dim)));
  }
  if (kraus.empty()) {
    kraus.push_back(Matrix::Zero(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(in_dim)));
  }
  return Channel(in_dim, out_dim, std::move(kraus));
}

Channel random_cptp(Rng& rng, std::size_t in_dim, std::size_t out_dim, std::size_t rank) {
  if (rank == 0) rank = in_dim * out_dim;
  if (rank * out_dim < in_dim) {
    throw DimensionMismatch("Kraus rank too small for an isometry");
  }
  Matrix v = random_isometry(rng, rank * out_dim, in_dim);
  std::vector<Matrix> kraus;
  kraus.reserve(rank);
  const auto od = static_cast<Eigen::Index>(out_dim);
  for (std::size_t r = 0; r < rank; ++r) {
    kraus.push_back(v.block(static_cast<Eigen::Index>(r) * od, 0, od, v.cols()));
  }
  return Channel(in_dim, out_dim, std::move(kraus));
}

Channel random_cptp(std::uint64_t seed, std::size_t in_dim, std::size_t out_dim, std::size_t rank) {
  Rng rng(seed);
  return random_cptp(rng, in_dim, out_dim, rank);
}

Purification purify(const Channel& c, double tol) {
  auto report = is_cptp(c, tol);
  if (!report.ok()) {
    throw NotCPTP("cannot purify: TP deviation " + std::to_string(report.tp_deviation) +
                  ", CP floor " + std::to_string(report.cp_floor));
  }
  const std::size_t in = c.in_dim();
  const std::size_t out = c.out_dim();
  std::size_t anc_out = 1;
  while (anc_out < c.rank()) anc_out *= 2;
  while (anc_out * out < in || (anc_out * out) % in != 0) ++anc_out;
  const std::size_t anc_in = anc_out * out / in;
  const auto total = static_cast<Eigen::Index>(anc_out * out);

  // Stinespring isometry V = sum_i |i> ⊗ K_i, ancilla first.
  Matrix v = Matrix::Zero(total, static_cast<Eigen::Index>(in));
  const auto od = static_cast<Eigen::Index>(out);
  for (std::size_t i = 0; i < c.rank(); ++i) {
    v.block(static_cast<Eigen::Index>(i) * od, 0, od, v.cols()) = c.kraus()[i];
  }
  Matrix u(total, total);
  u.leftCols(v.cols()) = v;
  if (total > v.cols()) {
    Eigen::HouseholderQR<Matrix> qr(v);
    Matrix q = qr.householderQ();
    u.rightCols(total - v.cols()) = q.rightCols(total - v.cols());
  }
  LabeledOperator op({{"anc", anc_out}, {"sys", out}}, {{"anc", anc_in}, {"sys", in}}, std::move(u));
  return Purification{std::move(op), anc_in, anc_out};
}

double tp_deviation(const Channel& c) {
  const auto d = static_cast<Eigen::Index>(c.in_dim());
  return hermitian_norm(c.kraus_sum() - Matrix::Identity(d, d));
}

double unitality_deviation(const Channel& c) {
  const auto d = static_cast<Eigen::Index>(c.out_dim());
  Matrix s = Matrix::Zero(d, d);
  for (const auto& k : c.kraus()) s += k * k.adjoint();
  return hermitian_norm(s - Matrix::Identity(d, d));
}

CptpReport is_cptp(const Channel& c, double tol) {
  CptpReport r;
  Eigen::SelfAdjointEigenSolver<Matrix> es(kraus_to_choi(c).data(), Eigen::EigenvaluesOnly);
  r.cp_floor = es.eigenvalues().minCoeff();
  r.tp_deviation = tp_deviation(c);
  r.completely_positive = r.cp_floor >= -tol;
  r.trace_preserving = r.tp_deviation <= tol;
  return r;
}

double choi_distance(const Channel& a, const Channel& b) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
    throw DimensionMismatch("Choi distance between channels of different dimensions");
  }
  return (kraus_to_choi(a).data() - kraus_to_choi(b).data()).norm();
}

Instrument::Instrument(std::vector<InstrumentElement> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw ShapeMismatch("instrument needs at least one element");
  for (const auto& e : elements_) {
    if (e.map.in_dim() != in_dim() || e.map.out_dim() != out_dim()) {
      throw DimensionMismatch("instrument elements have different dimensions");
    }
  }
}

Channel Instrument::total() const {
  std::vector<Matrix> kraus;
  for (const auto& e : elements_) {
    kraus.insert(kraus.end(), e.map.kraus().begin(), e.map.kraus().end());
  }
  return Channel(in_dim(), out_dim(), std::move(kraus));
}

CptpReport Instrument::check(double tol) const {
  CptpReport r = is_cptp(total(), tol);
  for (const auto& e : elements_) {
    r.cp_floor = std::min(r.cp_floor, is_cptp(e.map, tol).cp_floor);
  }
  r.completely_positive = r.cp_floor >= -tol;
  return r;
}

Instrument trivial_instrument(const Channel& c, int outcome) {
  return Instrument({InstrumentElement{outcome, c}});
}

}  // namespace acausal
