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

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include "acausal/pctc.hpp"

namespace acausal {

namespace {

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

// Labels placed so that slot n-1 comes first and slot 0 sits at the fastest
// varying end, letting contract_slots peel slot 0 first.
std::vector<std::string> contraction_order(const ProcessMatrix& w) {
  auto order = labels_of(w.past());
  auto fut = labels_of(w.future());
  order.insert(order.end(), fut.begin(), fut.end());
  for (auto it = w.slots().rbegin(); it != w.slots().rend(); ++it) {
    order.push_back(it->input.label);
    order.push_back(it->output.label);
  }
  return order;
}

Subsystems past_then_future(const ProcessMatrix& w) {
  Subsystems s = w.past();
  s.insert(s.end(), w.future().begin(), w.future().end());
  return s;
}

// Hermitian basis of d x d matrices (d^2 elements) or its traceless part.
std::vector<Matrix> hermitian_basis(std::size_t d, bool traceless) {
  const auto n = static_cast<Eigen::Index>(d);
  std::vector<Matrix> basis;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (traceless && j == 0) continue;
    Matrix e = Matrix::Zero(n, n);
    e(j, j) = 1.0;
    if (traceless) e(0, 0) = 1.0, e(j, j) = -1.0;
    basis.push_back(e);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      Matrix re = Matrix::Zero(n, n);
      re(j, k) = re(k, j) = 1.0;
      Matrix im = Matrix::Zero(n, n);
      im(j, k) = Complex(0.0, 1.0);
      im(k, j) = Complex(0.0, -1.0);
      basis.push_back(re);
      basis.push_back(im);
    }
  }
  return basis;
}

Channel base_channel(std::size_t din, std::size_t dout) {
  if (din == dout) return Channel::identity(din);
  // Replace the input with the maximally mixed state.
  std::vector<Matrix> kraus;
  const auto di = static_cast<Eigen::Index>(din);
  const auto dd = static_cast<Eigen::Index>(dout);
  for (Eigen::Index i = 0; i < di; ++i) {
    for (Eigen::Index j = 0; j < dd; ++j) {
      Matrix k = Matrix::Zero(dd, di);
      k(j, i) = 1.0 / std::sqrt(static_cast<double>(dout));
      kraus.push_back(k);
    }
  }
  return Channel(din, dout, std::move(kraus));
}

double expected_probability(const ProcessMatrix& w) {
  double p = 1.0;
  for (const auto& s : w.slots()) {
    p /= static_cast<double>(s.output.dim * s.output.dim);
  }
  return p;
}

std::vector<SlotTerms> terms_for(const ProcessMatrix& w, const std::vector<Channel>& channels) {
  if (channels.size() != w.slots().size()) {
    throw DimensionMismatch("expected " + std::to_string(w.slots().size()) + " channels, got " +
                            std::to_string(channels.size()));
  }
  std::vector<SlotTerms> terms;
  terms.reserve(channels.size());
  for (std::size_t k = 0; k < channels.size(); ++k) {
    const auto& s = w.slots()[k];
    if (channels[k].in_dim() != s.input.dim || channels[k].out_dim() != s.output.dim) {
      throw DimensionMismatch("channel for slot " + s.name + " is " +
                              std::to_string(channels[k].in_dim()) + "->" +
                              std::to_string(channels[k].out_dim()) + ", slot expects " +
                              std::to_string(s.input.dim) + "->" + std::to_string(s.output.dim));
    }
    terms.push_back(slot_terms(channels[k]));
  }
  return terms;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProcessMatrix

ProcessMatrix::ProcessMatrix(Subsystems past, Subsystems future, std::vector<Slot> slots,
                             std::variant<StateVector, LabeledOperator> body)
    : past_(std::move(past)), future_(std::move(future)), slots_(std::move(slots)),
      body_(std::move(body)) {
  const Subsystems expected = canonical_order();
  std::set<std::string> seen;
  for (const auto& s : expected) {
    if (!seen.insert(s.label).second) {
      throw DuplicateLabel("process label '" + s.label + "' used twice");
    }
  }
  auto matches = [&](const Subsystems& subs) {
    if (subs.size() != expected.size()) return false;
    for (const auto& s : subs) {
      if (!has_label(expected, s.label) || find_subsystem(expected, s.label).dim != s.dim) {
        return false;
      }
    }
    return true;
  };
  if (const auto* v = std::get_if<StateVector>(&body_)) {
    if (!matches(v->subsystems())) {
      throw DimensionMismatch("process vector factors do not match past, future and slots");
    }
  } else {
    const auto& m = std::get<LabeledOperator>(body_);
    if (!matches(m.rows()) || !matches(m.cols())) {
      throw DimensionMismatch("process matrix factors do not match past, future and slots");
    }
  }
}

ProcessMatrix ProcessMatrix::pure(Subsystems past, Subsystems future, std::vector<Slot> slots,
                                  StateVector w) {
  return ProcessMatrix(std::move(past), std::move(future), std::move(slots), std::move(w));
}

ProcessMatrix ProcessMatrix::mixed(Subsystems past, Subsystems future, std::vector<Slot> slots,
                                   LabeledOperator w) {
  return ProcessMatrix(std::move(past), std::move(future), std::move(slots), std::move(w));
}

const StateVector& ProcessMatrix::vector() const {
  if (const auto* v = std::get_if<StateVector>(&body_)) return *v;
  throw NotPure("process is stored in matrix form");
}

LabeledOperator ProcessMatrix::matrix() const {
  if (const auto* v = std::get_if<StateVector>(&body_)) return projector(*v);
  return std::get<LabeledOperator>(body_);
}

ProcessMatrix ProcessMatrix::as_matrix() const {
  return ProcessMatrix(past_, future_, slots_, matrix());
}

LabeledOperator ProcessMatrix::process_operator() const {
  std::vector<std::string> inputs = labels_of(past_);
  std::vector<std::string> outputs = labels_of(future_);
  for (const auto& s : slots_) {
    inputs.push_back(s.output.label);
    outputs.push_back(s.input.label);
  }
  return undouble(vector(), inputs, outputs);
}

Subsystems ProcessMatrix::canonical_order() const {
  Subsystems out = past_;
  for (const auto& s : slots_) {
    out.push_back(s.input);
    out.push_back(s.output);
  }
  out.insert(out.end(), future_.begin(), future_.end());
  return out;
}

// ---------------------------------------------------------------------------
// Slot operators and the induced map

SlotTerms slot_terms(const Channel& c) {
  SlotTerms terms;
  terms.reserve(c.rank());
  for (const auto& k : c.kraus()) {
    terms.push_back({1.0, Eigen::Map<const Vector>(k.data(), k.size())});
  }
  return terms;
}

SlotTerms slot_terms(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (hermitian + hermitian.adjoint()));
  SlotTerms terms;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double w = es.eigenvalues()(i);
    if (std::abs(w) > 1e-14) terms.push_back({w, es.eigenvectors().col(i)});
  }
  return terms;
}

InducedMap::InducedMap(Subsystems past, Subsystems future, std::vector<WeightedVector> terms)
    : past_(std::move(past)), future_(std::move(future)), terms_(std::move(terms)) {}

InducedMap::InducedMap(Subsystems past, Subsystems future, Matrix choi)
    : past_(std::move(past)), future_(std::move(future)), choi_(std::move(choi)) {}

LabeledOperator InducedMap::choi() const {
  Subsystems both = past_;
  both.insert(both.end(), future_.begin(), future_.end());
  if (choi_) return LabeledOperator(both, *choi_);
  const auto d = static_cast<Eigen::Index>(total_dim(both));
  Matrix m = Matrix::Zero(d, d);
  for (const auto& t : terms_) m.noalias() += t.weight * t.vec * t.vec.adjoint();
  return LabeledOperator(both, std::move(m));
}

Channel InducedMap::channel() const {
  const auto dp = total_dim(past_);
  const auto df = total_dim(future_);
  if (choi_) return choi_to_kraus(choi(), dp, df);
  std::vector<Matrix> kraus;
  kraus.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (t.weight < 0.0) throw NotPSD("induced map has a negative-weight term");
    kraus.push_back(std::sqrt(t.weight) *
                    Eigen::Map<const Matrix>(t.vec.data(), static_cast<Eigen::Index>(df),
                                             static_cast<Eigen::Index>(dp)));
  }
  if (kraus.empty()) {
    kraus.push_back(Matrix::Zero(static_cast<Eigen::Index>(df), static_cast<Eigen::Index>(dp)));
  }
  return Channel(dp, df, std::move(kraus));
}

Matrix InducedMap::transfer_sum() const {
  const auto dp = static_cast<Eigen::Index>(total_dim(past_));
  const auto df = static_cast<Eigen::Index>(total_dim(future_));
  Matrix s = Matrix::Zero(dp, dp);
  if (choi_) {
    for (Eigen::Index i = 0; i < dp; ++i) {
      for (Eigen::Index j = 0; j < dp; ++j) {
        Complex acc = 0.0;
        for (Eigen::Index f = 0; f < df; ++f) acc += (*choi_)(i * df + f, j * df + f);
        s(j, i) = acc;
      }
    }
    return s;
  }
  for (const auto& t : terms_) {
    Eigen::Map<const Matrix> k(t.vec.data(), df, dp);
    s.noalias() += t.weight * k.adjoint() * k;
  }
  return s;
}

double InducedMap::trace_of_output(const Matrix& rho) const {
  return (rho * transfer_sum()).trace().real();
}

InducedMap contract_slots(const ProcessMatrix& w, std::span<const SlotTerms> slots) {
  if (slots.size() != w.slots().size()) {
    throw DimensionMismatch("expected operators for " + std::to_string(w.slots().size()) +
                            " slots, got " + std::to_string(slots.size()));
  }
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const auto dk = static_cast<Eigen::Index>(w.slots()[k].input.dim * w.slots()[k].output.dim);
    for (const auto& t : slots[k]) {
      if (t.vec.size() != dk) {
        throw DimensionMismatch("slot operator for " + w.slots()[k].name + " has wrong size");
      }
    }
  }

  if (w.is_pure()) {
    auto p = w.vector().permuted(contraction_order(w));
    std::vector<WeightedVector> branches{{1.0, p.amplitudes()}};
    auto remaining = static_cast<Eigen::Index>(p.dim());
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const auto dk = static_cast<Eigen::Index>(w.slots()[k].input.dim * w.slots()[k].output.dim);
      remaining /= dk;
      std::vector<WeightedVector> next;
      next.reserve(branches.size() * slots[k].size());
      for (const auto& b : branches) {
        // Row-major (remaining, dk) view: slot k is the fastest index.
        Eigen::Map<const Matrix> view(b.vec.data(), dk, remaining);
        for (const auto& t : slots[k]) {
          next.push_back({b.weight * t.weight, view.transpose() * t.vec});
        }
      }
      branches = std::move(next);
    }
    return InducedMap(w.past(), w.future(), std::move(branches));
  }

  LabeledOperator m = w.matrix();
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const auto& s = w.slots()[k];
    const auto dk = static_cast<Eigen::Index>(s.input.dim * s.output.dim);
    Matrix a = Matrix::Zero(dk, dk);
    for (const auto& t : slots[k]) a.noalias() += t.weight * t.vec * t.vec.adjoint();
    LabeledOperator op(Subsystems{s.input, s.output}, a.transpose());
    m = contract(m, op);
  }
  auto order = labels_of(past_then_future(w));
  return InducedMap(w.past(), w.future(), m.permuted(order, order).data());
}

Channel apply_process(const ProcessMatrix& w, const std::vector<Channel>& channels) {
  auto terms = terms_for(w, channels);
  return contract_slots(w, terms).channel();
}

LabeledOperator induced_choi(const ProcessMatrix& w, const std::vector<Channel>& channels) {
  auto terms = terms_for(w, channels);
  return contract_slots(w, terms).choi();
}

double postselection_probability(const ProcessMatrix& w, const std::vector<Channel>& channels,
                                 const Matrix& rho) {
  if (static_cast<std::size_t>(rho.rows()) != w.past_dim() ||
      static_cast<std::size_t>(rho.cols()) != w.past_dim()) {
    throw DimensionMismatch("input state does not live on the past");
  }
  auto terms = terms_for(w, channels);
  return contract_slots(w, terms).trace_of_output(rho) * expected_probability(w);
}

// ---------------------------------------------------------------------------
// Validity

std::vector<Channel> random_channel_tuple(Rng& rng, const ProcessMatrix& w) {
  std::vector<Channel> out;
  out.reserve(w.slots().size());
  for (std::size_t k = 0; k < w.slots().size(); ++k) {
    const auto din = w.slots()[k].input.dim;
    const auto dout = w.slots()[k].output.dim;
    const std::size_t max_rank = din * dout;
    const std::size_t min_rank = (din + dout - 1) / dout;
    if (k == 0) {
      Channel c = random_cptp(rng, din, dout, max_rank);
      for (int tries = 0; din == dout && unitality_deviation(c) < 1e-6 && tries < 16; ++tries) {
        c = random_cptp(rng, din, dout, max_rank);
      }
      out.push_back(std::move(c));
    } else {
      std::uniform_int_distribution<std::size_t> pick(min_rank, max_rank);
      out.push_back(random_cptp(rng, din, dout, pick(rng)));
    }
  }
  return out;
}

ValidityReport check_validity(const ProcessMatrix& w, const ValidityConfig& config) {
  ValidityReport report;
  report.samples = config.samples;
  report.expected_probability = expected_probability(w);
  report.per_sample.resize(config.samples);
  const auto dp = static_cast<Eigen::Index>(w.past_dim());
  const Matrix eye = Matrix::Identity(dp, dp);

  auto run_sample = [&](std::size_t i) {
    Rng rng(derive_seed(config.seed, i));
    auto channels = random_channel_tuple(rng, w);
    Matrix rho = random_density(rng, w.past()).data();
    auto terms = terms_for(w, channels);
    auto induced = contract_slots(w, terms);
    Matrix transfer = induced.transfer_sum();
    SampleDeviation dev;
    dev.tp = operator_norm(transfer - eye);
    const double p = (rho * transfer).trace().real() * report.expected_probability;
    dev.probability = std::abs(p - report.expected_probability);
    report.per_sample[i] = dev;
  };

  const unsigned threads = std::max(1u, config.threads);
  if (threads == 1 || config.samples < 2) {
    for (std::size_t i = 0; i < config.samples; ++i) run_sample(i);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < config.samples; i += threads) run_sample(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (const auto& d : report.per_sample) {
    report.max_tp_deviation = std::max(report.max_tp_deviation, d.tp);
    report.max_probability_deviation = std::max(report.max_probability_deviation, d.probability);
  }
  bool valid = report.max_tp_deviation < config.tolerance &&
               report.max_probability_deviation < config.tolerance;

  if (!w.is_pure()) {
    const auto m = w.matrix().data();
    if (m.rows() <= 1024) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
      report.psd_floor = es.eigenvalues().minCoeff();
      valid = valid && *report.psd_floor >= -config.tolerance;
    }
  }

  if (config.basis) {
    // Per slot: the base TP map followed by traceless-output perturbations.
    std::vector<std::vector<SlotTerms>> options;
    std::size_t combos = 1;
    for (const auto& s : w.slots()) {
      std::vector<SlotTerms> opts{slot_terms(base_channel(s.input.dim, s.output.dim))};
      for (const auto& a : hermitian_basis(s.input.dim, false)) {
        for (const auto& b : hermitian_basis(s.output.dim, true)) {
          opts.push_back(slot_terms(kron(a, b)));
        }
      }
      combos *= opts.size();
      check_budget(combos, config.basis_limit, "basis-mode validity check");
      options.push_back(std::move(opts));
    }
    std::vector<std::size_t> digit(options.size(), 0);
    double worst = 0.0;
    std::vector<SlotTerms> chosen(options.size());
    for (std::size_t c = 0; c < combos; ++c) {
      bool all_base = true;
      for (std::size_t k = 0; k < options.size(); ++k) {
        chosen[k] = options[k][digit[k]];
        all_base = all_base && digit[k] == 0;
      }
      Matrix transfer = contract_slots(w, chosen).transfer_sum();
      if (all_base) transfer -= eye;
      worst = std::max(worst, operator_norm(transfer));
      for (std::size_t k = options.size(); k-- > 0;) {
        if (++digit[k] < options[k].size()) break;
        digit[k] = 0;
      }
    }
    report.basis_terms = combos;
    report.basis_max_deviation = worst;
    valid = valid && worst < config.tolerance;
  }
  report.valid = valid;
  return report;
}

// ---------------------------------------------------------------------------

LabeledOperator induced_unitary(const ProcessMatrix& w) {
  auto u_w = w.process_operator();
  std::vector<pctc::CtcPair> pairs;
  double scale = 1.0;
  for (const auto& s : w.slots()) {
    pairs.emplace_back(s.input.label, s.output.label);
    scale *= static_cast<double>(s.input.dim);
  }
  auto k = pctc::contract({u_w, pairs});
  auto future = labels_of(w.future());
  auto past = labels_of(w.past());
  return (Complex(scale) * k).permuted(future, past);
}

std::map<std::vector<int>, double> outcome_probabilities(const ProcessMatrix& w,
                                                         const std::vector<Instrument>& instruments,
                                                         const Matrix& rho) {
  if (instruments.size() != w.slots().size()) {
    throw DimensionMismatch("one instrument per slot required");
  }
  std::vector<std::vector<SlotTerms>> options;
  for (std::size_t k = 0; k < instruments.size(); ++k) {
    const auto& s = w.slots()[k];
    if (instruments[k].in_dim() != s.input.dim || instruments[k].out_dim() != s.output.dim) {
      throw DimensionMismatch("instrument for slot " + s.name + " has wrong dimensions");
    }
    std::vector<SlotTerms> opts;
    for (const auto& e : instruments[k].elements()) opts.push_back(slot_terms(e.map));
    options.push_back(std::move(opts));
  }
  std::map<std::vector<int>, double> dist;
  std::vector<std::size_t> digit(options.size(), 0);
  std::vector<SlotTerms> chosen(options.size());
  std::vector<int> outcome(options.size());
  while (true) {
    for (std::size_t k = 0; k < options.size(); ++k) {
      chosen[k] = options[k][digit[k]];
      outcome[k] = instruments[k].elements()[digit[k]].outcome;
    }
    dist[outcome] += contract_slots(w, chosen).trace_of_output(rho);
    std::size_t k = options.size();
    while (k-- > 0) {
      if (++digit[k] < options[k].size()) break;
      digit[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Standard processes

std::vector<Slot> standard_slots(std::size_t parties, std::size_t d) {
  std::vector<Slot> slots;
  for (std::size_t k = 0; k < parties; ++k) {
    const auto id = std::to_string(k);
    slots.push_back({"A" + id, {"AI" + id, d}, {"AO" + id, d}});
  }
  return slots;
}

namespace {

StateVector wire(const std::string& from, const std::string& to, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return double_ket(Matrix(Matrix::Identity(n, n))).renamed({{"in", from}, {"out", to}});
}

}  // namespace

ProcessMatrix causal_chain_process(std::size_t parties, std::size_t d) {
  auto slots = standard_slots(parties, d);
  std::string prev = "P";
  std::optional<StateVector> v;
  for (const auto& s : slots) {
    auto piece = wire(prev, s.input.label, d);
    v = v ? kron(*v, piece) : piece;
    prev = s.output.label;
  }
  auto last = wire(prev, "F", d);
  v = v ? kron(*v, last) : last;
  return ProcessMatrix::pure({{"P", d}}, {{"F", d}}, std::move(slots), *v);
}

ProcessMatrix product_unitary_process(std::size_t parties, const Matrix& u) {
  if (u.rows() != u.cols()) throw DimensionMismatch("U must be square");
  const auto d = static_cast<std::size_t>(u.rows());
  auto slots = standard_slots(parties, d);
  StateVector v = wire("P", "F", d);
  for (const auto& s : slots) {
    v = kron(v, double_ket(u).renamed({{"in", s.output.label}, {"out", s.input.label}}));
  }
  return ProcessMatrix::pure({{"P", d}}, {{"F", d}}, std::move(slots), v);
}

ProcessMatrix random_pure_process(Rng& rng, std::size_t parties, std::size_t d,
                                  std::size_t past_dim) {
  auto slots = standard_slots(parties, d);
  Subsystems cols{{"P", past_dim}};
  Subsystems rows{{"F", past_dim}};
  for (const auto& s : slots) {
    cols.push_back(s.output);
    rows.push_back(s.input);
  }
  LabeledOperator u(rows, cols, haar_unitary(rng, total_dim(cols)));
  return ProcessMatrix::pure({{"P", past_dim}}, {{"F", past_dim}}, std::move(slots),
                             double_ket(u));
}

}  // namespace acausal
