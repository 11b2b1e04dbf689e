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

#include "acausal/pctc.hpp"

#include <cmath>
#include <set>

namespace acausal::pctc {

namespace {

constexpr double kMinNorm = 1e-12;

}  // namespace

LabeledOperator contract(const PctcSpec& spec) {
  std::set<std::string> seen_out, seen_in;
  double scale = 1.0;
  for (const auto& [out, in] : spec.ctc_pairs) {
    const auto& o = find_subsystem(spec.op.rows(), out);
    const auto& i = find_subsystem(spec.op.cols(), in);
    if (o.dim != i.dim) {
      throw DimensionMismatch("CTC pair (" + out + ", " + in + ") joins dimensions " +
                              std::to_string(o.dim) + " and " + std::to_string(i.dim));
    }
    if (!seen_out.insert(out).second || !seen_in.insert(in).second) {
      throw DimensionMismatch("subsystem used by two CTC pairs");
    }
    scale *= static_cast<double>(o.dim);
  }
  auto wired = trace_pairs(spec.op, spec.ctc_pairs);
  return Complex(1.0 / scale) * wired;
}

double success_probability(const LabeledOperator& k, const StateVector& psi) {
  if (psi.subsystems().size() != k.cols().size()) {
    throw DimensionMismatch("state does not live on the operator's input space");
  }
  return apply(k, psi).amplitudes().squaredNorm();
}

StateVector evolve(const LabeledOperator& k, const StateVector& psi) {
  if (psi.subsystems().size() != k.cols().size()) {
    throw DimensionMismatch("state does not live on the operator's input space");
  }
  auto out = apply(k, psi);
  const double n = out.norm();
  if (n < kMinNorm) {
    throw UndefinedEvolution("||K psi|| = " + std::to_string(n) +
                             "; the post-selection never succeeds");
  }
  return out.normalized();
}

Teleportation postselected_teleport(const StateVector& psi) {
  const auto d = psi.dim();
  const auto di = static_cast<Eigen::Index>(d);
  Vector phi = Vector::Zero(di * di);
  for (Eigen::Index i = 0; i < di; ++i) phi(i * di + i) = 1.0 / std::sqrt(static_cast<double>(d));

  StateVector input = psi.with_subsystems({{"tp.in", d}});
  StateVector pair({{"tp.a", d}, {"tp.b", d}}, phi);
  StateVector joint = kron(input, pair);
  // <phi+| on (in, a): a 1 x d^2 operator with no output factors.
  LabeledOperator bell_bra(Subsystems{}, {{"tp.in", d}, {"tp.a", d}}, phi.adjoint());
  StateVector rest = apply(bell_bra, joint);
  const double p = rest.amplitudes().squaredNorm();
  return Teleportation{rest.with_subsystems(psi.subsystems()).normalized(), p};
}

MixedEvolution evolve_mixed(const PctcChannelSpec& spec, const LabeledOperator& rho) {
  if (total_dim(spec.inputs) != spec.channel.in_dim() ||
      total_dim(spec.outputs) != spec.channel.out_dim()) {
    throw DimensionMismatch("channel dimensions do not match the declared factors");
  }
  auto pur = purify(spec.channel);
  const std::string anc = "pctc.anc";
  Subsystems rows{{anc, pur.ancilla_out_dim}};
  rows.insert(rows.end(), spec.outputs.begin(), spec.outputs.end());
  Subsystems cols{{anc, pur.ancilla_in_dim}};
  cols.insert(cols.end(), spec.inputs.begin(), spec.inputs.end());
  auto k = contract({pur.unitary.with_subsystems(rows, cols), spec.ctc_pairs});

  auto anc0 = projector(StateVector::basis({{anc, pur.ancilla_in_dim}}, 0));
  auto full = kron(anc0, rho);
  auto sigma = partial_trace(k * full * k.adjoint(), {anc});
  const double p = sigma.trace().real();
  if (p < kMinNorm * kMinNorm) {
    throw UndefinedEvolution("post-selection probability " + std::to_string(p));
  }
  return MixedEvolution{Complex(1.0 / p) * sigma, p};
}

}  // namespace acausal::pctc
