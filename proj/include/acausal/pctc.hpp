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

#include <string>
#include <utility>
#include <vector>

#include "acausal/channel.hpp"
#include "acausal/tensor.hpp"

namespace acausal::pctc {

/// (output label, input label): the output factor is teleported back to the
/// input factor by post-selection on |phi+>.
using CtcPair = std::pair<std::string, std::string>;

/// Unitary (or any operator) whose unpaired input factors form the past P and
/// whose unpaired output factors form the future F.
struct PctcSpec {
  LabeledOperator op;
  std::vector<CtcPair> ctc_pairs;
};

/// K = <phi+| U |phi+> over every pair, i.e. the wired trace divided by the
/// product of the pair dimensions. ||K psi||^2 is then the post-selection
/// success probability.
LabeledOperator contract(const PctcSpec& spec);

/// ||K psi||^2
double success_probability(const LabeledOperator& k, const StateVector& psi);

/// K psi / ||K psi||. Throws UndefinedEvolution when ||K psi|| < 1e-12.
StateVector evolve(const LabeledOperator& k, const StateVector& psi);

struct Teleportation {
  StateVector output;
  double probability = 0.0;
};

/// Teleports psi through a Bell pair, post-selecting the Bell measurement on
/// |phi+>; no correction is applied.
Teleportation postselected_teleport(const StateVector& psi);

/// P-CTC around a general CPTP map whose input and output spaces are split
/// into the listed factors.
struct PctcChannelSpec {
  Channel channel;
  Subsystems inputs;
  Subsystems outputs;
  std::vector<CtcPair> ctc_pairs;
};

struct MixedEvolution {
  LabeledOperator rho;
  double probability = 0.0;
};

/// Purifies the channel, contracts the CTC pairs of the Stinespring unitary,
/// feeds the ancilla |0>, traces it out afterwards and renormalizes.
MixedEvolution evolve_mixed(const PctcChannelSpec& spec, const LabeledOperator& rho);

}  // namespace acausal::pctc
