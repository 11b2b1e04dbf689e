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

#include <vector>

#include "acausal/det_process.hpp"

// The n-party causal game won with certainty by the deterministic process.
namespace acausal::game {

using det::BitString;

/// Inputs are uniform over S = {x : f(x) != 0}; party k must answer f(x)_k.
struct GameSpec {
  std::size_t n = 0;
  std::vector<BitString> inputs;

  BitString target(const BitString& x) const { return det::f(x); }
};

/// Throws OutOfRange for n < 3.
GameSpec make_game(std::size_t n);

/// x_{k-1} AND NOT x_{k+1} for every k. Agrees with f for n = 3 only.
BitString neighbor_predicate(const BitString& x);

/// Deterministic strategy for a fixed causal order in which every party sees
/// the game inputs of all earlier parties. tables[p] is indexed by the bits
/// x_{order[0]} ... x_{order[p]} (first one most significant).
struct CausalStrategy {
  std::vector<std::size_t> order;
  std::vector<std::vector<int>> tables;
};

double evaluate_causal_strategy(const GameSpec& game, const CausalStrategy& strategy);

/// Parties answer what the process gives them and feed their game input back.
double evaluate_process_strategy(std::size_t n, std::size_t budget = kDefaultBudget);

/// Order 0, 1, ..., n-1: party 0 answers 0 and every later party answers
/// x_{k-1} unless an earlier input rules f(x)_k = 1 out.
CausalStrategy causal_guess_strategy(std::size_t n);
double evaluate_causal_guess(std::size_t n);

struct BruteForceResult {
  double best = 0.0;
  /// Best value for each order, orders in lexicographic order.
  std::vector<std::vector<std::size_t>> orders;
  std::vector<double> per_order;
  CausalStrategy argmax;
};

/// Exhaustive maximum over CausalStrategy; throws ResourceLimit for n > 3.
BruteForceResult brute_force_causal_bound(std::size_t n = 3);

}  // namespace acausal::game
