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

#include "acausal/causal_game.hpp"

#include <algorithm>
#include <numeric>

namespace acausal::game {

GameSpec make_game(std::size_t n) {
  if (n < 3) throw OutOfRange("the game needs at least 3 parties");
  if (n > 20) throw ResourceLimit("game with " + std::to_string(n) + " parties");
  GameSpec g{n, {}};
  for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
    if (det::f_index(x, n) != 0) g.inputs.push_back(det::from_index(x, n));
  }
  return g;
}

BitString neighbor_predicate(const BitString& x) {
  const std::size_t n = x.size();
  BitString a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = x[(k + n - 1) % n] && !x[(k + 1) % n];
  return a;
}

double evaluate_causal_strategy(const GameSpec& game, const CausalStrategy& s) {
  if (s.order.size() != game.n || s.tables.size() != game.n) {
    throw DimensionMismatch("strategy does not cover every party");
  }
  std::size_t wins = 0;
  for (const auto& x : game.inputs) {
    const auto t = game.target(x);
    bool ok = true;
    std::size_t seen = 0;
    for (std::size_t p = 0; p < game.n && ok; ++p) {
      const std::size_t k = s.order[p];
      seen = (seen << 1) | static_cast<std::size_t>(x[k]);
      if (s.tables[p].size() != (std::size_t{2} << p)) {
        throw DimensionMismatch("table " + std::to_string(p) + " has the wrong size");
      }
      ok = s.tables[p][seen] == t[k];
    }
    wins += ok ? 1 : 0;
  }
  return static_cast<double>(wins) / static_cast<double>(game.inputs.size());
}

double evaluate_process_strategy(std::size_t n, std::size_t budget) {
  const auto game = make_game(n);
  const auto w = det::build_det_vector(n, budget);
  const auto dim = static_cast<Eigen::Index>(w.past_dim());
  Matrix rho = Matrix::Zero(dim, dim);
  rho(0, 0) = 1.0;

  double total = 0.0;
  for (const auto& x : game.inputs) {
    std::vector<Instrument> instruments;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<InstrumentElement> elements;
      for (int a = 0; a < 2; ++a) {
        Matrix m = Matrix::Zero(2, 2);
        m(x[k], a) = 1.0;  // |x_k><a|
        elements.push_back({a, Channel(2, 2, {m})});
      }
      instruments.emplace_back(std::move(elements));
    }
    const auto dist = outcome_probabilities(w, instruments, rho);
    const auto t = game.target(x);
    const std::vector<int> want(t.begin(), t.end());
    if (auto it = dist.find(want); it != dist.end()) total += it->second;
  }
  return total / static_cast<double>(game.inputs.size());
}

CausalStrategy causal_guess_strategy(std::size_t n) {
  CausalStrategy s;
  s.order.resize(n);
  std::iota(s.order.begin(), s.order.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<int> table(std::size_t{2} << k, 0);
    if (k > 0) {
      for (std::size_t seen = 0; seen < table.size(); ++seen) {
        // Bit of party j sits at position k - j from the right.
        auto bit = [&](std::size_t j) { return static_cast<int>((seen >> (k - j)) & 1u); };
        int a = bit(k - 1);
        for (std::size_t j = 0; j + 1 < k; ++j) a = a && !bit(j);
        table[seen] = a;
      }
    }
    s.tables.push_back(std::move(table));
  }
  return s;
}

double evaluate_causal_guess(std::size_t n) {
  return evaluate_causal_strategy(make_game(n), causal_guess_strategy(n));
}

BruteForceResult brute_force_causal_bound(std::size_t n) {
  if (n > 3) throw ResourceLimit("brute force is limited to n = 3, got " + std::to_string(n));
  const auto game = make_game(n);
  BruteForceResult result;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    std::vector<std::size_t> sizes;
    std::size_t bits = 0;
    for (std::size_t p = 0; p < n; ++p) {
      sizes.push_back(std::size_t{2} << p);
      bits += sizes.back();
    }
    double best = -1.0;
    CausalStrategy best_s;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
      CausalStrategy s{order, {}};
      std::uint64_t c = code;
      for (auto sz : sizes) {
        std::vector<int> table(sz);
        for (auto& e : table) {
          e = static_cast<int>(c & 1u);
          c >>= 1;
        }
        s.tables.push_back(std::move(table));
      }
      const double v = evaluate_causal_strategy(game, s);
      if (v > best) {
        best = v;
        best_s = std::move(s);
      }
    }
    result.orders.push_back(order);
    result.per_order.push_back(best);
    if (best > result.best || result.orders.size() == 1) {
      result.best = best;
      result.argmax = best_s;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return result;
}

}  // namespace acausal::game
