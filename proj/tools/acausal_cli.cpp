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

// Command-line front end. Reports are JSON (or CSV for `game`) on stdout or
// in the file given by --out.
//
// Exit codes: 0 success or valid, 1 checked and failed, 2 input error,
// 3 resource limit.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "acausal/causal_game.hpp"
#include "acausal/det_process.hpp"
#include "acausal/json_io.hpp"
#include "acausal/pctc.hpp"
#include "acausal/process.hpp"
#include "acausal/switch.hpp"
#include "acausal/version.hpp"

namespace {

using acausal::io::json;
using namespace acausal;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

struct Common {
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  std::size_t samples = 200;
  std::optional<std::size_t> budget;
  std::string out;
  std::string format = "json";
  unsigned threads = 1;
  bool timing = false;

  std::size_t resolved_budget() const {
    if (budget) return *budget;
    if (const char* env = std::getenv("ACAUSAL_BUDGET")) {
      try {
        std::size_t pos = 0;
        const auto v = std::stoull(env, &pos);
        if (pos == std::string(env).size()) return static_cast<std::size_t>(v);
      } catch (const std::exception&) {
      }
      throw ParseError(std::string("ACAUSAL_BUDGET is not an integer: ") + env);
    }
    return kDefaultBudget;
  }
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error("cannot write " + c.out);
  f << text;
}

// Wraps a command result with the tool identity and the configuration that
// determines it. Wall time is added only with --timing so that reports stay
// byte-identical across runs.
void emit_report(const Common& c, const std::string& command, json config, json result,
                 const Clock& clock) {
  config["seed"] = c.seed;
  config["tolerance"] = c.tol;
  config["budget"] = c.resolved_budget();
  json report = {{"tool", "acausal"}, {"version", kVersion}, {"command", command},
                 {"config", std::move(config)}, {"result", std::move(result)}};
  if (c.timing) report["wall_time_seconds"] = clock.seconds();
  emit(c, report.dump(2) + "\n");
}

double hermitian_floor(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// --- validate -------------------------------------------------------------

struct ValidateArgs {
  std::string file;
  bool basis = false;
  std::size_t basis_limit = 50000;
};

int cmd_validate(const Common& c, const ValidateArgs& a) {
  Clock clock;
  const auto w = io::process_from_json(io::read_file(a.file));
  const std::size_t entries = w.is_pure() ? total_dim(w.canonical_order())
                                          : total_dim(w.canonical_order()) * total_dim(w.canonical_order());
  check_budget(entries, c.resolved_budget(), "process");
  ValidityConfig cfg;
  cfg.samples = c.samples;
  cfg.seed = c.seed;
  cfg.tolerance = c.tol;
  cfg.threads = c.threads;
  cfg.basis = a.basis;
  cfg.basis_limit = a.basis_limit;
  const auto report = check_validity(w, cfg);
  json config = {{"file", a.file}, {"samples", c.samples}, {"basis", a.basis}};
  emit_report(c, "validate", std::move(config), io::to_json(report), clock);
  return report.valid ? kExitOk : kExitFailed;
}

// --- switch ---------------------------------------------------------------

struct SwitchArgs {
  std::size_t n = 2;
  std::size_t d = 2;
  bool check_equivalence = false;
  std::string emit_circuit;
};

int cmd_switch(const Common& c, const SwitchArgs& a) {
  Clock clock;
  const auto budget = c.resolved_budget();
  const auto sp = qswitch::build_switch_vector(a.n, a.d, budget);
  json orders = json::array();
  for (std::size_t s = 0; s < sp.orders.size(); ++s) {
    orders.push_back({{"s", s},
                      {"bits", qswitch::encode_permutation(a.n, s).flat_bits()},
                      {"order", sp.orders[s]}});
  }
  json result = {{"vector_length", sp.process.vector().dim()},
                 {"norm_squared", std::pow(sp.process.vector().norm(), 2)},
                 {"control_qubits", qswitch::control_qubits(a.n)},
                 {"labeling",
                  "order[j] is the party acting at step j; it is the wire content at position j "
                  "after the controlled-SWAP staircase (stage k = 1..n-1, i = 1..k swaps wires "
                  "k-i and k-i+1 when b_{k,i} = 1)"},
                 {"orders", std::move(orders)}};
  bool ok = true;
  if (a.check_equivalence) {
    const double dev = qswitch::check_switch_equivalence(a.n, a.d, budget);
    ok = dev < c.tol;
    result["equivalence"] = {{"max_deviation", dev}, {"passed", ok}};
  }
  if (!a.emit_circuit.empty()) {
    const auto circ = qswitch::build_switch_circuit(a.n, a.d, budget);
    auto j = io::to_json(circ.circuit);
    j["ctc_pairs"] = json::array();
    for (const auto& [out, in] : circ.ctc_pairs) j["ctc_pairs"].push_back({out, in});
    io::write_file(a.emit_circuit, j);
    result["circuit_file"] = a.emit_circuit;
    result["circuit_gates"] = circ.circuit.gates().size();
  }
  json config = {{"n", a.n}, {"d", a.d}, {"check_equivalence", a.check_equivalence}};
  emit_report(c, "switch", std::move(config), std::move(result), clock);
  return ok ? kExitOk : kExitFailed;
}

// --- det ------------------------------------------------------------------

struct DetArgs {
  std::size_t n = 3;
  std::string simulate = "both";
  std::string channels = "identity";
  std::string emit_circuit;
};

struct PartyOps {
  bool unitary = true;
  std::vector<Matrix> unitaries;
  std::vector<Channel> channels;
};

PartyOps make_party_ops(std::size_t n, const std::string& spec) {
  PartyOps ops;
  auto seed_of = [&](const std::string& prefix) -> std::optional<std::uint64_t> {
    if (spec.rfind(prefix, 0) != 0) return std::nullopt;
    const auto tail = spec.substr(prefix.size());
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(tail, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (tail.empty() || pos != tail.size()) throw ParseError("bad seed in --channels " + spec);
    return v;
  };
  if (spec == "identity") {
    for (std::size_t k = 0; k < n; ++k) ops.unitaries.push_back(Matrix::Identity(2, 2));
  } else if (auto s = seed_of("unitary:")) {
    Rng rng(*s);
    for (std::size_t k = 0; k < n; ++k) ops.unitaries.push_back(haar_unitary(rng, 2));
  } else if (auto s = seed_of("random:")) {
    ops.unitary = false;
    Rng rng(*s);
    for (std::size_t k = 0; k < n; ++k) ops.channels.push_back(random_cptp(rng, 2, 2));
  } else {
    throw ParseError("--channels must be identity, unitary:SEED or random:SEED");
  }
  if (ops.unitary) {
    for (const auto& u : ops.unitaries) ops.channels.push_back(Channel::unitary(u));
  }
  return ops;
}

json channel_diagnostics(const Channel& ch) {
  const auto r = is_cptp(ch);
  return {{"tp_deviation", r.tp_deviation}, {"cp_floor", r.cp_floor}, {"cptp", r.ok()}};
}

int cmd_det(const Common& c, const DetArgs& a) {
  Clock clock;
  const auto budget = c.resolved_budget();
  if (a.simulate != "acausal" && a.simulate != "ordered" && a.simulate != "both") {
    throw ParseError("--simulate must be acausal, ordered or both");
  }
  const auto ops = make_party_ops(a.n, a.channels);
  json result = json::object();
  bool ok = true;
  std::optional<Channel> acausal, ordered;
  std::optional<det::OrderedSimulation> sim;

  if (a.simulate != "ordered") {
    acausal = ops.unitary ? det::acausal_evolution(ops.unitaries)
                          : det::acausal_evolution(ops.channels, budget);
    result["acausal"] = channel_diagnostics(*acausal);
    ok = ok && is_cptp(*acausal, c.tol).ok();
  }
  if (a.simulate != "acausal") {
    sim = ops.unitary ? det::ordered_simulation_unitary(ops.unitaries, budget)
                      : det::ordered_simulation_general(ops.channels, budget);
    auto diag = channel_diagnostics(sim->channel);
    diag["party_queries"] = sim->party_queries;
    diag["oracle_register_residual"] = sim->oracle_register_residual;
    result["ordered"] = std::move(diag);
    ok = ok && sim->party_queries == 3 * a.n && is_cptp(sim->channel, c.tol).ok();
  }
  if (acausal && sim) {
    const double dist = choi_distance(*acausal, sim->channel);
    result["choi_distance"] = dist;
    ok = ok && dist < c.tol;
  }
  if (!a.emit_circuit.empty()) {
    std::vector<Matrix> party;
    if (ops.unitary) {
      party = ops.unitaries;
    } else {
      for (const auto& ch : ops.channels) {
        party.push_back(purify(ch).unitary.permuted({"anc", "sys"}, {"anc", "sys"}).data());
      }
    }
    const auto ac = det::acausal_circuit(party);
    json circuits = {{"acausal", io::to_json(ac.circuit)}};
    circuits["acausal"]["ctc_pairs"] = json::array();
    for (const auto& [out, in] : ac.ctc_pairs) circuits["acausal"]["ctc_pairs"].push_back({out, in});
    if (!sim) {
      sim = ops.unitary ? det::ordered_simulation_unitary(ops.unitaries, budget)
                        : det::ordered_simulation_general(ops.channels, budget);
    }
    circuits["ordered"] = io::to_json(sim->circuit);
    io::write_file(a.emit_circuit, circuits);
    result["circuit_file"] = a.emit_circuit;
  }
  result["passed"] = ok;
  json config = {{"n", a.n}, {"simulate", a.simulate}, {"channels", a.channels}};
  emit_report(c, "det", std::move(config), std::move(result), clock);
  return ok ? kExitOk : kExitFailed;
}

// --- game -----------------------------------------------------------------

struct GameArgs {
  std::size_t n = 3;
  std::string strategy = "all";
};

std::string fmt_double(double v) {
  json j = v;
  return j.dump();
}

int cmd_game(const Common& c, const GameArgs& a) {
  Clock clock;
  const auto& s = a.strategy;
  if (s != "process" && s != "causal-guess" && s != "brute-force" && s != "all") {
    throw ParseError("--strategy must be process, causal-guess, brute-force or all");
  }
  if (c.format != "json" && c.format != "csv") throw ParseError("--format must be json or csv");
  game::make_game(a.n);
  std::optional<double> process, guess, brute;
  json result = {{"n", a.n}, {"inputs", 2 * a.n}};
  if (s == "process" || s == "all") {
    process = game::evaluate_process_strategy(a.n, c.resolved_budget());
    result["process"] = *process;
  }
  if (s == "causal-guess" || s == "all") {
    guess = game::evaluate_causal_guess(a.n);
    result["causal_guess"] = *guess;
  }
  if (s == "brute-force" || (s == "all" && a.n == 3)) {
    const auto bf = game::brute_force_causal_bound(a.n);
    brute = bf.best;
    result["brute_force"] = bf.best;
    json per = json::array();
    for (std::size_t i = 0; i < bf.orders.size(); ++i) {
      per.push_back({{"order", bf.orders[i]}, {"best", bf.per_order[i]}});
    }
    result["brute_force_per_order"] = std::move(per);
  }
  if (c.format == "csv") {
    std::ostringstream os;
    os << "n,process,causal_guess,brute_force\n" << a.n << ',';
    os << (process ? fmt_double(*process) : "") << ',';
    os << (guess ? fmt_double(*guess) : "") << ',';
    os << (brute ? fmt_double(*brute) : "") << '\n';
    emit(c, os.str());
  } else {
    json config = {{"n", a.n}, {"strategy", a.strategy}};
    emit_report(c, "game", std::move(config), std::move(result), clock);
  }
  return kExitOk;
}

// --- pctc -----------------------------------------------------------------

struct PctcArgs {
  std::string unitary;
  std::string psi;
  bool teleport = false;
  std::size_t d = 2;
};

int cmd_pctc(const Common& c, const PctcArgs& a) {
  Clock clock;
  json result;
  json config;
  if (a.teleport) {
    Rng rng(c.seed);
    const auto psi = random_state(rng, {{"in", a.d}});
    const auto t = pctc::postselected_teleport(psi);
    const double fidelity = std::norm(psi.amplitudes().dot(t.output.amplitudes()));
    result = {{"probability", t.probability},
              {"expected_probability", 1.0 / static_cast<double>(a.d * a.d)},
              {"fidelity", fidelity},
              {"output", io::to_json(t.output)}};
    config = {{"teleport", true}, {"d", a.d}};
  } else {
    if (a.unitary.empty() || a.psi.empty()) throw ParseError("pctc needs --unitary and --psi, or --teleport");
    const auto spec = io::pctc_spec_from_json(io::read_file(a.unitary));
    const auto psi = io::state_from_json(io::read_file(a.psi));
    const auto k = pctc::contract(spec);
    const double p = pctc::success_probability(k, psi);
    const auto out = pctc::evolve(k, psi);
    result = {{"probability", p}, {"output", io::to_json(out)}};
    config = {{"unitary", a.unitary}, {"psi", a.psi}};
  }
  emit_report(c, "pctc", std::move(config), std::move(result), clock);
  return kExitOk;
}

// --- export ---------------------------------------------------------------

struct ExportArgs {
  std::string what;
  std::size_t n = 2;
  std::size_t d = 2;
};

// U = diag(1, e^{2 pi i/3}), so |tr U| = 1.
Matrix counterexample_unitary() {
  Matrix u = Matrix::Identity(2, 2);
  u(1, 1) = std::polar(1.0, 2.0 * M_PI / 3.0);
  return u;
}

int cmd_export(const Common& c, const ExportArgs& a) {
  const auto budget = c.resolved_budget();
  json j;
  if (a.what == "switch") {
    j = io::to_json(qswitch::build_switch_vector(a.n, a.d, budget).process);
  } else if (a.what == "det") {
    j = io::to_json(det::build_det_vector(a.n, budget));
  } else if (a.what == "counterexample") {
    j = io::to_json(product_unitary_process(a.n, counterexample_unitary()));
  } else if (a.what == "chain") {
    j = io::to_json(causal_chain_process(a.n, a.d));
  } else {
    throw ParseError("export target must be switch, det, counterexample or chain");
  }
  emit(c, j.dump() + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Process-matrix and P-CTC simulation toolkit"};
  app.set_version_flag("--version", std::string(acausal::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "Master seed for every randomized step");
  app.add_option("--tol", common.tol, "Numerical tolerance");
  app.add_option("--samples", common.samples, "Random channel tuples for validation");
  app.add_option("--budget", common.budget, "Maximum number of amplitudes to materialize");
  app.add_option("--out", common.out, "Write the report here instead of stdout");
  app.add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", common.threads, "Worker threads for validation")->check(CLI::Range(1u, 256u));
  app.add_flag("--timing", common.timing, "Include wall time in the report");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check that a process file is a valid process");
  validate->add_option("file", va.file, "Process JSON file")->required();
  validate->add_flag("--basis", va.basis, "Also run the exact basis check");
  validate->add_option("--basis-limit", va.basis_limit, "Cap on basis combinations");

  SwitchArgs sa;
  auto* sw = app.add_subcommand("switch", "Quantum switch vector and controlled-SWAP circuit");
  sw->add_option("--n", sa.n, "Number of parties")->check(CLI::PositiveNumber);
  sw->add_option("--d", sa.d, "Target dimension")->check(CLI::PositiveNumber);
  sw->add_flag("--check-equivalence", sa.check_equivalence, "Compare circuit and vector");
  sw->add_option("--emit-circuit", sa.emit_circuit, "Write the gate list here");

  DetArgs da;
  auto* detc = app.add_subcommand("det", "Deterministic acausal process and its ordered simulation");
  detc->add_option("--n", da.n, "Number of parties");
  detc->add_option("--simulate", da.simulate, "acausal, ordered or both");
  detc->add_option("--channels", da.channels, "identity, unitary:SEED or random:SEED");
  detc->add_option("--emit-circuit", da.emit_circuit, "Write both gate lists here");

  GameArgs ga;
  auto* gamec = app.add_subcommand("game", "Causal game success probabilities");
  gamec->add_option("--n", ga.n, "Number of parties");
  gamec->add_option("--strategy", ga.strategy, "process, causal-guess, brute-force or all");

  PctcArgs pa;
  auto* pctcc = app.add_subcommand("pctc", "P-CTC evolution of a state");
  pctcc->add_option("--unitary", pa.unitary, "Operator JSON with ctc_pairs");
  pctcc->add_option("--psi", pa.psi, "State JSON");
  pctcc->add_flag("--teleport", pa.teleport, "Post-selected teleportation of a random state");
  pctcc->add_option("--d", pa.d, "Dimension for --teleport")->check(CLI::PositiveNumber);

  ExportArgs ea;
  auto* exportc = app.add_subcommand("export", "Write a standard process file");
  exportc->add_option("what", ea.what, "switch, det, counterexample or chain")->required();
  exportc->add_option("--n", ea.n, "Number of parties");
  exportc->add_option("--d", ea.d, "Dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*validate) return cmd_validate(common, va);
    if (*sw) return cmd_switch(common, sa);
    if (*detc) return cmd_det(common, da);
    if (*gamec) return cmd_game(common, ga);
    if (*pctcc) return cmd_pctc(common, pa);
    if (*exportc) return cmd_export(common, ea);
  } catch (const acausal::ResourceLimit& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const acausal::UndefinedEvolution& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
