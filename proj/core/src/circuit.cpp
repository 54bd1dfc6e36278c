#include <mvi/circuit.hpp>

#include <algorithm>
#include <bit>
#include <set>

namespace mvi {

const char* to_string(QubitRole role) {
  switch (role) {
    case QubitRole::Input:
      return "input";
    case QubitRole::AncillaDecoder:
      return "ancilla-decoder";
    case QubitRole::AncillaTerm:
      return "ancilla-term";
    case QubitRole::Output:
      return "output";
  }
  return "input";
}

std::optional<QubitRole> parse_role(const std::string& s) {
  for (auto r : {QubitRole::Input, QubitRole::AncillaDecoder, QubitRole::AncillaTerm,
                 QubitRole::Output})
    if (s == to_string(r)) return r;
  return std::nullopt;
}

Circuit::Circuit(ContextPtr ctx) : ctx_(std::move(ctx)) {}

QubitId Circuit::add_qubit(std::string name, QubitRole role) {
  qubits_.push_back({std::move(name), role});
  return static_cast<QubitId>(qubits_.size() - 1);
}

void Circuit::add_context_inputs() {
  if (!ctx_) throw ContractViolation("circuit has no variable context");
  var_lines_.clear();
  for (const auto& v : ctx_->variables()) {
    std::vector<QubitId> lines;
    for (const auto& b : v.encoding_bits) lines.push_back(add_qubit(b, QubitRole::Input));
    var_lines_.push_back(std::move(lines));
  }
}

void Circuit::bind_output(std::string name, QubitId q) {
  if (q >= qubits_.size()) throw ContractViolation("output bound to an unknown qubit");
  outputs_.push_back({std::move(name), q});
}

void Circuit::set_sections(std::vector<GateSection> sections) {
  for (const auto& sec : sections)
    if (sec.begin > sec.end || sec.end > gates_.size())
      throw ContractViolation("section '" + sec.name + "' lies outside the gate list");
  sections_ = std::move(sections);
}

void Circuit::add_gate(Gate g) {
  if (g.target >= qubits_.size()) throw ContractViolation("gate target is not registered");
  std::set<QubitId> seen;
  for (auto c : g.controls) {
    if (c >= qubits_.size()) throw ContractViolation("gate control is not registered");
    if (c == g.target) throw ContractViolation("gate target is also a control");
    if (!seen.insert(c).second) throw ContractViolation("gate has a repeated control");
  }
  gates_.push_back(std::move(g));
}

void Circuit::append(const std::vector<Gate>& gates) {
  for (const auto& g : gates) add_gate(g);
}

std::vector<QubitId> Circuit::input_qubits() const {
  std::vector<QubitId> out;
  for (QubitId q = 0; q < qubits_.size(); ++q)
    if (qubits_[q].role == QubitRole::Input) out.push_back(q);
  return out;
}

std::int64_t maslov_gate_cost(std::size_t controls) {
  if (controls <= 1) return 1;
  if (controls >= 61) throw ContractViolation("gate has too many controls to price");
  return (std::int64_t{1} << (controls + 1)) - 3;
}

std::int64_t tqc_gate_cost(std::size_t controls, bool* extrapolated) {
  static constexpr std::int64_t table[] = {1, 14, 54, 109, 219};
  if (controls < 5) return table[controls];
  if (extrapolated) *extrapolated = true;
  std::int64_t w = table[4];
  for (std::size_t k = 5; k <= controls; ++k) w = 2 * w + 1;
  return w;
}

CostReport cost_of_multiset(const std::map<std::size_t, std::size_t>& counts) {
  CostReport r;
  for (const auto& [k, n] : counts) {
    if (n == 0) continue;
    r.by_controls[k] += n;
    r.maslov += maslov_gate_cost(k) * static_cast<std::int64_t>(n);
    r.tqc += tqc_gate_cost(k, &r.extrapolated) * static_cast<std::int64_t>(n);
  }
  return r;
}

CostReport cost_report(const std::vector<Gate>& gates) {
  std::map<std::size_t, std::size_t> counts;
  for (const auto& g : gates) ++counts[g.controls.size()];
  return cost_of_multiset(counts);
}

CostReport cost_report(const Circuit& c) { return cost_report(c.gates()); }
std::int64_t maslov_cost(const Circuit& c) { return cost_report(c).maslov; }
std::int64_t tqc_cost(const Circuit& c) { return cost_report(c).tqc; }

std::vector<std::uint8_t> simulate(const Circuit& c, const std::vector<std::uint8_t>& input_bits) {
  const auto inputs = c.input_qubits();
  if (input_bits.size() != inputs.size())
    throw ContractViolation("simulate: " + std::to_string(input_bits.size()) +
                            " input values for " + std::to_string(inputs.size()) +
                            " input qubits");
  std::vector<std::uint8_t> state(c.num_qubits(), 0);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (input_bits[i] > 1) throw ContractViolation("simulate: input values must be 0 or 1");
    state[inputs[i]] = input_bits[i];
  }
  for (const auto& g : c.gates()) {
    std::uint8_t on = 1;
    for (auto q : g.controls) on &= state[q];
    state[g.target] ^= on;
  }
  return state;
}

namespace {

/// Runs the circuit on 64 assignments per word; calls sink(base, lanes, state words).
template <typename Sink>
void simulate_all(const Circuit& c, Sink&& sink) {
  if (!c.context()) throw ContractViolation("circuit has no variable context");
  const auto& ctx = *c.context();
  if (ctx.total_bits() > kSimulationGuardBits)
    throw Refusal("exhaustive simulation refused: " + std::to_string(ctx.total_bits()) +
                  " input bits exceed the guard of " + std::to_string(kSimulationGuardBits));
  if (c.input_lines().size() != ctx.size())
    throw ContractViolation("circuit input binding does not match its context");
  const std::size_t n = ctx.assignment_count();
  std::vector<std::uint64_t> state(c.num_qubits());
  for (std::size_t base = 0; base < n; base += 64) {
    const std::size_t lanes = std::min<std::size_t>(64, n - base);
    std::fill(state.begin(), state.end(), 0);
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      const auto values = ctx.decode(base + lane);
      for (std::size_t i = 0; i < ctx.size(); ++i)
        for (unsigned j = 0; j < ctx[i].bit_count(); ++j)
          if (ctx[i].code_bit(values[i], j)) state[c.input_line(i, j)] |= std::uint64_t{1} << lane;
    }
    const std::vector<std::uint64_t> initial = state;
    for (const auto& g : c.gates()) {
      std::uint64_t on = ~std::uint64_t{0};
      for (auto q : g.controls) on &= state[q];
      state[g.target] ^= on;
    }
    const std::uint64_t lane_mask = lanes == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lanes) - 1;
    sink(base, lane_mask, initial, state);
  }
}

}  // namespace

TruthTable circuit_truth_table(const Circuit& c) {
  TruthTable tt;
  tt.ctx = c.context();
  const std::size_t n = c.context() ? c.context()->assignment_count() : 0;
  for (const auto& o : c.outputs()) {
    tt.labels.push_back(o.name);
    tt.outputs.emplace_back(n);
  }
  simulate_all(c, [&](std::size_t base, std::uint64_t mask, const auto&, const auto& state) {
    for (std::size_t o = 0; o < c.outputs().size(); ++o) {
      const std::uint64_t w = state[c.outputs()[o].qubit] & mask;
      for (std::uint64_t m = w; m; m &= m - 1)
        tt.outputs[o].set(base + static_cast<std::size_t>(std::countr_zero(m)));
    }
  });
  return tt;
}

Verdict equivalence(const Circuit& c, const TruthTable& tt) {
  Verdict v;
  const auto got = circuit_truth_table(c);
  if (got.outputs.size() != tt.outputs.size())
    throw ContractViolation("equivalence: circuit has " + std::to_string(got.outputs.size()) +
                            " outputs, table has " + std::to_string(tt.outputs.size()));
  std::size_t best = ~std::size_t{0};
  for (std::size_t o = 0; o < tt.outputs.size(); ++o) {
    if (got.outputs[o].size() != tt.outputs[o].size())
      throw ContractViolation("equivalence: table sizes differ");
    const std::size_t d = got.outputs[o].first_difference(tt.outputs[o]);
    if (d < got.outputs[o].size() && d < best) {
      best = d;
      v.output = o;
    }
  }
  if (best != ~std::size_t{0}) {
    v.equivalent = false;
    v.counterexample = best;
  }
  return v;
}

bool ancillas_clean(const Circuit& c) {
  bool clean = true;
  simulate_all(c, [&](std::size_t, std::uint64_t mask, const auto&, const auto& state) {
    for (QubitId q = 0; q < c.num_qubits(); ++q) {
      const auto role = c.qubits()[q].role;
      if ((role == QubitRole::AncillaDecoder || role == QubitRole::AncillaTerm) &&
          (state[q] & mask))
        clean = false;
    }
  });
  return clean;
}

bool inputs_restored(const Circuit& c) {
  bool ok = true;
  simulate_all(c, [&](std::size_t, std::uint64_t mask, const auto& initial, const auto& state) {
    for (QubitId q = 0; q < c.num_qubits(); ++q)
      if (c.qubits()[q].role == QubitRole::Input && ((state[q] ^ initial[q]) & mask)) ok = false;
  });
  return ok;
}

std::vector<Gate> reversed_gates(const std::vector<Gate>& gates) {
  return std::vector<Gate>(gates.rbegin(), gates.rend());
}

}  // namespace mvi
