#pragma once

#include <mvi/expression.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mvi {

using QubitId = std::uint32_t;

enum class QubitRole { Input, AncillaDecoder, AncillaTerm, Output };

const char* to_string(QubitRole role);
std::optional<QubitRole> parse_role(const std::string& s);

struct Qubit {
  std::string name;
  QubitRole role = QubitRole::Input;
};

/// target ^= AND(controls); zero controls is NOT, one is CNOT.
struct Gate {
  std::vector<QubitId> controls;
  QubitId target = 0;

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct OutputBinding {
  std::string name;
  QubitId qubit = 0;
};

/// Named half-open range of gate indices.
struct GateSection {
  std::string name;
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Register of typed lines plus an ordered gate list. Input lines carry the
/// encoding bits of the context variables; ancillas and outputs start at 0.
class Circuit {
public:
  Circuit() = default;
  explicit Circuit(ContextPtr ctx);

  QubitId add_qubit(std::string name, QubitRole role);
  /// Registers input lines for every encoding bit of the context, in order.
  void add_context_inputs();
  void bind_output(std::string name, QubitId q);

  void add_gate(Gate g);
  void x(QubitId t) { add_gate({{}, t}); }
  void cx(QubitId c, QubitId t) { add_gate({{c}, t}); }
  void mcx(std::vector<QubitId> controls, QubitId t) { add_gate({std::move(controls), t}); }
  void append(const std::vector<Gate>& gates);

  const ContextPtr& context() const { return ctx_; }
  const std::vector<Qubit>& qubits() const { return qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::vector<Gate>& mutable_gates() { return gates_; }
  const std::vector<OutputBinding>& outputs() const { return outputs_; }
  /// Input line of encoding bit j of variable i.
  QubitId input_line(std::size_t var, unsigned bit) const { return var_lines_.at(var).at(bit); }
  const std::vector<std::vector<QubitId>>& input_lines() const { return var_lines_; }
  void set_input_lines(std::vector<std::vector<QubitId>> lines) { var_lines_ = std::move(lines); }
  std::vector<QubitId> input_qubits() const;
  std::size_t num_qubits() const { return qubits_.size(); }

  /// Labels the gates added since `begin` up to the current end.
  void add_section(std::string name, std::size_t begin) {
    sections_.push_back({std::move(name), begin, gates_.size()});
  }
  const std::vector<GateSection>& sections() const { return sections_; }
  /// Throws ContractViolation for a range outside the gate list.
  void set_sections(std::vector<GateSection> sections);

private:
  ContextPtr ctx_;
  std::vector<Qubit> qubits_;
  std::vector<Gate> gates_;
  std::vector<OutputBinding> outputs_;
  std::vector<std::vector<QubitId>> var_lines_;
  std::vector<GateSection> sections_;
};

struct CostReport {
  /// Gate count keyed by number of controls.
  std::map<std::size_t, std::size_t> by_controls;
  std::int64_t maslov = 0;
  std::int64_t tqc = 0;
  /// Set when a gate beyond the calibrated TQC table was priced by extrapolation.
  bool extrapolated = false;

  std::size_t count(std::size_t controls) const {
    auto it = by_controls.find(controls);
    return it == by_controls.end() ? 0 : it->second;
  }
  friend bool operator==(const CostReport&, const CostReport&) = default;
};

enum class Objective { Maslov, Tqc };

/// Ordering key: the objective's metric first, the other one second.
inline std::pair<std::int64_t, std::int64_t> cost_key(std::int64_t maslov, std::int64_t tqc,
                                                      Objective obj) {
  return obj == Objective::Tqc ? std::pair{tqc, maslov} : std::pair{maslov, tqc};
}
inline std::pair<std::int64_t, std::int64_t> cost_key(const CostReport& r, Objective obj) {
  return cost_key(r.maslov, r.tqc, obj);
}

std::int64_t maslov_gate_cost(std::size_t controls);
/// Returns the TQC weight; sets *extrapolated for more than four controls.
std::int64_t tqc_gate_cost(std::size_t controls, bool* extrapolated = nullptr);

std::int64_t maslov_cost(const Circuit& c);
std::int64_t tqc_cost(const Circuit& c);
CostReport cost_report(const Circuit& c);
CostReport cost_report(const std::vector<Gate>& gates);
/// Report for a gate multiset given as {controls -> count}.
CostReport cost_of_multiset(const std::map<std::size_t, std::size_t>& counts);

/// Final value of every qubit. input_bits lists values for input_qubits() in order.
std::vector<std::uint8_t> simulate(const Circuit& c, const std::vector<std::uint8_t>& input_bits);

/// Total input bits above which exhaustive simulation is refused.
inline constexpr std::size_t kSimulationGuardBits = 20;

/// Outputs over the context's assignment space in natural order; invalid codes skipped.
TruthTable circuit_truth_table(const Circuit& c);

struct Verdict {
  bool equivalent = true;
  std::optional<std::size_t> counterexample;
  std::optional<std::size_t> output;
};

Verdict equivalence(const Circuit& c, const TruthTable& tt);

/// True iff every ancilla line ends at 0 for every valid assignment.
bool ancillas_clean(const Circuit& c);
/// True iff every input line ends holding its initial value for every valid assignment.
bool inputs_restored(const Circuit& c);

/// Gate list reversed (each gate is self-inverse).
std::vector<Gate> reversed_gates(const std::vector<Gate>& gates);

}  // namespace mvi
