#include <mvi/cli/report.hpp>

#include <mvi/cli/dsl.hpp>

#include <sstream>

namespace mvi::cli {

const char* to_string(SynthTarget t) {
  switch (t) {
    case SynthTarget::Fprm:
      return "fprm";
    case SynthTarget::Grm:
      return "grm";
    case SynthTarget::Esop:
      return "esop";
  }
  return "fprm";
}

const char* to_string(SpectrumMethod m) {
  return m == SpectrumMethod::Butterfly ? "butterfly" : "products-matching";
}

const char* to_string(Objective o) { return o == Objective::Tqc ? "tqc" : "maslov"; }

std::string gate_summary(const CostReport& r) {
  std::string s;
  for (const auto& [k, n] : r.by_controls) {
    if (!s.empty()) s += ", ";
    if (k == 0)
      s += "NOT";
    else if (k == 1)
      s += "CNOT";
    else
      s += "Toffoli-" + std::to_string(k + 1);
    s += " " + std::to_string(n);
  }
  return s.empty() ? "none" : s;
}

std::string format_report(const Solution& s, const SearchConfig& cfg, std::size_t rank) {
  std::ostringstream os;
  const auto& ctx = *s.function.ctx;
  os << "solution: " << rank << "\n";
  os << "target: " << to_string(cfg.target) << "\n";
  if (cfg.target != SynthTarget::Esop) os << "method: " << to_string(cfg.method) << "\n";
  os << "objective: " << to_string(cfg.objective) << "\n";
  os << "pairing: " << (s.pairing ? s.pairing->to_string() : "none") << "\n";
  os << "variables:";
  for (const auto& v : ctx.variables()) {
    os << " " << v.id << "(radix " << v.radix << ":";
    for (std::size_t j = 0; j < v.encoding_bits.size(); ++j) os << (j ? "," : "") << v.encoding_bits[j];
    os << ")";
  }
  os << "\n";
  if (cfg.target != SynthTarget::Esop) {
    os << "polarity:";
    for (std::size_t i = 0; i < s.polarity.size(); ++i)
      os << " " << ctx[i].id << "=" << s.polarity[i].to_string();
    os << "\n";
    std::size_t nonzero = 0;
    s.spectrum.for_each_nonzero([&](std::size_t, std::uint64_t) { ++nonzero; });
    os << "spectrum_nonzero: " << nonzero << "\n";
    for (const auto& e : s.fprm) os << "fprm " << e.label() << " = " << print_expression(e) << "\n";
  }
  if (cfg.target == SynthTarget::Grm) {
    for (const auto& f : s.factored) os << "factored " << f.label << " = " << to_string(f) << "\n";
    os << "form: " << (s.grm ? "GRM" : "approximate-GRM") << "\n";
  }
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& q : s.circuit.qubits()) ++counts[static_cast<int>(q.role)];
  os << "qubits: " << s.circuit.num_qubits() << " (input " << counts[0] << ", ancilla-decoder "
     << counts[1] << ", ancilla-term " << counts[2] << ", output " << counts[3] << ")\n";
  os << "gates: " << gate_summary(s.cost) << "\n";
  os << "maslov: " << s.cost.maslov << "\n";
  os << "tqc: " << s.cost.tqc << (s.cost.extrapolated ? " (extrapolated)" : "") << "\n";
  os << "verified: yes (" << ctx.assignment_count() << " assignments)\n";
  if (cfg.mirror) os << "ancillas_clean: " << (ancillas_clean(s.circuit) ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace mvi::cli
