#include <mvi/cli/qasm.hpp>

#include <mvi/errors.hpp>

#include <set>
#include <sstream>
#include <stdexcept>

namespace mvi::cli {

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
  throw std::runtime_error("qasm:" + std::to_string(line) + ": " + msg);
}

}  // namespace

std::string export_qasm(const Circuit& c) {
  if (!c.context()) throw ContractViolation("export_qasm: circuit has no context");
  std::ostringstream os;
  os << "OPENQASM 2.0;\n";
  os << "include \"qelib1.inc\";\n";
  os << "// cost model: maslov 1 per NOT or CNOT, 2^(k+1)-3 per gate with k>=2 controls;"
        " tqc weights 1, 14, 54, 109, 219 for 0..4 controls, 2w+1 beyond\n";
  os << "// mcx_<k> is opaque: k controls, then the target\n";
  for (const auto& v : c.context()->variables())
    os << "// var " << v.id << " " << v.radix << " " << join(v.encoding_bits, ",") << "\n";
  for (QubitId q = 0; q < c.num_qubits(); ++q)
    os << "// qubit " << q << " " << c.qubits()[q].name << " " << to_string(c.qubits()[q].role)
       << "\n";
  for (std::size_t i = 0; i < c.input_lines().size(); ++i)
    for (unsigned j = 0; j < c.input_lines()[i].size(); ++j)
      os << "// input " << (*c.context())[i].id << " " << j << " " << c.input_lines()[i][j] << "\n";
  for (const auto& o : c.outputs()) os << "// output " << o.name << " " << o.qubit << "\n";
  for (const auto& s : c.sections())
    os << "// section " << s.name << " " << s.begin << " " << s.end << "\n";

  std::set<std::size_t> wide;
  for (const auto& g : c.gates())
    if (g.controls.size() > 2) wide.insert(g.controls.size());
  for (auto k : wide) {
    std::vector<std::string> args;
    for (std::size_t i = 0; i < k; ++i) args.push_back("c" + std::to_string(i));
    args.push_back("t");
    os << "opaque mcx_" << k << " " << join(args, ",") << ";\n";
  }
  os << "qreg q[" << c.num_qubits() << "];\n";
  for (const auto& g : c.gates()) {
    std::vector<std::string> args;
    for (auto q : g.controls) args.push_back("q[" + std::to_string(q) + "]");
    args.push_back("q[" + std::to_string(g.target) + "]");
    switch (g.controls.size()) {
      case 0:
        os << "x ";
        break;
      case 1:
        os << "cx ";
        break;
      case 2:
        os << "ccx ";
        break;
      default:
        os << "mcx_" << g.controls.size() << " ";
    }
    os << join(args, ",") << ";\n";
  }
  return os.str();
}

Circuit import_qasm(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  std::vector<MviVariable> vars;
  struct Q {
    std::string name;
    QubitRole role;
  };
  std::vector<Q> qubits;
  std::vector<std::tuple<std::string, unsigned, QubitId>> inputs;
  std::vector<OutputBinding> outputs;
  std::vector<GateSection> sections;
  std::vector<Gate> gates;
  std::optional<std::size_t> qreg;
  bool header = false;
  try {
    while (std::getline(in, line)) {
      ++n;
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string head;
      ls >> head;
      if (head == "//") {
        std::string kind;
        ls >> kind;
        if (kind == "var") {
          MviVariable v;
          std::string bits;
          ls >> v.id >> v.radix >> bits;
          if (!ls) bad(n, "malformed var comment");
          v.encoding_bits = split(bits, ',');
          vars.push_back(std::move(v));
        } else if (kind == "qubit") {
          std::size_t id;
          std::string name, role;
          ls >> id >> name >> role;
          const auto r = parse_role(role);
          if (!ls || !r || id != qubits.size()) bad(n, "malformed qubit comment");
          qubits.push_back({name, *r});
        } else if (kind == "input") {
          std::string var;
          unsigned bit;
          QubitId q;
          ls >> var >> bit >> q;
          if (!ls) bad(n, "malformed input comment");
          inputs.emplace_back(var, bit, q);
        } else if (kind == "output") {
          OutputBinding o;
          ls >> o.name >> o.qubit;
          if (!ls) bad(n, "malformed output comment");
          outputs.push_back(o);
        } else if (kind == "section") {
          GateSection s;
          ls >> s.name >> s.begin >> s.end;
          if (!ls) bad(n, "malformed section comment");
          sections.push_back(s);
        }
        continue;
      }
      if (head == "OPENQASM") {
        header = true;
        continue;
      }
      if (head == "include" || head == "opaque") continue;
      std::string rest;
      std::getline(ls, rest);
      if (rest.empty() || rest.back() != ';') bad(n, "statement must end with ';'");
      rest.pop_back();
      if (head == "qreg") {
        if (rest.rfind(" q[", 0) != 0 && rest.rfind("q[", 0) != 0) bad(n, "expected qreg q[N]");
        qreg = std::stoul(rest.substr(rest.find('[') + 1));
        continue;
      }
      std::vector<QubitId> args;
      for (auto a : split(rest, ',')) {
        const auto open = a.find("q[");
        if (open == std::string::npos) bad(n, "expected q[i] operands");
        args.push_back(static_cast<QubitId>(std::stoul(a.substr(open + 2))));
      }
      std::size_t k;
      if (head == "x")
        k = 0;
      else if (head == "cx")
        k = 1;
      else if (head == "ccx")
        k = 2;
      else if (head.rfind("mcx_", 0) == 0)
        k = std::stoul(head.substr(4));
      else
        bad(n, "unsupported gate '" + head + "'");
      if (args.size() != k + 1) bad(n, "gate '" + head + "' takes " + std::to_string(k + 1) + " operands");
      gates.push_back({std::vector<QubitId>(args.begin(), args.end() - 1), args.back()});
    }
  } catch (const std::invalid_argument&) {
    bad(n, "malformed number");
  } catch (const std::out_of_range&) {
    bad(n, "number out of range");
  }
  if (!header) bad(1, "missing OPENQASM header");
  if (!qreg || *qreg != qubits.size()) bad(n, "qreg size does not match the qubit comments");
  try {
    for (const auto& v : vars) validate_variable(v);
    Circuit c(make_context(vars));
    for (const auto& q : qubits) c.add_qubit(q.name, q.role);
    std::vector<std::vector<QubitId>> lines(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) lines[i].assign(vars[i].bit_count(), ~QubitId{0});
    for (const auto& [var, bit, q] : inputs) {
      const auto i = c.context()->index_of(var);
      if (!i || bit >= lines[*i].size() || q >= qubits.size() || qubits[q].role != QubitRole::Input)
        bad(n, "bad input binding for " + var);
      lines[*i][bit] = q;
    }
    for (const auto& l : lines)
      for (auto q : l)
        if (q == ~QubitId{0}) bad(n, "unbound encoding bit");
    c.set_input_lines(lines);
    for (const auto& o : outputs) c.bind_output(o.name, o.qubit);
    c.append(gates);
    c.set_sections(sections);
    return c;
  } catch (const ContractViolation& e) {
    bad(n, e.what());
  }
}

}  // namespace mvi::cli
