#include <mvi/cli/netlist.hpp>

#include <mvi/errors.hpp>

#include <json.hpp>

#include <cstdio>
#include <stdexcept>

namespace mvi::cli {

using nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

ordered_json body(const Circuit& c) {
  ordered_json doc;
  ordered_json vars = ordered_json::array();
  for (const auto& v : c.context()->variables())
    vars.push_back({{"id", v.id}, {"radix", v.radix}, {"encoding", v.encoding_bits}});
  doc["variables"] = vars;

  ordered_json qubits = ordered_json::array();
  for (const auto& q : c.qubits()) qubits.push_back({{"name", q.name}, {"role", to_string(q.role)}});
  doc["qubits"] = qubits;

  ordered_json inputs = ordered_json::array();
  for (std::size_t i = 0; i < c.input_lines().size(); ++i)
    for (unsigned j = 0; j < c.input_lines()[i].size(); ++j)
      inputs.push_back({{"variable", (*c.context())[i].id}, {"bit", j}, {"qubit", c.input_lines()[i][j]}});
  doc["inputs"] = inputs;

  ordered_json outputs = ordered_json::array();
  for (const auto& o : c.outputs()) outputs.push_back({{"label", o.name}, {"qubit", o.qubit}});
  doc["outputs"] = outputs;

  ordered_json gates = ordered_json::array();
  for (const auto& g : c.gates()) gates.push_back({{"controls", g.controls}, {"target", g.target}});
  doc["gates"] = gates;

  ordered_json sections = ordered_json::array();
  for (const auto& s : c.sections())
    sections.push_back({{"name", s.name}, {"begin", s.begin}, {"end", s.end}});
  doc["sections"] = sections;
  return doc;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ordered_json cost_json(const CostReport& r) {
  ordered_json by = ordered_json::object();
  for (const auto& [k, n] : r.by_controls) by[std::to_string(k)] = n;
  return {{"maslov", r.maslov}, {"tqc", r.tqc}, {"tqc_extrapolated", r.extrapolated},
          {"gates_by_controls", by}};
}

[[noreturn]] void bad(const std::string& msg) { throw std::runtime_error("netlist: " + msg); }

}  // namespace

std::string content_hash(const Circuit& c) {
  if (!c.context()) throw ContractViolation("content_hash: circuit has no context");
  return "fnv1a64:" + hex64(fnv1a64(body(c).dump()));
}

std::string export_netlist(const Circuit& c) {
  if (!c.context()) throw ContractViolation("export_netlist: circuit has no context");
  ordered_json doc;
  doc["format"] = kNetlistFormat;
  doc["version"] = kNetlistVersion;
  const auto content = body(c);
  for (const auto& [k, v] : content.items()) doc[k] = v;
  doc["cost"] = cost_json(cost_report(c));
  doc["hash"] = content_hash(c);
  return doc.dump(2) + "\n";
}

ImportedNetlist import_netlist(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  try {
    if (doc.value("format", "") != kNetlistFormat) bad("missing or unknown 'format'");
    if (doc.value("version", 0) != kNetlistVersion) bad("unsupported 'version'");

    std::vector<MviVariable> vars;
    for (const auto& v : doc.at("variables"))
      vars.push_back({v.at("id").get<std::string>(), v.at("radix").get<unsigned>(),
                      v.at("encoding").get<std::vector<std::string>>()});
    for (const auto& v : vars) validate_variable(v);
    ImportedNetlist out;
    out.circuit = Circuit(make_context(vars));
    auto& c = out.circuit;

    for (const auto& q : doc.at("qubits")) {
      const auto role = parse_role(q.at("role").get<std::string>());
      if (!role) bad("unknown qubit role '" + q.at("role").get<std::string>() + "'");
      c.add_qubit(q.at("name").get<std::string>(), *role);
    }
    std::vector<std::vector<std::optional<QubitId>>> lines(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) lines[i].resize(vars[i].bit_count());
    for (const auto& in : doc.at("inputs")) {
      const auto var = c.context()->index_of(in.at("variable").get<std::string>());
      const auto bit = in.at("bit").get<unsigned>();
      const auto q = in.at("qubit").get<QubitId>();
      if (!var || bit >= lines[*var].size()) bad("input binding names an unknown encoding bit");
      if (q >= c.num_qubits() || c.qubits()[q].role != QubitRole::Input)
        bad("input binding must name an input qubit");
      if (lines[*var][bit]) bad("encoding bit bound twice");
      lines[*var][bit] = q;
    }
    std::vector<std::vector<QubitId>> bound(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (auto& q : lines[i]) {
        if (!q) bad("encoding bit of " + vars[i].id + " has no input qubit");
        bound[i].push_back(*q);
      }
    c.set_input_lines(bound);
    for (const auto& o : doc.at("outputs"))
      c.bind_output(o.at("label").get<std::string>(), o.at("qubit").get<QubitId>());
    for (const auto& g : doc.at("gates"))
      c.add_gate({g.at("controls").get<std::vector<QubitId>>(), g.at("target").get<QubitId>()});
    std::vector<GateSection> sections;
    for (const auto& s : doc.at("sections"))
      sections.push_back({s.at("name").get<std::string>(), s.at("begin").get<std::size_t>(),
                          s.at("end").get<std::size_t>()});
    c.set_sections(std::move(sections));

    const auto& cost = doc.at("cost");
    out.stored_cost.maslov = cost.at("maslov").get<std::int64_t>();
    out.stored_cost.tqc = cost.at("tqc").get<std::int64_t>();
    out.stored_cost.extrapolated = cost.at("tqc_extrapolated").get<bool>();
    for (const auto& [k, n] : cost.at("gates_by_controls").items())
      out.stored_cost.by_controls[std::stoul(k)] = n.get<std::size_t>();
    out.stored_hash = doc.at("hash").get<std::string>();
    if (out.stored_hash != content_hash(c))
      bad("hash mismatch: stored " + out.stored_hash + ", content " + content_hash(c));
    return out;
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  } catch (const ContractViolation& e) {
    bad(e.what());
  }
}

}  // namespace mvi::cli
