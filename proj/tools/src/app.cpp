#include <mvi/cli/app.hpp>

#include <mvi/cli/dsl.hpp>
#include <mvi/cli/netlist.hpp>
#include <mvi/cli/qasm.hpp>
#include <mvi/cli/report.hpp>
#include <mvi/errors.hpp>
#include <mvi/search.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace mvi::cli {

namespace {

/// Error raised at a named pipeline stage.
struct StageError : std::runtime_error {
  StageError(std::string stage, const std::string& msg, int code)
      : std::runtime_error(msg), stage(std::move(stage)), code(code) {}
  std::string stage;
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StageError("read", "cannot open '" + path + "'", kBadInput);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw StageError("emit", "cannot write '" + path + "'", kBadInput);
}

/// Runs f, relabelling library errors with the stage name.
template <class F>
auto at_stage(const std::string& stage, const std::string& file, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const ParseError& e) {
    throw StageError(stage, (file.empty() ? "" : file + ":") + e.what(), kBadInput);
  } catch (const Refusal& e) {
    throw StageError(stage, e.what(), kRefused);
  } catch (const UnrepresentableLiteral& e) {
    throw StageError(stage, e.what(), kRefused);
  } catch (const InternalError& e) {
    throw StageError("verify", e.what(), kVerifyFailed);
  } catch (const ContractViolation& e) {
    throw StageError(stage, e.what(), kBadInput);
  } catch (const std::runtime_error& e) {
    throw StageError(stage, e.what(), kBadInput);
  }
}

FunctionFile load_function(const std::string& path) {
  const auto text = read_file(path);
  auto ff = at_stage("parse", path, [&] { return parse_function_file(text); });
  if (ff.outputs.empty()) throw StageError("parse", path + ": no outputs declared", kBadInput);
  return ff;
}

Circuit load_circuit(const std::string& path) {
  const auto text = read_file(path);
  return at_stage("import", path, [&] {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return import_netlist(text).circuit;
    return import_qasm(text);
  });
}

SpectrumMethod parse_method(const std::string& s) {
  return s == "butterfly" ? SpectrumMethod::Butterfly : SpectrumMethod::ProductsMatching;
}

SynthTarget parse_target(const std::string& s) {
  if (s == "grm") return SynthTarget::Grm;
  if (s == "esop") return SynthTarget::Esop;
  return SynthTarget::Fprm;
}

std::string describe_assignment(const VariableContext& ctx, std::size_t index) {
  const auto values = ctx.decode(index);
  std::string s;
  for (std::size_t i = 0; i < ctx.size(); ++i)
    s += (i ? ", " : "") + ctx[i].id + "=" + std::to_string(values[i]);
  return s;
}

bool same_context(const VariableContext& a, const VariableContext& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].id != b[i].id || a[i].radix != b[i].radix || a[i].encoding_bits != b[i].encoding_bits)
      return false;
  return true;
}

struct SynthArgs {
  std::string in;
  std::string polarity;
  std::string pairing;
  std::string method = "products-matching";
  std::string target = "fprm";
  std::string objective = "maslov";
  std::string decoder = "compact";
  std::string search;
  std::string out;
  std::vector<std::string> emit;
  bool mirror = false;
  bool all_polarities = false;
  bool allow_large = false;
  bool allow_non_canonical = false;
  std::optional<std::uint64_t> seed;
  std::size_t top = 1;
  unsigned jobs = 1;
  unsigned max_group = 2;
  std::size_t progress = 0;
};

/// Context the polarity refers to: the declared one, or the regrouped one.
ContextPtr working_context(const FunctionFile& ff, const SearchConfig& cfg) {
  if (cfg.pairing_scope == SearchConfig::PairingScope::Fixed && cfg.pairing)
    return regroup(ff.function(), *cfg.pairing).ctx;
  return ff.ctx;
}

int run_synth(const SynthArgs& a, std::ostream& out, std::ostream& err) {
  const auto ff = load_function(a.in);
  SearchConfig cfg;
  cfg.method = parse_method(a.method);
  cfg.target = parse_target(a.target);
  cfg.objective = a.objective == "tqc" ? Objective::Tqc : Objective::Maslov;
  cfg.decoder = a.decoder == "ancilla" ? DecoderStyle::Ancilla : DecoderStyle::Compact;
  cfg.mirror = a.mirror;
  cfg.first_row_all_ones = !a.all_polarities;
  cfg.allow_large = a.allow_large;
  cfg.allow_non_canonical = a.allow_non_canonical;
  cfg.jobs = std::max(1u, a.jobs);
  cfg.top = std::max<std::size_t>(1, a.top);
  cfg.seed = a.seed;
  cfg.max_group = a.max_group;
  if (a.progress) {
    cfg.progress_every = a.progress;
    cfg.progress = [&err](const std::string& line) { err << line << "\n"; };
  }

  at_stage("pairing", "", [&] {
    if (a.pairing == "exhaustive") {
      cfg.pairing_scope = SearchConfig::PairingScope::Exhaustive;
    } else if (!a.pairing.empty()) {
      cfg.pairing = Pairing::parse(a.pairing);
      regroup(ff.function(), *cfg.pairing);
    }
    return 0;
  });

  const bool searching = !a.search.empty();
  at_stage("polarity", a.polarity, [&] {
    if (searching) {
      if (a.search == "exhaustive") {
        cfg.polarity_scope = SearchConfig::PolarityScope::Exhaustive;
      } else if (a.search.rfind("sample:", 0) == 0) {
        const auto k = a.search.substr(7);
        if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos || std::stoull(k) == 0)
          throw ContractViolation("--search sample:K needs a positive integer K");
        if (!a.seed) throw ContractViolation("--search sample:K requires --seed");
        cfg.polarity_scope = SearchConfig::PolarityScope::Sampled;
        cfg.samples = std::stoull(k);
      } else {
        throw ContractViolation("--search must be 'exhaustive' or 'sample:K'");
      }
      return 0;
    }
    if (cfg.pairing_scope == SearchConfig::PairingScope::Exhaustive && cfg.target != SynthTarget::Esop)
      throw ContractViolation("--pairing exhaustive needs --search for the polarities");
    if (cfg.target == SynthTarget::Esop) return 0;
    const auto ctx = working_context(ff, cfg);
    std::optional<PolarityAssignment> pa;
    if (!a.polarity.empty())
      pa = parse_polarity_file(read_file(a.polarity), *ctx);
    else if (ctx == ff.ctx)
      pa = ff.polarity();
    if (!pa) throw ContractViolation("no polarity for every variable; give --polarity or --search");
    check_polarity(*ctx, *pa, cfg.allow_non_canonical);
    cfg.polarity_scope = SearchConfig::PolarityScope::Fixed;
    cfg.fixed_polarities = {*pa};
    return 0;
  });

  const auto result = at_stage("synthesize", "", [&] { return search_best(ff.function(), cfg); });

  std::vector<std::string> emit = a.emit;
  if (emit.empty()) emit.push_back("report");
  if (searching || cfg.pairing_scope == SearchConfig::PairingScope::Exhaustive)
    out << "search: evaluated=" << result.evaluated << " pairings=" << result.pairings
        << " candidates_per_pairing=" << result.candidates_per_pairing
        << " returned=" << result.ranked.size() << "\n";
  for (std::size_t r = 0; r < result.ranked.size(); ++r) {
    const auto& s = result.ranked[r];
    for (const auto& kind : emit) {
      std::string text, ext;
      if (kind == "report") {
        text = format_report(s, cfg, r + 1);
        ext = ".report.txt";
      } else if (kind == "netlist") {
        text = export_netlist(s.circuit);
        ext = ".netlist.json";
      } else {
        text = export_qasm(s.circuit);
        ext = ".qasm";
      }
      if (a.out.empty()) {
        out << text;
      } else {
        const std::string suffix = result.ranked.size() > 1 ? "." + std::to_string(r + 1) : "";
        write_file(a.out + suffix + ext, text);
      }
    }
  }
  return kOk;
}

int run_transform(const std::string& in, const std::string& polarity, const std::string& method,
                  const std::string& pairing, bool allow_non_canonical, std::ostream& out) {
  const auto ff = load_function(in);
  auto f = ff.function();
  if (!pairing.empty())
    f = at_stage("pairing", "", [&] { return regroup(f, Pairing::parse(pairing)); });
  const auto pa = at_stage("polarity", polarity, [&] {
    std::optional<PolarityAssignment> p;
    if (!polarity.empty())
      p = parse_polarity_file(read_file(polarity), *f.ctx);
    else if (pairing.empty())
      p = ff.polarity();
    if (!p) throw ContractViolation("no polarity for every variable; give --polarity");
    check_polarity(*f.ctx, *p, allow_non_canonical);
    return *p;
  });
  return at_stage("transform", "", [&] {
    const auto tt = truth_table(f.outputs);
    const auto mv = minterm_vector(tt);
    const auto sp = parse_method(method) == SpectrumMethod::Butterfly
                        ? butterfly_spectrum(mv, pa)
                        : products_matching(output_terms(f.outputs), pa,
                                            static_cast<unsigned>(f.outputs.size()),
                                            {allow_non_canonical});
    std::vector<std::string> labels;
    for (const auto& e : f.outputs) labels.push_back(e.label());
    out << "method: " << method << "\n";
    out << "polarity:";
    for (std::size_t i = 0; i < pa.size(); ++i) out << " " << (*f.ctx)[i].id << "=" << pa[i].to_string();
    out << "\n";
    for (unsigned o = 0; o < f.outputs.size(); ++o)
      out << "minterms " << labels[o] << ": " << mv.to_string(o) << "\n";
    out << "spectrum: " << sp.nonzero_count() << " nonzero, outputs " ;
    for (std::size_t o = 0; o < labels.size(); ++o) out << (o ? "," : "") << labels[o];
    out << "\n" << to_string(sp);
    for (const auto& e : spectrum_to_expressions(sp, f.ctx, labels))
      out << "fprm " << e.label() << " = " << print_expression(e) << "\n";
    return kOk;
  });
}

int run_cost(const std::string& in, std::ostream& out) {
  const auto text = read_file(in);
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = first != std::string::npos && text[first] == '{';
  Circuit c;
  std::optional<CostReport> stored;
  at_stage("import", in, [&] {
    if (json) {
      auto imp = import_netlist(text);
      c = std::move(imp.circuit);
      stored = imp.stored_cost;
    } else {
      c = import_qasm(text);
    }
    return 0;
  });
  const auto r = cost_report(c);
  out << "qubits: " << c.num_qubits() << "\n";
  out << "gates: " << gate_summary(r) << "\n";
  out << "maslov: " << r.maslov << "\n";
  out << "tqc: " << r.tqc << (r.extrapolated ? " (extrapolated)" : "") << "\n";
  if (json) out << "hash: " << content_hash(c) << "\n";
  if (stored) {
    const bool same = *stored == r;
    out << "stored_cost: " << (same ? "matches" : "differs") << "\n";
    if (!same) return kVerifyFailed;
  }
  return kOk;
}

int run_verify(const std::string& netlist, const std::string& in, std::ostream& out) {
  const auto c = load_circuit(netlist);
  const auto ff = load_function(in);
  return at_stage("verify", "", [&]() -> int {
    if (!same_context(*c.context(), *ff.ctx))
      throw ContractViolation("circuit variables differ from those of '" + in + "'");
    std::vector<MviExpression> ordered;
    for (const auto& o : c.outputs()) {
      auto it = std::find_if(ff.outputs.begin(), ff.outputs.end(),
                             [&](const MviExpression& e) { return e.label() == o.name; });
      if (it == ff.outputs.end())
        throw ContractViolation("circuit output '" + o.name + "' is not defined in '" + in + "'");
      ordered.push_back(*it);
    }
    if (ordered.size() != ff.outputs.size())
      throw ContractViolation("circuit does not realize every output of '" + in + "'");
    const auto v = equivalence(c, truth_table(ordered));
    if (!v.equivalent) {
      out << "verified: no (output " << c.outputs()[v.output.value_or(0)].name << " differs at "
          << describe_assignment(*ff.ctx, *v.counterexample) << ")\n";
      return kVerifyFailed;
    }
    out << "verified: yes (" << ff.ctx->assignment_count() << " assignments)\n";
    out << "ancillas_clean: " << (ancillas_clean(c) ? "yes" : "no") << "\n";
    out << "inputs_restored: " << (inputs_restored(c) ? "yes" : "no") << "\n";
    return kOk;
  });
}

struct EnumArgs {
  std::optional<unsigned> radix;
  std::string bits;
  std::string in;
  unsigned max_group = 2;
  bool exact = false;
  bool first_row_ones = false;
  bool allow_large = false;
  bool count_only = false;
};

int run_enumerate(const EnumArgs& a, std::ostream& out) {
  if (a.radix) {
    return at_stage("enumerate", "", [&] {
      const auto ps = enumerate_polarities(*a.radix, a.first_row_ones, a.allow_large);
      out << "count: " << ps.size() << "\n";
      if (!a.count_only)
        for (const auto& p : ps) out << p.to_string() << (p.is_canonical() ? "" : " non-canonical") << "\n";
      return kOk;
    });
  }
  std::vector<std::string> bits;
  if (!a.in.empty()) {
    const auto ff = load_function(a.in);
    for (const auto& v : ff.ctx->variables())
      bits.insert(bits.end(), v.encoding_bits.begin(), v.encoding_bits.end());
  } else {
    std::istringstream ss(a.bits);
    for (std::string b; std::getline(ss, b, ',');)
      if (!b.empty()) bits.push_back(b);
  }
  return at_stage("enumerate", "", [&] {
    if (bits.empty()) throw ContractViolation("enumerate needs --radix, --bits or --in");
    const auto ps = enumerate_pairings(bits, a.max_group, a.exact);
    out << "count: " << ps.size() << "\n";
    if (!a.count_only)
      for (const auto& p : ps) out << p.to_string() << "\n";
    return kOk;
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reversible circuit synthesis from multi-valued input Reed-Muller forms", "mvisynth"};
  app.require_subcommand(1);
  const auto methods = CLI::IsMember({"products-matching", "butterfly"});

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Synthesize, verify and cost circuits");
  synth->add_option("--in", sa.in, "Function file")->required();
  synth->add_option("--polarity", sa.polarity, "Polarity file");
  synth->add_option("--pairing", sa.pairing, "Grouping like 'X1=a,b;X2=c,d', or 'exhaustive'");
  synth->add_option("--method", sa.method, "Spectrum method")->check(methods);
  synth->add_option("--target", sa.target, "Form to realize")->check(CLI::IsMember({"fprm", "grm", "esop"}));
  synth->add_option("--objective", sa.objective, "Ranking metric")->check(CLI::IsMember({"maslov", "tqc"}));
  synth->add_option("--decoder", sa.decoder, "Decoder style")->check(CLI::IsMember({"compact", "ancilla"}));
  synth->add_flag("--mirror", sa.mirror, "Uncompute ancillas at the end");
  synth->add_option("--emit", sa.emit, "report, netlist or qasm (repeatable)")
      ->check(CLI::IsMember({"report", "netlist", "qasm"}));
  synth->add_option("--out", sa.out, "Write artifacts to PREFIX.<ext> instead of stdout");
  synth->add_option("--search", sa.search, "exhaustive or sample:K");
  synth->add_option("--seed", sa.seed, "Seed for sampling");
  synth->add_option("--top", sa.top, "Number of ranked solutions to emit");
  synth->add_option("--jobs", sa.jobs, "Worker threads");
  synth->add_option("--max-group", sa.max_group, "Largest pairing group")->check(CLI::Range(1u, 3u));
  synth->add_option("--progress", sa.progress, "Progress line to stderr every N candidates");
  synth->add_flag("--all-polarities", sa.all_polarities, "Do not require an all-ones first row");
  synth->add_flag("--allow-large", sa.allow_large, "Permit radix 5 enumeration");
  synth->add_flag("--allow-non-canonical", sa.allow_non_canonical, "Accept dependent polarity rows");

  std::string t_in, t_pol, t_method = "products-matching", t_pairing;
  bool t_nc = false;
  auto* transform = app.add_subcommand("transform", "Print minterm vector and spectrum");
  transform->add_option("--in", t_in, "Function file")->required();
  transform->add_option("--polarity", t_pol, "Polarity file");
  transform->add_option("--method", t_method, "Spectrum method")->check(methods);
  transform->add_option("--pairing", t_pairing, "Grouping like 'X1=a,b;X2=c,d'");
  transform->add_flag("--allow-non-canonical", t_nc, "Accept dependent polarity rows");

  std::string c_in;
  auto* cost = app.add_subcommand("cost", "Re-cost a netlist or QASM file");
  cost->add_option("--in", c_in, "Netlist (.json) or QASM file")->required();

  std::string v_net, v_in;
  auto* verify = app.add_subcommand("verify", "Check a circuit file against a function file");
  verify->add_option("--netlist", v_net, "Netlist (.json) or QASM file")->required();
  verify->add_option("--in", v_in, "Function file")->required();

  EnumArgs ea;
  auto* enumerate = app.add_subcommand("enumerate", "List polarities or pairings");
  enumerate->add_option("--radix", ea.radix, "List canonical polarities of this radix");
  enumerate->add_option("--bits", ea.bits, "Comma-separated binary variables to pair");
  enumerate->add_option("--in", ea.in, "Pair the encoding bits of a function file");
  enumerate->add_option("--max-group", ea.max_group, "Largest group")->check(CLI::Range(1u, 3u));
  enumerate->add_flag("--exact", ea.exact, "Groups of exactly --max-group");
  enumerate->add_flag("--first-row-ones", ea.first_row_ones, "Only polarities with an all-ones row");
  enumerate->add_flag("--allow-large", ea.allow_large, "Permit radix 5");
  enumerate->add_flag("--count", ea.count_only, "Print the count only");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (synth->parsed()) return run_synth(sa, out, err);
    if (transform->parsed()) return run_transform(t_in, t_pol, t_method, t_pairing, t_nc, out);
    if (cost->parsed()) return run_cost(c_in, out);
    if (verify->parsed()) return run_verify(v_net, v_in, out);
    if (enumerate->parsed()) return run_enumerate(ea, out);
  } catch (const StageError& e) {
    err << "error [" << e.stage << "]: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    err << "error [internal]: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kBadInput;
}

}  // namespace mvi::cli
