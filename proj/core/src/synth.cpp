#include <mvi/synth.hpp>

#include "line_search.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <map>
#include <set>
#include <tuple>

namespace mvi {

void BinaryEsop::add(BinaryProduct p) {
  std::sort(p.literals.begin(), p.literals.end());
  auto it = std::find(products.begin(), products.end(), p);
  if (it != products.end())
    products.erase(it);
  else
    products.push_back(std::move(p));
}

bool BinaryEsop::eval(const std::vector<std::uint8_t>& bits) const {
  bool acc = false;
  for (const auto& p : products) {
    bool on = true;
    for (const auto& l : p.literals) on = on && ((bits.at(l.var) != 0) == l.positive);
    acc ^= on;
  }
  return acc;
}

std::size_t BinaryEsop::literal_count() const {
  std::size_t n = 0;
  for (const auto& p : products) n += p.literals.size();
  return n;
}

std::string to_string(const BinaryEsop& e) {
  if (e.products.empty()) return "0";
  std::string s;
  for (const auto& p : e.products) {
    if (!s.empty()) s += " ^ ";
    if (p.literals.empty()) {
      s += "1";
      continue;
    }
    for (std::size_t i = 0; i < p.literals.size(); ++i) {
      if (i) s += "*";
      if (!p.literals[i].positive) s += "!";
      s += e.vars.at(p.literals[i].var);
    }
  }
  return s;
}

namespace {

/// (maslov, products, tqc, literals) for realizing an ESOP onto a clean line.
using EsopScore = std::tuple<std::int64_t, std::size_t, std::int64_t, std::size_t>;

EsopScore esop_score(const std::vector<BinaryProduct>& products) {
  std::int64_t m = 0;
  std::int64_t t = 0;
  std::size_t lits = 0;
  std::set<std::size_t> negated;
  for (const auto& p : products) {
    const std::size_t k = p.literals.size();
    m += maslov_gate_cost(k);
    t += tqc_gate_cost(k);
    lits += k;
    for (const auto& l : p.literals)
      if (!l.positive) negated.insert(l.var);
  }
  m += static_cast<std::int64_t>(negated.size());
  t += static_cast<std::int64_t>(negated.size());
  return {m, products.size(), t, lits};
}

/// FPRM of a function over b bits (code bit j is position b-1-j) under polarity mask.
std::vector<BinaryProduct> fprm_products(std::uint32_t f, unsigned b, std::uint32_t polarity) {
  const std::uint32_t n = 1u << b;
  std::vector<std::uint8_t> g(n);
  for (std::uint32_t y = 0; y < n; ++y) g[y] = (f >> (y ^ polarity)) & 1u;
  for (unsigned t = 0; t < b; ++t)
    for (std::uint32_t y = 0; y < n; ++y)
      if ((y >> t) & 1u) g[y] ^= g[y ^ (1u << t)];
  std::vector<BinaryProduct> out;
  for (std::uint32_t m = 0; m < n; ++m) {
    if (!g[m]) continue;
    BinaryProduct p;
    for (unsigned j = 0; j < b; ++j) {
      const unsigned t = b - 1 - j;
      if ((m >> t) & 1u) p.literals.push_back({j, ((polarity >> t) & 1u) == 0});
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

BinaryEsop literal_binary_esop(const MviVariable& var, const TruthSet& s) {
  validate_variable(var);
  if (s.radix() != var.radix)
    throw ContractViolation("literal_binary_esop: literal radix does not match " + var.id);
  const unsigned b = var.bit_count();
  BinaryEsop e;
  e.vars = var.encoding_bits;
  const std::uint32_t codes = 1u << b;
  std::uint32_t f = 0;
  for (unsigned c = 0; c < var.radix; ++c)
    if (s.contains(c)) f |= 1u << c;
  std::vector<unsigned> dc;
  for (unsigned c = var.radix; c < codes; ++c) dc.push_back(c);

  if (b > 3) {
    e.products = fprm_products(f, b, 0);
    return e;
  }
  std::optional<EsopScore> best;
  std::vector<BinaryProduct> best_products;
  for (std::uint32_t completion = 0; completion < (1u << dc.size()); ++completion) {
    std::uint32_t full = f;
    for (std::size_t i = 0; i < dc.size(); ++i)
      if ((completion >> i) & 1u) full |= 1u << dc[i];
    for (std::uint32_t pol = 0; pol < codes; ++pol) {
      auto products = fprm_products(full, b, pol);
      const auto score = esop_score(products);
      if (!best || score < *best) {
        best = score;
        best_products = std::move(products);
      }
    }
  }
  e.products = std::move(best_products);
  return e;
}

namespace {

std::optional<BinaryProduct> multiply(const BinaryProduct& a, const BinaryProduct& b) {
  std::map<std::size_t, bool> lits;
  for (const auto& l : a.literals) lits[l.var] = l.positive;
  for (const auto& l : b.literals) {
    auto it = lits.find(l.var);
    if (it == lits.end())
      lits[l.var] = l.positive;
    else if (it->second != l.positive)
      return std::nullopt;
  }
  BinaryProduct p;
  for (const auto& [v, pos] : lits) p.literals.push_back({v, pos});
  return p;
}

std::int64_t esop_cost(const BinaryEsop& e) {
  std::int64_t m = 0;
  for (const auto& p : e.products) m += maslov_gate_cost(p.literals.size());
  return m;
}

/// Literal of var in p: 0 absent, 1 positive, 2 negative.
int literal_state(const BinaryProduct& p, std::size_t var) {
  for (const auto& l : p.literals)
    if (l.var == var) return l.positive ? 1 : 2;
  return 0;
}

/// One improving rewrite between two products; returns true when applied.
bool improve_once(BinaryEsop& e) {
  const std::int64_t before = esop_cost(e);
  for (std::size_t i = 0; i < e.products.size(); ++i)
    for (std::size_t j = i + 1; j < e.products.size(); ++j) {
      const auto& p = e.products[i];
      const auto& q = e.products[j];
      std::set<std::size_t> vars;
      for (const auto& l : p.literals) vars.insert(l.var);
      for (const auto& l : q.literals) vars.insert(l.var);
      std::vector<std::size_t> diff;
      for (auto v : vars)
        if (literal_state(p, v) != literal_state(q, v)) diff.push_back(v);
      std::vector<BinaryProduct> replacement;
      BinaryProduct common;
      for (const auto& l : p.literals)
        if (std::find(diff.begin(), diff.end(), l.var) == diff.end()) common.literals.push_back(l);
      if (diff.size() == 1) {
        const int sp = literal_state(p, diff[0]);
        const int sq = literal_state(q, diff[0]);
        if (sp != 0 && sq != 0) {
          // x C ^ !x C = C
          replacement.push_back(common);
        } else {
          // x C ^ C = !x C
          BinaryProduct r = common;
          const int s = sp != 0 ? sp : sq;
          r.literals.push_back({diff[0], s == 2});
          replacement.push_back(r);
        }
      } else if (diff.size() == 2) {
        const int px = literal_state(p, diff[0]);
        const int py = literal_state(p, diff[1]);
        const int qx = literal_state(q, diff[0]);
        const int qy = literal_state(q, diff[1]);
        if (px && py && qx && qy && px != qx && py != qy) {
          // x^a y^b C ^ x^!a y^!b C = x^a C ^ y^!b C
          BinaryProduct r1 = common;
          r1.literals.push_back({diff[0], px == 1});
          BinaryProduct r2 = common;
          r2.literals.push_back({diff[1], py != 1});
          replacement.push_back(r1);
          replacement.push_back(r2);
        }
      }
      if (replacement.empty() && !(diff.size() == 1)) continue;
      BinaryEsop trial = e;
      trial.products.erase(trial.products.begin() + static_cast<std::ptrdiff_t>(j));
      trial.products.erase(trial.products.begin() + static_cast<std::ptrdiff_t>(i));
      for (auto& r : replacement) trial.add(r);
      if (esop_cost(trial) < before) {
        e = std::move(trial);
        return true;
      }
    }
  return false;
}

}  // namespace

BinaryEsop expand_to_binary_esop(const MviExpression& expr) {
  const auto& ctx = *expr.context();
  BinaryEsop out;
  std::vector<std::size_t> offset;
  for (const auto& v : ctx.variables()) {
    offset.push_back(out.vars.size());
    out.vars.insert(out.vars.end(), v.encoding_bits.begin(), v.encoding_bits.end());
  }
  std::map<std::pair<std::size_t, std::uint32_t>, BinaryEsop> memo;
  for (const auto& term : expr.terms()) {
    std::vector<BinaryProduct> acc(1);
    for (std::size_t i = 0; i < ctx.size() && !acc.empty(); ++i) {
      const auto& s = term.set(i);
      if (s.is_full()) continue;
      auto key = std::make_pair(i, s.bits());
      auto it = memo.find(key);
      if (it == memo.end()) it = memo.emplace(key, literal_binary_esop(ctx[i], s)).first;
      std::vector<BinaryProduct> next;
      BinaryEsop partial;
      for (const auto& a : acc)
        for (const auto& lp : it->second.products) {
          BinaryProduct lifted;
          for (const auto& l : lp.literals) lifted.literals.push_back({offset[i] + l.var, l.positive});
          if (auto m = multiply(a, lifted)) partial.add(*m);
        }
      acc = std::move(partial.products);
    }
    for (auto& p : acc) out.add(std::move(p));
  }
  while (improve_once(out)) {
  }
  return out;
}

Circuit synthesize_esop_baseline(const std::vector<BinaryEsop>& outputs, ContextPtr ctx,
                                 const std::vector<std::string>& labels) {
  Circuit c(ctx);
  c.add_context_inputs();
  std::map<std::string, QubitId> line_of;
  for (std::size_t i = 0; i < ctx->size(); ++i)
    for (unsigned j = 0; j < (*ctx)[i].bit_count(); ++j)
      line_of[(*ctx)[i].encoding_bits[j]] = c.input_line(i, j);
  std::vector<QubitId> out_lines;
  for (std::size_t o = 0; o < outputs.size(); ++o) {
    const std::string name = o < labels.size() ? labels[o] : "f" + std::to_string(o);
    out_lines.push_back(c.add_qubit(name, QubitRole::Output));
    c.bind_output(name, out_lines.back());
  }

  struct Item {
    std::size_t output;
    std::vector<std::pair<QubitId, bool>> lits;
  };
  std::vector<Item> items;
  for (std::size_t o = 0; o < outputs.size(); ++o)
    for (const auto& p : outputs[o].products) {
      Item it{o, {}};
      for (const auto& l : p.literals) {
        auto f = line_of.find(outputs[o].vars.at(l.var));
        if (f == line_of.end())
          throw ContractViolation("ESOP variable " + outputs[o].vars.at(l.var) +
                                  " is not an encoding bit of the context");
        it.lits.emplace_back(f->second, l.positive);
      }
      items.push_back(std::move(it));
    }

  std::map<QubitId, bool> positive;  // current polarity of each input line
  auto pol = [&](QubitId q) {
    auto it = positive.find(q);
    return it == positive.end() ? true : it->second;
  };
  std::vector<bool> done(items.size(), false);
  const std::size_t gates_begin = c.gates().size();
  for (std::size_t step = 0; step < items.size(); ++step) {
    std::size_t pick = items.size();
    std::pair<std::size_t, std::size_t> best_key{~std::size_t{0}, ~std::size_t{0}};
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (done[i]) continue;
      std::size_t toggles = 0;
      std::size_t conflicts = 0;
      for (const auto& [q, want] : items[i].lits) {
        if (pol(q) == want) continue;
        ++toggles;
        for (std::size_t k = 0; k < items.size(); ++k) {
          if (done[k] || k == i) continue;
          for (const auto& [q2, w2] : items[k].lits)
            if (q2 == q && w2 != want) ++conflicts;
        }
      }
      const std::pair<std::size_t, std::size_t> key{toggles, conflicts};
      if (key < best_key) {
        best_key = key;
        pick = i;
      }
    }
    done[pick] = true;
    std::vector<QubitId> controls;
    for (const auto& [q, want] : items[pick].lits) {
      if (pol(q) != want) {
        c.x(q);
        positive[q] = want;
      }
      controls.push_back(q);
    }
    c.mcx(controls, out_lines[items[pick].output]);
  }
  c.add_section("esop", gates_begin);
  return c;
}

Circuit synthesize_esop_baseline(const BinaryEsop& e, ContextPtr ctx, const std::string& label) {
  return synthesize_esop_baseline(std::vector{e}, std::move(ctx), {label});
}

namespace {

/// Value-set mask of the lines of one variable: bit x set iff code bit j of value x is 1.
std::uint64_t bit_function(const MviVariable& var, unsigned j) {
  std::uint64_t m = 0;
  for (unsigned x = 0; x < var.radix; ++x)
    if (var.code_bit(x, j)) m |= std::uint64_t{1} << x;
  return m;
}

/// Ancilla-style decoder: fresh ancilla per literal, NOTs on inputs undone at the end.
DecoderLines ancilla_decoder(Circuit& c, std::size_t var, const PolarityMatrix& p,
                             std::uint32_t needed) {
  const auto& v = (*c.context())[var];
  DecoderLines out;
  out.literal_line.assign(p.radix(), std::nullopt);
  std::vector<bool> negated(v.bit_count(), false);
  const std::size_t begin = c.gates().size();
  for (unsigned r = 1; r <= p.radix(); ++r) {
    if (!((needed >> (r - 1)) & 1u) || p.row(r).is_full()) continue;
    const QubitId anc =
        c.add_qubit("d_" + v.id + "_" + std::to_string(r), QubitRole::AncillaDecoder);
    const auto esop = literal_binary_esop(v, p.row(r));
    for (const auto& prod : esop.products) {
      std::vector<QubitId> controls;
      for (const auto& l : prod.literals) {
        const QubitId line = c.input_line(var, static_cast<unsigned>(l.var));
        if (negated[l.var] == l.positive) {
          c.x(line);
          negated[l.var] = !negated[l.var];
        }
        controls.push_back(line);
      }
      c.mcx(controls, anc);
    }
    out.literal_line[r - 1] = anc;
  }
  for (unsigned j = 0; j < v.bit_count(); ++j)
    if (negated[j]) c.x(c.input_line(var, j));
  out.gates.assign(c.gates().begin() + static_cast<std::ptrdiff_t>(begin), c.gates().end());
  return out;
}

DecoderLines compact_decoder(Circuit& c, std::size_t var, const PolarityMatrix& p,
                             std::uint32_t needed, Objective obj) {
  const auto& v = (*c.context())[var];
  if (v.bit_count() > 2) return ancilla_decoder(c, var, p, needed);
  detail::LsProblem prob;
  prob.domain = v.radix;
  for (unsigned j = 0; j < v.bit_count(); ++j) prob.free_lines.push_back(bit_function(v, j));
  std::vector<unsigned> rows;
  for (unsigned r = 1; r <= p.radix(); ++r) {
    if (!((needed >> (r - 1)) & 1u) || p.row(r).is_full()) continue;
    rows.push_back(r);
    prob.present.push_back(p.row(r).bits());
  }
  prob.max_ancillas = static_cast<unsigned>(rows.size());
  prob.tqc_first = obj == Objective::Tqc;
  auto sol = detail::line_search_cached(prob);
  if (!sol) return ancilla_decoder(c, var, p, needed);

  const std::size_t nf = prob.free_lines.size();
  std::map<std::size_t, QubitId> physical;
  for (std::size_t j = 0; j < nf; ++j) physical[j] = c.input_line(var, static_cast<unsigned>(j));
  auto line = [&](std::size_t idx) {
    auto it = physical.find(idx);
    if (it != physical.end()) return it->second;
    const QubitId q = c.add_qubit("d_" + v.id + "_" + std::to_string(idx - nf),
                                  QubitRole::AncillaDecoder);
    physical[idx] = q;
    return q;
  };
  DecoderLines out;
  out.literal_line.assign(p.radix(), std::nullopt);
  const std::size_t begin = c.gates().size();
  for (const auto& g : sol->gates) {
    std::vector<QubitId> controls;
    for (auto ci : g.controls) controls.push_back(line(ci));
    c.mcx(controls, line(g.target));
  }
  for (std::size_t k = 0; k < rows.size(); ++k) out.literal_line[rows[k] - 1] = line(sol->goal_line[k]);
  out.gates.assign(c.gates().begin() + static_cast<std::ptrdiff_t>(begin), c.gates().end());
  return out;
}

}  // namespace

DecoderLines synthesize_decoder(Circuit& c, std::size_t var, const PolarityMatrix& p,
                                const DecoderOptions& opt) {
  if (!c.context() || var >= c.context()->size())
    throw ContractViolation("synthesize_decoder: variable not in the circuit context");
  if (p.radix() != (*c.context())[var].radix)
    throw ContractViolation("synthesize_decoder: polarity radix mismatch");
  if (!p.is_canonical() && !opt.allow_non_canonical)
    throw Refusal("synthesize_decoder: polarity " + p.to_string() + " is not canonical");
  const std::uint32_t needed = opt.needed_rows.value_or(TruthSet::full_mask(p.radix()));
  if (opt.style == DecoderStyle::Ancilla) return ancilla_decoder(c, var, p, needed);
  return compact_decoder(c, var, p, needed, opt.objective);
}

Circuit synthesize_decoder(const MviVariable& var, const PolarityMatrix& p,
                           const DecoderOptions& opt) {
  Circuit c(make_context({var}));
  c.add_context_inputs();
  const std::size_t begin = c.gates().size();
  auto lines = synthesize_decoder(c, 0, p, opt);
  c.add_section("decoder:" + var.id, begin);
  for (unsigned r = 1; r <= p.radix(); ++r)
    if (lines.literal_line[r - 1]) c.bind_output("P" + std::to_string(r), *lines.literal_line[r - 1]);
  return c;
}

namespace {

struct FprmTerm {
  std::vector<QubitId> lits;
  std::uint64_t outputs = 0;
};

using Key = std::pair<std::int64_t, std::int64_t>;

Key operator+(const Key& a, const Key& b) { return {a.first + b.first, a.second + b.second}; }

Key gate_key(std::size_t controls, Objective obj) {
  return cost_key(maslov_gate_cost(controls), tqc_gate_cost(controls), obj);
}

/// Receiver output collects a copy of source after the source holds exactly prefix.
struct OutputCopy {
  unsigned source = 0;
  unsigned receiver = 0;
  std::vector<std::size_t> prefix;  // term indices
};

struct PlanStep {
  enum Kind { Direct, Compute, Fan, Copy } kind = Direct;
  std::size_t term = 0;
  std::size_t shared = 0;
  unsigned output = 0;
  unsigned source = 0;
};

struct TermPlan {
  std::vector<PlanStep> steps;
  std::vector<std::size_t> shared_terms;
  Key cost{0, 0};
};

/// Greedy choice of output-to-output copies. A source collects its prefix first
/// and is never a receiver; every copy must save more than its CNOT.
std::vector<OutputCopy> chain_outputs(const std::vector<FprmTerm>& terms, unsigned outputs,
                                      const FprmOptions& opt) {
  std::vector<std::set<std::size_t>> own(outputs);
  for (std::size_t t = 0; t < terms.size(); ++t)
    for (unsigned o = 0; o < outputs; ++o)
      if ((terms[t].outputs >> o) & 1u) own[o].insert(t);
  std::vector<OutputCopy> copies;
  std::vector<std::optional<std::vector<std::size_t>>> prefix(outputs);
  std::vector<bool> receiver(outputs, false);
  const Key cnot = gate_key(1, opt.objective);
  for (;;) {
    std::optional<Key> best_saving;
    std::size_t best_leftover = 0;
    OutputCopy best;
    for (unsigned a = 0; a < outputs; ++a) {
      if (receiver[a]) continue;
      for (unsigned b = 0; b < outputs; ++b) {
        if (b == a || prefix[b]) continue;
        std::vector<std::size_t> common;
        if (prefix[a]) {
          if (!std::includes(own[b].begin(), own[b].end(), prefix[a]->begin(), prefix[a]->end()))
            continue;
          common = *prefix[a];
        } else {
          std::set_intersection(own[a].begin(), own[a].end(), own[b].begin(), own[b].end(),
                                std::back_inserter(common));
        }
        Key saved{0, 0};
        bool wide = false;
        for (auto t : common) {
          saved = saved + gate_key(terms[t].lits.size(), opt.objective);
          wide = wide || !terms[t].lits.empty();
        }
        if (!wide) continue;
        const Key saving{saved.first - cnot.first, saved.second - cnot.second};
        if (saving <= Key{0, 0}) continue;
        // ties: prefer sources whose whole term set is the prefix
        const std::size_t leftover = own[a].size() - common.size();
        if (!best_saving || *best_saving < saving ||
            (*best_saving == saving && leftover < best_leftover)) {
          best_saving = saving;
          best_leftover = leftover;
          best = {a, b, common};
        }
      }
    }
    if (!best_saving) break;
    prefix[best.source] = best.prefix;
    receiver[best.receiver] = true;
    for (auto t : best.prefix) own[best.receiver].erase(t);
    copies.push_back(std::move(best));
  }
  return copies;
}

/// Orders term gates: source prefixes, copies, then the remaining incidences with
/// a shared ancilla where that is cheaper than repeating the gate.
TermPlan plan_terms(const std::vector<FprmTerm>& terms, unsigned outputs,
                    const std::vector<OutputCopy>& copies, const FprmOptions& opt) {
  TermPlan plan;
  std::vector<std::uint64_t> pending(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) pending[t] = terms[t].outputs;
  const Key cnot = gate_key(1, opt.objective);
  std::vector<bool> done_source(outputs, false);
  for (const auto& cp : copies) {
    if (!done_source[cp.source]) {
      done_source[cp.source] = true;
      for (auto t : cp.prefix) {
        plan.steps.push_back({PlanStep::Direct, t, 0, cp.source, 0});
        plan.cost = plan.cost + gate_key(terms[t].lits.size(), opt.objective);
        pending[t] &= ~(std::uint64_t{1} << cp.source);
      }
    }
    plan.steps.push_back({PlanStep::Copy, 0, 0, cp.receiver, cp.source});
    plan.cost = plan.cost + cnot;
    for (auto t : cp.prefix) pending[t] &= ~(std::uint64_t{1} << cp.receiver);
  }
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (!pending[t]) continue;
    std::vector<unsigned> targets;
    for (unsigned o = 0; o < outputs; ++o)
      if ((pending[t] >> o) & 1u) targets.push_back(o);
    const auto fan = static_cast<std::int64_t>(targets.size());
    const Key g = gate_key(terms[t].lits.size(), opt.objective);
    const Key direct{g.first * fan, g.second * fan};
    Key via = g + Key{cnot.first * fan, cnot.second * fan};
    if (opt.mirror) via = via + g;
    if (terms[t].lits.size() >= 2 && fan >= 2 && via < direct) {
      const std::size_t s = plan.shared_terms.size();
      plan.shared_terms.push_back(t);
      plan.steps.push_back({PlanStep::Compute, t, s, 0, 0});
      for (auto o : targets) plan.steps.push_back({PlanStep::Fan, t, s, o, 0});
      plan.cost = plan.cost + via;
    } else {
      for (auto o : targets) plan.steps.push_back({PlanStep::Direct, t, 0, o, 0});
      plan.cost = plan.cost + direct;
    }
  }
  return plan;
}

}  // namespace

Circuit synthesize_fprm(const Spectrum& sp, ContextPtr ctx, const std::vector<std::string>& labels,
                        const FprmOptions& opt) {
  const auto& pa = sp.polarity();
  check_polarity(*ctx, pa, opt.allow_non_canonical);
  if (labels.size() != sp.num_outputs())
    throw ContractViolation("synthesize_fprm: " + std::to_string(labels.size()) +
                            " labels for " + std::to_string(sp.num_outputs()) + " outputs");
  const std::size_t n = ctx->size();
  std::vector<std::uint32_t> needed(n, 0);
  sp.for_each_nonzero([&](std::size_t index, std::uint64_t) {
    const auto r = sp.tuple_of(index);
    for (std::size_t i = 0; i < n; ++i)
      if (!pa[i].row(r[i]).is_full()) needed[i] |= 1u << (r[i] - 1);
  });

  Circuit c(ctx);
  c.add_context_inputs();
  std::vector<DecoderLines> decoders;
  std::vector<Gate> scaffold;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t begin = c.gates().size();
    DecoderOptions dopt{opt.decoder, opt.allow_non_canonical, needed[i], opt.objective};
    decoders.push_back(synthesize_decoder(c, i, pa[i], dopt));
    c.add_section("decoder:" + (*ctx)[i].id, begin);
    scaffold.insert(scaffold.end(), decoders.back().gates.begin(), decoders.back().gates.end());
  }
  std::vector<QubitId> out_lines;
  for (const auto& l : labels) {
    out_lines.push_back(c.add_qubit(l, QubitRole::Output));
    c.bind_output(l, out_lines.back());
  }

  std::vector<FprmTerm> terms;
  sp.for_each_nonzero([&](std::size_t index, std::uint64_t outs) {
    const auto r = sp.tuple_of(index);
    FprmTerm t;
    t.outputs = outs;
    for (std::size_t i = 0; i < n; ++i)
      if (!pa[i].row(r[i]).is_full()) {
        const auto& q = decoders[i].literal_line[r[i] - 1];
        if (!q) throw InternalError("synthesize_fprm: decoder line missing");
        t.lits.push_back(*q);
      }
    terms.push_back(std::move(t));
  });

  const std::size_t terms_begin = c.gates().size();
  const auto flat = plan_terms(terms, sp.num_outputs(), {}, opt);
  const auto chained = plan_terms(terms, sp.num_outputs(), chain_outputs(terms, sp.num_outputs(), opt), opt);
  const auto& plan = chained.cost < flat.cost ? chained : flat;
  std::vector<Gate> shared;
  std::vector<QubitId> term_line(plan.shared_terms.size());
  for (std::size_t s = 0; s < plan.shared_terms.size(); ++s)
    term_line[s] = c.add_qubit("t_" + std::to_string(s), QubitRole::AncillaTerm);
  for (const auto& step : plan.steps) {
    switch (step.kind) {
      case PlanStep::Direct:
        c.mcx(terms[step.term].lits, out_lines[step.output]);
        break;
      case PlanStep::Compute:
        c.mcx(terms[step.term].lits, term_line[step.shared]);
        shared.push_back(c.gates().back());
        break;
      case PlanStep::Fan:
        c.cx(term_line[step.shared], out_lines[step.output]);
        break;
      case PlanStep::Copy:
        c.cx(out_lines[step.source], out_lines[step.output]);
        break;
    }
  }
  c.add_section("terms", terms_begin);
  if (opt.mirror) {
    const std::size_t begin = c.gates().size();
    c.append(reversed_gates(shared));
    c.append(reversed_gates(scaffold));
    c.add_section("mirror", begin);
  }
  return c;
}

std::size_t term_max_controls(const Circuit& c) {
  std::size_t m = 0;
  for (const auto& s : c.sections())
    if (s.name == "terms")
      for (std::size_t i = s.begin; i < s.end; ++i) m = std::max(m, c.gates()[i].controls.size());
  return m;
}

std::size_t widest_term_literals(const Spectrum& sp) {
  std::size_t m = 0;
  sp.for_each_nonzero([&](std::size_t index, std::uint64_t) {
    const auto r = sp.tuple_of(index);
    std::size_t k = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (!sp.polarity()[i].row(r[i]).is_full()) ++k;
    m = std::max(m, k);
  });
  return m;
}

}  // namespace mvi
