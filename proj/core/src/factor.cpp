#include <mvi/factor.hpp>
#include <mvi/synth.hpp>

#include "line_search.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace mvi {

FactorNode FactorNode::constant(bool v) {
  FactorNode n;
  n.kind = Kind::Const;
  n.value = v;
  return n;
}

FactorNode FactorNode::literal(std::size_t var, TruthSet s) {
  FactorNode n;
  n.kind = Kind::Lit;
  n.var = var;
  n.set = s;
  return n;
}

FactorNode FactorNode::xor_of(std::vector<FactorNode> children) {
  FactorNode n;
  n.kind = Kind::Xor;
  n.children = std::move(children);
  return n;
}

FactorNode FactorNode::and_of(std::vector<FactorNode> children) {
  FactorNode n;
  n.kind = Kind::And;
  n.children = std::move(children);
  return n;
}

using Kind = FactorNode::Kind;

FactoredExpression from_expression(const MviExpression& expr) {
  const auto& ctx = *expr.context();
  std::vector<FactorNode> terms;
  for (const auto& t : expr.terms()) {
    std::vector<FactorNode> lits;
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (!t.set(i).is_full()) lits.push_back(FactorNode::literal(i, t.set(i)));
    if (lits.empty())
      terms.push_back(FactorNode::constant(true));
    else if (lits.size() == 1)
      terms.push_back(std::move(lits.front()));
    else
      terms.push_back(FactorNode::and_of(std::move(lits)));
  }
  FactorNode root;
  if (terms.empty())
    root = FactorNode::constant(false);
  else if (terms.size() == 1)
    root = std::move(terms.front());
  else
    root = FactorNode::xor_of(std::move(terms));
  return {expr.context(), expr.label(), std::move(root)};
}

namespace {

MviExpression multiply(const MviExpression& a, const MviExpression& b) {
  MviExpression out(a.context(), a.label());
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      ProductTerm t = ta;
      bool alive = true;
      for (std::size_t i = 0; i < t.variable_count() && alive; ++i) alive = t.restrict(i, tb.set(i));
      if (alive) out.add(t);
    }
  return out;
}

MviExpression flatten_node(const FactorNode& n, const ContextPtr& ctx) {
  MviExpression e(ctx);
  switch (n.kind) {
    case Kind::Const:
      if (n.value) e.add_constant_one();
      return e;
    case Kind::Lit:
      e.add(std::vector<MviLiteral>{{n.var, n.set}});
      return e;
    case Kind::Xor:
      for (const auto& c : n.children) {
        const auto sub = flatten_node(c, ctx);
        for (const auto& t : sub.terms()) e.add(t);
      }
      return e;
    case Kind::And:
      e.add_constant_one();
      for (const auto& c : n.children) e = multiply(e, flatten_node(c, ctx));
      return e;
  }
  return e;
}

std::string node_string(const FactorNode& n, const VariableContext& ctx, bool nested) {
  switch (n.kind) {
    case Kind::Const:
      return n.value ? "1" : "0";
    case Kind::Lit:
      return ctx[n.var].id + n.set.to_set_string();
    case Kind::Xor: {
      std::string s;
      for (const auto& c : n.children) {
        if (!s.empty()) s += " ^ ";
        s += node_string(c, ctx, false);
      }
      return nested ? "(" + s + ")" : s;
    }
    case Kind::And: {
      std::string s;
      for (const auto& c : n.children) {
        if (!s.empty()) s += " * ";
        s += node_string(c, ctx, true);
      }
      return s;
    }
  }
  return {};
}

}  // namespace

MviExpression flatten(const FactoredExpression& f) {
  auto e = flatten_node(f.root, f.ctx);
  e.set_label(f.label);
  e.canonicalize();
  return e;
}

bool is_grm(const FactoredExpression& f) {
  const auto e = flatten(f);
  std::set<std::vector<bool>> seen;
  for (const auto& t : e.terms()) {
    std::vector<bool> vars;
    for (std::size_t i = 0; i < t.variable_count(); ++i) vars.push_back(!t.set(i).is_full());
    if (!seen.insert(vars).second) return false;
  }
  return true;
}

std::string to_string(const FactoredExpression& f) { return node_string(f.root, *f.ctx, false); }

FactorNode simplify(const FactorNode& n, const VariableContext& ctx) {
  switch (n.kind) {
    case Kind::Const:
      return n;
    case Kind::Lit:
      if (n.set.is_empty()) return FactorNode::constant(false);
      if (n.set.is_full()) return FactorNode::constant(true);
      return n;
    case Kind::And: {
      std::vector<FactorNode> kids;
      for (const auto& c0 : n.children) {
        auto c = simplify(c0, ctx);
        if (c.kind == Kind::And)
          kids.insert(kids.end(), c.children.begin(), c.children.end());
        else
          kids.push_back(std::move(c));
      }
      std::vector<FactorNode> out;
      for (auto& c : kids) {
        if (c.kind == Kind::Const) {
          if (!c.value) return FactorNode::constant(false);
          continue;
        }
        if (c.kind == Kind::Lit) {
          auto it = std::find_if(out.begin(), out.end(), [&](const FactorNode& o) {
            return o.kind == Kind::Lit && o.var == c.var;
          });
          if (it != out.end()) {
            it->set = combine_literals(LiteralOp::And, it->set, c.set);
            if (it->set.is_empty()) return FactorNode::constant(false);
            continue;
          }
        }
        if (std::find(out.begin(), out.end(), c) != out.end()) continue;  // idempotent
        out.push_back(std::move(c));
      }
      if (out.empty()) return FactorNode::constant(true);
      if (out.size() == 1) return out.front();
      return FactorNode::and_of(std::move(out));
    }
    case Kind::Xor: {
      std::vector<FactorNode> kids;
      for (const auto& c0 : n.children) {
        auto c = simplify(c0, ctx);
        if (c.kind == Kind::Xor)
          kids.insert(kids.end(), c.children.begin(), c.children.end());
        else
          kids.push_back(std::move(c));
      }
      std::vector<FactorNode> out;
      bool one = false;
      std::size_t one_pos = 0;
      for (auto& c : kids) {
        if (c.kind == Kind::Const) {
          if (c.value) {
            if (!one) one_pos = out.size();
            one = !one;
          }
          continue;
        }
        auto it = std::find(out.begin(), out.end(), c);
        if (it != out.end()) {
          if (one && one_pos > static_cast<std::size_t>(it - out.begin())) --one_pos;
          out.erase(it);
          continue;
        }
        out.push_back(std::move(c));
      }
      if (one) out.insert(out.begin() + static_cast<std::ptrdiff_t>(std::min(one_pos, out.size())),
                          FactorNode::constant(true));
      if (out.empty()) return FactorNode::constant(false);
      if (out.size() == 1) return out.front();
      return FactorNode::xor_of(std::move(out));
    }
  }
  return n;
}

// ---------------------------------------------------------------------------
// Synthesis

namespace {

using Words = std::vector<std::uint64_t>;
using Score = std::pair<std::int64_t, std::int64_t>;

/// Largest number of lines (free, pinned and ancilla) handed to the exact search.
constexpr std::size_t kSearchLines = 3;

struct State {
  Circuit c;
  std::vector<Words> fn;          // function of every qubit over the full assignment space
  std::vector<int> owner;         // variable owning an input line, -1 otherwise
  std::set<QubitId> protect;      // lines whose value must survive
  std::vector<bool> pristine;     // variable lines still hold their encoding bits
};

class Synth {
public:
  explicit Synth(ContextPtr ctx) : ctx_(std::move(ctx)) {
    const auto& ctx_ref = *ctx_;
    n_ = ctx_ref.assignment_count();
    words_ = (n_ + 63) / 64;
    stride_.assign(ctx_ref.size(), 1);
    for (std::size_t i = ctx_ref.size(); i-- > 1;) stride_[i - 1] = stride_[i] * ctx_ref[i].radix;
  }

  State initial() const {
    State s{Circuit(ctx_), {}, {}, {}, std::vector<bool>(ctx_->size(), true)};
    s.c.add_context_inputs();
    s.fn.assign(s.c.num_qubits(), Words(words_, 0));
    s.owner.assign(s.c.num_qubits(), -1);
    const auto& ctx = *ctx_;
    for (std::size_t i = 0; i < ctx.size(); ++i)
      for (unsigned j = 0; j < ctx[i].bit_count(); ++j) {
        const QubitId q = s.c.input_line(i, j);
        s.owner[q] = static_cast<int>(i);
        for (std::size_t a = 0; a < n_; ++a)
          if (ctx[i].code_bit(value_of(a, i), j)) s.fn[q][a / 64] |= std::uint64_t{1} << (a % 64);
      }
    return s;
  }

  QubitId add_line(State& s, const std::string& name, QubitRole role) const {
    const QubitId q = s.c.add_qubit(name, role);
    s.fn.emplace_back(words_, 0);
    s.owner.push_back(-1);
    return q;
  }

  void gate(State& s, std::vector<QubitId> controls, QubitId t) const {
    Words on(words_, ~std::uint64_t{0});
    for (auto q : controls)
      for (std::size_t w = 0; w < words_; ++w) on[w] &= s.fn[q][w];
    for (std::size_t w = 0; w < words_; ++w) s.fn[t][w] ^= on[w];
    if (s.owner[t] >= 0) s.pristine[static_cast<std::size_t>(s.owner[t])] = false;
    s.c.mcx(std::move(controls), t);
  }

  static Score score(const State& s) {
    const auto r = cost_report(s.c);
    return {r.maslov, r.tqc};
  }

  void emit_into(State& s, const FactorNode& n, QubitId t) const {
    switch (n.kind) {
      case Kind::Const:
        if (n.value) gate(s, {}, t);
        return;
      case Kind::Lit:
        if (!search_into(s, n, t)) esop_into(s, n, t);
        return;
      case Kind::Xor:
        if (search_into(s, n, t)) return;
        emit_xor(s, n, t);
        return;
      case Kind::And:
        emit_and(s, n, t);
        return;
    }
  }

  QubitId line_for(State& s, const FactorNode& n) const {
    if (n.kind == Kind::Lit || n.kind == Kind::Xor)
      if (auto q = search_line(s, n)) return *q;
    const QubitId anc = add_line(s, "g" + std::to_string(s.c.num_qubits()), QubitRole::AncillaTerm);
    emit_into(s, n, anc);
    return anc;
  }

private:
  std::size_t value_of(std::size_t a, std::size_t var) const {
    return (a / stride_[var]) % (*ctx_)[var].radix;
  }

  static bool test(const Words& f, std::size_t a) { return (f[a / 64] >> (a % 64)) & 1u; }

  /// Variables of a Lit node or of an XOR of Lit/Const children; empty if other shape.
  static std::optional<std::vector<std::size_t>> small_support(const FactorNode& n) {
    std::set<std::size_t> vars;
    if (n.kind == Kind::Lit) {
      vars.insert(n.var);
    } else if (n.kind == Kind::Xor) {
      for (const auto& c : n.children) {
        if (c.kind == Kind::Lit)
          vars.insert(c.var);
        else if (c.kind != Kind::Const)
          return std::nullopt;
      }
    } else {
      return std::nullopt;
    }
    return std::vector<std::size_t>(vars.begin(), vars.end());
  }

  struct Local {
    std::vector<std::size_t> vars;
    unsigned domain = 1;
    std::vector<QubitId> free;
    std::vector<QubitId> pinned;
  };

  /// Variables the function of line q depends on.
  std::set<std::size_t> depends(const State& s, QubitId q) const {
    std::set<std::size_t> out;
    for (std::size_t k = 0; k < ctx_->size(); ++k)
      for (std::size_t a = 0; a < n_; ++a) {
        const std::size_t base = a - value_of(a, k) * stride_[k];
        if (test(s.fn[q], a) != test(s.fn[q], base)) {
          out.insert(k);
          break;
        }
      }
    return out;
  }

  /// Encoding lines of vars (grown by what those lines depend on) as a search frame.
  std::optional<Local> local_frame(const State& s, const std::vector<std::size_t>& vars0,
                                   unsigned ancillas) const {
    std::set<std::size_t> vars(vars0.begin(), vars0.end());
    for (bool grown = true; grown;) {
      grown = false;
      for (auto v : std::vector<std::size_t>(vars.begin(), vars.end()))
        for (unsigned j = 0; j < (*ctx_)[v].bit_count(); ++j)
          for (auto d : depends(s, s.c.input_line(v, j)))
            if (vars.insert(d).second) grown = true;
    }
    Local l;
    l.vars.assign(vars.begin(), vars.end());
    std::size_t d = 1;
    std::size_t lines = ancillas;
    for (auto v : l.vars) {
      d *= (*ctx_)[v].radix;
      lines += (*ctx_)[v].bit_count();
    }
    if (d > 64 || lines > kSearchLines) return std::nullopt;
    l.domain = static_cast<unsigned>(d);
    for (auto v : l.vars)
      for (unsigned j = 0; j < (*ctx_)[v].bit_count(); ++j) {
        const QubitId q = s.c.input_line(v, j);
        if (s.protect.count(q))
          l.pinned.push_back(q);
        else
          l.free.push_back(q);
      }
    return l;
  }

  /// Value of each variable of the frame at local point p (first variable most significant).
  std::vector<unsigned> local_values(const Local& l, unsigned p) const {
    std::vector<unsigned> vals(l.vars.size());
    for (std::size_t k = l.vars.size(); k-- > 0;) {
      const unsigned r = (*ctx_)[l.vars[k]].radix;
      vals[k] = p % r;
      p /= r;
    }
    return vals;
  }

  std::uint64_t local_line(const State& s, const Local& l, QubitId q) const {
    std::uint64_t m = 0;
    for (unsigned p = 0; p < l.domain; ++p) {
      const auto vals = local_values(l, p);
      std::size_t a = 0;
      for (std::size_t k = 0; k < l.vars.size(); ++k) a += vals[k] * stride_[l.vars[k]];
      if (test(s.fn[q], a)) m |= std::uint64_t{1} << p;
    }
    return m;
  }

  std::uint64_t local_node(const Local& l, const FactorNode& n) const {
    std::uint64_t m = 0;
    for (unsigned p = 0; p < l.domain; ++p) {
      const auto vals = local_values(l, p);
      auto lit = [&](const FactorNode& c) {
        if (c.kind == Kind::Const) return c.value;
        const auto k = static_cast<std::size_t>(
            std::find(l.vars.begin(), l.vars.end(), c.var) - l.vars.begin());
        return c.set.contains(vals[k]);
      };
      bool v = false;
      if (n.kind == Kind::Xor)
        for (const auto& c : n.children) v ^= lit(c);
      else
        v = lit(n);
      if (v) m |= std::uint64_t{1} << p;
    }
    return m;
  }

  detail::LsProblem problem(const State& s, const Local& l) const {
    detail::LsProblem p;
    p.domain = l.domain;
    p.free_targets_avoid_ancillas = true;
    for (auto q : l.free) p.free_lines.push_back(local_line(s, l, q));
    for (auto q : l.pinned) p.pinned_lines.push_back(local_line(s, l, q));
    return p;
  }

  /// Maps search line indices back to qubits, allocating ancillas on demand.
  template <typename Fn>
  void replay(State& s, const Local& l, const detail::LsProblem& p, const detail::LsSolution& sol,
              std::optional<QubitId> target, Fn&& on_line) const {
    const std::size_t nf = l.free.size();
    const std::size_t nm = nf + p.max_ancillas;
    std::map<std::size_t, QubitId> phys;
    auto line = [&](std::size_t idx) -> QubitId {
      if (idx < nf) return l.free[idx];
      if (idx >= nm + l.pinned.size()) return *target;
      if (idx >= nm) return l.pinned[idx - nm];
      auto it = phys.find(idx);
      if (it != phys.end()) return it->second;
      const QubitId q =
          add_line(s, "l" + std::to_string(s.c.num_qubits()), QubitRole::AncillaDecoder);
      phys[idx] = q;
      return q;
    };
    for (const auto& g : sol.gates) {
      std::vector<QubitId> controls;
      for (auto c : g.controls) controls.push_back(line(c));
      gate(s, std::move(controls), line(g.target));
    }
    on_line(line);
  }

  bool search_into(State& s, const FactorNode& n, QubitId t) const {
    const auto vars = small_support(n);
    if (!vars) return false;
    const auto l = local_frame(s, *vars, 0);
    if (!l) return false;
    auto p = problem(s, *l);
    p.use_target = true;
    p.target_goal = local_node(*l, n);
    const auto sol = detail::line_search_cached(p);
    if (!sol) return false;
    replay(s, *l, p, *sol, t, [](auto&&) {});
    return true;
  }

  std::optional<QubitId> search_line(State& s, const FactorNode& n) const {
    const auto vars = small_support(n);
    if (!vars) return std::nullopt;
    const auto l = local_frame(s, *vars, 1);
    if (!l) return std::nullopt;
    auto p = problem(s, *l);
    p.max_ancillas = 1;
    p.present.push_back(local_node(*l, n));
    const auto sol = detail::line_search_cached(p);
    if (!sol) return std::nullopt;
    QubitId out = 0;
    replay(s, *l, p, *sol, std::nullopt, [&](auto&& line) { out = line(sol->goal_line.front()); });
    return out;
  }

  /// Literal ESOP on pristine encoding lines, NOTs undone afterwards.
  void esop_into(State& s, const FactorNode& n, QubitId t) const {
    if (!s.pristine[n.var])
      throw InternalError("factored synthesis: literal ESOP on modified encoding lines");
    const auto& v = (*ctx_)[n.var];
    const auto e = literal_binary_esop(v, n.set);
    std::vector<bool> negated(v.bit_count(), false);
    for (const auto& prod : e.products) {
      std::vector<QubitId> controls;
      for (const auto& lit : prod.literals) {
        const QubitId q = s.c.input_line(n.var, static_cast<unsigned>(lit.var));
        if (negated[lit.var] == lit.positive) {
          gate(s, {}, q);
          negated[lit.var] = !negated[lit.var];
        }
        controls.push_back(q);
      }
      gate(s, std::move(controls), t);
    }
    for (unsigned j = 0; j < v.bit_count(); ++j)
      if (negated[j]) gate(s, {}, s.c.input_line(n.var, j));
    s.pristine[n.var] = true;
  }

  void emit_xor(State& s, const FactorNode& n, QubitId t) const {
    const auto& kids = n.children;
    if (kids.size() <= 4) {
      std::vector<std::size_t> order(kids.size());
      std::iota(order.begin(), order.end(), 0);
      std::optional<State> best;
      std::optional<Score> best_score;
      do {
        State trial = s;
        for (auto i : order) emit_into(trial, kids[i], t);
        const auto sc = score(trial);
        if (!best_score || sc < *best_score) {
          best_score = sc;
          best = std::move(trial);
        }
      } while (std::next_permutation(order.begin(), order.end()));
      s = std::move(*best);
      return;
    }
    std::vector<bool> done(kids.size(), false);
    for (std::size_t step = 0; step < kids.size(); ++step) {
      std::optional<State> best;
      std::optional<Score> best_score;
      std::size_t pick = 0;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (done[i]) continue;
        State trial = s;
        emit_into(trial, kids[i], t);
        const auto sc = score(trial);
        if (!best_score || sc < *best_score) {
          best_score = sc;
          best = std::move(trial);
          pick = i;
        }
      }
      done[pick] = true;
      s = std::move(*best);
    }
  }

  void emit_and(State& s, const FactorNode& n, QubitId t) const {
    const auto& kids = n.children;
    std::vector<std::size_t> order(kids.size());
    std::iota(order.begin(), order.end(), 0);
    std::optional<State> best;
    std::optional<Score> best_score;
    do {
      State trial = s;
      const auto saved = trial.protect;
      std::vector<QubitId> lines;
      for (auto i : order) {
        const QubitId q = line_for(trial, kids[i]);
        lines.push_back(q);
        trial.protect.insert(q);
      }
      trial.protect = saved;
      gate(trial, lines, t);
      const auto sc = score(trial);
      if (!best_score || sc < *best_score) {
        best_score = sc;
        best = std::move(trial);
      }
    } while (kids.size() <= 3 && std::next_permutation(order.begin(), order.end()));
    s = std::move(*best);
  }

  ContextPtr ctx_;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::size_t> stride_;
};

void append_mirror(Circuit& c) {
  std::vector<Gate> undo;
  for (const auto& g : c.gates()) {
    if (c.qubits()[g.target].role == QubitRole::Output) continue;
    undo.push_back(g);
  }
  const std::size_t begin = c.gates().size();
  c.append(reversed_gates(undo));
  c.add_section("mirror", begin);
}

}  // namespace

Circuit synthesize_factored(const std::vector<FactoredExpression>& fs, const FactoredOptions& opt) {
  if (fs.empty()) throw ContractViolation("synthesize_factored: no outputs");
  for (const auto& f : fs)
    if (f.ctx != fs.front().ctx && (!f.ctx || !fs.front().ctx))
      throw ContractViolation("synthesize_factored: outputs use different contexts");
  Synth synth(fs.front().ctx);
  State s = synth.initial();
  std::vector<QubitId> outs;
  for (std::size_t o = 0; o < fs.size(); ++o) {
    const std::string name = fs[o].label.empty() ? "f" + std::to_string(o) : fs[o].label;
    outs.push_back(synth.add_line(s, name, QubitRole::Output));
    s.c.bind_output(name, outs.back());
  }
  const std::size_t begin = s.c.gates().size();
  for (std::size_t o = 0; o < fs.size(); ++o)
    synth.emit_into(s, simplify(fs[o].root, *fs[o].ctx), outs[o]);
  s.c.add_section("factored", begin);
  for (const auto& g : s.c.gates())
    for (auto q : g.controls)
      if (s.c.qubits()[q].role == QubitRole::Output)
        throw InternalError("factored synthesis used an output line as a control");
  if (opt.mirror) append_mirror(s.c);
  return std::move(s.c);
}

Circuit synthesize_factored(const FactoredExpression& f, const FactoredOptions& opt) {
  return synthesize_factored(std::vector{f}, opt);
}

// ---------------------------------------------------------------------------
// Factorization

namespace {

using Size = std::tuple<std::size_t, std::size_t, std::size_t>;  // literals, constants, nodes

void measure(const FactorNode& n, Size& s) {
  ++std::get<2>(s);
  if (n.kind == Kind::Lit) ++std::get<0>(s);
  if (n.kind == Kind::Const) ++std::get<1>(s);
  for (const auto& c : n.children) measure(c, s);
}

Size size_of(const FactorNode& n) {
  Size s{0, 0, 0};
  measure(n, s);
  return s;
}

std::vector<FactorNode> factors_of(const FactorNode& n) {
  if (n.kind == Kind::And) return n.children;
  return {n};
}

FactorNode product(std::vector<FactorNode> fs) {
  if (fs.empty()) return FactorNode::constant(true);
  if (fs.size() == 1) return std::move(fs.front());
  return FactorNode::and_of(std::move(fs));
}

/// A*B1 ^ A*B2 ^ ... -> A*(B1 ^ B2 ^ ...), most shared factors first.
void extract_common(const FactorNode& n, std::vector<FactorNode>& out) {
  if (n.kind != Kind::Xor) return;
  std::vector<FactorNode> distinct;
  std::vector<std::size_t> count;
  for (const auto& c : n.children) {
    const auto fs = factors_of(c);
    std::vector<FactorNode> seen;
    for (const auto& f : fs) {
      if (std::find(seen.begin(), seen.end(), f) != seen.end()) continue;
      seen.push_back(f);
      auto it = std::find(distinct.begin(), distinct.end(), f);
      if (it == distinct.end()) {
        distinct.push_back(f);
        count.push_back(1);
      } else {
        ++count[static_cast<std::size_t>(it - distinct.begin())];
      }
    }
  }
  std::vector<std::size_t> order(distinct.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return count[a] > count[b]; });
  for (auto k : order) {
    if (count[k] < 2) break;
    const auto& a = distinct[k];
    std::vector<FactorNode> rest;
    std::vector<FactorNode> kids;
    std::optional<std::size_t> slot;
    for (const auto& c : n.children) {
      auto fs = factors_of(c);
      auto it = std::find(fs.begin(), fs.end(), a);
      if (it == fs.end()) {
        kids.push_back(c);
        continue;
      }
      fs.erase(it);
      rest.push_back(product(std::move(fs)));
      if (!slot) {
        slot = kids.size();
        kids.emplace_back();
      }
    }
    kids[*slot] = FactorNode::and_of({a, rest.size() == 1 ? rest.front() : FactorNode::xor_of(rest)});
    out.push_back(kids.size() == 1 ? kids.front() : FactorNode::xor_of(std::move(kids)));
  }
}

/// X^S1 ^ X^S2 -> X^(S1 xor S2) and 1 ^ X^S -> X^(V minus S).
void merge_literals(const FactorNode& n, std::vector<FactorNode>& out) {
  if (n.kind != Kind::Xor) return;
  const auto& k = n.children;
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      std::optional<FactorNode> merged;
      if (k[i].kind == Kind::Lit && k[j].kind == Kind::Lit && k[i].var == k[j].var)
        merged = FactorNode::literal(k[i].var, combine_literals(LiteralOp::Xor, k[i].set, k[j].set));
      else if (k[i].kind == Kind::Const && k[i].value && k[j].kind == Kind::Lit)
        merged = FactorNode::literal(k[j].var, negate_literal(k[j].set));
      else if (k[j].kind == Kind::Const && k[j].value && k[i].kind == Kind::Lit)
        merged = FactorNode::literal(k[i].var, negate_literal(k[i].set));
      if (!merged) continue;
      std::vector<FactorNode> kids;
      for (std::size_t m = 0; m < k.size(); ++m) {
        if (m == i)
          kids.push_back(*merged);
        else if (m != j)
          kids.push_back(k[m]);
      }
      out.push_back(kids.size() == 1 ? kids.front() : FactorNode::xor_of(std::move(kids)));
    }
}

void absorb_constants(const FactorNode& n, const VariableContext& ctx,
                      std::vector<FactorNode>& out) {
  auto s = simplify(n, ctx);
  if (!(s == n)) out.push_back(std::move(s));
}

enum class Rule { Extract, Merge, Absorb };

/// Every single application of rule, leftmost-outermost first.
void rewrites(const FactorNode& n, Rule rule, const VariableContext& ctx,
              std::vector<FactorNode>& out) {
  switch (rule) {
    case Rule::Extract:
      extract_common(n, out);
      break;
    case Rule::Merge:
      merge_literals(n, out);
      break;
    case Rule::Absorb:
      absorb_constants(n, ctx, out);
      break;
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    std::vector<FactorNode> sub;
    rewrites(n.children[i], rule, ctx, sub);
    for (auto& v : sub) {
      FactorNode copy = n;
      copy.children[i] = std::move(v);
      out.push_back(std::move(copy));
    }
  }
}

}  // namespace

FactoredExpression factorize_grm(const MviExpression& expr) {
  auto cur = from_expression(expr);
  const auto& ctx = *cur.ctx;
  cur.root = simplify(cur.root, ctx);
  const auto reference = truth_table(expr);
  auto cost = [&](const FactoredExpression& f) { return maslov_cost(synthesize_factored(f)); };
  std::int64_t cur_cost = cost(cur);
  Size cur_size = size_of(cur.root);
  for (;;) {
    bool moved = false;
    for (Rule rule : {Rule::Extract, Rule::Merge, Rule::Absorb}) {
      std::vector<FactorNode> cands;
      rewrites(cur.root, rule, ctx, cands);
      for (auto& cand : cands) {
        FactoredExpression next{cur.ctx, cur.label, simplify(cand, ctx)};
        const Size sz = size_of(next.root);
        const std::int64_t c = cost(next);
        if (c > cur_cost || (c == cur_cost && !(sz < cur_size))) continue;
        if (!(truth_table(flatten(next)) == reference))
          throw InternalError("factorize_grm: rewrite changed the function");
        cur = std::move(next);
        cur_cost = c;
        cur_size = sz;
        moved = true;
        break;
      }
      if (moved) break;
    }
    if (!moved) break;
  }
  return cur;
}

}  // namespace mvi
