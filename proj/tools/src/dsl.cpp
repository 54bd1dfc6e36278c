#include <mvi/cli/dsl.hpp>

#include <mvi/errors.hpp>

#include <algorithm>
#include <cctype>
#include <set>

namespace mvi::cli {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::optional<PolarityAssignment> FunctionFile::polarity() const {
  if (!ctx) return std::nullopt;
  std::vector<std::optional<PolarityMatrix>> by_var(ctx->size());
  for (const auto& [v, p] : polarities) by_var[v] = p;
  PolarityAssignment pa;
  for (auto& p : by_var) {
    if (!p) return std::nullopt;
    pa.push_back(*p);
  }
  return pa;
}

namespace {

enum class Tok { Id, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    skip();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= s_.size()) return t;
    const char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Id;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        t.text += take();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Int;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) t.text += take();
    } else if (std::string_view(":(),;=[]{}^*!").find(c) != std::string_view::npos) {
      t.kind = Tok::Sym;
      t.text = std::string(1, take());
    } else {
      throw ParseError(t.line, t.column, std::string("unexpected character '") + c + "'");
    }
    return t;
  }

private:
  char take() {
    const char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
public:
  explicit Parser(std::string_view text) : lex_(text) { advance(); }

  FunctionFile file() {
    FunctionFile f;
    std::vector<MviVariable> vars;
    std::set<std::string> bits;
    std::set<std::string> labels;
    while (cur_.kind != Tok::End) {
      const Token head = expect_id("a declaration");
      if (head.text == "var") {
        if (f.ctx) fail(head, "variable declarations must precede outputs and polarities");
        vars.push_back(var_decl(vars, bits));
      } else if (head.text == "polarity") {
        freeze(f, vars);
        f.polarities.push_back(pol_decl(*f.ctx, f.polarities));
      } else if (head.text == "out") {
        freeze(f, vars);
        const Token name = expect_id("an output name");
        if (!labels.insert(name.text).second) fail(name, "duplicate output '" + name.text + "'");
        if (f.ctx->index_of(name.text) || f.ctx->find_bit(name.text))
          fail(name, "output '" + name.text + "' clashes with a variable or encoding bit");
        expect_sym("=");
        f.outputs.push_back(expr(f.ctx, name.text));
        expect_sym(";");
      } else {
        fail(head, "expected 'var', 'polarity' or 'out', found '" + head.text + "'");
      }
    }
    freeze(f, vars);
    return f;
  }

  PolarityAssignment polarities(const VariableContext& ctx) {
    std::vector<std::pair<std::size_t, PolarityMatrix>> got;
    while (cur_.kind != Tok::End) {
      const Token head = expect_id("'polarity'");
      if (head.text != "polarity") fail(head, "expected 'polarity', found '" + head.text + "'");
      got.push_back(pol_decl(ctx, got));
    }
    std::vector<std::optional<PolarityMatrix>> by_var(ctx.size());
    for (const auto& [v, p] : got) by_var[v] = p;
    PolarityAssignment pa;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (!by_var[i]) fail(cur_, "no polarity for variable '" + ctx[i].id + "'");
      pa.push_back(*by_var[i]);
    }
    return pa;
  }

private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.column, msg);
  }

  void advance() { cur_ = lex_.next(); }

  std::string describe(const Token& t) {
    return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  }

  Token expect_id(const std::string& what) {
    if (cur_.kind != Tok::Id) fail(cur_, "expected " + what + ", found " + describe(cur_));
    Token t = cur_;
    advance();
    return t;
  }
  Token expect_int() {
    if (cur_.kind != Tok::Int) fail(cur_, "expected an integer, found " + describe(cur_));
    Token t = cur_;
    advance();
    return t;
  }
  Token expect_sym(const char* s) {
    if (cur_.kind != Tok::Sym || cur_.text != s)
      fail(cur_, std::string("expected '") + s + "', found " + describe(cur_));
    Token t = cur_;
    advance();
    return t;
  }
  bool at_sym(const char* s) const { return cur_.kind == Tok::Sym && cur_.text == s; }
  bool accept_sym(const char* s) {
    if (!at_sym(s)) return false;
    advance();
    return true;
  }

  unsigned small_int(const Token& t, unsigned limit) {
    if (t.text.size() > 6 || std::stoul(t.text) > limit)
      fail(t, "integer " + t.text + " is out of range");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  void freeze(FunctionFile& f, const std::vector<MviVariable>& vars) {
    if (!f.ctx) f.ctx = make_context(vars);
  }

  MviVariable var_decl(const std::vector<MviVariable>& vars, std::set<std::string>& bits) {
    const Token id = expect_id("a variable name");
    for (const auto& v : vars)
      if (v.id == id.text) fail(id, "duplicate variable '" + id.text + "'");
    if (bits.count(id.text)) fail(id, "variable '" + id.text + "' clashes with an encoding bit");
    expect_sym(":");
    const Token kw = expect_id("'radix'");
    if (kw.text != "radix") fail(kw, "expected 'radix', found '" + kw.text + "'");
    const Token rt = expect_int();
    const unsigned radix = small_int(rt, kMaxRadix);
    if (radix < 2) fail(rt, "radix must be at least 2");
    const Token enc = expect_id("'encode'");
    if (enc.text != "encode") fail(enc, "expected 'encode', found '" + enc.text + "'");
    expect_sym("(");
    MviVariable v{id.text, radix, {}};
    do {
      const Token b = expect_id("an encoding bit");
      const bool clash = std::any_of(vars.begin(), vars.end(),
                                     [&](const MviVariable& o) { return o.id == b.text; });
      if (clash || !bits.insert(b.text).second)
        fail(b, "encoding bit '" + b.text + "' is already in use");
      v.encoding_bits.push_back(b.text);
    } while (accept_sym(","));
    expect_sym(")");
    expect_sym(";");
    try {
      validate_variable(v);
    } catch (const ContractViolation& e) {
      fail(id, e.what());
    }
    return v;
  }

  std::pair<std::size_t, PolarityMatrix> pol_decl(
      const VariableContext& ctx, const std::vector<std::pair<std::size_t, PolarityMatrix>>& seen) {
    const Token id = expect_id("a variable name");
    const auto var = ctx.index_of(id.text);
    if (!var) fail(id, "undeclared variable '" + id.text + "'");
    for (const auto& [v, p] : seen)
      if (v == *var) fail(id, "duplicate polarity for '" + id.text + "'");
    const unsigned radix = ctx[*var].radix;
    expect_sym("=");
    expect_sym("[");
    std::vector<TruthSet> rows;
    do {
      const Token row = expect_int();
      if (row.text.size() != radix)
        fail(row, "row '" + row.text + "' needs " + std::to_string(radix) + " digits");
      if (row.text.find_first_not_of("01") != std::string::npos)
        fail(row, "row '" + row.text + "' must consist of 0 and 1");
      rows.push_back(TruthSet::from_string(row.text));
      if (rows.back().is_empty()) fail(row, "polarity rows must be nonzero");
    } while (accept_sym(";"));
    const Token close = expect_sym("]");
    expect_sym(";");
    if (rows.size() != radix)
      fail(close, "polarity of '" + id.text + "' needs " + std::to_string(radix) + " rows");
    return {*var, PolarityMatrix(radix, rows)};
  }

  MviExpression expr(const ContextPtr& ctx, const std::string& label) {
    MviExpression e(ctx, label);
    if (cur_.kind == Tok::Int && cur_.text == "0") {
      advance();
      return e;
    }
    do {
      term(e);
    } while (accept_sym("^"));
    return e;
  }

  void term(MviExpression& e) {
    const auto& ctx = *e.context();
    if (cur_.kind == Tok::Int) {
      const Token one = cur_;
      if (one.text != "1") fail(one, "only the constants 0 and 1 may appear in an expression");
      advance();
      e.add_constant_one();
      if (at_sym("*")) fail(cur_, "the constant 1 must stand alone in its term");
      return;
    }
    ProductTerm t(ctx);
    bool alive = true;
    do {
      const bool negated = accept_sym("!");
      const Token id = expect_id("a literal");
      const auto var = ctx.index_of(id.text);
      if (!var) fail(id, "undeclared variable '" + id.text + "'");
      const unsigned radix = ctx[*var].radix;
      TruthSet s;
      if (!negated && at_sym("{")) {
        advance();
        std::uint32_t bits = 0;
        do {
          const Token vt = expect_int();
          const unsigned value = small_int(vt, kMaxRadix);
          if (value >= radix)
            fail(vt, "value " + vt.text + " is out of range for radix " + std::to_string(radix));
          bits |= std::uint32_t{1} << value;
        } while (accept_sym(","));
        expect_sym("}");
        s = TruthSet(radix, bits);
      } else {
        if (radix != 2)
          fail(id, "variable '" + id.text + "' has radix " + std::to_string(radix) +
                       "; write " + id.text + "{...}");
        s = TruthSet(2, negated ? 1u : 2u);
      }
      alive = t.restrict(*var, s) && alive;
    } while (accept_sym("*"));
    if (alive) e.add(t);
  }

  Lexer lex_;
  Token cur_;
};

std::string literal_text(const MviVariable& v, const TruthSet& s) {
  if (v.radix == 2) return s.contains(1) ? v.id : "!" + v.id;
  std::string out = v.id + "{";
  bool first = true;
  for (auto x : s.values()) {
    out += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return out + "}";
}

}  // namespace

FunctionFile parse_function_file(std::string_view text) { return Parser(text).file(); }

PolarityAssignment parse_polarity_file(std::string_view text, const VariableContext& ctx) {
  return Parser(text).polarities(ctx);
}

std::string print_expression(const MviExpression& expr) {
  if (expr.empty()) return "0";
  const auto& ctx = *expr.context();
  std::string out;
  for (const auto& t : expr.terms()) {
    if (!out.empty()) out += " ^ ";
    std::string term;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (t.set(i).is_full()) continue;
      if (!term.empty()) term += " * ";
      term += literal_text(ctx[i], t.set(i));
    }
    out += term.empty() ? "1" : term;
  }
  return out;
}

std::string print_polarity(const VariableContext& ctx, const PolarityAssignment& pa) {
  std::string out;
  for (std::size_t i = 0; i < pa.size() && i < ctx.size(); ++i)
    out += "polarity " + ctx[i].id + " = " + pa[i].to_string() + ";\n";
  return out;
}

std::string print_function_file(const FunctionFile& f) {
  std::string out;
  for (const auto& v : f.ctx->variables()) {
    out += "var " + v.id + ": radix " + std::to_string(v.radix) + " encode(";
    for (std::size_t j = 0; j < v.encoding_bits.size(); ++j)
      out += (j ? "," : "") + v.encoding_bits[j];
    out += ");\n";
  }
  for (const auto& [var, p] : f.polarities)
    out += "polarity " + (*f.ctx)[var].id + " = " + p.to_string() + ";\n";
  for (const auto& e : f.outputs) out += "out " + e.label() + " = " + print_expression(e) + ";\n";
  return out;
}

}  // namespace mvi::cli
