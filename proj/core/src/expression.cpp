#include <mvi/expression.hpp>

#include <algorithm>
#include <limits>
#include <set>

namespace mvi {

VariableContext::VariableContext(std::vector<MviVariable> vars) : vars_(std::move(vars)) {
  std::set<std::string> ids;
  std::set<std::string> bits;
  for (const auto& v : vars_) {
    validate_variable(v);
    if (!ids.insert(v.id).second) throw ContractViolation("duplicate variable " + v.id);
    for (const auto& b : v.encoding_bits)
      if (!bits.insert(b).second) throw ContractViolation("encoding bit " + b + " used twice");
  }
}

std::optional<std::size_t> VariableContext::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].id == id) return i;
  return std::nullopt;
}

std::optional<std::pair<std::size_t, unsigned>> VariableContext::find_bit(
    const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (unsigned j = 0; j < vars_[i].bit_count(); ++j)
      if (vars_[i].encoding_bits[j] == name) return std::make_pair(i, j);
  return std::nullopt;
}

std::vector<unsigned> VariableContext::radices() const {
  std::vector<unsigned> r;
  r.reserve(vars_.size());
  for (const auto& v : vars_) r.push_back(v.radix);
  return r;
}

std::size_t VariableContext::assignment_count() const {
  std::size_t n = 1;
  for (const auto& v : vars_) {
    if (n > std::numeric_limits<std::size_t>::max() / v.radix)
      throw Refusal("assignment space does not fit a machine word");
    n *= v.radix;
  }
  return n;
}

std::size_t VariableContext::total_bits() const {
  std::size_t n = 0;
  for (const auto& v : vars_) n += v.bit_count();
  return n;
}

std::vector<unsigned> VariableContext::decode(std::size_t index) const {
  std::vector<unsigned> values(vars_.size());
  for (std::size_t i = vars_.size(); i-- > 0;) {
    values[i] = static_cast<unsigned>(index % vars_[i].radix);
    index /= vars_[i].radix;
  }
  return values;
}

std::size_t VariableContext::encode(const std::vector<unsigned>& values) const {
  if (values.size() != vars_.size())
    throw ContractViolation("assignment has " + std::to_string(values.size()) +
                            " values for " + std::to_string(vars_.size()) + " variables");
  std::size_t index = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (values[i] >= vars_[i].radix)
      throw ContractViolation("value " + std::to_string(values[i]) + " outside radix of " +
                              vars_[i].id);
    index = index * vars_[i].radix + values[i];
  }
  return index;
}

ProductTerm::ProductTerm(const VariableContext& ctx) {
  sets_.reserve(ctx.size());
  for (const auto& v : ctx.variables()) sets_.push_back(TruthSet::full(v.radix));
}

bool ProductTerm::restrict(std::size_t var, const TruthSet& s) {
  if (var >= sets_.size()) throw ContractViolation("product term: variable index out of range");
  sets_[var] = combine_literals(LiteralOp::And, sets_[var], s);
  return !sets_[var].is_empty();
}

bool ProductTerm::is_one() const {
  return std::all_of(sets_.begin(), sets_.end(), [](const TruthSet& s) { return s.is_full(); });
}

std::size_t ProductTerm::literal_count() const {
  return static_cast<std::size_t>(
      std::count_if(sets_.begin(), sets_.end(), [](const TruthSet& s) { return !s.is_full(); }));
}

bool ProductTerm::eval(const std::vector<unsigned>& values) const {
  for (std::size_t i = 0; i < sets_.size(); ++i)
    if (!eval_literal(sets_[i], values[i])) return false;
  return true;
}

MviExpression::MviExpression(ContextPtr ctx, std::string label)
    : ctx_(std::move(ctx)), label_(std::move(label)) {
  if (!ctx_) throw ContractViolation("expression requires a variable context");
}

void MviExpression::add(const ProductTerm& t) {
  if (t.variable_count() != ctx_->size())
    throw ContractViolation("product term does not match the expression context");
  for (std::size_t i = 0; i < t.variable_count(); ++i)
    if (t.set(i).is_empty()) return;
  auto it = std::find(terms_.begin(), terms_.end(), t);
  if (it != terms_.end())
    terms_.erase(it);
  else
    terms_.push_back(t);
}

void MviExpression::add(const std::vector<MviLiteral>& literals) {
  ProductTerm t(*ctx_);
  for (const auto& l : literals) {
    if (l.variable >= ctx_->size()) throw ContractViolation("literal variable out of range");
    if (l.set.radix() != (*ctx_)[l.variable].radix)
      throw ContractViolation("literal radix does not match variable " +
                              (*ctx_)[l.variable].id);
    if (!t.restrict(l.variable, l.set)) return;
  }
  add(t);
}

void MviExpression::add_constant_one() { add(ProductTerm(*ctx_)); }

void MviExpression::canonicalize() {
  std::sort(terms_.begin(), terms_.end());
  std::vector<ProductTerm> out;
  for (std::size_t i = 0; i < terms_.size();) {
    std::size_t j = i;
    while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(terms_[i]);
    i = j;
  }
  terms_ = std::move(out);
}

bool eval_expression(const MviExpression& expr, const std::vector<unsigned>& assignment) {
  const auto& ctx = *expr.context();
  if (assignment.size() != ctx.size())
    throw ContractViolation("eval_expression: assignment covers " +
                            std::to_string(assignment.size()) + " of " +
                            std::to_string(ctx.size()) + " variables");
  bool acc = false;
  for (const auto& t : expr.terms()) acc ^= t.eval(assignment);
  return acc;
}

TruthTable truth_table(const std::vector<MviExpression>& exprs) {
  TruthTable tt;
  if (exprs.empty()) return tt;
  tt.ctx = exprs.front().context();
  const std::size_t n = tt.ctx->assignment_count();
  for (const auto& e : exprs) {
    if (e.context() != tt.ctx && e.context()->variables().size() != tt.ctx->size())
      throw ContractViolation("truth_table: expressions must share a context");
    tt.labels.push_back(e.label());
    BitVector bits(n);
    for (std::size_t idx = 0; idx < n; ++idx)
      if (eval_expression(e, tt.ctx->decode(idx))) bits.set(idx);
    tt.outputs.push_back(std::move(bits));
  }
  return tt;
}

TruthTable truth_table(const MviExpression& expr) { return truth_table(std::vector{expr}); }

std::string to_string(const ProductTerm& term, const VariableContext& ctx) {
  std::string s;
  for (std::size_t i = 0; i < term.variable_count(); ++i) {
    if (term.set(i).is_full()) continue;
    if (!s.empty()) s += " * ";
    s += ctx[i].id + term.set(i).to_set_string();
  }
  return s.empty() ? "1" : s;
}

std::string to_string(const MviExpression& expr) {
  if (expr.terms().empty()) return "0";
  std::string s;
  for (const auto& t : expr.terms()) {
    if (!s.empty()) s += " ^ ";
    s += to_string(t, *expr.context());
  }
  return s;
}

}  // namespace mvi
