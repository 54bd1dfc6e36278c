#pragma once

#include <mvi/bitvector.hpp>
#include <mvi/literal.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mvi {

/// Ordered list of variables; the first variable is the most significant digit
/// of the natural assignment order.
class VariableContext {
public:
  VariableContext() = default;
  explicit VariableContext(std::vector<MviVariable> vars);

  std::size_t size() const { return vars_.size(); }
  const MviVariable& operator[](std::size_t i) const { return vars_[i]; }
  const std::vector<MviVariable>& variables() const { return vars_; }

  std::optional<std::size_t> index_of(const std::string& id) const;
  /// Variable and bit position owning an encoding bit name.
  std::optional<std::pair<std::size_t, unsigned>> find_bit(const std::string& name) const;

  std::vector<unsigned> radices() const;
  /// Product of radices; throws Refusal if it does not fit 64 bits.
  std::size_t assignment_count() const;
  std::size_t total_bits() const;

  std::vector<unsigned> decode(std::size_t index) const;
  std::size_t encode(const std::vector<unsigned>& values) const;

private:
  std::vector<MviVariable> vars_;
};

using ContextPtr = std::shared_ptr<const VariableContext>;

inline ContextPtr make_context(std::vector<MviVariable> vars) {
  return std::make_shared<const VariableContext>(std::move(vars));
}

/// Product of literals, one TruthSet per context variable. A full set marks an
/// unconstrained variable.
class ProductTerm {
public:
  ProductTerm() = default;
  /// Constant-1 product over the context.
  explicit ProductTerm(const VariableContext& ctx);

  /// Intersects the variable's set with s. Returns false when the term vanishes.
  bool restrict(std::size_t var, const TruthSet& s);

  const TruthSet& set(std::size_t var) const { return sets_[var]; }
  std::size_t variable_count() const { return sets_.size(); }
  bool is_one() const;
  /// Number of constrained variables.
  std::size_t literal_count() const;
  bool eval(const std::vector<unsigned>& values) const;

  friend bool operator==(const ProductTerm&, const ProductTerm&) = default;
  friend auto operator<=>(const ProductTerm&, const ProductTerm&) = default;

private:
  std::vector<TruthSet> sets_;
};

/// XOR of product terms over a shared context.
class MviExpression {
public:
  MviExpression() = default;
  MviExpression(ContextPtr ctx, std::string label = {});

  const ContextPtr& context() const { return ctx_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  const std::vector<ProductTerm>& terms() const { return terms_; }

  /// XORs a term into the expression (an identical term cancels).
  void add(const ProductTerm& t);
  /// XOR of a product given as (variable, set) literals; empty literal drops it.
  void add(const std::vector<MviLiteral>& literals);
  void add_constant_one();
  bool empty() const { return terms_.empty(); }

  /// Sorts terms and removes pairs that cancel.
  void canonicalize();

private:
  ContextPtr ctx_;
  std::string label_;
  std::vector<ProductTerm> terms_;
};

/// Output bits over all assignments in natural order, one vector per output.
struct TruthTable {
  ContextPtr ctx;
  std::vector<std::string> labels;
  std::vector<BitVector> outputs;

  std::size_t rows() const { return outputs.empty() ? 0 : outputs.front().size(); }
  friend bool operator==(const TruthTable& a, const TruthTable& b) {
    return a.outputs == b.outputs;
  }
};

/// A multi-output function over one context.
struct MviFunction {
  ContextPtr ctx;
  std::vector<MviExpression> outputs;
};

/// Evaluates at an assignment given as one value per context variable.
bool eval_expression(const MviExpression& expr, const std::vector<unsigned>& assignment);

TruthTable truth_table(const MviExpression& expr);
TruthTable truth_table(const std::vector<MviExpression>& exprs);
inline TruthTable truth_table(const MviFunction& f) { return truth_table(f.outputs); }

/// Human-readable rendering such as "1 ^ X1{2,3} * X2{2}".
std::string to_string(const MviExpression& expr);
std::string to_string(const ProductTerm& term, const VariableContext& ctx);

}  // namespace mvi
