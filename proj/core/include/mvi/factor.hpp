#pragma once

#include <mvi/circuit.hpp>
#include <mvi/expression.hpp>

#include <string>
#include <vector>

namespace mvi {

/// Node of a factored XOR/AND expression tree.
struct FactorNode {
  enum class Kind { Xor, And, Lit, Const };

  Kind kind = Kind::Const;
  std::size_t var = 0;  // Lit
  TruthSet set;         // Lit
  bool value = false;   // Const
  std::vector<FactorNode> children;

  static FactorNode constant(bool v);
  static FactorNode literal(std::size_t var, TruthSet s);
  static FactorNode xor_of(std::vector<FactorNode> children);
  static FactorNode and_of(std::vector<FactorNode> children);

  friend bool operator==(const FactorNode&, const FactorNode&) = default;
  friend auto operator<=>(const FactorNode&, const FactorNode&) = default;
};

struct FactoredExpression {
  ContextPtr ctx;
  std::string label;
  FactorNode root;
};

/// Two-level tree: XOR of one AND node per term.
FactoredExpression from_expression(const MviExpression& expr);

/// Distributes the tree back into an XOR of products.
MviExpression flatten(const FactoredExpression& f);

/// True iff the flattened terms use pairwise different variable sets.
bool is_grm(const FactoredExpression& f);

/// "X1{0,2,3} * (1 ^ X2{2})" style rendering.
std::string to_string(const FactoredExpression& f);

/// Merges same-variable literals, drops neutral constants and flattens nested
/// nodes of the same kind. Never changes semantics.
FactorNode simplify(const FactorNode& n, const VariableContext& ctx);

/// Greedy rewriting: common-factor extraction, same-variable XOR merges, then
/// constant absorption. A rewrite is taken when the synthesized Maslov cost does
/// not grow and the tree shrinks or gets cheaper.
FactoredExpression factorize_grm(const MviExpression& expr);

struct FactoredOptions {
  /// Uncompute every non-output line at the end.
  bool mirror = false;
};

/// Recursive realization without a decoder bank. Literals are formed on the
/// encoding lines (modified in place where cheaper), AND nodes become Toffoli
/// gates over factor lines and XOR nodes accumulate into one target.
Circuit synthesize_factored(const FactoredExpression& f, const FactoredOptions& opt = {});
/// Several outputs over one context, sharing line state.
Circuit synthesize_factored(const std::vector<FactoredExpression>& fs,
                            const FactoredOptions& opt = {});

}  // namespace mvi
