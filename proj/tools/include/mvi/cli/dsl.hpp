#pragma once

#include <mvi/expression.hpp>
#include <mvi/polarity.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mvi::cli {

/// Syntax or semantic error in a function or polarity file; positions are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

struct FunctionFile {
  ContextPtr ctx;
  std::vector<MviExpression> outputs;
  /// Polarity blocks in declaration order, keyed by variable index.
  std::vector<std::pair<std::size_t, PolarityMatrix>> polarities;

  MviFunction function() const { return {ctx, outputs}; }
  /// Set only when every variable has a polarity block.
  std::optional<PolarityAssignment> polarity() const;
};

/// file := (vardecl | poldecl | outdecl)*, with '#' comments. A term may be the
/// constant 1; x and !x stand for x{1} and x{0} of a radix-2 variable.
FunctionFile parse_function_file(std::string_view text);

/// Polarity blocks only, one per variable of ctx.
PolarityAssignment parse_polarity_file(std::string_view text, const VariableContext& ctx);

std::string print_expression(const MviExpression& expr);
std::string print_polarity(const VariableContext& ctx, const PolarityAssignment& pa);
/// Canonical text; parse_function_file(print_function_file(f)) reproduces f.
std::string print_function_file(const FunctionFile& f);

}  // namespace mvi::cli
