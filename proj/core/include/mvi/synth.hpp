#pragma once

#include <mvi/circuit.hpp>
#include <mvi/transform.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mvi {

struct BinaryLiteral {
  std::size_t var = 0;
  bool positive = true;

  friend auto operator<=>(const BinaryLiteral&, const BinaryLiteral&) = default;
};

/// AND of literals sorted by variable; empty means constant 1.
struct BinaryProduct {
  std::vector<BinaryLiteral> literals;

  friend auto operator<=>(const BinaryProduct&, const BinaryProduct&) = default;
};

/// XOR of binary products over named binary variables.
struct BinaryEsop {
  std::vector<std::string> vars;
  std::vector<BinaryProduct> products;

  /// XORs a product in; an identical product cancels.
  void add(BinaryProduct p);
  bool eval(const std::vector<std::uint8_t>& bits) const;
  std::size_t literal_count() const;
};

/// "1", "x1a", "!x1a*x1b ^ x2b", ...
std::string to_string(const BinaryEsop& e);

/// Lowest-cost ESOP of a literal over its encoding bits. Codes at or above the
/// radix are don't-cares. Exhaustive over completions and FPRM polarities for up to
/// three bits, positive-polarity otherwise.
BinaryEsop literal_binary_esop(const MviVariable& var, const TruthSet& s);

/// Substitutes literal ESOPs into every term and distributes, over all encoding
/// bits of the context in order.
BinaryEsop expand_to_binary_esop(const MviExpression& expr);

/// Direct AND-XOR realization: one gate per product onto the output line, with NOT
/// gates toggling input lines between products. Inputs are left as they end.
Circuit synthesize_esop_baseline(const std::vector<BinaryEsop>& outputs, ContextPtr ctx,
                                 const std::vector<std::string>& labels);
Circuit synthesize_esop_baseline(const BinaryEsop& e, ContextPtr ctx,
                                 const std::string& label = "f");

enum class DecoderStyle {
  /// Exact small search; encoding lines are reused in place where possible.
  Compact,
  /// One fresh ancilla per literal, filled from its binary ESOP with inputs restored.
  Ancilla,
};

struct DecoderOptions {
  DecoderStyle style = DecoderStyle::Compact;
  bool allow_non_canonical = false;
  /// Bit r-1 requests P^r; unset means every non-constant row.
  std::optional<std::uint32_t> needed_rows;
  /// Metric ranked first by the compact search.
  Objective objective = Objective::Maslov;
};

struct DecoderLines {
  /// Line holding P^r at index r-1; empty for constant rows and rows not requested.
  std::vector<std::optional<QubitId>> literal_line;
  std::vector<Gate> gates;
};

/// Appends a decoder for variable var of c's context.
DecoderLines synthesize_decoder(Circuit& c, std::size_t var, const PolarityMatrix& p,
                                const DecoderOptions& opt = {});

/// Stand-alone decoder whose outputs are the polarity literals P^r, named "P<r>".
Circuit synthesize_decoder(const MviVariable& var, const PolarityMatrix& p,
                           const DecoderOptions& opt = {});

struct FprmOptions {
  bool mirror = false;
  DecoderStyle decoder = DecoderStyle::Compact;
  bool allow_non_canonical = false;
  /// Metric ranked first when choosing decoders, term sharing and output chaining.
  Objective objective = Objective::Maslov;
};

/// Decoders, then one gate (or shared ancilla and fan-out) per nonzero spectral
/// index. Where cheaper, an output line first collects terms it has in common
/// with other outputs and is copied into them by CNOT. With mirror the decoder
/// and shared-term gates are undone at the end.
Circuit synthesize_fprm(const Spectrum& sp, ContextPtr ctx, const std::vector<std::string>& labels,
                        const FprmOptions& opt = {});

/// Largest control count among gates of the term section of an FPRM circuit.
std::size_t term_max_controls(const Circuit& c);

/// Largest number of non-constant literals in a nonzero spectral index.
std::size_t widest_term_literals(const Spectrum& sp);

}  // namespace mvi
