#pragma once

#include <mvi/gf2.hpp>
#include <mvi/literal.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace mvi {

/// v x v GF(2) matrix; row r (1-based) is the value set T^r of polarity literal P^r.
class PolarityMatrix {
public:
  PolarityMatrix() = default;
  /// Throws ContractViolation on a zero row or a row outside the radix.
  PolarityMatrix(unsigned radix, std::vector<TruthSet> rows);

  /// Parses "[1111;0101;0011;0111]" (brackets optional, value 0 leftmost).
  static PolarityMatrix parse(std::string_view text);
  static PolarityMatrix identity(unsigned radix);

  unsigned radix() const { return radix_; }
  const std::vector<TruthSet>& rows() const { return rows_; }
  /// Row r, 1-based.
  const TruthSet& row(unsigned r) const { return rows_.at(r - 1); }
  bool is_canonical() const { return canonical_; }
  bool has_all_ones_first() const { return !rows_.empty() && rows_.front().is_full(); }

  std::string to_string() const;

  friend bool operator==(const PolarityMatrix& a, const PolarityMatrix& b) {
    return a.radix_ == b.radix_ && a.rows_ == b.rows_;
  }

private:
  unsigned radix_ = 0;
  std::vector<TruthSet> rows_;
  bool canonical_ = false;
};

using PolarityAssignment = std::vector<PolarityMatrix>;

/// Integer value of a row read as printed (value 0 is the most significant digit).
std::uint32_t row_key(const TruthSet& row);

/// Lexicographic order of per-variable row keys.
bool polarity_less(const PolarityAssignment& a, const PolarityAssignment& b);

/// Bit r-1 set iff P^r participates; printed with P^1 first.
struct NormalizedCode {
  unsigned radix = 0;
  std::uint32_t bits = 0;

  bool has(unsigned r) const { return (bits >> (r - 1)) & 1u; }
  std::string to_string() const;
  static NormalizedCode parse(std::string_view s);
  friend bool operator==(const NormalizedCode&, const NormalizedCode&) = default;
};

std::size_t gf2_rank(const PolarityMatrix& p);

/// Number of unordered bases of GF(2)^v; throws std::overflow_error when too large.
std::uint64_t count_polarities(unsigned v);

struct EnumerateOptions {
  bool first_row_all_ones = false;
  /// Required for v = 5 and beyond.
  bool allow_large = false;
};

/// Visits every canonical polarity once. Rows are sorted by descending row_key
/// (all-ones row first when requested) and matrices in lexicographic order.
void for_each_polarity(unsigned v, const EnumerateOptions& opt,
                       const std::function<void(const PolarityMatrix&)>& visit);
std::vector<PolarityMatrix> enumerate_polarities(unsigned v, bool first_row_all_ones = false,
                                                 bool allow_large = false);

/// Unique code for canonical P. Non-canonical P: minimum-weight solution with the
/// smallest integer code, or UnrepresentableLiteral.
NormalizedCode solve_normalized_code(const TruthSet& s, const PolarityMatrix& p);

/// Row r holds, in bit k, whether minterm k contributes to coefficient P^{r+1}.
Gf2Rows polarity_kernel(const PolarityMatrix& p);

}  // namespace mvi
