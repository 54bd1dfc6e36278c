#pragma once

#include <mvi/errors.hpp>

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace mvi {

inline constexpr unsigned kMaxRadix = 16;

/// Set of values of one multi-valued variable; value k is stored in bit k.
class TruthSet {
public:
  TruthSet() = default;
  TruthSet(unsigned radix, std::uint32_t bits);

  static TruthSet empty(unsigned radix) { return TruthSet(radix, 0); }
  static TruthSet full(unsigned radix) { return TruthSet(radix, full_mask(radix)); }
  static TruthSet of(unsigned radix, std::initializer_list<unsigned> values);
  static TruthSet of(unsigned radix, const std::vector<unsigned>& values);
  /// Parses a characteristic string, leftmost character is value 0 ("1011" = {0,2,3}).
  static TruthSet from_string(std::string_view s);

  static std::uint32_t full_mask(unsigned radix) {
    return radix >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << radix) - 1;
  }

  unsigned radix() const { return radix_; }
  std::uint32_t bits() const { return bits_; }
  bool contains(unsigned value) const { return value < radix_ && ((bits_ >> value) & 1u); }
  bool is_empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == full_mask(radix_); }
  unsigned size() const { return static_cast<unsigned>(std::popcount(bits_)); }
  std::vector<unsigned> values() const;

  /// Characteristic string, value 0 first.
  std::string to_string() const;
  /// Set notation, e.g. "{0,2,3}".
  std::string to_set_string() const;

  friend bool operator==(const TruthSet&, const TruthSet&) = default;
  friend auto operator<=>(const TruthSet&, const TruthSet&) = default;

private:
  std::uint32_t bits_ = 0;
  unsigned radix_ = 0;
};

enum class LiteralOp { And, Or, Xor };

/// AND is intersection, OR is union, XOR is symmetric difference.
TruthSet combine_literals(LiteralOp kind, const TruthSet& s1, const TruthSet& s2);

/// Complement within the variable's value range.
TruthSet negate_literal(const TruthSet& s);

/// True iff value lies in s.
bool eval_literal(const TruthSet& s, unsigned value);

/// A multi-valued variable encoded on binary lines, most significant bit first.
struct MviVariable {
  std::string id;
  unsigned radix = 2;
  std::vector<std::string> encoding_bits;

  unsigned bit_count() const { return static_cast<unsigned>(encoding_bits.size()); }
  /// Value of encoding bit j (0 = most significant) for the given value.
  bool code_bit(unsigned value, unsigned j) const {
    return (value >> (bit_count() - 1 - j)) & 1u;
  }
};

/// Throws ContractViolation when the radix does not fit the encoding.
void validate_variable(const MviVariable& var);

/// Minimal number of binary lines for a radix.
unsigned bits_for_radix(unsigned radix);

struct MviLiteral {
  std::size_t variable = 0;
  TruthSet set;
};

}  // namespace mvi
