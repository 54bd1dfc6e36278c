#include <mvi/literal.hpp>

#include <set>

namespace mvi {

TruthSet::TruthSet(unsigned radix, std::uint32_t bits) : bits_(bits), radix_(radix) {
  if (radix < 1 || radix > kMaxRadix)
    throw ContractViolation("radix " + std::to_string(radix) + " outside 1.." +
                            std::to_string(kMaxRadix));
  if (bits & ~full_mask(radix))
    throw ContractViolation("truth set has values outside radix " + std::to_string(radix));
}

TruthSet TruthSet::of(unsigned radix, std::initializer_list<unsigned> values) {
  return of(radix, std::vector<unsigned>(values));
}

TruthSet TruthSet::of(unsigned radix, const std::vector<unsigned>& values) {
  std::uint32_t bits = 0;
  for (unsigned v : values) {
    if (v >= radix)
      throw ContractViolation("value " + std::to_string(v) + " outside radix " +
                              std::to_string(radix));
    bits |= std::uint32_t{1} << v;
  }
  return TruthSet(radix, bits);
}

TruthSet TruthSet::from_string(std::string_view s) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      bits |= std::uint32_t{1} << i;
    else if (s[i] != '0')
      throw ContractViolation("truth set string must contain only 0 and 1");
  }
  return TruthSet(static_cast<unsigned>(s.size()), bits);
}

std::vector<unsigned> TruthSet::values() const {
  std::vector<unsigned> out;
  for (unsigned v = 0; v < radix_; ++v)
    if (contains(v)) out.push_back(v);
  return out;
}

std::string TruthSet::to_string() const {
  std::string s(radix_, '0');
  for (unsigned v = 0; v < radix_; ++v)
    if (contains(v)) s[v] = '1';
  return s;
}

std::string TruthSet::to_set_string() const {
  std::string s = "{";
  bool first = true;
  for (unsigned v : values()) {
    if (!first) s += ',';
    s += std::to_string(v);
    first = false;
  }
  return s + "}";
}

TruthSet combine_literals(LiteralOp kind, const TruthSet& s1, const TruthSet& s2) {
  if (s1.radix() != s2.radix())
    throw ContractViolation("combine_literals: radix mismatch (" + std::to_string(s1.radix()) +
                            " vs " + std::to_string(s2.radix()) + ")");
  switch (kind) {
    case LiteralOp::And:
      return TruthSet(s1.radix(), s1.bits() & s2.bits());
    case LiteralOp::Or:
      return TruthSet(s1.radix(), s1.bits() | s2.bits());
    case LiteralOp::Xor:
      return TruthSet(s1.radix(), s1.bits() ^ s2.bits());
  }
  throw ContractViolation("combine_literals: unknown operation");
}

TruthSet negate_literal(const TruthSet& s) {
  return TruthSet(s.radix(), s.bits() ^ TruthSet::full_mask(s.radix()));
}

bool eval_literal(const TruthSet& s, unsigned value) {
  if (value >= s.radix())
    throw ContractViolation("eval_literal: value " + std::to_string(value) +
                            " outside radix " + std::to_string(s.radix()));
  return s.contains(value);
}

unsigned bits_for_radix(unsigned radix) {
  unsigned b = 0;
  while ((1u << b) < radix) ++b;
  return b == 0 ? 1 : b;
}

void validate_variable(const MviVariable& var) {
  if (var.radix < 2 || var.radix > kMaxRadix)
    throw ContractViolation("variable " + var.id + ": radix must be in 2.." +
                            std::to_string(kMaxRadix));
  if (var.encoding_bits.empty())
    throw ContractViolation("variable " + var.id + ": no encoding bits");
  if (var.encoding_bits.size() > 8 || (1u << var.encoding_bits.size()) < var.radix)
    throw ContractViolation("variable " + var.id + ": radix " + std::to_string(var.radix) +
                            " does not fit " + std::to_string(var.encoding_bits.size()) +
                            " encoding bits");
  std::set<std::string> seen(var.encoding_bits.begin(), var.encoding_bits.end());
  if (seen.size() != var.encoding_bits.size())
    throw ContractViolation("variable " + var.id + ": repeated encoding bit");
}

}  // namespace mvi
