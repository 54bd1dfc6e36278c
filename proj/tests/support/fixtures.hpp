#pragma once

// Worked-example functions and polarities shared by tests, acceptance and benchmarks.

#include <mvi/mvi.hpp>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace fx {

using namespace mvi;

inline TruthSet S(unsigned radix, std::initializer_list<unsigned> values) {
  return TruthSet::of(radix, values);
}

inline PolarityMatrix P(const char* text) { return PolarityMatrix::parse(text); }

// X1 quaternary on (x1a,x1b), X2 ternary on (x2a,x2b).
inline ContextPtr ctx12() {
  static const ContextPtr ctx =
      make_context({{"X1", 4, {"x1a", "x1b"}}, {"X2", 3, {"x2a", "x2b"}}});
  return ctx;
}

inline MviExpression f1() {
  MviExpression e(ctx12(), "F1");
  e.add({{0, S(4, {0, 2, 3})}, {1, S(3, {0, 1})}});
  return e;
}

inline MviExpression f2() {
  MviExpression e = f1();
  e.set_label("F2");
  e.add({{0, S(4, {0})}, {1, S(3, {2})}});
  return e;
}

/// F2 written with different term groupings.
inline MviExpression f2_regrouped() {
  MviExpression e(ctx12(), "F2");
  e.add({{0, S(4, {0})}});
  e.add({{0, S(4, {2, 3})}, {1, S(3, {0, 1})}});
  return e;
}

inline PolarityAssignment p12() { return {P("[1111;0101;0011;0111]"), P("[111;100;001]")}; }
inline PolarityAssignment q12() { return {P("[1111;1000;0110;0011]"), P("[111;110;101]")}; }

inline ContextPtr ctx3() {
  static const ContextPtr ctx = make_context({{"X3", 3, {"x3a", "x3b"}},
                                              {"X4", 3, {"x4a", "x4b"}},
                                              {"X5", 3, {"x5a", "x5b"}}});
  return ctx;
}

/// The four-term expression as written.
inline MviExpression f3_stated() {
  MviExpression e(ctx3(), "F3");
  e.add({{1, S(3, {1})}, {2, S(3, {0, 2})}});
  e.add({{0, S(3, {1, 2})}, {1, S(3, {0, 1})}, {2, S(3, {0})}});
  e.add({{1, S(3, {0, 2})}, {2, S(3, {1, 2})}});
  e.add({{0, S(3, {2})}, {1, S(3, {1})}, {2, S(3, {1})}});
  return e;
}

/// The function whose minterm vector is 011101011 111001000 100010011.
inline MviExpression f3_chart() {
  MviExpression e(ctx3(), "F3");
  e.add({{0, S(3, {1, 2})}, {1, S(3, {0, 1})}});
  e.add({{0, S(3, {0, 2})}, {2, S(3, {1, 2})}});
  e.add({{1, S(3, {1})}, {2, S(3, {0, 1})}});
  return e;
}

inline const char* kF3ChartMinterms = "011101011111001000100010011";

inline PolarityAssignment p3() {
  return {P("[111;101;011]"), P("[111;110;010]"), P("[111;110;011]")};
}
inline PolarityAssignment q3() {
  return {P("[011;101;111]"), P("[110;010;111]"), P("[011;111;110]")};
}

inline ContextPtr ctx4() {
  static const ContextPtr ctx = make_context(
      {{"X6", 4, {"xa", "xb"}}, {"X7", 4, {"xc", "xd"}}, {"X8", 4, {"xe", "xf"}}});
  return ctx;
}

inline MviExpression f4() {
  MviExpression e(ctx4(), "F4");
  e.add({{0, S(4, {3})}});
  e.add({{0, S(4, {2})}, {1, S(4, {1, 3})}});
  e.add({{1, S(4, {3})}, {2, S(4, {0, 1})}});
  e.add({{1, S(4, {0})}, {2, S(4, {0, 2})}});
  return e;
}

inline PolarityAssignment p4() {
  return {P("[1111;0010;0001;0101]"), P("[1111;1000;0001;0101]"), P("[1111;1100;1010;0111]")};
}

inline ContextPtr ctx_adder() {
  static const ContextPtr ctx =
      make_context({{"X1", 4, {"xa", "xb"}}, {"X2", 4, {"xc", "xd"}}});
  return ctx;
}

/// fc f0 f1 are the bits of X1 + X2, most significant first, built from minterms.
inline std::vector<MviExpression> adder() {
  std::vector<MviExpression> out{MviExpression(ctx_adder(), "fc"), MviExpression(ctx_adder(), "f0"),
                                 MviExpression(ctx_adder(), "f1")};
  for (unsigned a = 0; a < 4; ++a)
    for (unsigned b = 0; b < 4; ++b)
      for (unsigned o = 0; o < 3; ++o)
        if (((a + b) >> (2 - o)) & 1u) out[o].add({{0, S(4, {a})}, {1, S(4, {b})}});
  return out;
}

inline PolarityAssignment adder_p() {
  return {P("[1111;0101;0010;1100]"), P("[1111;0101;0010;1100]")};
}
inline PolarityAssignment adder_q() {
  return {P("[1111;0110;0010;1100]"), P("[1111;0110;0010;1100]")};
}

inline ContextPtr ctx_bin3() {
  static const ContextPtr ctx =
      make_context({{"x1", 2, {"x1"}}, {"x2", 2, {"x2"}}, {"x3", 2, {"x3"}}});
  return ctx;
}

inline MviLiteral pos(std::size_t v) { return {v, S(2, {1})}; }
inline MviLiteral neg(std::size_t v) { return {v, S(2, {0})}; }

/// x1 x2 x3 ^ !x1 !x2 !x3
inline MviExpression ex1_esop() {
  MviExpression e(ctx_bin3(), "f");
  e.add({pos(0), pos(1), pos(2)});
  e.add({neg(0), neg(1), neg(2)});
  return e;
}

/// x1 x2 ^ !x1 !x3 ^ x2 !x3, the same function.
inline MviExpression ex1_grm() {
  MviExpression e(ctx_bin3(), "f");
  e.add({pos(0), pos(1)});
  e.add({neg(0), neg(2)});
  e.add({pos(1), neg(2)});
  return e;
}

/// x1 x2 ^ (!x1 ^ x2) !x3
inline FactoredExpression ex1_factored() {
  using N = FactorNode;
  auto lit = [](std::size_t v, bool p) { return N::literal(v, S(2, {p ? 1u : 0u})); };
  return {ctx_bin3(), "f",
          N::xor_of({N::and_of({lit(0, true), lit(1, true)}),
                     N::and_of({N::xor_of({lit(0, false), lit(1, true)}), lit(2, false)})})};
}

inline Spectrum spectrum_of(const std::vector<MviExpression>& exprs, const PolarityAssignment& pa) {
  return products_matching(output_terms(exprs), pa, static_cast<unsigned>(exprs.size()));
}

inline std::vector<std::string> labels_of(const std::vector<MviExpression>& exprs) {
  std::vector<std::string> out;
  for (const auto& e : exprs) out.push_back(e.label());
  return out;
}

inline Circuit fprm_circuit(const std::vector<MviExpression>& exprs, const PolarityAssignment& pa,
                            const FprmOptions& opt = {}) {
  return synthesize_fprm(spectrum_of(exprs, pa), exprs.front().context(), labels_of(exprs), opt);
}

/// Nonzero coefficients as "(r1,..,rn)" -> output bits printed output 0 first.
inline std::map<std::string, std::string> coefficients(const Spectrum& sp) {
  std::map<std::string, std::string> out;
  sp.for_each_nonzero([&](std::size_t idx, std::uint64_t bits) {
    std::string key = "(";
    const auto t = sp.tuple_of(idx);
    for (std::size_t i = 0; i < t.size(); ++i) key += (i ? "," : "") + std::to_string(t[i]);
    key += ")";
    std::string val;
    for (unsigned o = 0; o < sp.num_outputs(); ++o) val += ((bits >> o) & 1u) ? '1' : '0';
    out[key] = val;
  });
  return out;
}

/// Dense coefficient string for one output in index order.
inline std::string coefficient_string(const Spectrum& sp, unsigned output = 0) {
  std::string s;
  for (std::size_t i = 0; i < sp.size(); ++i) s += ((sp.at(i) >> output) & 1u) ? '1' : '0';
  return s;
}

/// Hand-rolled generators for the randomized suites.
class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return uniform_below(rng_, n); }
  bool coin() { return below(2) == 1; }

  TruthSet nonempty_set(unsigned radix) {
    return TruthSet(radix, static_cast<std::uint32_t>(1 + below(TruthSet::full_mask(radix))));
  }

  ContextPtr context(unsigned min_vars, unsigned max_vars, unsigned min_radix,
                     unsigned max_radix) {
    const unsigned n = min_vars + static_cast<unsigned>(below(max_vars - min_vars + 1));
    std::vector<MviVariable> vars;
    for (unsigned i = 0; i < n; ++i) {
      const unsigned r = min_radix + static_cast<unsigned>(below(max_radix - min_radix + 1));
      MviVariable v{"X" + std::to_string(i + 1), r, {}};
      for (unsigned b = 0; b < bits_for_radix(r); ++b)
        v.encoding_bits.push_back("x" + std::to_string(i + 1) + static_cast<char>('a' + b));
      vars.push_back(v);
    }
    return make_context(vars);
  }

  MviExpression expression(const ContextPtr& ctx, unsigned max_terms, std::string label = "f") {
    MviExpression e(ctx, std::move(label));
    const auto terms = below(max_terms + 1);
    for (std::uint64_t t = 0; t < terms; ++t) {
      ProductTerm p(*ctx);
      for (std::size_t v = 0; v < ctx->size(); ++v)
        if (coin()) p.restrict(v, nonempty_set((*ctx)[v].radix));
      e.add(p);
    }
    return e;
  }

  PolarityMatrix polarity(unsigned radix, bool first_row_all_ones = false) {
    if (radix <= 4) {
      auto& all = cache(radix, first_row_all_ones);
      return all[below(all.size())];
    }
    // Too many to enumerate: draw full-rank row sets.
    for (;;) {
      std::vector<TruthSet> rows;
      if (first_row_all_ones) rows.push_back(TruthSet::full(radix));
      while (rows.size() < radix) rows.push_back(nonempty_set(radix));
      PolarityMatrix p(radix, rows);
      if (p.is_canonical()) return p;
    }
  }

  PolarityAssignment polarity(const VariableContext& ctx, bool first_row_all_ones = false) {
    PolarityAssignment pa;
    for (const auto& v : ctx.variables()) pa.push_back(polarity(v.radix, first_row_all_ones));
    return pa;
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::vector<PolarityMatrix>& cache(unsigned radix, bool first) {
    auto& slot = cache_[radix * 2 + (first ? 1 : 0)];
    if (slot.empty()) slot = enumerate_polarities(radix, first);
    return slot;
  }

  std::mt19937_64 rng_;
  std::map<unsigned, std::vector<PolarityMatrix>> cache_;
};

/// Splits one term of e along a random variable into two disjoint terms.
inline MviExpression split_terms(const MviExpression& e, Gen& g) {
  MviExpression out(e.context(), e.label());
  const auto& ctx = *e.context();
  for (const auto& t : e.terms()) {
    const std::size_t v = g.below(ctx.size());
    const TruthSet s = t.set(v);
    if (s.size() < 2) {
      out.add(t);
      continue;
    }
    const auto vals = s.values();
    std::uint32_t a = 0;
    for (auto x : vals)
      if (g.coin()) a |= 1u << x;
    if (a == 0 || a == s.bits()) a = 1u << vals.front();
    ProductTerm t1 = t, t2 = t;
    t1.restrict(v, TruthSet(s.radix(), a));
    t2.restrict(v, TruthSet(s.radix(), s.bits() & ~a));
    out.add(t1);
    out.add(t2);
  }
  return out;
}

}  // namespace fx
