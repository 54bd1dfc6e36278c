#include "fixtures.hpp"

#include <doctest.h>

using namespace mvi;
using fx::P;
using fx::S;

namespace {

Spectrum by_butterfly(const std::vector<MviExpression>& exprs, const PolarityAssignment& pa) {
  return butterfly_spectrum(minterm_vector(exprs), pa);
}

}  // namespace

TEST_CASE("minterm vectors") {
  CHECK(minterm_vector({fx::f3_chart()}).to_string() == fx::kF3ChartMinterms);
  CHECK(minterm_vector({fx::f3_stated()}).to_string() != fx::kF3ChartMinterms);

  MviExpression zero(fx::ctx3());
  CHECK(minterm_vector({zero}).to_string() == std::string(27, '0'));

  const auto c2 = make_context({{"X1", 3, {"a", "b"}}, {"X2", 3, {"c", "d"}}});
  MviExpression m(c2);
  m.add({{0, S(3, {1})}, {1, S(3, {2})}});
  const auto mv = minterm_vector({m});
  CHECK(mv.to_string() == "000001000");
  CHECK(mv.bits[5] == 1);
}

TEST_CASE("F1 and F2 spectra") {
  for (bool butterfly : {false, true}) {
    CAPTURE(butterfly);
    auto run = [&](const MviExpression& e) {
      return butterfly ? by_butterfly({e}, fx::p12()) : fx::spectrum_of({e}, fx::p12());
    };
    CHECK(fx::coefficient_string(run(fx::f1())) == "101000101101");
    CHECK(fx::coefficient_string(run(fx::f2())) == "100000101100");
    MviExpression t(fx::ctx12());
    t.add({{0, S(4, {0})}, {1, S(3, {2})}});
    CHECK(fx::coefficient_string(run(t)) == "001000000001");
  }
}

TEST_CASE("spectrum is independent of the term grouping") {
  CHECK(fx::spectrum_of({fx::f2_regrouped()}, fx::p12()) == fx::spectrum_of({fx::f2()}, fx::p12()));
  CHECK(fx::spectrum_of({fx::f2_regrouped()}, fx::q12()) == fx::spectrum_of({fx::f2()}, fx::q12()));
}

TEST_CASE("F3 spectra") {
  const auto g = fx::f3_chart();
  for (bool butterfly : {false, true}) {
    CAPTURE(butterfly);
    auto run = [&](const PolarityAssignment& pa) {
      return butterfly ? by_butterfly({g}, pa) : fx::spectrum_of({g}, pa);
    };
    CHECK(fx::coefficients(run(fx::p3())) ==
          std::map<std::string, std::string>{{"(3,2,1)", "1"}, {"(2,1,3)", "1"}, {"(1,3,2)", "1"}});
    CHECK(fx::coefficients(run(fx::q3())) ==
          std::map<std::string, std::string>{{"(1,1,2)", "1"}, {"(2,3,1)", "1"}, {"(3,2,3)", "1"}});
  }
}

TEST_CASE("adder spectra") {
  const std::map<std::string, std::string> table_p{
      {"(1,1)", "100"}, {"(1,2)", "101"}, {"(1,4)", "110"}, {"(2,1)", "101"},
      {"(2,2)", "010"}, {"(2,3)", "100"}, {"(2,4)", "100"}, {"(3,2)", "100"},
      {"(4,1)", "110"}, {"(4,2)", "100"}, {"(4,4)", "100"}};
  // Coefficient (3,3) is zero: the derived fc expression omits Q1^3 Q2^3.
  const std::map<std::string, std::string> table_q{
      {"(1,1)", "110"}, {"(1,2)", "111"}, {"(1,3)", "100"}, {"(1,4)", "101"},
      {"(2,1)", "111"}, {"(2,2)", "010"}, {"(2,3)", "100"}, {"(2,4)", "110"},
      {"(3,1)", "100"}, {"(3,2)", "100"}, {"(3,4)", "100"}, {"(4,1)", "101"},
      {"(4,2)", "110"}, {"(4,3)", "100"}, {"(4,4)", "110"}};
  const auto a = fx::adder();
  CHECK(fx::coefficients(fx::spectrum_of(a, fx::adder_p())) == table_p);
  CHECK(fx::coefficients(by_butterfly(a, fx::adder_p())) == table_p);
  CHECK(fx::coefficients(fx::spectrum_of(a, fx::adder_q())) == table_q);
  CHECK(fx::coefficients(by_butterfly(a, fx::adder_q())) == table_q);
}

TEST_CASE("binary polarity spectrum") {
  const auto c = make_context({{"x1", 2, {"x1"}}, {"x2", 2, {"x2"}}});
  MviExpression f(c);
  f.add({fx::neg(0), fx::neg(1)});
  f.add({fx::pos(0), fx::neg(1)});
  f.add({fx::pos(0), fx::pos(1)});
  const PolarityAssignment pa{P("[11;10]"), P("[11;01]")};
  const std::map<std::string, std::string> want{{"(1,1)", "1"}, {"(2,2)", "1"}};
  CHECK(fx::coefficients(fx::spectrum_of({f}, pa)) == want);
  CHECK(fx::coefficients(by_butterfly({f}, pa)) == want);
}

TEST_CASE("identity polarity returns the minterm vector") {
  fx::Gen g(11);
  for (int i = 0; i < 20; ++i) {
    const auto ctx = g.context(1, 3, 2, 4);
    const auto e = g.expression(ctx, 5);
    PolarityAssignment id;
    for (const auto& v : ctx->variables()) id.push_back(PolarityMatrix::identity(v.radix));
    const auto sp = by_butterfly({e}, id);
    CHECK(fx::coefficient_string(sp) == minterm_vector({e}).to_string());
  }
}

TEST_CASE("constant one has a single coefficient") {
  fx::Gen g(5);
  for (int i = 0; i < 10; ++i) {
    const auto ctx = g.context(1, 3, 2, 4);
    MviExpression one(ctx);
    one.add_constant_one();
    const auto sp = fx::spectrum_of({one}, g.polarity(*ctx, true));
    CHECK(sp.nonzero_count() == 1);
    CHECK(sp.at(0) == 1);
  }
}

TEST_CASE("butterfly layer order and trace") {
  const auto mv = minterm_vector({fx::f3_chart()});
  ButterflyTrace d, a;
  const auto sd = butterfly_spectrum(mv, fx::p3(), ButterflyOrder::Descending, &d);
  const auto sa = butterfly_spectrum(mv, fx::p3(), ButterflyOrder::Ascending, &a);
  CHECK(sd == sa);
  CHECK(d.layers == 3);
  CHECK(d.layer_variable == std::vector<std::size_t>{2, 1, 0});
  CHECK(a.layer_variable == std::vector<std::size_t>{0, 1, 2});
  CHECK(d.kernels_per_layer == std::vector<std::size_t>{9, 9, 9});
}

TEST_CASE("oracle agrees on worked examples") {
  CHECK(oracle_spectrum(truth_table(fx::f1()), fx::p12()) == fx::spectrum_of({fx::f1()}, fx::p12()));
  CHECK(oracle_spectrum(truth_table(fx::adder()), fx::adder_q()) ==
        fx::spectrum_of(fx::adder(), fx::adder_q()));
  CHECK(oracle_spectrum(truth_table(fx::f4()), fx::p4()) == fx::spectrum_of({fx::f4()}, fx::p4()));
}

TEST_CASE("spectrum to expression") {
  const auto e2 = spectrum_to_expression(fx::spectrum_of({fx::f2()}, fx::p12()), 0, fx::ctx12(), "F2");
  CHECK(to_string(e2) == "1 ^ X1{2,3} ^ X1{2,3} * X2{2} ^ X1{1,2,3}");
  CHECK(truth_table(e2) == truth_table(fx::f2()));

  const auto ea = spectrum_to_expressions(fx::spectrum_of(fx::adder(), fx::adder_p()),
                                          fx::ctx_adder(), {"fc", "f0", "f1"});
  REQUIRE(ea.size() == 3);
  CHECK(to_string(ea[2]) == "X2{1,3} ^ X1{1,3}");
  CHECK(to_string(ea[1]) == "X2{0,1} ^ X1{1,3} * X2{1,3} ^ X1{0,1}");

  Spectrum zero(fx::p12(), 1);
  CHECK(spectrum_to_expression(zero, 0, fx::ctx12()).empty());
}

TEST_CASE("polarity checks") {
  const auto& ctx = *fx::ctx12();
  CHECK_NOTHROW(check_polarity(ctx, fx::p12()));
  CHECK_THROWS_AS(check_polarity(ctx, {P("[1111;0101;0011;0111]")}), ContractViolation);
  CHECK_THROWS_AS(check_polarity(ctx, {P("[1111;0101;0011;0111]"), P("[1111;0101;0011;0111]")}),
                  ContractViolation);
  const PolarityAssignment dep{P("[1111;0101;0011;0111]"), P("[110;011;101]")};
  CHECK_THROWS_AS(check_polarity(ctx, dep), Refusal);
  CHECK_NOTHROW(check_polarity(ctx, dep, true));
  CHECK_THROWS_AS(products_matching(output_terms({fx::f1()}), dep, 1), Refusal);
}

TEST_CASE("non-canonical products matching") {
  // Span of the rows is the even-size sets plus complements via the all-ones row.
  const PolarityAssignment pa{P("[1111;1100;0011;1111]"), P("[111;100;001]")};
  CHECK_FALSE(pa[0].is_canonical());
  MviExpression ok(fx::ctx12());
  ok.add({{0, S(4, {0, 1})}});
  const auto sp = products_matching(output_terms({ok}), pa, 1, {true});
  CHECK(sp.nonzero_count() == 1);
  MviExpression bad(fx::ctx12());
  bad.add({{0, S(4, {0})}});
  CHECK_THROWS_AS(products_matching(output_terms({bad}), pa, 1, {true}), UnrepresentableLiteral);
}

TEST_CASE("sparse spectra for large spaces") {
  std::vector<MviVariable> vars;
  for (int i = 0; i < 9; ++i) vars.push_back({"Y" + std::to_string(i), 4, {"y" + std::to_string(i) + "a", "y" + std::to_string(i) + "b"}});
  const auto ctx = make_context(vars);
  MviExpression e(ctx);
  e.add({{0, S(4, {1})}, {8, S(4, {2})}});
  PolarityAssignment pa(9, P("[1111;0101;0011;0111]"));
  const auto sp = products_matching(output_terms({e}), pa, 1);
  CHECK_FALSE(sp.is_dense());
  CHECK(sp.size() == (std::size_t{1} << 18));
  MviExpression back = spectrum_to_expression(sp, 0, ctx);
  std::vector<unsigned> at(9, 0);
  at[0] = 1;
  at[8] = 2;
  CHECK(eval_expression(back, at));
  at[8] = 1;
  CHECK_FALSE(eval_expression(back, at));
}
