#include "fixtures.hpp"

#include <mvi/cli/dsl.hpp>

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace mvi;
using namespace mvi::cli;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(MVI_DATA_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParseError parse_error(std::string_view text) {
  try {
    parse_function_file(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no parse error");
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("data files parse to the fixture functions") {
  const auto f2 = parse_function_file(slurp("f2.mvi"));
  REQUIRE(f2.outputs.size() == 1);
  CHECK(f2.outputs[0].label() == "F2");
  CHECK(truth_table(f2.outputs[0]) == truth_table(fx::f2()));
  CHECK_FALSE(f2.polarity().has_value());

  const auto adder = parse_function_file(slurp("adder.mvi"));
  CHECK(truth_table(adder.outputs) == truth_table(fx::adder()));
  CHECK((*adder.ctx)[1].encoding_bits == std::vector<std::string>{"xc", "xd"});

  const auto g = parse_function_file(slurp("f3_chart.mvi"));
  CHECK(minterm_vector(g.outputs).to_string() == fx::kF3ChartMinterms);

  const auto pa = parse_polarity_file(slurp("f2_p.pol"), *f2.ctx);
  CHECK(pa == fx::p12());
  CHECK(parse_polarity_file(slurp("f2_q.pol"), *f2.ctx) == fx::q12());
}

TEST_CASE("inline polarity blocks") {
  const auto f = parse_function_file(
      "var X: radix 3 encode(a,b);\n"
      "polarity X = [111;100;001];\n"
      "out f = X{1} ^ 1;\n");
  REQUIRE(f.polarity().has_value());
  CHECK((*f.polarity())[0] == fx::P("[111;100;001]"));
  CHECK(eval_expression(f.outputs[0], {0}));
  CHECK_FALSE(eval_expression(f.outputs[0], {1}));
}

TEST_CASE("binary shorthand") {
  const auto f = parse_function_file(
      "var a: radix 2 encode(a);\nvar b: radix 2 encode(b);\nout g = a*!b ^ !a;\n");
  CHECK(truth_table(f.outputs[0]).outputs[0].to_string() == "1110");
}

TEST_CASE("syntax errors carry positions") {
  const auto e = parse_error("var Z: radix 2 encode(z);\nout Z0 = ;\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 10);
  CHECK(std::string(e.what()).find("expected a literal") != std::string::npos);

  CHECK(parse_error("var X: radix 4 encode(a,b)\nout f = X{1};").line() == 2);
  CHECK(parse_error("var X: radix 1 encode(a);").line() == 1);
}

TEST_CASE("semantic errors") {
  auto message = [](std::string_view t) { return std::string(parse_error(t).what()); };
  CHECK(message("var X: radix 3 encode(a,b);\nout f = Y{1};").find("Y") != std::string::npos);
  CHECK(parse_error("var X: radix 3 encode(a,b);\nout f = X{3};").line() == 2);
  CHECK(parse_error("var X: radix 3 encode(a);\nout f = X{1};").line() == 1);
  CHECK(parse_error("var X: radix 3 encode(a,b);\nout f = X{1};\nout f = X{2};").line() == 3);
  CHECK(parse_error("var X: radix 3 encode(a,b);\nvar X: radix 2 encode(c);").line() == 2);
  CHECK(parse_error("var X: radix 3 encode(a,b);\npolarity X = [11;01];").line() == 2);
  CHECK(parse_error("var X: radix 4 encode(a,b);\nout f = !X;").line() == 2);
}

TEST_CASE("polarity files must cover every variable") {
  const auto f = parse_function_file(slurp("f2.mvi"));
  CHECK_THROWS_AS(parse_polarity_file("polarity X1 = [1111;0101;0011;0111];", *f.ctx), ParseError);
  CHECK_THROWS_AS(parse_polarity_file("polarity X9 = [111;100;001];", *f.ctx), ParseError);
}

TEST_CASE("printing round trips") {
  for (const auto* name : {"f1.mvi", "f2.mvi", "f1f2.mvi", "f3.mvi", "f3_chart.mvi", "f4.mvi",
                           "adder.mvi", "adder_bits.mvi", "example1_esop.mvi", "example1_grm.mvi"}) {
    CAPTURE(name);
    const auto f = parse_function_file(slurp(name));
    const auto text = print_function_file(f);
    const auto g = parse_function_file(text);
    CHECK(print_function_file(g) == text);
    CHECK(truth_table(g.outputs) == truth_table(f.outputs));
  }
  FunctionFile ff{fx::ctx12(), {fx::f2()}, {{0, fx::p12()[0]}, {1, fx::p12()[1]}}};
  const auto back = parse_function_file(print_function_file(ff));
  CHECK(back.polarity() == fx::p12());
  CHECK(print_polarity(*fx::ctx12(), fx::p12()) ==
        "polarity X1 = [1111;0101;0011;0111];\npolarity X2 = [111;100;001];\n");
}
