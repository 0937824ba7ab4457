#include <gtest/gtest.h>

#include "../common/doc_generator.hpp"
#include "helpers.hpp"
#include "gradedirac/dsl/parser.hpp"
#include "gradedirac/dsl/printer.hpp"
#include "gradedirac/dsl/report.hpp"
#include "gradedirac/dsl/runner.hpp"
#include "json.hpp"

using namespace gradedirac;
using namespace gradedirac::dsl;

namespace {

const char* kFourDim = R"(chart R4 (x, y, z, t);
form a2 alpha = (dx + y*dz)^dt;
family S2 { alpha; };
check closed-sections S2 bound 3;
)";

ParseError parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseError({0, 0}, "none");
}

const BindStmt& binding(const Document& d, std::size_t i) { return std::get<BindStmt>(d.statements.at(i).body); }

}  // namespace

TEST(Lexer, TokensAndPositions) {
  auto toks = tokenize("form a2 w = 1/2*x**2 ^ dx; # comment\n@y -> z");
  ASSERT_GE(toks.size(), 10u);
  EXPECT_EQ(toks[0].text, "form");
  EXPECT_EQ(toks[9].text, "**");
  const auto at = std::find_if(toks.begin(), toks.end(), [](const Token& t) { return t.text == "@"; });
  ASSERT_NE(at, toks.end());
  EXPECT_EQ(at->pos.line, 2);
  EXPECT_EQ(at->pos.column, 1);
  EXPECT_EQ(toks.back().kind, TokenKind::end);
}

TEST(Lexer, MalformedNumber) {
  EXPECT_THROW(tokenize("poly f = 2x;"), ParseError);
  EXPECT_THROW(tokenize("poly f = x $ y;"), ParseError);
}

TEST(Parser, FourDimensionalGenerator) {
  const Document d = parse(kFourDim);
  ASSERT_EQ(d.statements.size(), 4u);
  const auto& chart = std::get<ChartStmt>(d.statements[0].body).chart;
  const Form expected = wedge(dx(chart, 0) + chart->variable("y") * dx(chart, 2), dx(chart, 3));
  EXPECT_EQ(binding(d, 1).value.form, expected);
  EXPECT_EQ(std::get<FamilyStmt>(d.statements[2].body).forms, std::vector<Form>{expected});
}

TEST(Parser, RepeatedVectorGivesZeroWithWarning) {
  const Document d = parse("chart R2 (x, y);\nmv v = @x^@x;\n");
  EXPECT_TRUE(binding(d, 1).value.mv.is_zero());
  EXPECT_EQ(binding(d, 1).value.mv.degree(), 2);
  ASSERT_EQ(d.warnings.size(), 1u);
  EXPECT_EQ(d.warnings[0].pos.line, 2);
}

TEST(Parser, InteriorAndDerivativeFunctions) {
  const Document d = parse("chart R3 (x, y, z);\nform a1 w = i(@x, dx^dy);\nform b = d(x*y);\nmv u = 1/2*@z;\n");
  const auto& c = std::get<ChartStmt>(d.statements[0].body).chart;
  EXPECT_EQ(binding(d, 1).value.form, dx(c, 1));
  EXPECT_EQ(binding(d, 2).value.form, c->variable("y") * dx(c, 0) + c->variable("x") * dx(c, 1));
  EXPECT_EQ(binding(d, 3).value.mv, Rational(1, 2) * partial(c, 2));
}

TEST(Parser, WedgeBindsTighterThanPlus) {
  // dx + dy^dz would be (dx + dy)^dz if + bound tighter
  EXPECT_THROW(parse("chart R3 (x, y, z);\nform w = dx + dy^dz;\n"), ParseError);
  const Document d = parse("chart R3 (x, y, z);\nform w = (dx + dy)^dz;\nform v = dx^dz + dy^dz;\n");
  EXPECT_EQ(binding(d, 1).value.form, binding(d, 2).value.form);
}

TEST(Parser, SyntaxErrorCarriesPositionAndExpected) {
  const ParseError e = parse_error("chart R2 (x, y);\nform a1 w = x*dy +;\n");
  EXPECT_EQ(e.position().line, 2);
  EXPECT_EQ(e.position().column, 19);
  EXPECT_FALSE(e.expected().empty());
}

TEST(Parser, UnknownIdentifier) {
  const ParseError e = parse_error("chart R2 (x, y);\nform w = q*dx;\n");
  EXPECT_EQ(e.position().line, 2);
  EXPECT_NE(std::string(e.what()).find("q"), std::string::npos);
}

TEST(Parser, DegreeMismatches) {
  EXPECT_EQ(parse_error("chart R2 (x, y);\nform a2 w = dx;\n").position().line, 2);
  EXPECT_THROW(parse("chart R2 (x, y);\nform w = dx + dx^dy;\n"), ParseError);
  EXPECT_THROW(parse("chart R2 (x, y);\nsection s = (@x, dx^dy);\ndirac D k=1 { (@x, dx^dy); };\n"), ParseError);
  EXPECT_THROW(parse("chart R2 (x, y);\nfamily F { dx; dx^dy; };\n"), ParseError);
}

TEST(Parser, NamesMustBeDeclaredAndNotReserved) {
  EXPECT_THROW(parse("chart R2 (x, y);\ncheck closed w;\n"), ParseError);
  EXPECT_THROW(parse("chart R2 (x, d);\n"), ParseError);
  EXPECT_THROW(parse("chart R2 (x, y);\nform vol = dx;\n"), ParseError);
  EXPECT_THROW(parse("form w = dx;\n"), ParseError);
}

TEST(Parser, DirectiveArgumentKinds) {
  const std::string head = "chart R2 (x, y);\npoisson P = omega(dx^dy);\n";
  EXPECT_NO_THROW(parse(head + "compute bracket x, y in P;\n"));
  EXPECT_THROW(parse(head + "compute bracket x, y;\n"), ParseError);
  EXPECT_THROW(parse(head + "check closed P;\n"), ParseError);
  EXPECT_THROW(parse(head + "check frobnicate x;\n"), ParseError);
}

TEST(Parser, FieldChartBindsCanonicalForm) {
  const Document d = parse("fieldchart F n=2 m=1;\nform w = Omega;\npoly H = p1_1**2/2 + y1;\n");
  const auto& fc = *std::get<FieldChartStmt>(d.statements[0].body).field;
  EXPECT_EQ(binding(d, 1).value.form, canonical_omega(fc));
}

TEST(Printer, CanonicalFormOfFourDimensionalExample) {
  EXPECT_EQ(print(parse(kFourDim)),
            "chart R4 (x, y, z, t);\n"
            "form a2 alpha = dx^dt + y*dz^dt;\n"
            "family S2 {\n"
            "  dx^dt + y*dz^dt;\n"
            "};\n"
            "check closed-sections S2 bound 3;\n");
}

TEST(Printer, RoundTripOnGeneratedDocuments) {
  int parsed = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::string text = gradedirac::testing::DocumentGenerator(seed).generate();
    Document d;
    try {
      d = parse(text);
    } catch (const ParseError& e) {
      FAIL() << "generated document does not parse: " << e.what() << "\n" << text;
    }
    ++parsed;
    const std::string printed = print(d);
    const Document again = parse(printed);
    ASSERT_TRUE(again == d) << text << "\n---\n" << printed;
    ASSERT_EQ(print(again), printed);
  }
  EXPECT_EQ(parsed, 200);
}

TEST(Runner, FourDimensionalExampleHasOnlyZeroSection) {
  const Report r = run(parse(kFourDim), {});
  ASSERT_EQ(r.directives.size(), 1u);
  EXPECT_EQ(r.directives[0].status, Status::pass);
  EXPECT_EQ(exit_code(r), 0);
  bool zero = false;
  for (const auto& [k, v] : r.directives[0].witnesses) zero = zero || (k == "dimension" && v == "0");
  EXPECT_TRUE(zero);
}

TEST(Runner, NonClosedGraphFailsWithWitness) {
  const Report r = run(parse("chart R3 (x, y, z);\nform a2 w = y*dx^dz;\ncheck involutive graph(w);\n"), {});
  ASSERT_EQ(r.directives.size(), 1u);
  EXPECT_EQ(r.directives[0].status, Status::fail);
  EXPECT_EQ(exit_code(r), 1);
  bool has_pair = false;
  for (const auto& [k, v] : r.directives[0].witnesses) has_pair = has_pair || k == "U";
  EXPECT_TRUE(has_pair);
}

TEST(Runner, RuntimeErrorsArePositioned) {
  const Report r = run(parse("chart R2 (x, y);\ndirac D k=1 { (@x, dx); };\ncompute reconstruct D;\n"), {});
  ASSERT_EQ(r.directives.size(), 1u);
  EXPECT_EQ(r.directives[0].status, Status::fail);
  EXPECT_NE(r.directives[0].message.find("3:1"), std::string::npos);
}

TEST(Runner, ComputeOnlySkipsChecks) {
  RunOptions o;
  o.compute_only = true;
  const Report r = run(parse("chart R2 (x, y);\ncheck closed x*dy;\ncompute d x*dy;\n"), o);
  ASSERT_EQ(r.directives.size(), 1u);
  EXPECT_EQ(r.directives[0].witnesses.at(0).second, "dx^dy");
}

TEST(Runner, ExitCodes) {
  EXPECT_EQ(exit_code(run(parse("chart R2 (x, y);\ncheck closed dx;\n"), {})), 0);
  EXPECT_EQ(exit_code(run(parse("chart R2 (x, y);\ncheck closed x*dy;\n"), {})), 1);
}

TEST(Report, StructuredOutputMirrorsReport) {
  RunOptions o;
  o.source = "four.gdl";
  const Report r = run(parse(kFourDim), o);
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j["source"], "four.gdl");
  EXPECT_EQ(j["status"], "pass");
  ASSERT_EQ(j["directives"].size(), 1u);
  EXPECT_EQ(j["directives"][0]["line"], 4);
  EXPECT_FALSE(j["directives"][0].contains("timing_ms"));
  o.timing = true;
  EXPECT_TRUE(nlohmann::json::parse(to_json(run(parse(kFourDim), o)))["directives"][0].contains("timing_ms"));
}

TEST(Report, ByteStableAcrossRuns) {
  const std::string text = std::string(kFourDim) +
                           "chart R2 (x, y);\npoisson P = omega(dx^dy);\ncheck poisson-properties P;\n";
  RunOptions o;
  o.seed = 5;
  o.cases = 10;
  const Document d = parse(text);
  EXPECT_EQ(to_json(run(d, o)), to_json(run(parse(text), o)));
  EXPECT_EQ(to_text(run(d, o)), to_text(run(d, o)));
}

TEST(Report, ParseErrorJson) {
  const ParseError e = parse_error("chart R2 (x, y);\nform a1 w = x*dy +;\n");
  const auto j = nlohmann::json::parse(parse_error_json("bad.gdl", e));
  EXPECT_EQ(j["line"], 2);
}
