#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gradedirac/dsl/lexer.hpp"
#include "gradedirac/exterior.hpp"
#include "gradedirac/field_theory.hpp"
#include "gradedirac/graded_manifold.hpp"
#include "gradedirac/graded_poisson.hpp"

namespace gradedirac::dsl {

// Names that may not be used for coordinates, parameters or bindings.
const std::vector<std::string>& reserved_words();

enum class ValueKind { poly, form, mv, ref };
enum class RefKind { none, section, family, subbundle, dirac, poisson, solution };

const char* to_string(ValueKind k);
const char* to_string(RefKind k);

// Result of evaluating an expression. Polynomials live on a chart too.
struct Value {
  ValueKind kind = ValueKind::poly;
  Polynomial poly;
  Form form;
  MultiVector mv;
  RefKind ref = RefKind::none;
  std::string ref_name;
  ChartPtr scalar_chart;  // chart of a polynomial value

  int degree() const;
  const ChartPtr& chart() const;
  friend bool operator==(const Value& a, const Value& b);
};

struct ChartStmt {
  std::string name;
  std::vector<std::string> coordinates;
  std::vector<std::string> parameters;
  std::vector<Rational> center;  // empty when not given
  ChartPtr chart;
};

struct FieldChartStmt {
  std::string name;
  int n = 1;
  int m = 1;
  std::vector<std::string> parameters;
  std::shared_ptr<const FieldChart> field;
};

struct BindStmt {
  ValueKind kind = ValueKind::poly;
  std::string name;
  Value value;
};

struct SectionStmt {
  std::string name;
  GradedSection section;
};

struct FamilyStmt {
  std::string name;
  std::vector<Form> forms;
};

// `subbundle` lists generators at every level; `dirac` lists level one only.
struct SubbundleStmt {
  bool dirac = false;
  std::string name;
  int k = 1;
  std::vector<GradedSection> generators;
  std::shared_ptr<const GeneratedSubbundle> bundle;
};

// All poisson declarations are normalized to top-level data.
struct PoissonStmt {
  std::string name;
  int k = 1;
  std::vector<Form> top;
  std::vector<MultiVector> images;
  std::shared_ptr<const GradedPoissonStructure> structure;
};

struct SolutionStmt {
  std::string name;
  std::string field_chart;
  CandidateSolution psi;
  std::shared_ptr<const FieldChart> field;
};

enum class ArgKind { value, list, graph, word };

struct Arg {
  ArgKind kind = ArgKind::value;
  std::string name;  // set when the source was a bare bound name
  Value value;
  std::vector<Value> list;
  std::string word;  // suite names
  friend bool operator==(const Arg& a, const Arg& b);
};

struct Directive {
  bool check = true;
  std::string verb;
  std::vector<Arg> args;
  std::string in;  // poisson structure name
  std::optional<int> bound;
  std::optional<int> expect;
  std::optional<std::vector<Rational>> at;
  std::vector<std::pair<std::string, int>> options;
  friend bool operator==(const Directive& a, const Directive& b);
};

using StatementBody = std::variant<ChartStmt, FieldChartStmt, BindStmt, SectionStmt, FamilyStmt, SubbundleStmt,
                                   PoissonStmt, SolutionStmt, Directive>;

struct Statement {
  Position pos;
  StatementBody body;
};

struct Warning {
  Position pos;
  std::string message;
};

struct Document {
  std::vector<Statement> statements;
  std::vector<Warning> warnings;

  // Structure statement declaring `name`, if any.
  const Statement* find(const std::string& name) const;
  // Field chart whose full chart is `chart`, if any.
  std::shared_ptr<const FieldChart> field_chart_for(const ChartPtr& chart) const;
};

// Statement equality ignores positions.
bool operator==(const Statement& a, const Statement& b);
bool operator==(const Document& a, const Document& b);

// Throws ParseError for syntax errors, unknown names and degree mismatches.
Document parse(std::string_view text);

}  // namespace gradedirac::dsl
