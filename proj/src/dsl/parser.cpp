#include "gradedirac/dsl/parser.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace gradedirac::dsl {

const std::vector<std::string>& reserved_words() {
  static const std::vector<std::string> words = {
      "d",        "i",       "sn",       "lie",        "h",     "vol",     "graph",   "omega",   "foliation",
      "leaf",     "in",      "bound",    "expect",     "at",    "params",  "center",  "chart",   "fieldchart",
      "poly",     "form",    "mv",       "section",    "family", "subbundle", "dirac", "poisson", "solution",
      "check",    "compute"};
  return words;
}

const char* to_string(ValueKind k) {
  switch (k) {
    case ValueKind::poly: return "polynomial";
    case ValueKind::form: return "form";
    case ValueKind::mv: return "multivector";
    case ValueKind::ref: return "declaration";
  }
  return "?";
}

const char* to_string(RefKind k) {
  switch (k) {
    case RefKind::none: return "value";
    case RefKind::section: return "section";
    case RefKind::family: return "family";
    case RefKind::subbundle: return "subbundle";
    case RefKind::dirac: return "dirac structure";
    case RefKind::poisson: return "poisson structure";
    case RefKind::solution: return "solution";
  }
  return "?";
}

int Value::degree() const {
  switch (kind) {
    case ValueKind::form: return form.degree();
    case ValueKind::mv: return mv.degree();
    default: return 0;
  }
}

const ChartPtr& Value::chart() const {
  static const ChartPtr none;
  switch (kind) {
    case ValueKind::form: return form.chart();
    case ValueKind::mv: return mv.chart();
    case ValueKind::poly: return scalar_chart;
    default: return none;
  }
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ValueKind::poly: return a.poly == b.poly;
    case ValueKind::form: return a.form == b.form;
    case ValueKind::mv: return a.mv == b.mv;
    case ValueKind::ref: return a.ref == b.ref && a.ref_name == b.ref_name;
  }
  return false;
}

bool operator==(const Arg& a, const Arg& b) {
  return a.kind == b.kind && a.name == b.name && a.value == b.value && a.list == b.list && a.word == b.word;
}

bool operator==(const Directive& a, const Directive& b) {
  return a.check == b.check && a.verb == b.verb && a.args == b.args && a.in == b.in && a.bound == b.bound &&
         a.expect == b.expect && a.at == b.at && a.options == b.options;
}

namespace {

bool same_solution(const CandidateSolution& a, const CandidateSolution& b) { return a.y == b.y && a.pm == b.pm; }

struct BodyEqual {
  bool operator()(const ChartStmt& a, const ChartStmt& b) const {
    return a.name == b.name && a.coordinates == b.coordinates && a.parameters == b.parameters && a.center == b.center;
  }
  bool operator()(const FieldChartStmt& a, const FieldChartStmt& b) const {
    return a.name == b.name && a.n == b.n && a.m == b.m && a.parameters == b.parameters;
  }
  bool operator()(const BindStmt& a, const BindStmt& b) const {
    return a.kind == b.kind && a.name == b.name && a.value == b.value;
  }
  bool operator()(const SectionStmt& a, const SectionStmt& b) const {
    return a.name == b.name && a.section == b.section;
  }
  bool operator()(const FamilyStmt& a, const FamilyStmt& b) const { return a.name == b.name && a.forms == b.forms; }
  bool operator()(const SubbundleStmt& a, const SubbundleStmt& b) const {
    return a.dirac == b.dirac && a.name == b.name && a.k == b.k && a.generators == b.generators;
  }
  bool operator()(const PoissonStmt& a, const PoissonStmt& b) const {
    return a.name == b.name && a.k == b.k && a.top == b.top && a.images == b.images;
  }
  bool operator()(const SolutionStmt& a, const SolutionStmt& b) const {
    return a.name == b.name && a.field_chart == b.field_chart && same_solution(a.psi, b.psi);
  }
  bool operator()(const Directive& a, const Directive& b) const { return a == b; }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool operator==(const Statement& a, const Statement& b) { return std::visit(BodyEqual{}, a.body, b.body); }

bool operator==(const Document& a, const Document& b) { return a.statements == b.statements; }

const Statement* Document::find(const std::string& name) const {
  const Statement* found = nullptr;
  for (const auto& s : statements) {
    const std::string* n = std::visit(
        [](const auto& b) -> const std::string* {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, Directive>) {
            return nullptr;
          } else {
            return &b.name;
          }
        },
        s.body);
    if (n && *n == name) found = &s;
  }
  return found;
}

std::shared_ptr<const FieldChart> Document::field_chart_for(const ChartPtr& chart) const {
  std::shared_ptr<const FieldChart> found;
  for (const auto& s : statements) {
    if (const auto* f = std::get_if<FieldChartStmt>(&s.body)) {
      if (same_chart(f->field->full(), chart)) found = f->field;
    }
  }
  return found;
}

namespace {

bool is_reserved(const std::string& s) {
  const auto& w = reserved_words();
  return std::find(w.begin(), w.end(), s) != w.end();
}

struct Binding {
  ValueKind kind = ValueKind::poly;  // ref for declarations
  Value value;
  ChartPtr chart;
};

// Verb signatures.
enum class Slot { form, form_or_poly, mv, any, poly, poly_or_form, section, family_or_list, bundle, bundle_or_graph,
                  poisson, solution };

struct VerbSpec {
  std::vector<Slot> slots;
  bool needs_in = false;
  bool allows_bound = false;
  bool allows_expect = false;
  bool needs_at = false;
  std::vector<std::string> options = {};
};

const std::map<std::string, VerbSpec>& check_verbs() {
  static const std::map<std::string, VerbSpec> v = {
      {"closed", {.slots = {Slot::form}}},
      {"exact", {.slots = {Slot::form}}},
      {"equal", {.slots = {Slot::any, Slot::any}}},
      {"hamiltonian", {.slots = {Slot::form_or_poly}, .needs_in = true}},
      {"weak-lagrangian", {.slots = {Slot::bundle}}},
      {"involutive", {.slots = {Slot::bundle_or_graph}, .options = {"degree"}}},
      {"nondegenerate", {.slots = {Slot::poisson}}},
      {"poisson-properties", {.slots = {Slot::poisson}, .options = {"degree"}}},
      {"closed-sections", {.slots = {Slot::family_or_list}, .allows_bound = true, .allows_expect = true}},
      {"antirep", {.slots = {Slot::form_or_poly, Slot::form_or_poly, Slot::form}}},
      {"hdw", {.slots = {Slot::solution, Slot::poly}}},
      {"conservation", {.slots = {Slot::solution, Slot::form_or_poly, Slot::poly}}},
  };
  return v;
}

const std::map<std::string, VerbSpec>& compute_verbs() {
  static const std::map<std::string, VerbSpec> v = {
      {"d", {.slots = {Slot::form_or_poly}}},
      {"sn", {.slots = {Slot::mv, Slot::mv}}},
      {"lie", {.slots = {Slot::mv, Slot::form_or_poly}}},
      {"pairing", {.slots = {Slot::section, Slot::section}}},
      {"courant", {.slots = {Slot::section, Slot::section}}},
      {"bracket", {.slots = {Slot::form_or_poly, Slot::form_or_poly}, .needs_in = true}},
      {"extend", {.slots = {Slot::poisson}}},
      {"reconstruct", {.slots = {Slot::bundle}}},
      {"closed-sections", {.slots = {Slot::family_or_list}, .allows_bound = true}},
      {"value", {.slots = {Slot::any}, .needs_at = true}},
      {"primitive", {.slots = {Slot::form}}},
      {"current", {.slots = {Slot::form_or_poly, Slot::poly_or_form}}},
      {"field", {.slots = {Slot::form_or_poly}}},
      {"leaf", {.slots = {Slot::poisson}, .needs_at = true}},
      {"sharp", {.slots = {Slot::form}, .needs_in = true}},
  };
  return v;
}

const char* describe(Slot s) {
  switch (s) {
    case Slot::form: return "a form";
    case Slot::form_or_poly: return "a form or polynomial";
    case Slot::mv: return "a multivector";
    case Slot::any: return "an expression";
    case Slot::poly: return "a polynomial";
    case Slot::poly_or_form: return "a polynomial or form";
    case Slot::section: return "a section";
    case Slot::family_or_list: return "a family or [form list]";
    case Slot::bundle: return "a subbundle or dirac structure";
    case Slot::bundle_or_graph: return "a subbundle, dirac structure or graph(form)";
    case Slot::poisson: return "a poisson structure";
    case Slot::solution: return "a solution";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Document run() {
    while (peek().kind != TokenKind::end) statement();
    return std::move(doc_);
  }

 private:
  // ------------------------------------------------------------ tokens
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_symbol(const std::string& s, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::symbol && peek(ahead).text == s;
  }
  bool is_word(const std::string& s, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::identifier && peek(ahead).text == s;
  }
  bool accept(const std::string& s) {
    if (is_symbol(s)) {
      next();
      return true;
    }
    return false;
  }
  static std::string show(const Token& t) {
    if (t.kind == TokenKind::end) return "end of input";
    return "'" + t.text + "'";
  }
  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    throw ParseError(peek().pos, "unexpected " + show(peek()), std::move(expected));
  }
  const Token& expect(const std::string& s) {
    if (!is_symbol(s)) unexpected({"'" + s + "'"});
    return next();
  }
  void expect_word(const std::string& s) {
    if (!is_word(s)) unexpected({"'" + s + "'"});
    next();
  }
  const Token& expect_ident(const std::string& what) {
    if (peek().kind != TokenKind::identifier) unexpected({what});
    return next();
  }
  // A fresh name for a declaration.
  std::string declare_name(const std::string& what) {
    const Token& t = expect_ident(what);
    if (is_reserved(t.text)) throw ParseError(t.pos, "'" + t.text + "' is a reserved word");
    return t.text;
  }
  int expect_int(const std::string& what) {
    if (peek().kind != TokenKind::integer) unexpected({what});
    const Token& t = next();
    try {
      return std::stoi(t.text);
    } catch (const std::exception&) {
      throw ParseError(t.pos, "integer out of range");
    }
  }
  Rational parse_rational() {
    const Position at = peek().pos;
    bool neg = accept("-");
    if (peek().kind != TokenKind::integer) unexpected({"number"});
    Rational q(next().text);
    if (accept("/")) {
      if (peek().kind != TokenKind::integer) unexpected({"number"});
      Rational d(next().text);
      if (d == 0) throw ParseError(at, "division by zero");
      q /= d;
    }
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  std::vector<Rational> rational_tuple() {
    expect("(");
    std::vector<Rational> out;
    if (!is_symbol(")")) {
      out.push_back(parse_rational());
      while (accept(",")) out.push_back(parse_rational());
    }
    expect(")");
    return out;
  }
  std::vector<std::string> name_tuple(const std::string& what) {
    expect("(");
    std::vector<std::string> out;
    if (!is_symbol(")")) {
      out.push_back(declare_name(what));
      while (accept(",")) out.push_back(declare_name(what));
    }
    expect(")");
    return out;
  }
  // key=INT
  int keyed_int(const std::string& key) {
    expect_word(key);
    expect("=");
    return expect_int("integer");
  }

  // ------------------------------------------------------------ context
  const ChartPtr& chart_at(const Position& p) const {
    if (!chart_) throw ParseError(p, "no chart declared");
    return chart_;
  }
  void bind(const std::string& name, Binding b) {
    b.chart = chart_;
    scope_[name] = std::move(b);
  }
  void add(const Position& p, StatementBody body) { doc_.statements.push_back({p, std::move(body)}); }
  void warn(const Position& p, std::string msg) { doc_.warnings.push_back({p, std::move(msg)}); }

  template <class F>
  auto guarded(const Position& p, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(p, e.what());
    }
  }

  // ------------------------------------------------------------ values
  Value poly_value(Polynomial p) const {
    Value v;
    v.kind = ValueKind::poly;
    v.poly = std::move(p);
    v.scalar_chart = chart_;
    return v;
  }
  static Value normalize(Value v) {
    if (v.kind == ValueKind::form && v.form.degree() == 0) {
      Value r;
      r.kind = ValueKind::poly;
      r.poly = v.form.coefficient({});
      r.scalar_chart = v.form.chart();
      if (r.poly.nvars() == 0 && v.form.chart()) r.poly = v.form.chart()->zero();
      return r;
    }
    if (v.kind == ValueKind::mv && v.mv.degree() == 0) {
      Value r;
      r.kind = ValueKind::poly;
      r.poly = v.mv.coefficient({});
      r.scalar_chart = v.mv.chart();
      if (r.poly.nvars() == 0 && v.mv.chart()) r.poly = v.mv.chart()->zero();
      return r;
    }
    return v;
  }
  Value form_value(Form f) const {
    Value v;
    v.kind = ValueKind::form;
    v.form = std::move(f);
    return normalize(v);
  }
  Value mv_value(MultiVector m) const {
    Value v;
    v.kind = ValueKind::mv;
    v.mv = std::move(m);
    return normalize(v);
  }
  Form as_form(const Value& v, const Position& p) const {
    if (v.kind == ValueKind::form) return v.form;
    if (v.kind == ValueKind::poly) return Form::scalar(chart_at(p), v.poly);
    throw ParseError(p, std::string("expected a form, found a ") + describe_value(v));
  }
  MultiVector as_mv(const Value& v, const Position& p) const {
    if (v.kind == ValueKind::mv) return v.mv;
    throw ParseError(p, std::string("expected a multivector, found a ") + describe_value(v));
  }
  static std::string describe_value(const Value& v) {
    if (v.kind == ValueKind::ref) return to_string(v.ref);
    std::string s = to_string(v.kind);
    if (v.kind != ValueKind::poly) s += " of degree " + std::to_string(v.degree());
    return s;
  }
  void require_value(const Value& v, const Position& p) const {
    if (v.kind == ValueKind::ref) {
      throw ParseError(p, "'" + v.ref_name + "' is a " + to_string(v.ref) + ", not a value");
    }
  }

  Value add_values(Value a, const Value& b, bool subtract, const Position& p) const {
    require_value(a, p);
    require_value(b, p);
    if (a.kind == ValueKind::poly && b.kind == ValueKind::poly) {
      return poly_value(subtract ? a.poly - b.poly : a.poly + b.poly);
    }
    if (a.kind != b.kind || a.degree() != b.degree()) {
      throw ParseError(p, "degree mismatch: cannot add a " + describe_value(a) + " and a " + describe_value(b));
    }
    if (a.kind == ValueKind::form) return form_value(subtract ? a.form - b.form : a.form + b.form);
    return mv_value(subtract ? a.mv - b.mv : a.mv + b.mv);
  }
  Value scale(const Value& x, const Polynomial& f) const {
    switch (x.kind) {
      case ValueKind::poly: return poly_value(x.poly * f);
      case ValueKind::form: return form_value(f * x.form);
      case ValueKind::mv: return mv_value(f * x.mv);
      default: return x;
    }
  }
  Value multiply(const Value& a, const Value& b, const Position& p) const {
    require_value(a, p);
    require_value(b, p);
    if (a.kind == ValueKind::poly) return scale(b, a.poly);
    if (b.kind == ValueKind::poly) return scale(a, b.poly);
    throw ParseError(p, "'*' needs a polynomial factor; use '^' for the wedge product");
  }
  Value divide(const Value& a, const Value& b, const Position& p) const {
    require_value(a, p);
    require_value(b, p);
    if (b.kind != ValueKind::poly || !b.poly.is_constant()) throw ParseError(p, "division only by a number");
    const Rational c = b.poly.constant_term();
    if (c == 0) throw ParseError(p, "division by zero");
    return scale(a, chart_at(p)->constant(Rational(1) / c));
  }
  Value wedge_values(const Value& a, const Value& b, const Position& p) const {
    require_value(a, p);
    require_value(b, p);
    if (a.kind == ValueKind::poly || b.kind == ValueKind::poly) return multiply(a, b, p);
    if (a.kind == ValueKind::form && b.kind == ValueKind::form) return form_value(wedge(a.form, b.form));
    if (a.kind == ValueKind::mv && b.kind == ValueKind::mv) return mv_value(wedge(a.mv, b.mv));
    throw ParseError(p, "cannot wedge a " + describe_value(a) + " with a " + describe_value(b));
  }
  Value negate(const Value& a, const Position& p) const {
    require_value(a, p);
    return scale(a, chart_at(p)->constant(-1));
  }

  // ------------------------------------------------------------ expressions
  Value expression() {
    Value v = term();
    while (is_symbol("+") || is_symbol("-")) {
      const Token& op = next();
      Value r = term();
      v = add_values(v, r, op.text == "-", op.pos);
    }
    return v;
  }
  Value term() {
    Value v = wedge_expr();
    while (is_symbol("*") || is_symbol("/")) {
      const Token& op = next();
      Value r = wedge_expr();
      v = op.text == "*" ? multiply(v, r, op.pos) : divide(v, r, op.pos);
    }
    return v;
  }
  Value wedge_expr() {
    Value v = unary();
    while (is_symbol("^")) {
      const Token& op = next();
      Value r = unary();
      v = wedge_values(v, r, op.pos);
    }
    return v;
  }
  Value unary() {
    if (is_symbol("-")) {
      const Token& op = next();
      return negate(unary(), op.pos);
    }
    return power();
  }
  Value power() {
    Value v = primary();
    if (is_symbol("**")) {
      const Token& op = next();
      const int e = expect_int("exponent");
      require_value(v, op.pos);
      if (v.kind != ValueKind::poly) throw ParseError(op.pos, "'**' applies to polynomials only");
      v = poly_value(v.poly.pow(static_cast<unsigned>(e)));
    }
    return v;
  }

  std::vector<std::pair<Value, Position>> call_args() {
    expect("(");
    std::vector<std::pair<Value, Position>> out;
    if (!is_symbol(")")) {
      do {
        const Position p = peek().pos;
        out.emplace_back(expression(), p);
      } while (accept(","));
    }
    expect(")");
    return out;
  }

  Value call(const Token& fn) {
    const Position at = fn.pos;
    auto args = call_args();
    auto arity = [&](std::size_t n) {
      if (args.size() != n) {
        throw ParseError(at, fn.text + "() takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
      }
    };
    const ChartPtr& chart = chart_at(at);
    return guarded(at, [&]() -> Value {
      if (fn.text == "d") {
        arity(1);
        return form_value(exterior_derivative(as_form(args[0].first, args[0].second)));
      }
      if (fn.text == "i") {
        arity(2);
        MultiVector u = as_mv(args[0].first, args[0].second);
        Form a = as_form(args[1].first, args[1].second);
        if (u.degree() > a.degree()) {
          throw ParseError(at, "degree mismatch: cannot contract a multivector of degree " + std::to_string(u.degree()) +
                                   " into a form of degree " + std::to_string(a.degree()));
        }
        return form_value(interior(u, a));
      }
      if (fn.text == "sn") {
        arity(2);
        MultiVector u = as_mv(args[0].first, args[0].second), v = as_mv(args[1].first, args[1].second);
        return mv_value(schouten_nijenhuis(u, v));
      }
      if (fn.text == "lie") {
        arity(2);
        MultiVector u = as_mv(args[0].first, args[0].second);
        Form a = as_form(args[1].first, args[1].second);
        if (u.degree() > a.degree() + 1) throw ParseError(at, "degree mismatch in lie()");
        return form_value(lie_derivative(u, a));
      }
      if (fn.text == "h") {
        arity(1);
        Form a = as_form(args[0].first, args[0].second);
        if (a.degree() < 1) throw ParseError(args[0].second, "h() needs a form of degree >= 1");
        return form_value(poincare_homotopy(a));
      }
      // vol() and vol(j)
      if (args.size() > 1) throw ParseError(at, "vol() takes at most one argument");
      std::vector<int> idx;
      if (field_ && same_chart(field_->full(), chart)) {
        for (int mu = 0; mu < field_->n(); ++mu) idx.push_back(mu);
      } else {
        for (int j = 0; j < static_cast<int>(chart->dim()); ++j) idx.push_back(j);
      }
      Form v = volume_form(chart, idx);
      if (args.empty()) return form_value(v);
      const Value& a = args[0].first;
      if (a.kind != ValueKind::poly || !a.poly.is_constant() || a.poly.constant_term().get_den() != 1) {
        throw ParseError(args[0].second, "vol() index must be an integer");
      }
      const long j = a.poly.constant_term().get_num().get_si();
      if (j < 1 || j > static_cast<long>(idx.size())) throw ParseError(args[0].second, "vol() index out of range");
      return form_value(interior(partial(chart, idx[static_cast<std::size_t>(j - 1)]), v));
    });
  }

  Value identifier(const Token& t) {
    auto it = scope_.find(t.text);
    if (it != scope_.end()) {
      const Value& v = it->second.value;
      if (v.kind != ValueKind::ref && !same_chart(it->second.chart, chart_at(t.pos))) {
        throw ParseError(t.pos, "'" + t.text + "' belongs to a different chart");
      }
      return v;
    }
    const ChartPtr& chart = chart_at(t.pos);
    if (auto idx = chart->index_of(t.text)) return poly_value(chart->variable(*idx));
    if (t.text.size() > 1 && t.text[0] == 'd') {
      if (auto idx = chart->index_of(t.text.substr(1)); idx && *idx < chart->dim()) {
        return form_value(dx(chart, static_cast<int>(*idx)));
      }
    }
    throw ParseError(t.pos, "unknown identifier '" + t.text + "'");
  }

  Value primary() {
    const Token& t = peek();
    if (t.kind == TokenKind::integer) {
      next();
      return poly_value(chart_at(t.pos)->constant(Rational(t.text)));
    }
    if (t.kind == TokenKind::symbol && t.text == "(") {
      next();
      Value v = expression();
      expect(")");
      return v;
    }
    if (t.kind == TokenKind::symbol && t.text == "@") {
      next();
      const Token& name = expect_ident("coordinate");
      const ChartPtr& chart = chart_at(name.pos);
      auto idx = chart->index_of(name.text);
      if (!idx || *idx >= chart->dim()) throw ParseError(name.pos, "'" + name.text + "' is not a coordinate");
      return mv_value(partial(chart, static_cast<int>(*idx)));
    }
    if (t.kind == TokenKind::identifier) {
      next();
      static const std::set<std::string> functions = {"d", "i", "sn", "lie", "h", "vol"};
      if (functions.count(t.text)) {
        if (!is_symbol("(")) unexpected({"'('"});
        return call(t);
      }
      if (is_reserved(t.text)) throw ParseError(t.pos, "unexpected keyword '" + t.text + "'");
      return identifier(t);
    }
    unexpected({"number", "identifier", "'('", "'@'"});
  }

  // Expression that must not be a declaration reference.
  Value value_expression() {
    const Position p = peek().pos;
    Value v = expression();
    require_value(v, p);
    return v;
  }

  // ------------------------------------------------------------ statements
  void statement() {
    const Token& kw = peek();
    if (kw.kind != TokenKind::identifier) unexpected(statement_keywords());
    const Position at = kw.pos;
    const std::string k = kw.text;
    if (k == "chart") return chart_statement(at);
    if (k == "fieldchart") return fieldchart_statement(at);
    if (k == "poly" || k == "form" || k == "mv") return bind_statement(at);
    if (k == "section") return section_statement(at);
    if (k == "family") return family_statement(at);
    if (k == "subbundle" || k == "dirac") return subbundle_statement(at);
    if (k == "poisson") return poisson_statement(at);
    if (k == "solution") return solution_statement(at);
    if (k == "check" || k == "compute") return directive(at);
    unexpected(statement_keywords());
  }
  static std::vector<std::string> statement_keywords() {
    return {"'chart'", "'fieldchart'", "'poly'", "'form'", "'mv'", "'section'", "'family'", "'subbundle'",
            "'dirac'", "'poisson'", "'solution'", "'check'", "'compute'"};
  }

  void chart_statement(const Position& at) {
    next();
    ChartStmt s;
    s.name = declare_name("chart name");
    const Position cpos = peek().pos;
    s.coordinates = name_tuple("coordinate");
    if (s.coordinates.empty()) throw ParseError(cpos, "a chart needs at least one coordinate");
    if (is_word("params")) {
      next();
      s.parameters = name_tuple("parameter");
    }
    if (is_word("center")) {
      const Position p = next().pos;
      s.center = rational_tuple();
      if (s.center.size() != s.coordinates.size()) throw ParseError(p, "center has the wrong dimension");
    }
    expect(";");
    s.chart = guarded(cpos, [&] { return make_chart(s.coordinates, s.center, s.parameters); });
    chart_ = s.chart;
    field_.reset();
    add(at, std::move(s));
  }

  void fieldchart_statement(const Position& at) {
    next();
    FieldChartStmt s;
    s.name = declare_name("chart name");
    const Position p = peek().pos;
    s.n = keyed_int("n");
    s.m = keyed_int("m");
    if (is_word("params")) {
      next();
      s.parameters = name_tuple("parameter");
    }
    expect(";");
    if (s.n < 1 || s.m < 1) throw ParseError(p, "n and m must be at least 1");
    s.field = guarded(p, [&] { return std::make_shared<const FieldChart>(s.n, s.m, s.parameters); });
    chart_ = s.field->full();
    field_ = s.field;
    field_name_ = s.name;
    Binding b;
    b.kind = ValueKind::form;
    b.value = form_value(canonical_omega(*s.field));
    bind("Omega", b);
    add(at, std::move(s));
  }

  void bind_statement(const Position& at) {
    const std::string kw = next().text;
    std::optional<int> annotated;
    std::string name;
    if (kw != "poly" && peek().kind == TokenKind::identifier && peek(1).kind == TokenKind::identifier) {
      const Token& a = next();
      const char prefix = kw == "form" ? 'a' : 'p';
      if (a.text.size() < 2 || a.text[0] != prefix ||
          !std::all_of(a.text.begin() + 1, a.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw ParseError(a.pos, std::string("expected a degree annotation like '") + prefix + "2'");
      }
      annotated = std::stoi(a.text.substr(1));
    }
    name = declare_name("name");
    expect("=");
    const Position vpos = peek().pos;
    Value v = value_expression();
    expect(";");
    BindStmt s;
    s.name = name;
    if (kw == "poly") {
      if (v.kind != ValueKind::poly) throw ParseError(vpos, "expected a polynomial, found a " + describe_value(v));
      s.kind = ValueKind::poly;
      if (v.poly.is_zero()) warn(vpos, "'" + name + "' is identically zero");
    } else if (kw == "form") {
      s.kind = ValueKind::form;
      v.form = as_form(v, vpos);
      v.kind = ValueKind::form;
      if (annotated && *annotated != v.form.degree()) {
        throw ParseError(vpos, "degree mismatch: declared " + std::to_string(*annotated) + ", expression has degree " +
                                   std::to_string(v.form.degree()));
      }
      if (v.form.is_zero()) warn(vpos, "'" + name + "' is identically zero");
    } else {
      s.kind = ValueKind::mv;
      if (v.kind == ValueKind::poly) {
        v.mv = MultiVector::scalar(chart_at(vpos), v.poly);
        v.kind = ValueKind::mv;
      }
      if (v.kind != ValueKind::mv) throw ParseError(vpos, "expected a multivector, found a " + describe_value(v));
      if (annotated && *annotated != v.mv.degree()) {
        throw ParseError(vpos, "degree mismatch: declared " + std::to_string(*annotated) + ", expression has degree " +
                                   std::to_string(v.mv.degree()));
      }
      if (v.mv.is_zero()) warn(vpos, "'" + name + "' is identically zero");
    }
    s.value = v;
    Binding b;
    b.kind = s.kind;
    b.value = s.kind == ValueKind::poly ? v : normalize(v);
    bind(name, b);
    add(at, std::move(s));
  }

  GradedSection section_literal(std::optional<int> k) {
    const Position at = expect("(").pos;
    const Position up = peek().pos;
    Value u = value_expression();
    expect(",");
    const Position ap = peek().pos;
    Value a = value_expression();
    expect(")");
    MultiVector mu = as_mv(u, up);
    Form fa = as_form(a, ap);
    if (mu.degree() < 1) throw ParseError(up, "section multivector needs degree >= 1");
    const int kk = mu.degree() + fa.degree() - 1;
    if (k && kk != *k) {
      throw ParseError(at, "degree mismatch: (" + std::to_string(mu.degree()) + ", " + std::to_string(fa.degree()) +
                               ") is not a section for k = " + std::to_string(*k));
    }
    if (kk < 1) throw ParseError(at, "degree mismatch: sections need deg U + deg alpha >= 2");
    return GradedSection(kk, mu, fa);
  }

  Binding ref_binding(RefKind kind, const std::string& name) {
    Binding b;
    b.kind = ValueKind::ref;
    b.value.kind = ValueKind::ref;
    b.value.ref = kind;
    b.value.ref_name = name;
    return b;
  }

  void section_statement(const Position& at) {
    next();
    SectionStmt s;
    s.name = declare_name("name");
    expect("=");
    s.section = section_literal(std::nullopt);
    expect(";");
    bind(s.name, ref_binding(RefKind::section, s.name));
    add(at, std::move(s));
  }

  void family_statement(const Position& at) {
    next();
    FamilyStmt s;
    s.name = declare_name("name");
    expect("{");
    while (!is_symbol("}")) {
      const Position p = peek().pos;
      Value v = value_expression();
      Form f = as_form(v, p);
      if (!s.forms.empty() && f.degree() != s.forms.front().degree()) {
        throw ParseError(p, "degree mismatch: family members must share a degree");
      }
      s.forms.push_back(f);
      expect(";");
    }
    expect("}");
    expect(";");
    bind(s.name, ref_binding(RefKind::family, s.name));
    add(at, std::move(s));
  }

  void subbundle_statement(const Position& at) {
    SubbundleStmt s;
    s.dirac = next().text == "dirac";
    s.name = declare_name("name");
    const Position kp = peek().pos;
    s.k = keyed_int("k");
    if (s.k < 1) throw ParseError(kp, "k must be at least 1");
    expect("{");
    while (!is_symbol("}")) {
      const Position p = peek().pos;
      GradedSection g = section_literal(s.k);
      if (s.dirac && g.p != 1) throw ParseError(p, "dirac generators live at level 1: (vector, k-form)");
      s.generators.push_back(std::move(g));
      expect(";");
    }
    expect("}");
    expect(";");
    const ChartPtr& chart = chart_at(kp);
    s.bundle = guarded(at, [&] {
      if (s.dirac) {
        return std::make_shared<const GeneratedSubbundle>(GeneratedSubbundle::from_level_one(chart, s.k, s.generators));
      }
      std::vector<std::vector<GradedSection>> levels(static_cast<std::size_t>(s.k));
      for (const auto& g : s.generators) levels[static_cast<std::size_t>(g.p - 1)].push_back(g);
      return std::make_shared<const GeneratedSubbundle>(chart, s.k, std::move(levels));
    });
    bind(s.name, ref_binding(s.dirac ? RefKind::dirac : RefKind::subbundle, s.name));
    add(at, std::move(s));
  }

  void poisson_statement(const Position& at) {
    next();
    PoissonStmt s;
    s.name = declare_name("name");
    std::shared_ptr<const GradedPoissonStructure> structure;
    if (accept("=")) {
      if (is_word("omega")) {
        const Position p = next().pos;
        expect("(");
        const Position fp = peek().pos;
        Form w = as_form(value_expression(), fp);
        expect(")");
        if (w.degree() < 2) throw ParseError(fp, "omega() needs a form of degree >= 2");
        structure = guarded(p, [&] { return std::make_shared<const GradedPoissonStructure>(GradedPoissonStructure::from_form(w)); });
      } else if (is_word("foliation")) {
        const Position p = next().pos;
        expect("(");
        expect_word("leaf");
        expect("(");
        const ChartPtr& chart = chart_at(p);
        std::vector<int> leaf;
        do {
          const Token& c = expect_ident("coordinate");
          auto idx = chart->index_of(c.text);
          if (!idx || *idx >= chart->dim()) throw ParseError(c.pos, "'" + c.text + "' is not a coordinate");
          leaf.push_back(static_cast<int>(*idx));
        } while (accept(","));
        expect(")");
        expect(",");
        const Position fp = peek().pos;
        Form w = as_form(value_expression(), fp);
        expect(")");
        structure = guarded(p, [&] {
          return std::make_shared<const GradedPoissonStructure>(foliation_to_structure(chart, leaf, w));
        });
      } else {
        unexpected({"'omega'", "'foliation'"});
      }
    } else {
      const Position kp = peek().pos;
      const int k = keyed_int("k");
      if (k < 1) throw ParseError(kp, "k must be at least 1");
      expect("{");
      std::vector<Form> top;
      std::vector<MultiVector> images;
      while (!is_symbol("}")) {
        const Position fp = peek().pos;
        Form f = as_form(value_expression(), fp);
        if (f.degree() != k) throw ParseError(fp, "degree mismatch: top generators are " + std::to_string(k) + "-forms");
        expect("->");
        const Position xp = peek().pos;
        MultiVector x = as_mv(value_expression(), xp);
        if (x.degree() != 1) throw ParseError(xp, "degree mismatch: images are vector fields");
        top.push_back(f);
        images.push_back(x);
        expect(";");
      }
      expect("}");
      const ChartPtr& chart = chart_at(kp);
      structure = guarded(kp, [&] {
        return std::make_shared<const GradedPoissonStructure>(
            GradedPoissonStructure::extend_from_top(chart, k, top, images));
      });
    }
    expect(";");
    s.k = structure->k();
    s.top = structure->level(s.k).generators;
    s.images = structure->level(s.k).images;
    s.structure = structure;
    bind(s.name, ref_binding(RefKind::poisson, s.name));
    add(at, std::move(s));
  }

  void solution_statement(const Position& at) {
    next();
    SolutionStmt s;
    s.name = declare_name("name");
    if (!field_) throw ParseError(at, "solutions need a field chart");
    s.field = field_;
    s.field_chart = field_name_;
    const FieldChart& fc = *field_;
    const ChartPtr base = fc.base();
    s.psi.y.assign(static_cast<std::size_t>(fc.m()), base->zero());
    s.psi.pm.assign(static_cast<std::size_t>(fc.n()), std::vector<Polynomial>(static_cast<std::size_t>(fc.m()), base->zero()));
    const ChartPtr saved = chart_;
    chart_ = base;
    expect("{");
    while (!is_symbol("}")) {
      const Token& name = expect_ident("field coordinate");
      Polynomial* slot = nullptr;
      for (int i = 0; i < fc.m(); ++i) {
        if (name.text == "y" + std::to_string(i + 1)) slot = &s.psi.y[static_cast<std::size_t>(i)];
        for (int mu = 0; mu < fc.n(); ++mu) {
          if (name.text == "p" + std::to_string(mu + 1) + "_" + std::to_string(i + 1)) {
            slot = &s.psi.pm[static_cast<std::size_t>(mu)][static_cast<std::size_t>(i)];
          }
        }
      }
      if (!slot) throw ParseError(name.pos, "'" + name.text + "' is not a field or momentum coordinate");
      expect("=");
      const Position vp = peek().pos;
      Value v = value_expression();
      if (v.kind != ValueKind::poly) throw ParseError(vp, "expected a polynomial in x, found a " + describe_value(v));
      *slot = v.poly;
      expect(";");
    }
    expect("}");
    expect(";");
    chart_ = saved;
    bind(s.name, ref_binding(RefKind::solution, s.name));
    add(at, std::move(s));
  }

  // ------------------------------------------------------------ directives
  std::string hyphenated(const std::string& what) {
    const Token& first = expect_ident(what);
    std::string w = first.text;
    while (is_symbol("-") && !peek().space_before && peek(1).kind == TokenKind::identifier && !peek(1).space_before) {
      next();
      w += "-" + next().text;
    }
    return w;
  }

  bool at_clause() const {
    return is_symbol(";") || is_word("in") || is_word("bound") || is_word("expect") || is_word("at") ||
           (peek().kind == TokenKind::identifier && is_symbol("=", 1));
  }

  Arg parse_arg(Slot slot, const Position& p) {
    Arg arg;
    if (is_symbol("[")) {
      next();
      arg.kind = ArgKind::list;
      if (!is_symbol("]")) {
        do {
          const Position ep = peek().pos;
          Value v = value_expression();
          Value f;
          f.kind = ValueKind::form;
          f.form = as_form(v, ep);
          if (!arg.list.empty() && f.form.degree() != arg.list.front().form.degree()) {
            throw ParseError(ep, "degree mismatch: list members must share a degree");
          }
          arg.list.push_back(f);
        } while (accept(","));
      }
      expect("]");
    } else if (is_word("graph") && is_symbol("(", 1)) {
      next();
      expect("(");
      const Position fp = peek().pos;
      arg.kind = ArgKind::graph;
      arg.value.kind = ValueKind::form;
      arg.value.form = as_form(value_expression(), fp);
      if (arg.value.form.degree() < 2) throw ParseError(fp, "graph() needs a form of degree >= 2");
      expect(")");
    } else {
      const std::size_t start = pos_;
      const Token& first = peek();
      arg.value = expression();
      if (pos_ == start + 1 && first.kind == TokenKind::identifier && scope_.count(first.text)) arg.name = first.text;
    }
    check_slot(slot, arg, p);
    return arg;
  }

  void check_slot(Slot slot, const Arg& arg, const Position& p) const {
    const Value& v = arg.value;
    auto fail = [&] {
      std::string found = arg.kind == ArgKind::list ? "form list" : arg.kind == ArgKind::graph ? "graph" : describe_value(v);
      throw ParseError(p, std::string("expected ") + describe(slot) + ", found a " + found);
    };
    if (arg.kind == ArgKind::list) {
      if (slot != Slot::family_or_list) fail();
      return;
    }
    if (arg.kind == ArgKind::graph) {
      if (slot != Slot::bundle_or_graph) fail();
      return;
    }
    switch (slot) {
      case Slot::form:
        if (v.kind != ValueKind::form) fail();
        break;
      case Slot::form_or_poly:
      case Slot::poly_or_form:
        if (v.kind != ValueKind::form && v.kind != ValueKind::poly) fail();
        break;
      case Slot::mv:
        if (v.kind != ValueKind::mv) fail();
        break;
      case Slot::any:
        if (v.kind == ValueKind::ref) fail();
        break;
      case Slot::poly:
        if (v.kind != ValueKind::poly) fail();
        break;
      case Slot::section:
        if (v.kind != ValueKind::ref || v.ref != RefKind::section) fail();
        break;
      case Slot::family_or_list:
        if (v.kind != ValueKind::ref || v.ref != RefKind::family) fail();
        break;
      case Slot::bundle:
      case Slot::bundle_or_graph:
        if (v.kind != ValueKind::ref || (v.ref != RefKind::subbundle && v.ref != RefKind::dirac)) fail();
        break;
      case Slot::poisson:
        if (v.kind != ValueKind::ref || v.ref != RefKind::poisson) fail();
        break;
      case Slot::solution:
        if (v.kind != ValueKind::ref || v.ref != RefKind::solution) fail();
        break;
    }
  }

  void directive(const Position& at) {
    Directive d;
    d.check = next().text == "check";
    const Position vp = peek().pos;
    d.verb = hyphenated("verb");
    if (d.check && d.verb == "suite") {
      Arg a;
      a.kind = ArgKind::word;
      a.word = hyphenated("suite name");
      d.args.push_back(a);
      while (peek().kind == TokenKind::identifier && is_symbol("=", 1)) {
        const std::string key = next().text;
        next();
        d.options.emplace_back(key, expect_int("integer"));
      }
      expect(";");
      add(at, std::move(d));
      return;
    }
    const auto& table = d.check ? check_verbs() : compute_verbs();
    auto it = table.find(d.verb);
    if (it == table.end()) {
      std::vector<std::string> verbs;
      for (const auto& [name, spec] : table) verbs.push_back("'" + name + "'");
      if (d.check) verbs.push_back("'suite'");
      throw ParseError(vp, "unknown " + std::string(d.check ? "check" : "compute") + " verb '" + d.verb + "'", verbs);
    }
    const VerbSpec& spec = it->second;
    for (std::size_t i = 0; i < spec.slots.size(); ++i) {
      if (i > 0) accept(",");
      if (at_clause()) {
        throw ParseError(peek().pos, d.verb + " takes " + std::to_string(spec.slots.size()) + " argument(s)",
                         {describe(spec.slots[i])});
      }
      const Position ap = peek().pos;
      d.args.push_back(parse_arg(spec.slots[i], ap));
    }
    while (!is_symbol(";")) {
      if (is_word("in") && spec.needs_in && d.in.empty()) {
        next();
        const Token& name = expect_ident("poisson structure");
        auto s = scope_.find(name.text);
        if (s == scope_.end() || s->second.value.ref != RefKind::poisson) {
          throw ParseError(name.pos, "'" + name.text + "' is not a poisson structure");
        }
        d.in = name.text;
      } else if (is_word("bound") && spec.allows_bound && !d.bound) {
        next();
        d.bound = expect_int("bound");
      } else if (is_word("expect") && spec.allows_expect && !d.expect) {
        next();
        d.expect = expect_int("dimension");
      } else if (is_word("at") && spec.needs_at && !d.at) {
        next();
        d.at = rational_tuple();
      } else if (peek().kind == TokenKind::identifier && is_symbol("=", 1) &&
                 std::find(spec.options.begin(), spec.options.end(), peek().text) != spec.options.end()) {
        const std::string key = next().text;
        next();
        d.options.emplace_back(key, expect_int("integer"));
      } else {
        std::vector<std::string> ex{"';'"};
        if (spec.needs_in && d.in.empty()) ex.push_back("'in'");
        if (spec.allows_bound && !d.bound) ex.push_back("'bound'");
        if (spec.allows_expect && !d.expect) ex.push_back("'expect'");
        if (spec.needs_at && !d.at) ex.push_back("'at'");
        for (const auto& o : spec.options) ex.push_back("'" + o + "='");
        unexpected(ex);
      }
    }
    if (spec.needs_in && d.in.empty()) unexpected({"'in'"});
    if (spec.needs_at && !d.at) unexpected({"'at'"});
    expect(";");
    add(at, std::move(d));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Document doc_;
  std::map<std::string, Binding> scope_;
  ChartPtr chart_;
  std::shared_ptr<const FieldChart> field_;
  std::string field_name_;
};

}  // namespace

Document parse(std::string_view text) { return Parser(text).run(); }

}  // namespace gradedirac::dsl
