#include "gradedirac/dsl/printer.hpp"

namespace gradedirac::dsl {

namespace {

template <class T>
std::string print_exterior(const T& x, const char* prefix) {
  if (!x.is_zero() || x.degree() == 0) return x.to_string();
  const auto& names = x.chart()->coordinates();
  std::string out = "0*";
  for (int i = 0; i < x.degree(); ++i) out += (i ? "^" : "") + std::string(prefix) + names[static_cast<std::size_t>(i)];
  return out;
}

std::string name_list(const std::vector<std::string>& names) {
  std::string out = "(";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out + ")";
}

std::string rational_list(const std::vector<Rational>& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + print_rational(values[i]);
  return out + ")";
}

std::string print_arg(const Arg& a) {
  switch (a.kind) {
    case ArgKind::word: return a.word;
    case ArgKind::graph: return "graph(" + print_form(a.value.form) + ")";
    case ArgKind::list: {
      std::string out = "[";
      for (std::size_t i = 0; i < a.list.size(); ++i) out += (i ? ", " : "") + print_value(a.list[i]);
      return out + "]";
    }
    case ArgKind::value: return a.name.empty() ? print_value(a.value) : a.name;
  }
  return {};
}

struct StatementPrinter {
  std::string operator()(const ChartStmt& s) const {
    std::string out = "chart " + s.name + " " + name_list(s.coordinates);
    if (!s.parameters.empty()) out += " params " + name_list(s.parameters);
    if (!s.center.empty()) out += " center " + rational_list(s.center);
    return out + ";";
  }
  std::string operator()(const FieldChartStmt& s) const {
    std::string out = "fieldchart " + s.name + " n=" + std::to_string(s.n) + " m=" + std::to_string(s.m);
    if (!s.parameters.empty()) out += " params " + name_list(s.parameters);
    return out + ";";
  }
  std::string operator()(const BindStmt& s) const {
    switch (s.kind) {
      case ValueKind::form:
        return "form a" + std::to_string(s.value.form.degree()) + " " + s.name + " = " + print_form(s.value.form) + ";";
      case ValueKind::mv:
        return "mv p" + std::to_string(s.value.mv.degree()) + " " + s.name + " = " + print_multivector(s.value.mv) + ";";
      default: return "poly " + s.name + " = " + print_value(s.value) + ";";
    }
  }
  std::string operator()(const SectionStmt& s) const { return "section " + s.name + " = " + print_section(s.section) + ";"; }
  std::string operator()(const FamilyStmt& s) const {
    std::string out = "family " + s.name + " {\n";
    for (const auto& f : s.forms) out += "  " + print_form(f) + ";\n";
    return out + "};";
  }
  std::string operator()(const SubbundleStmt& s) const {
    std::string out = std::string(s.dirac ? "dirac " : "subbundle ") + s.name + " k=" + std::to_string(s.k) + " {\n";
    for (const auto& g : s.generators) out += "  " + print_section(g) + ";\n";
    return out + "};";
  }
  std::string operator()(const PoissonStmt& s) const {
    std::string out = "poisson " + s.name + " k=" + std::to_string(s.k) + " {\n";
    for (std::size_t i = 0; i < s.top.size(); ++i) {
      out += "  " + print_form(s.top[i]) + " -> " + print_multivector(s.images[i]) + ";\n";
    }
    return out + "};";
  }
  std::string operator()(const SolutionStmt& s) const {
    std::string out = "solution " + s.name + " {\n";
    const auto& base = s.field->base();
    for (std::size_t i = 0; i < s.psi.y.size(); ++i) {
      out += "  y" + std::to_string(i + 1) + " = " + print_polynomial(s.psi.y[i], base) + ";\n";
    }
    for (std::size_t mu = 0; mu < s.psi.pm.size(); ++mu) {
      for (std::size_t i = 0; i < s.psi.pm[mu].size(); ++i) {
        out += "  p" + std::to_string(mu + 1) + "_" + std::to_string(i + 1) + " = " +
               print_polynomial(s.psi.pm[mu][i], base) + ";\n";
      }
    }
    return out + "};";
  }
  std::string operator()(const Directive& d) const {
    std::string out = std::string(d.check ? "check " : "compute ") + d.verb;
    for (std::size_t i = 0; i < d.args.size(); ++i) out += (i ? ", " : " ") + print_arg(d.args[i]);
    if (!d.in.empty()) out += " in " + d.in;
    if (d.bound) out += " bound " + std::to_string(*d.bound);
    if (d.expect) out += " expect " + std::to_string(*d.expect);
    if (d.at) out += " at " + rational_list(*d.at);
    for (const auto& [k, v] : d.options) out += " " + k + "=" + std::to_string(v);
    return out + ";";
  }
};

}  // namespace

std::string print_rational(const Rational& q) { return q.get_str(); }

std::string print_form(const Form& f) { return print_exterior(f, "d"); }
std::string print_multivector(const MultiVector& m) { return print_exterior(m, "@"); }

std::string print_polynomial(const Polynomial& p, const ChartPtr& chart) {
  return chart ? p.to_string(chart->variable_names()) : p.to_string({});
}

std::string print_value(const Value& v) {
  switch (v.kind) {
    case ValueKind::poly: return print_polynomial(v.poly, v.scalar_chart);
    case ValueKind::form: return print_form(v.form);
    case ValueKind::mv: return print_multivector(v.mv);
    case ValueKind::ref: return v.ref_name;
  }
  return {};
}

std::string print_section(const GradedSection& s) {
  return "(" + print_multivector(s.u) + ", " + print_form(s.alpha) + ")";
}

std::string print(const Statement& s) { return std::visit(StatementPrinter{}, s.body); }

std::string print(const Document& doc) {
  std::string out;
  for (const auto& s : doc.statements) out += print(s) + "\n";
  return out;
}

}  // namespace gradedirac::dsl
