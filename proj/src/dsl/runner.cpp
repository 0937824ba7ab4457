#include "gradedirac/dsl/runner.hpp"

#include <chrono>
#include <map>

#include "gradedirac/dsl/printer.hpp"
#include "gradedirac/random.hpp"
#include "gradedirac/subspace.hpp"
#include "gradedirac/suites.hpp"

namespace gradedirac::dsl {

namespace {

constexpr int kSamplePoints = 3;
constexpr int kDefaultBound = 2;

struct Outcome {
  Verdict verdict = Verdict::pass();
  void result(const std::string& key, std::string value) { verdict.with(key, std::move(value)); }
};

std::string vector_text(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + print_rational(v[i]);
  return out + ")";
}

Verdict from_membership(Membership m, const std::string& what, const std::string& witness) {
  switch (m) {
    case Membership::member: return Verdict::pass();
    case Membership::not_member: {
      Verdict v = Verdict::fail(what);
      if (!witness.empty()) v.with("reason", witness);
      return v;
    }
    case Membership::inconclusive: {
      Verdict v = Verdict::inconclusive(what + " (undecided within the degree bound)");
      if (!witness.empty()) v.with("reason", witness);
      return v;
    }
  }
  return Verdict::inconclusive(what);
}

class Executor {
 public:
  Executor(const Document& doc, const RunOptions& options) : doc_(doc), options_(options) {}

  void declare(const Statement& s) {
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (!std::is_same_v<T, Directive>) names_[b.name] = &s;
        },
        s.body);
  }

  Verdict execute(const Directive& d) {
    if (d.check) return check(d);
    return compute(d);
  }

 private:
  template <class T>
  const T& lookup(const std::string& name) const {
    auto it = names_.find(name);
    if (it == names_.end()) throw DomainError("unknown declaration '" + name + "'");
    const T* p = std::get_if<T>(&it->second->body);
    if (!p) throw DomainError("'" + name + "' has the wrong kind");
    return *p;
  }
  const Arg& arg(const Directive& d, std::size_t i) const { return d.args.at(i); }
  std::string ref(const Directive& d, std::size_t i) const { return arg(d, i).value.ref_name; }

  static Form form_of(const Value& v) {
    if (v.kind == ValueKind::form) return v.form;
    if (v.kind == ValueKind::poly && v.scalar_chart) return Form::scalar(v.scalar_chart, v.poly);
    throw DomainError("expected a form");
  }
  static ChartPtr chart_of(const Value& v) { return v.chart(); }

  std::vector<std::vector<Rational>> points(const ChartPtr& chart) const {
    return sample_points(chart, options_.seed, kSamplePoints);
  }
  SpanOptions span_options(const ChartPtr& chart, int degree) const {
    SpanOptions o;
    o.degree_bound = degree;
    o.sample_points = points(chart);
    return o;
  }
  int option(const Directive& d, const std::string& key, int fallback) const {
    for (const auto& [k, v] : d.options) {
      if (k == key) return v;
    }
    return fallback;
  }
  std::vector<Rational> point_for(const ChartPtr& chart, const std::vector<Rational>& at) const {
    if (at.size() == chart->nvars()) return at;
    if (at.size() == chart->dim() && chart->nparams() == 0) return at;
    throw DomainError("point needs " + std::to_string(chart->nvars()) + " values (coordinates, then parameters)");
  }
  std::vector<Form> forms_of(const Arg& a) const {
    if (a.kind == ArgKind::list) {
      std::vector<Form> out;
      for (const auto& v : a.list) out.push_back(v.form);
      return out;
    }
    return lookup<FamilyStmt>(a.value.ref_name).forms;
  }
  const FieldChart& field_for(const ChartPtr& chart) const {
    auto fc = doc_.field_chart_for(chart);
    if (!fc) throw DomainError("this operation needs forms on a field chart");
    field_keep_ = fc;
    return *fc;
  }
  const SubbundleStmt& bundle(const Directive& d, std::size_t i) const {
    return lookup<SubbundleStmt>(ref(d, i));
  }
  HamiltonianForm hamiltonian(const Form& f, const GradedPoissonStructure& p, Verdict& failure) const {
    HamiltonianCheck h = is_hamiltonian(f, p, span_options(p.chart(), kDefaultBound));
    if (h.status != Membership::member) {
      failure = from_membership(h.status, "not a Hamiltonian form: " + print_form(f), h.witness);
      return {};
    }
    return *h.form;
  }

  // ---------------------------------------------------------------- checks
  Verdict check(const Directive& d) {
    const std::string& v = d.verb;
    if (v == "closed") {
      const Form f = form_of(arg(d, 0).value);
      const Form df = exterior_derivative(f);
      if (df.is_zero()) return Verdict::pass();
      return Verdict::fail("form is not closed").with("d", print_form(df));
    }
    if (v == "exact") {
      const Form f = form_of(arg(d, 0).value);
      if (f.degree() == 0) {
        return f.is_zero() ? Verdict::pass() : Verdict::fail("a nonzero function is not exact");
      }
      if (auto prim = exact_primitive(f)) return Verdict::pass().with("primitive", print_form(*prim));
      return Verdict::fail("form is not closed, hence not exact").with("d", print_form(exterior_derivative(f)));
    }
    if (v == "equal") {
      const Value& a = arg(d, 0).value;
      const Value& b = arg(d, 1).value;
      if (a == b) return Verdict::pass();
      Verdict r = Verdict::fail("values differ");
      if (a.kind == b.kind && a.degree() == b.degree()) {
        if (a.kind == ValueKind::form) r.with("difference", print_form(a.form - b.form));
        if (a.kind == ValueKind::mv) r.with("difference", print_multivector(a.mv - b.mv));
        if (a.kind == ValueKind::poly) r.with("difference", print_polynomial(a.poly - b.poly, a.scalar_chart));
      }
      return r.with("left", print_value(a)).with("right", print_value(b));
    }
    if (v == "hamiltonian") {
      const auto& p = *lookup<PoissonStmt>(d.in).structure;
      const Form f = form_of(arg(d, 0).value);
      HamiltonianCheck h = is_hamiltonian(f, p, span_options(p.chart(), kDefaultBound));
      Verdict r = from_membership(h.status, "d of the form is not a section of S", h.witness);
      if (h.form) {
        r.with("level", std::to_string(h.form->level)).with("sharp", print_multivector(h.form->witness));
      }
      return r;
    }
    if (v == "weak-lagrangian") {
      const auto& b = bundle(d, 0);
      return check_weak_lagrangian_at(*b.bundle, points(b.bundle->chart()));
    }
    if (v == "involutive") {
      if (arg(d, 0).kind == ArgKind::graph) return check_graph_involutive(arg(d, 0).value.form);
      const auto& b = bundle(d, 0);
      InvolutivityReport rep = check_involutive(*b.bundle, span_options(b.bundle->chart(), option(d, "degree", kDefaultBound)));
      return rep.verdict;
    }
    if (v == "nondegenerate") {
      const auto& p = *lookup<PoissonStmt>(ref(d, 0)).structure;
      return p.check_nondegenerate(points(p.chart()));
    }
    if (v == "poisson-properties") {
      const auto& p = *lookup<PoissonStmt>(ref(d, 0)).structure;
      PropertyOptions po;
      po.seed = options_.seed;
      po.cases = options_.cases;
      po.coefficient_degree = option(d, "degree", 1);
      Verdict r = Verdict::pass();
      bool first = true;
      for (const auto& out : check_bracket_properties(p, po)) {
        if (out.verdict.status != Status::pass && first) {
          first = false;
          const Status s = out.verdict.status;
          r.status = s;
          r.message = out.name + ": " + out.verdict.message;
          for (const auto& kv : out.verdict.details) r.with(out.name + "." + kv.first, kv.second);
        } else if (out.verdict.status == Status::fail) {
          r.status = Status::fail;
        }
        std::string line = std::string(to_string(out.verdict.status)) + " (" + std::to_string(out.instances) + " instances)";
        if (!out.verdict.message.empty()) line += ": " + out.verdict.message;
        r.with(out.name, line);
      }
      return r;
    }
    if (v == "closed-sections") {
      const auto forms = forms_of(arg(d, 0));
      const int bound = d.bound.value_or(options_.bound.value_or(kDefaultBound));
      const auto basis = closed_section_search(forms, bound);
      const std::size_t expected = static_cast<std::size_t>(d.expect.value_or(0));
      Verdict r = basis.size() == expected
                      ? Verdict::pass()
                      : Verdict::fail("found " + std::to_string(basis.size()) + " independent closed sections, expected " +
                                      std::to_string(expected));
      r.with("bound", std::to_string(bound)).with("dimension", std::to_string(basis.size()));
      if (basis.empty()) r.with("sections", "only the zero section");
      for (std::size_t i = 0; i < basis.size(); ++i) r.with("section " + std::to_string(i + 1), print_form(basis[i]));
      return r;
    }
    if (v == "antirep") {
      const Form a = form_of(arg(d, 0).value), b = form_of(arg(d, 1).value), eta = form_of(arg(d, 2).value);
      const FieldChart& fc = field_for(a.chart());
      IdentityCheck c = antirep_check(fc, a, b, eta);
      bool p_free = true;
      for (const auto& [blade, coef] : eta.terms()) p_free = p_free && !coef.depends_on(static_cast<std::size_t>(fc.p()));
      return c.verdict.with("eta_p_independent", p_free ? "yes" : "no");
    }
    if (v == "hdw") {
      const auto& sol = lookup<SolutionStmt>(ref(d, 0));
      const Polynomial h = hamiltonian_poly(arg(d, 1).value, *sol.field);
      const HdwResidual res = hdw_residual(*sol.field, sol.psi, h);
      Verdict r = res.is_solution() ? Verdict::pass() : Verdict::fail("section does not solve the field equations");
      const auto& names = sol.field->base()->variable_names();
      for (std::size_t mu = 0; mu < res.momentum.size(); ++mu) {
        for (std::size_t i = 0; i < res.momentum[mu].size(); ++i) {
          if (!res.momentum[mu][i].is_zero()) {
            r.with("d" + std::to_string(mu + 1) + " y" + std::to_string(i + 1) + " - dH/dp" + std::to_string(mu + 1) + "_" +
                       std::to_string(i + 1),
                   res.momentum[mu][i].to_string(names));
          }
        }
      }
      for (std::size_t i = 0; i < res.field.size(); ++i) {
        if (!res.field[i].is_zero()) r.with("div p_" + std::to_string(i + 1) + " + dH/dy" + std::to_string(i + 1), res.field[i].to_string(names));
      }
      return r;
    }
    if (v == "conservation") {
      const auto& sol = lookup<SolutionStmt>(ref(d, 0));
      const Form a = form_of(arg(d, 1).value);
      const Polynomial h = hamiltonian_poly(arg(d, 2).value, *sol.field);
      if (!same_chart(a.chart(), sol.field->full())) throw DomainError("the current lives on a different chart");
      ConservationReport rep = conservation_check(*sol.field, sol.psi, a, h);
      return rep.verdict.with("factorization", rep.factorization.to_string(sol.field->base()->variable_names()));
    }
    if (v == "suite") {
      SuiteOptions so;
      so.seed = options_.seed;
      so.cases = options_.cases;
      for (const auto& [k, val] : d.options) {
        if (k == "cases") {
          so.cases = val;
        } else if (k == "seed") {
          so.seed = static_cast<std::uint64_t>(val);
        } else {
          so.params[k] = val;
        }
      }
      SuiteOutcome out = run_suite(arg(d, 0).word, so);
      return out.verdict;
    }
    throw DomainError("unsupported check '" + v + "'");
  }

  static Polynomial hamiltonian_poly(const Value& v, const FieldChart& fc) {
    if (v.kind != ValueKind::poly || !same_chart(v.scalar_chart, fc.full())) {
      throw DomainError("the Hamiltonian must be a polynomial on the field chart");
    }
    return v.poly;
  }

  // ---------------------------------------------------------------- computations
  Verdict compute(const Directive& d) {
    const std::string& v = d.verb;
    Verdict r = Verdict::pass();
    if (v == "d") return r.with("result", print_form(exterior_derivative(form_of(arg(d, 0).value))));
    if (v == "sn") return r.with("result", print_multivector(schouten_nijenhuis(arg(d, 0).value.mv, arg(d, 1).value.mv)));
    if (v == "lie") return r.with("result", print_form(lie_derivative(arg(d, 0).value.mv, form_of(arg(d, 1).value))));
    if (v == "pairing" || v == "courant") {
      const auto& s = lookup<SectionStmt>(ref(d, 0)).section;
      const auto& t = lookup<SectionStmt>(ref(d, 1)).section;
      if (v == "pairing") return r.with("result", print_form(graded_pairing(s, t)));
      return r.with("result", print_section(courant_bracket(s, t)));
    }
    if (v == "bracket") {
      const auto& p = *lookup<PoissonStmt>(d.in).structure;
      Verdict failure = Verdict::pass();
      HamiltonianForm a = hamiltonian(form_of(arg(d, 0).value), p, failure);
      if (!failure.passed()) return failure;
      HamiltonianForm b = hamiltonian(form_of(arg(d, 1).value), p, failure);
      if (!failure.passed()) return failure;
      return r.with("result", print_form(poisson_bracket(p, a, b)));
    }
    if (v == "extend") {
      const auto& p = *lookup<PoissonStmt>(ref(d, 0)).structure;
      for (int a = 1; a <= p.k(); ++a) {
        const auto& lvl = p.level(a);
        std::string text;
        for (std::size_t i = 0; i < lvl.generators.size(); ++i) {
          text += (i ? "; " : "") + print_form(lvl.generators[i]) + " -> " + print_multivector(lvl.images[i]);
        }
        r.with("level " + std::to_string(a), text.empty() ? "none" : text);
      }
      return r;
    }
    if (v == "reconstruct") {
      const auto& b = bundle(d, 0);
      for (const auto& g : b.generators) {
        if (!g.u.has_constant_coefficients() || !g.alpha.has_constant_coefficients()) {
          return Verdict::fail("reconstruction needs constant-coefficient generators");
        }
      }
      std::vector<Rational> origin = b.bundle->chart()->star_center();
      origin.resize(b.bundle->chart()->nvars(), 0);
      const auto family = b.bundle->at_point(origin);
      const LinearGradedDirac s = reconstruct_family(triple_from_weak_higher(family.front()));
      for (int a = 1; a <= s.k(); ++a) {
        r.with("dim S^" + std::to_string(a), std::to_string(s.S(a).dim()));
      }
      for (int p = 1; p <= s.k(); ++p) r.with("dim K_" + std::to_string(p), std::to_string(s.K(p).dim()));
      const auto rebuilt = graph(s);
      bool same = rebuilt.size() == family.size();
      for (std::size_t i = 0; same && i < rebuilt.size(); ++i) same = rebuilt[i] == family[i];
      r.with("matches_declared_levels", same ? "yes" : "no");
      return r;
    }
    if (v == "closed-sections") {
      const int bound = d.bound.value_or(options_.bound.value_or(kDefaultBound));
      const auto basis = closed_section_search(forms_of(arg(d, 0)), bound);
      r.with("dimension", std::to_string(basis.size()));
      for (std::size_t i = 0; i < basis.size(); ++i) r.with("section " + std::to_string(i + 1), print_form(basis[i]));
      return r;
    }
    if (v == "value") {
      const Value& x = arg(d, 0).value;
      const ChartPtr chart = chart_of(x);
      const auto pt = point_for(chart, *d.at);
      if (x.kind == ValueKind::poly) return r.with("result", print_rational(x.poly.evaluate(pt)));
      auto constant = [&](const std::map<Blade, Rational>& m, auto zero) {
        for (const auto& [blade, q] : m) zero.add_term(blade, chart->constant(q));
        return zero;
      };
      if (x.kind == ValueKind::form) {
        return r.with("result", print_form(constant(x.form.evaluate(pt), Form(chart, x.form.degree()))));
      }
      return r.with("result", print_multivector(constant(x.mv.evaluate(pt), MultiVector(chart, x.mv.degree()))));
    }
    if (v == "primitive") {
      const Form f = form_of(arg(d, 0).value);
      if (f.degree() == 0) return Verdict::fail("functions have no primitive");
      if (auto prim = exact_primitive(f)) return r.with("result", print_form(*prim));
      return Verdict::fail("form is not closed").with("d", print_form(exterior_derivative(f)));
    }
    if (v == "current") {
      const Form a = form_of(arg(d, 0).value);
      const FieldChart& fc = field_for(a.chart());
      const Value& second = arg(d, 1).value;
      if (second.kind == ValueKind::poly) return r.with("result", print_form(current_bracket_h(fc, a, second.poly)));
      return r.with("result", print_form(current_bracket_eta(fc, a, second.form)));
    }
    if (v == "field") {
      const Form a = form_of(arg(d, 0).value);
      return r.with("result", print_multivector(observable_field(field_for(a.chart()), a)));
    }
    if (v == "leaf") {
      const auto& p = *lookup<PoissonStmt>(ref(d, 0)).structure;
      const LeafForm leaf = leaf_form_at(p, point_for(p.chart(), *d.at));
      std::string basis;
      for (std::size_t i = 0; i < leaf.basis.size(); ++i) basis += (i ? ", " : "") + vector_text(leaf.basis[i]);
      r.with("basis", basis.empty() ? "none" : basis);
      std::string coeffs;
      for (const auto& [blade, q] : leaf.coefficients) {
        if (q == 0) continue;
        std::string idx;
        for (int j : blade) idx += (idx.empty() ? "" : ",") + std::to_string(j + 1);
        coeffs += (coeffs.empty() ? "" : "; ") + std::string("w(") + idx + ") = " + print_rational(q);
      }
      return r.with("leaf_form", coeffs.empty() ? "0" : coeffs);
    }
    if (v == "sharp") {
      const auto& p = *lookup<PoissonStmt>(d.in).structure;
      const Form f = form_of(arg(d, 0).value);
      auto s = p.sharp(f, span_options(p.chart(), kDefaultBound));
      Verdict out = from_membership(s.status, "form is not a section of S", s.witness);
      if (s.value) out.with("result", print_multivector(*s.value));
      return out;
    }
    throw DomainError("unsupported computation '" + v + "'");
  }

  const Document& doc_;
  const RunOptions& options_;
  std::map<std::string, const Statement*> names_;
  mutable std::shared_ptr<const FieldChart> field_keep_;
};

}  // namespace

Report run(const Document& doc, const RunOptions& options) {
  Report rep;
  rep.source = options.source;
  rep.seed = options.seed;
  rep.cases = options.cases;
  for (const auto& w : doc.warnings) rep.warnings.push_back(to_string(w.pos) + ": " + w.message);
  Executor ex(doc, options);
  std::size_t index = 0;
  for (const auto& s : doc.statements) {
    const auto* d = std::get_if<Directive>(&s.body);
    if (!d) {
      ex.declare(s);
      continue;
    }
    if (options.compute_only && d->check) continue;
    DirectiveReport entry;
    entry.index = index++;
    entry.pos = s.pos;
    entry.directive = print(s);
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = ex.execute(*d);
    } catch (const std::exception& e) {
      v = Verdict::fail(std::string("runtime error at ") + to_string(s.pos) + ": " + e.what());
    }
    if (options.timing) {
      entry.milliseconds = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    entry.status = v.status;
    entry.message = v.message;
    entry.witnesses = v.details;
    rep.status = combine(rep.status, v.status);
    rep.directives.push_back(std::move(entry));
  }
  return rep;
}

}  // namespace gradedirac::dsl
