#include "gradedirac/suites.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "gradedirac/field_theory.hpp"
#include "gradedirac/graded_manifold.hpp"
#include "gradedirac/graded_poisson.hpp"
#include "gradedirac/linear_dirac.hpp"
#include "gradedirac/random.hpp"
#include "gradedirac/span_solver.hpp"
#include "gradedirac/subspace.hpp"

namespace gradedirac {

namespace {

std::uint64_t case_seed(std::uint64_t seed, int i) {
  return seed * 0x100000001b3ULL + static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ULL + 1;
}

// Records the first failure and counts failing cases.
class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}

  void fail(int index, Verdict v) {
    if (failures_++ == 0) {
      first_ = std::move(v);
      first_.with("case", std::to_string(index));
    }
  }
  void inconclusive(int index, const std::string& why) {
    if (inconclusive_++ == 0 && failures_ == 0) {
      first_ = Verdict::inconclusive(why);
      first_.with("case", std::to_string(index));
    }
  }
  void pass() { ++passes_; }

  SuiteOutcome finish(int cases) {
    SuiteOutcome out{name_, Verdict::pass(), cases};
    if (failures_ > 0) {
      out.verdict = first_;
      out.verdict.status = Status::fail;
      out.verdict.with("failures", std::to_string(failures_));
    } else if (inconclusive_ > 0) {
      out.verdict = first_;
      out.verdict.with("inconclusive", std::to_string(inconclusive_));
    }
    out.verdict.with("cases", std::to_string(cases));
    return out;
  }

 private:
  std::string name_;
  Verdict first_;
  int failures_ = 0;
  int inconclusive_ = 0;
  int passes_ = 0;
};

Vector random_vector(Rng& rng, std::size_t dim, int range = 2) {
  Vector v(dim);
  for (auto& x : v) x = rng.uniform(-range, range);
  return v;
}

// Random polynomial in the listed coordinates only.
Polynomial poly_in(Rng& rng, const ChartPtr& chart, const std::vector<int>& vars, int max_degree, int max_terms) {
  Polynomial p = chart->zero();
  const int terms = rng.uniform(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    Exponent e(chart->nvars(), 0);
    const int deg = vars.empty() ? 0 : rng.uniform(0, max_degree);
    for (int i = 0; i < deg; ++i) {
      ++e[static_cast<std::size_t>(vars[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(vars.size()) - 1))])];
    }
    p.add_term(e, rng.small_rational());
  }
  return p;
}

std::vector<int> range_vars(int from, int to) {
  std::vector<int> v;
  for (int i = from; i < to; ++i) v.push_back(i);
  return v;
}

// ---------------------------------------------------------------- SN bracket

SuiteOutcome sn_suite(const SuiteOptions& o) {
  Tally tally("sn-identities");
  RandomShape shape;
  shape.max_coefficient_degree = 2;
  for (int i = 0; i < o.cases; ++i) {
    Rng rng(case_seed(o.seed, i));
    const int p = rng.uniform(1, 3), q = rng.uniform(1, 3), t = rng.uniform(1, 3);
    const int n = rng.uniform(std::max({p, q, t, p + q - 1, 2}), 5);
    auto chart = make_chart(static_cast<std::size_t>(n));
    const MultiVector u = random_multivector(rng, chart, p, shape);
    const MultiVector v = random_multivector(rng, chart, q, shape);
    const MultiVector w = random_multivector(rng, chart, t, shape);
    const int a = rng.uniform(p + q - 1, n);
    const Form omega = random_form(rng, chart, a, shape);

    const MultiVector uv = schouten_nijenhuis(u, v);
    const Rational s_pq(sign_power(static_cast<long long>(p - 1) * q));
    std::string broken;
    if (uv != schouten_nijenhuis(v, u).scaled(Rational(-sign_power(static_cast<long long>(p - 1) * (q - 1))))) {
      broken = "graded skew-symmetry";
    } else if (interior(uv, omega) !=
               lie_derivative(u, interior(v, omega)).scaled(s_pq) - interior(v, lie_derivative(u, omega))) {
      broken = "contraction with the bracket";
    } else if (schouten_nijenhuis(u, wedge(v, w)) != wedge(uv, w) + wedge(v, schouten_nijenhuis(u, w)).scaled(s_pq)) {
      broken = "graded Leibniz rule";
    } else {
      const MultiVector jac =
          schouten_nijenhuis(u, schouten_nijenhuis(v, w)).scaled(Rational(sign_power(static_cast<long long>(p - 1) * (t - 1)))) +
          schouten_nijenhuis(v, schouten_nijenhuis(w, u)).scaled(Rational(sign_power(static_cast<long long>(q - 1) * (p - 1)))) +
          schouten_nijenhuis(w, uv).scaled(Rational(sign_power(static_cast<long long>(t - 1) * (q - 1))));
      if (!jac.is_zero()) broken = "graded Jacobi identity";
    }
    if (broken.empty()) {
      tally.pass();
    } else {
      tally.fail(i, Verdict::fail(broken + " fails")
                        .with("U", u.to_string())
                        .with("V", v.to_string())
                        .with("W", w.to_string())
                        .with("omega", omega.to_string()));
    }
  }
  return tally.finish(o.cases);
}

// ----------------------------------------------------------- graph theorem

SuiteOutcome graph_suite(const SuiteOptions& o) {
  Tally tally("graph-theorem");
  RandomShape shape;
  shape.max_coefficient_degree = 2;
  for (int i = 0; i < o.cases; ++i) {
    Rng rng(case_seed(o.seed, i));
    Form omega;
    if (i % 2 == 0) {
      const int n = rng.uniform(2, 5);
      auto chart = make_chart(static_cast<std::size_t>(n));
      const int k = rng.uniform(1, std::min(3, n - 1));
      omega = exterior_derivative(random_form(rng, chart, k, shape));
    } else {
      const int n = rng.uniform(3, 5);
      auto chart = make_chart(static_cast<std::size_t>(n));
      const int deg = rng.uniform(2, std::min(4, n - 1));
      do {
        omega = random_form(rng, chart, deg, shape);
      } while (is_closed(omega));
    }
    const bool closed = exterior_derivative(omega).is_zero();
    const Verdict v = check_graph_involutive(omega);
    if (v.passed() == closed) {
      tally.pass();
    } else {
      tally.fail(i, Verdict::fail(closed ? "graph of a closed form is not involutive"
                                         : "graph of a non-closed form is involutive")
                        .with("omega", omega.to_string()));
    }
  }
  return tally.finish(o.cases);
}

// --------------------------------------------------- linear correspondence

struct RandomTop {
  int n = 0, k = 0;
  std::vector<Vector> generators, images;
};

// S = span{ i_e omega : e in E } + T with T inside the forms killed by E;
// sharp(i_e omega) = e and sharp(T) = 0.
RandomTop random_top(Rng& rng) {
  RandomTop r;
  r.k = rng.uniform(1, 3);
  r.n = rng.uniform(std::max(2, r.k), 6);
  const int n = r.n, k = r.k;
  std::vector<Vector> e;
  const int dim_e = rng.uniform(0, n);
  for (int j = 0; j < dim_e; ++j) e.push_back(random_vector(rng, static_cast<std::size_t>(n)));
  const Vector omega = random_vector(rng, static_cast<std::size_t>(binomial(n, k + 1)));
  const auto& pair = contraction_pairing(n, 1, k + 1);
  for (const auto& v : e) {
    r.generators.push_back(pair.apply(v, omega));
    r.images.push_back(v);
  }
  const ConstSubspace ann =
      annihilator_forms(ConstSubspace::span({n, SpaceKind::multivectors, 1}, e), k);
  const int extra = ann.dim() == 0 ? 0 : rng.uniform(0, static_cast<int>(std::min<std::size_t>(ann.dim(), 3)));
  for (int j = 0; j < extra; ++j) {
    Vector t(ann.ambient().dim());
    for (std::size_t b = 0; b < ann.dim(); ++b) {
      const Vector bv = ann.basis_vector(b);
      const int c = rng.uniform(-2, 2);
      for (std::size_t x = 0; x < t.size(); ++x) t[x] += c * bv[x];
    }
    r.generators.push_back(t);
    r.images.push_back(Vector(static_cast<std::size_t>(n)));
  }
  return r;
}

bool same_structure(const LinearGradedDirac& a, const LinearGradedDirac& b) {
  if (a.n() != b.n() || a.k() != b.k()) return false;
  for (int lvl = 1; lvl <= a.k(); ++lvl) {
    const auto& la = a.level(lvl);
    const auto& lb = b.level(lvl);
    if (la.s != lb.s || la.k != lb.k) return false;
    for (std::size_t i = 0; i < la.s.dim(); ++i) {
      const Vector x = la.s.basis_vector(i);
      if (!la.sharp.same_class(la.sharp.apply(x), lb.sharp.apply(x))) return false;
    }
  }
  return true;
}

SuiteOutcome linear_suite(const SuiteOptions& o) {
  Tally tally("linear-roundtrip");
  int plain_generation = 0;
  for (int i = 0; i < o.cases; ++i) {
    Rng rng(case_seed(o.seed, i));
    const RandomTop top = random_top(rng);
    auto describe_case = [&](Verdict v) {
      return v.with("n", std::to_string(top.n)).with("k", std::to_string(top.k))
          .with("generators", std::to_string(top.generators.size()));
    };
    try {
      const LinearGradedDirac s = reconstruct_family(make_top_triple(top.n, top.k, top.generators, top.images));
      Verdict v = check_conditions(s);
      if (!v.passed()) {
        tally.fail(i, describe_case(v));
        continue;
      }
      const auto family = graph(s);
      v = check_weak_lagrangian(family);
      if (!v.passed()) {
        tally.fail(i, describe_case(v));
        continue;
      }
      v = d1_determines(family.front(), family);
      if (!v.passed()) {
        tally.fail(i, describe_case(v));
        continue;
      }
      if (d1_generates(family.front(), family).passed()) ++plain_generation;
      const LinearGradedDirac back = triple_from_graph(family);
      if (!same_structure(back, s)) {
        tally.fail(i, describe_case(Verdict::fail("triple -> graph -> triple is not the identity")));
        continue;
      }
      if (graph(back) != family) {
        tally.fail(i, describe_case(Verdict::fail("graph -> triple -> graph is not the identity")));
        continue;
      }
      if (graph(reconstruct_family(triple_from_weak_higher(family.front()))) != family) {
        tally.fail(i, describe_case(Verdict::fail("reconstruction from D_1 differs")));
        continue;
      }
      // Changing representatives by elements of K gives the same structure.
      const ConstSubspace kernel = s.K(1);
      std::vector<Vector> moved = top.images;
      for (auto& img : moved) {
        for (std::size_t b = 0; b < kernel.dim(); ++b) {
          const Vector kv = kernel.basis_vector(b);
          const int c = rng.uniform(-2, 2);
          for (std::size_t x = 0; x < img.size(); ++x) img[x] += c * kv[x];
        }
      }
      if (graph(reconstruct_family(make_top_triple(top.n, top.k, top.generators, moved))) != family) {
        tally.fail(i, describe_case(Verdict::fail("perturbing images inside K changed the structure")));
        continue;
      }
      // Changing one image outside K must be rejected or change the structure.
      if (kernel.dim() < static_cast<std::size_t>(top.n) && !top.generators.empty()) {
        Vector w;
        do {
          w = random_vector(rng, static_cast<std::size_t>(top.n));
        } while (kernel.contains(w));
        moved = top.images;
        const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(moved.size()) - 1));
        for (std::size_t x = 0; x < w.size(); ++x) moved[j][x] += w[x];
        bool distinct = true;
        try {
          distinct = graph(reconstruct_family(make_top_triple(top.n, top.k, top.generators, moved))) != family;
        } catch (const DomainError&) {
        }
        if (!distinct) {
          tally.fail(i, describe_case(Verdict::fail("perturbing an image outside K left the structure unchanged")));
          continue;
        }
      }
      tally.pass();
    } catch (const DomainError& e) {
      tally.fail(i, describe_case(Verdict::fail(std::string("construction rejected: ") + e.what())));
    }
  }
  SuiteOutcome out = tally.finish(o.cases);
  out.verdict.with("generated_by_d1_alone", std::to_string(plain_generation));
  return out;
}

// ------------------------------------------------------- auxiliary lemma

SuiteOutcome auxiliary_suite(const SuiteOptions& o) {
  Tally tally("auxiliary-lemma");
  for (int i = 0; i < o.cases; ++i) {
    Rng rng(case_seed(o.seed, i));
    const int n = rng.uniform(2, 6);
    const int k = rng.uniform(1, std::min(4, n));
    const Ambient amb{n, SpaceKind::forms, k};
    std::vector<Vector> gens;
    const int count = rng.uniform(1, static_cast<int>(std::min<long long>(binomial(n, k), 4)));
    for (int j = 0; j < count; ++j) {
      // Sparse generators make proper subspaces likely.
      Vector v(amb.dim());
      const int terms = rng.uniform(1, 3);
      for (int t = 0; t < terms; ++t) v[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(v.size()) - 1))] = rng.uniform(-2, 2);
      gens.push_back(v);
    }
    const ConstSubspace s = ConstSubspace::span(amb, gens);
    std::string bad;
    for (int a = 1; a <= k && bad.empty(); ++a) {
      if (contraction_span(s, a) != annihilator_forms(annihilator_mv(s, a), a)) bad = std::to_string(a);
    }
    if (bad.empty()) {
      tally.pass();
    } else {
      tally.fail(i, Verdict::fail("contraction span differs from the double annihilator")
                        .with("n", std::to_string(n))
                        .with("k", std::to_string(k))
                        .with("a", bad));
    }
  }
  return tally.finish(o.cases);
}

// ------------------------------------------------------- graded Poisson

SuiteOutcome poisson_suite(const SuiteOptions& o) {
  const int n = o.param("n", 1), m = o.param("m", 1);
  FieldChart fc(n, m);
  PropertyOptions po;
  po.seed = o.seed;
  po.cases = o.cases;
  po.coefficient_degree = o.param("degree", 1);
  SuiteOutcome out{"poisson-properties", Verdict::pass(), o.cases};
  for (const auto& r : check_bracket_properties(canonical_structure(fc), po)) {
    if (out.verdict.status == Status::pass && r.verdict.status != Status::pass) {
      Verdict v = r.verdict;
      v.message = r.name + ": " + v.message;
      v.details.insert(v.details.begin(), {"property", r.name});
      out.verdict = std::move(v);
    } else if (r.verdict.status == Status::fail && out.verdict.status != Status::fail) {
      out.verdict.status = Status::fail;
    }
    out.verdict.with(r.name, std::string(to_string(r.verdict.status)) + " (" + std::to_string(r.instances) + ")");
  }
  out.verdict.with("n", std::to_string(n)).with("m", std::to_string(m));
  return out;
}

// ------------------------------------------------------------- currents

// Sum of parameter * monomial over all monomials of degree <= d in `vars`.
struct Generic {
  std::vector<std::string> names;
  std::vector<Exponent> monomials;  // over the chart coordinates
};

Generic generic_shape(const std::string& prefix, std::size_t ncoords, const std::vector<int>& vars, int d) {
  Generic g;
  std::vector<Exponent> local = monomials_up_to(vars.size(), vars.size(), d);
  for (std::size_t j = 0; j < local.size(); ++j) {
    Exponent e(ncoords, 0);
    for (std::size_t v = 0; v < vars.size(); ++v) e[static_cast<std::size_t>(vars[v])] = local[j][v];
    g.monomials.push_back(e);
    g.names.push_back(prefix + "_" + std::to_string(j));
  }
  return g;
}

Polynomial generic_poly(const ChartPtr& chart, const Generic& g) {
  Polynomial p = chart->zero();
  for (std::size_t j = 0; j < g.names.size(); ++j) {
    Exponent e = g.monomials[j];
    e.resize(chart->nvars(), 0);
    ++e[*chart->index_of(g.names[j])];
    p.add_term(e, 1);
  }
  return p;
}

// Local bracket formula without the divergence term of B.
Form bracket_without_divergence(const FieldChart& fc, const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                     const Polynomial& h) {
  Polynomial f = fc.full()->zero();
  for (int mu = 0; mu < fc.n(); ++mu) {
    for (int i = 0; i < fc.m(); ++i) {
      f += a[static_cast<std::size_t>(i)].derivative(static_cast<std::size_t>(fc.x(mu))) * fc.var(fc.pm(mu, i));
    }
    for (int j = 0; j < fc.m(); ++j) {
      Polynomial inner = b[static_cast<std::size_t>(mu)].derivative(static_cast<std::size_t>(fc.y(j)));
      for (int i = 0; i < fc.m(); ++i) {
        inner += a[static_cast<std::size_t>(i)].derivative(static_cast<std::size_t>(fc.y(j))) * fc.var(fc.pm(mu, i));
      }
      f += h.derivative(static_cast<std::size_t>(fc.pm(mu, j))) * inner;
    }
  }
  for (int i = 0; i < fc.m(); ++i) {
    f -= h.derivative(static_cast<std::size_t>(fc.y(i))) * a[static_cast<std::size_t>(i)];
  }
  return f * dn_x(fc);
}

SuiteOutcome currents_suite(const SuiteOptions& o) {
  const int n = o.param("n", 2), m = o.param("m", 1), d = o.param("degree", 2);
  const int ncoords = n + m + n * m + 1;
  const std::vector<int> xy = range_vars(0, n + m);
  const std::vector<int> xyp = range_vars(0, n + m + n * m);
  std::vector<Generic> ga, gb;
  std::vector<std::string> params;
  for (int i = 0; i < m; ++i) ga.push_back(generic_shape("a" + std::to_string(i + 1), ncoords, xy, d));
  for (int mu = 0; mu < n; ++mu) gb.push_back(generic_shape("b" + std::to_string(mu + 1), ncoords, xy, d));
  const Generic gh = generic_shape("h", ncoords, xyp, d);
  for (const auto* group : {&ga, &gb}) {
    for (const auto& g : *group) params.insert(params.end(), g.names.begin(), g.names.end());
  }
  params.insert(params.end(), gh.names.begin(), gh.names.end());

  FieldChart fc(n, m, params);
  std::vector<Polynomial> a, b;
  for (const auto& g : ga) a.push_back(generic_poly(fc.full(), g));
  for (const auto& g : gb) b.push_back(generic_poly(fc.full(), g));
  const Polynomial h = generic_poly(fc.full(), gh);

  SuiteOutcome out{"currents-symbolic", Verdict::pass(), 1};
  const Form alpha = restricted_observable(fc, a, b);
  const Form bracket = current_bracket_h(fc, alpha, h);
  Polynomial divergence = fc.full()->zero();
  for (int mu = 0; mu < n; ++mu) divergence += b[static_cast<std::size_t>(mu)].derivative(static_cast<std::size_t>(fc.x(mu)));
  const Form div_term = divergence * dn_x(fc);
  const Form partial_sum = bracket_without_divergence(fc, a, b, h);

  if (observable_field(fc, alpha) != restricted_field(fc, a, b)) {
    out.verdict = Verdict::fail("solved field differs from the closed-form field");
  } else if (bracket != restricted_current_bracket(fc, a, b, h)) {
    out.verdict = Verdict::fail("bracket differs from the closed form");
  } else if (bracket != partial_sum + div_term) {
    out.verdict = Verdict::fail("bracket differs from the local formula plus the divergence term")
                      .with("difference", (bracket - partial_sum - div_term).to_string());
  }
  out.verdict.with("n", std::to_string(n))
      .with("m", std::to_string(m))
      .with("parameters", std::to_string(params.size()))
      .with("divergence_term_needed", (bracket - partial_sum).is_zero() ? "no" : "yes");
  return out;
}

struct RestrictedSample {
  std::vector<Polynomial> a, b;
  Form form;
};

RestrictedSample random_restricted(Rng& rng, const FieldChart& fc, int degree) {
  RestrictedSample s;
  const std::vector<int> xy = range_vars(0, fc.n() + fc.m());
  for (int i = 0; i < fc.m(); ++i) s.a.push_back(poly_in(rng, fc.full(), xy, degree, 3));
  for (int mu = 0; mu < fc.n(); ++mu) s.b.push_back(poly_in(rng, fc.full(), xy, degree, 3));
  s.form = restricted_observable(fc, s.a, s.b);
  return s;
}

std::pair<int, int> field_dims(Rng& rng, const SuiteOptions& o) {
  const int n = o.param("n", 0), m = o.param("m", 0);
  return {n > 0 ? n : rng.uniform(1, 3), m > 0 ? m : rng.uniform(1, 2)};
}

SuiteOutcome antirep_suite_impl(const SuiteOptions& o) {
  Tally tally("antirep");
  const int degree = o.param("degree", 2);
  int p_dependent = 0;
  for (int i = 0; i < o.cases; ++i) {
    Rng rng(case_seed(o.seed, i));
    const auto [n, m] = field_dims(rng, o);
    FieldChart fc(n, m);
    const auto a = random_restricted(rng, fc, degree);
    const auto b = random_restricted(rng, fc, degree);
    const auto c = random_restricted(rng, fc, degree);
    const Polynomial f = poly_in(rng, fc.full(), range_vars(0, static_cast<int>(fc.full()->dim())), degree, 4);
    if (f.depends_on(static_cast<std::size_t>(fc.p()))) ++p_dependent;
    const Form eta = f * dn_x(fc);
    const IdentityCheck check = antirep_check(fc, a.form, b.form, eta);
    if (!check.verdict.passed()) {
      Verdict v = check.verdict;
      tally.fail(i, v.with("alpha", a.form.to_string()).with("beta", b.form.to_string()).with("eta", eta.to_string()));
      continue;
    }
    const Form jac = observable_jacobi(fc, a.form, b.form, c.form);
    if (!jac.is_zero()) {
      tally.fail(i, Verdict::fail("Jacobi identity fails for the observable bracket").with("defect", jac.to_string()));
      continue;
    }
    tally.pass();
  }
  SuiteOutcome out = tally.finish(o.cases);
  out.verdict.with("p_dependent_eta", std::to_string(p_dependent));
  return out;
}

// ---------------------------------------------------------- conservation

SuiteOutcome conservation_suite_impl(const SuiteOptions& o) {
  Tally tally("conservation");
  const int degree = o.param("degree", 2);
  for (int i = 0; i < o.cases; ++i) {
    Rng rng(case_seed(o.seed, i));
    const auto [n, m] = field_dims(rng, o);
    const std::vector<int> xy = range_vars(0, n + m);
    const std::vector<int> xs = range_vars(0, n);

    // A constructed solution of a momentum-linear system.
    {
      FieldChart fc(n, m);
      std::vector<Polynomial> phi;
      for (int j = 0; j < m; ++j) phi.push_back(poly_in(rng, fc.base(), xs, degree, 3));
      const Polynomial potential = poly_in(rng, fc.full(), xy, degree, 3);
      const auto sol = construct_hdw_solution(fc, phi, potential);
      const auto alpha = random_restricted(rng, fc, degree);
      const ConservationReport rep = conservation_check(fc, sol.psi, alpha.form, sol.h);
      if (!rep.is_solution || !rep.defect.is_zero() || !rep.verdict.passed()) {
        Verdict v = Verdict::fail(rep.is_solution ? "nonzero defect on a constructed solution"
                                                  : "constructed section is not a solution");
        tally.fail(i, v.with("H", sol.h.to_string(fc.full()->variable_names())).with("alpha", alpha.form.to_string()));
        continue;
      }
    }

    // A fully symbolic section: the defect must factor through the residuals.
    {
      std::vector<Generic> gy, gp;
      std::vector<std::string> params;
      for (int j = 0; j < m; ++j) gy.push_back(generic_shape("s" + std::to_string(j + 1), static_cast<std::size_t>(n), xs, 2));
      for (int mu = 0; mu < n; ++mu) {
        for (int j = 0; j < m; ++j) {
          gp.push_back(generic_shape("r" + std::to_string(mu + 1) + std::to_string(j + 1), static_cast<std::size_t>(n), xs, 2));
        }
      }
      for (const auto* group : {&gy, &gp}) {
        for (const auto& g : *group) params.insert(params.end(), g.names.begin(), g.names.end());
      }
      FieldChart fc(n, m, params);
      CandidateSolution psi;
      for (const auto& g : gy) psi.y.push_back(generic_poly(fc.base(), g));
      psi.pm.resize(static_cast<std::size_t>(n));
      for (int mu = 0; mu < n; ++mu) {
        for (int j = 0; j < m; ++j) {
          psi.pm[static_cast<std::size_t>(mu)].push_back(generic_poly(fc.base(), gp[static_cast<std::size_t>(mu * m + j)]));
        }
      }
      Polynomial h = poly_in(rng, fc.full(), xy, degree, 3);
      for (int mu = 0; mu < n; ++mu) {
        for (int j = 0; j < m; ++j) h += poly_in(rng, fc.full(), xy, 1, 2) * fc.var(fc.pm(mu, j));
      }
      const auto alpha = random_restricted(rng, fc, degree);
      const ConservationReport rep = conservation_check(fc, psi, alpha.form, h);
      if (!rep.verdict.passed()) {
        Verdict v = rep.verdict;
        tally.fail(i, v.with("H", h.to_string(fc.full()->variable_names())).with("alpha", alpha.form.to_string()));
        continue;
      }
      // The intrinsic equations agree with the local ones.
      const auto intrinsic = intrinsic_residual(fc, psi, h);
      const auto local = hdw_residual(fc, psi, h);
      bool agree = true;
      for (int j = 0; j < m; ++j) {
        agree = agree && intrinsic[static_cast<std::size_t>(fc.y(j))] == -local.field[static_cast<std::size_t>(j)];
        for (int mu = 0; mu < n; ++mu) {
          agree = agree && intrinsic[static_cast<std::size_t>(fc.pm(mu, j))] ==
                               local.momentum[static_cast<std::size_t>(mu)][static_cast<std::size_t>(j)];
        }
      }
      if (!agree) {
        tally.fail(i, Verdict::fail("intrinsic and local field equations disagree")
                          .with("H", h.to_string(fc.full()->variable_names())));
        continue;
      }
    }
    tally.pass();
  }
  return tally.finish(o.cases);
}

using SuiteFn = std::function<SuiteOutcome(const SuiteOptions&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"sn-identities", sn_suite},
      {"graph-theorem", graph_suite},
      {"linear-roundtrip", linear_suite},
      {"auxiliary-lemma", auxiliary_suite},
      {"poisson-properties", poisson_suite},
      {"currents-symbolic", currents_suite},
      {"antirep", antirep_suite_impl},
      {"conservation", conservation_suite_impl},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

SuiteOutcome run_suite(const std::string& name, const SuiteOptions& options) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) return fn(options);
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

SuiteOutcome sn_identity_suite(const SuiteOptions& options) { return sn_suite(options); }
SuiteOutcome graph_theorem_suite(const SuiteOptions& options) { return graph_suite(options); }
SuiteOutcome linear_roundtrip_suite(const SuiteOptions& options) { return linear_suite(options); }
SuiteOutcome auxiliary_lemma_suite(const SuiteOptions& options) { return auxiliary_suite(options); }
SuiteOutcome poisson_properties_suite(const SuiteOptions& options) { return poisson_suite(options); }
SuiteOutcome currents_symbolic_suite(const SuiteOptions& options) { return currents_suite(options); }
SuiteOutcome antirep_suite(const SuiteOptions& options) { return antirep_suite_impl(options); }
SuiteOutcome conservation_suite(const SuiteOptions& options) { return conservation_suite_impl(options); }

}  // namespace gradedirac
