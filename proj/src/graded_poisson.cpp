#include "gradedirac/graded_poisson.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "gradedirac/sparse.hpp"
#include "gradedirac/subspace.hpp"

namespace gradedirac {

namespace {

bool constant_data(const std::vector<Form>& forms, const std::vector<MultiVector>& mvs) {
  for (const auto& f : forms) {
    if (!f.has_constant_coefficients()) return false;
  }
  for (const auto& m : mvs) {
    if (!m.has_constant_coefficients()) return false;
  }
  return true;
}

}  // namespace

GradedPoissonStructure GradedPoissonStructure::extend_from_top(ChartPtr chart, int k, std::vector<Form> top,
                                                               std::vector<MultiVector> images) {
  if (k < 1) throw DomainError("k must be at least 1");
  if (top.size() != images.size()) throw std::invalid_argument("one image per generator expected");
  for (std::size_t i = 0; i < top.size(); ++i) {
    if (top[i].degree() != k) throw DomainError("top generators must be k-forms");
    if (images[i].degree() != 1) throw DomainError("top images must be vector fields");
    if (!same_chart(top[i].chart(), chart) || !same_chart(images[i].chart(), chart))
      throw std::invalid_argument("generator on a different chart");
  }
  GradedPoissonStructure p(chart, k);
  const int n = static_cast<int>(chart->dim());
  for (int a = 1; a <= k; ++a) {
    Level lvl{a, {}, {}};
    if (a == k) {
      lvl.generators = top;
      lvl.images = images;
    } else {
      for (std::size_t i = 0; i < top.size(); ++i) {
        for (const auto& b : blades_of_degree(n, k - a)) {
          MultiVector u = MultiVector::basis(chart, b);
          Form g = interior(u, top[i]);
          if (g.is_zero()) continue;
          lvl.generators.push_back(std::move(g));
          lvl.images.push_back(wedge(images[i], u));
        }
      }
    }
    p.levels_.push_back(std::move(lvl));
  }
  if (constant_data(top, images)) {
    std::vector<Vector> gv, iv;
    for (std::size_t i = 0; i < top.size(); ++i) {
      gv.push_back(to_vector(top[i]));
      iv.push_back(to_vector(images[i]));
    }
    p.linear_ = reconstruct_family(make_top_triple(n, k, gv, iv));
  } else {
    // Polynomial data: validate the top triple pointwise.
    for (const auto& pt : sample_points(chart, 17, 3)) {
      std::vector<Vector> gv, iv;
      for (std::size_t i = 0; i < top.size(); ++i) {
        gv.push_back(to_vector_at(top[i], pt));
        iv.push_back(to_vector_at(images[i], pt));
      }
      reconstruct_family(make_top_triple(n, k, gv, iv));
    }
  }
  return p;
}

GradedPoissonStructure GradedPoissonStructure::from_form(const Form& omega) {
  const int k = omega.degree() - 1;
  std::vector<Form> top;
  std::vector<MultiVector> images;
  for (std::size_t i = 0; i < omega.chart()->dim(); ++i) {
    MultiVector x = partial(omega.chart(), static_cast<int>(i));
    top.push_back(interior(x, omega));
    images.push_back(x);
  }
  return extend_from_top(omega.chart(), k, std::move(top), std::move(images));
}

const GradedPoissonStructure::Level& GradedPoissonStructure::level(int a) const {
  if (a < 1 || a > k_) throw DomainError("level out of range");
  return levels_[static_cast<std::size_t>(a - 1)];
}

const LinearGradedDirac& GradedPoissonStructure::linear() const {
  if (!linear_) throw DomainError("structure does not have constant coefficients");
  return *linear_;
}

GradedPoissonStructure::SharpResult GradedPoissonStructure::sharp(const Form& theta,
                                                                  const SpanOptions& options) const {
  const int a = theta.degree();
  if (a < 1 || a > k_) throw DomainError("sharp is only defined on levels 1..k");
  const int n = static_cast<int>(chart_->dim());
  const int out_degree = k_ + 1 - a;
  SharpResult res;
  if (linear_) {
    const auto& sh = linear_->level(a).sharp;
    BladeBasis forms(n, a), out(n, out_degree);
    std::map<Exponent, Vector, ExponentOrder> by_monomial;
    for (const auto& [b, c] : theta.terms()) {
      for (const auto& [e, q] : c.terms()) {
        auto& v = by_monomial[e];
        if (v.empty()) v.assign(forms.size(), 0);
        v[forms.index(b)] = q;
      }
    }
    MultiVector value(chart_, out_degree);
    for (const auto& [e, v] : by_monomial) {
      if (!sh.domain().contains(v)) {
        res.status = Membership::not_member;
        res.witness = "coefficient of " + Polynomial::monomial(e, 1).to_string(chart_->variable_names()) +
                      " is not in S^" + std::to_string(a);
        return res;
      }
      Vector img = sh.apply(v);
      for (std::size_t i = 0; i < img.size(); ++i) {
        if (img[i] != 0) value.add_term(out[i], Polynomial::monomial(e, img[i]));
      }
    }
    res.status = Membership::member;
    res.value = std::move(value);
    return res;
  }
  const auto& lvl = level(a);
  PolyVector target;
  for (const auto& b : blades_of_degree(n, a)) target.push_back(theta.coefficient(b));
  std::vector<PolyVector> gens;
  for (const auto& g : lvl.generators) {
    PolyVector v;
    for (const auto& b : blades_of_degree(n, a)) v.push_back(g.coefficient(b));
    gens.push_back(std::move(v));
  }
  SpanOptions opts = options;
  if (opts.sample_points.empty()) opts.sample_points = sample_points(chart_, 5, 4);
  SpanResult m = express_in_span(chart_, target, gens, opts);
  res.status = m.status;
  res.witness = m.witness;
  if (m.status == Membership::member) {
    MultiVector value(chart_, out_degree);
    for (std::size_t i = 0; i < gens.size(); ++i) value += m.coefficients[i] * lvl.images[i];
    res.value = std::move(value);
  }
  return res;
}

Verdict GradedPoissonStructure::check_nondegenerate(const std::vector<std::vector<Rational>>& points) const {
  if (linear_) {
    const auto dim = linear_->K(1).dim();
    if (dim == 0) return Verdict::pass();
    return Verdict::fail("K_1 is nonzero").with("dim_K1", std::to_string(dim));
  }
  const int n = static_cast<int>(chart_->dim());
  auto pts = points.empty() ? sample_points(chart_, 11, 4) : points;
  for (const auto& pt : pts) {
    std::vector<Vector> gv;
    for (const auto& g : level(k_).generators) gv.push_back(to_vector_at(g, pt));
    auto s = ConstSubspace::span({n, SpaceKind::forms, k_}, gv);
    if (annihilator_mv(s, 1).dim() != 0) return Verdict::fail("K_1 is nonzero at a sample point");
  }
  return Verdict::pass();
}

int hamiltonian_degree(const GradedPoissonStructure& p, const HamiltonianForm& h) { return p.k() - h.level; }

HamiltonianCheck is_hamiltonian(const Form& alpha, const GradedPoissonStructure& p, const SpanOptions& options) {
  const int a = alpha.degree() + 1;
  if (a > p.k()) throw DomainError("forms of degree >= k have no level in the structure");
  auto sh = p.sharp(exterior_derivative(alpha), options);
  HamiltonianCheck res;
  res.status = sh.status;
  res.witness = sh.witness;
  if (sh.value) res.form = HamiltonianForm{alpha, a, *sh.value};
  return res;
}

Form poisson_bracket(const GradedPoissonStructure& p, const HamiltonianForm& alpha, const HamiltonianForm& beta) {
  const int k = p.k();
  if (alpha.level + beta.level < k + 1) throw DomainError("bracket degree underflow: a + b < k + 1");
  const int deg_beta = k - beta.level;
  Form r = interior(beta.witness, exterior_derivative(alpha.form));
  return deg_beta % 2 ? -r : r;
}

HamiltonianForm poisson_bracket_h(const GradedPoissonStructure& p, const HamiltonianForm& alpha,
                                  const HamiltonianForm& beta) {
  Form f = poisson_bracket(p, alpha, beta);
  return HamiltonianForm{f, alpha.level + beta.level - p.k(), -schouten_nijenhuis(alpha.witness, beta.witness)};
}

MultiVector hamiltonian_vector_field(const GradedPoissonStructure& p, const HamiltonianForm& alpha) {
  if (alpha.level != p.k()) throw DomainError("Hamiltonian vector fields need (k-1)-forms");
  return alpha.witness;
}

HamiltonianSampler::HamiltonianSampler(const GradedPoissonStructure& p, int level, int degree,
                                       std::vector<bool> allowed)
    : p_(&p), level_(level) {
  const auto& chart = p.chart();
  const int n = static_cast<int>(chart->dim());
  const std::size_t nv = chart->nvars();
  if (allowed.empty()) allowed.assign(chart->dim(), true);
  const auto& s_a = p.linear().S(level);
  RowSpace orth = s_a.space().orthogonal();
  BladeBasis src(n, level - 1), dst(n, level);
  // Monomials in the allowed coordinates only.
  std::vector<Exponent> monos;
  for (const auto& e : monomials_up_to(nv, chart->dim(), degree)) {
    bool ok = true;
    for (std::size_t i = 0; i < chart->dim(); ++i) ok = ok && (e[i] == 0 || allowed[i]);
    if (ok) monos.push_back(e);
  }
  const std::size_t nunk = src.size() * monos.size();
  // Linear expressions for the coefficients of d alpha.
  std::map<Exponent, std::map<std::size_t, SparseRow>, ExponentOrder> dcoef;
  for (std::size_t bi = 0; bi < src.size(); ++bi) {
    for (std::size_t mi = 0; mi < monos.size(); ++mi) {
      const std::size_t col = bi * monos.size() + mi;
      const auto& e = monos[mi];
      for (int j = 0; j < n; ++j) {
        if (e[static_cast<std::size_t>(j)] == 0) continue;
        auto m = merge_blades({j}, src[bi]);
        if (!m) continue;
        Exponent f = e;
        --f[static_cast<std::size_t>(j)];
        dcoef[f][dst.index(m->blade)].emplace_back(col, Rational(m->sign * e[static_cast<std::size_t>(j)]));
      }
    }
  }
  SparseEliminator elim(nunk);
  for (const auto& [mono, rows] : dcoef) {
    for (std::size_t w = 0; w < orth.dim(); ++w) {
      SparseRow eq;
      for (const auto& [b, row] : rows) {
        const Rational& wb = orth.basis()(w, b);
        if (wb == 0) continue;
        for (const auto& [col, v] : row) eq.emplace_back(col, wb * v);
      }
      if (!eq.empty()) elim.add_equation(std::move(eq));
    }
  }
  for (const auto& v : elim.nullspace()) {
    Form f(chart, level - 1);
    for (std::size_t bi = 0; bi < src.size(); ++bi) {
      for (std::size_t mi = 0; mi < monos.size(); ++mi) {
        const Rational& c = v[bi * monos.size() + mi];
        if (c != 0) f.add_term(src[bi], Polynomial::monomial(monos[mi], c));
      }
    }
    if (!is_closed(f)) nontrivial_.push_back(f);
    basis_.push_back(std::move(f));
  }
}

HamiltonianForm HamiltonianSampler::make(const Form& alpha) const {
  auto h = is_hamiltonian(alpha, *p_);
  if (!h.form) throw std::logic_error("sampled form is not Hamiltonian");
  return *h.form;
}

HamiltonianForm HamiltonianSampler::draw(Rng& rng) const {
  const auto& pool = nontrivial_.empty() ? basis_ : nontrivial_;
  if (pool.empty()) throw DomainError("no Hamiltonian forms at this level and degree");
  Form f(p_->chart(), level_ - 1);
  const int terms = rng.uniform(1, 2);
  for (int t = 0; t < terms; ++t) {
    int c = rng.uniform(1, 2) * (rng.coin() ? 1 : -1);
    f += pool[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(pool.size()) - 1))].scaled(Rational(c));
  }
  if (!basis_.empty() && rng.uniform(0, 3) == 0) {
    f += basis_[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(basis_.size()) - 1))];
  }
  return make(f);
}

std::vector<Form> closed_section_search(const std::vector<Form>& generators, int bound) {
  if (generators.empty()) return {};
  const auto& chart = generators.front().chart();
  const int a = generators.front().degree();
  for (const auto& g : generators) {
    if (g.degree() != a || !same_chart(g.chart(), chart)) throw DomainError("generators must share chart and degree");
  }
  const auto monos = monomials_up_to(chart->nvars(), chart->dim(), bound);
  const std::size_t nunk = generators.size() * monos.size();
  std::map<std::pair<Blade, Exponent>, SparseRow> rows;
  std::vector<Form> candidates;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = 0; j < monos.size(); ++j) {
      Form t = Polynomial::monomial(monos[j], 1) * generators[i];
      candidates.push_back(t);
      const Form dt = exterior_derivative(t);
      for (const auto& [b, c] : dt.terms()) {
        for (const auto& [e, q] : c.terms()) rows[{b, e}].emplace_back(i * monos.size() + j, q);
      }
    }
  }
  SparseEliminator elim(nunk);
  for (auto& [key, row] : rows) elim.add_equation(std::move(row));
  // Reduce the solutions to a basis of the image in the space of forms.
  std::map<std::pair<Blade, Exponent>, std::size_t> coord;
  std::vector<Form> sols;
  for (const auto& v : elim.nullspace()) {
    Form f(chart, a);
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (v[c] != 0) f += candidates[c].scaled(v[c]);
    }
    if (f.is_zero()) continue;
    for (const auto& [b, c] : f.terms()) {
      for (const auto& [e, q] : c.terms()) coord.try_emplace({b, e}, coord.size());
    }
    sols.push_back(std::move(f));
  }
  if (sols.empty()) return {};
  std::vector<Vector> vecs;
  std::vector<std::pair<Blade, Exponent>> keys(coord.size());
  for (const auto& [key, idx] : coord) keys[idx] = key;
  for (const auto& f : sols) {
    Vector v(coord.size(), 0);
    for (const auto& [b, c] : f.terms()) {
      for (const auto& [e, q] : c.terms()) v[coord.at({b, e})] = q;
    }
    vecs.push_back(std::move(v));
  }
  RowSpace span = RowSpace::span(vecs, coord.size());
  std::vector<Form> out;
  for (std::size_t r = 0; r < span.dim(); ++r) {
    Form f(chart, a);
    for (std::size_t c = 0; c < coord.size(); ++c) {
      const Rational& q = span.basis()(r, c);
      if (q != 0) f.add_term(keys[c].first, Polynomial::monomial(keys[c].second, q));
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<MultiVector> characteristic_distribution(const GradedPoissonStructure& p) {
  std::vector<MultiVector> out;
  for (const auto& x : p.level(p.k()).images) {
    if (!x.is_zero()) out.push_back(x);
  }
  if (p.constant_coefficients()) {
    const auto& k1 = p.linear().K(1);
    for (std::size_t i = 0; i < k1.dim(); ++i) out.push_back(multivector_from_vector(p.chart(), 1, k1.basis_vector(i)));
  }
  return out;
}

namespace {

struct PointData {
  std::vector<Vector> generators;  // S^k generators at the point
  std::vector<Vector> images;      // their sharp images
  ConstSubspace k1;
};

PointData point_data(const GradedPoissonStructure& p, const std::vector<Rational>& point) {
  const int n = static_cast<int>(p.chart()->dim());
  PointData d;
  for (const auto& g : p.level(p.k()).generators) d.generators.push_back(to_vector_at(g, point));
  for (const auto& x : p.level(p.k()).images) d.images.push_back(to_vector_at(x, point));
  d.k1 = annihilator_mv(ConstSubspace::span({n, SpaceKind::forms, p.k()}, d.generators), 1);
  return d;
}

}  // namespace

RowSpace distribution_at(const GradedPoissonStructure& p, const std::vector<Rational>& point) {
  PointData d = point_data(p, point);
  std::vector<Vector> rows = d.images;
  auto kb = d.k1.basis();
  rows.insert(rows.end(), kb.begin(), kb.end());
  return RowSpace::span(rows, p.chart()->dim());
}

Rational evaluate_form(int n, int degree, const Vector& form, const std::vector<Vector>& vectors) {
  if (static_cast<int>(vectors.size()) != degree) throw std::invalid_argument("need one vector per slot");
  Vector cur = form;
  int deg = degree;
  for (const auto& v : vectors) {
    cur = contraction_pairing(n, 1, deg).apply(v, cur);
    --deg;
  }
  return cur.empty() ? Rational(0) : cur[0];
}

LeafForm leaf_form_at(const GradedPoissonStructure& p, const std::vector<Rational>& point) {
  const int n = static_cast<int>(p.chart()->dim());
  const int k = p.k();
  PointData d = point_data(p, point);
  RowSpace e = distribution_at(p, point);
  const std::size_t r = e.dim();
  const std::size_t m = d.generators.size();
  auto kb = d.k1.basis();
  // Columns: images of the generators, then K_1.
  Matrix cols(static_cast<std::size_t>(n), m + kb.size());
  for (std::size_t j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) cols(static_cast<std::size_t>(i), j) = d.images[j][static_cast<std::size_t>(i)];
  }
  for (std::size_t j = 0; j < kb.size(); ++j) {
    for (int i = 0; i < n; ++i) cols(static_cast<std::size_t>(i), m + j) = kb[j][static_cast<std::size_t>(i)];
  }
  auto combine = [&](const Vector& c) {
    Vector alpha(static_cast<std::size_t>(binomial(n, k)), 0);
    for (std::size_t j = 0; j < m; ++j) {
      if (c[j] == 0) continue;
      for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] += c[j] * d.generators[j][i];
    }
    return alpha;
  };
  LeafForm out;
  out.k = k;
  std::vector<Vector> preimages;
  for (std::size_t i = 0; i < r; ++i) {
    out.basis.push_back(e.basis_vector(i));
    auto c = solve(cols, out.basis.back());
    if (!c) throw std::logic_error("distribution vector without a preimage");
    preimages.push_back(combine(*c));
  }
  // Forms whose image lies in K_1 must vanish on E.
  for (const auto& rel : nullspace(cols)) {
    Vector beta = combine(rel);
    if (is_zero(beta)) continue;
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    while (true) {
      std::vector<Vector> vs;
      for (auto t : idx) vs.push_back(out.basis[t]);
      if (evaluate_form(n, k, beta, vs) != 0) throw DomainError("leaf form depends on the choice of preimage");
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == r) idx[pos++] = 0;
      if (pos == idx.size() || r == 0) break;
    }
  }
  auto value = [&](const std::vector<std::size_t>& t) {
    std::vector<Vector> vs;
    for (std::size_t s = 1; s < t.size(); ++s) vs.push_back(out.basis[t[s]]);
    return evaluate_form(n, k, preimages[t[0]], vs);
  };
  if (r == 0) return out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k + 1), 0);
  while (true) {
    Rational v = value(idx);
    std::vector<int> as_int(idx.begin(), idx.end());
    auto sb = canonical_blade(as_int);
    if (!sb) {
      if (v != 0) throw DomainError("leaf form is not alternating");
    } else {
      const Rational expected = v * sb->sign;
      auto [it, fresh] = out.coefficients.emplace(sb->blade, expected);
      if (!fresh && it->second != expected) throw DomainError("leaf form is not alternating");
    }
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == r) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  std::erase_if(out.coefficients, [](const auto& kv) { return kv.second == 0; });
  return out;
}

GradedPoissonStructure foliation_to_structure(const ChartPtr& chart, const std::vector<int>& leaf,
                                              const Form& leaf_form) {
  const int n = static_cast<int>(chart->dim());
  const int k = leaf_form.degree() - 1;
  if (k < 1) throw DomainError("leaf form must have degree >= 2");
  if (!leaf_form.has_constant_coefficients()) throw DomainError("leaf form must have constant coefficients");
  if (!is_closed(leaf_form)) throw DomainError("leaf form is not closed");
  std::set<int> in_leaf(leaf.begin(), leaf.end());
  for (const auto& [b, c] : leaf_form.terms()) {
    for (int i : b) {
      if (!in_leaf.count(i)) throw DomainError("leaf form involves a transverse direction");
    }
  }
  std::vector<Form> top;
  std::vector<MultiVector> images;
  std::vector<Vector> flats;
  for (int l : leaf) {
    MultiVector x = partial(chart, l);
    Form g = interior(x, leaf_form);
    if (g.is_zero()) throw DomainError("leaf form is degenerate on the leaves");
    flats.push_back(to_vector(g));
    top.push_back(std::move(g));
    images.push_back(std::move(x));
  }
  if (rank(Matrix::from_rows(flats, flats.front().size())) != leaf.size())
    throw DomainError("leaf form is degenerate on the leaves");
  std::vector<int> transverse;
  for (int i = 0; i < n; ++i) {
    if (!in_leaf.count(i)) transverse.push_back(i);
  }
  for (const auto& tb : blades_of_degree(static_cast<int>(transverse.size()), k)) {
    std::vector<int> idx;
    for (int t : tb) idx.push_back(transverse[static_cast<std::size_t>(t)]);
    top.push_back(Form::basis(chart, idx));
    images.push_back(MultiVector(chart, 1));
  }
  auto p = GradedPoissonStructure::extend_from_top(chart, k, std::move(top), std::move(images));
  Verdict nd = p.check_nondegenerate();
  if (!nd.passed()) {
    throw DomainError("foliation gives a degenerate structure: " + std::to_string(transverse.size()) +
                      " transverse directions cannot support k = " + std::to_string(k));
  }
  return p;
}

}  // namespace gradedirac
