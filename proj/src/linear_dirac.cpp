#include "gradedirac/linear_dirac.hpp"

#include <stdexcept>

namespace gradedirac {

namespace {

std::string render(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + "]";
}

Vector unit(std::size_t dim, std::size_t i) {
  Vector v(dim, 0);
  v[i] = 1;
  return v;
}

Vector axpy(Vector y, const Rational& a, const Vector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (x[i] != 0) y[i] += a * x[i];
  }
  return y;
}

Vector contract(int n, int p, const Vector& u, int a, const Vector& alpha) {
  return contraction_pairing(n, p, a).apply(u, alpha);
}

}  // namespace

LevelSpace::LevelSpace(int n, int k, int p) : LevelSpace(n, k, p, RowSpace(0)) {
  space_ = RowSpace(mv_dim() + form_dim());
}

LevelSpace::LevelSpace(int n, int k, int p, RowSpace space) : n_(n), k_(k), p_(p), space_(std::move(space)) {
  if (p < 1 || p > k) throw DomainError("level p must satisfy 1 <= p <= k");
  if (space_.ambient_dim() == 0) space_ = RowSpace(mv_dim() + form_dim());
  if (space_.ambient_dim() != mv_dim() + form_dim()) throw std::invalid_argument("level space has wrong ambient");
}

LevelSpace LevelSpace::span(int n, int k, int p, const std::vector<std::pair<Vector, Vector>>& pairs) {
  LevelSpace l(n, k, p);
  std::vector<Vector> rows;
  for (const auto& [u, a] : pairs) rows.push_back(l.join(u, a));
  l.space_ = RowSpace::span(rows, l.mv_dim() + l.form_dim());
  return l;
}

Vector LevelSpace::join(const Vector& u, const Vector& alpha) const {
  if (u.size() != mv_dim() || alpha.size() != form_dim()) throw std::invalid_argument("pair has wrong shape");
  Vector x = u;
  x.insert(x.end(), alpha.begin(), alpha.end());
  return x;
}

std::pair<Vector, Vector> LevelSpace::split(const Vector& x) const {
  Vector u(x.begin(), x.begin() + static_cast<long>(mv_dim()));
  Vector a(x.begin() + static_cast<long>(mv_dim()), x.end());
  return {u, a};
}

std::vector<std::pair<Vector, Vector>> LevelSpace::basis_pairs() const {
  std::vector<std::pair<Vector, Vector>> out;
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(split(space_.basis_vector(i)));
  return out;
}

ConstSubspace LevelSpace::multivector_part() const {
  std::vector<Vector> axes;
  for (std::size_t i = 0; i < mv_dim(); ++i) axes.push_back(unit(mv_dim() + form_dim(), i));
  RowSpace inter = space_.intersection(RowSpace::span(axes, mv_dim() + form_dim()));
  std::vector<Vector> parts;
  for (std::size_t i = 0; i < inter.dim(); ++i) parts.push_back(split(inter.basis_vector(i)).first);
  return ConstSubspace::span(mv_ambient(), parts);
}

ConstSubspace LevelSpace::form_projection() const {
  std::vector<Vector> parts;
  for (const auto& [u, a] : basis_pairs()) parts.push_back(a);
  return ConstSubspace::span(form_ambient(), parts);
}

bool LevelSpace::contains(const Vector& u, const Vector& alpha) const { return space_.contains(join(u, alpha)); }

SharpMap::SharpMap(ConstSubspace domain, ConstSubspace kernel, std::vector<Vector> images)
    : domain_(std::move(domain)), kernel_(std::move(kernel)), images_(std::move(images)) {
  if (images_.size() != domain_.dim()) throw std::invalid_argument("one image per domain basis vector expected");
}

Vector SharpMap::apply(const Vector& alpha) const {
  auto c = domain_.space().coordinates(alpha);
  if (!c) throw DomainError("sharp applied outside its domain");
  Vector out(kernel_.ambient().dim(), 0);
  for (std::size_t i = 0; i < c->size(); ++i) {
    if ((*c)[i] != 0) out = axpy(std::move(out), (*c)[i], images_[i]);
  }
  return out;
}

bool SharpMap::same_class(const Vector& a, const Vector& b) const {
  Vector d = a;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b[i];
  return kernel_.contains(d);
}

LinearGradedDirac::LinearGradedDirac(int n, int k, std::vector<GradedLevel> levels)
    : n_(n), k_(k), levels_(std::move(levels)) {
  if (static_cast<int>(levels_.size()) != k) throw std::invalid_argument("expected one level per a = 1..k");
  for (int a = 1; a <= k; ++a) {
    const auto& l = levels_[a - 1];
    if (l.a != a) throw std::invalid_argument("levels out of order");
    if (!(l.s.ambient() == Ambient{n, SpaceKind::forms, a})) throw std::invalid_argument("S^a has wrong ambient");
    if (!(l.k.ambient() == Ambient{n, SpaceKind::multivectors, k + 1 - a}))
      throw std::invalid_argument("K has wrong ambient");
  }
}

const GradedLevel& LinearGradedDirac::level(int a) const {
  if (a < 1 || a > k_) throw DomainError("level out of range");
  return levels_[a - 1];
}

LevelSpace graph_level(const LinearGradedDirac& s, int p) {
  const auto& lvl = s.level(s.k() + 1 - p);
  std::vector<std::pair<Vector, Vector>> pairs;
  for (std::size_t i = 0; i < lvl.s.dim(); ++i) pairs.emplace_back(lvl.sharp.images()[i], lvl.s.basis_vector(i));
  const Vector zero_form(lvl.s.ambient().dim(), 0);
  for (std::size_t i = 0; i < lvl.k.dim(); ++i) pairs.emplace_back(lvl.k.basis_vector(i), zero_form);
  return LevelSpace::span(s.n(), s.k(), p, pairs);
}

std::vector<LevelSpace> graph(const LinearGradedDirac& s) {
  std::vector<LevelSpace> out;
  for (int p = 1; p <= s.k(); ++p) out.push_back(graph_level(s, p));
  return out;
}

Vector graded_pairing_const(int n, int k, int p, const Vector& u, const Vector& alpha, int q, const Vector& v,
                            const Vector& beta) {
  Vector first = contract(n, p, u, k + 1 - q, beta);
  Vector second = contract(n, q, v, k + 1 - p, alpha);
  return axpy(std::move(first), -sign_power(p * q), second);
}

Verdict check_conditions(const LinearGradedDirac& s) {
  const int n = s.n(), k = s.k();
  for (int p = 1; p <= k; ++p) {
    for (int q = 1; p + q <= k + 1; ++q) {
      const auto& sq = s.S(k + 1 - q);
      if (s.K(p) != annihilator_mv(sq, p)) {
        return Verdict::fail("K_p differs from the annihilator of S^{k+1-q}")
            .with("p", std::to_string(p))
            .with("q", std::to_string(q));
      }
      const auto& lp = s.level(k + 1 - p);
      const auto& lq = s.level(k + 1 - q);
      for (std::size_t i = 0; i < lp.s.dim(); ++i) {
        for (std::size_t j = 0; j < lq.s.dim(); ++j) {
          const Vector& sa = lp.sharp.images()[i];
          const Vector& sb = lq.sharp.images()[j];
          Vector lhs = contract(n, p, sa, k + 1 - q, lq.s.basis_vector(j));
          Vector rhs = contract(n, q, sb, k + 1 - p, lp.s.basis_vector(i));
          if (lhs != axpy(Vector(rhs.size(), 0), sign_power(p * q), rhs)) {
            return Verdict::fail("graded skew-symmetry of sharp fails")
                .with("p", std::to_string(p))
                .with("q", std::to_string(q))
                .with("alpha", render(lp.s.basis_vector(i)))
                .with("beta", render(lq.s.basis_vector(j)));
          }
        }
      }
    }
  }
  return Verdict::pass();
}

Verdict check_isotropic(const LevelSpace& dp, const LevelSpace& dq) {
  const int n = dp.n(), k = dp.k(), p = dp.p(), q = dq.p();
  for (const auto& [u, a] : dp.basis_pairs()) {
    for (const auto& [v, b] : dq.basis_pairs()) {
      Vector pr = graded_pairing_const(n, k, p, u, a, q, v, b);
      if (!is_zero(pr)) {
        return Verdict::fail("not isotropic")
            .with("p", std::to_string(p))
            .with("q", std::to_string(q))
            .with("first", render(dp.join(u, a)))
            .with("second", render(dq.join(v, b)))
            .with("pairing", render(pr));
      }
    }
  }
  return Verdict::pass();
}

Verdict check_weak_lagrangian(const std::vector<LevelSpace>& family) {
  if (family.empty()) throw std::invalid_argument("empty family");
  const int k = family.front().k();
  if (static_cast<int>(family.size()) != k) throw std::invalid_argument("family needs D_1..D_k");
  for (int p = 1; p <= k; ++p) {
    if (family[p - 1].p() != p || family[p - 1].k() != k) throw std::invalid_argument("family levels out of order");
  }
  for (int p = 1; p <= k; ++p) {
    for (int q = 1; p + q <= k + 1; ++q) {
      Verdict v = check_isotropic(family[p - 1], family[q - 1]);
      if (!v.passed()) return v;
      ConstSubspace expected = annihilator_mv(family[p - 1].form_projection(), q);
      if (family[q - 1].multivector_part() != expected) {
        return Verdict::fail("D_q cap Vee^q differs from the annihilator of pr_2 D_p")
            .with("p", std::to_string(p))
            .with("q", std::to_string(q))
            .with("dim_intersection", std::to_string(family[q - 1].multivector_part().dim()))
            .with("dim_annihilator", std::to_string(expected.dim()));
      }
    }
  }
  return Verdict::pass();
}

Verdict check_weak_lagrangian(const LevelSpace& d1) {
  if (d1.p() != 1) throw std::invalid_argument("weak higher Dirac structures live at level 1");
  Verdict v = check_isotropic(d1, d1);
  if (!v.passed()) return v;
  if (d1.multivector_part() != annihilator_mv(d1.form_projection(), 1)) {
    return Verdict::fail("D cap V differs from the annihilator of pr_2 D");
  }
  return Verdict::pass();
}

namespace {

// Representatives u with (u, s) in D for each RREF basis vector s of pr_2 D.
SharpMap sharp_from_level(const LevelSpace& d) {
  ConstSubspace s = d.form_projection();
  auto pairs = d.basis_pairs();
  Matrix f(d.form_dim(), pairs.size());
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    for (std::size_t i = 0; i < d.form_dim(); ++i) f(i, r) = pairs[r].second[i];
  }
  std::vector<Vector> images;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    auto c = solve(f, s.basis_vector(i));
    if (!c) throw std::logic_error("projection basis vector without a witness");
    Vector u(d.mv_dim(), 0);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      if ((*c)[r] != 0) u = axpy(std::move(u), (*c)[r], pairs[r].first);
    }
    images.push_back(std::move(u));
  }
  return SharpMap(s, d.multivector_part(), std::move(images));
}

}  // namespace

LinearGradedDirac triple_from_graph(const std::vector<LevelSpace>& family) {
  Verdict v = check_weak_lagrangian(family);
  if (!v.passed()) throw DomainError("family is not weakly Lagrangian: " + v.message);
  const int k = family.front().k();
  const int n = family.front().n();
  std::vector<GradedLevel> levels(k);
  for (int p = 1; p <= k; ++p) {
    const int a = k + 1 - p;
    SharpMap sharp = sharp_from_level(family[p - 1]);
    levels[a - 1] = GradedLevel{a, sharp.domain(), sharp.kernel(), sharp};
  }
  return LinearGradedDirac(n, k, std::move(levels));
}

TopTriple triple_from_weak_higher(const LevelSpace& d1) {
  Verdict v = check_weak_lagrangian(d1);
  if (!v.passed()) throw DomainError("not a weak higher Dirac structure: " + v.message);
  SharpMap sharp = sharp_from_level(d1);
  return TopTriple{d1.n(), d1.k(), sharp.domain(), sharp.kernel(), sharp};
}

LinearGradedDirac reconstruct_family(const TopTriple& top) {
  const int n = top.n, k = top.k;
  if (!(top.s.ambient() == Ambient{n, SpaceKind::forms, k})) throw std::invalid_argument("S must lie in Lambda^k");
  if (top.kernel != annihilator_mv(top.s, 1)) throw DomainError("K is not the annihilator of S");
  const auto& images = top.sharp.images();
  for (std::size_t i = 0; i < top.s.dim(); ++i) {
    for (std::size_t j = 0; j < top.s.dim(); ++j) {
      Vector lhs = contract(n, 1, images[i], k, top.s.basis_vector(j));
      Vector rhs = contract(n, 1, images[j], k, top.s.basis_vector(i));
      if (!is_zero(axpy(lhs, 1, rhs))) throw DomainError("sharp is not skew-symmetric on S");
    }
  }
  std::vector<ConstSubspace> kp(k + 1);
  for (int p = 1; p <= k; ++p) kp[p] = annihilator_mv(top.s, p);
  std::vector<GradedLevel> levels(k);
  for (int a = 1; a <= k; ++a) {
    const int deg_u = k - a;
    ConstSubspace s_a = annihilator_forms(kp[a], a);
    if (s_a != contraction_span(top.s, a)) throw std::logic_error("contraction span differs from double annihilator");
    const Ambient out_amb{n, SpaceKind::multivectors, k + 1 - a};
    const std::size_t nu = static_cast<std::size_t>(binomial(n, deg_u));
    std::vector<Vector> gens, imgs;
    for (std::size_t i = 0; i < top.s.dim(); ++i) {
      for (std::size_t j = 0; j < nu; ++j) {
        Vector u = unit(nu, j);
        Vector g = contract(n, deg_u, u, k, top.s.basis_vector(i));
        if (is_zero(g)) continue;
        gens.push_back(std::move(g));
        imgs.push_back(wedge_vectors(n, 1, images[i], deg_u, u));
      }
    }
    const std::size_t fd = s_a.ambient().dim();
    Matrix gm(fd, gens.size());
    for (std::size_t m = 0; m < gens.size(); ++m) {
      for (std::size_t r = 0; r < fd; ++r) gm(r, m) = gens[m][r];
    }
    for (const auto& rel : nullspace(gm)) {
      Vector img(out_amb.dim(), 0);
      for (std::size_t m = 0; m < rel.size(); ++m) {
        if (rel[m] != 0) img = axpy(std::move(img), rel[m], imgs[m]);
      }
      if (!kp[k + 1 - a].contains(img)) {
        throw DomainError("induced sharp on level " + std::to_string(a) + " is not well defined");
      }
    }
    std::vector<Vector> basis_images;
    for (std::size_t r = 0; r < s_a.dim(); ++r) {
      auto c = solve(gm, s_a.basis_vector(r));
      if (!c) throw std::logic_error("basis vector outside the contraction span");
      Vector img(out_amb.dim(), 0);
      for (std::size_t m = 0; m < c->size(); ++m) {
        if ((*c)[m] != 0) img = axpy(std::move(img), (*c)[m], imgs[m]);
      }
      basis_images.push_back(std::move(img));
    }
    levels[a - 1] = GradedLevel{a, s_a, kp[k + 1 - a], SharpMap(s_a, kp[k + 1 - a], std::move(basis_images))};
  }
  LinearGradedDirac result(n, k, std::move(levels));
  Verdict v = check_conditions(result);
  if (!v.passed()) throw DomainError("reconstructed family violates the structure conditions: " + v.message);
  return result;
}

LevelSpace d1_generated(const LevelSpace& d1, int p) {
  if (d1.p() != 1) throw std::invalid_argument("expected a level-1 space");
  const int n = d1.n(), k = d1.k();
  const std::size_t nu = static_cast<std::size_t>(binomial(n, p - 1));
  std::vector<std::pair<Vector, Vector>> pairs;
  for (const auto& [w, alpha] : d1.basis_pairs()) {
    for (std::size_t j = 0; j < nu; ++j) {
      Vector u = unit(nu, j);
      pairs.emplace_back(wedge_vectors(n, 1, w, p - 1, u), contract(n, p - 1, u, k, alpha));
    }
  }
  return LevelSpace::span(n, k, p, pairs);
}

LevelSpace d1_completed(const LevelSpace& d1, int p) {
  const LevelSpace gen = d1_generated(d1, p);
  std::vector<std::pair<Vector, Vector>> pairs = gen.basis_pairs();
  const ConstSubspace kernel = annihilator_mv(d1.form_projection(), p);
  for (const auto& u : kernel.basis()) pairs.emplace_back(u, Vector(gen.form_dim()));
  return LevelSpace::span(d1.n(), d1.k(), p, pairs);
}

Verdict d1_determines(const LevelSpace& d1, const std::vector<LevelSpace>& family) {
  for (const auto& d : family) {
    if (!(d1_completed(d1, d.p()) == d)) {
      return Verdict::fail("D_p differs from the span generated by D_1 plus K_p").with("p", std::to_string(d.p()));
    }
  }
  return Verdict::pass();
}

Verdict d1_generates(const LevelSpace& d1, const std::vector<LevelSpace>& family) {
  for (const auto& d : family) {
    if (!(d1_generated(d1, d.p()) == d)) {
      return Verdict::fail("D_p is not generated by D_1").with("p", std::to_string(d.p()));
    }
  }
  return Verdict::pass();
}


TopTriple make_top_triple(int n, int k, const std::vector<Vector>& generators, const std::vector<Vector>& images) {
  if (generators.size() != images.size()) throw std::invalid_argument("one image per generator expected");
  const Ambient forms{n, SpaceKind::forms, k};
  ConstSubspace s = ConstSubspace::span(forms, generators);
  ConstSubspace kernel = annihilator_mv(s, 1);
  Matrix g(forms.dim(), generators.size());
  for (std::size_t m = 0; m < generators.size(); ++m) {
    for (std::size_t r = 0; r < forms.dim(); ++r) g(r, m) = generators[m][r];
  }
  auto combine_images = [&](const Vector& c) {
    Vector out(static_cast<std::size_t>(n), 0);
    for (std::size_t m = 0; m < c.size(); ++m) {
      if (c[m] != 0) out = axpy(std::move(out), c[m], images[m]);
    }
    return out;
  };
  for (const auto& rel : nullspace(g)) {
    if (!kernel.contains(combine_images(rel))) throw DomainError("sharp is not well defined on the generators");
  }
  std::vector<Vector> basis_images;
  for (std::size_t r = 0; r < s.dim(); ++r) basis_images.push_back(combine_images(*solve(g, s.basis_vector(r))));
  return TopTriple{n, k, s, kernel, SharpMap(s, kernel, std::move(basis_images))};
}

}  // namespace gradedirac
