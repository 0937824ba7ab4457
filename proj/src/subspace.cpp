#include "gradedirac/subspace.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace gradedirac {

RowSpace::RowSpace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

RowSpace RowSpace::span(const std::vector<Vector>& vectors, std::size_t ambient_dim) {
  RowSpace s(ambient_dim);
  if (vectors.empty()) return s;
  Echelon e = rref(Matrix::from_rows(vectors, ambient_dim));
  s.basis_ = std::move(e.reduced);
  s.pivots_ = std::move(e.pivots);
  return s;
}

RowSpace RowSpace::full(std::size_t ambient_dim) {
  std::vector<Vector> id;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    Vector v(ambient_dim, 0);
    v[i] = 1;
    id.push_back(std::move(v));
  }
  return span(id, ambient_dim);
}

std::optional<Vector> RowSpace::coordinates(const Vector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("vector has wrong length for subspace");
  Vector c(dim());
  Vector rest = v;
  for (std::size_t i = 0; i < dim(); ++i) {
    c[i] = v[pivots_[i]];
    if (c[i] == 0) continue;
    for (std::size_t k = 0; k < ambient_; ++k) {
      if (basis_(i, k) != 0) rest[k] -= c[i] * basis_(i, k);
    }
  }
  if (!is_zero(rest)) return std::nullopt;
  return c;
}

bool RowSpace::contains(const Vector& v) const { return coordinates(v).has_value(); }

bool RowSpace::contains(const RowSpace& o) const {
  for (std::size_t i = 0; i < o.dim(); ++i) {
    if (!contains(o.basis_vector(i))) return false;
  }
  return true;
}

RowSpace RowSpace::sum(const RowSpace& o) const {
  if (o.ambient_ != ambient_) throw std::invalid_argument("subspaces of different spaces");
  auto rows = basis_.row_list();
  auto more = o.basis_.row_list();
  rows.insert(rows.end(), more.begin(), more.end());
  return span(rows, ambient_);
}

RowSpace RowSpace::orthogonal() const { return span(nullspace(basis_), ambient_); }

RowSpace RowSpace::intersection(const RowSpace& o) const {
  if (o.ambient_ != ambient_) throw std::invalid_argument("subspaces of different spaces");
  return orthogonal().sum(o.orthogonal()).orthogonal();
}

std::string describe(const Ambient& a) {
  return std::string(a.kind == SpaceKind::forms ? "Lambda^" : "Vee^") + std::to_string(a.degree) + "(n=" +
         std::to_string(a.n) + ")";
}

ConstSubspace::ConstSubspace(Ambient ambient, RowSpace space) : ambient_(ambient), space_(std::move(space)) {
  if (space_.ambient_dim() != ambient_.dim()) throw std::invalid_argument("subspace does not fit its ambient space");
}

ConstSubspace ConstSubspace::span(Ambient ambient, const std::vector<Vector>& vectors) {
  return ConstSubspace(ambient, RowSpace::span(vectors, ambient.dim()));
}

ConstSubspace ConstSubspace::zero(Ambient ambient) { return ConstSubspace(ambient, RowSpace(ambient.dim())); }

ConstSubspace ConstSubspace::full(Ambient ambient) { return ConstSubspace(ambient, RowSpace::full(ambient.dim())); }

ConstSubspace sum(const ConstSubspace& a, const ConstSubspace& b) {
  if (!(a.ambient() == b.ambient())) throw std::invalid_argument("sum of subspaces of different spaces");
  return ConstSubspace(a.ambient(), a.space().sum(b.space()));
}

ConstSubspace intersection(const ConstSubspace& a, const ConstSubspace& b) {
  if (!(a.ambient() == b.ambient())) throw std::invalid_argument("intersection of subspaces of different spaces");
  return ConstSubspace(a.ambient(), a.space().intersection(b.space()));
}

ContractionPairing::ContractionPairing(int n, int p, int a) : n_(n), p_(p), a_(a) {
  if (p < 0 || p > a) throw DomainError("contraction pairing needs 0 <= p <= a");
  BladeBasis us(n, p), alphas(n, a), outs(n, a - p);
  for (std::size_t i = 0; i < us.size(); ++i) {
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      auto c = contract_blade(us[i], alphas[j]);
      if (c) entries_.push_back({i, j, outs.index(c->blade), c->sign});
    }
  }
}

Vector ContractionPairing::apply(const Vector& u, const Vector& alpha) const {
  Vector out(output_dim(), 0);
  for (const auto& e : entries_) {
    if (u[e.u] == 0 || alpha[e.alpha] == 0) continue;
    if (e.sign > 0) {
      out[e.out] += u[e.u] * alpha[e.alpha];
    } else {
      out[e.out] -= u[e.u] * alpha[e.alpha];
    }
  }
  return out;
}

Matrix ContractionPairing::with_form(const Vector& alpha) const {
  Matrix m(output_dim(), static_cast<std::size_t>(binomial(n_, p_)));
  for (const auto& e : entries_) {
    if (alpha[e.alpha] != 0) m(e.out, e.u) += e.sign * alpha[e.alpha];
  }
  return m;
}

Matrix ContractionPairing::with_multivector(const Vector& u) const {
  Matrix m(output_dim(), static_cast<std::size_t>(binomial(n_, a_)));
  for (const auto& e : entries_) {
    if (u[e.u] != 0) m(e.out, e.alpha) += e.sign * u[e.u];
  }
  return m;
}

const ContractionPairing& contraction_pairing(int n, int p, int a) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<ContractionPairing>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, p, a}];
  if (!slot) slot = std::make_unique<ContractionPairing>(n, p, a);
  return *slot;
}

namespace {

Matrix stack(const std::vector<Matrix>& blocks, std::size_t cols) {
  Matrix m(0, cols);
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r) m.append_row(b.row(r));
  }
  return m;
}

}  // namespace

ConstSubspace annihilator_mv(const ConstSubspace& s, int p) {
  const auto& amb = s.ambient();
  if (amb.kind != SpaceKind::forms) throw std::invalid_argument("annihilator_mv expects a space of forms");
  if (p < 0 || p > amb.degree) throw DomainError("annihilator order exceeds form degree");
  const auto& pairing = contraction_pairing(amb.n, p, amb.degree);
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < s.dim(); ++i) blocks.push_back(pairing.with_form(s.basis_vector(i)));
  Ambient out{amb.n, SpaceKind::multivectors, p};
  return ConstSubspace(out, RowSpace::span(nullspace(stack(blocks, out.dim())), out.dim()));
}

ConstSubspace annihilator_forms(const ConstSubspace& k, int a) {
  const auto& amb = k.ambient();
  if (amb.kind != SpaceKind::multivectors) throw std::invalid_argument("annihilator_forms expects multivectors");
  if (a < amb.degree || a > amb.n) throw DomainError("annihilator form degree below multivector degree");
  const auto& pairing = contraction_pairing(amb.n, amb.degree, a);
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < k.dim(); ++i) blocks.push_back(pairing.with_multivector(k.basis_vector(i)));
  Ambient out{amb.n, SpaceKind::forms, a};
  return ConstSubspace(out, RowSpace::span(nullspace(stack(blocks, out.dim())), out.dim()));
}

ConstSubspace contraction_span(const ConstSubspace& s, int a) {
  const auto& amb = s.ambient();
  if (amb.kind != SpaceKind::forms) throw std::invalid_argument("contraction_span expects forms");
  const int p = amb.degree - a;
  if (p < 0) throw DomainError("contraction_span: target degree above source degree");
  const auto& pairing = contraction_pairing(amb.n, p, amb.degree);
  const std::size_t nu = static_cast<std::size_t>(binomial(amb.n, p));
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t j = 0; j < nu; ++j) {
      Vector u(nu, 0);
      u[j] = 1;
      gens.push_back(pairing.apply(u, s.basis_vector(i)));
    }
  }
  return ConstSubspace::span({amb.n, SpaceKind::forms, a}, gens);
}

Vector blade_vector(int n, int degree, const std::map<Blade, Rational>& values) {
  BladeBasis basis(n, degree);
  Vector v(basis.size(), 0);
  for (const auto& [b, q] : values) v[basis.index(b)] = q;
  return v;
}

template <ExteriorKind Kind>
Vector to_vector(const Exterior<Kind>& x) {
  std::map<Blade, Rational> vals;
  for (const auto& [b, c] : x.terms()) {
    if (!c.is_constant()) throw DomainError("expected constant coefficients");
    vals.emplace(b, c.constant_term());
  }
  return blade_vector(static_cast<int>(x.chart()->dim()), x.degree(), vals);
}

template <ExteriorKind Kind>
Vector to_vector_at(const Exterior<Kind>& x, const std::vector<Rational>& point) {
  return blade_vector(static_cast<int>(x.chart()->dim()), x.degree(), x.evaluate(point));
}

template Vector to_vector(const Form&);
template Vector to_vector(const MultiVector&);
template Vector to_vector_at(const Form&, const std::vector<Rational>&);
template Vector to_vector_at(const MultiVector&, const std::vector<Rational>&);

namespace {

template <class T>
T from_vector(const ChartPtr& chart, int degree, const Vector& v) {
  BladeBasis basis(static_cast<int>(chart->dim()), degree);
  if (v.size() != basis.size()) throw std::invalid_argument("vector length does not match blade basis");
  T r(chart, degree);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) r.add_term(basis[i], chart->constant(v[i]));
  }
  return r;
}

}  // namespace

Form form_from_vector(const ChartPtr& chart, int degree, const Vector& v) {
  return from_vector<Form>(chart, degree, v);
}

MultiVector multivector_from_vector(const ChartPtr& chart, int degree, const Vector& v) {
  return from_vector<MultiVector>(chart, degree, v);
}


Vector wedge_vectors(int n, int p, const Vector& u, int q, const Vector& v) {
  BladeBasis bu(n, p), bv(n, q), bo(n, p + q);
  Vector out(bo.size(), 0);
  for (std::size_t i = 0; i < bu.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < bv.size(); ++j) {
      if (v[j] == 0) continue;
      auto m = merge_blades(bu[i], bv[j]);
      if (!m) continue;
      if (m->sign > 0) {
        out[bo.index(m->blade)] += u[i] * v[j];
      } else {
        out[bo.index(m->blade)] -= u[i] * v[j];
      }
    }
  }
  return out;
}

}  // namespace gradedirac
