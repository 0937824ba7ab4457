#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gradedirac/blade.hpp"
#include "gradedirac/exterior.hpp"
#include "gradedirac/linalg.hpp"

namespace gradedirac {

// Subspace of Q^N stored by its reduced row echelon basis, which makes
// equality a plain comparison.
class RowSpace {
 public:
  explicit RowSpace(std::size_t ambient_dim = 0);
  static RowSpace span(const std::vector<Vector>& vectors, std::size_t ambient_dim);
  static RowSpace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vector basis_vector(std::size_t i) const { return basis_.row(i); }

  bool contains(const Vector& v) const;
  bool contains(const RowSpace& o) const;
  // Coordinates in the RREF basis, nullopt if v is not in the space.
  std::optional<Vector> coordinates(const Vector& v) const;
  RowSpace sum(const RowSpace& o) const;
  RowSpace intersection(const RowSpace& o) const;
  // Kernel of the linear functionals given by the rows.
  RowSpace orthogonal() const;

  friend bool operator==(const RowSpace& a, const RowSpace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const RowSpace& a, const RowSpace& b) { return !(a == b); }

 private:
  std::size_t ambient_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

enum class SpaceKind { forms, multivectors };

// Lambda^degree (R^n)* or the degree-th exterior power of R^n.
struct Ambient {
  int n = 0;
  SpaceKind kind = SpaceKind::forms;
  int degree = 0;
  std::size_t dim() const { return static_cast<std::size_t>(binomial(n, degree)); }
  friend bool operator==(const Ambient& a, const Ambient& b) {
    return a.n == b.n && a.kind == b.kind && a.degree == b.degree;
  }
};

std::string describe(const Ambient& a);

class ConstSubspace {
 public:
  ConstSubspace() = default;
  ConstSubspace(Ambient ambient, RowSpace space);
  static ConstSubspace span(Ambient ambient, const std::vector<Vector>& vectors);
  static ConstSubspace zero(Ambient ambient);
  static ConstSubspace full(Ambient ambient);

  const Ambient& ambient() const { return ambient_; }
  const RowSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  Vector basis_vector(std::size_t i) const { return space_.basis_vector(i); }
  std::vector<Vector> basis() const { return space_.basis().row_list(); }
  bool contains(const Vector& v) const { return space_.contains(v); }

  friend bool operator==(const ConstSubspace& a, const ConstSubspace& b) {
    return a.ambient_ == b.ambient_ && a.space_ == b.space_;
  }
  friend bool operator!=(const ConstSubspace& a, const ConstSubspace& b) { return !(a == b); }

 private:
  Ambient ambient_;
  RowSpace space_;
};

ConstSubspace sum(const ConstSubspace& a, const ConstSubspace& b);
ConstSubspace intersection(const ConstSubspace& a, const ConstSubspace& b);

// Bilinear map (U, alpha) -> i_U alpha on Lambda^p R^n x Lambda^a (R^n)*.
class ContractionPairing {
 public:
  ContractionPairing(int n, int p, int a);
  int n() const { return n_; }
  int p() const { return p_; }
  int a() const { return a_; }
  std::size_t output_dim() const { return static_cast<std::size_t>(binomial(n_, a_ - p_)); }
  Vector apply(const Vector& u, const Vector& alpha) const;
  // Matrix of U -> i_U alpha for fixed alpha.
  Matrix with_form(const Vector& alpha) const;
  // Matrix of alpha -> i_U alpha for fixed U.
  Matrix with_multivector(const Vector& u) const;

 private:
  struct Entry {
    std::size_t u, alpha, out;
    int sign;
  };
  int n_, p_, a_;
  std::vector<Entry> entries_;
};

const ContractionPairing& contraction_pairing(int n, int p, int a);

// S^{o,p} = { U : i_U alpha = 0 for all alpha in S }.
ConstSubspace annihilator_mv(const ConstSubspace& s, int p);
// K^{o,a} = { alpha : i_U alpha = 0 for all U in K }.
ConstSubspace annihilator_forms(const ConstSubspace& k, int a);
// span{ i_U alpha : U in Lambda^{deg S - a}, alpha in S }.
ConstSubspace contraction_span(const ConstSubspace& s, int a);

// Coefficient vectors in the lexicographic blade basis.
template <ExteriorKind Kind>
Vector to_vector(const Exterior<Kind>& x);
template <ExteriorKind Kind>
Vector to_vector_at(const Exterior<Kind>& x, const std::vector<Rational>& point);
Form form_from_vector(const ChartPtr& chart, int degree, const Vector& v);
MultiVector multivector_from_vector(const ChartPtr& chart, int degree, const Vector& v);

// Vector <-> map used by the pure linear algebra modules.
Vector blade_vector(int n, int degree, const std::map<Blade, Rational>& values);


// Wedge of coefficient vectors of degrees p and q in the blade basis of R^n.
Vector wedge_vectors(int n, int p, const Vector& u, int q, const Vector& v);

}  // namespace gradedirac
