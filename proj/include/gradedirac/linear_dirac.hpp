#pragma once

#include <vector>

#include "gradedirac/subspace.hpp"
#include "gradedirac/verdict.hpp"

namespace gradedirac {

// Subspace D_p of E_p = Vee^p V (+) Lambda^{k+1-p} V*. Coordinates list the
// multivector blades first, then the form blades.
class LevelSpace {
 public:
  LevelSpace(int n, int k, int p);
  LevelSpace(int n, int k, int p, RowSpace space);
  static LevelSpace span(int n, int k, int p, const std::vector<std::pair<Vector, Vector>>& pairs);

  int n() const { return n_; }
  int k() const { return k_; }
  int p() const { return p_; }
  Ambient mv_ambient() const { return {n_, SpaceKind::multivectors, p_}; }
  Ambient form_ambient() const { return {n_, SpaceKind::forms, k_ + 1 - p_}; }
  std::size_t mv_dim() const { return mv_ambient().dim(); }
  std::size_t form_dim() const { return form_ambient().dim(); }
  const RowSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }

  Vector join(const Vector& u, const Vector& alpha) const;
  std::pair<Vector, Vector> split(const Vector& x) const;
  std::vector<std::pair<Vector, Vector>> basis_pairs() const;

  // D_p intersected with Vee^p V.
  ConstSubspace multivector_part() const;
  // Image of the projection to forms.
  ConstSubspace form_projection() const;
  bool contains(const Vector& u, const Vector& alpha) const;

  friend bool operator==(const LevelSpace& a, const LevelSpace& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.p_ == b.p_ && a.space_ == b.space_;
  }

 private:
  int n_, k_, p_;
  RowSpace space_;
};

// Linear map S -> Vee^q V / K recorded by representatives of the images of
// the RREF basis of S.
class SharpMap {
 public:
  SharpMap() = default;
  SharpMap(ConstSubspace domain, ConstSubspace kernel, std::vector<Vector> images);

  const ConstSubspace& domain() const { return domain_; }
  const ConstSubspace& kernel() const { return kernel_; }
  const std::vector<Vector>& images() const { return images_; }
  // Representative of sharp(alpha); throws DomainError if alpha is not in S.
  Vector apply(const Vector& alpha) const;
  bool same_class(const Vector& a, const Vector& b) const;

 private:
  ConstSubspace domain_;
  ConstSubspace kernel_;
  std::vector<Vector> images_;
};

// Level a carries S^a in Lambda^a, K_{k+1-a} and sharp_a : S^a -> Vee^{k+1-a}/K.
struct GradedLevel {
  int a = 0;
  ConstSubspace s;
  ConstSubspace k;
  SharpMap sharp;
};

class LinearGradedDirac {
 public:
  LinearGradedDirac(int n, int k, std::vector<GradedLevel> levels);
  int n() const { return n_; }
  int k() const { return k_; }
  const GradedLevel& level(int a) const;
  const ConstSubspace& S(int a) const { return level(a).s; }
  const ConstSubspace& K(int p) const { return level(k_ + 1 - p).k; }
  const std::vector<GradedLevel>& levels() const { return levels_; }

 private:
  int n_, k_;
  std::vector<GradedLevel> levels_;
};

// Data of a weak higher Dirac structure read at the top level.
struct TopTriple {
  int n = 0;
  int k = 0;
  ConstSubspace s;  // in Lambda^k
  ConstSubspace kernel;  // in V
  SharpMap sharp;  // S -> V / K
};

// D_p = { (U, alpha) : alpha in S^{k+1-p}, sharp(alpha) = U + K_p }.
std::vector<LevelSpace> graph(const LinearGradedDirac& s);
LevelSpace graph_level(const LinearGradedDirac& s, int p);

// K_p = (S^{k+1-q})^{o,p} and the graded skew condition, for p + q <= k+1.
Verdict check_conditions(const LinearGradedDirac& s);
// Isotropy and D_q cap Vee^q = (pr_2 D_p)^{o,q} for p + q <= k+1.
Verdict check_weak_lagrangian(const std::vector<LevelSpace>& family);
Verdict check_weak_lagrangian(const LevelSpace& d1);
Verdict check_isotropic(const LevelSpace& dp, const LevelSpace& dq);

// Throws DomainError with the failing witness when the family is not weakly
// Lagrangian.
LinearGradedDirac triple_from_graph(const std::vector<LevelSpace>& family);
TopTriple triple_from_weak_higher(const LevelSpace& d1);

// Builds the unique graded structure with the given top data, checking that
// every induced map is well defined and the result satisfies both conditions.
LinearGradedDirac reconstruct_family(const TopTriple& top);

// span{ (W ^ U, i_U alpha) : U in Vee^{p-1}, (W, alpha) in D_1 }.
LevelSpace d1_generated(const LevelSpace& d1, int p);
Verdict d1_generates(const LevelSpace& d1, const std::vector<LevelSpace>& family);
// The generated span plus (K_p, 0) with K_p = (pr_2 D_1)^{o,p}. This always
// recovers D_p; the generated span alone misses K_p when K_p is not K_1 ^ Vee^{p-1}.
LevelSpace d1_completed(const LevelSpace& d1, int p);
Verdict d1_determines(const LevelSpace& d1, const std::vector<LevelSpace>& family);

// Pairing <<(U,alpha),(V,beta)>> = i_U beta - (-1)^{pq} i_V alpha.
Vector graded_pairing_const(int n, int k, int p, const Vector& u, const Vector& alpha, int q, const Vector& v,
                            const Vector& beta);


// Top data from generators of S and representatives of their images;
// throws DomainError if the assignment is not well defined modulo S^{o,1}.
TopTriple make_top_triple(int n, int k, const std::vector<Vector>& generators, const std::vector<Vector>& images);

}  // namespace gradedirac
