#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgw/dg.hpp"
#include "dgw/resolution.hpp"

namespace dgw {

/// A split torus of rank r (characters in Z^r) or a finite abelian group
/// given by cyclic factor orders (characters in prod Z/n_j).
struct GroupData {
  enum class Kind { torus, finite };
  Kind kind = Kind::torus;
  std::size_t torus_rank = 0;
  std::vector<long long> orders;

  static GroupData torus(std::size_t rank);
  static GroupData finite(std::vector<long long> orders);

  std::size_t rank() const { return kind == Kind::torus ? torus_rank : orders.size(); }
  bool is_finite() const { return kind == Kind::finite; }
  /// Dimension of the Lie algebra k: the torus rank, 0 for finite groups.
  std::size_t lie_dim() const { return kind == Kind::torus ? torus_rank : 0; }
  std::size_t order() const;
  Weight normalize(Weight w) const;
  Weight add(const Weight& a, const Weight& b) const;
  Weight subtract(const Weight& a, const Weight& b) const;
  /// All characters of a finite group, lexicographic.
  std::vector<Weight> characters() const;
  void validate() const;
};

/// Weight-graded complex with generator actions pi, weight action nu, and
/// degree -1 operators i_xi satisfying d i + i d = nu(xi) - pi(psi(xi)).
struct EquivariantComplex {
  GroupData group;
  Complex carrier;                   // weights required (rank = group rank)
  std::vector<std::string> generator_names;
  std::vector<Matrix> pi;            // generator actions, degree 0
  std::vector<Weight> pi_weights;
  std::vector<Matrix> psi;           // per xi: coefficients over the generators (#gens x 1)
  std::vector<Matrix> i_ops;         // per xi: degree -1

  std::size_t dim() const { return carrier.dim(); }
  /// nu(xi_j): multiplication by the j-th weight coordinate.
  Matrix nu(std::size_t xi) const;
  Matrix pi_of(const Matrix& coeffs) const;
  /// nu(xi) - pi(psi(xi)).
  Matrix defect(std::size_t xi) const;
};

/// Checks every invariant; throws ValidationError naming xi (or the
/// generator) and a witness basis vector.
void validate_equivariant(const EquivariantComplex& v);

/// Strong module: i = 0. Refused (with witness) if nu(xi) != pi(psi(xi)).
EquivariantComplex q_embed(GroupData group, Complex carrier, std::vector<std::string> names, std::vector<Matrix> pi,
                           std::vector<Weight> pi_weights, std::vector<Matrix> psi);

/// Ind_w(V) = R(K) (x) V for finite K: one copy of V per character.
EquivariantComplex ind_w(const GroupData& k, const Complex& v);

struct IndAdjunction {
  AdjunctionData data;
  std::size_t equivariant_maps = 0;  // dim of K-equivariant chain maps X -> Ind V
  std::size_t plain_maps = 0;        // dim of chain maps For X -> V
};
/// For -| Ind_w on an equivariant X and a plain complex V.
IndAdjunction ind_adjunction(const EquivariantComplex& x, const Complex& v);

/// The free part P of A = B (x) P: weight-graded, with a marked unit and an
/// optional multiplication table (then A = P, B = ground field).
struct FreeFactor {
  GradedSpace space;
  std::size_t unit = 0;
  std::optional<std::vector<Matrix>> left;  // left multiplication matrices
};

void validate_free_factor(const FreeFactor& p, const GroupData& group);

/// Hom(P, V) with weight w(v) - w(p), d f = d_V f, i f = i_V f.
EquivariantComplex pro_free(const FreeFactor& p, const EquivariantComplex& v);
/// Induced map Hom(P, V) -> Hom(P, W).
Matrix pro_free_map(const FreeFactor& p, const Matrix& f);
/// Evaluation at the marked unit, Hom(P, V) -> V.
Matrix pro_counit(const FreeFactor& p, const EquivariantComplex& v);
/// x -> (p -> pi(p) x), X -> Hom(P, X), for X whose generators are the basis of P.
Matrix pro_unit(const FreeFactor& p, const EquivariantComplex& x);
AdjunctionData pro_adjunction(const FreeFactor& p, const EquivariantComplex& x, const EquivariantComplex& v);

struct ExactnessReport {
  bool exact = false;
  std::size_t rank_in = 0, rank_out = 0, dim_middle = 0;
};
/// Rank additivity of pro_free on 0 -> A -f-> B -g-> C -> 0.
ExactnessReport pro_exactness(const FreeFactor& p, const EquivariantComplex& a, const EquivariantComplex& b,
                              const EquivariantComplex& c, const Matrix& f, const Matrix& g);

struct ForgetfulResult {
  AlgebraPtr algebra;                  // Lambda[x_xi] (x) k[y_xi]/(p_xi)
  std::vector<std::vector<Rational>> minimal_polynomials;  // low degree first
  DGModule module;
};

/// Minimal polynomial of a square matrix, monic, coefficients low degree first.
std::vector<Rational> minimal_polynomial(const Matrix& m);
bool squarefree(const std::vector<Rational>& p);

/// Algebra generated by odd x_xi (|x| = -1) and even y_xi with dx = y and
/// p_xi(y_xi) = 0.
AlgebraPtr koszul_algebra(const std::vector<std::vector<Rational>>& polys);
/// Module over koszul_algebra(polys): x^S y^a acts as i_S c^a, with p_xi the
/// minimal polynomial of c_xi = nu(xi) - pi(psi(xi)).
ForgetfulResult forgetful_to_dg(const EquivariantComplex& v);
/// Same action over a given presentation (each p_xi must annihilate c_xi).
DGModule forgetful_module(const EquivariantComplex& v, const std::vector<std::vector<Rational>>& polys,
                          const AlgebraPtr& algebra);

struct EquivariantResolution {
  std::vector<EquivariantComplex> columns;  // columns[j] = P_{-j}
  std::vector<Matrix> deltas;
  std::vector<Matrix> covers;
  EquivariantComplex total;
  Matrix augmentation;
};

/// Lambda(k) (x) M covers with Koszul differential, iterated on kernels.
EquivariantResolution equivariant_resolution(const EquivariantComplex& v, int depth);

/// Equivariant morphism check: degree 0, weight 0, commutes with d, pi, i.
void validate_equivariant_map(const EquivariantComplex& a, const EquivariantComplex& b, const Matrix& f);

}  // namespace dgw
