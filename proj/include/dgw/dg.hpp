#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgw/complex.hpp"

namespace dgw {

/// Finite-dimensional DG algebra given by left multiplication matrices:
/// left(i)(k, j) is the coefficient of e_k in e_i e_j.
class DGAlgebra {
 public:
  /// Validating constructor: associativity, unit laws, Leibniz, d(1) = 0,
  /// homogeneity, and the anti-involution axioms when iota is given.
  static DGAlgebra make(GradedSpace space, Matrix d, std::size_t unit, std::vector<Matrix> left,
                        std::optional<Matrix> iota = std::nullopt);
  /// From sparse structure constants (i, j, k, c): e_i e_j += c e_k.
  struct Constant {
    std::size_t i, j, k;
    Rational c;
  };
  static DGAlgebra from_constants(GradedSpace space, Matrix d, std::size_t unit, const std::vector<Constant>& constants,
                                  std::optional<Matrix> iota = std::nullopt);

  const GradedSpace& space() const { return carrier_.space(); }
  const Complex& carrier() const { return carrier_; }
  const Matrix& d() const { return carrier_.d(); }
  std::size_t dim() const { return carrier_.dim(); }
  int degree(std::size_t i) const { return carrier_.space().degrees[i]; }
  std::size_t unit() const { return unit_; }
  const Matrix& left(std::size_t i) const { return left_[i]; }
  /// Left multiplication by an arbitrary element (column vector).
  Matrix left_by(const Matrix& x) const;
  /// Right multiplication by e_i: column j is e_j e_i.
  Matrix right(std::size_t i) const;
  Matrix product(const Matrix& x, const Matrix& y) const { return left_by(x) * y; }
  bool has_iota() const { return iota_.has_value(); }
  /// The anti-involution; identity when none was declared.
  Matrix iota() const;
  const std::optional<Matrix>& declared_iota() const { return iota_; }
  bool nonpositive() const;
  bool graded_commutative() const;

 private:
  Complex carrier_;
  std::size_t unit_ = 0;
  std::vector<Matrix> left_;
  std::optional<Matrix> iota_;
};

using AlgebraPtr = std::shared_ptr<const DGAlgebra>;

AlgebraPtr share(DGAlgebra a);
bool same_algebra(const DGAlgebra& a, const DGAlgebra& b);

/// Multiplicative, unital chain map between DG algebras.
struct DGAlgebraMorphism {
  AlgebraPtr source;
  AlgebraPtr target;
  Matrix map;  // dim target x dim source
  bool quasi_iso = false;  // computed at validation
};

DGAlgebraMorphism make_algebra_morphism(AlgebraPtr source, AlgebraPtr target, Matrix map);
DGAlgebraMorphism identity_morphism(AlgebraPtr a);

/// A basis in which the module is free as a graded module: every basis vector
/// b equals sign[b] * e_{alg[b]} acting on generators[gen[b]].
struct FreeBasis {
  std::vector<std::size_t> generators;
  std::vector<std::size_t> alg;
  std::vector<std::size_t> gen;
  std::vector<int> sign;
};

class DGModule {
 public:
  /// Validating constructor: homogeneity of every action, unit, associativity,
  /// Leibniz d a = (da) + (-1)^{|a|} a d, weights when present.
  static DGModule make(AlgebraPtr algebra, Complex carrier, std::vector<Matrix> actions,
                       std::optional<FreeBasis> free = std::nullopt, bool kprojective = false);

  const DGAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  const Complex& carrier() const { return carrier_; }
  const GradedSpace& space() const { return carrier_.space(); }
  const Matrix& d() const { return carrier_.d(); }
  std::size_t dim() const { return carrier_.dim(); }
  const Matrix& action(std::size_t a) const { return actions_[a]; }
  const std::vector<Matrix>& actions() const { return actions_; }
  /// Action of an arbitrary algebra element.
  Matrix action_by(const Matrix& x) const;
  const std::optional<FreeBasis>& free_basis() const { return free_; }
  /// True for free modules and modules built from them by shifts, cones,
  /// direct sums and bounded total complexes.
  bool kprojective_by_construction() const { return kprojective_; }

 private:
  AlgebraPtr algebra_;
  Complex carrier_;
  std::vector<Matrix> actions_;
  std::optional<FreeBasis> free_;
  bool kprojective_ = false;
};

/// Throws ValidationError unless f is A-linear of the given degree
/// (f a = (-1)^{degree |a|} a f), and, for degree 0, a chain map.
void validate_module_map(const DGModule& v, const DGModule& w, const Matrix& f, int degree = 0);

/// A (x) W with A acting on the left factor and d = d_A (x) 1; algebra factor major.
DGModule free_module(AlgebraPtr a, const GradedSpace& w);
/// A (x) C with d(a (x) c) = da (x) c + (-1)^|a| a (x) dc; K-projective.
DGModule free_module(AlgebraPtr a, const Complex& c);
DGModule regular_module(AlgebraPtr a);
/// Trivial action through the augmentation onto the ground field: only the unit acts.
DGModule trivial_module(AlgebraPtr a, const Complex& v);

DGModule shift(const DGModule& v, int n = 1);
DGModule direct_sum(const DGModule& a, const DGModule& b);
/// Cone of an A-linear chain map, T(V) first.
DGModule cone(const DGModule& v, const DGModule& w, const Matrix& f);

/// Submodule spanned by the columns of `basis` (homogeneous columns spanning a
/// DG submodule). Also returns the inclusion.
struct Submodule {
  DGModule module;
  Matrix inclusion;
};
Submodule submodule(const DGModule& v, const Matrix& basis);
/// Graded kernel of an A-linear chain map, basis chosen degree by degree.
Submodule kernel(const DGModule& v, const Matrix& f);

struct QuotientModule {
  DGModule module;
  Matrix projection;
  Matrix section;
};
QuotientModule quotient(const DGModule& v, const Matrix& basis);

DGModule restrict_scalars(const DGAlgebraMorphism& eps, const DGModule& w);

struct TensorChange {
  DGModule module;       // over the target algebra
  Matrix projection;     // V (x) E -> module carrier
  Matrix section;
};
/// (V (x) E) / span{(-1)^{|v||x|} iota(x) v (x) e - v (x) eps(x) e}.
TensorChange tensor_change(const DGAlgebraMorphism& eps, const DGModule& v);
/// Induced map V (x)_D E -> V' (x)_D E for a D-linear chain map f: V -> V'.
Matrix tensor_change_map(const DGAlgebraMorphism& eps, const DGModule& v, const TensorChange& tv,
                         const TensorChange& tw, const Matrix& f);

/// E (x)_D M for a left D-module M, E acting on the left factor.
struct Extension {
  DGModule module;
  Matrix projection;  // E (x) M -> module carrier
  Matrix section;
};
Extension extend_scalars(const DGAlgebraMorphism& eps, const DGModule& m);
Matrix extend_scalars_map(const DGAlgebraMorphism& eps, const Extension& em, const Extension& en, const Matrix& f);

/// A-linear graded morphisms V -> W of one degree, with coordinates.
class ALinearHom {
 public:
  ALinearHom(const DGModule& v, const DGModule& w, int degree);
  std::size_t dim() const { return dim_; }
  int degree() const { return degree_; }
  Matrix to_matrix(const Matrix& coords) const;
  /// Coordinates of an A-linear map (assumed A-linear; not re-checked).
  Matrix coordinates(const Matrix& map) const;
  bool semifree() const { return semifree_; }

 private:
  friend Matrix hom_differential(const ALinearHom& from, const ALinearHom& to);
  const DGModule* v_;
  const DGModule* w_;
  int degree_;
  bool semifree_ = false;
  std::size_t dim_ = 0;
  // semifree: per generator, target indices and coordinate offset
  std::vector<std::vector<std::size_t>> gen_rows_;
  std::vector<std::size_t> offsets_;
  // generic: masked entries (row, col) and basis of A-linear maps over them
  std::vector<std::pair<std::size_t, std::size_t>> entries_;
  Matrix basis_;
  Matrix basis_left_inverse_;
  bool all_entries_ = false;
};

/// D(f) = d_W f - (-1)^r f d_V as a matrix on coordinates.
Matrix hom_differential(const ALinearHom& from, const ALinearHom& to);

struct HomComplex {
  Complex complex;
  std::map<int, std::vector<std::size_t>> positions;  // hom degree -> positions
};
/// Complex of A-linear graded morphisms with degrees in [lo, hi] (differentials
/// leaving the range are dropped, so cohomology is exact on (lo, hi)).
HomComplex hom_dg(const DGModule& v, const DGModule& w, int lo, int hi);
HomComplex hom_dg(const DGModule& v, const DGModule& w);
std::pair<int, int> hom_range(const DGModule& v, const DGModule& w);

/// A-linear h of degree -1 with f = d_W h + h d_V, or nullopt.
std::optional<Matrix> module_homotopy_solve(const DGModule& v, const DGModule& w, const Matrix& f);
/// Basis (as coordinates) of A-linear chain maps V -> W.
Matrix chain_map_space(const DGModule& v, const DGModule& w, const ALinearHom& h0);

struct ModuleColumns {
  int first = 0;
  std::vector<DGModule> columns;
  std::vector<Matrix> deltas;
};
struct TotalModule {
  DGModule module;
  std::vector<std::vector<std::size_t>> column_indices;
};
/// Total complex with d = delta + (-1)^i d on column i and actions twisted by
/// (-1)^{i |a|} there.
TotalModule total_module(const ModuleColumns& c);

/// Unit and counit components for one adjoint pair F -| G on an instance X, Y.
struct AdjunctionData {
  std::string pair;
  // F X -> F G F X -> F X
  Matrix f_unit;     // F(Phi_X)
  Matrix counit_fx;  // Psi_{F X}
  // G Y -> G F G Y -> G Y
  Matrix unit_gy;    // Phi_{G Y}
  Matrix g_counit;   // G(Psi_Y)
};

struct TriangleIdentityReport {
  bool first = false;
  bool second = false;
  std::string witness;
  bool ok() const { return first && second; }
};

TriangleIdentityReport triangle_identity_check(const AdjunctionData& adj);

/// Phi_V(v) = v (x) 1 into For(V (x)_D E).
Matrix tensor_unit(const DGAlgebraMorphism& eps, const DGModule& v, const TensorChange& tv);
/// Psi_W(w (x) e) = (-1)^{|w||e|} iota(e) w, from For(W) (x)_D E to W.
Matrix tensor_counit(const DGAlgebraMorphism& eps, const DGModule& w, const TensorChange& tfw);
/// Phi_M(m) = 1 (x) m.
Matrix extension_unit(const DGAlgebraMorphism& eps, const DGModule& m, const Extension& em);
/// Psi_N(b (x) n) = b n.
Matrix extension_counit(const DGAlgebraMorphism& eps, const DGModule& n, const Extension& en);

/// F = tensor_change along eps, G = restriction; X over D, Y over E.
AdjunctionData tensor_adjunction(const DGAlgebraMorphism& eps, const DGModule& x, const DGModule& y);
/// F = extend_scalars along eps, G = restriction.
AdjunctionData extension_adjunction(const DGAlgebraMorphism& eps, const DGModule& x, const DGModule& y);

}  // namespace dgw
