#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgw/linalg.hpp"

namespace dgw {

using Weight = std::vector<long long>;

/// Finite graded vector space described basis vector by basis vector. The
/// basis need not be sorted by degree; direct sums simply concatenate.
struct GradedSpace {
  std::vector<int> degrees;
  std::vector<std::string> labels;  // empty, or one per basis vector
  std::vector<Weight> weights;      // empty, or one per basis vector (same rank)

  std::size_t dim() const { return degrees.size(); }
  bool has_weights() const { return !weights.empty(); }
  std::size_t weight_rank() const { return weights.empty() ? 0 : weights.front().size(); }

  std::vector<std::size_t> indices_of_degree(int k) const;
  std::size_t dim_of_degree(int k) const;
  /// Sorted distinct degrees carrying a basis vector.
  std::vector<int> support() const;
  std::optional<int> top() const;
  std::optional<int> bottom() const;

  /// Basis of dimension dims[k] in each degree k, labelled "e<k>_<i>".
  static GradedSpace from_dims(const std::map<int, std::size_t>& dims);
  /// T^n: every degree decreases by n.
  GradedSpace shifted(int n) const;
  void validate() const;
};

GradedSpace direct_sum(const GradedSpace& a, const GradedSpace& b);
/// Basis a_i (x) b_j, left factor major, degree |a_i| + |b_j|, weights added.
GradedSpace tensor(const GradedSpace& a, const GradedSpace& b);

/// Throws ValidationError unless every nonzero entry of `m` maps a basis vector
/// of degree k in `src` to degree k + degree in `dst`.
void require_homogeneous(const Matrix& m, const GradedSpace& src, const GradedSpace& dst, int degree,
                         const std::string& what);
bool is_homogeneous(const Matrix& m, const GradedSpace& src, const GradedSpace& dst, int degree);

/// Cochain complex: d raises degree by one and squares to zero.
class Complex {
 public:
  Complex() = default;
  /// Validating constructor (the validate_complex operation).
  static Complex make(GradedSpace space, Matrix d);
  static Complex zero();
  /// A complex with zero differential.
  static Complex discrete(GradedSpace space);

  const GradedSpace& space() const { return space_; }
  const Matrix& d() const { return d_; }
  std::size_t dim() const { return space_.dim(); }
  /// d^k restricted to degree k -> degree k+1, in the order of indices_of_degree.
  Matrix block(int k) const;

 private:
  GradedSpace space_;
  Matrix d_;
};

inline Complex validate_complex(GradedSpace space, Matrix d) { return Complex::make(std::move(space), std::move(d)); }

/// T^n(V): V^{k+n} in degree k, differential (-1)^n d.
Complex shift(const Complex& v, int n = 1);
Complex direct_sum(const Complex& a, const Complex& b);
/// d = d_a (x) 1 + (-1)^{|a|} 1 (x) d_b.
Complex tensor(const Complex& a, const Complex& b);

/// Graded morphism of fixed degree between two complexes. Chain maps are the
/// degree-0 morphisms commuting with d; homotopies are degree -1.
struct GradedMorphism {
  Complex source;
  Complex target;
  int degree = 0;
  Matrix map;
};

GradedMorphism graded_morphism(Complex source, Complex target, int degree, Matrix map);
/// Validates d_W f = f d_V.
GradedMorphism chain_map(Complex source, Complex target, Matrix map);
bool commutes_with_d(const Complex& source, const Complex& target, const Matrix& map);

struct CohomologyResult {
  std::map<int, std::size_t> dims;           // every degree of the support
  std::map<int, Matrix> representatives;     // dim V x h^k, cocycles
  std::size_t total() const;
  std::size_t at(int k) const;
};

CohomologyResult cohomology(const Complex& v);
bool is_acyclic(const Complex& v);

struct DegreeComparison {
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::size_t rank = 0;
  bool iso() const { return source_dim == target_dim && rank == source_dim; }
};

struct QuasiIsoReport {
  bool quasi_iso = true;
  std::map<int, DegreeComparison> degrees;
};

/// Rank of H^k(f) for a chain map f: V -> W.
std::size_t induced_rank(const Complex& v, const Complex& w, const Matrix& f, int k);
QuasiIsoReport is_quasi_iso(const Complex& v, const Complex& w, const Matrix& f);
QuasiIsoReport is_quasi_iso(const GradedMorphism& f);

/// X -> Y -> Z -> T(X).
struct Triangle {
  Complex x, y, z;
  Matrix f, g, h;
};
void validate_triangle(const Triangle& t);

struct ConeResult {
  Complex cone;
  Triangle triangle;
};

/// C_f = T(V) (+) W with d = [[-d_V, 0], [f, d_W]]; T(V) comes first.
ConeResult cone(const Complex& v, const Complex& w, const Matrix& f);
ConeResult cone(const GradedMorphism& f);

/// Solves f = d_W h + h d_V for a degree -1 map h, as one linear system over
/// all degrees. nullopt means the system is inconsistent.
std::optional<Matrix> homotopy_solve(const Complex& v, const Complex& w, const Matrix& f);

/// Columns V^i for i = first, first+1, ... with chain maps delta_i: V^i -> V^{i+1}.
struct ComplexOfComplexes {
  int first = 0;
  std::vector<Complex> columns;
  std::vector<Matrix> deltas;  // columns.size() - 1 maps, or empty for one column
  int last() const { return first + static_cast<int>(columns.size()) - 1; }
};

/// How the column differentials and connecting maps are signed. Only
/// `shifted_columns` yields a complex for chain-map connecting maps; the other
/// two exist so the sign rule can be tested.
enum class TotalSign { shifted_columns, signed_connecting, unsigned_both };

struct TotalComplexResult {
  Complex total;
  std::vector<std::vector<std::size_t>> column_indices;  // per column, positions in the total
  /// filtration[p - first] = positions of columns >= p (decreasing filtration).
  std::vector<std::vector<std::size_t>> filtration;
};

void validate_complex_of_complexes(const ComplexOfComplexes& c);
/// s(V)^k = (+)_i (V^i)^{k-i}, d = delta_i + (-1)^i d_{V^i}.
TotalComplexResult total_complex(const ComplexOfComplexes& c, TotalSign sign = TotalSign::shifted_columns);

/// Y -> Z -> T(X) -> T(Y) with the last map -T(f).
Triangle rotate(const Triangle& t);
Triangle direct_sum(const Triangle& a, const Triangle& b);
/// (T X, T Y, T Z, -T f, -T g, -T h).
Triangle shift(const Triangle& t);

/// Homotopy equivalence u: t.z -> C_{t.f} with u g ~ i and p u ~ h, so that
/// (id, id, u) is an isomorphism of triangles up to homotopy. Found by exact
/// linear solving; nullopt if none is found.
std::optional<Matrix> distinguished_witness(const Triangle& t);
bool is_distinguished(const Triangle& t);
/// Direct sum of two distinguished triangles is distinguished (checked).
bool check_sum_distinguished(const Triangle& a, const Triangle& b);

}  // namespace dgw
