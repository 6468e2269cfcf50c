#pragma once

#include <optional>
#include <vector>

#include "dgw/matrix.hpp"

namespace dgw {

/// Reduced row echelon form with the pivot columns that produced it.
/// Pivoting is deterministic: columns left to right, first nonzero row from
/// the top among the unreduced rows.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

namespace kernels {
/// Reference Gauss-Jordan elimination.
RowEchelon rref_serial(Matrix a);
/// Same algorithm with the row-elimination sweep spread over OpenMP threads.
/// Produces bit-identical output to rref_serial.
RowEchelon rref_parallel(Matrix a);
}  // namespace kernels

RowEchelon rref(Matrix a);
std::size_t rank(const Matrix& a);

/// A subspace of Q^ambient_dim given by a full-column-rank basis.
struct Subspace {
  std::size_t ambient_dim = 0;
  Matrix basis;  // ambient_dim x dim

  std::size_t dim() const { return basis.cols(); }
  /// Throws StructuralError unless the basis has full column rank.
  static Subspace from_basis(std::size_t ambient_dim, Matrix basis);
};

enum class Which { kernel, image };

/// Exact basis of ker A (a cols x k matrix) or of the column space (the pivot
/// columns of A, rows x r).
Subspace subspace_basis(const Matrix& a, Which which);
Matrix kernel_basis(const Matrix& a);
Matrix image_basis(const Matrix& a);

struct SolveResult {
  std::optional<Matrix> solution;  // one particular solution, free variables set to 0
  Matrix kernel;                   // basis of {x : A x = 0}
};

/// Solves A x = b for a column (or several columns) b. The solution is present
/// only when every column is consistent.
SolveResult solve_exact(const Matrix& a, const Matrix& b);

/// Shortcut when only a particular solution is wanted.
std::optional<Matrix> solve_particular(const Matrix& a, const Matrix& b);

struct QuotientMap {
  Matrix projection;  // (n - dim S) x n, surjective, kernel exactly S
  Matrix section;     // n x (n - dim S), projection * section = I
};

/// Projection onto coordinates of a complement of S. The complement is spanned
/// by the standard basis vectors that are not pivots of S.
QuotientMap quotient_map(std::size_t ambient_dim, const Subspace& s);

/// X with A X = I for a full-column-rank A, read off from pivot rows.
Matrix left_inverse(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);

}  // namespace dgw
