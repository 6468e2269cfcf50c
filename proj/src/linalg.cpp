#include "dgw/linalg.hpp"

#include "dgw/errors.hpp"

namespace dgw {

namespace {

// Eliminates column `col` from row r using the normalized pivot row.
void eliminate_row(Matrix& a, std::size_t r, std::size_t pivot_row, std::size_t col,
                   const std::vector<std::size_t>& pivot_support, Rational& factor, Rational& tmp) {
  if (sgn(a(r, col)) == 0) return;
  factor = a(r, col);
  for (std::size_t j : pivot_support) {
    mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), a(pivot_row, j).get_mpq_t());
    a(r, j) -= tmp;
  }
}

// Finds, swaps and normalizes the pivot for `col`; returns the nonzero
// columns of the pivot row, or nullopt when the column has no pivot.
std::optional<std::vector<std::size_t>> prepare_pivot(Matrix& a, std::size_t row, std::size_t col) {
  std::size_t p = row;
  while (p < a.rows() && sgn(a(p, col)) == 0) ++p;
  if (p == a.rows()) return std::nullopt;
  if (p != row)
    for (std::size_t j = col; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
  const Rational inv = 1 / a(row, col);
  std::vector<std::size_t> support;
  for (std::size_t j = col; j < a.cols(); ++j)
    if (sgn(a(row, j)) != 0) {
      a(row, j) *= inv;
      support.push_back(j);
    }
  return support;
}

constexpr std::size_t kParallelRowThreshold = 64;

}  // namespace

namespace kernels {

RowEchelon rref_serial(Matrix a) {
  RowEchelon out;
  std::size_t row = 0;
  Rational factor, tmp;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    auto support = prepare_pivot(a, row, col);
    if (!support) continue;
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (r != row) eliminate_row(a, r, row, col, *support, factor, tmp);
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

RowEchelon rref_parallel(Matrix a) {
  RowEchelon out;
  std::size_t row = 0;
  const auto nrows = static_cast<long long>(a.rows());
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    auto support = prepare_pivot(a, row, col);
    if (!support) continue;
    const auto& sup = *support;
#pragma omp parallel
    {
      Rational factor, tmp;
#pragma omp for schedule(static)
      for (long long r = 0; r < nrows; ++r)
        if (static_cast<std::size_t>(r) != row)
          eliminate_row(a, static_cast<std::size_t>(r), row, col, sup, factor, tmp);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

}  // namespace kernels

RowEchelon rref(Matrix a) {
  if (a.rows() >= kParallelRowThreshold) return kernels::rref_parallel(std::move(a));
  return kernels::rref_serial(std::move(a));
}

std::size_t rank(const Matrix& a) {
  if (a.empty()) return 0;
  // Reduce the shorter side.
  if (a.cols() < a.rows()) return rref(a.transpose()).rank();
  return rref(a).rank();
}

Subspace Subspace::from_basis(std::size_t ambient_dim, Matrix basis) {
  if (basis.cols() > 0 && basis.rows() != ambient_dim)
    throw StructuralError("subspace basis has " + std::to_string(basis.rows()) + " rows, ambient dimension is " +
                          std::to_string(ambient_dim));
  if (basis.cols() == 0) basis = Matrix(ambient_dim, 0);
  if (rank(basis) != basis.cols()) throw StructuralError("subspace basis is not linearly independent");
  return Subspace{ambient_dim, std::move(basis)};
}

namespace {

Matrix kernel_from_rref(const RowEchelon& e, std::size_t ncols) {
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivot_cols)
    if (c < ncols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < ncols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(ncols, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    k(free_cols[f], f) = 1;
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
      const auto pc = e.pivot_cols[i];
      if (pc >= ncols) continue;
      const auto& v = e.reduced(i, free_cols[f]);
      if (sgn(v) != 0) k(pc, f) = -v;
    }
  }
  return k;
}

}  // namespace

Matrix kernel_basis(const Matrix& a) {
  if (a.rows() == 0) return Matrix::identity(a.cols());
  return kernel_from_rref(rref(a), a.cols());
}

Matrix image_basis(const Matrix& a) {
  if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
  const auto e = rref(a);
  return a.select_cols(e.pivot_cols);
}

Subspace subspace_basis(const Matrix& a, Which which) {
  if (which == Which::kernel) return Subspace{a.cols(), kernel_basis(a)};
  return Subspace{a.rows(), image_basis(a)};
}

SolveResult solve_exact(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw StructuralError("solve_exact: A has " + std::to_string(a.rows()) + " rows, b has " +
                          std::to_string(b.rows()));
  const std::size_t n = a.cols();
  SolveResult out;
  if (a.rows() == 0) {
    out.kernel = Matrix::identity(n);
    out.solution = Matrix(n, b.cols());
    return out;
  }
  const auto e = rref(hstack(a, b.cols() ? b : Matrix(a.rows(), 0)));
  out.kernel = kernel_from_rref(e, n);
  for (auto pc : e.pivot_cols)
    if (pc >= n) return out;  // a pivot in the right-hand side: inconsistent
  Matrix x(n, b.cols());
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivot_cols[i], j) = e.reduced(i, n + j);
  out.solution = std::move(x);
  return out;
}

std::optional<Matrix> solve_particular(const Matrix& a, const Matrix& b) { return solve_exact(a, b).solution; }

QuotientMap quotient_map(std::size_t ambient_dim, const Subspace& s) {
  if (s.ambient_dim != ambient_dim) throw StructuralError("quotient_map: subspace lives in a different ambient space");
  if (s.dim() > 0 && rank(s.basis) != s.dim()) throw StructuralError("quotient_map: basis not full column rank");
  std::vector<bool> used(ambient_dim, false);
  if (s.dim() > 0)
    for (auto c : rref(s.basis.transpose()).pivot_cols) used[c] = true;
  std::vector<std::size_t> complement;
  for (std::size_t i = 0; i < ambient_dim; ++i)
    if (!used[i]) complement.push_back(i);
  const std::size_t q = complement.size();
  Matrix section(ambient_dim, q);
  for (std::size_t j = 0; j < q; ++j) section(complement[j], j) = 1;
  QuotientMap out;
  out.section = section;
  if (q == 0) {
    out.projection = Matrix(0, ambient_dim);
    return out;
  }
  // [S | C] is invertible; the projection is the bottom block of its inverse.
  const auto full = hstack(s.basis.cols() ? s.basis : Matrix(ambient_dim, 0), section);
  const auto inv = inverse(full);
  if (!inv) throw StructuralError("quotient_map: complement construction failed");
  std::vector<std::size_t> rows;
  for (std::size_t i = s.dim(); i < ambient_dim; ++i) rows.push_back(i);
  out.projection = inv->select_rows(rows);
  return out;
}

Matrix left_inverse(const Matrix& a) {
  if (a.cols() == 0) return Matrix(0, a.rows());
  const auto e = rref(a.transpose());
  if (e.rank() != a.cols()) throw StructuralError("left_inverse: matrix is not full column rank");
  // Rows of A at the pivot positions form an invertible square block.
  const auto square = a.select_rows(e.pivot_cols);
  const auto inv = inverse(square);
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < e.pivot_cols.size(); ++j) out(i, e.pivot_cols[j]) = (*inv)(i, j);
  return out;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw StructuralError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Matrix(0, 0);
  const auto e = rref(hstack(a, Matrix::identity(n)));
  if (e.rank() < n || e.pivot_cols[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

}  // namespace dgw
