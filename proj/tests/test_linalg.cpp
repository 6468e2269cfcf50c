#include <doctest.h>

#include "dgw/errors.hpp"
#include "dgw/instances.hpp"
#include "dgw/linalg.hpp"
#include "oracle.hpp"

using namespace dgw;

namespace {

Matrix random_matrix(gen::Rng& rng, std::size_t rows, std::size_t cols, int bound = 4) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = gen::small(rng, bound);
  return m;
}

// Low rank product so kernels and cokernels are nontrivial.
Matrix random_low_rank(gen::Rng& rng, std::size_t rows, std::size_t cols, std::size_t r) {
  return random_matrix(rng, rows, r) * random_matrix(rng, r, cols);
}

}  // namespace

TEST_CASE("rationals parse and print canonically") {
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(parse_rational("-2/4")) == "-1/2");
  CHECK_THROWS_AS(parse_rational("2/-4"), StructuralError);
  CHECK(format_rational(parse_rational("0/7")) == "0");
  CHECK(format_rational(parse_rational("+5")) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), StructuralError);
  CHECK_THROWS_AS(parse_rational("abc"), StructuralError);
  CHECK_THROWS_AS(parse_rational(""), StructuralError);
  CHECK_THROWS_AS(parse_rational("1.5"), StructuralError);
}

TEST_CASE("matrix arithmetic matches the naive product") {
  gen::Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_matrix(rng, 1 + rng() % 7, 1 + rng() % 7);
    const Matrix b = random_matrix(rng, a.cols(), 1 + rng() % 7);
    CHECK(a * b == oracle::multiply(a, b));
    CHECK(kernels::multiply_serial(a, b) == kernels::multiply_parallel(a, b));
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
  }
  CHECK_THROWS_AS(Matrix(2, 3) * Matrix(2, 3), StructuralError);
}

TEST_CASE("kronecker is left-factor major") {
  Matrix a(1, 2), b(2, 1);
  a(0, 0) = 1;
  a(0, 1) = 2;
  b(0, 0) = 3;
  b(1, 0) = 5;
  const Matrix k = kronecker(a, b);
  REQUIRE(k.rows() == 2);
  REQUIRE(k.cols() == 2);
  CHECK(k(0, 0) == 3);
  CHECK(k(1, 0) == 5);
  CHECK(k(0, 1) == 6);
  CHECK(k(1, 1) == 10);
}

TEST_CASE("serial and parallel rref agree exactly") {
  gen::Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    const std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12;
    const Matrix a = random_low_rank(rng, rows, cols, 1 + rng() % 5);
    const auto s = kernels::rref_serial(a);
    const auto p = kernels::rref_parallel(a);
    CHECK(s.reduced == p.reduced);
    CHECK(s.pivot_cols == p.pivot_cols);
    CHECK(s.rank() == oracle::rank(a));
  }
}

TEST_CASE("rref output is reduced") {
  gen::Rng rng(3);
  const Matrix a = random_low_rank(rng, 6, 8, 3);
  const auto e = rref(a);
  for (std::size_t r = 0; r < e.rank(); ++r) {
    const std::size_t c = e.pivot_cols[r];
    CHECK(e.reduced(r, c) == 1);
    for (std::size_t i = 0; i < e.reduced.rows(); ++i)
      if (i != r) CHECK(sgn(e.reduced(i, c)) == 0);
  }
  for (std::size_t r = e.rank(); r < e.reduced.rows(); ++r)
    for (std::size_t c = 0; c < e.reduced.cols(); ++c) CHECK(sgn(e.reduced(r, c)) == 0);
}

TEST_CASE("kernel and image have the right dimensions and properties") {
  gen::Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
    const Matrix a = random_low_rank(rng, rows, cols, rng() % 5);
    const std::size_t r = oracle::rank(a);
    const Matrix k = kernel_basis(a);
    const Matrix im = image_basis(a);
    CHECK(k.rows() == cols);
    CHECK(k.cols() == cols - r);
    CHECK((a * k).is_zero());
    CHECK(oracle::rank(k) == k.cols());
    CHECK(im.cols() == r);
    CHECK(oracle::rank(hstack(im, a)) == r);
  }
}

TEST_CASE("solve_exact returns a solution and the kernel") {
  gen::Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const Matrix a = random_low_rank(rng, 1 + rng() % 8, 1 + rng() % 8, 1 + rng() % 4);
    const Matrix x0 = random_matrix(rng, a.cols(), 1);
    const Matrix b = a * x0;
    const auto sol = solve_exact(a, b);
    REQUIRE(sol.solution.has_value());
    CHECK(a * *sol.solution == b);
    CHECK((a * sol.kernel).is_zero());
    CHECK(sol.kernel.cols() == a.cols() - oracle::rank(a));
  }
  // Inconsistent: b outside the column space.
  Matrix a(2, 1), b(2, 1);
  a(0, 0) = 1;
  b(1, 0) = 1;
  CHECK_FALSE(solve_particular(a, b).has_value());
}

TEST_CASE("quotient map kills exactly the subspace") {
  gen::Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng() % 7;
    const Matrix basis = image_basis(random_low_rank(rng, n, 4, 1 + rng() % 3));
    const auto s = Subspace::from_basis(n, basis);
    const auto q = quotient_map(n, s);
    CHECK(q.projection.rows() == n - s.dim());
    CHECK((q.projection * s.basis).is_zero());
    CHECK(q.projection * q.section == Matrix::identity(n - s.dim()));
    CHECK(oracle::rank(q.projection) == n - s.dim());
  }
  CHECK_THROWS_AS(Subspace::from_basis(2, Matrix(2, 1)), StructuralError);
}

TEST_CASE("inverse and left inverse") {
  gen::Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 7;
    const Matrix a = gen::random_invertible(rng, n);
    const auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK(a * *inv == Matrix::identity(n));
    CHECK(*inv * a == Matrix::identity(n));
    const Matrix tall = vstack(a, random_matrix(rng, 2, n));
    CHECK(left_inverse(tall) * tall == Matrix::identity(n));
  }
  Matrix singular(2, 2);
  singular(0, 0) = 1;
  singular(0, 1) = 2;
  singular(1, 0) = 2;
  singular(1, 1) = 4;
  CHECK_FALSE(inverse(singular).has_value());
}

TEST_CASE("empty shapes are handled") {
  CHECK(rank(Matrix(0, 3)) == 0);
  CHECK(kernel_basis(Matrix(0, 3)).cols() == 3);
  CHECK(image_basis(Matrix(3, 0)).cols() == 0);
  CHECK((Matrix(2, 0) * Matrix(0, 4)).is_zero());
  CHECK((Matrix(2, 0) * Matrix(0, 4)).cols() == 4);
}
