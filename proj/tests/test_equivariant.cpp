#include <doctest.h>

#include "dgw/equivariant.hpp"
#include "dgw/errors.hpp"
#include "dgw/instances.hpp"
#include "oracle.hpp"

using namespace dgw;

namespace {

GradedSpace weighted(std::vector<int> degrees, std::vector<Weight> weights) {
  GradedSpace g;
  g.degrees = std::move(degrees);
  g.weights = std::move(weights);
  return g;
}

EquivariantComplex named(const std::string& name) {
  for (const auto& [n, v] : equivariant_corpus())
    if (n == name) return v;
  throw std::logic_error("no complex " + name);
}

FreeFactor trivial_factor(std::size_t rank) {
  FreeFactor p;
  p.space = weighted({0}, {Weight(rank, 0)});
  p.unit = 0;
  p.left = std::vector<Matrix>{Matrix::identity(1)};
  return p;
}

bool is_iso(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

}  // namespace

TEST_CASE("corpus complexes validate") {
  const auto corpus = equivariant_corpus();
  CHECK(corpus.size() >= 8);
  for (const auto& [name, v] : corpus) {
    INFO(name);
    CHECK_NOTHROW(validate_equivariant(v));
    for (std::size_t x = 0; x < v.group.lie_dim(); ++x)
      CHECK(v.carrier.d() * v.i_ops[x] + v.i_ops[x] * v.carrier.d() == v.defect(x));
  }
}

TEST_CASE("Koszul rank 1: d i + i d = nu(H)") {
  const auto v = koszul_rank1();
  CHECK(v.defect(0) == Matrix::identity(2));
  CHECK(is_acyclic(v.carrier));
  auto broken = v;
  broken.i_ops[0](0, 1) = 2;
  CHECK_THROWS_AS(validate_equivariant(broken), ValidationError);
  // i of degree 0 is refused before any identity is checked.
  auto wrong_degree = v;
  wrong_degree.i_ops[0] = Matrix::identity(2);
  CHECK_THROWS(validate_equivariant(wrong_degree));
}

TEST_CASE("i squaring to nonzero is rejected") {
  EquivariantComplex v;
  v.group = GroupData::torus(1);
  Matrix i(3, 3);
  i(1, 2) = 1;
  i(0, 1) = 1;
  v.carrier = Complex::discrete(weighted({-2, -1, 0}, {{0}, {0}, {0}}));
  v.psi = {Matrix(0, 1)};
  v.i_ops = {i};
  try {
    validate_equivariant(v);
    FAIL("accepted");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("square to zero") != std::string::npos);
  }
}

TEST_CASE("weights and generators") {
  auto v = named("z2_regular");
  auto off = v;
  off.pi_weights[1] = {0};
  CHECK_THROWS(validate_equivariant(off));
  auto unreduced = v;
  unreduced.carrier = Complex::discrete(weighted({0, 0}, {{0}, {3}}));
  CHECK_THROWS_AS(validate_equivariant(unreduced), StructuralError);
  CHECK(GroupData::finite({2}).normalize({3}) == Weight{1});
  CHECK(GroupData::finite({2, 3}).characters().size() == 6);
}

TEST_CASE("q_embed") {
  Matrix h(1, 1), psi(1, 1);
  h(0, 0) = 2;
  psi(0, 0) = 1;
  const auto ok = q_embed(GroupData::torus(1), Complex::discrete(weighted({0}, {{2}})), {"h"}, {h}, {{0}}, {psi});
  CHECK(ok.i_ops[0].is_zero());
  Matrix h1(1, 1);
  h1(0, 0) = 1;
  CHECK_THROWS_AS(q_embed(GroupData::torus(1), Complex::discrete(weighted({0}, {{2}})), {"h"}, {h1}, {{0}}, {psi}),
                  ValidationError);
}

TEST_CASE("ind_w") {
  const auto z2 = GroupData::finite({2});
  const auto point = complex_corpus()[1].complex;
  const auto ind = ind_w(z2, point);
  CHECK(ind.dim() == 2);
  std::vector<Weight> ws = ind.carrier.space().weights;
  std::sort(ws.begin(), ws.end());
  CHECK(ws == std::vector<Weight>{{0}, {1}});
  const auto z3 = GroupData::finite({3});
  const auto ind3 = ind_w(z3, complex_corpus()[3].complex);
  CHECK(ind3.dim() == 3 * complex_corpus()[3].complex.dim());
  CHECK(oracle::cohomology_dims(ind3.carrier).at(0) ==
        3 * oracle::cohomology_dims(complex_corpus()[3].complex)[0]);
}

TEST_CASE("ind_w adjunction") {
  for (const char* xn : {"z2_acyclic", "z2_regular", "z2_sign_cancel"}) {
    for (std::size_t c : {1u, 2u, 5u}) {
      INFO(xn << " with complex " << c);
      const auto adj = ind_adjunction(named(xn), complex_corpus()[c].complex);
      CHECK(adj.equivariant_maps == adj.plain_maps);
      CHECK(triangle_identity_check(adj.data).ok());
    }
  }
}

TEST_CASE("pro_free") {
  // One-dimensional P: Hom(P, V) = V.
  for (const char* n : {"z2_regular", "z2_sign_cancel", "z3_characters"}) {
    INFO(n);
    const auto v = named(n);
    const auto p = trivial_factor(1);
    const auto h = pro_free(p, v);
    CHECK(h.dim() == v.dim());
    CHECK(is_iso(pro_counit(p, v)));
    CHECK_NOTHROW(validate_equivariant_map(h, v, pro_counit(p, v)));
  }
  // k[Z/2]: twice the dimension, weights shifted by the characters.
  const auto p = group_algebra_z2();
  const auto x = z2_regular_x();
  const auto v = named("z2_sign_cancel");
  const auto hv = pro_free(p, v);
  CHECK(hv.dim() == 2 * v.dim());
  CHECK_NOTHROW(validate_equivariant(hv));
  CHECK(oracle::cohomology_dims(hv.carrier) == std::map<int, std::size_t>{{0, 0}, {1, 0}, {2, 0}});
  CHECK(triangle_identity_check(pro_adjunction(p, x, v)).ok());
  CHECK(triangle_identity_check(pro_adjunction(p, x, named("z2_acyclic"))).ok());
}

TEST_CASE("pro_free is exact") {
  const auto p = group_algebra_z2();
  const auto a = named("z2_acyclic");
  const auto c = named("z2_sign_cancel");
  EquivariantComplex b = a;
  b.carrier = direct_sum(a.carrier, c.carrier);
  validate_equivariant(b);
  Matrix f(b.dim(), a.dim()), g(c.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) f(i, i) = 1;
  for (std::size_t i = 0; i < c.dim(); ++i) g(i, a.dim() + i) = 1;
  const auto r = pro_exactness(p, a, b, c, f, g);
  CHECK(r.exact);
  CHECK(r.rank_in + r.rank_out == r.dim_middle);
  CHECK_THROWS_AS(pro_exactness(p, a, b, c, f, Matrix(c.dim(), b.dim())), ValidationError);
}

TEST_CASE("minimal polynomials") {
  Matrix m(3, 3);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 2) = 2;
  CHECK(minimal_polynomial(m) == std::vector<Rational>{Rational(2), Rational(-3), Rational(1)});
  CHECK(squarefree(minimal_polynomial(m)));
  Matrix n(2, 2);
  n(0, 1) = 1;
  CHECK(minimal_polynomial(n) == std::vector<Rational>{Rational(0), Rational(0), Rational(1)});
  CHECK_FALSE(squarefree(minimal_polynomial(n)));
  CHECK(minimal_polynomial(Matrix(2, 2)) == std::vector<Rational>{Rational(0), Rational(1)});
}

TEST_CASE("forgetful functor to DG modules") {
  const auto one = forgetful_to_dg(koszul_rank1());
  REQUIRE(one.minimal_polynomials.size() == 1);
  CHECK(one.minimal_polynomials[0] == std::vector<Rational>{Rational(-1), Rational(1)});
  CHECK(one.module.dim() == 2);
  const auto split = forgetful_to_dg(koszul_rank1_split());
  CHECK(split.minimal_polynomials[0].size() == 3);
  CHECK(split.algebra->dim() == 4);
  // Finite groups have no Lie algebra: the module is over the ground field.
  CHECK(forgetful_to_dg(named("z2_regular")).algebra->dim() == 1);
  for (const auto& [name, v] : equivariant_corpus()) {
    INFO(name);
    CHECK(forgetful_to_dg(v).module.dim() == v.dim());
  }
}

TEST_CASE("equivariant resolution") {
  for (const char* n : {"koszul_rank1", "koszul_rank1_split", "koszul_with_generator", "strong_line"}) {
    INFO(n);
    const auto v = named(n);
    const auto r = equivariant_resolution(v, 3);
    CHECK(r.columns.size() == 4);
    CHECK_NOTHROW(validate_equivariant(r.total));
    CHECK_NOTHROW(validate_equivariant_map(r.total, v, r.augmentation));
    for (std::size_t j = 0; j < r.columns.size(); ++j) CHECK(r.columns[j].i_ops.size() == v.group.lie_dim());
    // The covers are onto.
    CHECK(rank(r.covers[0]) == v.dim());
    // Total complex agrees with V in the top degrees.
    const auto qi = is_quasi_iso(r.total.carrier, v.carrier, r.augmentation);
    CHECK(qi.degrees.at(*v.carrier.space().top()).iso());
  }
}
