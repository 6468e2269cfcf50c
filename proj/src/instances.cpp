#include "dgw/instances.hpp"

#include <algorithm>
#include <numeric>

#include "dgw/errors.hpp"

namespace dgw {

namespace {

Complex line(int degree) { return Complex::discrete(GradedSpace::from_dims({{degree, 1}})); }

GradedSpace space_of(std::vector<int> degrees, std::vector<std::string> labels) {
  GradedSpace g;
  g.degrees = std::move(degrees);
  g.labels = std::move(labels);
  return g;
}

GradedSpace weighted(std::vector<int> degrees, std::vector<Weight> weights) {
  GradedSpace g;
  g.degrees = std::move(degrees);
  g.weights = std::move(weights);
  return g;
}

std::vector<std::size_t> degree_order(const GradedSpace& g) {
  std::vector<std::size_t> perm(g.dim());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) { return g.degrees[a] < g.degrees[b]; });
  return perm;
}

GradedSpace permuted(const GradedSpace& g, const std::vector<std::size_t>& perm) {
  GradedSpace out;
  for (auto p : perm) {
    out.degrees.push_back(g.degrees[p]);
    if (!g.labels.empty()) out.labels.push_back(g.labels[p]);
    if (g.has_weights()) out.weights.push_back(g.weights[p]);
  }
  return out;
}

Matrix conjugate(const Matrix& m, const std::vector<std::size_t>& perm) { return m.select(perm, perm); }

}  // namespace

// ---- algebras -------------------------------------------------------------

AlgebraPtr ground_field() {
  static const AlgebraPtr k = share(DGAlgebra::make(space_of({0}, {"1"}), Matrix(1, 1), 0, {Matrix::identity(1)}));
  return k;
}

AlgebraPtr delta_algebra() {
  Matrix d(3, 3);
  d(2, 0) = 1;
  std::vector<DGAlgebra::Constant> c{{1, 0, 0, Rational(1)}, {1, 1, 1, Rational(1)}, {1, 2, 2, Rational(1)},
                                     {0, 1, 0, Rational(1)}, {2, 1, 2, Rational(1)}};
  return share(DGAlgebra::from_constants(space_of({-1, 0, 0}, {"x", "1", "y"}), std::move(d), 1, c));
}

AlgebraPtr lambda_algebra() {
  std::vector<DGAlgebra::Constant> c{{1, 0, 0, Rational(1)}, {1, 1, 1, Rational(1)}, {0, 1, 0, Rational(1)}};
  return share(DGAlgebra::from_constants(space_of({-1, 0}, {"x", "1"}), Matrix(2, 2), 1, c));
}

AlgebraPtr upper_triangular_algebra() {
  // 0 = 1, 1 = e12, 2 = e22.
  std::vector<DGAlgebra::Constant> c;
  for (std::size_t i = 0; i < 3; ++i) {
    c.push_back({0, i, i, Rational(1)});
    if (i != 0) c.push_back({i, 0, i, Rational(1)});
  }
  c.push_back({2, 2, 2, Rational(1)});
  c.push_back({1, 2, 1, Rational(1)});
  Matrix iota(3, 3);
  iota(0, 0) = 1;
  iota(1, 1) = 1;
  iota(0, 2) = 1;
  iota(2, 2) = -1;
  return share(DGAlgebra::from_constants(space_of({0, 0, 0}, {"1", "e12", "e22"}), Matrix(3, 3), 0, c, iota));
}

DGAlgebraMorphism augmentation(const AlgebraPtr& a) {
  Matrix m(1, a->dim());
  m(0, a->unit()) = 1;
  return make_algebra_morphism(a, ground_field(), std::move(m));
}

DGAlgebraMorphism unit_inclusion(const AlgebraPtr& a) {
  Matrix m(a->dim(), 1);
  m(a->unit(), 0) = 1;
  return make_algebra_morphism(ground_field(), a, std::move(m));
}

// ---- modules --------------------------------------------------------------

Complex sort_by_degree(const Complex& c) {
  const auto perm = degree_order(c.space());
  return Complex::make(permuted(c.space(), perm), conjugate(c.d(), perm));
}

std::vector<std::size_t> degree_permutation(const GradedSpace& g) { return degree_order(g); }

DGModule permute(const DGModule& m, const std::vector<std::size_t>& perm) {
  if (perm.size() != m.dim()) throw StructuralError("permute: wrong permutation size");
  std::vector<std::size_t> inv(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || inv[perm[i]] != perm.size()) throw StructuralError("permute: not a permutation");
    inv[perm[i]] = i;
  }
  std::vector<Matrix> actions;
  for (const auto& a : m.actions()) actions.push_back(conjugate(a, perm));
  std::optional<FreeBasis> free;
  if (m.free_basis()) {
    const auto& fb = *m.free_basis();
    FreeBasis out;
    for (auto g : fb.generators) out.generators.push_back(inv[g]);
    for (auto p : perm) {
      out.alg.push_back(fb.alg[p]);
      out.gen.push_back(fb.gen[p]);
      out.sign.push_back(fb.sign[p]);
    }
    free = std::move(out);
  }
  return DGModule::make(m.algebra_ptr(), Complex::make(permuted(m.space(), perm), conjugate(m.d(), perm)),
                        std::move(actions), std::move(free), m.kprojective_by_construction());
}

DGModule sort_by_degree(const DGModule& m) { return permute(m, degree_order(m.space())); }

DGModule trivial_point(const AlgebraPtr& a) { return trivial_module(a, line(0)); }

DGModule delta_mod_y() {
  const auto a = delta_algebra();
  Matrix x(2, 2);
  x(0, 1) = 1;
  return DGModule::make(a, Complex::discrete(space_of({-1, 0}, {"x", "1"})), {x, Matrix::identity(2), Matrix(2, 2)});
}

std::vector<NamedModule> delta_modules() {
  const auto a = delta_algebra();
  const auto k = trivial_point(a);
  const auto reg = regular_module(a);
  Matrix to_k(1, 3);
  to_k(0, 1) = 1;
  Matrix one(1, 1);
  one(0, 0) = 1;
  Complex pair = Complex::make(GradedSpace::from_dims({{-1, 1}, {0, 1}}), [] {
    Matrix d(2, 2);
    d(1, 0) = 1;
    return d;
  }());
  GradedSpace two = GradedSpace::from_dims({{-1, 1}, {0, 1}});
  return {
      {"delta_k", k},
      {"delta_k_shift_up", shift(k, 1)},
      {"delta_k_shift_down", shift(k, -1)},
      {"delta_regular", reg},
      {"delta_mod_y", delta_mod_y()},
      {"delta_mod_y_shift", shift(delta_mod_y(), 1)},
      {"delta_k_sum", direct_sum(k, shift(k, -1))},
      {"delta_cone_id_k", cone(k, k, one)},
      {"delta_cone_augmentation", cone(reg, k, to_k)},
      {"delta_free_two", sort_by_degree(free_module(a, two))},
      {"delta_trivial_acyclic", trivial_module(a, pair)},
  };
}

std::vector<NamedModule> lambda_modules() {
  const auto a = lambda_algebra();
  const auto k = trivial_point(a);
  return {{"lambda_k", k}, {"lambda_regular", regular_module(a)}, {"lambda_k_shift", shift(k, 1)}};
}

std::vector<NamedModule> upper_triangular_modules() {
  const auto a = upper_triangular_algebra();
  auto simple = [&](int e22) {
    Matrix m(1, 1);
    m(0, 0) = e22;
    return DGModule::make(a, line(0), {Matrix::identity(1), Matrix(1, 1), m});
  };
  return {{"t2_regular", regular_module(a)}, {"t2_simple_1", simple(0)}, {"t2_simple_2", simple(1)}};
}

// ---- complexes ------------------------------------------------------------

std::vector<NamedComplex> complex_corpus() {
  std::vector<NamedComplex> out;
  out.push_back({"zero", Complex::zero()});
  out.push_back({"point", line(0)});
  {
    Matrix d(2, 2);
    d(1, 0) = 1;
    out.push_back({"acyclic_pair", Complex::make(GradedSpace::from_dims({{0, 1}, {1, 1}}), d)});
  }
  {
    // 1 -> 2 -> 1 with d1 d0 = 1 - 1.
    Matrix d(4, 4);
    d(1, 0) = 1;
    d(2, 0) = 1;
    d(3, 1) = 1;
    d(3, 2) = -1;
    out.push_back({"sign_cancel", Complex::make(GradedSpace::from_dims({{0, 1}, {1, 2}, {2, 1}}), d)});
  }
  // Every random complex has at least two composable nonzero blocks of d.
  for (int seed = 1; seed <= 20; ++seed) {
    gen::Rng rng(static_cast<std::uint64_t>(seed));
    const int lo = -static_cast<int>(rng() % 3);
    const std::size_t width = 3 + rng() % 2;
    std::vector<std::size_t> ranks(width - 1), betti(width);
    for (auto& r : ranks) r = 1 + rng() % 2;
    for (auto& b : betti) b = seed % 4 == 0 ? 0 : rng() % 2;
    out.push_back({"random_" + std::to_string(seed), gen::split_complex(rng, lo, ranks, betti)});
  }
  return out;
}

// ---- equivariant ----------------------------------------------------------

EquivariantComplex koszul_rank1() {
  EquivariantComplex v;
  v.group = GroupData::torus(1);
  Matrix d(2, 2), i(2, 2);
  d(1, 0) = 1;
  i(0, 1) = 1;
  v.carrier = Complex::make(weighted({-1, 0}, {{1}, {1}}), d);
  v.psi = {Matrix(0, 1)};
  v.i_ops = {i};
  validate_equivariant(v);
  return v;
}

EquivariantComplex koszul_rank1_split() {
  EquivariantComplex v;
  v.group = GroupData::torus(1);
  Matrix d(3, 3), i(3, 3);
  d(1, 0) = 1;
  i(0, 1) = 1;
  v.carrier = Complex::make(weighted({-1, 0, 0}, {{1}, {1}, {0}}), d);
  v.psi = {Matrix(0, 1)};
  v.i_ops = {i};
  validate_equivariant(v);
  return v;
}

FreeFactor group_algebra_z2() {
  FreeFactor p;
  p.space = weighted({0, 0}, {{0}, {1}});
  p.space.labels = {"1", "t"};
  p.unit = 0;
  Matrix t(2, 2);
  t(0, 1) = 1;
  t(1, 0) = 1;
  p.left = std::vector<Matrix>{Matrix::identity(2), t};
  return p;
}

EquivariantComplex z2_regular_x() {
  EquivariantComplex x;
  x.group = GroupData::finite({2});
  x.carrier = Complex::discrete(weighted({0, 0}, {{0}, {1}}));
  Matrix t(2, 2);
  t(0, 1) = 1;
  t(1, 0) = 1;
  x.generator_names = {"1", "t"};
  x.pi = {Matrix::identity(2), t};
  x.pi_weights = {{0}, {1}};
  validate_equivariant(x);
  return x;
}

std::vector<NamedEquivariant> equivariant_corpus() {
  std::vector<NamedEquivariant> out;
  {
    Matrix h(1, 1), psi(1, 1);
    h(0, 0) = 2;
    psi(0, 0) = 1;
    out.push_back({"strong_line", q_embed(GroupData::torus(1), Complex::discrete(weighted({0}, {{2}})), {"h"}, {h},
                                          {{0}}, {psi})});
  }
  {
    Matrix h(2, 2), e(2, 2), psi(2, 1);
    h(1, 1) = 2;
    e(1, 0) = 1;
    psi(0, 0) = 1;
    out.push_back({"strong_weight_pair",
                   q_embed(GroupData::torus(1), Complex::discrete(weighted({0, 0}, {{0}, {2}})), {"h", "e"}, {h, e},
                           {{0}, {2}}, {psi})});
  }
  out.push_back({"koszul_rank1", koszul_rank1()});
  out.push_back({"koszul_rank1_split", koszul_rank1_split()});
  {
    EquivariantComplex v;
    v.group = GroupData::torus(1);
    Matrix d(2, 2), i(2, 2), psi(1, 1);
    d(1, 0) = 1;
    i(0, 1) = 1;
    psi(0, 0) = 1;
    v.carrier = Complex::make(weighted({-1, 0}, {{2}, {2}}), d);
    v.generator_names = {"h"};
    v.pi = {Matrix::identity(2)};
    v.pi_weights = {{0}};
    v.psi = {psi};
    v.i_ops = {i};
    validate_equivariant(v);
    out.push_back({"koszul_with_generator", v});
  }
  {
    EquivariantComplex v;
    v.group = GroupData::finite({2});
    Matrix d(2, 2);
    d(1, 0) = 1;
    v.carrier = Complex::make(weighted({0, 1}, {{1}, {1}}), d);
    validate_equivariant(v);
    out.push_back({"z2_acyclic", v});
  }
  {
    EquivariantComplex v;
    v.group = GroupData::finite({3});
    v.carrier = Complex::discrete(weighted({0, 0, 0}, {{0}, {1}, {2}}));
    validate_equivariant(v);
    out.push_back({"z3_characters", v});
  }
  out.push_back({"z2_regular", z2_regular_x()});
  {
    // 1 -> 2 -> 1 in the sign character, d^2 = 1 - 1.
    EquivariantComplex v;
    v.group = GroupData::finite({2});
    Matrix d(4, 4);
    d(1, 0) = 1;
    d(2, 0) = 1;
    d(3, 1) = 1;
    d(3, 2) = -1;
    v.carrier = Complex::make(weighted({0, 1, 1, 2}, {{1}, {1}, {1}, {1}}), d);
    validate_equivariant(v);
    out.push_back({"z2_sign_cancel", v});
  }
  return out;
}

PBWContext abelian_context(std::size_t dim, std::size_t k_dim, std::size_t degree_bound) {
  PBWContext ctx;
  for (std::size_t i = 0; i < dim; ++i) {
    ctx.names.push_back("Z" + std::to_string(i + 1));
    ctx.weights.push_back({0});
  }
  ctx.k_dim = k_dim;
  ctx.degree_bound = degree_bound;
  return ctx;
}

// ---- random instances -----------------------------------------------------

namespace gen {

Rational small(Rng& rng, int bound) {
  return Rational(static_cast<long>(rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound);
}

Matrix random_invertible(Rng& rng, std::size_t n) {
  Matrix l = Matrix::identity(n), u = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = small(rng, 2);
      u(j, i) = small(rng, 2);
    }
  return l * u;
}

Complex split_complex(Rng& rng, int lo, const std::vector<std::size_t>& ranks, const std::vector<std::size_t>& betti) {
  const std::size_t w = betti.size();
  if (ranks.size() + 1 != w && !(w == 0 && ranks.empty())) throw StructuralError("split_complex: need one rank per gap");
  std::vector<std::size_t> n(w);
  for (std::size_t k = 0; k < w; ++k) n[k] = (k > 0 ? ranks[k - 1] : 0) + betti[k] + (k + 1 < w ? ranks[k] : 0);
  std::map<int, std::size_t> dims;
  for (std::size_t k = 0; k < w; ++k) dims[lo + static_cast<int>(k)] = n[k];
  GradedSpace g = GradedSpace::from_dims(dims);
  std::vector<std::size_t> offset(w + 1, 0);
  for (std::size_t k = 0; k < w; ++k) offset[k + 1] = offset[k] + n[k];
  // Adapted basis in degree k: images of d (first ranks[k-1]), cohomology, then sources.
  Matrix d(g.dim(), g.dim());
  for (std::size_t k = 0; k + 1 < w; ++k)
    for (std::size_t j = 0; j < ranks[k]; ++j) d(offset[k + 1] + j, offset[k] + n[k] - ranks[k] + j) = 1;
  Matrix p(g.dim(), g.dim()), p_inv(g.dim(), g.dim());
  for (std::size_t k = 0; k < w; ++k) {
    const Matrix b = random_invertible(rng, n[k]);
    p.set_block(offset[k], offset[k], b);
    p_inv.set_block(offset[k], offset[k], *inverse(b));
  }
  return Complex::make(std::move(g), p * d * p_inv);
}

Complex random_complex(Rng& rng, int lo, int width, std::size_t max_dim, bool acyclic) {
  const auto w = static_cast<std::size_t>(width);
  std::vector<std::size_t> n(w), c(w > 0 ? w - 1 : 0, 0), h(w, 0);
  if (acyclic) {
    for (auto& r : c) r = rng() % (max_dim / 2 + 1);
  } else {
    for (std::size_t k = 0; k < w; ++k) n[k] = rng() % (max_dim + 1);
    for (std::size_t k = 0; k + 1 < w; ++k) {
      const std::size_t avail = n[k] - (k > 0 ? c[k - 1] : 0);
      c[k] = rng() % (std::min(avail, n[k + 1]) + 1);
    }
    for (std::size_t k = 0; k < w; ++k) h[k] = n[k] - (k > 0 ? c[k - 1] : 0) - (k + 1 < w ? c[k] : 0);
  }
  return split_complex(rng, lo, c, h);
}

std::vector<Matrix> chain_map_basis(const Complex& v, const Complex& w) {
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j)
      if (w.space().degrees[i] == v.space().degrees[j]) unknowns.emplace_back(i, j);
  Matrix eq(w.dim() * v.dim(), unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto [i, j] = unknowns[u];
    for (std::size_t p = 0; p < w.dim(); ++p)
      if (sgn(w.d()(p, i)) != 0) eq(p * v.dim() + j, u) += w.d()(p, i);
    for (std::size_t q = 0; q < v.dim(); ++q)
      if (sgn(v.d()(j, q)) != 0) eq(i * v.dim() + q, u) -= v.d()(j, q);
  }
  const Matrix kb = kernel_basis(eq);
  std::vector<Matrix> out;
  for (std::size_t c = 0; c < kb.cols(); ++c) {
    Matrix f(w.dim(), v.dim());
    for (std::size_t u = 0; u < unknowns.size(); ++u) f(unknowns[u].first, unknowns[u].second) = kb(u, c);
    out.push_back(std::move(f));
  }
  return out;
}

Matrix random_chain_map(Rng& rng, const Complex& v, const Complex& w) {
  Matrix f(w.dim(), v.dim());
  for (const auto& b : chain_map_basis(v, w)) f += b * small(rng);
  return f;
}

Matrix random_graded(Rng& rng, const GradedSpace& src, const GradedSpace& dst, int degree) {
  Matrix m(dst.dim(), src.dim());
  for (std::size_t i = 0; i < dst.dim(); ++i)
    for (std::size_t j = 0; j < src.dim(); ++j)
      if (dst.degrees[i] == src.degrees[j] + degree) m(i, j) = small(rng);
  return m;
}

}  // namespace gen

}  // namespace dgw
