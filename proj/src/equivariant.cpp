#include "dgw/equivariant.hpp"

#include <bit>
#include <map>

#include "dgw/errors.hpp"

namespace dgw {

namespace {

std::string pos(std::size_t i) { return std::to_string(i); }

std::optional<std::size_t> first_differing_column(const Matrix& a, const Matrix& b) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return j;
  return std::nullopt;
}

Weight weight_of(const GradedSpace& g, std::size_t i, std::size_t rank) {
  return g.has_weights() ? g.weights[i] : Weight(rank, 0);
}

void require_weight_shift(const GroupData& k, const Matrix& m, const GradedSpace& src, const GradedSpace& dst,
                          const Weight& shift, const std::string& what) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0 &&
          k.normalize(weight_of(dst, i, k.rank())) != k.add(weight_of(src, j, k.rank()), shift))
        throw ValidationError(what + " does not have the declared weight",
                              "entry (" + pos(i) + "," + pos(j) + ")");
}

}  // namespace

// ---- groups ---------------------------------------------------------------

GroupData GroupData::torus(std::size_t rank) {
  GroupData g;
  g.kind = Kind::torus;
  g.torus_rank = rank;
  return g;
}

GroupData GroupData::finite(std::vector<long long> orders) {
  GroupData g;
  g.kind = Kind::finite;
  g.orders = std::move(orders);
  g.validate();
  return g;
}

std::size_t GroupData::order() const {
  if (!is_finite()) throw StructuralError("a torus has no finite order");
  std::size_t n = 1;
  for (auto o : orders) n *= static_cast<std::size_t>(o);
  return n;
}

Weight GroupData::normalize(Weight w) const {
  if (w.size() != rank()) throw StructuralError("weight of rank " + pos(w.size()) + " for a group of rank " + pos(rank()));
  if (is_finite())
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = ((w[j] % orders[j]) + orders[j]) % orders[j];
  return w;
}

Weight GroupData::add(const Weight& a, const Weight& b) const {
  Weight w(a.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = a[j] + b[j];
  return normalize(w);
}

Weight GroupData::subtract(const Weight& a, const Weight& b) const {
  Weight w(a.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = a[j] - b[j];
  return normalize(w);
}

std::vector<Weight> GroupData::characters() const {
  if (!is_finite()) throw StructuralError("a torus has infinitely many characters");
  std::vector<Weight> out{Weight{}};
  for (auto o : orders) {
    std::vector<Weight> next;
    for (const auto& w : out)
      for (long long c = 0; c < o; ++c) {
        auto x = w;
        x.push_back(c);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

void GroupData::validate() const {
  if (is_finite())
    for (auto o : orders)
      if (o <= 0) throw StructuralError("cyclic factor orders must be positive");
}

// ---- equivariant complexes ------------------------------------------------

Matrix EquivariantComplex::nu(std::size_t xi) const {
  Matrix m(dim(), dim());
  for (std::size_t b = 0; b < dim(); ++b) m(b, b) = Rational(static_cast<long>(carrier.space().weights[b][xi]));
  return m;
}

Matrix EquivariantComplex::pi_of(const Matrix& coeffs) const {
  Matrix m(dim(), dim());
  for (std::size_t g = 0; g < pi.size(); ++g)
    if (sgn(coeffs(g, 0)) != 0) m += pi[g] * coeffs(g, 0);
  return m;
}

Matrix EquivariantComplex::defect(std::size_t xi) const { return nu(xi) - pi_of(psi[xi]); }

void validate_equivariant(const EquivariantComplex& v) {
  const auto& k = v.group;
  k.validate();
  const auto& g = v.carrier.space();
  const std::size_t n = v.dim();
  if (k.rank() > 0) {
    if (g.weights.size() != n) throw StructuralError("equivariant complex: every basis vector needs a weight");
    for (std::size_t b = 0; b < n; ++b) {
      if (g.weights[b].size() != k.rank())
        throw StructuralError("equivariant complex: weight of basis vector " + pos(b) + " has the wrong rank");
      if (k.normalize(g.weights[b]) != g.weights[b])
        throw StructuralError("equivariant complex: weight of basis vector " + pos(b) + " is not reduced");
    }
  }
  const Weight zero(k.rank(), 0);
  require_weight_shift(k, v.carrier.d(), g, g, zero, "differential");
  if (v.pi.size() != v.pi_weights.size())
    throw StructuralError("equivariant complex: " + pos(v.pi.size()) + " generators, " + pos(v.pi_weights.size()) +
                          " generator weights");
  if (!v.generator_names.empty() && v.generator_names.size() != v.pi.size())
    throw StructuralError("equivariant complex: generator names do not match generators");
  for (std::size_t a = 0; a < v.pi.size(); ++a) {
    const std::string what = "generator " + pos(a);
    require_homogeneous(v.pi[a], g, g, 0, what);
    require_weight_shift(k, v.pi[a], g, g, k.normalize(v.pi_weights[a]), what);
    if (auto j = first_differing_column(v.carrier.d() * v.pi[a], v.pi[a] * v.carrier.d()))
      throw ValidationError(what + " does not commute with d", "basis vector " + pos(*j));
  }
  const std::size_t r = k.lie_dim();
  if (v.i_ops.size() != r || v.psi.size() != r)
    throw StructuralError("equivariant complex: expected " + pos(r) + " operators i_xi and psi(xi)");
  for (std::size_t x = 0; x < r; ++x) {
    if (v.psi[x].rows() != v.pi.size() || v.psi[x].cols() != 1)
      throw StructuralError("psi(xi" + pos(x) + ") must have one coefficient per generator");
    const std::string what = "i_xi" + pos(x);
    require_homogeneous(v.i_ops[x], g, g, -1, what);
    require_weight_shift(k, v.i_ops[x], g, g, zero, what);
    require_weight_shift(k, v.pi_of(v.psi[x]), g, g, zero, "pi(psi(xi" + pos(x) + "))");
    for (std::size_t y = x; y < r; ++y) {
      const Matrix anti = v.i_ops[x] * v.i_ops[y] + v.i_ops[y] * v.i_ops[x];
      if (auto j = first_differing_column(anti, Matrix(n, n)))
        throw ValidationError(x == y ? what + " does not square to zero"
                                     : "i_xi" + pos(x) + " and i_xi" + pos(y) + " do not anticommute",
                              "basis vector " + pos(*j));
    }
    for (std::size_t a = 0; a < v.pi.size(); ++a)
      if (auto j = first_differing_column(v.i_ops[x] * v.pi[a], v.pi[a] * v.i_ops[x]))
        throw ValidationError(what + " does not commute with generator " + pos(a), "basis vector " + pos(*j));
    const Matrix lhs = v.carrier.d() * v.i_ops[x] + v.i_ops[x] * v.carrier.d();
    if (auto j = first_differing_column(lhs, v.defect(x)))
      throw ValidationError("d i + i d != nu - pi psi for xi" + pos(x), "basis vector " + pos(*j));
  }
}

void validate_equivariant_map(const EquivariantComplex& a, const EquivariantComplex& b, const Matrix& f) {
  const auto& k = a.group;
  require_homogeneous(f, a.carrier.space(), b.carrier.space(), 0, "equivariant map");
  require_weight_shift(k, f, a.carrier.space(), b.carrier.space(), Weight(k.rank(), 0), "equivariant map");
  if (auto j = first_differing_column(b.carrier.d() * f, f * a.carrier.d()))
    throw ValidationError("equivariant map does not commute with d", "basis vector " + pos(*j));
  if (a.pi.size() == b.pi.size())
    for (std::size_t g = 0; g < a.pi.size(); ++g)
      if (auto j = first_differing_column(b.pi[g] * f, f * a.pi[g]))
        throw ValidationError("equivariant map does not commute with generator " + pos(g), "basis vector " + pos(*j));
  if (a.i_ops.size() == b.i_ops.size())
    for (std::size_t x = 0; x < a.i_ops.size(); ++x)
      if (auto j = first_differing_column(b.i_ops[x] * f, f * a.i_ops[x]))
        throw ValidationError("equivariant map does not commute with i_xi" + pos(x), "basis vector " + pos(*j));
}

EquivariantComplex q_embed(GroupData group, Complex carrier, std::vector<std::string> names, std::vector<Matrix> pi,
                           std::vector<Weight> pi_weights, std::vector<Matrix> psi) {
  EquivariantComplex v;
  v.group = std::move(group);
  v.carrier = std::move(carrier);
  v.generator_names = std::move(names);
  v.pi = std::move(pi);
  v.pi_weights = std::move(pi_weights);
  v.psi = std::move(psi);
  v.i_ops.assign(v.group.lie_dim(), Matrix(v.dim(), v.dim()));
  for (std::size_t x = 0; x < v.psi.size() && x < v.group.lie_dim(); ++x) {
    if (v.psi[x].rows() != v.pi.size()) break;  // reported by validation
    if (auto j = first_differing_column(v.defect(x), Matrix(v.dim(), v.dim())))
      throw ValidationError("module is weak but not strong: nu(xi" + pos(x) + ") != pi(psi(xi" + pos(x) + "))",
                            "basis vector " + pos(*j));
  }
  validate_equivariant(v);
  return v;
}

// ---- Ind_w ----------------------------------------------------------------

EquivariantComplex ind_w(const GroupData& k, const Complex& v) {
  if (!k.is_finite()) throw StructuralError("ind_w needs a finite group (R(K) of a torus is infinite-dimensional)");
  const auto chars = k.characters();
  GradedSpace g;
  for (const auto& chi : chars)
    for (std::size_t b = 0; b < v.dim(); ++b) {
      g.degrees.push_back(v.space().degrees[b]);
      g.weights.push_back(chi);
    }
  EquivariantComplex out;
  out.group = k;
  out.carrier = Complex::make(std::move(g), kronecker(Matrix::identity(chars.size()), v.d()));
  validate_equivariant(out);
  return out;
}

namespace {

std::size_t character_index(const GroupData& k, const Weight& w) {
  std::size_t idx = 0;
  const auto n = k.normalize(w);
  for (std::size_t j = 0; j < n.size(); ++j) idx = idx * static_cast<std::size_t>(k.orders[j]) + static_cast<std::size_t>(n[j]);
  return idx;
}

// Dimension of the space of chain maps src -> dst supported on allowed entries.
std::size_t chain_map_dimension(const Complex& src, const Complex& dst,
                                const std::function<bool(std::size_t, std::size_t)>& allowed) {
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t i = 0; i < dst.dim(); ++i)
    for (std::size_t j = 0; j < src.dim(); ++j)
      if (dst.space().degrees[i] == src.space().degrees[j] && allowed(i, j)) unknowns.emplace_back(i, j);
  Matrix eq(dst.dim() * src.dim(), unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto [i, j] = unknowns[u];
    for (std::size_t p = 0; p < dst.dim(); ++p)
      if (sgn(dst.d()(p, i)) != 0) eq(p * src.dim() + j, u) += dst.d()(p, i);
    for (std::size_t q = 0; q < src.dim(); ++q)
      if (sgn(src.d()(j, q)) != 0) eq(i * src.dim() + q, u) -= src.d()(j, q);
  }
  return unknowns.size() - rank(eq);
}

}  // namespace

IndAdjunction ind_adjunction(const EquivariantComplex& x, const Complex& v) {
  const auto& k = x.group;
  validate_equivariant(x);
  const auto ind_v = ind_w(k, v);
  const auto ind_x = ind_w(k, x.carrier);
  const std::size_t nc = k.order(), nx = x.dim(), nv = v.dim();
  IndAdjunction out;
  auto& adj = out.data;
  adj.pair = "forget -| ind_w";
  // Phi_X: x of weight chi -> chi (x) x.
  Matrix phi_x(nc * nx, nx);
  for (std::size_t b = 0; b < nx; ++b) phi_x(character_index(k, x.carrier.space().weights[b]) * nx + b, b) = 1;
  validate_equivariant_map(x, ind_x, phi_x);
  auto evaluation = [nc](std::size_t n) {
    Matrix m(n, nc * n);
    for (std::size_t c = 0; c < nc; ++c) m.set_block(0, c * n, Matrix::identity(n));
    return m;
  };
  adj.f_unit = phi_x;
  adj.counit_fx = evaluation(nx);
  chain_map(ind_x.carrier, x.carrier, adj.counit_fx);
  // Phi_{Ind V}: chi (x) v -> chi (x) (chi (x) v).
  Matrix phi_iv(nc * nc * nv, nc * nv);
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t b = 0; b < nv; ++b) phi_iv(c * nc * nv + c * nv + b, c * nv + b) = 1;
  adj.unit_gy = phi_iv;
  adj.g_counit = kronecker(Matrix::identity(nc), evaluation(nv));
  const auto ind_ind_v = ind_w(k, ind_v.carrier);
  validate_equivariant_map(ind_v, ind_ind_v, phi_iv);
  validate_equivariant_map(ind_ind_v, ind_v, adj.g_counit);
  out.equivariant_maps = chain_map_dimension(x.carrier, ind_v.carrier, [&](std::size_t i, std::size_t j) {
    return ind_v.carrier.space().weights[i] == x.carrier.space().weights[j];
  });
  out.plain_maps = chain_map_dimension(x.carrier, v, [](std::size_t, std::size_t) { return true; });
  return out;
}

// ---- pro ------------------------------------------------------------------

void validate_free_factor(const FreeFactor& p, const GroupData& group) {
  const auto& g = p.space;
  const std::size_t n = g.dim();
  if (n == 0 || p.unit >= n) throw StructuralError("free factor needs a marked unit");
  if (group.rank() > 0 && g.weights.size() != n) throw StructuralError("free factor basis needs weights");
  for (int d : g.degrees)
    if (d != 0) throw StructuralError("free factor must sit in degree 0");
  const Weight zero(group.rank(), 0);
  if (group.normalize(weight_of(g, p.unit, group.rank())) != zero)
    throw ValidationError("marked unit of the free factor has nonzero weight", "unit " + pos(p.unit));
  if (!p.left) return;
  const auto& left = *p.left;
  if (left.size() != n) throw StructuralError("free factor multiplication table has the wrong size");
  for (std::size_t a = 0; a < n; ++a) {
    if (left[a].rows() != n || left[a].cols() != n) throw StructuralError("free factor multiplication matrix shape");
    require_weight_shift(group, left[a], g, g, weight_of(g, a, group.rank()), "multiplication in the free factor");
    if (!(left[a].col(p.unit) == Matrix::unit_column(n, a)))
      throw ValidationError("free factor unit law fails", "basis element " + pos(a));
  }
  if (!(left[p.unit] == Matrix::identity(n))) throw ValidationError("free factor unit law fails", "left unit");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Matrix lhs(n, n);
      const Matrix ab = left[a].col(b);
      for (std::size_t c = 0; c < n; ++c)
        if (sgn(ab(c, 0)) != 0) lhs += left[c] * ab(c, 0);
      if (auto j = first_differing_column(lhs, left[a] * left[b]))
        throw ValidationError("free factor multiplication is not associative",
                              "(" + pos(a) + ", " + pos(b) + ", " + pos(*j) + ")");
    }
}

EquivariantComplex pro_free(const FreeFactor& p, const EquivariantComplex& v) {
  validate_equivariant(v);
  const auto& k = v.group;
  validate_free_factor(p, k);
  const std::size_t np = p.space.dim(), nv = v.dim();
  GradedSpace g;
  for (std::size_t b = 0; b < nv; ++b)
    for (std::size_t q = 0; q < np; ++q) {
      g.degrees.push_back(v.carrier.space().degrees[b] - p.space.degrees[q]);
      g.weights.push_back(k.subtract(weight_of(v.carrier.space(), b, k.rank()), weight_of(p.space, q, k.rank())));
    }
  if (k.rank() == 0) g.weights.clear();
  const Matrix id_p = Matrix::identity(np);
  EquivariantComplex out;
  out.group = k;
  out.carrier = Complex::make(std::move(g), kronecker(v.carrier.d(), id_p));
  for (const auto& i : v.i_ops) out.i_ops.push_back(kronecker(i, id_p));
  if (p.left) {
    if (k.lie_dim() > 0) throw StructuralError("pro_free with a multiplication table needs a finite group");
    for (std::size_t a = 0; a < np; ++a) {
      // (f . a)(q) = f(q a): matrix entry (q, p') = coefficient of p' in q a.
      Matrix m(np, np);
      for (std::size_t q = 0; q < np; ++q)
        for (std::size_t pp = 0; pp < np; ++pp) m(q, pp) = (*p.left)[q](pp, a);
      out.pi.push_back(kronecker(Matrix::identity(nv), m));
      out.pi_weights.push_back(weight_of(p.space, a, k.rank()));
      out.generator_names.push_back("r" + pos(a));
    }
  } else {
    for (std::size_t x = 0; x < k.lie_dim(); ++x) {
      Matrix nu_p(np, np);
      for (std::size_t q = 0; q < np; ++q) nu_p(q, q) = Rational(static_cast<long>(p.space.weights[q][x]));
      out.pi.push_back(kronecker(v.pi_of(v.psi[x]), id_p) - kronecker(Matrix::identity(nv), nu_p));
      out.pi_weights.push_back(Weight(k.rank(), 0));
      out.generator_names.push_back("psi" + pos(x));
      out.psi.push_back(Matrix::unit_column(k.lie_dim(), x));
    }
  }
  validate_equivariant(out);
  return out;
}

Matrix pro_free_map(const FreeFactor& p, const Matrix& f) { return kronecker(f, Matrix::identity(p.space.dim())); }

Matrix pro_counit(const FreeFactor& p, const EquivariantComplex& v) {
  return kronecker(Matrix::identity(v.dim()), Matrix::unit_column(p.space.dim(), p.unit).transpose());
}

Matrix pro_unit(const FreeFactor& p, const EquivariantComplex& x) {
  const std::size_t np = p.space.dim(), nx = x.dim();
  if (x.pi.size() != np) throw StructuralError("pro_unit: the generators of X must be the basis of the free factor");
  Matrix m(nx * np, nx);
  for (std::size_t q = 0; q < np; ++q)
    for (std::size_t b = 0; b < nx; ++b)
      for (std::size_t c = 0; c < nx; ++c)
        if (sgn(x.pi[q](b, c)) != 0) m(b * np + q, c) = x.pi[q](b, c);
  return m;
}

AdjunctionData pro_adjunction(const FreeFactor& p, const EquivariantComplex& x, const EquivariantComplex& v) {
  if (!p.left) throw StructuralError("pro_adjunction needs a multiplication table on the free factor");
  AdjunctionData adj;
  adj.pair = "forget -| pro";
  auto forget = [](EquivariantComplex e) {
    e.pi.clear();
    e.pi_weights.clear();
    e.generator_names.clear();
    e.psi.clear();
    return e;
  };
  const auto fx = forget(x);
  const auto pro_fx = pro_free(p, fx);
  adj.f_unit = pro_unit(p, x);
  validate_equivariant_map(x, pro_fx, adj.f_unit);
  adj.counit_fx = pro_counit(p, fx);
  validate_equivariant_map(forget(pro_fx), fx, adj.counit_fx);
  const auto pro_v = pro_free(p, v);
  adj.unit_gy = pro_unit(p, pro_v);
  validate_equivariant_map(pro_v, pro_free(p, forget(pro_v)), adj.unit_gy);
  adj.g_counit = pro_free_map(p, pro_counit(p, v));
  return adj;
}

ExactnessReport pro_exactness(const FreeFactor& p, const EquivariantComplex& a, const EquivariantComplex& b,
                              const EquivariantComplex& c, const Matrix& f, const Matrix& g) {
  validate_equivariant_map(a, b, f);
  validate_equivariant_map(b, c, g);
  if (!(g * f).is_zero()) throw ValidationError("g f != 0", "short exact sequence");
  if (rank(f) != a.dim() || rank(g) != c.dim() || a.dim() + c.dim() != b.dim())
    throw ValidationError("input sequence is not short exact", "rank count");
  const Matrix pf = pro_free_map(p, f), pg = pro_free_map(p, g);
  const auto pa = pro_free(p, a), pb = pro_free(p, b), pc = pro_free(p, c);
  validate_equivariant_map(pa, pb, pf);
  validate_equivariant_map(pb, pc, pg);
  ExactnessReport r;
  r.rank_in = rank(pf);
  r.rank_out = rank(pg);
  r.dim_middle = pb.dim();
  r.exact = (pg * pf).is_zero() && r.rank_in == pa.dim() && r.rank_out == pc.dim() && r.rank_in + r.rank_out == r.dim_middle;
  return r;
}

// ---- forgetful functor to DG modules -------------------------------------

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly poly_mod(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    trim(a);
  }
  return a;
}

// Mixed-radix index over (subset of odd generators, exponents of even ones).
struct KoszulIndex {
  std::size_t r = 0;
  std::vector<std::size_t> degs;
  std::size_t exps_count = 1;

  explicit KoszulIndex(const std::vector<Poly>& polys) : r(polys.size()) {
    for (const auto& p : polys) {
      degs.push_back(p.size() - 1);
      exps_count *= degs.back();
    }
  }
  std::size_t size() const { return (std::size_t{1} << r) * exps_count; }
  std::size_t index(std::size_t mask, const std::vector<std::size_t>& exps) const {
    std::size_t e = 0;
    for (std::size_t j = 0; j < r; ++j) e = e * degs[j] + exps[j];
    return mask * exps_count + e;
  }
  std::pair<std::size_t, std::vector<std::size_t>> decode(std::size_t i) const {
    std::vector<std::size_t> exps(r);
    std::size_t e = i % exps_count;
    for (std::size_t j = r; j-- > 0;) {
      exps[j] = e % degs[j];
      e /= degs[j];
    }
    return {i / exps_count, exps};
  }
};

// y^m reduced modulo p, as coefficients of 1, y, ..., y^{deg-1}.
Poly reduce_power(const Poly& p, std::size_t m) {
  Poly mono(m + 1);
  mono[m] = 1;
  auto r = poly_mod(mono, p);
  r.resize(p.size() - 1);
  return r;
}

// Sum over exponent tuples of the product of per-coordinate reduced powers.
std::vector<std::pair<std::vector<std::size_t>, Rational>> reduce_monomial(const KoszulIndex& ix,
                                                                           const std::vector<Poly>& polys,
                                                                           const std::vector<std::size_t>& exps) {
  std::vector<std::pair<std::vector<std::size_t>, Rational>> terms{{{}, Rational(1)}};
  for (std::size_t j = 0; j < ix.r; ++j) {
    const auto red = reduce_power(polys[j], exps[j]);
    std::vector<std::pair<std::vector<std::size_t>, Rational>> next;
    for (const auto& [e, c] : terms)
      for (std::size_t k = 0; k < red.size(); ++k)
        if (sgn(red[k]) != 0) {
          auto e2 = e;
          e2.push_back(k);
          next.emplace_back(std::move(e2), c * red[k]);
        }
    terms = std::move(next);
  }
  return terms;
}

int merge_sign(std::size_t s, std::size_t t) {
  // (-1)^{#(a in s, b in t, a > b)}
  int inversions = 0;
  for (std::size_t a = 0; a < 64; ++a)
    if (s >> a & 1) inversions += std::popcount(t & ((std::size_t{1} << a) - 1));
  return inversions % 2 ? -1 : 1;
}

std::vector<std::size_t> bits(std::size_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < 64; ++a)
    if (mask >> a & 1) out.push_back(a);
  return out;
}

void check_defects(const EquivariantComplex& v) {
  const std::size_t r = v.group.lie_dim();
  std::vector<Matrix> c;
  for (std::size_t x = 0; x < r; ++x) c.push_back(v.defect(x));
  for (std::size_t x = 0; x < r; ++x) {
    for (std::size_t y = 0; y < r; ++y) {
      if (auto j = first_differing_column(c[x] * c[y], c[y] * c[x]))
        throw ValidationError("defect operators c_xi do not commute", "xi" + pos(x) + ", xi" + pos(y) + ", basis vector " + pos(*j));
      if (auto j = first_differing_column(c[x] * v.i_ops[y], v.i_ops[y] * c[x]))
        throw ValidationError("defect operator does not commute with i", "xi" + pos(x) + ", basis vector " + pos(*j));
    }
    for (std::size_t a = 0; a < v.pi.size(); ++a)
      if (auto j = first_differing_column(c[x] * v.pi[a], v.pi[a] * c[x]))
        throw ValidationError("defect operator does not commute with a generator",
                              "xi" + pos(x) + ", generator " + pos(a) + ", basis vector " + pos(*j));
  }
}

}  // namespace

std::vector<Rational> minimal_polynomial(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw StructuralError("minimal polynomial of a non-square matrix");
  if (n == 0) return {Rational(0), Rational(1)};
  Matrix powers(n * n, 0);
  Matrix current = Matrix::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    Matrix vec(n * n, 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) vec(i * n + j, 0) = current(i, j);
    if (k > 0)
      if (auto c = solve_particular(powers, vec)) {
        Poly p(k + 1);
        for (std::size_t j = 0; j < k; ++j) p[j] = -(*c)(j, 0);
        p[k] = 1;
        return p;
      }
    powers = hstack(powers, vec);
    current = current * m;
  }
  throw std::logic_error("minimal_polynomial: Cayley-Hamilton bound exceeded");
}

bool squarefree(const std::vector<Rational>& p) {
  Poly a = p, b;
  trim(a);
  for (std::size_t i = 1; i < a.size(); ++i) b.push_back(a[i] * Rational(static_cast<long>(i)));
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1;
}

AlgebraPtr koszul_algebra(const std::vector<std::vector<Rational>>& polys) {
  for (const auto& p : polys)
    if (p.size() < 2 || p.back() != 1) throw StructuralError("koszul_algebra: relations must be monic of degree >= 1");
  const KoszulIndex ix(polys);
  const std::size_t n = ix.size();
  GradedSpace g;
  for (std::size_t i = 0; i < n; ++i) g.degrees.push_back(-static_cast<int>(std::popcount(ix.decode(i).first)));
  std::vector<Matrix> left(n, Matrix(n, n));
  for (std::size_t a = 0; a < n; ++a) {
    const auto [s, ea] = ix.decode(a);
    for (std::size_t b = 0; b < n; ++b) {
      const auto [t, eb] = ix.decode(b);
      if (s & t) continue;
      std::vector<std::size_t> sum(ix.r);
      for (std::size_t j = 0; j < ix.r; ++j) sum[j] = ea[j] + eb[j];
      const int sign = merge_sign(s, t);
      for (const auto& [e, c] : reduce_monomial(ix, polys, sum)) left[a](ix.index(s | t, e), b) += c * sign;
    }
  }
  Matrix d(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto [s, ea] = ix.decode(a);
    const auto members = bits(s);
    for (std::size_t t = 0; t < members.size(); ++t) {
      auto e = ea;
      e[members[t]] += 1;
      for (const auto& [e2, c] : reduce_monomial(ix, polys, e))
        d(ix.index(s & ~(std::size_t{1} << members[t]), e2), a) += c * sign_of_parity(static_cast<long long>(t));
    }
  }
  return share(DGAlgebra::make(std::move(g), std::move(d), 0, std::move(left)));
}

DGModule forgetful_module(const EquivariantComplex& v, const std::vector<std::vector<Rational>>& polys,
                          const AlgebraPtr& algebra) {
  validate_equivariant(v);
  check_defects(v);
  const std::size_t r = v.group.lie_dim();
  if (polys.size() != r) throw StructuralError("forgetful_module: one relation per element of k is needed");
  const KoszulIndex ix(polys);
  if (algebra->dim() != ix.size()) throw StructuralError("forgetful_module: algebra does not match the relations");
  const std::size_t n = v.dim();
  std::vector<Matrix> actions;
  for (std::size_t a = 0; a < ix.size(); ++a) {
    const auto [s, e] = ix.decode(a);
    Matrix op = Matrix::identity(n);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t p = 0; p < e[j]; ++p) op = v.defect(j) * op;
    const auto members = bits(s);
    for (auto it = members.rbegin(); it != members.rend(); ++it) op = v.i_ops[*it] * op;
    actions.push_back(std::move(op));
  }
  return DGModule::make(algebra, v.carrier, std::move(actions));
}

ForgetfulResult forgetful_to_dg(const EquivariantComplex& v) {
  validate_equivariant(v);
  check_defects(v);
  ForgetfulResult out{nullptr, {}, DGModule{}};
  for (std::size_t x = 0; x < v.group.lie_dim(); ++x) {
    auto p = minimal_polynomial(v.defect(x));
    if (!squarefree(p))
      throw ValidationError("defect operator is not semisimple", "xi" + pos(x) + ": minimal polynomial has a repeated root");
    out.minimal_polynomials.push_back(std::move(p));
  }
  out.algebra = koszul_algebra(out.minimal_polynomials);
  out.module = forgetful_module(v, out.minimal_polynomials, out.algebra);
  return out;
}

// ---- equivariant resolution -----------------------------------------------

namespace {

struct Cover {
  EquivariantComplex p;
  Matrix map;
};

Cover koszul_cover(const EquivariantComplex& m) {
  const std::size_t r = m.group.lie_dim();
  const std::size_t nm = m.dim();
  const std::size_t ns = std::size_t{1} << r;
  const auto& gm = m.carrier.space();
  GradedSpace g;
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t b = 0; b < nm; ++b) {
      g.degrees.push_back(gm.degrees[b] - std::popcount(s));
      if (gm.has_weights()) g.weights.push_back(gm.weights[b]);
    }
  std::vector<Matrix> c;
  for (std::size_t x = 0; x < r; ++x) c.push_back(m.defect(x));
  Matrix d(ns * nm, ns * nm);
  for (std::size_t s = 0; s < ns; ++s) {
    const auto members = bits(s);
    for (std::size_t t = 0; t < members.size(); ++t)
      d.set_block((s & ~(std::size_t{1} << members[t])) * nm, s * nm,
                  c[members[t]] * Rational(sign_of_parity(static_cast<long long>(t))));
    d.set_block(s * nm, s * nm, m.carrier.d() * Rational(sign_of_parity(static_cast<long long>(members.size()))));
  }
  Cover out;
  auto& p = out.p;
  p.group = m.group;
  p.carrier = Complex::make(std::move(g), std::move(d));
  p.generator_names = m.generator_names;
  p.pi_weights = m.pi_weights;
  p.psi = m.psi;
  for (const auto& op : m.pi) p.pi.push_back(kronecker(Matrix::identity(ns), op));
  for (std::size_t x = 0; x < r; ++x) {
    Matrix i(ns * nm, ns * nm);
    for (std::size_t s = 0; s < ns; ++s) {
      if (s >> x & 1) continue;
      const int sign = sign_of_parity(std::popcount(s & ((std::size_t{1} << x) - 1)));
      i.set_block((s | (std::size_t{1} << x)) * nm, s * nm, Matrix::identity(nm) * Rational(sign));
    }
    p.i_ops.push_back(std::move(i));
  }
  validate_equivariant(p);
  out.map = Matrix(nm, ns * nm);
  for (std::size_t s = 0; s < ns; ++s) {
    Matrix op = Matrix::identity(nm);
    const auto members = bits(s);
    for (auto it = members.rbegin(); it != members.rend(); ++it) op = m.i_ops[*it] * op;
    out.map.set_block(0, s * nm, op);
  }
  validate_equivariant_map(p, m, out.map);
  return out;
}

struct EquivariantSub {
  EquivariantComplex k;
  Matrix inclusion;
};

EquivariantSub equivariant_kernel(const EquivariantComplex& p, const Matrix& f) {
  const auto& g = p.carrier.space();
  std::map<std::pair<int, Weight>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < g.dim(); ++i) groups[{g.degrees[i], g.has_weights() ? g.weights[i] : Weight{}}].push_back(i);
  Matrix basis(p.dim(), 0);
  GradedSpace kg;
  for (const auto& [key, idx] : groups) {
    const Matrix kb = kernel_basis(f.select_cols(idx));
    Matrix embedded(p.dim(), kb.cols());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < kb.cols(); ++c) embedded(idx[r], c) = kb(r, c);
    basis = hstack(basis, embedded);
    for (std::size_t c = 0; c < kb.cols(); ++c) {
      kg.degrees.push_back(key.first);
      if (g.has_weights()) kg.weights.push_back(key.second);
    }
  }
  const Matrix inv = left_inverse(basis);
  auto restrict_op = [&](const Matrix& op) {
    const Matrix r = inv * (op * basis);
    if (!(basis * r == op * basis)) throw std::logic_error("equivariant kernel is not stable");
    return r;
  };
  EquivariantSub out;
  auto& k = out.k;
  k.group = p.group;
  k.carrier = Complex::make(std::move(kg), restrict_op(p.carrier.d()));
  k.generator_names = p.generator_names;
  k.pi_weights = p.pi_weights;
  k.psi = p.psi;
  for (const auto& op : p.pi) k.pi.push_back(restrict_op(op));
  for (const auto& op : p.i_ops) k.i_ops.push_back(restrict_op(op));
  validate_equivariant(k);
  out.inclusion = std::move(basis);
  return out;
}

}  // namespace

EquivariantResolution equivariant_resolution(const EquivariantComplex& v, int depth) {
  validate_equivariant(v);
  check_defects(v);
  if (depth < 0) throw StructuralError("equivariant_resolution: negative depth");
  EquivariantResolution res;
  EquivariantComplex current = v;
  std::optional<Matrix> last_inclusion;
  for (int j = 0; j <= depth; ++j) {
    auto cover = koszul_cover(current);
    if (last_inclusion) res.deltas.push_back(*last_inclusion * cover.map);
    res.columns.push_back(cover.p);
    res.covers.push_back(cover.map);
    if (j < depth) {
      auto sub = equivariant_kernel(cover.p, cover.map);
      last_inclusion = sub.inclusion;
      current = std::move(sub.k);
    }
  }
  ComplexOfComplexes cc;
  cc.first = -depth;
  for (auto it = res.columns.rbegin(); it != res.columns.rend(); ++it) cc.columns.push_back(it->carrier);
  for (auto it = res.deltas.rbegin(); it != res.deltas.rend(); ++it) cc.deltas.push_back(*it);
  const auto t = total_complex(cc);
  auto& total = res.total;
  total.group = v.group;
  total.carrier = t.total;
  total.generator_names = v.generator_names;
  total.pi_weights = v.pi_weights;
  total.psi = v.psi;
  const std::size_t n = t.total.dim();
  total.pi.assign(v.pi.size(), Matrix(n, n));
  total.i_ops.assign(v.group.lie_dim(), Matrix(n, n));
  for (std::size_t c = 0; c < cc.columns.size(); ++c) {
    const int i = cc.first + static_cast<int>(c);
    const auto& col = res.columns[cc.columns.size() - 1 - c];
    const auto& idx = t.column_indices[c];
    for (std::size_t a = 0; a < col.pi.size(); ++a) total.pi[a].scatter(idx, idx, col.pi[a]);
    for (std::size_t x = 0; x < col.i_ops.size(); ++x)
      total.i_ops[x].scatter(idx, idx, col.i_ops[x] * Rational(sign_of_parity(i)));
  }
  validate_equivariant(total);
  res.augmentation = Matrix(v.dim(), n);
  std::vector<std::size_t> rows(v.dim());
  for (std::size_t b = 0; b < rows.size(); ++b) rows[b] = b;
  res.augmentation.scatter(rows, t.column_indices.back(), res.covers.front());
  validate_equivariant_map(total, v, res.augmentation);
  return res;
}

}  // namespace dgw
