#include "dgw/dg.hpp"

#include <map>

#include "dgw/errors.hpp"

namespace dgw {

namespace {

std::string pos(std::size_t i) { return std::to_string(i); }

// First column where two equally shaped matrices differ, if any.
std::optional<std::size_t> first_differing_column(const Matrix& a, const Matrix& b) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return j;
  return std::nullopt;
}

Weight add_weights(const Weight& a, const Weight& b) {
  Weight w(a.size());
  for (std::size_t r = 0; r < w.size(); ++r) w[r] = a[r] + b[r];
  return w;
}

void require_weight_shift(const Matrix& m, const GradedSpace& src, const GradedSpace& dst, const Weight& shift,
                          const std::string& what) {
  if (!src.has_weights() || !dst.has_weights()) return;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0 && dst.weights[i] != add_weights(src.weights[j], shift))
        throw ValidationError(what + " does not respect weights",
                              "entry (" + pos(i) + "," + pos(j) + ")");
}

Matrix sign_diagonal(const GradedSpace& g, int factor) {
  Matrix s(g.dim(), g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) s(i, i) = sign_of_parity(static_cast<long long>(factor) * g.degrees[i]);
  return s;
}

Matrix combine(const std::vector<Matrix>& ops, const Matrix& x, std::size_t rows, std::size_t cols) {
  Matrix out(rows, cols);
  for (std::size_t k = 0; k < x.rows(); ++k)
    if (sgn(x(k, 0)) != 0) {
      if (x(k, 0) == 1)
        out += ops[k];
      else
        out += ops[k] * x(k, 0);
    }
  return out;
}

// Weight of a homogeneous column vector (the weight of its first nonzero entry).
Weight column_weight(const GradedSpace& g, const Matrix& basis, std::size_t col) {
  for (std::size_t i = 0; i < basis.rows(); ++i)
    if (sgn(basis(i, col)) != 0) return g.weights[i];
  return Weight(g.weight_rank(), 0);
}

std::optional<int> column_degree(const GradedSpace& g, const Matrix& basis, std::size_t col) {
  std::optional<int> deg;
  for (std::size_t i = 0; i < basis.rows(); ++i)
    if (sgn(basis(i, col)) != 0) {
      if (deg && *deg != g.degrees[i]) return std::nullopt;
      deg = g.degrees[i];
    }
  return deg;
}

}  // namespace

// ---- DG algebras ----------------------------------------------------------

Matrix DGAlgebra::left_by(const Matrix& x) const { return combine(left_, x, dim(), dim()); }

Matrix DGAlgebra::right(std::size_t i) const {
  Matrix r(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) r.set_col(j, left_[j].col(i));
  return r;
}

Matrix DGAlgebra::iota() const { return iota_ ? *iota_ : Matrix::identity(dim()); }

bool DGAlgebra::nonpositive() const {
  for (int k : space().degrees)
    if (k > 0) return false;
  return true;
}

bool DGAlgebra::graded_commutative() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      if (!(left_[i].col(j) == left_[j].col(i) * Rational(sign_of_parity(degree(i) * degree(j))))) return false;
  return true;
}

DGAlgebra DGAlgebra::make(GradedSpace space, Matrix d, std::size_t unit, std::vector<Matrix> left,
                          std::optional<Matrix> iota) {
  DGAlgebra a;
  a.carrier_ = Complex::make(std::move(space), std::move(d));
  const auto& g = a.carrier_.space();
  const std::size_t n = g.dim();
  if (n == 0) throw StructuralError("DG algebra must have a unit");
  if (unit >= n) throw StructuralError("DG algebra unit index " + pos(unit) + " out of range");
  if (left.size() != n)
    throw StructuralError("DG algebra: " + pos(left.size()) + " multiplication tables for " + pos(n) + " basis elements");
  a.unit_ = unit;
  a.left_ = std::move(left);
  a.iota_ = std::move(iota);
  const Weight zero(g.weight_rank(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    require_homogeneous(a.left_[i], g, g, g.degrees[i], "multiplication by e" + pos(i));
    if (g.has_weights()) require_weight_shift(a.left_[i], g, g, g.weights[i], "multiplication by e" + pos(i));
  }
  if (g.has_weights()) require_weight_shift(a.d(), g, g, zero, "algebra differential");
  if (g.degrees[unit] != 0) throw ValidationError("unit is not in degree 0", "unit e" + pos(unit));
  if (!a.d().col(unit).is_zero()) throw ValidationError("d(1) != 0", "unit e" + pos(unit));
  if (!(a.left_[unit] == Matrix::identity(n))) {
    const auto j = first_differing_column(a.left_[unit], Matrix::identity(n));
    throw ValidationError("left unit law fails", "1 * e" + pos(*j));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!(a.left_[i].col(unit) == Matrix::unit_column(n, i)))
      throw ValidationError("right unit law fails", "e" + pos(i) + " * 1");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix lhs = a.left_by(a.left_[i].col(j));
      const Matrix rhs = a.left_[i] * a.left_[j];
      if (auto k = first_differing_column(lhs, rhs))
        throw ValidationError("associativity fails", "(e" + pos(i) + ", e" + pos(j) + ", e" + pos(*k) + ")");
    }
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix lhs = a.d() * a.left_[i];
    const Matrix rhs = a.left_by(a.d().col(i)) + a.left_[i] * a.d() * Rational(sign_of_parity(g.degrees[i]));
    if (auto j = first_differing_column(lhs, rhs))
      throw ValidationError("Leibniz rule fails", "(e" + pos(i) + ", e" + pos(*j) + ")");
  }
  if (a.iota_) {
    const Matrix& io = *a.iota_;
    require_homogeneous(io, g, g, 0, "anti-involution");
    if (!(io * io == Matrix::identity(n))) {
      const auto j = first_differing_column(io * io, Matrix::identity(n));
      throw ValidationError("iota^2 != id", "e" + pos(*j));
    }
    if (auto j = first_differing_column(a.d() * io, io * a.d()))
      throw ValidationError("iota does not commute with d", "e" + pos(*j));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Matrix lhs = io * a.left_[i].col(j);
        const Matrix rhs = a.left_by(io.col(j)) * io.col(i) * Rational(sign_of_parity(g.degrees[i] * g.degrees[j]));
        if (!(lhs == rhs))
          throw ValidationError("iota is not an anti-automorphism", "(e" + pos(i) + ", e" + pos(j) + ")");
      }
  }
  return a;
}

DGAlgebra DGAlgebra::from_constants(GradedSpace space, Matrix d, std::size_t unit,
                                    const std::vector<Constant>& constants, std::optional<Matrix> iota) {
  const std::size_t n = space.dim();
  std::vector<Matrix> left(n, Matrix(n, n));
  for (const auto& c : constants) {
    if (c.i >= n || c.j >= n || c.k >= n)
      throw StructuralError("structure constant index out of range: (" + pos(c.i) + "," + pos(c.j) + "," + pos(c.k) + ")");
    left[c.i](c.k, c.j) += c.c;
  }
  return make(std::move(space), std::move(d), unit, std::move(left), std::move(iota));
}

AlgebraPtr share(DGAlgebra a) { return std::make_shared<const DGAlgebra>(std::move(a)); }

bool same_algebra(const DGAlgebra& a, const DGAlgebra& b) {
  if (&a == &b) return true;
  if (a.space().degrees != b.space().degrees || a.unit() != b.unit() || !(a.d() == b.d())) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (!(a.left(i) == b.left(i))) return false;
  return true;
}

DGAlgebraMorphism make_algebra_morphism(AlgebraPtr source, AlgebraPtr target, Matrix map) {
  const auto& s = *source;
  const auto& t = *target;
  require_homogeneous(map, s.space(), t.space(), 0, "algebra morphism");
  chain_map(s.carrier(), t.carrier(), map);
  if (!(map.col(s.unit()) == Matrix::unit_column(t.dim(), t.unit())))
    throw ValidationError("algebra morphism is not unital", "image of 1");
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const Matrix lhs = map * s.left(i);
    const Matrix rhs = t.left_by(map.col(i)) * map;
    if (auto j = first_differing_column(lhs, rhs))
      throw ValidationError("algebra morphism is not multiplicative", "(e" + pos(i) + ", e" + pos(*j) + ")");
  }
  if (s.has_iota() || t.has_iota())
    if (auto j = first_differing_column(map * s.iota(), t.iota() * map))
      throw ValidationError("algebra morphism does not intertwine the anti-involutions", "e" + pos(*j));
  DGAlgebraMorphism m{std::move(source), std::move(target), std::move(map), false};
  m.quasi_iso = is_quasi_iso(m.source->carrier(), m.target->carrier(), m.map).quasi_iso;
  return m;
}

DGAlgebraMorphism identity_morphism(AlgebraPtr a) {
  const auto n = a->dim();
  return make_algebra_morphism(a, a, Matrix::identity(n));
}

// ---- DG modules -----------------------------------------------------------

Matrix DGModule::action_by(const Matrix& x) const { return combine(actions_, x, dim(), dim()); }

DGModule DGModule::make(AlgebraPtr algebra, Complex carrier, std::vector<Matrix> actions,
                        std::optional<FreeBasis> free, bool kprojective) {
  DGModule m;
  m.algebra_ = std::move(algebra);
  m.carrier_ = std::move(carrier);
  m.actions_ = std::move(actions);
  m.free_ = std::move(free);
  m.kprojective_ = kprojective;
  const auto& a = *m.algebra_;
  const auto& g = m.carrier_.space();
  const std::size_t n = g.dim();
  if (m.actions_.size() != a.dim())
    throw StructuralError("DG module: " + pos(m.actions_.size()) + " action matrices for an algebra of dimension " +
                          pos(a.dim()));
  const bool weighted = g.has_weights() && a.space().has_weights();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    require_homogeneous(m.actions_[i], g, g, a.degree(i), "action of e" + pos(i));
    if (weighted) require_weight_shift(m.actions_[i], g, g, a.space().weights[i], "action of e" + pos(i));
  }
  if (auto j = first_differing_column(m.actions_[a.unit()], Matrix::identity(n)))
    throw ValidationError("unit does not act as the identity", "basis vector " + pos(*j));
  std::vector<std::size_t> nonunit;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (i != a.unit()) nonunit.push_back(i);
  for (std::size_t i : nonunit)
    for (std::size_t j : nonunit) {
      const Matrix lhs = m.actions_[i] * m.actions_[j];
      const Matrix rhs = m.action_by(a.left(i).col(j));
      if (auto k = first_differing_column(lhs, rhs))
        throw ValidationError("module associativity fails",
                              "(e" + pos(i) + ", e" + pos(j) + ", v" + pos(*k) + ")");
    }
  for (std::size_t i : nonunit) {
    const Matrix lhs = m.d() * m.actions_[i];
    const Matrix rhs =
        m.action_by(a.d().col(i)) + m.actions_[i] * m.d() * Rational(sign_of_parity(a.degree(i)));
    if (auto j = first_differing_column(lhs, rhs))
      throw ValidationError("module Leibniz rule fails", "(e" + pos(i) + ", v" + pos(*j) + ")");
  }
  if (m.free_) {
    const auto& f = *m.free_;
    if (f.alg.size() != n || f.gen.size() != n || f.sign.size() != n)
      throw StructuralError("free basis data does not cover the carrier");
    for (std::size_t b = 0; b < n; ++b) {
      if (f.gen[b] >= f.generators.size() || f.alg[b] >= a.dim())
        throw StructuralError("free basis data out of range at basis vector " + pos(b));
      const Matrix image = m.actions_[f.alg[b]].col(f.generators[f.gen[b]]);
      if (!(image == Matrix::unit_column(n, b) * Rational(f.sign[b])))
        throw ValidationError("free basis description is wrong", "basis vector " + pos(b));
    }
    for (std::size_t gi = 0; gi < f.generators.size(); ++gi) {
      const auto b = f.generators[gi];
      if (f.gen[b] != gi || f.alg[b] != a.unit() || f.sign[b] != 1)
        throw StructuralError("free basis generator " + pos(gi) + " is not described by the unit");
    }
  }
  return m;
}

void validate_module_map(const DGModule& v, const DGModule& w, const Matrix& f, int degree) {
  if (!same_algebra(v.algebra(), w.algebra())) throw StructuralError("module map between modules over different algebras");
  require_homogeneous(f, v.space(), w.space(), degree, "module map");
  const auto& a = v.algebra();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (i == a.unit()) continue;
    const Matrix lhs = f * v.action(i);
    const Matrix rhs = w.action(i) * f * Rational(sign_of_parity(degree * a.degree(i)));
    if (auto j = first_differing_column(lhs, rhs))
      throw ValidationError("map is not linear over the algebra", "(e" + pos(i) + ", v" + pos(*j) + ")");
  }
  if (degree == 0)
    if (auto j = first_differing_column(w.d() * f, f * v.d()))
      throw ValidationError("map does not commute with the differentials", "v" + pos(*j));
}

namespace {

DGModule induced(AlgebraPtr a, const Complex& c) {
  const std::size_t na = a->dim(), nw = c.dim();
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < na; ++i) actions.push_back(kronecker(a->left(i), Matrix::identity(nw)));
  FreeBasis f;
  for (std::size_t k = 0; k < nw; ++k) f.generators.push_back(a->unit() * nw + k);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < nw; ++k) {
      f.alg.push_back(i);
      f.gen.push_back(k);
      f.sign.push_back(1);
    }
  auto total = tensor(Complex::make(a->space(), a->d()), c);
  return DGModule::make(std::move(a), std::move(total), std::move(actions), std::move(f), true);
}

}  // namespace

DGModule free_module(AlgebraPtr a, const GradedSpace& w) {
  return induced(std::move(a), Complex::make(w, Matrix(w.dim(), w.dim())));
}

DGModule free_module(AlgebraPtr a, const Complex& c) { return induced(std::move(a), c); }

DGModule regular_module(AlgebraPtr a) {
  GradedSpace point;
  point.degrees = {0};
  if (a->space().has_weights()) point.weights = {Weight(a->space().weight_rank(), 0)};
  return free_module(std::move(a), point);
}

DGModule trivial_module(AlgebraPtr a, const Complex& v) {
  std::vector<Matrix> actions(a->dim(), Matrix(v.dim(), v.dim()));
  actions[a->unit()] = Matrix::identity(v.dim());
  return DGModule::make(std::move(a), v, std::move(actions));
}

DGModule shift(const DGModule& v, int n) {
  const auto& a = v.algebra();
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < a.dim(); ++i)
    actions.push_back(v.action(i) * Rational(sign_of_parity(static_cast<long long>(n) * a.degree(i))));
  std::optional<FreeBasis> free = v.free_basis();
  if (free)
    for (std::size_t b = 0; b < v.dim(); ++b)
      free->sign[b] *= sign_of_parity(static_cast<long long>(n) * a.degree(free->alg[b]));
  return DGModule::make(v.algebra_ptr(), shift(v.carrier(), n), std::move(actions), std::move(free),
                        v.kprojective_by_construction());
}

namespace {

std::optional<FreeBasis> concat_free(const std::optional<FreeBasis>& a, std::size_t na,
                                     const std::optional<FreeBasis>& b) {
  if (!a || !b) return std::nullopt;
  FreeBasis f = *a;
  const std::size_t ng = a->generators.size();
  for (auto g : b->generators) f.generators.push_back(g + na);
  for (std::size_t k = 0; k < b->alg.size(); ++k) {
    f.alg.push_back(b->alg[k]);
    f.gen.push_back(b->gen[k] + ng);
    f.sign.push_back(b->sign[k]);
  }
  return f;
}

}  // namespace

DGModule direct_sum(const DGModule& a, const DGModule& b) {
  if (!same_algebra(a.algebra(), b.algebra())) throw StructuralError("direct sum of modules over different algebras");
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < a.algebra().dim(); ++i) actions.push_back(block_diagonal(a.action(i), b.action(i)));
  return DGModule::make(a.algebra_ptr(), direct_sum(a.carrier(), b.carrier()), std::move(actions),
                        concat_free(a.free_basis(), a.dim(), b.free_basis()),
                        a.kprojective_by_construction() && b.kprojective_by_construction());
}

DGModule cone(const DGModule& v, const DGModule& w, const Matrix& f) {
  validate_module_map(v, w, f, 0);
  const auto tv = shift(v, 1);
  const auto c = cone(v.carrier(), w.carrier(), f).cone;
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < v.algebra().dim(); ++i) actions.push_back(block_diagonal(tv.action(i), w.action(i)));
  return DGModule::make(v.algebra_ptr(), c, std::move(actions), concat_free(tv.free_basis(), tv.dim(), w.free_basis()),
                        v.kprojective_by_construction() && w.kprojective_by_construction());
}

Submodule submodule(const DGModule& v, const Matrix& basis) {
  const auto& g = v.space();
  if (basis.rows() != v.dim()) throw StructuralError("submodule basis has the wrong number of rows");
  GradedSpace space;
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    const auto deg = column_degree(g, basis, c);
    if (!deg) throw StructuralError("submodule basis vector " + pos(c) + " is not homogeneous");
    space.degrees.push_back(*deg);
    if (g.has_weights()) space.weights.push_back(column_weight(g, basis, c));
  }
  const Matrix inv = left_inverse(basis);
  auto restrict_op = [&](const Matrix& op, const std::string& what) {
    const Matrix image = op * basis;
    const Matrix r = inv * image;
    if (auto j = first_differing_column(basis * r, image))
      throw ValidationError("subspace is not closed under " + what, "basis vector " + pos(*j));
    return r;
  };
  Matrix d = restrict_op(v.d(), "the differential");
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < v.algebra().dim(); ++i) actions.push_back(restrict_op(v.action(i), "the action of e" + pos(i)));
  return Submodule{DGModule::make(v.algebra_ptr(), Complex::make(std::move(space), std::move(d)), std::move(actions)),
                   basis};
}

Submodule kernel(const DGModule& v, const Matrix& f) {
  const auto& g = v.space();
  std::map<std::pair<int, Weight>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < g.dim(); ++i)
    groups[{g.degrees[i], g.has_weights() ? g.weights[i] : Weight{}}].push_back(i);
  Matrix basis(v.dim(), 0);
  for (const auto& [key, idx] : groups) {
    const Matrix k = kernel_basis(f.select_cols(idx));
    Matrix embedded(v.dim(), k.cols());
    embedded.scatter(idx, std::vector<std::size_t>([&] {
                       std::vector<std::size_t> c(k.cols());
                       for (std::size_t j = 0; j < c.size(); ++j) c[j] = j;
                       return c;
                     }()),
                     k);
    basis = hstack(basis, embedded);
  }
  return submodule(v, basis);
}

QuotientModule quotient(const DGModule& v, const Matrix& basis) {
  const auto qm = quotient_map(v.dim(), Subspace::from_basis(v.dim(), basis));
  const auto& g = v.space();
  GradedSpace space;
  for (std::size_t c = 0; c < qm.section.cols(); ++c)
    for (std::size_t i = 0; i < v.dim(); ++i)
      if (sgn(qm.section(i, c)) != 0) {
        space.degrees.push_back(g.degrees[i]);
        if (g.has_weights()) space.weights.push_back(g.weights[i]);
        if (!g.labels.empty()) space.labels.push_back(g.labels[i]);
      }
  auto induce = [&](const Matrix& op, const std::string& what) {
    if (!basis.empty() && !(qm.projection * (op * basis)).is_zero())
      throw ValidationError("subspace is not stable under " + what, "quotient construction");
    return qm.projection * op * qm.section;
  };
  Matrix d = induce(v.d(), "the differential");
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < v.algebra().dim(); ++i) actions.push_back(induce(v.action(i), "the action of e" + pos(i)));
  return QuotientModule{
      DGModule::make(v.algebra_ptr(), Complex::make(std::move(space), std::move(d)), std::move(actions)),
      qm.projection, qm.section};
}

DGModule restrict_scalars(const DGAlgebraMorphism& eps, const DGModule& w) {
  if (!same_algebra(*eps.target, w.algebra())) throw StructuralError("restrict_scalars: module is not over the target");
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < eps.source->dim(); ++i) actions.push_back(w.action_by(eps.map.col(i)));
  return DGModule::make(eps.source, w.carrier(), std::move(actions));
}

// ---- change of DG algebras ------------------------------------------------

namespace {

// Index of the single +-1 entry of each column, when iota is a signed permutation.
std::optional<std::vector<std::pair<std::size_t, int>>> signed_permutation(const Matrix& m) {
  std::vector<std::pair<std::size_t, int>> out;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::optional<std::pair<std::size_t, int>> hit;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (sgn(m(i, j)) == 0) continue;
      if (hit || (m(i, j) != 1 && m(i, j) != -1)) return std::nullopt;
      hit = std::make_pair(i, m(i, j) == 1 ? 1 : -1);
    }
    if (!hit) return std::nullopt;
    out.push_back(*hit);
  }
  return out;
}

}  // namespace

TensorChange tensor_change(const DGAlgebraMorphism& eps, const DGModule& v) {
  const auto& dalg = *eps.source;
  const auto& ealg = *eps.target;
  if (!same_algebra(dalg, v.algebra())) throw StructuralError("tensor_change: module is not over the source algebra");
  if (!dalg.has_iota() && !dalg.graded_commutative())
    throw StructuralError("tensor_change: the source algebra is not graded-commutative and declares no anti-involution");
  if (!ealg.has_iota() && !ealg.graded_commutative())
    throw StructuralError("tensor_change: the target algebra is not graded-commutative and declares no anti-involution");
  const std::size_t nv = v.dim(), ne = ealg.dim();
  const auto& gv = v.space();
  const auto& ge = ealg.space();
  const auto big = tensor(v.carrier(), ealg.carrier());
  const Matrix iota_d = dalg.iota();
  const Matrix iota_e = ealg.iota();

  Matrix projection, section;
  GradedSpace space;
  std::optional<FreeBasis> free;
  if (v.free_basis()) {
    // V free on generators g: b (x) e = s_b (-1)^{|g||a|} g (x) eps(iota a) e.
    const auto& fb = *v.free_basis();
    const std::size_t ng = fb.generators.size();
    projection = Matrix(ng * ne, nv * ne);
    section = Matrix(nv * ne, ng * ne);
    std::vector<Matrix> right_by(dalg.dim());
    for (std::size_t a = 0; a < dalg.dim(); ++a) right_by[a] = ealg.left_by(eps.map * iota_d.col(a));
    for (std::size_t b = 0; b < nv; ++b) {
      const auto a = fb.alg[b];
      const auto gi = fb.gen[b];
      const int deg_g = gv.degrees[fb.generators[gi]];
      const Rational s = fb.sign[b] * sign_of_parity(deg_g * dalg.degree(a));
      for (std::size_t e = 0; e < ne; ++e)
        for (std::size_t k = 0; k < ne; ++k)
          if (sgn(right_by[a](k, e)) != 0) projection(gi * ne + k, b * ne + e) += s * right_by[a](k, e);
    }
    for (std::size_t gi = 0; gi < ng; ++gi)
      for (std::size_t e = 0; e < ne; ++e) {
        section(fb.generators[gi] * ne + e, gi * ne + e) = 1;
        space.degrees.push_back(gv.degrees[fb.generators[gi]] + ge.degrees[e]);
        if (big.space().has_weights()) space.weights.push_back(big.space().weights[fb.generators[gi] * ne + e]);
      }
    if (auto perm = signed_permutation(iota_e)) {
      FreeBasis f;
      for (std::size_t gi = 0; gi < ng; ++gi) f.generators.push_back(gi * ne + ealg.unit());
      for (std::size_t gi = 0; gi < ng; ++gi)
        for (std::size_t e = 0; e < ne; ++e) {
          const int deg_g = gv.degrees[fb.generators[gi]];
          f.alg.push_back((*perm)[e].first);
          f.gen.push_back(gi);
          f.sign.push_back((*perm)[e].second * sign_of_parity(ge.degrees[e] * deg_g));
        }
      free = std::move(f);
    }
  } else {
    Matrix relations(nv * ne, 0);
    const Matrix id_e = Matrix::identity(ne);
    const Matrix id_v = Matrix::identity(nv);
    for (std::size_t x = 0; x < dalg.dim(); ++x) {
      if (x == dalg.unit()) continue;
      const Matrix first = kronecker(v.action_by(iota_d.col(x)) * sign_diagonal(gv, dalg.degree(x)), id_e);
      const Matrix second = kronecker(id_v, ealg.left_by(eps.map.col(x)));
      relations = hstack(relations, first - second);
    }
    const Matrix span = image_basis(relations);
    const auto qm = quotient_map(nv * ne, Subspace::from_basis(nv * ne, span));
    projection = qm.projection;
    section = qm.section;
    for (std::size_t c = 0; c < section.cols(); ++c)
      for (std::size_t i = 0; i < section.rows(); ++i)
        if (sgn(section(i, c)) != 0) {
          space.degrees.push_back(big.space().degrees[i]);
          if (big.space().has_weights()) space.weights.push_back(big.space().weights[i]);
        }
  }

  Matrix d = projection * big.d() * section;
  std::vector<Matrix> actions;
  const Matrix id_v = Matrix::identity(nv);
  for (std::size_t x = 0; x < ne; ++x) {
    // e' * (v (x) e) = (-1)^{|e'|(|v|+|e|)} v (x) e iota(e').
    Matrix right(ne, ne);
    const Matrix y = iota_e.col(x);
    for (std::size_t j = 0; j < ne; ++j) right.set_col(j, ealg.left(j) * y);
    const Matrix op = kronecker(id_v, right) * sign_diagonal(big.space(), ealg.degree(x));
    actions.push_back(projection * op * section);
  }
  auto module = DGModule::make(eps.target, Complex::make(std::move(space), std::move(d)), std::move(actions),
                               std::move(free), v.kprojective_by_construction());
  return TensorChange{std::move(module), std::move(projection), std::move(section)};
}

Matrix tensor_change_map(const DGAlgebraMorphism& eps, const DGModule& v, const TensorChange& tv,
                         const TensorChange& tw, const Matrix& f) {
  (void)v;
  const std::size_t ne = eps.target->dim();
  return tw.projection * kronecker(f, Matrix::identity(ne)) * tv.section;
}

Extension extend_scalars(const DGAlgebraMorphism& eps, const DGModule& m) {
  const auto& dalg = *eps.source;
  const auto& ealg = *eps.target;
  if (!same_algebra(dalg, m.algebra())) throw StructuralError("extend_scalars: module is not over the source algebra");
  const std::size_t nm = m.dim(), ne = ealg.dim();
  const auto big = tensor(ealg.carrier(), m.carrier());
  Matrix projection, section;
  GradedSpace space;
  std::optional<FreeBasis> free;
  if (m.free_basis()) {
    // e (x) s a g = s e eps(a) (x) g.
    const auto& fb = *m.free_basis();
    const std::size_t ng = fb.generators.size();
    projection = Matrix(ne * ng, ne * nm);
    section = Matrix(ne * nm, ne * ng);
    std::vector<Matrix> right_by(dalg.dim());
    for (std::size_t a = 0; a < dalg.dim(); ++a) right_by[a] = ealg.left_by(eps.map.col(a));
    for (std::size_t b = 0; b < nm; ++b)
      for (std::size_t e = 0; e < ne; ++e) {
        const auto a = fb.alg[b];
        // column e of right multiplication by eps(a) is e * eps(a)
        const Matrix prod = ealg.left(e) * eps.map.col(a);
        for (std::size_t k = 0; k < ne; ++k)
          if (sgn(prod(k, 0)) != 0) projection(k * ng + fb.gen[b], e * nm + b) += fb.sign[b] * prod(k, 0);
      }
    FreeBasis f;
    for (std::size_t gi = 0; gi < ng; ++gi) f.generators.push_back(ealg.unit() * ng + gi);
    for (std::size_t e = 0; e < ne; ++e)
      for (std::size_t gi = 0; gi < ng; ++gi) {
        section(e * nm + fb.generators[gi], e * ng + gi) = 1;
        space.degrees.push_back(ealg.degree(e) + m.space().degrees[fb.generators[gi]]);
        if (big.space().has_weights()) space.weights.push_back(big.space().weights[e * nm + fb.generators[gi]]);
        f.alg.push_back(e);
        f.gen.push_back(gi);
        f.sign.push_back(1);
      }
    free = std::move(f);
  } else {
    Matrix relations(ne * nm, 0);
    for (std::size_t x = 0; x < dalg.dim(); ++x) {
      if (x == dalg.unit()) continue;
      Matrix right(ne, ne);
      for (std::size_t j = 0; j < ne; ++j) right.set_col(j, ealg.left(j) * eps.map.col(x));
      relations = hstack(relations, kronecker(right, Matrix::identity(nm)) -
                                        kronecker(Matrix::identity(ne), m.action(x)));
    }
    const auto qm = quotient_map(ne * nm, Subspace::from_basis(ne * nm, image_basis(relations)));
    projection = qm.projection;
    section = qm.section;
    for (std::size_t c = 0; c < section.cols(); ++c)
      for (std::size_t i = 0; i < section.rows(); ++i)
        if (sgn(section(i, c)) != 0) {
          space.degrees.push_back(big.space().degrees[i]);
          if (big.space().has_weights()) space.weights.push_back(big.space().weights[i]);
        }
  }
  Matrix d = projection * big.d() * section;
  std::vector<Matrix> actions;
  for (std::size_t x = 0; x < ne; ++x)
    actions.push_back(projection * kronecker(ealg.left(x), Matrix::identity(nm)) * section);
  auto module = DGModule::make(eps.target, Complex::make(std::move(space), std::move(d)), std::move(actions),
                               std::move(free), m.kprojective_by_construction());
  return Extension{std::move(module), std::move(projection), std::move(section)};
}

Matrix extend_scalars_map(const DGAlgebraMorphism& eps, const Extension& em, const Extension& en, const Matrix& f) {
  return en.projection * kronecker(Matrix::identity(eps.target->dim()), f) * em.section;
}

Matrix tensor_unit(const DGAlgebraMorphism& eps, const DGModule& v, const TensorChange& tv) {
  const auto& e = *eps.target;
  return tv.projection * kronecker(Matrix::identity(v.dim()), Matrix::unit_column(e.dim(), e.unit()));
}

Matrix tensor_counit(const DGAlgebraMorphism& eps, const DGModule& w, const TensorChange& tfw) {
  const auto& e = *eps.target;
  const std::size_t nw = w.dim(), ne = e.dim();
  const Matrix io = e.iota();
  Matrix full(nw, nw * ne);
  for (std::size_t x = 0; x < ne; ++x) {
    const Matrix act = w.action_by(io.col(x));
    for (std::size_t v = 0; v < nw; ++v) {
      const int s = sign_of_parity(w.space().degrees[v] * e.degree(x));
      for (std::size_t i = 0; i < nw; ++i)
        if (sgn(act(i, v)) != 0) full(i, v * ne + x) = act(i, v) * s;
    }
  }
  return full * tfw.section;
}

Matrix extension_unit(const DGAlgebraMorphism& eps, const DGModule& m, const Extension& em) {
  const auto& e = *eps.target;
  return em.projection * kronecker(Matrix::unit_column(e.dim(), e.unit()), Matrix::identity(m.dim()));
}

Matrix extension_counit(const DGAlgebraMorphism& eps, const DGModule& n, const Extension& en) {
  const std::size_t ne = eps.target->dim(), nn = n.dim();
  Matrix full(nn, ne * nn);
  for (std::size_t x = 0; x < ne; ++x) full.set_block(0, x * nn, n.action(x));
  return full * en.section;
}

AdjunctionData tensor_adjunction(const DGAlgebraMorphism& eps, const DGModule& x, const DGModule& y) {
  AdjunctionData adj;
  adj.pair = "tensor_change -| restriction";
  const auto fx = tensor_change(eps, x);
  const auto gfx = restrict_scalars(eps, fx.module);
  const auto fgfx = tensor_change(eps, gfx);
  const Matrix phi_x = tensor_unit(eps, x, fx);
  validate_module_map(x, gfx, phi_x);
  adj.f_unit = tensor_change_map(eps, x, fx, fgfx, phi_x);
  adj.counit_fx = tensor_counit(eps, fx.module, fgfx);
  validate_module_map(fgfx.module, fx.module, adj.counit_fx);
  const auto gy = restrict_scalars(eps, y);
  const auto fgy = tensor_change(eps, gy);
  const auto gfgy = restrict_scalars(eps, fgy.module);
  adj.unit_gy = tensor_unit(eps, gy, fgy);
  validate_module_map(gy, gfgy, adj.unit_gy);
  adj.g_counit = tensor_counit(eps, y, fgy);
  validate_module_map(fgy.module, y, adj.g_counit);
  return adj;
}

AdjunctionData extension_adjunction(const DGAlgebraMorphism& eps, const DGModule& x, const DGModule& y) {
  AdjunctionData adj;
  adj.pair = "extension -| restriction";
  const auto fx = extend_scalars(eps, x);
  const auto gfx = restrict_scalars(eps, fx.module);
  const auto fgfx = extend_scalars(eps, gfx);
  const Matrix phi_x = extension_unit(eps, x, fx);
  validate_module_map(x, gfx, phi_x);
  adj.f_unit = extend_scalars_map(eps, fx, fgfx, phi_x);
  adj.counit_fx = extension_counit(eps, fx.module, fgfx);
  validate_module_map(fgfx.module, fx.module, adj.counit_fx);
  const auto gy = restrict_scalars(eps, y);
  const auto fgy = extend_scalars(eps, gy);
  const auto gfgy = restrict_scalars(eps, fgy.module);
  adj.unit_gy = extension_unit(eps, gy, fgy);
  validate_module_map(gy, gfgy, adj.unit_gy);
  adj.g_counit = extension_counit(eps, y, fgy);
  validate_module_map(fgy.module, y, adj.g_counit);
  return adj;
}

TriangleIdentityReport triangle_identity_check(const AdjunctionData& adj) {
  TriangleIdentityReport r;
  const Matrix first = adj.counit_fx * adj.f_unit;
  const Matrix second = adj.g_counit * adj.unit_gy;
  const auto bad1 = first.rows() == first.cols() ? first_differing_column(first, Matrix::identity(first.rows()))
                                                 : std::optional<std::size_t>(0);
  const auto bad2 = second.rows() == second.cols() ? first_differing_column(second, Matrix::identity(second.rows()))
                                                   : std::optional<std::size_t>(0);
  r.first = !bad1;
  r.second = !bad2;
  if (bad1)
    r.witness = "Psi_FX F(Phi_X) differs from the identity on basis vector " + pos(*bad1);
  else if (bad2)
    r.witness = "G(Psi_Y) Phi_GY differs from the identity on basis vector " + pos(*bad2);
  return r;
}

// ---- Hom complexes --------------------------------------------------------

ALinearHom::ALinearHom(const DGModule& v, const DGModule& w, int degree) : v_(&v), w_(&w), degree_(degree) {
  if (!same_algebra(v.algebra(), w.algebra())) throw StructuralError("hom between modules over different algebras");
  const auto& gv = v.space();
  const auto& gw = w.space();
  if (v.free_basis()) {
    semifree_ = true;
    for (auto g : v.free_basis()->generators) {
      offsets_.push_back(dim_);
      gen_rows_.push_back(gw.indices_of_degree(gv.degrees[g] + degree));
      dim_ += gen_rows_.back().size();
    }
    return;
  }
  for (std::size_t i = 0; i < gw.dim(); ++i)
    for (std::size_t j = 0; j < gv.dim(); ++j)
      if (gw.degrees[i] == gv.degrees[j] + degree) entries_.emplace_back(i, j);
  const auto& a = v.algebra();
  if (a.dim() == 1) {
    all_entries_ = true;
    dim_ = entries_.size();
    return;
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t k = 0; k < entries_.size(); ++k) index[entries_[k]] = k;
  // Rows: (action, p, q) with f A_V - (-1)^{r|a|} A_W f evaluated at entry (p, q).
  const std::size_t nv = gv.dim(), nw = gw.dim();
  std::vector<std::size_t> nonunit;
  for (std::size_t x = 0; x < a.dim(); ++x)
    if (x != a.unit()) nonunit.push_back(x);
  Matrix constraints(nonunit.size() * nw * nv, entries_.size());
  for (std::size_t t = 0; t < nonunit.size(); ++t) {
    const auto x = nonunit[t];
    const Matrix& av = v.action(x);
    const Matrix& aw = w.action(x);
    const Rational s = sign_of_parity(static_cast<long long>(degree) * a.degree(x));
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      const auto [i, j] = entries_[k];
      for (std::size_t q = 0; q < nv; ++q)
        if (sgn(av(j, q)) != 0) constraints(t * nw * nv + i * nv + q, k) += av(j, q);
      for (std::size_t p = 0; p < nw; ++p)
        if (sgn(aw(p, i)) != 0) constraints(t * nw * nv + p * nv + j, k) -= s * aw(p, i);
    }
  }
  basis_ = kernel_basis(constraints);
  basis_left_inverse_ = left_inverse(basis_);
  dim_ = basis_.cols();
}

Matrix ALinearHom::to_matrix(const Matrix& coords) const {
  const auto& v = *v_;
  const auto& w = *w_;
  Matrix f(w.dim(), v.dim());
  if (semifree_) {
    const auto& fb = *v.free_basis();
    const auto& a = v.algebra();
    const std::size_t ng = fb.generators.size();
    Matrix values(w.dim(), ng);
    for (std::size_t gi = 0; gi < ng; ++gi)
      for (std::size_t t = 0; t < gen_rows_[gi].size(); ++t) values(gen_rows_[gi][t], gi) = coords(offsets_[gi] + t, 0);
    std::vector<std::optional<Matrix>> moved(a.dim());
    for (std::size_t b = 0; b < v.dim(); ++b) {
      const auto x = fb.alg[b];
      if (!moved[x]) moved[x] = w.action(x) * values;
      const Rational s = fb.sign[b] * sign_of_parity(static_cast<long long>(degree_) * a.degree(x));
      for (std::size_t i = 0; i < w.dim(); ++i) {
        const auto& val = (*moved[x])(i, fb.gen[b]);
        if (sgn(val) != 0) f(i, b) = s * val;
      }
    }
    return f;
  }
  const Matrix x = all_entries_ ? coords : basis_ * coords;
  for (std::size_t k = 0; k < entries_.size(); ++k) f(entries_[k].first, entries_[k].second) = x(k, 0);
  return f;
}

Matrix ALinearHom::coordinates(const Matrix& map) const {
  Matrix c(dim_, 1);
  if (semifree_) {
    const auto& fb = *v_->free_basis();
    for (std::size_t gi = 0; gi < gen_rows_.size(); ++gi)
      for (std::size_t t = 0; t < gen_rows_[gi].size(); ++t) c(offsets_[gi] + t, 0) = map(gen_rows_[gi][t], fb.generators[gi]);
    return c;
  }
  Matrix x(entries_.size(), 1);
  for (std::size_t k = 0; k < entries_.size(); ++k) x(k, 0) = map(entries_[k].first, entries_[k].second);
  return all_entries_ ? x : basis_left_inverse_ * x;
}

Matrix hom_differential(const ALinearHom& from, const ALinearHom& to) {
  if (from.v_ != to.v_ || from.w_ != to.w_ || to.degree_ != from.degree_ + 1)
    throw StructuralError("hom_differential: incompatible hom spaces");
  const auto& v = *from.v_;
  const auto& w = *from.w_;
  const int r = from.degree_;
  const Rational minus_sign = -sign_of_parity(r);
  Matrix out(to.dim(), from.dim());
  if (from.semifree_) {
    const auto& fb = *v.free_basis();
    const auto& a = v.algebra();
    for (std::size_t gi = 0; gi < fb.generators.size(); ++gi) {
      const auto& rows = to.gen_rows_[gi];
      // d_W f(g)
      out.set_block(to.offsets_[gi], from.offsets_[gi], w.d().select(rows, from.gen_rows_[gi]));
      // -(-1)^r f(d_V g)
      const auto g = fb.generators[gi];
      for (std::size_t b = 0; b < v.dim(); ++b) {
        const auto& c = v.d()(b, g);
        if (sgn(c) == 0) continue;
        const auto gj = fb.gen[b];
        const auto x = fb.alg[b];
        const Rational coef = minus_sign * c * fb.sign[b] * sign_of_parity(static_cast<long long>(r) * a.degree(x));
        const Matrix block = w.action(x).select(rows, from.gen_rows_[gj]) * coef;
        for (std::size_t i = 0; i < block.rows(); ++i)
          for (std::size_t j = 0; j < block.cols(); ++j)
            if (sgn(block(i, j)) != 0) out(to.offsets_[gi] + i, from.offsets_[gj] + j) += block(i, j);
      }
    }
    return out;
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t k = 0; k < to.entries_.size(); ++k) index[to.entries_[k]] = k;
  Matrix entries(to.entries_.size(), from.entries_.size());
  for (std::size_t k = 0; k < from.entries_.size(); ++k) {
    const auto [i, j] = from.entries_[k];
    for (std::size_t p = 0; p < w.dim(); ++p)
      if (sgn(w.d()(p, i)) != 0) entries(index.at({p, j}), k) += w.d()(p, i);
    for (std::size_t q = 0; q < v.dim(); ++q)
      if (sgn(v.d()(j, q)) != 0) entries(index.at({i, q}), k) += minus_sign * v.d()(j, q);
  }
  if (from.all_entries_) return entries;
  return to.basis_left_inverse_ * entries * from.basis_;
}

std::pair<int, int> hom_range(const DGModule& v, const DGModule& w) {
  const auto tv = v.space().top(), bv = v.space().bottom();
  const auto tw = w.space().top(), bw = w.space().bottom();
  if (!tv || !tw) return {0, -1};
  return {*bw - *tv, *tw - *bv};
}

HomComplex hom_dg(const DGModule& v, const DGModule& w, int lo, int hi) {
  HomComplex out;
  GradedSpace space;
  std::vector<ALinearHom> homs;
  for (int r = lo; r <= hi; ++r) {
    homs.emplace_back(v, w, r);
    auto& p = out.positions[r];
    for (std::size_t k = 0; k < homs.back().dim(); ++k) {
      p.push_back(space.dim());
      space.degrees.push_back(r);
    }
  }
  Matrix d(space.dim(), space.dim());
  for (int r = lo; r < hi; ++r) {
    const auto& from = homs[static_cast<std::size_t>(r - lo)];
    const auto& to = homs[static_cast<std::size_t>(r - lo + 1)];
    if (from.dim() == 0 || to.dim() == 0) continue;
    d.scatter(out.positions[r + 1], out.positions[r], hom_differential(from, to));
  }
  out.complex = Complex::make(std::move(space), std::move(d));
  return out;
}

HomComplex hom_dg(const DGModule& v, const DGModule& w) {
  const auto [lo, hi] = hom_range(v, w);
  return hom_dg(v, w, lo - 1, hi + 1);
}

std::optional<Matrix> module_homotopy_solve(const DGModule& v, const DGModule& w, const Matrix& f) {
  validate_module_map(v, w, f, 0);
  const ALinearHom hm1(v, w, -1), h0(v, w, 0);
  const Matrix c = h0.coordinates(f);
  if (!(h0.to_matrix(c) == f)) throw std::logic_error("module_homotopy_solve: coordinates do not reproduce the map");
  if (h0.dim() == 0) return Matrix(w.dim(), v.dim());
  const auto x = solve_particular(hom_differential(hm1, h0), c);
  if (!x) return std::nullopt;
  Matrix h = hm1.to_matrix(*x);
  if (!(w.d() * h + h * v.d() == f)) throw std::logic_error("module_homotopy_solve: solution fails re-substitution");
  return h;
}

Matrix chain_map_space(const DGModule& v, const DGModule& w, const ALinearHom& h0) {
  const ALinearHom h1(v, w, 1);
  if (h1.dim() == 0) return Matrix::identity(h0.dim());
  return kernel_basis(hom_differential(h0, h1));
}

TotalModule total_module(const ModuleColumns& c) {
  if (c.columns.empty()) throw StructuralError("total of an empty column list");
  for (std::size_t i = 0; i < c.deltas.size(); ++i) validate_module_map(c.columns[i], c.columns[i + 1], c.deltas[i]);
  ComplexOfComplexes cc;
  cc.first = c.first;
  for (const auto& m : c.columns) cc.columns.push_back(m.carrier());
  cc.deltas = c.deltas;
  auto t = total_complex(cc);
  const auto& a = c.columns.front().algebra();
  std::vector<Matrix> actions(a.dim(), Matrix(t.total.dim(), t.total.dim()));
  bool free = true, kproj = true;
  FreeBasis fb;
  fb.alg.resize(t.total.dim());
  fb.gen.resize(t.total.dim());
  fb.sign.resize(t.total.dim());
  for (std::size_t n = 0; n < c.columns.size(); ++n) {
    const int i = c.first + static_cast<int>(n);
    const auto& col = c.columns[n];
    const auto& idx = t.column_indices[n];
    for (std::size_t x = 0; x < a.dim(); ++x)
      actions[x].scatter(idx, idx, col.action(x) * Rational(sign_of_parity(static_cast<long long>(i) * a.degree(x))));
    kproj = kproj && col.kprojective_by_construction();
    if (!col.free_basis()) {
      free = false;
      continue;
    }
    const auto& cf = *col.free_basis();
    const std::size_t g0 = fb.generators.size();
    for (auto g : cf.generators) fb.generators.push_back(idx[g]);
    for (std::size_t b = 0; b < col.dim(); ++b) {
      fb.alg[idx[b]] = cf.alg[b];
      fb.gen[idx[b]] = cf.gen[b] + g0;
      fb.sign[idx[b]] = cf.sign[b] * sign_of_parity(static_cast<long long>(i) * a.degree(cf.alg[b]));
    }
  }
  std::optional<FreeBasis> free_basis;
  if (free) free_basis = std::move(fb);
  auto module = DGModule::make(c.columns.front().algebra_ptr(), t.total, std::move(actions), std::move(free_basis), kproj);
  return TotalModule{std::move(module), std::move(t.column_indices)};
}

}  // namespace dgw
