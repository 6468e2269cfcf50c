#include "dgw/complex.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "dgw/errors.hpp"

namespace dgw {

// ---- graded spaces --------------------------------------------------------

std::vector<std::size_t> GradedSpace::indices_of_degree(int k) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (degrees[i] == k) idx.push_back(i);
  return idx;
}

std::size_t GradedSpace::dim_of_degree(int k) const {
  return static_cast<std::size_t>(std::count(degrees.begin(), degrees.end(), k));
}

std::vector<int> GradedSpace::support() const {
  std::set<int> s(degrees.begin(), degrees.end());
  return {s.begin(), s.end()};
}

std::optional<int> GradedSpace::top() const {
  if (degrees.empty()) return std::nullopt;
  return *std::max_element(degrees.begin(), degrees.end());
}

std::optional<int> GradedSpace::bottom() const {
  if (degrees.empty()) return std::nullopt;
  return *std::min_element(degrees.begin(), degrees.end());
}

GradedSpace GradedSpace::from_dims(const std::map<int, std::size_t>& dims) {
  GradedSpace g;
  for (const auto& [k, n] : dims)
    for (std::size_t i = 0; i < n; ++i) g.degrees.push_back(k);
  return g;
}

GradedSpace GradedSpace::shifted(int n) const {
  GradedSpace g = *this;
  for (auto& k : g.degrees) k -= n;
  return g;
}

void GradedSpace::validate() const {
  if (!labels.empty() && labels.size() != degrees.size())
    throw StructuralError("graded space: " + std::to_string(labels.size()) + " labels for " +
                          std::to_string(degrees.size()) + " basis vectors");
  if (!weights.empty()) {
    if (weights.size() != degrees.size())
      throw StructuralError("graded space: " + std::to_string(weights.size()) + " weights for " +
                            std::to_string(degrees.size()) + " basis vectors");
    for (const auto& w : weights)
      if (w.size() != weights.front().size()) throw StructuralError("graded space: weight vectors of unequal rank");
  }
}

namespace {

std::string label_or_index(const GradedSpace& g, std::size_t i) {
  return g.labels.empty() ? "#" + std::to_string(i) : g.labels[i];
}

}  // namespace

GradedSpace direct_sum(const GradedSpace& a, const GradedSpace& b) {
  GradedSpace g;
  g.degrees = a.degrees;
  g.degrees.insert(g.degrees.end(), b.degrees.begin(), b.degrees.end());
  if (!a.labels.empty() || !b.labels.empty()) {
    for (std::size_t i = 0; i < a.dim(); ++i) g.labels.push_back(label_or_index(a, i));
    for (std::size_t i = 0; i < b.dim(); ++i) g.labels.push_back(label_or_index(b, i));
  }
  if (a.has_weights() || b.has_weights()) {
    if ((a.dim() && !a.has_weights()) || (b.dim() && !b.has_weights()))
      throw StructuralError("direct sum of weighted and unweighted spaces");
    if (a.dim() && b.dim() && a.weight_rank() != b.weight_rank())
      throw StructuralError("direct sum of spaces with different weight ranks");
    g.weights = a.weights;
    g.weights.insert(g.weights.end(), b.weights.begin(), b.weights.end());
  }
  return g;
}

GradedSpace tensor(const GradedSpace& a, const GradedSpace& b) {
  GradedSpace g;
  const bool labelled = !a.labels.empty() || !b.labels.empty();
  const bool weighted = a.has_weights() || b.has_weights();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      g.degrees.push_back(a.degrees[i] + b.degrees[j]);
      if (labelled) g.labels.push_back(label_or_index(a, i) + "*" + label_or_index(b, j));
      if (weighted) {
        const Weight wa = a.has_weights() ? a.weights[i] : Weight(b.weight_rank(), 0);
        const Weight wb = b.has_weights() ? b.weights[j] : Weight(a.weight_rank(), 0);
        if (wa.size() != wb.size()) throw StructuralError("tensor of spaces with different weight ranks");
        Weight w(wa.size());
        for (std::size_t r = 0; r < w.size(); ++r) w[r] = wa[r] + wb[r];
        g.weights.push_back(std::move(w));
      }
    }
  return g;
}

bool is_homogeneous(const Matrix& m, const GradedSpace& src, const GradedSpace& dst, int degree) {
  if (m.rows() != dst.dim() || m.cols() != src.dim()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0 && dst.degrees[i] != src.degrees[j] + degree) return false;
  return true;
}

void require_homogeneous(const Matrix& m, const GradedSpace& src, const GradedSpace& dst, int degree,
                         const std::string& what) {
  if (m.rows() != dst.dim() || m.cols() != src.dim())
    throw StructuralError(what + ": expected a " + std::to_string(dst.dim()) + "x" + std::to_string(src.dim()) +
                          " matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0 && dst.degrees[i] != src.degrees[j] + degree)
        throw ValidationError(what + " is not homogeneous of degree " + std::to_string(degree),
                              "entry (" + std::to_string(i) + "," + std::to_string(j) + ") maps degree " +
                                  std::to_string(src.degrees[j]) + " to degree " + std::to_string(dst.degrees[i]));
}

// ---- complexes ------------------------------------------------------------

Complex Complex::make(GradedSpace space, Matrix d) {
  space.validate();
  if (d.rows() == 0 && d.cols() == 0) d = Matrix(space.dim(), space.dim());
  require_homogeneous(d, space, space, 1, "differential");
  const Matrix dd = d * d;
  for (std::size_t j = 0; j < dd.cols(); ++j)
    for (std::size_t i = 0; i < dd.rows(); ++i)
      if (sgn(dd(i, j)) != 0)
        throw ValidationError("d^2 != 0 at degree " + std::to_string(space.degrees[j]),
                              "degree " + std::to_string(space.degrees[j]) + ", basis vector " + std::to_string(j) +
                                  " -> component " + std::to_string(i) + " = " + format_rational(dd(i, j)));
  Complex c;
  c.space_ = std::move(space);
  c.d_ = std::move(d);
  return c;
}

Complex Complex::zero() { return make(GradedSpace{}, Matrix{}); }

Complex Complex::discrete(GradedSpace space) {
  const auto n = space.dim();
  return make(std::move(space), Matrix(n, n));
}

Matrix Complex::block(int k) const {
  const auto src = space_.indices_of_degree(k);
  const auto dst = space_.indices_of_degree(k + 1);
  return d_.select(dst, src);
}

Complex shift(const Complex& v, int n) {
  Matrix d = v.d();
  if (n % 2 != 0) d *= Rational(-1);
  return Complex::make(v.space().shifted(n), std::move(d));
}

Complex direct_sum(const Complex& a, const Complex& b) {
  return Complex::make(direct_sum(a.space(), b.space()), block_diagonal(a.d(), b.d()));
}

Complex tensor(const Complex& a, const Complex& b) {
  const auto space = tensor(a.space(), b.space());
  Matrix d = kronecker(a.d(), Matrix::identity(b.dim()));
  Matrix signs(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) signs(i, i) = sign_of_parity(a.space().degrees[i]);
  d += kronecker(signs, b.d());
  return Complex::make(space, std::move(d));
}

GradedMorphism graded_morphism(Complex source, Complex target, int degree, Matrix map) {
  require_homogeneous(map, source.space(), target.space(), degree, "graded morphism");
  return GradedMorphism{std::move(source), std::move(target), degree, std::move(map)};
}

bool commutes_with_d(const Complex& source, const Complex& target, const Matrix& map) {
  return target.d() * map == map * source.d();
}

GradedMorphism chain_map(Complex source, Complex target, Matrix map) {
  require_homogeneous(map, source.space(), target.space(), 0, "chain map");
  const Matrix defect = target.d() * map - map * source.d();
  for (std::size_t j = 0; j < defect.cols(); ++j)
    for (std::size_t i = 0; i < defect.rows(); ++i)
      if (sgn(defect(i, j)) != 0)
        throw ValidationError("map does not commute with the differentials",
                              "source basis vector " + std::to_string(j) + " (degree " +
                                  std::to_string(source.space().degrees[j]) + "), target component " +
                                  std::to_string(i));
  return GradedMorphism{std::move(source), std::move(target), 0, std::move(map)};
}

// ---- cohomology -----------------------------------------------------------

namespace {

struct DegreeData {
  std::vector<std::size_t> idx;
  Matrix cycles;      // |idx| x z
  Matrix boundaries;  // |idx| x b, independent
};

DegreeData degree_data(const Complex& v, int k) {
  DegreeData dd;
  dd.idx = v.space().indices_of_degree(k);
  const auto next = v.space().indices_of_degree(k + 1);
  const auto prev = v.space().indices_of_degree(k - 1);
  dd.cycles = kernel_basis(v.d().select(next, dd.idx));
  if (prev.empty() || dd.idx.empty())
    dd.boundaries = Matrix(dd.idx.size(), 0);
  else
    dd.boundaries = image_basis(v.d().select(dd.idx, prev));
  return dd;
}

Matrix embed_rows(const Matrix& m, const std::vector<std::size_t>& rows, std::size_t n) {
  Matrix out(n, m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(rows[i], j) = m(i, j);
  return out;
}

}  // namespace

std::size_t CohomologyResult::total() const {
  std::size_t t = 0;
  for (const auto& [k, n] : dims) t += n;
  return t;
}

std::size_t CohomologyResult::at(int k) const {
  const auto it = dims.find(k);
  return it == dims.end() ? 0 : it->second;
}

CohomologyResult cohomology(const Complex& v) {
  CohomologyResult out;
  for (int k : v.space().support()) {
    const auto dd = degree_data(v, k);
    const std::size_t b = dd.boundaries.cols();
    std::vector<std::size_t> rep_cols;
    if (dd.cycles.cols() > 0) {
      const auto e = rref(hstack(dd.boundaries, dd.cycles));
      for (auto pc : e.pivot_cols)
        if (pc >= b) rep_cols.push_back(pc - b);
    }
    out.dims[k] = rep_cols.size();
    out.representatives[k] = embed_rows(dd.cycles.select_cols(rep_cols), dd.idx, v.dim());
  }
  return out;
}

bool is_acyclic(const Complex& v) { return cohomology(v).total() == 0; }

std::size_t induced_rank(const Complex& v, const Complex& w, const Matrix& f, int k) {
  const auto hv = cohomology(v);
  const auto it = hv.representatives.find(k);
  if (it == hv.representatives.end() || it->second.cols() == 0) return 0;
  const auto dw = degree_data(w, k);
  if (dw.idx.empty()) return 0;
  const Matrix image = (f * it->second).select_rows(dw.idx);
  return rank(hstack(dw.boundaries, image)) - dw.boundaries.cols();
}

QuasiIsoReport is_quasi_iso(const Complex& v, const Complex& w, const Matrix& f) {
  QuasiIsoReport report;
  const auto hv = cohomology(v);
  const auto hw = cohomology(w);
  std::set<int> degrees;
  for (const auto& [k, n] : hv.dims) degrees.insert(k);
  for (const auto& [k, n] : hw.dims) degrees.insert(k);
  for (int k : degrees) {
    DegreeComparison c;
    c.source_dim = hv.at(k);
    c.target_dim = hw.at(k);
    if (c.source_dim > 0 && c.target_dim > 0) {
      const auto dw = degree_data(w, k);
      const Matrix image = (f * hv.representatives.at(k)).select_rows(dw.idx);
      c.rank = rank(hstack(dw.boundaries, image)) - dw.boundaries.cols();
    }
    if (!c.iso()) report.quasi_iso = false;
    report.degrees[k] = c;
  }
  return report;
}

QuasiIsoReport is_quasi_iso(const GradedMorphism& f) { return is_quasi_iso(f.source, f.target, f.map); }

// ---- cones and triangles --------------------------------------------------

void validate_triangle(const Triangle& t) {
  chain_map(t.x, t.y, t.f);
  chain_map(t.y, t.z, t.g);
  chain_map(t.z, shift(t.x), t.h);
}

ConeResult cone(const Complex& v, const Complex& w, const Matrix& f) {
  chain_map(v, w, f);
  const std::size_t nv = v.dim(), nw = w.dim();
  Matrix d(nv + nw, nv + nw);
  d.set_block(0, 0, -v.d());
  d.set_block(nv, 0, f);
  d.set_block(nv, nv, w.d());
  ConeResult out;
  out.cone = Complex::make(direct_sum(v.space().shifted(1), w.space()), std::move(d));
  Matrix incl(nv + nw, nw);
  incl.set_block(nv, 0, Matrix::identity(nw));
  Matrix proj(nv, nv + nw);
  proj.set_block(0, 0, Matrix::identity(nv));
  out.triangle = Triangle{v, w, out.cone, f, std::move(incl), std::move(proj)};
  return out;
}

ConeResult cone(const GradedMorphism& f) { return cone(f.source, f.target, f.map); }

Triangle rotate(const Triangle& t) {
  validate_triangle(t);
  Triangle r{t.y, t.z, shift(t.x), t.g, t.h, -t.f};
  validate_triangle(r);
  return r;
}

Triangle shift(const Triangle& t) {
  Triangle s{shift(t.x), shift(t.y), shift(t.z), -t.f, -t.g, -t.h};
  validate_triangle(s);
  return s;
}

Triangle direct_sum(const Triangle& a, const Triangle& b) {
  Triangle s{direct_sum(a.x, b.x), direct_sum(a.y, b.y), direct_sum(a.z, b.z), block_diagonal(a.f, b.f),
             block_diagonal(a.g, b.g), block_diagonal(a.h, b.h)};
  validate_triangle(s);
  return s;
}

namespace {

// Index of unknown entries u(a, b) of a degree-0 map Z -> C.
struct EntryIndex {
  std::vector<std::vector<long>> pos;
  std::size_t count = 0;
  std::size_t cols = 0;
  EntryIndex(const GradedSpace& dst, const GradedSpace& src, int degree)
      : pos(dst.dim(), std::vector<long>(src.dim(), -1)), cols(src.dim()) {
    for (std::size_t a = 0; a < dst.dim(); ++a)
      for (std::size_t b = 0; b < src.dim(); ++b)
        if (dst.degrees[a] == src.degrees[b] + degree) pos[a][b] = static_cast<long>(count++);
  }
  Matrix unpack(const Matrix& x, std::size_t col = 0) const {
    Matrix m(pos.size(), cols);
    for (std::size_t a = 0; a < m.rows(); ++a)
      for (std::size_t b = 0; b < m.cols(); ++b)
        if (pos[a][b] >= 0) m(a, b) = x(static_cast<std::size_t>(pos[a][b]), col);
    return m;
  }
};

}  // namespace

std::optional<Matrix> homotopy_solve(const Complex& v, const Complex& w, const Matrix& f) {
  require_homogeneous(f, v.space(), w.space(), 0, "homotopy_solve input");
  const EntryIndex unknowns(w.space(), v.space(), -1);
  const EntryIndex equations(w.space(), v.space(), 0);
  Matrix system(equations.count, unknowns.count);
  Matrix rhs(equations.count, 1);
  const auto& dw = w.d();
  const auto& dv = v.d();
  for (std::size_t a = 0; a < w.dim(); ++a)
    for (std::size_t b = 0; b < v.dim(); ++b) {
      const long u = unknowns.pos[a][b];
      if (u < 0) continue;
      for (std::size_t i = 0; i < w.dim(); ++i)
        if (sgn(dw(i, a)) != 0) system(static_cast<std::size_t>(equations.pos[i][b]), u) += dw(i, a);
      for (std::size_t j = 0; j < v.dim(); ++j)
        if (sgn(dv(b, j)) != 0) system(static_cast<std::size_t>(equations.pos[a][j]), u) += dv(b, j);
    }
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j)
      if (equations.pos[i][j] >= 0) rhs(static_cast<std::size_t>(equations.pos[i][j]), 0) = f(i, j);
  const auto x = solve_particular(system, rhs);
  if (!x) return std::nullopt;
  Matrix h = unknowns.unpack(*x);
  if (!(w.d() * h + h * v.d() == f)) throw std::logic_error("homotopy_solve: solution fails re-substitution");
  return h;
}

void validate_complex_of_complexes(const ComplexOfComplexes& c) {
  if (c.columns.empty()) throw StructuralError("complex of complexes has no columns");
  if (c.deltas.size() + 1 != c.columns.size())
    throw StructuralError("complex of complexes: expected " + std::to_string(c.columns.size() - 1) +
                          " connecting maps, got " + std::to_string(c.deltas.size()));
  for (std::size_t i = 0; i < c.deltas.size(); ++i) {
    try {
      chain_map(c.columns[i], c.columns[i + 1], c.deltas[i]);
    } catch (const ValidationError& e) {
      throw ValidationError("connecting map delta_" + std::to_string(c.first + static_cast<int>(i)) +
                                " is not a chain map",
                            e.witness());
    }
    if (i + 1 < c.deltas.size() && !(c.deltas[i + 1] * c.deltas[i]).is_zero())
      throw ValidationError("delta delta != 0", "columns " + std::to_string(c.first + static_cast<int>(i)) + " -> " +
                                                    std::to_string(c.first + static_cast<int>(i) + 2));
  }
}

TotalComplexResult total_complex(const ComplexOfComplexes& c, TotalSign sign) {
  validate_complex_of_complexes(c);
  TotalComplexResult out;
  GradedSpace space;
  std::vector<std::size_t> offsets;
  for (std::size_t n = 0; n < c.columns.size(); ++n) {
    const int i = c.first + static_cast<int>(n);
    offsets.push_back(space.dim());
    space = direct_sum(space, c.columns[n].space().shifted(-i));
    std::vector<std::size_t> idx(c.columns[n].dim());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = offsets.back() + k;
    out.column_indices.push_back(std::move(idx));
  }
  Matrix d(space.dim(), space.dim());
  for (std::size_t n = 0; n < c.columns.size(); ++n) {
    const int i = c.first + static_cast<int>(n);
    const Rational col_sign = sign == TotalSign::shifted_columns ? sign_of_parity(i) : 1;
    const Rational delta_sign = sign == TotalSign::signed_connecting ? sign_of_parity(i) : 1;
    d.set_block(offsets[n], offsets[n], c.columns[n].d() * col_sign);
    if (n + 1 < c.columns.size()) d.set_block(offsets[n + 1], offsets[n], c.deltas[n] * delta_sign);
  }
  out.total = Complex::make(std::move(space), std::move(d));
  for (std::size_t p = 0; p < c.columns.size(); ++p) {
    std::vector<std::size_t> f;
    for (std::size_t n = p; n < c.columns.size(); ++n)
      f.insert(f.end(), out.column_indices[n].begin(), out.column_indices[n].end());
    out.filtration.push_back(std::move(f));
  }
  return out;
}

namespace {

// Linear system in several graded unknown blocks, assembled from terms A X B.
class BlockSystem {
 public:
  std::size_t add_unknown(const GradedSpace& dst, const GradedSpace& src, int degree) {
    blocks_.emplace_back(dst, src, degree);
    offsets_.push_back(count_);
    count_ += blocks_.back().count;
    return blocks_.size() - 1;
  }
  std::size_t add_equation(std::size_t rows, std::size_t cols) {
    eq_shapes_.emplace_back(rows, cols);
    eq_offsets_.push_back(eq_count_);
    eq_count_ += rows * cols;
    return eq_shapes_.size() - 1;
  }
  // Adds c * (left * X_block * right) to equation eq.
  void add_term(std::size_t eq, const Matrix& left, std::size_t block, const Matrix& right, const Rational& c = 1) {
    terms_.push_back({eq, left, block, right, c});
  }
  void set_rhs(std::size_t eq, const Matrix& m) { rhs_.emplace_back(eq, m); }

  SolveResult solve() const {
    Matrix system(eq_count_, count_);
    Matrix rhs(eq_count_, 1);
    for (const auto& t : terms_) {
      const auto& blk = blocks_[t.block];
      const std::size_t cols = eq_shapes_[t.eq].second;
      for (std::size_t a = 0; a < blk.pos.size(); ++a)
        for (std::size_t b = 0; b < blk.pos[a].size(); ++b) {
          const long u = blk.pos[a][b];
          if (u < 0) continue;
          const std::size_t col = offsets_[t.block] + static_cast<std::size_t>(u);
          for (std::size_t i = 0; i < t.left.rows(); ++i) {
            if (sgn(t.left(i, a)) == 0) continue;
            for (std::size_t j = 0; j < t.right.cols(); ++j)
              if (sgn(t.right(b, j)) != 0) system(eq_offsets_[t.eq] + i * cols + j, col) += t.c * t.left(i, a) * t.right(b, j);
          }
        }
    }
    for (const auto& [eq, m] : rhs_)
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rhs(eq_offsets_[eq] + i * m.cols() + j, 0) = m(i, j);
    return solve_exact(system, rhs);
  }
  Matrix unpack(std::size_t block, const Matrix& x) const {
    const auto& blk = blocks_[block];
    Matrix m(blk.pos.size(), blk.cols);
    for (std::size_t a = 0; a < m.rows(); ++a)
      for (std::size_t b = 0; b < m.cols(); ++b)
        if (blk.pos[a][b] >= 0) m(a, b) = x(offsets_[block] + static_cast<std::size_t>(blk.pos[a][b]), 0);
    return m;
  }

 private:
  struct Term {
    std::size_t eq;
    Matrix left;
    std::size_t block;
    Matrix right;
    Rational c;
  };
  std::vector<EntryIndex> blocks_;
  std::vector<std::size_t> offsets_;
  std::size_t count_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> eq_shapes_;
  std::vector<std::size_t> eq_offsets_;
  std::size_t eq_count_ = 0;
  std::vector<Term> terms_;
  std::vector<std::pair<std::size_t, Matrix>> rhs_;
};

}  // namespace

std::optional<Matrix> distinguished_witness(const Triangle& t) {
  validate_triangle(t);
  const auto c = cone(t.x, t.y, t.f);
  const auto& cz = c.cone;
  const auto& z = t.z;
  const Complex tx = shift(t.x);
  const auto id = [](std::size_t n) { return Matrix::identity(n); };

  // Unknowns: u: Z -> C (degree 0), s: Y -> C and r: Z -> T X (degree -1).
  // d_C u = u d_Z, u g - i = d_C s + s d_Y, p u - h = d r + r d_Z.
  BlockSystem sys;
  const auto u = sys.add_unknown(cz.space(), z.space(), 0);
  const auto s = sys.add_unknown(cz.space(), t.y.space(), -1);
  const auto r = sys.add_unknown(tx.space(), z.space(), -1);
  const auto e1 = sys.add_equation(cz.dim(), z.dim());
  sys.add_term(e1, cz.d(), u, id(z.dim()));
  sys.add_term(e1, id(cz.dim()), u, z.d(), -1);
  const auto e2 = sys.add_equation(cz.dim(), t.y.dim());
  sys.add_term(e2, id(cz.dim()), u, t.g);
  sys.add_term(e2, cz.d(), s, id(t.y.dim()), -1);
  sys.add_term(e2, id(cz.dim()), s, t.y.d(), -1);
  sys.set_rhs(e2, c.triangle.g);
  const auto e3 = sys.add_equation(tx.dim(), z.dim());
  sys.add_term(e3, c.triangle.h, u, id(z.dim()));
  sys.add_term(e3, tx.d(), r, id(z.dim()), -1);
  sys.add_term(e3, id(tx.dim()), r, z.d(), -1);
  sys.set_rhs(e3, t.h);

  const auto sol = sys.solve();
  if (!sol.solution) return std::nullopt;
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix x = *sol.solution;
    if (attempt > 0)
      for (std::size_t k = 0; k < sol.kernel.cols(); ++k) x += sol.kernel.col(k) * Rational(coef(rng));
    Matrix candidate = sys.unpack(u, x);
    if (is_quasi_iso(z, cz, candidate).quasi_iso) return candidate;
  }
  return std::nullopt;
}

bool is_distinguished(const Triangle& t) { return distinguished_witness(t).has_value(); }

bool check_sum_distinguished(const Triangle& a, const Triangle& b) {
  if (!is_distinguished(a) || !is_distinguished(b)) return false;
  return is_distinguished(direct_sum(a, b));
}

}  // namespace dgw
