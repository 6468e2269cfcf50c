#include "dgw/resolution.hpp"

#include <limits>
#include <random>

#include "dgw/errors.hpp"

namespace dgw {

namespace {

std::string residual_witness(const Matrix& residual) {
  for (std::size_t j = 0; j < residual.cols(); ++j)
    for (std::size_t i = 0; i < residual.rows(); ++i)
      if (sgn(residual(i, j)) != 0)
        return "residual entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
               format_rational(residual(i, j));
  return "zero residual";
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> r;
  for (std::size_t i = from; i < to; ++i) r.push_back(i);
  return r;
}

Complex sub_complex(const Complex& c, const std::vector<std::size_t>& idx) {
  GradedSpace g;
  for (auto i : idx) g.degrees.push_back(c.space().degrees[i]);
  return Complex::make(std::move(g), c.d().select(idx, idx));
}

}  // namespace

ConeHomotopy extend_homotopy_over_cone(const Complex& v, const Complex& w, const Matrix& f, const Complex& z,
                                       const Matrix& phi, const Matrix& h2, const Matrix& h1) {
  const auto c = cone(v, w, f);
  const std::size_t nv = v.dim(), nw = w.dim();
  const Complex tv = shift(v);
  chain_map(c.cone, z, phi);
  require_homogeneous(h1, tv.space(), z.space(), -1, "h1");
  require_homogeneous(h2, w.space(), z.space(), -1, "h2");
  const Matrix phi1 = phi.select_cols(range(0, nv));
  const Matrix phi2 = phi.select_cols(range(nv, nv + nw));
  const Matrix r2 = phi2 - (h2 * w.d() + z.d() * h2);
  if (!r2.is_zero()) throw ValidationError("h2 is not a homotopy for phi2", residual_witness(r2));
  ConeHomotopy out;
  out.psi = phi1 - h2 * f;
  out.psi_chain = z.d() * out.psi == out.psi * tv.d();
  if (!out.psi_chain)
    throw ValidationError("phi1 - h2 T(f) is not a chain map", residual_witness(z.d() * out.psi - out.psi * tv.d()));
  const Matrix r1 = out.psi - (h1 * tv.d() + z.d() * h1);
  if (!r1.is_zero()) throw ValidationError("h1 is not a homotopy for phi1 - h2 T(f)", residual_witness(r1));
  out.h = hstack(h1, h2);
  const Matrix r = phi - (out.h * c.cone.d() + z.d() * out.h);
  if (!r.is_zero()) throw std::logic_error("extend_homotopy_over_cone: " + residual_witness(r));
  return out;
}

void validate_filtered(const FilteredDGModule& fv) {
  const auto n = fv.module.dim();
  if (fv.steps.empty() || fv.steps.back() != n)
    throw StructuralError("filtration must end with the whole module");
  std::size_t prev = 0;
  for (std::size_t i = 0; i < fv.steps.size(); ++i) {
    if (fv.steps[i] <= prev && !(i == 0 && fv.steps[i] == 0 && n == 0))
      throw StructuralError("filtration steps must be strictly increasing");
    prev = fv.steps[i];
  }
  auto check = [&](const Matrix& op, const std::string& what) {
    for (std::size_t s : fv.steps)
      for (std::size_t i = s; i < n; ++i)
        for (std::size_t j = 0; j < s; ++j)
          if (sgn(op(i, j)) != 0)
            throw ValidationError("filtration step is not closed under " + what,
                                  "F of size " + std::to_string(s) + ", entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
  };
  check(fv.module.d(), "d");
  for (std::size_t a = 0; a < fv.module.algebra().dim(); ++a) check(fv.module.action(a), "the action of e" + std::to_string(a));
}

FilteredHomotopy filtered_null_homotopy(const FilteredDGModule& fv, const Complex& z, const Matrix& f,
                                        const PieceWitness& witness) {
  validate_filtered(fv);
  if (!is_acyclic(z)) throw StructuralError("filtered_null_homotopy: target is not acyclic");
  const Complex& v = fv.module.carrier();
  chain_map(v, z, f);
  const PieceWitness solve = witness ? witness : [](const Complex& gr, const Complex& zz, const Matrix& g) {
    return homotopy_solve(gr, zz, g);
  };
  FilteredHomotopy out;
  Matrix h(z.dim(), 0);
  std::size_t prev = 0;
  for (std::size_t step = 0; step < fv.steps.size(); ++step) {
    const auto f_idx = range(0, prev);
    const auto gr_idx = range(prev, fv.steps[step]);
    const Complex fi = sub_complex(v, f_idx);
    const Complex gr = sub_complex(v, gr_idx);
    const Matrix gamma = v.d().select(f_idx, gr_idx);
    // F_{i+1} is the cone of gamma: T^{-1} Gr -> F_i (cone order: Gr first).
    const Complex source = shift(gr, -1);
    const Matrix phi = hstack(f.select_cols(gr_idx), f.select_cols(f_idx));
    const Matrix psi = f.select_cols(gr_idx) - h * gamma;
    const auto h1 = solve(gr, z, psi);
    if (!h1)
      throw ValidationError("graded piece admits no null-homotopy", "filtration step " + std::to_string(step + 1));
    const auto ext = extend_homotopy_over_cone(source, fi, gamma, z, phi, h, *h1);
    const Matrix next = hstack(h, *h1);
    if (!(ext.h.select_cols(range(gr_idx.size(), gr_idx.size() + f_idx.size())) == h))
      throw std::logic_error("filtered_null_homotopy: extension does not restrict to the previous stage");
    h = next;
    out.stages.push_back(h);
    prev = fv.steps[step];
  }
  if (!(z.d() * h + h * v.d() == f)) throw std::logic_error("filtered_null_homotopy: result fails the defining equation");
  out.h = std::move(h);
  return out;
}

// ---- resolutions ----------------------------------------------------------

namespace {

Matrix action_map(const DGModule& p, const DGModule& m) {
  const auto& a = m.algebra();
  const std::size_t nm = m.dim();
  Matrix eps(nm, p.dim());
  for (std::size_t x = 0; x < a.dim(); ++x) eps.set_block(0, x * nm, m.action(x));
  return eps;
}

void assemble_total(Resolution& r, const DGModule& v) {
  ModuleColumns mc;
  mc.first = -static_cast<int>(r.columns.size()) + 1;
  for (auto it = r.columns.rbegin(); it != r.columns.rend(); ++it) mc.columns.push_back(*it);
  for (auto it = r.deltas.rbegin(); it != r.deltas.rend(); ++it) mc.deltas.push_back(*it);
  auto t = total_module(mc);
  r.augmentation = Matrix(v.dim(), t.module.dim());
  r.augmentation.scatter(range(0, v.dim()), t.column_indices.back(), r.covers.front());
  r.total = std::move(t.module);
  validate_module_map(r.total, v, r.augmentation);
}

}  // namespace

Resolution build_resolution(const DGModule& v, int depth, ResolveOptions options) {
  const auto& a = v.algebra_ptr();
  if (!a->nonpositive()) throw StructuralError("build_resolution: the algebra has positive-degree elements");
  if (depth < 1) throw StructuralError("build_resolution: depth must be at least 1");
  Resolution r;
  r.depth = depth;
  if (options.short_circuit && v.kprojective_by_construction()) {
    r.short_circuit = true;
    r.columns = {v};
    r.covers = {Matrix::identity(v.dim())};
    r.total = v;
    r.augmentation = Matrix::identity(v.dim());
    return r;
  }
  DGModule current = v;
  for (int j = 0; j <= depth; ++j) {
    DGModule p = free_module(a, current.carrier());
    Matrix cover = action_map(p, current);
    validate_module_map(p, current, cover);
    if (j > 0) r.deltas.push_back(r.kernels.back().inclusion * cover);
    r.columns.push_back(p);
    r.covers.push_back(cover);
    if (j < depth) {
      r.kernels.push_back(kernel(p, cover));
      current = r.kernels.back().module;
    }
  }
  assemble_total(r, v);
  return r;
}

Resolution truncate(const Resolution& r, const DGModule& v, int depth) {
  if (r.short_circuit) return r;
  if (depth < 1 || depth > r.depth) throw StructuralError("truncate: invalid depth");
  Resolution t;
  t.depth = depth;
  const auto n = static_cast<std::size_t>(depth);
  t.columns.assign(r.columns.begin(), r.columns.begin() + static_cast<long>(n + 1));
  t.deltas.assign(r.deltas.begin(), r.deltas.begin() + static_cast<long>(n));
  t.covers.assign(r.covers.begin(), r.covers.begin() + static_cast<long>(n + 1));
  t.kernels.assign(r.kernels.begin(), r.kernels.begin() + static_cast<long>(n));
  assemble_total(t, v);
  return t;
}

ResolutionChecks check_resolution(const Resolution& r, const DGModule& v) {
  ResolutionChecks c;
  const auto top = v.space().top();
  auto fail = [&](bool& flag, const std::string& w) {
    flag = false;
    if (c.witness.empty()) c.witness = w;
  };
  for (std::size_t j = 0; j < r.columns.size(); ++j) {
    const DGModule& target = j == 0 ? v : r.kernels[j - 1].module;
    const auto& p = r.columns[j];
    const std::string step = "step " + std::to_string(j);
    if (rank(r.covers[j]) != target.dim()) fail(c.covers_surjective, step + ": cover not surjective");
    const auto report = is_quasi_iso(p.carrier(), target.carrier(), r.covers[j]);
    for (const auto& [k, deg] : report.degrees)
      if (deg.rank != deg.target_dim) fail(c.cohomology_surjective, step + ": H^" + std::to_string(k) + " not onto");
    if (j < r.kernels.size()) {
      const auto hk = cohomology(r.kernels[j].module.carrier());
      for (const auto& [k, deg] : report.degrees)
        if (hk.at(k) + deg.target_dim != deg.source_dim)
          fail(c.kernel_cohomology, step + ": H^" + std::to_string(k) + "(K) is not the kernel of H(eps)");
      for (const auto& [k, n] : hk.dims)
        if (!report.degrees.count(k) && n != 0)
          fail(c.kernel_cohomology, step + ": stray H^" + std::to_string(k) + "(K)");
    }
    const auto pt = p.space().top();
    if (pt && top && *pt > *top) fail(c.bounded_above, step + ": column top " + std::to_string(*pt));
  }
  return c;
}

namespace {

// Longest run of degrees certified by `ok`, from hi downward to lo.
Window run_from_top(int lo, int hi, const std::function<bool(int)>& ok) {
  Window w;
  w.hi = hi;
  w.lo = hi + 1;
  for (int k = hi; k >= lo && ok(k); --k) w.lo = k;
  w.empty = w.lo > w.hi;
  return w;
}

DegreeComparison comparison_at(const QuasiIsoReport& r, int k) {
  const auto it = r.degrees.find(k);
  return it == r.degrees.end() ? DegreeComparison{} : it->second;
}

}  // namespace

ResolutionCertificate certify_resolution(const DGModule& v, int depth, ResolveOptions options) {
  ResolutionCertificate cert;
  const auto deep = build_resolution(v, depth + 1, options);
  if (deep.short_circuit || v.dim() == 0) {
    cert.resolution = deep.short_circuit ? deep : truncate(deep, v, depth);
    cert.checks = check_resolution(cert.resolution, v);
    cert.structural.all = true;
    cert.window.all = true;
    cert.quasi_iso_in_window = is_quasi_iso(cert.resolution.total.carrier(), v.carrier(), cert.resolution.augmentation)
                                   .quasi_iso;
    return cert;
  }
  cert.resolution = truncate(deep, v, depth);
  cert.checks = check_resolution(deep, v);
  const int top = *v.space().top();
  cert.structural.lo = top - depth + 1;
  cert.structural.hi = top;
  const auto qn = is_quasi_iso(cert.resolution.total.carrier(), v.carrier(), cert.resolution.augmentation);
  const auto qn1 = is_quasi_iso(deep.total.carrier(), v.carrier(), deep.augmentation);
  for (int k = cert.structural.lo; k <= cert.structural.hi; ++k) {
    const auto a = comparison_at(qn, k);
    const auto b = comparison_at(qn1, k);
    DegreeCertificate d;
    d.dim_n = a.source_dim;
    d.dim_next = b.source_dim;
    d.rank_n = a.rank;
    d.rank_next = b.rank;
    d.target_dim = cohomology(v.carrier()).at(k);
    d.certified = d.dim_n == d.dim_next && d.rank_n == d.rank_next;
    d.iso = d.dim_n == d.target_dim && d.rank_n == d.target_dim;
    cert.degrees[k] = d;
  }
  cert.window = run_from_top(cert.structural.lo, cert.structural.hi,
                             [&](int k) { return cert.degrees.at(k).certified; });
  cert.quasi_iso_in_window = !cert.window.empty;
  for (int k = cert.window.lo; k <= cert.window.hi; ++k)
    if (!cert.degrees.at(k).iso) cert.quasi_iso_in_window = false;
  return cert;
}

DerivedTensor derived_tensor(const DGModule& v, const DGAlgebraMorphism& eps, int depth, ResolveOptions options) {
  const auto deep = build_resolution(v, depth + 1, options);
  if (deep.short_circuit || v.dim() == 0) {
    auto tc = tensor_change(eps, deep.short_circuit ? v : truncate(deep, v, depth).total);
    DerivedTensor out{std::move(tc), {}, {}, {}};
    out.window.all = true;
    out.dims = cohomology(out.result.module.carrier()).dims;
    for (const auto& [k, n] : out.dims) out.certified[k] = true;
    return out;
  }
  const auto rn = truncate(deep, v, depth);
  auto tn = tensor_change(eps, rn.total);
  const auto tn1 = tensor_change(eps, deep.total);
  const auto hn = cohomology(tn.module.carrier());
  const auto hn1 = cohomology(tn1.module.carrier());
  const int top = *v.space().top();
  DerivedTensor out{std::move(tn), {}, {}, {}};
  for (int k = top - depth + 1; k <= top; ++k) out.certified[k] = hn.at(k) == hn1.at(k);
  out.window = run_from_top(top - depth + 1, top, [&](int k) { return out.certified.at(k); });
  if (!out.window.empty)
    for (int k = out.window.lo; k <= out.window.hi; ++k) out.dims[k] = hn.at(k);
  return out;
}

namespace {

std::map<int, std::size_t> hom_cohomology(const DGModule& p, const DGModule& w, int lo, int hi) {
  if (p.algebra().dim() == 1) {
    // Over the ground field H Hom(P, W) = Hom(H P, H W) degreewise.
    const auto hp = cohomology(p.carrier()), hw = cohomology(w.carrier());
    std::map<int, std::size_t> out;
    for (int i = lo; i <= hi; ++i) {
      out[i] = 0;
      for (const auto& [j, n] : hp.dims) out[i] += n * hw.at(j + i);
    }
    return out;
  }
  const auto hc = hom_dg(p, w, lo - 1, hi + 1);
  const auto h = cohomology(hc.complex);
  std::map<int, std::size_t> out;
  for (int i = lo; i <= hi; ++i) out[i] = h.at(i);
  return out;
}

}  // namespace

DerivedHomTable derived_hom_dims(const DGModule& v, const DGModule& w, int lo, int hi, int depth,
                                 ResolveOptions options) {
  DerivedHomTable table;
  const auto deep = build_resolution(v, depth + 1, options);
  if (deep.short_circuit || v.dim() == 0 || w.dim() == 0) {
    table.short_circuit = deep.short_circuit;
    const auto dims = hom_cohomology(deep.short_circuit ? v : deep.total, w, lo, hi);
    for (const auto& [i, n] : dims) table.entries[i] = HomEntry{n, true, true};
    return table;
  }
  const auto rn = truncate(deep, v, depth);
  const auto dn = hom_cohomology(rn.total, w, lo, hi);
  const auto dn1 = hom_cohomology(deep.total, w, lo, hi);
  const int bound = *w.space().bottom() - *v.space().top() + depth - 1;
  for (int i = lo; i <= hi; ++i) {
    HomEntry e;
    e.dim = dn.at(i);
    e.in_structural_window = i <= bound;
    e.certified = e.in_structural_window && dn.at(i) == dn1.at(i);
    table.entries[i] = e;
  }
  return table;
}

KProjectiveReport kprojective_property_test(const DGModule& p, const std::vector<DGModule>& acyclic,
                                            std::size_t maps_per_target, std::uint64_t seed) {
  KProjectiveReport report;
  report.by_construction = p.kprojective_by_construction();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (std::size_t t = 0; t < acyclic.size(); ++t) {
    const auto& x = acyclic[t];
    if (!is_acyclic(x.carrier()))
      throw StructuralError("kprojective_property_test: corpus member " + std::to_string(t) + " is not acyclic");
    const ALinearHom h0(p, x, 0);
    const Matrix basis = chain_map_space(p, x, h0);
    for (std::size_t m = 0; m < maps_per_target; ++m) {
      Matrix c(basis.cols(), 1);
      for (std::size_t k = 0; k < c.rows(); ++k) c(k, 0) = coef(rng);
      const Matrix f = h0.to_matrix(basis * c);
      ++report.maps_tested;
      if (!f.is_zero()) ++report.nonzero_maps;
      if (!module_homotopy_solve(p, x, f)) {
        report.all_null_homotopic = false;
        report.failures.push_back("target " + std::to_string(t) + ", map " + std::to_string(m));
      }
    }
  }
  return report;
}

// ---- equivalence ----------------------------------------------------------

namespace {

struct Replacement {
  std::vector<DGModule> totals;  // depth n, n+1 (one entry when short-circuited)
  ResolutionCertificate cert;
};

Replacement replace(const DGModule& v, int depth) {
  Replacement r;
  r.cert = certify_resolution(v, depth);
  if (r.cert.resolution.short_circuit || r.cert.window.all) {
    r.totals = {r.cert.resolution.total};
  } else {
    r.totals = {r.cert.resolution.total, build_resolution(v, depth + 1).total};
  }
  return r;
}

}  // namespace

EquivalenceReport verify_equivalence(const DGAlgebraMorphism& eps, const std::vector<DGModule>& vs,
                                     const std::vector<DGModule>& ws, int depth, int hom_lo, int hom_hi) {
  if (!eps.quasi_iso) throw StructuralError("verify_equivalence: eps is not a quasi-isomorphism");
  if (!eps.source->nonpositive() || !eps.target->nonpositive())
    throw StructuralError("verify_equivalence: algebras must be nonpositively graded");
  EquivalenceReport report;
  std::vector<Replacement> reps;
  std::vector<std::vector<TensorChange>> pushed;
  for (std::size_t n = 0; n < vs.size(); ++n) {
    const auto& v = vs[n];
    reps.push_back(replace(v, depth));
    const auto& rep = reps.back();
    const std::string name = "V" + std::to_string(n);
    if (!rep.cert.quasi_iso_in_window) {
      report.augmentation_quasi_iso = false;
      report.notes.push_back(name + ": augmentation not a quasi-isomorphism in the certified window");
    }
    std::vector<TensorChange> tcs;
    std::vector<QuasiIsoReport> qs;
    for (const auto& p : rep.totals) {
      tcs.push_back(tensor_change(eps, p));
      const Matrix phi = tensor_unit(eps, p, tcs.back());
      validate_module_map(p, restrict_scalars(eps, tcs.back().module), phi);
      qs.push_back(is_quasi_iso(p.carrier(), tcs.back().module.carrier(), phi));
    }
    if (qs.size() == 1) {
      if (!qs[0].quasi_iso) {
        report.unit_quasi_iso = false;
        report.notes.push_back(name + ": unit P -> For(P (x) E) is not a quasi-isomorphism");
      }
    } else if (!rep.cert.window.empty) {
      for (int k = rep.cert.window.lo; k <= rep.cert.window.hi; ++k) {
        const auto a = comparison_at(qs[0], k), b = comparison_at(qs[1], k);
        const bool stable = a.source_dim == b.source_dim && a.target_dim == b.target_dim && a.rank == b.rank;
        if (stable && !a.iso()) {
          report.unit_quasi_iso = false;
          report.notes.push_back(name + ": unit fails in degree " + std::to_string(k));
        }
      }
    }
    pushed.push_back(std::move(tcs));
  }
  for (std::size_t n = 0; n < ws.size(); ++n) {
    const auto gw = restrict_scalars(eps, ws[n]);
    const auto fgw = tensor_change(eps, gw);
    const Matrix composite = tensor_counit(eps, ws[n], fgw) * tensor_unit(eps, gw, fgw);
    if (!(composite == Matrix::identity(ws[n].dim()))) {
      report.counit_identity = false;
      report.notes.push_back("W" + std::to_string(n) + ": For(Psi_W) Phi_ForW is not the identity");
    }
  }
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = 0; b < vs.size(); ++b) {
      const auto lhs = derived_hom_dims(vs[a], vs[b], hom_lo, hom_hi, depth);
      // Target side: Hom over E between the pushed-forward replacements at depth n and n+1.
      std::vector<std::map<int, std::size_t>> rhs;
      const std::size_t runs = std::max(pushed[a].size(), pushed[b].size());
      for (std::size_t r = 0; r < runs; ++r) {
        const auto& src = pushed[a][std::min(r, pushed[a].size() - 1)].module;
        const auto& tgt = pushed[b][std::min(r, pushed[b].size() - 1)].module;
        rhs.push_back(hom_cohomology(src, tgt, hom_lo, hom_hi));
      }
      for (int i = hom_lo; i <= hom_hi; ++i) {
        const auto& e = lhs.entries.at(i);
        const bool rhs_stable = rhs.size() == 1 || rhs[0].at(i) == rhs[1].at(i);
        if (!e.certified || !rhs_stable) continue;
        ++report.hom_entries_compared;
        if (e.dim != rhs[0].at(i)) {
          report.hom_tables_agree = false;
          report.notes.push_back("Hom(V" + std::to_string(a) + ", V" + std::to_string(b) + ")[" + std::to_string(i) +
                                 "]: " + std::to_string(e.dim) + " over the source, " + std::to_string(rhs[0].at(i)) +
                                 " over the target");
        }
      }
    }
  return report;
}

}  // namespace dgw
