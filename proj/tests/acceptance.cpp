// Acceptance suite: one line per criterion, exact arithmetic throughout.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "cli_harness.hpp"
#include "dgw/equivariant.hpp"
#include "dgw/errors.hpp"
#include "dgw/instances.hpp"
#include "dgw/pbw.hpp"
#include "dgw/resolution.hpp"
#include "dgw/workspace.hpp"
#include "lambda_oracle.hpp"
#include "mutation.hpp"

using namespace dgw;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<std::size_t> first_n(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ",") + x;
  return out;
}

// ---- 1. axiom suite --------------------------------------------------------

Outcome axioms(const std::string& corpus) {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(corpus))
    if (e.path().extension() == ".json") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  const std::vector<std::string> categories{"complexes", "dg_algebras", "dg_modules", "equivariant_complexes"};
  std::map<std::string, std::size_t> rejected, symmetric;
  std::set<std::string> seen, algebras;
  std::vector<std::string> problems, immune;
  for (const auto& f : files) {
    std::ifstream in(f);
    const json j = json::parse(in);
    try {
      load_workspace(j);
    } catch (const std::exception& e) {
      problems.push_back(f + ": " + e.what());
      continue;
    }
    for (const auto& c : categories) {
      if (!j.contains(c)) continue;
      for (const auto& [name, block] : j.at(c).items()) {
        if (!seen.insert(c + "/" + name + "/" + block.dump()).second) continue;
        const auto o = mutation::first_rejected_flip(j, c, name);
        if (o.path && !o.message.empty()) {
          ++rejected[c];
          if (c == "dg_algebras") algebras.insert(name);
        } else {
          ++symmetric[c];
          immune.push_back(name);
        }
      }
    }
  }
  const bool counts = rejected["complexes"] >= 20 && rejected["dg_algebras"] >= 3 && rejected["dg_modules"] >= 10 &&
                      rejected["equivariant_complexes"] >= 5 && algebras.count("delta") && algebras.count("lambda");
  std::ostringstream s;
  s << "valid files " << files.size() - problems.size() << "/" << files.size() << "; flip-rejected complexes "
    << rejected["complexes"] << ", algebras " << rejected["dg_algebras"] << ", modules " << rejected["dg_modules"]
    << ", equivariant " << rejected["equivariant_complexes"] << "; sign-symmetric (no flip rejectable) "
    << immune.size();
  if (!problems.empty()) s << "; " << problems.front();
  return {problems.empty() && counts, s.str()};
}

// ---- 2. cone homotopies ----------------------------------------------------

Outcome cone_homotopies() {
  gen::Rng rng(2024);
  std::size_t ok = 0, identity = 0, n = 0, nonzero = 0;
  while (n < 120) {
    const int wv = 1 + static_cast<int>(rng() % 4), ww = 1 + static_cast<int>(rng() % 4);
    const auto v = gen::random_complex(rng, -2 + static_cast<int>(rng() % 2), wv, 1 + rng() % 4);
    const auto w = gen::random_complex(rng, -2 + static_cast<int>(rng() % 2), ww, 1 + rng() % 4);
    const auto z = gen::random_complex(rng, -3, 5, 1 + rng() % 4, true);
    const Matrix f = gen::random_chain_map(rng, v, w);
    const auto c = cone(v, w, f).cone;
    const Matrix phi = gen::random_chain_map(rng, c, z);
    const Matrix phi1 = phi.select_cols(first_n(v.dim()));
    Matrix phi2(z.dim(), w.dim());
    for (std::size_t j = 0; j < w.dim(); ++j) phi2.set_col(j, phi.col(v.dim() + j));
    const auto h2 = homotopy_solve(w, z, phi2);
    const Complex tv = shift(v);
    const auto h1 = h2 ? homotopy_solve(tv, z, phi1 - *h2 * f) : std::nullopt;
    ++n;
    if (!phi.is_zero()) ++nonzero;
    if (!h1) continue;
    const auto out = extend_homotopy_over_cone(v, w, f, z, phi, *h2, *h1);
    if (out.psi_chain && z.d() * out.psi == out.psi * tv.d()) ++identity;
    if (out.h * c.d() + z.d() * out.h == phi) ++ok;
  }
  std::ostringstream s;
  s << "instances " << n << " (" << nonzero << " with phi != 0); phi = hd + dh exact " << ok << "/" << n
    << "; chain-map identity " << identity << "/" << n;
  return {ok == n && identity == n && n >= 100, s.str()};
}

// ---- 3. filtered null-homotopies --------------------------------------------

FilteredDGModule degree_filtration(const Complex& c, gen::Rng& rng) {
  std::vector<std::size_t> perm, steps;
  const auto support = c.space().support();
  for (auto it = support.rbegin(); it != support.rend(); ++it) {
    for (auto i : c.space().indices_of_degree(*it)) perm.push_back(i);
    // Merging adjacent degrees keeps each prefix d-stable.
    if (std::next(it) == support.rend() || rng() % 3 != 0) steps.push_back(perm.size());
  }
  return {permute(trivial_module(ground_field(), c), perm), steps};
}

Outcome filtered_homotopies() {
  gen::Rng rng(77);
  std::size_t n = 0, ok = 0, restrict_ok = 0, witnesses = 0, longest = 0;
  while (n < 60) {
    const std::size_t width = 2 + rng() % 3;
    std::vector<std::size_t> ranks(width - 1), betti(width);
    for (auto& r : ranks) r = 1 + rng() % 2;
    for (auto& b : betti) b = rng() % 2;
    const auto c = gen::split_complex(rng, -1, ranks, betti);
    if (c.dim() > 8) continue;
    const auto fv = degree_filtration(c, rng);
    const auto z = gen::random_complex(rng, -2, 5, 3, true);
    const Matrix f = gen::random_chain_map(rng, fv.module.carrier(), z);
    ++n;
    longest = std::max(longest, fv.steps.size());
    // Per-piece witnesses exist: every chain map Gr_i -> Z is null-homotopic.
    bool pieces = true;
    std::size_t prev = 0;
    for (auto s : fv.steps) {
      std::vector<std::size_t> idx;
      GradedSpace g;
      for (std::size_t i = prev; i < s; ++i) {
        idx.push_back(i);
        g.degrees.push_back(fv.module.space().degrees[i]);
      }
      const Complex gr = Complex::make(g, fv.module.d().select(idx, idx));
      for (const auto& m : gen::chain_map_basis(gr, z)) pieces = pieces && homotopy_solve(gr, z, m).has_value();
      prev = s;
    }
    if (pieces) ++witnesses;
    const auto h = filtered_null_homotopy(fv, z, f);
    if (z.d() * h.h + h.h * fv.module.d() == f) ++ok;
    bool compatible = h.stages.size() == fv.steps.size() && h.stages.back() == h.h;
    for (std::size_t i = 0; compatible && i + 1 < h.stages.size(); ++i)
      compatible = h.stages[i] == h.stages[i + 1].select_cols(first_n(fv.steps[i]));
    if (compatible) ++restrict_ok;
  }
  std::ostringstream s;
  s << "modules " << n << " (filtration length <= " << longest << "); witnesses exist " << witnesses
    << "; equation exact " << ok << "/" << n << "; stages compatible " << restrict_ok << "/" << n;
  return {n >= 50 && longest <= 4 && ok == witnesses && ok == n && restrict_ok == n, s.str()};
}

// ---- 4. resolutions over Delta ---------------------------------------------

Outcome delta_resolutions() {
  const auto k = trivial_point(delta_algebra());
  const int top = *k.space().top();
  bool ok = true;
  int previous = 1;
  std::ostringstream s;
  for (int depth : {3, 4, 5}) {
    const auto cert = certify_resolution(k, depth);
    bool bounded = true;
    for (const auto& col : cert.resolution.columns) bounded = bounded && (col.dim() == 0 || *col.space().top() <= top);
    bool exact = true;
    for (const auto& [deg, dc] : cert.degrees)
      if (cert.window.contains(deg)) exact = exact && dc.certified && dc.iso;
    const bool grows = !cert.window.empty && cert.window.lo < previous;
    previous = cert.window.empty ? previous : cert.window.lo;
    ok = ok && cert.checks.ok() && cert.quasi_iso_in_window && bounded && exact && grows;
    s << (depth == 3 ? "" : "; ") << "depth " << depth << " window [" << cert.window.lo << "," << cert.window.hi
      << "]" << (exact && cert.quasi_iso_in_window ? " quasi-iso" : " NOT quasi-iso") << (bounded ? "" : " unbounded");
  }
  return {ok, s.str()};
}

// ---- 5. equivalence ---------------------------------------------------------

Outcome equivalence() {
  std::vector<DGModule> vs;
  for (const auto& [n, m] : delta_modules())
    if (n == "delta_k" || n == "delta_k_shift_up" || n == "delta_mod_y" || n == "delta_k_sum" ||
        n == "delta_regular" || n == "delta_cone_augmentation")
      vs.push_back(m);
  const auto k = ground_field();
  const std::vector<DGModule> ws{trivial_point(k), trivial_module(k, complex_corpus()[3].complex),
                                 trivial_module(k, complex_corpus()[6].complex)};
  const auto rep = verify_equivalence(augmentation(delta_algebra()), vs, ws, 3, -1, 1);
  std::ostringstream s;
  s << "modules " << vs.size() << ", targets " << ws.size() << "; unit quasi-iso " << rep.unit_quasi_iso
    << ", counit identity " << rep.counit_identity << ", hom entries compared " << rep.hom_entries_compared
    << (rep.hom_tables_agree ? " (agree)" : " (DISAGREE)");
  if (!rep.notes.empty()) s << "; " << rep.notes.front();
  return {rep.ok() && vs.size() >= 5 && rep.hom_entries_compared > 0, s.str()};
}

// ---- 6. Lambda derived Hom ---------------------------------------------------

Outcome lambda_hom() {
  const auto lambda = lambda_algebra();
  const auto k = trivial_point(lambda);
  const auto table = derived_hom_dims(k, k, 0, 5, 8);
  // Independent check: the periodic resolution has Hom(P, k) with zero differential.
  const auto p = lambda_oracle::periodic_resolution(lambda, 6);
  const auto hom = hom_dg(p.module, k);
  bool oracle = true, all_one = true, all_certified = true;
  std::string dims;
  for (int i = 0; i <= 5; ++i) {
    const auto& e = table.entries.at(i);
    all_certified = all_certified && e.certified;
    all_one = all_one && e.dim == 1;
    oracle = oracle && e.dim == lambda_oracle::ext_dim(i) && cohomology(hom.complex).at(i) == lambda_oracle::ext_dim(i);
    dims += (i ? "," : "") + std::to_string(e.dim);
  }
  std::ostringstream s;
  s << "dims on [0,5] = " << dims << (all_certified ? " (all certified at depth 8/9)" : " (uncertified entries)")
    << "; periodic-resolution oracle " << (oracle ? "agrees" : "DISAGREES")
    << "; criterion expects 1 in every degree, which needs |x| = 0 (see ledger)";
  return {all_one && all_certified && oracle, s.str()};
}

// ---- 7. PBW -----------------------------------------------------------------

Outcome pbw() {
  const auto ctx = sl2_context(4);
  const UElement expected{{Word{1, 2}, Rational(1)}, {Word{0}, Rational(-1, 2)}};
  const bool sigma = symmetrize(ctx, Word{1, 2}) == expected;
  const auto rep = pbw_basis_check(ctx, 4);
  std::size_t monomials = 0, preserved = 0;
  for (const auto& w : ordered_monomials(ctx.k_dim, ctx.dim(), 4)) {
    ++monomials;
    bool same = true;
    for (const auto& [u, c] : symmetrize(ctx, w)) same = same && ctx.weight_of(u) == ctx.weight_of(w);
    if (same) ++preserved;
  }
  std::ostringstream s;
  s << "sigma(EF) = " << format_element(ctx, symmetrize(ctx, Word{1, 2})) << "; N=4 rank " << rep.rank << " of "
    << rep.expected << " ordered monomials; weight-preserving " << preserved << "/" << monomials;
  return {sigma && rep.ok() && rep.expected == 35 && preserved == monomials, s.str()};
}

// ---- 8. adjunctions -----------------------------------------------------------

EquivariantComplex named_equivariant(const std::string& name) {
  for (const auto& [n, v] : equivariant_corpus())
    if (n == name) return v;
  throw std::logic_error("no equivariant complex " + name);
}

Outcome adjunctions() {
  std::size_t checks = 0, ok = 0;
  auto count = [&](bool b) {
    ++checks;
    if (b) ++ok;
  };
  const auto k = ground_field();
  const auto eps = augmentation(delta_algebra());
  const std::vector<DGModule> targets{trivial_point(k), trivial_module(k, complex_corpus()[3].complex)};
  for (const auto& [name, m] : delta_modules())
    for (const auto& y : targets) {
      count(triangle_identity_check(extension_adjunction(eps, m, y)).ok());
      count(triangle_identity_check(tensor_adjunction(eps, m, y)).ok());
    }
  std::size_t ind2 = 0, ind3 = 0;
  for (const auto& [name, x] : equivariant_corpus()) {
    if (!x.group.is_finite()) continue;
    for (std::size_t c : {1u, 2u, 3u, 5u}) {
      const auto adj = ind_adjunction(x, complex_corpus()[c].complex);
      count(triangle_identity_check(adj.data).ok() && adj.equivariant_maps == adj.plain_maps);
      (x.group.order() == 2 ? ind2 : ind3)++;
    }
  }
  const auto p = group_algebra_z2();
  const auto x = z2_regular_x();
  std::size_t pro = 0;
  for (const auto& [name, v] : equivariant_corpus())
    if (v.group.is_finite() && v.group.order() == 2) {
      count(triangle_identity_check(pro_adjunction(p, x, v)).ok());
      ++pro;
    }
  // Preservation: ind_w and pro_free keep acyclicity and short exact sequences.
  std::size_t preserved = 0, tried = 0;
  for (const auto& [name, c] : complex_corpus()) {
    ++tried;
    if (is_acyclic(ind_w(GroupData::finite({3}), c).carrier) == is_acyclic(c)) ++preserved;
  }
  for (const auto& [name, v] : equivariant_corpus())
    if (v.group.is_finite() && v.group.order() == 2) {
      ++tried;
      if (is_acyclic(pro_free(p, v).carrier) == is_acyclic(v.carrier)) ++preserved;
    }
  const auto a = named_equivariant("z2_acyclic"), c = named_equivariant("z2_sign_cancel");
  EquivariantComplex b = a;
  b.carrier = direct_sum(a.carrier, c.carrier);
  Matrix f(b.dim(), a.dim()), g(c.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) f(i, i) = 1;
  for (std::size_t i = 0; i < c.dim(); ++i) g(i, a.dim() + i) = 1;
  ++tried;
  if (pro_exactness(p, a, b, c, f, g).exact) ++preserved;
  std::ostringstream s;
  s << "triangle identities " << ok << "/" << checks << " (ind_w |K|=2: " << ind2 << ", |K|=3: " << ind3
    << ", pro_free dim P=2: " << pro << "); preservation " << preserved << "/" << tried;
  return {ok == checks && ind2 > 0 && ind3 > 0 && pro > 0 && preserved == tried, s.str()};
}

// ---- 9. K-projectivity of resolutions ----------------------------------------

std::vector<DGModule> acyclic_corpus(const AlgebraPtr& a, const std::vector<DGModule>& seeds, std::uint64_t seed) {
  std::vector<DGModule> out;
  gen::Rng rng(seed);
  for (int i = 0; out.size() < 6; ++i) {
    const auto c = gen::random_complex(rng, -2 + i % 2, 2 + i % 3, 1 + static_cast<std::size_t>(i % 2), true);
    if (c.dim() > 0) out.push_back(free_module(a, c));
  }
  for (const auto& m : seeds) {
    if (m.dim() == 0) continue;
    if (is_acyclic(m.carrier())) out.push_back(m);
    const auto id = Matrix::identity(m.dim());
    out.push_back(cone(m, m, id));
    out.push_back(shift(cone(m, m, id), -1));
  }
  const auto reg = regular_module(a);
  if (is_acyclic(reg.carrier())) out.push_back(reg);
  out.push_back(cone(reg, reg, Matrix::identity(reg.dim())));
  out.push_back(direct_sum(out[0], out[1]));
  return out;
}

Outcome kprojective() {
  std::size_t totals = 0, passed = 0, maps = 0, min_corpus = 1000;
  std::vector<std::string> failures;
  // Equivariant resolutions, through the forgetful functor.
  for (const auto& [name, v] : equivariant_corpus()) {
    if (v.group.lie_dim() == 0) continue;
    const auto r = equivariant_resolution(v, 2);
    const auto fr = forgetful_to_dg(r.total);
    std::vector<DGModule> seeds{forgetful_module(v, fr.minimal_polynomials, fr.algebra)};
    for (const auto& [other, w] : equivariant_corpus()) {
      if (w.group.lie_dim() != v.group.lie_dim() || !is_acyclic(w.carrier)) continue;
      try {
        seeds.push_back(forgetful_module(w, fr.minimal_polynomials, fr.algebra));
      } catch (const std::exception&) {
      }
    }
    const auto acyclic = acyclic_corpus(fr.algebra, seeds, totals + 1);
    min_corpus = std::min(min_corpus, acyclic.size());
    const auto rep = kprojective_property_test(fr.module, acyclic, 5, 11 + totals);
    ++totals;
    maps += rep.maps_tested;
    if (rep.all_null_homotopic) ++passed;
    else failures.push_back(name);
  }
  // Resolutions over Delta.
  const auto delta = delta_algebra();
  std::vector<DGModule> seeds, dacyclic;
  for (const auto& [n, m] : delta_modules()) {
    if (is_acyclic(m.carrier())) dacyclic.push_back(m);
    if (n == "delta_k" || n == "delta_mod_y") seeds.push_back(m);
  }
  for (const auto& m : acyclic_corpus(delta, seeds, 99)) dacyclic.push_back(m);
  min_corpus = std::min(min_corpus, dacyclic.size());
  for (const auto& [n, m] : delta_modules()) {
    const auto res = build_resolution(m, 2);
    const auto rep = kprojective_property_test(res.total, dacyclic, 5, 500 + totals);
    ++totals;
    maps += rep.maps_tested;
    if (rep.all_null_homotopic) ++passed;
    else failures.push_back(n);
  }
  std::ostringstream s;
  s << "resolution totals " << passed << "/" << totals << " K-projective; acyclic corpora >= " << min_corpus
    << " modules, 5 maps each, " << maps << " maps tested";
  if (!failures.empty()) s << "; failing: " << join(failures);
  return {passed == totals && min_corpus >= 10, s.str()};
}

// ---- 10. CLI ------------------------------------------------------------------

Outcome cli_contract(const std::string& binary, const std::string& source) {
  const std::string fixtures = source + "/tests/cli";
  std::size_t ok = 0, n = 0, stable = 0, runs = 0;
  std::vector<std::string> wrong;
  for (const auto& c : cli::matrix(fixtures, source + "/corpus")) {
    ++n;
    const auto a = cli::run(binary, c.args);
    if (a.status == c.expected) ++ok;
    else wrong.push_back(c.label + " -> " + std::to_string(a.status));
    if (c.args.empty() || c.args[0] == "suite") continue;
    ++runs;
    if (cli::run(binary, c.args).out == a.out && !a.out.empty()) ++stable;
  }
  ++runs;
  const auto s1 = cli::run(binary, {"suite", fixtures, "--format", "json"});
  if (s1.out == cli::run(binary, {"suite", fixtures, "--format", "json"}).out) ++stable;
  std::ostringstream s;
  s << "exit codes " << ok << "/" << n << "; byte-identical reports " << stable << "/" << runs;
  if (!wrong.empty()) s << "; wrong: " << join(wrong);
  return {ok == n && stable == runs, s.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dgw acceptance suite"};
  std::string source = DGW_SOURCE_DIR, binary = DGW_BINARY;
  std::vector<int> known, only;
  app.add_option("--source", source, "Repository root (corpus/ and tests/cli/)");
  app.add_option("--dgw", binary, "dgw executable");
  app.add_option("--known-failures", known, "Criteria whose failure is documented; exit 0 iff exactly these fail");
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    int id;
    double limit;  // seconds, 0 = none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, 5, [&] { return axioms(source + "/corpus"); }},
      {2, 10, cone_homotopies},
      {3, 10, filtered_homotopies},
      {4, 20, delta_resolutions},
      {5, 30, equivalence},
      {6, 20, lambda_hom},
      {7, 5, pbw},
      {8, 5, adjunctions},
      {9, 15, kprojective},
      {10, 0, [&] { return cli_contract(binary, source); }},
  };
  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit == 0 || secs < c.limit;
    const bool pass = o.pass && in_time;
    if (!pass) failed.insert(c.id);
    std::ostringstream t;
    t << std::fixed << std::setprecision(2) << secs << "s";
    if (c.limit > 0) t << " < " << c.limit << "s";
    std::cout << "criterion " << std::setw(2) << c.id << ": " << (pass ? "PASS" : "FAIL") << "  [" << t.str()
              << (in_time ? "" : " EXCEEDED") << "]  " << o.detail << std::endl;
  }
  std::set<int> expected(known.begin(), known.end());
  if (!only.empty()) {
    std::set<int> sel(only.begin(), only.end());
    std::erase_if(expected, [&](int id) { return !sel.count(id); });
  }
  std::cout << "failed: " << failed.size();
  if (!known.empty()) std::cout << (failed == expected ? " (exactly the documented set)" : " (differs from the documented set)");
  std::cout << std::endl;
  return known.empty() ? (failed.empty() ? 0 : 1) : (failed == expected ? 0 : 1);
}
