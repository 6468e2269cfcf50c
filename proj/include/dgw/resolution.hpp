#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgw/dg.hpp"

namespace dgw {

struct ConeHomotopy {
  Matrix h;              // (h1 h2): C_f -> Z, degree -1
  Matrix psi;            // phi1 - h2 T(f)
  bool psi_chain = false;  // psi is a chain map T(V) -> Z
};

/// Given f: V -> W, a chain map phi = (phi1 phi2): C_f -> Z, a homotopy h2
/// for phi2 and a homotopy h1 for phi1 - h2 T(f), returns h = (h1 h2) with
/// phi = h d + d h. Every precondition is checked; failures carry residuals.
ConeHomotopy extend_homotopy_over_cone(const Complex& v, const Complex& w, const Matrix& f, const Complex& z,
                                       const Matrix& phi, const Matrix& h2, const Matrix& h1);

/// Finite filtration by coordinate prefixes: F_i is spanned by the first
/// steps[i-1] basis vectors, and Gr_i by the following block, which is the
/// chosen graded splitting F_i = F_{i-1} (+) Gr_i.
struct FilteredDGModule {
  DGModule module;
  std::vector<std::size_t> steps;  // strictly increasing, last = dim
};

void validate_filtered(const FilteredDGModule& fv);

/// Homotopy oracle for one graded piece: a null-homotopy of g: Gr -> Z, if any.
using PieceWitness = std::function<std::optional<Matrix>(const Complex& gr, const Complex& z, const Matrix& g)>;

struct FilteredHomotopy {
  Matrix h;
  std::vector<Matrix> stages;  // h_i on F_i, i = 1..length
};

/// Inductive null-homotopy of f: V -> Z (Z acyclic). Each step identifies
/// F_{i+1} with the cone of the connecting map T^{-1} Gr_{i+1} -> F_i and
/// extends h_i with extend_homotopy_over_cone.
FilteredHomotopy filtered_null_homotopy(const FilteredDGModule& fv, const Complex& z, const Matrix& f,
                                        const PieceWitness& witness = {});

/// Depth n resolution: columns P_0, P_{-1}, ..., P_{-n}.
struct Resolution {
  int depth = 0;
  bool short_circuit = false;         // V was K-projective by construction; P = V
  std::vector<DGModule> columns;      // columns[j] = P_{-j}
  std::vector<Matrix> deltas;         // deltas[j]: P_{-j-1} -> P_{-j}
  std::vector<Matrix> covers;         // covers[j]: P_{-j} -> K_{j-1} (K_{-1} = V)
  std::vector<Submodule> kernels;     // kernels[j] = ker covers[j] inside P_{-j}
  DGModule total;
  Matrix augmentation;                // total -> V
};

struct ResolutionChecks {
  bool covers_surjective = true;
  bool cohomology_surjective = true;  // H(eps_j) onto for every step
  bool kernel_cohomology = true;      // dim H(K) = dim H(P) - dim H(M) per degree
  bool bounded_above = true;          // every column top <= top(V)
  std::string witness;
  bool ok() const { return covers_surjective && cohomology_surjective && kernel_cohomology && bounded_above; }
};

struct ResolveOptions {
  bool short_circuit = true;
};

Resolution build_resolution(const DGModule& v, int depth, ResolveOptions options = {});
/// The first `depth` + 1 columns of a deeper resolution, re-totalled.
Resolution truncate(const Resolution& r, const DGModule& v, int depth);
ResolutionChecks check_resolution(const Resolution& r, const DGModule& v);

/// Degree interval [lo, hi]; `all` means every degree.
struct Window {
  bool all = false;
  bool empty = false;
  int lo = 0;
  int hi = -1;
  bool contains(int k) const { return all || (!empty && lo <= k && k <= hi); }
};

struct DegreeCertificate {
  std::size_t dim_n = 0, dim_next = 0;
  std::size_t rank_n = 0, rank_next = 0;
  std::size_t target_dim = 0;
  bool certified = false;
  bool iso = false;
};

struct ResolutionCertificate {
  Resolution resolution;  // at the requested depth
  ResolutionChecks checks;
  Window structural;
  Window window;          // certified degrees: contiguous run down from the top
  std::map<int, DegreeCertificate> degrees;
  bool quasi_iso_in_window = false;
};

/// Builds depth n and n+1 and certifies degrees where both agree.
ResolutionCertificate certify_resolution(const DGModule& v, int depth, ResolveOptions options = {});

struct DerivedTensor {
  TensorChange result;                   // at depth n
  Window window;
  std::map<int, std::size_t> dims;       // H of the result, certified degrees only
  std::map<int, bool> certified;         // structural window degrees
};

DerivedTensor derived_tensor(const DGModule& v, const DGAlgebraMorphism& eps, int depth, ResolveOptions options = {});

struct HomEntry {
  std::size_t dim = 0;
  bool certified = false;
  bool in_structural_window = false;
};

struct DerivedHomTable {
  std::map<int, HomEntry> entries;
  bool short_circuit = false;
};

DerivedHomTable derived_hom_dims(const DGModule& v, const DGModule& w, int lo, int hi, int depth,
                                 ResolveOptions options = {});

struct KProjectiveReport {
  bool by_construction = false;
  bool all_null_homotopic = true;
  std::size_t maps_tested = 0;
  std::size_t nonzero_maps = 0;
  std::vector<std::string> failures;
};

/// Samples random A-linear chain maps P -> X for each acyclic X and checks that
/// each is null-homotopic through A-linear homotopies.
KProjectiveReport kprojective_property_test(const DGModule& p, const std::vector<DGModule>& acyclic,
                                            std::size_t maps_per_target, std::uint64_t seed);

struct EquivalenceReport {
  bool unit_quasi_iso = true;          // P -> For(P (x)_D E) in certified windows
  bool augmentation_quasi_iso = true;  // P -> V in certified windows
  bool counit_identity = true;         // For(Psi_W) Phi_{For W} = id
  bool hom_tables_agree = true;
  std::size_t hom_entries_compared = 0;
  std::vector<std::string> notes;
  bool ok() const { return unit_quasi_iso && augmentation_quasi_iso && counit_identity && hom_tables_agree; }
};

EquivalenceReport verify_equivalence(const DGAlgebraMorphism& eps, const std::vector<DGModule>& vs,
                                     const std::vector<DGModule>& ws, int depth, int hom_lo, int hom_hi);

}  // namespace dgw
