#pragma once

#include <random>
#include <string>
#include <vector>

#include "dgw/dg.hpp"
#include "dgw/equivariant.hpp"
#include "dgw/pbw.hpp"

namespace dgw {

// ---- standard instances ---------------------------------------------------

/// The ground field as a DG algebra (one basis vector in degree 0). Shared.
AlgebraPtr ground_field();
/// Basis x (-1), 1 (0), y (0); dx = y, all products of x and y vanish.
AlgebraPtr delta_algebra();
/// Basis x (-1), 1 (0); x^2 = 0, d = 0.
AlgebraPtr lambda_algebra();
/// Upper triangular 2x2 matrices on the basis 1, e12, e22, with the
/// anti-involution e22 -> 1 - e22 fixing e12.
AlgebraPtr upper_triangular_algebra();

/// Augmentation onto the ground field through the coefficient of the unit.
DGAlgebraMorphism augmentation(const AlgebraPtr& a);
/// Unit map from the ground field.
DGAlgebraMorphism unit_inclusion(const AlgebraPtr& a);

/// Module with the same carrier and every basis permuted so degrees ascend
/// (stable within a degree).
DGModule sort_by_degree(const DGModule& m);
Complex sort_by_degree(const Complex& c);
/// perm[i] = old index of new basis vector i.
std::vector<std::size_t> degree_permutation(const GradedSpace& g);
DGModule permute(const DGModule& m, const std::vector<std::size_t>& perm);

/// Ground field module of an algebra, through the augmentation.
DGModule trivial_point(const AlgebraPtr& a);
/// Delta / (y): basis x, 1 with zero differential.
DGModule delta_mod_y();

struct NamedModule {
  std::string name;
  DGModule module;
};
/// Ten Delta-modules: trivial, shifts, regular, quotient, sums, cones.
std::vector<NamedModule> delta_modules();
std::vector<NamedModule> lambda_modules();
std::vector<NamedModule> upper_triangular_modules();

struct NamedComplex {
  std::string name;
  Complex complex;
};
/// Hand-built complexes plus seeded random ones with dense differentials.
std::vector<NamedComplex> complex_corpus();

struct NamedEquivariant {
  std::string name;
  EquivariantComplex complex;
};
/// Torus rank 1 with i = 1 on a 2-dim carrier: d i + i d = nu(H).
EquivariantComplex koszul_rank1();
/// koszul_rank1 plus a strong weight-0 line, so c_H has two eigenvalues.
EquivariantComplex koszul_rank1_split();
std::vector<NamedEquivariant> equivariant_corpus();

/// k[t]/(t^2 - 1) with t of weight 1 for the group of order 2.
FreeFactor group_algebra_z2();
/// Two-dimensional Z/2 complex on which the generators 1, t act.
EquivariantComplex z2_regular_x();

PBWContext abelian_context(std::size_t dim, std::size_t k_dim, std::size_t degree_bound = 4);

// ---- random instances -----------------------------------------------------

namespace gen {

using Rng = std::mt19937_64;

Rational small(Rng& rng, int bound = 3);
/// Unit lower times unit upper triangular with small entries.
Matrix random_invertible(Rng& rng, std::size_t n);
/// d of rank ranks[k] from degree lo+k to lo+k+1 and cohomology betti[k] in
/// degree lo+k, conjugated by a random invertible matrix in every degree.
Complex split_complex(Rng& rng, int lo, const std::vector<std::size_t>& ranks, const std::vector<std::size_t>& betti);
/// Random complex on degrees [lo, lo + width) with dims <= max_dim per degree,
/// built from a split complex by a random change of basis in every degree.
Complex random_complex(Rng& rng, int lo, int width, std::size_t max_dim, bool acyclic = false);
/// Basis of all chain maps V -> W.
std::vector<Matrix> chain_map_basis(const Complex& v, const Complex& w);
Matrix random_chain_map(Rng& rng, const Complex& v, const Complex& w);
Matrix random_graded(Rng& rng, const GradedSpace& src, const GradedSpace& dst, int degree);

}  // namespace gen

}  // namespace dgw
