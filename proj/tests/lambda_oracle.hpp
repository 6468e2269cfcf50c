#pragma once
// Hand-built resolution of k over Lambda = k[x]/(x^2), |x| = -1, d = 0:
// generators g_0..g_n with |g_j| = -2j and d g_j = x g_{j-1}.

#include "dgw/dg.hpp"

namespace lambda_oracle {

using namespace dgw;

struct Periodic {
  DGModule module;
  Matrix augmentation;  // onto trivial_point(lambda)
};

// Basis order g_0, x g_0, g_1, x g_1, ...
inline Periodic periodic_resolution(const AlgebraPtr& lambda, std::size_t n) {
  const std::size_t dim = 2 * (n + 1);
  GradedSpace g;
  for (std::size_t j = 0; j <= n; ++j) {
    g.degrees.push_back(-2 * static_cast<int>(j));
    g.degrees.push_back(-2 * static_cast<int>(j) - 1);
  }
  Matrix d(dim, dim), x(dim, dim);
  for (std::size_t j = 0; j <= n; ++j) {
    x(2 * j + 1, 2 * j) = 1;
    if (j > 0) d(2 * j - 1, 2 * j) = 1;
  }
  auto m = DGModule::make(lambda, Complex::make(g, d), {x, Matrix::identity(dim)});
  Matrix eps(1, dim);
  eps(0, 0) = 1;
  return {m, eps};
}

// Hom(P, k) has zero differential and one class per generator.
inline std::size_t ext_dim(int i) { return i >= 0 && i % 2 == 0 ? 1 : 0; }
inline std::size_t tor_dim(int i) { return i <= 0 && i % 2 == 0 ? 1 : 0; }

}  // namespace lambda_oracle
