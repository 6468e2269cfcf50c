#pragma once
// Small independent reference computations for tests. Nothing here calls the
// library's elimination code.

#include <map>
#include <vector>

#include "dgw/complex.hpp"

namespace oracle {

using dgw::Matrix;
using dgw::Rational;

// Plain Gaussian elimination on a copy, pivot = largest |entry| in the column
// (different pivoting from the library on purpose).
inline std::size_t rank(Matrix a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t best = a.rows();
    for (std::size_t i = r; i < a.rows(); ++i)
      if (sgn(a(i, c)) != 0 && (best == a.rows() || abs(a(i, c)) > abs(a(best, c)))) best = i;
    if (best == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(best, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (sgn(a(i, c)) == 0) continue;
      const Rational m = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= m * a(r, j);
    }
    ++r;
  }
  return r;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

// dim H^k = dim V^k - rank d^k - rank d^{k-1}, from per-degree blocks.
inline std::map<int, std::size_t> cohomology_dims(const dgw::Complex& c) {
  std::map<int, std::size_t> out;
  for (int k : c.space().support()) {
    const auto src = c.space().indices_of_degree(k);
    const auto dst = c.space().indices_of_degree(k + 1);
    const auto prev = c.space().indices_of_degree(k - 1);
    const std::size_t r_out = dst.empty() ? 0 : oracle::rank(c.d().select(dst, src));
    const std::size_t r_in = prev.empty() ? 0 : oracle::rank(c.d().select(src, prev));
    out[k] = src.size() - r_out - r_in;
  }
  return out;
}

inline std::size_t total(const std::map<int, std::size_t>& dims) {
  std::size_t s = 0;
  for (const auto& [k, n] : dims) s += n;
  return s;
}

}  // namespace oracle
