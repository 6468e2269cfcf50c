#pragma once

#include <map>
#include <string>
#include <vector>

#include "dgw/complex.hpp"
#include "dgw/rational.hpp"

namespace dgw {

using Word = std::vector<std::size_t>;
/// Element of U(g): words in the basis letters with rational coefficients.
using UElement = std::map<Word, Rational>;

/// Lie algebra on basis X_1..X_n (the k-part) followed by Y_1..Y_m (the
/// p-part), truncated at degree N.
struct PBWContext {
  std::vector<std::string> names;
  std::size_t k_dim = 0;
  std::vector<Weight> weights;  // one per basis letter
  /// [a, b] for a < b, as (letter, coefficient) terms.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, Rational>>> brackets;
  std::size_t degree_bound = 4;

  std::size_t dim() const { return names.size(); }
  /// [a, b] as a coefficient vector over the basis.
  std::vector<Rational> bracket(std::size_t a, std::size_t b) const;
  Weight weight_of(const Word& w) const;
};

/// Antisymmetry is built in; checks Jacobi, weight homogeneity of brackets
/// and K-stability of the p-part.
void validate_pbw(const PBWContext& ctx);

PBWContext sl2_context(std::size_t degree_bound = 4);

enum class RewriteOrder { leftmost, rightmost };

/// Rewrites ab = ba + [a, b] at a descent until every word is nondecreasing.
UElement pbw_normal_form(const PBWContext& ctx, const UElement& x, RewriteOrder order = RewriteOrder::leftmost);
UElement pbw_normal_form(const PBWContext& ctx, const Word& w, RewriteOrder order = RewriteOrder::leftmost);

/// (1/k!) sum over orderings of a monomial in the p-letters, in normal form.
UElement symmetrize(const PBWContext& ctx, const Word& w);

UElement multiply(const UElement& a, const UElement& b);
std::string format_element(const PBWContext& ctx, const UElement& x);

struct PBWReport {
  std::size_t degree_bound = 0;
  std::size_t candidates = 0;
  std::size_t rank = 0;
  std::size_t expected = 0;  // ordered monomials of degree <= N
  bool weights_ok = true;
  std::string witness;
  bool ok() const { return rank == expected && candidates == expected && weights_ok; }
};

/// {X^i sigma(Y^j)} of total degree <= N is a basis of U(g)_{<=N}, and each
/// sigma(Y^j) is weight-homogeneous of weight sum(Y^j).
PBWReport pbw_basis_check(const PBWContext& ctx, std::size_t degree_bound);

/// Nondecreasing words in letters [first, last) of length <= n, by length then lexicographically.
std::vector<Word> ordered_monomials(std::size_t first, std::size_t last, std::size_t n);

}  // namespace dgw
