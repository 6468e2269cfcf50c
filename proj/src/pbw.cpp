#include "dgw/pbw.hpp"

#include <algorithm>
#include <numeric>

#include "dgw/errors.hpp"
#include "dgw/linalg.hpp"

namespace dgw {

namespace {

void add_term(UElement& x, const Word& w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = x.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) x.erase(it);
  }
}

std::vector<Rational> bracket_vec(const PBWContext& ctx, const std::vector<Rational>& u, const std::vector<Rational>& v) {
  std::vector<Rational> out(ctx.dim());
  for (std::size_t a = 0; a < ctx.dim(); ++a)
    for (std::size_t b = 0; b < ctx.dim(); ++b)
      if (sgn(u[a]) != 0 && sgn(v[b]) != 0) {
        const auto br = ctx.bracket(a, b);
        for (std::size_t c = 0; c < ctx.dim(); ++c) out[c] += u[a] * v[b] * br[c];
      }
  return out;
}

std::vector<Rational> unit_vec(std::size_t n, std::size_t i) {
  std::vector<Rational> v(n);
  v[i] = 1;
  return v;
}

Weight sum_weights(const Weight& a, const Weight& b) {
  Weight w(a.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = a[j] + b[j];
  return w;
}

}  // namespace

std::vector<Rational> PBWContext::bracket(std::size_t a, std::size_t b) const {
  std::vector<Rational> out(dim());
  if (a == b) return out;
  const auto key = std::minmax(a, b);
  const auto it = brackets.find({key.first, key.second});
  if (it == brackets.end()) return out;
  for (const auto& [c, coeff] : it->second) out[c] += a < b ? coeff : Rational(-coeff);
  return out;
}

Weight PBWContext::weight_of(const Word& w) const {
  Weight out(weights.empty() ? 0 : weights.front().size(), 0);
  for (auto a : w) out = sum_weights(out, weights[a]);
  return out;
}

void validate_pbw(const PBWContext& ctx) {
  const std::size_t n = ctx.dim();
  if (ctx.k_dim > n) throw StructuralError("pbw context: k-part larger than the algebra");
  if (ctx.weights.size() != n) throw StructuralError("pbw context: one weight per basis letter is needed");
  for (const auto& w : ctx.weights)
    if (w.size() != ctx.weights.front().size()) throw StructuralError("pbw context: weights of different ranks");
  for (const auto& [key, terms] : ctx.brackets) {
    if (key.first >= key.second || key.second >= n)
      throw StructuralError("pbw context: brackets are listed for index pairs a < b");
    for (const auto& [c, coeff] : terms) {
      if (c >= n) throw StructuralError("pbw context: bracket term out of range");
      if (sgn(coeff) != 0 && ctx.weights[c] != sum_weights(ctx.weights[key.first], ctx.weights[key.second]))
        throw ValidationError("bracket is not weight-homogeneous",
                              "[" + ctx.names[key.first] + ", " + ctx.names[key.second] + "]");
      if (sgn(coeff) != 0 && key.first < ctx.k_dim && key.second >= ctx.k_dim && c < ctx.k_dim)
        throw ValidationError("p-part is not stable under k",
                              "[" + ctx.names[key.first] + ", " + ctx.names[key.second] + "]");
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        const auto ea = unit_vec(n, a), eb = unit_vec(n, b), ec = unit_vec(n, c);
        const auto t1 = bracket_vec(ctx, ea, bracket_vec(ctx, eb, ec));
        const auto t2 = bracket_vec(ctx, eb, bracket_vec(ctx, ec, ea));
        const auto t3 = bracket_vec(ctx, ec, bracket_vec(ctx, ea, eb));
        for (std::size_t k = 0; k < n; ++k)
          if (sgn(t1[k] + t2[k] + t3[k]) != 0)
            throw ValidationError("Jacobi identity fails", ctx.names[a] + ", " + ctx.names[b] + ", " + ctx.names[c]);
      }
}

PBWContext sl2_context(std::size_t degree_bound) {
  PBWContext ctx;
  ctx.names = {"H", "E", "F"};
  ctx.k_dim = 1;
  ctx.weights = {{0}, {2}, {-2}};
  ctx.brackets[{0, 1}] = {{1, Rational(2)}};
  ctx.brackets[{0, 2}] = {{2, Rational(-2)}};
  ctx.brackets[{1, 2}] = {{0, Rational(1)}};
  ctx.degree_bound = degree_bound;
  return ctx;
}

UElement pbw_normal_form(const PBWContext& ctx, const UElement& x, RewriteOrder order) {
  UElement pending = x, done;
  while (!pending.empty()) {
    // Longest words first keeps the worklist small; the result does not depend on it.
    auto it = std::prev(pending.end());
    const Word w = it->first;
    const Rational c = it->second;
    pending.erase(it);
    if (w.size() > ctx.degree_bound)
      throw StructuralError("pbw: word of degree " + std::to_string(w.size()) + " exceeds the bound " +
                            std::to_string(ctx.degree_bound));
    std::optional<std::size_t> descent;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] > w[i + 1]) {
        descent = i;
        if (order == RewriteOrder::leftmost) break;
      }
    if (!descent) {
      add_term(done, w, c);
      continue;
    }
    const std::size_t i = *descent;
    Word swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    add_term(pending, swapped, c);
    const auto br = ctx.bracket(w[i], w[i + 1]);
    for (std::size_t k = 0; k < br.size(); ++k)
      if (sgn(br[k]) != 0) {
        Word shorter(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        shorter.push_back(k);
        shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
        add_term(pending, shorter, c * br[k]);
      }
  }
  return done;
}

UElement pbw_normal_form(const PBWContext& ctx, const Word& w, RewriteOrder order) {
  return pbw_normal_form(ctx, UElement{{w, Rational(1)}}, order);
}

UElement symmetrize(const PBWContext& ctx, const Word& w) {
  for (auto a : w)
    if (a < ctx.k_dim || a >= ctx.dim())
      throw StructuralError("symmetrize: letter " + std::to_string(a) + " is not in the p-part");
  if (w.size() > ctx.degree_bound) throw StructuralError("symmetrize: monomial exceeds the degree bound");
  std::vector<std::size_t> perm(w.size());
  std::iota(perm.begin(), perm.end(), 0);
  UElement sum;
  std::size_t count = 0;
  do {
    Word v;
    for (auto p : perm) v.push_back(w[p]);
    add_term(sum, v, Rational(1));
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto& [word, c] : sum) c /= Rational(static_cast<long>(count));
  return pbw_normal_form(ctx, sum);
}

UElement multiply(const UElement& a, const UElement& b) {
  UElement out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      add_term(out, w, cu * cv);
    }
  return out;
}

std::string format_element(const PBWContext& ctx, const UElement& x) {
  if (x.empty()) return "0";
  // Higher degree first, then lexicographic.
  std::vector<std::pair<Word, Rational>> terms(x.begin(), x.end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& l, const auto& r) { return l.first.size() > r.first.size(); });
  std::string out;
  for (const auto& [w, c] : terms) {
    const bool neg = sgn(c) < 0;
    const Rational mag = neg ? Rational(-c) : c;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mono;
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      mono += ctx.names[w[i]];
      if (j - i > 1) mono += "^" + std::to_string(j - i);
      i = j;
    }
    if (mono.empty()) {
      out += format_rational(mag);
    } else {
      if (mag != 1) out += format_rational(mag) + "*";
      out += mono;
    }
  }
  return out;
}

std::vector<Word> ordered_monomials(std::size_t first, std::size_t last, std::size_t n) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (std::size_t a = w.empty() ? first : w.back(); a < last; ++a) {
        Word v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

PBWReport pbw_basis_check(const PBWContext& ctx, std::size_t degree_bound) {
  validate_pbw(ctx);
  PBWContext c = ctx;
  c.degree_bound = std::max(ctx.degree_bound, degree_bound);
  PBWReport r;
  r.degree_bound = degree_bound;
  const auto basis = ordered_monomials(0, c.dim(), degree_bound);
  r.expected = basis.size();
  std::map<Word, std::size_t> position;
  for (std::size_t i = 0; i < basis.size(); ++i) position[basis[i]] = i;

  std::vector<UElement> columns;
  const auto xs = ordered_monomials(0, c.k_dim, degree_bound);
  const auto ys = ordered_monomials(c.k_dim, c.dim(), degree_bound);
  for (const auto& y : ys) {
    const auto s = symmetrize(c, y);
    const Weight target = c.weight_of(y);
    for (const auto& [w, coeff] : s)
      if (r.weights_ok && c.weight_of(w) != target) {
        r.weights_ok = false;
        r.witness = "sigma(" + format_element(c, {{y, Rational(1)}}) + ") has a term of another weight";
      }
    for (const auto& x : xs)
      if (x.size() + y.size() <= degree_bound)
        columns.push_back(pbw_normal_form(c, multiply({{x, Rational(1)}}, s)));
  }
  r.candidates = columns.size();
  Matrix m(basis.size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [w, coeff] : columns[j]) {
      const auto it = position.find(w);
      if (it == position.end()) throw std::logic_error("pbw: normal form left the truncated basis");
      m(it->second, j) = coeff;
    }
  r.rank = rank(m);
  if (r.witness.empty() && !r.ok())
    r.witness = "rank " + std::to_string(r.rank) + " of " + std::to_string(r.candidates) + " candidates, expected " +
                std::to_string(r.expected);
  return r;
}

}  // namespace dgw
