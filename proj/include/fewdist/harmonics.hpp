#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "fewdist/matrix.hpp"
#include "fewdist/polynomial.hpp"

namespace fewdist {

/// Dimension of the space of degree-i harmonic polynomials in m variables:
/// C(m+i-1, i) - C(m+i-3, i-2), with the second term zero for i < 2.
inline BigInt harm_dim(int m, int i) {
  if (m < 2 || i < 0) throw RangeError("harm_dim requires m >= 2, i >= 0");
  return binomial(m + i - 1, i) - binomial(m + i - 3, i - 2);
}

/// lambda_k = k / (m + 2k - 2), the recurrence weight for S^{m-1}; the k = 0
/// case is 0 (the m = 2 denominator would otherwise read 0/0).
inline Rational gegenbauer_lambda(int m, int k) {
  if (k == 0) return Rational(0);
  return Rational(BigInt(k), BigInt(m + 2 * k - 2));
}

/// Gegenbauer polynomials G_0..G_K for the sphere S^{m-1}, normalized so that
/// G_k(1) = h_{k,m}. Defined by G_0 = 1, G_1 = m x and the three-term
/// recurrence x G_k = lambda_{k+1} G_{k+1} + (1 - lambda_{k-1}) G_{k-1}.
class GegenbauerBasis {
 public:
  GegenbauerBasis(int m, int max_degree) : m_(m), max_degree_(max_degree) {
    if (m < 2 || max_degree < 0)
      throw RangeError("gegenbauer basis requires m >= 2, K >= 0");
    polys_.reserve(static_cast<std::size_t>(max_degree) + 1);
    polys_.push_back(Poly{Rational(1)});
    if (max_degree >= 1) polys_.push_back(Poly{Rational(0), Rational(m)});
    for (int k = 1; k < max_degree; ++k) {
      // lambda_{k+1} > 0, so the division below is always defined.
      Poly next = poly_shift(polys_[std::size_t(k)]);
      next = poly_sub(next, poly_scale(Rational(1) - gegenbauer_lambda(m, k - 1),
                                       polys_[std::size_t(k) - 1]));
      next = poly_scale(gegenbauer_lambda(m, k + 1).reciprocal(), next);
      polys_.push_back(std::move(next));
    }
  }

  int m() const { return m_; }
  int max_degree() const { return max_degree_; }
  const Poly& poly(int k) const { return polys_[std::size_t(k)]; }
  const std::vector<Poly>& polys() const { return polys_; }

 private:
  int m_;
  int max_degree_;
  std::vector<Poly> polys_;
};

/// Shared, mutex-guarded cache keyed by (m, K). Returned references stay valid
/// for the process lifetime; the basis itself is immutable, so concurrent
/// readers are safe.
inline const GegenbauerBasis& gegenbauer_basis(int m, int max_degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<GegenbauerBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(m, std::max(max_degree, 1));
  auto it = cache.lower_bound(key);
  for (auto probe = it; probe != cache.end(); ++probe) {
    if (probe->first.first != m) break;
    if (probe->first.second >= max_degree) return *probe->second;
  }
  key.second = std::max(key.second, 8);  // build a little headroom at once
  auto basis = std::make_unique<GegenbauerBasis>(m, key.second);
  const GegenbauerBasis& ref = *basis;
  cache[key] = std::move(basis);
  return ref;
}

/// Expands a polynomial (coefficients in F, ascending degree) in the
/// Gegenbauer basis for S^{m-1} by back-substitution on the degree-triangular
/// basis. The reconstruction Sum f_k G_k is exact.
template <class F>
std::vector<F> expand_in_gegenbauer(std::vector<F> p, int m) {
  while (!p.empty() && p.back() == F()) p.pop_back();
  if (p.empty()) return {F()};
  const int deg = static_cast<int>(p.size()) - 1;
  const GegenbauerBasis& basis = gegenbauer_basis(m, deg);
  std::vector<F> coeffs(p.size(), F());
  for (int k = deg; k >= 0; --k) {
    const Poly& g = basis.poly(k);
    F f = p[std::size_t(k)] / F(g[std::size_t(k)]);
    coeffs[std::size_t(k)] = f;
    if (f == F()) continue;
    for (std::size_t j = 0; j < g.size(); ++j) p[j] = p[j] - f * F(g[j]);
  }
  return coeffs;
}

/// Coefficients c_{i,j}^k of G_i G_j = Sum_k c_{i,j}^k G_k. All are >= 0 and
/// c_{i,j}^0 = h_i delta_{i,j}; both facts are asserted here because a
/// violation would falsify the product expansion this project rests on.
inline std::vector<Rational> linearization(int m, int i, int j) {
  if (i < 0 || j < 0) throw RangeError("linearization needs i, j >= 0");
  const GegenbauerBasis& basis = gegenbauer_basis(m, i + j);
  std::vector<Rational> c =
      expand_in_gegenbauer(poly_mul(basis.poly(i), basis.poly(j)), m);
  c.resize(std::size_t(i + j) + 1);
  for (const Rational& v : c)
    if (v.sign() < 0)
      throw ConstructionInvariantViolated("negative linearization coefficient");
  Rational expected = i == j ? Rational(harm_dim(m, i)) : Rational(0);
  if (!(c[0] == expected))
    throw ConstructionInvariantViolated("c_{i,j}^0 != h_i delta_{i,j}");
  return c;
}

/// The annihilator polynomial of a value set A: the product of (t - a)/(1 - a)
/// over a in A, so F(1) = 1 and F vanishes on A. Values must be distinct and
/// distinct from 1.
template <class F>
std::vector<F> annihilator(const std::vector<F>& values) {
  if (values.empty()) throw RangeError("annihilator needs at least one value");
  std::vector<F> poly{F(1)};
  for (const F& a : values) {
    F denom = F(1) - a;
    if (denom == F()) throw DegenerateValue("annihilator value equals 1");
    std::vector<F> next(poly.size() + 1, F());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i] / denom;
      next[i] -= poly[i] * a / denom;
    }
    poly = std::move(next);
  }
  return poly;
}

}  // namespace fewdist
