#pragma once

#include <cstddef>
#include <vector>

#include "fewdist/rational.hpp"

namespace fewdist {

// Polynomials are dense coefficient vectors in ascending degree. Degrees in
// this project stay tiny (<= ~12), so density and exact rationals are the
// simplest faithful representation.

using Poly = std::vector<Rational>;

inline Poly poly_trim(Poly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

inline int poly_degree(const Poly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (!p[i].is_zero()) return static_cast<int>(i);
  return -1;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  return poly_trim(std::move(r));
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  return poly_trim(std::move(r));
}

inline Poly poly_scale(const Rational& s, const Poly& p) {
  Poly r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = s * p[i];
  return poly_trim(std::move(r));
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return poly_trim(std::move(r));
}

/// Multiplies by x (degree shift).
inline Poly poly_shift(const Poly& p) {
  Poly r(p.size() + 1);
  for (std::size_t i = 0; i < p.size(); ++i) r[i + 1] = p[i];
  return r;
}

/// Exact Horner evaluation; rational coefficients promote into the scalar
/// field of x (e.g. Q(sqrt(d))) through implicit conversion.
template <class F>
F poly_eval(const Poly& p, const F& x) {
  F acc = F();
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + F(p[i]);
  return acc;
}

}  // namespace fewdist
