#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fewdist/bounds.hpp"
#include "fewdist/pointset.hpp"
#include "fewdist/relations.hpp"

namespace fewdist {

/// A verified symmetric association scheme: relation partition plus its
/// intersection numbers.
struct AssociationScheme {
  std::size_t n = 0;
  int s = 0;
  RelationMatrix relation;
  IntersectionNumbers inter;

  std::int64_t valency(int i) const { return inter.valency[std::size_t(i)]; }
};

/// Checks the four scheme axioms; axiom 4 (Bose-Mesner closure) is verified
/// exactly over every ordered pair.
inline AssociationScheme verify_scheme(RelationMatrix rel) {
  const std::size_t n = rel.n;
  const int s = rel.classes;
  if (n == 0 || s < 1) throw RangeError("scheme needs n >= 1 and s >= 1");
  std::vector<std::int64_t> class_size(std::size_t(s) + 1, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::uint16_t c = rel.at(x, y);
      if (c > s)
        throw NotAScheme(2, "relation index " + std::to_string(c) + " out of range");
      ++class_size[c];
      if ((x == y) != (c == 0))
        throw NotAScheme(1, "diagonal/identity mismatch at (" + std::to_string(x) +
                                "," + std::to_string(y) + ")");
      if (rel.at(x, y) != rel.at(y, x))
        throw NotAScheme(3, "relation not symmetric at (" + std::to_string(x) + "," +
                                std::to_string(y) + ")");
    }
  for (int c = 0; c <= s; ++c)
    if (class_size[std::size_t(c)] == 0)
      throw NotAScheme(2, "class " + std::to_string(c) + " is empty");
  SchemeWitness witness;
  std::optional<IntersectionNumbers> inter = intersection_numbers(rel, &witness);
  if (!inter) throw NotAScheme(witness.axiom, witness.detail);
  AssociationScheme scheme;
  scheme.n = n;
  scheme.s = s;
  scheme.relation = std::move(rel);
  scheme.inter = std::move(*inter);
  return scheme;
}

/// Distance classes of a configuration, with the scheme verification attempted
/// on top. Failure to close into a scheme is reported, not fatal: it is the
/// expected outcome when the strength is below 2s-2.
struct DistanceClasses {
  RelationMatrix relation;
  std::optional<AssociationScheme> scheme;
  std::optional<SchemeWitness> failure;
};

template <class F>
DistanceClasses from_distance_classes(const SphericalConfig<F>& cfg) {
  DistanceDistribution<F> dist = inner_product_set(cfg);
  DistanceClasses out;
  out.relation = distance_classes(cfg, dist);
  try {
    out.scheme = verify_scheme(out.relation);
  } catch (const NotAScheme& err) {
    out.failure = SchemeWitness{err.axiom, err.witness};
  }
  return out;
}

/// Primitive idempotents of the Bose-Mesner algebra, represented by their
/// coefficients in the adjacency basis: E_i = sum_l coeff(i,l) A_l. eigen(i,l)
/// is the eigenvalue of A_l on E_i (the first eigenmatrix, row per idempotent).
struct SpectralData {
  std::size_t n = 0;
  int s = 0;
  DenseMatrix<Rational> coeff;
  DenseMatrix<Rational> eigen;
  std::vector<std::int64_t> mult;
  std::shared_ptr<const AssociationScheme> scheme;

  /// Materializes E_i as an n x n rational matrix (subject to the exact cap).
  DenseMatrix<Rational> materialize(int i) const {
    if (n > exact_rank_cap())
      throw SizeLimitExceeded("materializing an idempotent of order " + std::to_string(n));
    DenseMatrix<Rational> e(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        e(x, y) = coeff(std::size_t(i), scheme->relation.at(x, y));
    return e;
  }
};

namespace detail {

/// det(xI - M) for a small rational matrix, by exact interpolation at
/// x = 0..k from Gaussian determinants.
inline Poly char_poly(const DenseMatrix<Rational>& m) {
  const std::size_t k = m.rows();
  std::vector<Rational> xs(k + 1), ys(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    DenseMatrix<Rational> shifted = m;
    for (std::size_t r = 0; r < k; ++r)
      shifted(r, r) = Rational(static_cast<long long>(i)) - m(r, r);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c)
        if (r != c) shifted(r, c) = -m(r, c);
    xs[i] = Rational(static_cast<long long>(i));
    ys[i] = determinant(shifted);
  }
  Poly p;
  for (std::size_t i = 0; i <= k; ++i) {
    Poly term{ys[i]};
    for (std::size_t j = 0; j <= k; ++j) {
      if (j == i) continue;
      term = poly_mul(term, poly_scale((xs[i] - xs[j]).reciprocal(),
                                       Poly{-xs[j], Rational(1)}));
    }
    p = poly_add(p, term);
  }
  return p;
}

/// Coordinates of the columns of `vectors` (t x c) in the column space of the
/// basis (t x k, full column rank): solves basis * X = vectors exactly.
inline DenseMatrix<Rational> coords_in_basis(const DenseMatrix<Rational>& basis,
                                             const DenseMatrix<Rational>& vectors) {
  const std::size_t t = basis.rows(), k = basis.cols(), c = vectors.cols();
  DenseMatrix<Rational> aug(t, k + c);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = basis(i, j);
    for (std::size_t j = 0; j < c; ++j) aug(i, k + j) = vectors(i, j);
  }
  std::vector<std::size_t> pivots = rref(aug);
  DenseMatrix<Rational> x(k, c);
  std::size_t row = 0;
  for (std::size_t p : pivots) {
    if (p >= k)
      throw ConstructionInvariantViolated("vector outside invariant subspace");
    for (std::size_t j = 0; j < c; ++j) x(p, j) = aug(row, k + j);
    ++row;
  }
  if (pivots.size() != k)
    throw ConstructionInvariantViolated("subspace basis is rank-deficient");
  return x;
}

}  // namespace detail

/// Exact simultaneous diagonalization of the Bose-Mesner algebra over Q.
///
/// Works entirely in the regular representation: the intersection matrices
/// B_i (with (B_i)_{kj} = p_{i,j}^k) act on the coefficient space, commute,
/// and share the idempotent coefficient vectors as common eigenbasis. Common
/// eigenspaces are refined sequentially by B_1..B_s; each restriction's
/// integer eigenvalues are found by scanning [-k_i, k_i] (eigenvalues of A_i
/// are algebraic integers bounded by the valency, so a rational eigenvalue is
/// an integer in that range). If a characteristic polynomial does not shed all
/// its roots this way the spectrum is irrational and the scheme is rejected
/// with the leftover factor degree.
inline SpectralData idempotents(AssociationScheme scheme_in) {
  auto scheme = std::make_shared<const AssociationScheme>(std::move(scheme_in));
  const int s = scheme->s;
  const std::size_t t = std::size_t(s) + 1;
  const std::size_t n = scheme->n;

  std::vector<DenseMatrix<Rational>> b(t, DenseMatrix<Rational>(t, t));
  for (int i = 0; i <= s; ++i)
    for (int k = 0; k <= s; ++k)
      for (int j = 0; j <= s; ++j)
        b[std::size_t(i)](std::size_t(k), std::size_t(j)) =
            Rational(scheme->inter.at(i, j, k));

  // Subspaces kept as basis matrices with basis vectors in columns (t x dim).
  std::vector<DenseMatrix<Rational>> spaces{DenseMatrix<Rational>::identity(t)};
  for (int i = 1; i <= s; ++i) {
    std::vector<DenseMatrix<Rational>> next;
    for (const DenseMatrix<Rational>& space : spaces) {
      const std::size_t dim = space.cols();
      if (dim == 1) {
        next.push_back(space);
        continue;
      }
      DenseMatrix<Rational> image = b[std::size_t(i)] * space;
      DenseMatrix<Rational> restricted = detail::coords_in_basis(space, image);
      Poly p = detail::char_poly(restricted);
      std::size_t found = 0;
      const std::int64_t bound = scheme->valency(i);
      for (std::int64_t theta = -bound; theta <= bound && found < dim; ++theta) {
        if (!poly_eval(p, Rational(theta)).is_zero()) continue;
        DenseMatrix<Rational> shifted = restricted;
        for (std::size_t r = 0; r < dim; ++r)
          shifted(r, r) = shifted(r, r) - Rational(theta);
        DenseMatrix<Rational> ns = null_space(shifted);  // rows: restricted coords
        if (ns.rows() == 0)
          throw ConstructionInvariantViolated("charpoly root without eigenvector");
        DenseMatrix<Rational> lifted = space * ns.transposed();
        next.push_back(std::move(lifted));
        found += ns.rows();
      }
      if (found < dim)
        throw NonRationalSpectrum({static_cast<int>(dim - found)});
    }
    spaces = std::move(next);
  }
  if (spaces.size() != t)
    throw NonRationalSpectrum({static_cast<int>(t - spaces.size() + 1)});

  // Normalize each common eigenvector v to the idempotent v / chi(v), where
  // v * v = chi(v) v in the algebra.
  auto multiply = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    std::vector<Rational> out(t);
    for (std::size_t l = 0; l < t; ++l) {
      if (x[l].is_zero()) continue;
      for (std::size_t j = 0; j < t; ++j) {
        if (y[j].is_zero()) continue;
        for (std::size_t k = 0; k < t; ++k)
          out[k] += x[l] * y[j] *
                    Rational(scheme->inter.at(static_cast<int>(l), static_cast<int>(j),
                                              static_cast<int>(k)));
      }
    }
    return out;
  };

  std::vector<std::vector<Rational>> idem;
  for (const DenseMatrix<Rational>& space : spaces) {
    std::vector<Rational> v(t);
    for (std::size_t r = 0; r < t; ++r) v[r] = space(r, 0);
    std::vector<Rational> w = multiply(v, v);
    std::size_t pivot = 0;
    while (pivot < t && v[pivot].is_zero()) ++pivot;
    Rational chi = w[pivot] / v[pivot];
    if (chi.is_zero())
      throw ConstructionInvariantViolated("nilpotent direction in a semisimple algebra");
    for (std::size_t l = 0; l < t; ++l) v[l] /= chi;
    idem.push_back(std::move(v));
  }

  // Canonical order: E_0 (all coefficients 1/n) first, the rest by ascending
  // multiplicity, ties broken by the eigenvalue row.
  Rational inv_n(BigInt(1), BigInt(n));
  auto eigen_row = [&](const std::vector<Rational>& e) {
    std::vector<Rational> row(t);
    for (std::size_t l = 0; l < t; ++l) {
      std::vector<Rational> w(t);
      // w = B_l e
      for (std::size_t k = 0; k < t; ++k)
        for (std::size_t j = 0; j < t; ++j)
          w[k] += Rational(scheme->inter.at(static_cast<int>(l), static_cast<int>(j),
                                            static_cast<int>(k))) *
                  e[j];
      std::size_t pivot = 0;
      while (pivot < t && e[pivot].is_zero()) ++pivot;
      Rational theta = w[pivot] / e[pivot];
      for (std::size_t k = 0; k < t; ++k)
        if (!(w[k] == theta * e[k]))
          throw ConstructionInvariantViolated("A_l does not act as a scalar on E_i");
      row[l] = std::move(theta);
    }
    return row;
  };

  struct Entry {
    std::vector<Rational> coeff;
    std::vector<Rational> eigen;
    std::int64_t mult;
  };
  std::vector<Entry> entries;
  std::size_t zero_index = t;
  for (std::size_t i = 0; i < idem.size(); ++i) {
    Entry e;
    e.coeff = idem[i];
    e.eigen = eigen_row(idem[i]);
    Rational m = Rational(BigInt(n)) * idem[i][0];
    if (!m.is_integer() || m.sign() <= 0)
      throw ConstructionInvariantViolated("idempotent trace is not a positive integer");
    e.mult = static_cast<std::int64_t>(m.numerator());
    bool all_inv_n = true;
    for (const Rational& c : idem[i])
      if (!(c == inv_n)) all_inv_n = false;
    if (all_inv_n) zero_index = i;
    entries.push_back(std::move(e));
  }
  if (zero_index == t)
    throw ConstructionInvariantViolated("no idempotent equals J/n");
  std::swap(entries[0], entries[zero_index]);
  std::sort(entries.begin() + 1, entries.end(), [](const Entry& a, const Entry& b) {
    if (a.mult != b.mult) return a.mult < b.mult;
    for (std::size_t l = 0; l < a.eigen.size(); ++l) {
      if (a.eigen[l] == b.eigen[l]) continue;
      return a.eigen[l] < b.eigen[l];
    }
    return false;
  });

  SpectralData data;
  data.n = n;
  data.s = s;
  data.coeff = DenseMatrix<Rational>(t, t);
  data.eigen = DenseMatrix<Rational>(t, t);
  for (std::size_t i = 0; i < t; ++i) {
    data.mult.push_back(entries[i].mult);
    for (std::size_t l = 0; l < t; ++l) {
      data.coeff(i, l) = entries[i].coeff[l];
      data.eigen(i, l) = entries[i].eigen[l];
    }
  }
  data.scheme = scheme;

  // Full verification against every A_j: idempotency, orthogonality,
  // completeness, and the multiplicity sum.
  std::int64_t mult_sum = 0;
  for (std::int64_t m : data.mult) mult_sum += m;
  if (mult_sum != static_cast<std::int64_t>(n))
    throw ConstructionInvariantViolated("multiplicities do not sum to n");
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      std::vector<Rational> x(t), y(t);
      for (std::size_t l = 0; l < t; ++l) {
        x[l] = data.coeff(i, l);
        y[l] = data.coeff(j, l);
      }
      std::vector<Rational> prod = multiply(x, y);
      for (std::size_t l = 0; l < t; ++l) {
        Rational expected = i == j ? x[l] : Rational(0);
        if (!(prod[l] == expected))
          throw ConstructionInvariantViolated("E_i E_j != delta_ij E_i");
      }
    }
  }
  for (std::size_t l = 0; l < t; ++l) {
    Rational sum;
    for (std::size_t i = 0; i < t; ++i) sum += data.coeff(i, l);
    if (!(sum == (l == 0 ? Rational(1) : Rational(0))))
      throw ConstructionInvariantViolated("sum of idempotents is not the identity");
  }
  return data;
}

/// Krein tensor via the exact trace formula q_{i,j}^k = n tr((E_i o E_j) E_k)
/// / m_k, evaluated in the adjacency basis: the A_l have disjoint supports, so
/// E_i o E_j has coefficients c_il c_jl and tr(A_l A_r) = n k_l delta_lr,
/// giving q_{i,j}^k = (n^2/m_k) sum_l k_l c_il c_jl c_kl.
struct KreinData {
  std::size_t n = 0;
  int s = 0;
  std::vector<Rational> q;  // (s+1)^3, [i][j][k]
  std::vector<std::int64_t> mult;

  const Rational& at(int i, int j, int k) const {
    const int t = s + 1;
    return q[std::size_t((i * t + j) * t + k)];
  }
};

inline KreinData krein(const SpectralData& spectral) {
  const int s = spectral.s;
  const std::size_t t = std::size_t(s) + 1;
  KreinData kd;
  kd.n = spectral.n;
  kd.s = s;
  kd.mult = spectral.mult;
  kd.q.assign(t * t * t, Rational(0));
  Rational n2(BigInt(spectral.n) * BigInt(spectral.n));
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i; j < t; ++j)
      for (std::size_t k = 0; k < t; ++k) {
        Rational sum;
        for (std::size_t l = 0; l < t; ++l)
          sum += Rational(spectral.scheme->valency(static_cast<int>(l))) *
                 spectral.coeff(i, l) * spectral.coeff(j, l) * spectral.coeff(k, l);
        Rational value = n2 * sum / Rational(spectral.mult[k]);
        if (value.sign() < 0)
          throw NegativeKrein("q_{" + std::to_string(i) + "," + std::to_string(j) +
                              "}^" + std::to_string(k) + " < 0");
        kd.q[(i * t + j) * t + k] = value;
        kd.q[(j * t + i) * t + k] = std::move(value);
      }
  // Structural identities of the trace formula, asserted as self-checks.
  for (int j = 0; j <= s; ++j)
    for (int k = 0; k <= s; ++k) {
      if (!(kd.at(0, j, k) == (j == k ? Rational(1) : Rational(0))))
        throw ConstructionInvariantViolated("q_{0,j}^k != delta_jk");
      if (!(kd.at(j, k, 0) == (j == k ? Rational(spectral.mult[std::size_t(j)])
                                      : Rational(0))))
        throw ConstructionInvariantViolated("q_{i,j}^0 != m_i delta_ij");
    }
  return kd;
}

/// A re-indexing of E_1..E_s; ordering[new] = old, ordering[0] = 0.
using Ordering = std::vector<int>;

/// All orderings making the Krein matrix B_1* irreducible tridiagonal with the
/// required sign pattern: q_{1,j}^{j+-1} > 0 and q_{1,j}^k = 0 for |k-j| >= 2.
inline std::vector<Ordering> q_polynomial_orderings(const KreinData& kd) {
  const int s = kd.s;
  std::vector<Ordering> found;
  Ordering perm(std::size_t(s) + 1);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int j = 0; j <= s && ok; ++j)
      for (int k = 0; k <= s && ok; ++k) {
        const Rational& v = kd.at(perm[1], perm[std::size_t(j)], perm[std::size_t(k)]);
        if (k == j + 1 || k == j - 1) {
          if (k <= s && !(v.sign() > 0)) ok = false;
        } else if (k != j) {
          if (!v.is_zero()) ok = false;
        }
      }
    if (ok) found.push_back(perm);
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return found;
}

/// The Q-polynomial structure under one ordering: Krein matrix, the a*/b*/c*
/// sequences, the index l, and the reordered multiplicities. The identities
/// a_i* + b_i* + c_i* = m and b_i* m_i = c_{i+1}* m_{i+1} are verified.
struct QPolyStructure {
  Ordering ordering;
  DenseMatrix<Rational> b1star;  // b1star(j, k) = q_{1,j}^k in the new order
  std::vector<Rational> astar, bstar, cstar;
  int l = 0;
  std::vector<std::int64_t> mult;  // reordered; mult[1] is the paper's m
};

inline QPolyStructure apply_ordering(const KreinData& kd, const Ordering& ordering) {
  const int s = kd.s;
  const std::size_t t = std::size_t(s) + 1;
  QPolyStructure qp;
  qp.ordering = ordering;
  qp.b1star = DenseMatrix<Rational>(t, t);
  for (int j = 0; j <= s; ++j)
    for (int k = 0; k <= s; ++k)
      qp.b1star(std::size_t(j), std::size_t(k)) =
          kd.at(ordering[1], ordering[std::size_t(j)], ordering[std::size_t(k)]);
  qp.mult.resize(t);
  for (std::size_t i = 0; i < t; ++i) qp.mult[i] = kd.mult[std::size_t(ordering[i])];
  qp.astar.resize(t);
  qp.bstar.assign(t, Rational(0));
  qp.cstar.assign(t, Rational(0));
  for (int i = 0; i <= s; ++i) {
    qp.astar[std::size_t(i)] = qp.b1star(std::size_t(i), std::size_t(i));
    if (i + 1 <= s) qp.bstar[std::size_t(i)] = qp.b1star(std::size_t(i + 1), std::size_t(i));
    if (i >= 1) qp.cstar[std::size_t(i)] = qp.b1star(std::size_t(i - 1), std::size_t(i));
  }
  Rational m(qp.mult[1]);
  if (!qp.astar[0].is_zero())
    throw ConstructionInvariantViolated("a_0* != 0");
  if (!(qp.cstar[1] == Rational(1)))
    throw ConstructionInvariantViolated("c_1* != 1");
  for (int i = 0; i <= s; ++i) {
    if (!(qp.astar[std::size_t(i)] + qp.bstar[std::size_t(i)] + qp.cstar[std::size_t(i)] == m))
      throw ConstructionInvariantViolated("a_i* + b_i* + c_i* != m at i=" + std::to_string(i));
    if (i < s) {
      if (!(qp.bstar[std::size_t(i)] * Rational(qp.mult[std::size_t(i)]) ==
            qp.cstar[std::size_t(i + 1)] * Rational(qp.mult[std::size_t(i + 1)])))
        throw ConstructionInvariantViolated("b_i* m_i != c_{i+1}* m_{i+1} at i=" +
                                            std::to_string(i));
    }
  }
  qp.l = 0;
  while (qp.l < s && qp.astar[std::size_t(qp.l + 1)].is_zero()) ++qp.l;
  return qp;
}

/// First valid ordering (lexicographically smallest permutation), or throws.
inline QPolyStructure q_polynomial_structure(const KreinData& kd) {
  std::vector<Ordering> orderings = q_polynomial_orderings(kd);
  if (orderings.empty())
    throw NotQPolynomial("no idempotent ordering makes B_1* tridiagonal");
  return apply_ordering(kd, orderings.front());
}

/// The index l = max{k : a_0* = ... = a_k* = 0} for the first valid ordering.
inline int l_index(const KreinData& kd) { return q_polynomial_structure(kd).l; }

/// Krein-side t-design test: a_i* = 0 for i <= floor((t-1)/2) and
/// c_j* = m j / (m + 2j - 2) for j <= ceil((t-1)/2).
inline bool sho_design_check(const QPolyStructure& qp, int t) {
  if (t < 1) throw RangeError("sho_design_check needs t >= 1");
  const int s = static_cast<int>(qp.astar.size()) - 1;
  const int a_limit = (t - 1) / 2;
  const int c_limit = t / 2;  // ceil((t-1)/2)
  if (a_limit > s || c_limit > s) return false;
  for (int i = 0; i <= a_limit; ++i)
    if (!qp.astar[std::size_t(i)].is_zero()) return false;
  Rational m(qp.mult[1]);
  for (int j = 1; j <= c_limit; ++j) {
    Rational expected = m * Rational(j) / (m + Rational(2 * j - 2));
    if (!(qp.cstar[std::size_t(j)] == expected)) return false;
  }
  return true;
}

/// The spherical embedding via E_1 of the chosen ordering, Gram-first: the
/// Gram matrix is (n/m_1) E_1, whose entries take one value per relation
/// class. No factor U is ever computed.
struct EmbeddingInfo {
  std::size_t n = 0;
  int m1 = 0;
  std::vector<Rational> class_values;  // value per relation class 1..s
  DistanceDistribution<Rational> dist;
  std::optional<SphericalConfig<Rational>> config;  // materialized iff n <= cap
};

inline EmbeddingInfo embedding_gram(const SpectralData& spectral, int idempotent = 1) {
  const int s = spectral.s;
  EmbeddingInfo info;
  info.n = spectral.n;
  std::int64_t m1 = spectral.mult[std::size_t(idempotent)];
  info.m1 = static_cast<int>(m1);
  Rational scale = Rational(BigInt(spectral.n)) / Rational(m1);
  if (!(scale * spectral.coeff(std::size_t(idempotent), 0) == Rational(1)))
    throw NonConstantDiagonal("(n/m_1) E_1 does not have unit diagonal");
  for (int l = 1; l <= s; ++l)
    info.class_values.push_back(scale * spectral.coeff(std::size_t(idempotent), std::size_t(l)));

  bool values_distinct = true;
  for (std::size_t a = 0; a < info.class_values.size(); ++a) {
    if (info.class_values[a] == Rational(1)) values_distinct = false;
    for (std::size_t b = a + 1; b < info.class_values.size(); ++b)
      if (info.class_values[a] == info.class_values[b]) values_distinct = false;
  }
  if (!values_distinct) {
    // Colliding values may still give distinct rows; decide exactly when the
    // size cap allows, otherwise refuse.
    if (spectral.n > exact_rank_cap())
      throw RepeatedRows("embedding values collide; faithfulness undecided at this size");
    const RelationMatrix& rel = spectral.scheme->relation;
    for (std::size_t x = 0; x < spectral.n; ++x)
      for (std::size_t y = x + 1; y < spectral.n; ++y) {
        bool same = true;
        for (std::size_t z = 0; z < spectral.n && same; ++z) {
          Rational vx = rel.at(x, z) == 0 ? Rational(1)
                                          : info.class_values[rel.at(x, z) - 1];
          Rational vy = rel.at(y, z) == 0 ? Rational(1)
                                          : info.class_values[rel.at(y, z) - 1];
          same = vx == vy;
        }
        if (same) throw RepeatedRows("embedding rows " + std::to_string(x) + " and " +
                                     std::to_string(y) + " coincide");
      }
  }

  // Distance distribution directly from class counts (merging equal values).
  std::vector<std::pair<Rational, std::int64_t>> pairs;
  for (int l = 1; l <= s; ++l)
    pairs.emplace_back(info.class_values[std::size_t(l - 1)],
                       static_cast<std::int64_t>(spectral.n) * spectral.scheme->valency(l));
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [value, count] : pairs) {
    if (!info.dist.values.empty() && info.dist.values.back() == value)
      info.dist.counts.back() += count;
    else {
      info.dist.values.push_back(value);
      info.dist.counts.push_back(count);
    }
  }

  if (spectral.n <= exact_rank_cap()) {
    DenseMatrix<Rational> gram(spectral.n, spectral.n);
    const RelationMatrix& rel = spectral.scheme->relation;
    for (std::size_t x = 0; x < spectral.n; ++x)
      for (std::size_t y = 0; y < spectral.n; ++y)
        gram(x, y) = rel.at(x, y) == 0 ? Rational(1)
                                       : info.class_values[rel.at(x, y) - 1];
    info.config = config_from_gram(std::move(gram), info.m1, FieldTag::rational());
  }
  return info;
}

/// Lemma S3 audit: rank(E_1^{o h}) <= C(m_1 + h - 1, h) for Hadamard powers,
/// and when equality holds at h it must hold at every j <= h.
struct HadamardRankReport {
  std::vector<std::size_t> ranks;   // j = 0..h
  std::vector<BigInt> bounds;       // C(m_1 + j - 1, j)
  std::vector<bool> equality;
  bool bound_ok = true;
  bool downward_ok = true;
};

inline HadamardRankReport hadamard_rank_check(const SpectralData& spectral, int h,
                                              int idempotent = 1) {
  if (h < 0) throw RangeError("hadamard_rank_check needs h >= 0");
  DenseMatrix<Rational> e = spectral.materialize(idempotent);
  const std::int64_t m1 = spectral.mult[std::size_t(idempotent)];
  HadamardRankReport report;
  DenseMatrix<Rational> power(spectral.n, spectral.n, Rational(1));  // E^{o 0} = J
  for (int j = 0; j <= h; ++j) {
    if (j > 0)
      for (std::size_t x = 0; x < spectral.n; ++x)
        for (std::size_t y = 0; y < spectral.n; ++y) power(x, y) *= e(x, y);
    std::size_t rank = rank_exact(power);
    BigInt bound = binomial(m1 + j - 1, j);
    report.ranks.push_back(rank);
    report.bounds.push_back(bound);
    report.equality.push_back(BigInt(rank) == bound);
    if (BigInt(rank) > bound) report.bound_ok = false;
  }
  for (int j = 0; j <= h; ++j)
    if (report.equality[std::size_t(j)])
      for (int k = 0; k < j; ++k)
        if (!report.equality[std::size_t(k)]) report.downward_ok = false;
  return report;
}

/// Theorem S0 audit: case split on l, the bound, attainment, the equality-case
/// multiplicity formulas, and the closing design claim.
struct S0Report {
  int case_tag = 0;
  int l = 0;
  int m1 = 0;
  BigInt bound;
  std::optional<BigInt> h_sum;
  bool attained = false;
  std::vector<BigInt> predicted_mult;  // meaningful when attained
  bool mult_match = false;
  int design_t = 0;     // the design strength the equality case implies
  bool design_ok = false;
};

inline S0Report s0_audit(const QPolyStructure& qp, const SpectralData& spectral) {
  const int s = spectral.s;
  const int m = static_cast<int>(qp.mult[1]);
  S0Report report;
  report.l = qp.l;
  report.m1 = m;
  S0Bound bound = s0_bound(m, s, qp.l);
  report.case_tag = bound.case_tag;
  report.bound = bound.value;
  report.h_sum = bound.h_sum;
  report.attained = BigInt(spectral.n) == bound.value;
  if (report.attained) {
    report.predicted_mult.assign(std::size_t(s) + 1, BigInt(0));
    report.predicted_mult[0] = 1;
    report.predicted_mult[1] = m;
    if (report.case_tag == 1) {
      for (int i = 0; i <= s - 1; ++i) report.predicted_mult[std::size_t(i)] = harm_dim(m, i);
      report.predicted_mult[std::size_t(s)] =
          binomial(m + s - 2, s - 1) - binomial(m + s - 3, s - 2);
    } else {
      for (int i = 2; i <= std::min(qp.l + 1, s); ++i)
        report.predicted_mult[std::size_t(i)] = harm_dim(m, i);
      int middle_hi = report.case_tag == 2 ? s : std::min(2 * qp.l + 2, s);
      for (int i = qp.l + 2; i <= middle_hi; ++i) {
        BigInt total = 0;
        for (int k = 0; k <= i - qp.l - 2; ++k)
          total += harm_dim(m, i - 2 * k) - harm_dim(m, i - 2 * k - 1);
        report.predicted_mult[std::size_t(i)] = total;
      }
      if (report.case_tag == 3)
        for (int i = 2 * qp.l + 3; i <= s; ++i)
          report.predicted_mult[std::size_t(i)] =
              binomial(m + i - 1, i) - binomial(m + i - 2, i - 1);
    }
    report.mult_match = true;
    for (int i = 0; i <= s; ++i)
      if (report.predicted_mult[std::size_t(i)] != BigInt(qp.mult[std::size_t(i)]))
        report.mult_match = false;
    report.design_t = report.case_tag == 1 ? 2 * s - 1 : 2 * qp.l + 2;
    report.design_ok = sho_design_check(qp, report.design_t);
  }
  return report;
}

}  // namespace fewdist
