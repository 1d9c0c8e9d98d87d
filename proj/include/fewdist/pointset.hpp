#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "fewdist/harmonics.hpp"
#include "fewdist/matrix.hpp"
#include "fewdist/quadext.hpp"
#include "fewdist/relations.hpp"

namespace fewdist {

/// A finite set on S^{m-1}, represented primarily by its exact Gram matrix.
/// Coordinates are kept only when they reproduce the Gram exactly (unit norm).
template <class F>
struct SphericalConfig {
  std::size_t n = 0;
  int m = 0;
  FieldTag field;
  DenseMatrix<F> gram;
  std::optional<DenseMatrix<F>> coords;
};

namespace detail {

inline void check_field_tag(const DenseMatrix<Rational>&, FieldTag tag) {
  if (tag.kind != FieldTag::Kind::rational)
    throw FieldMismatch("rational entries under a quadratic field tag");
}

inline void check_field_tag(const DenseMatrix<QuadExt>& m, FieldTag tag) {
  // A rational tag is fine as long as no entry actually uses sqrt(d).
  const std::int64_t want = tag.kind == FieldTag::Kind::quadratic ? tag.d : 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).sqrt_part().is_zero()) continue;
      if (m(i, j).d() != want)
        throw FieldMismatch("entry in Q(sqrt(" + std::to_string(m(i, j).d()) +
                            ")) does not match the declared field tag");
    }
}

template <class F>
void check_gram_invariants(const DenseMatrix<F>& gram, int m, bool psd_check) {
  const std::size_t n = gram.rows();
  if (n == 0 || gram.cols() != n) throw NotSymmetric("gram matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    if (!(gram(i, i) == F(1)))
      throw NonUnitNorm("diagonal entry " + std::to_string(i) + " is not 1");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(gram(i, j) == gram(j, i)))
        throw NotSymmetric("entries (" + std::to_string(i) + "," + std::to_string(j) +
                           ") and transpose differ");
      F v = gram(i, j);
      if (sign_of(F(1) - v) < 0 || sign_of(v + F(1)) < 0)
        throw NotPositiveSemidefinite("inner product exceeds 1 in absolute value");
    }
  if (psd_check && n <= exact_rank_cap()) {
    std::optional<std::size_t> r = psd_rank(gram);
    if (!r) throw NotPositiveSemidefinite("gram matrix is not positive semidefinite");
    if (*r > std::size_t(m))
      throw NotPositiveSemidefinite("gram rank " + std::to_string(*r) +
                                    " exceeds ambient dimension " + std::to_string(m));
  }
}

}  // namespace detail

template <class F>
SphericalConfig<F> config_from_gram(DenseMatrix<F> gram, int m, FieldTag field,
                                    bool psd_check = true) {
  if (m < 1) throw RangeError("ambient dimension must be >= 1");
  detail::check_field_tag(gram, field);
  detail::check_gram_invariants(gram, m, psd_check);
  SphericalConfig<F> cfg;
  cfg.n = gram.rows();
  cfg.m = m;
  cfg.field = field;
  cfg.gram = std::move(gram);
  return cfg;
}

/// Builds a configuration from coordinate rows. Rows must share one exact
/// squared norm N; the Gram is divided by N, and the coordinates are retained
/// only in the already-unit case N = 1.
template <class F>
SphericalConfig<F> config_from_coords(const DenseMatrix<F>& coords, FieldTag field,
                                      bool psd_check = true) {
  const std::size_t n = coords.rows();
  if (n == 0) throw RangeError("empty coordinate matrix");
  detail::check_field_tag(coords, field);
  DenseMatrix<F> gram(n, n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = i; j < n; ++j) {
        F dot = F();
        for (std::size_t c = 0; c < coords.cols(); ++c)
          dot += coords(i, c) * coords(j, c);
        gram(i, j) = dot;
        gram(j, i) = std::move(dot);
      }
  });
  const F norm = gram(0, 0);
  if (norm == F()) throw NonUnitNorm("zero vector in coordinate matrix");
  for (std::size_t i = 0; i < n; ++i)
    if (!(gram(i, i) == norm))
      throw NonUnitNorm("coordinate rows do not share one squared norm");
  if (!(norm == F(1))) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gram(i, j) = gram(i, j) / norm;
  }
  SphericalConfig<F> cfg =
      config_from_gram(std::move(gram), static_cast<int>(coords.cols()), field, psd_check);
  if (norm == F(1)) cfg.coords = coords;
  return cfg;
}

/// A(X) with exact ordered-pair counts, values sorted ascending.
template <class F>
struct DistanceDistribution {
  std::vector<F> values;
  std::vector<std::int64_t> counts;
  int s() const { return static_cast<int>(values.size()); }
};

template <class F>
DistanceDistribution<F> inner_product_set(const SphericalConfig<F>& cfg) {
  if (cfg.n < 2) throw RangeError("inner_product_set needs at least two points");
  DistanceDistribution<F> dist;
  for (std::size_t i = 0; i < cfg.n; ++i)
    for (std::size_t j = i + 1; j < cfg.n; ++j) {
      const F& v = cfg.gram(i, j);
      auto it = std::lower_bound(dist.values.begin(), dist.values.end(), v);
      if (it != dist.values.end() && *it == v) {
        dist.counts[std::size_t(it - dist.values.begin())] += 2;
      } else {
        dist.counts.insert(dist.counts.begin() + (it - dist.values.begin()), 2);
        dist.values.insert(it, v);
      }
    }
  return dist;
}

/// Gegenbauer moment S_i = n G_i(1) + Sum_a n_a G_i(a), computed from the
/// distance distribution; equals the double sum over X x X by the addition
/// formula. Always >= 0 for a genuine spherical set, which is asserted.
template <class F>
F design_moment(const DistanceDistribution<F>& dist, std::size_t n, int m, int degree) {
  const GegenbauerBasis& basis = gegenbauer_basis(m, degree);
  const Poly& g = basis.poly(degree);
  F total = F(Rational(BigInt(n))) * poly_eval(g, F(1));
  for (std::size_t a = 0; a < dist.values.size(); ++a)
    total += F(Rational(dist.counts[a])) * poly_eval(g, dist.values[a]);
  if (sign_of(total) < 0)
    throw NotPositiveSemidefinite("negative Gegenbauer moment S_" + std::to_string(degree) +
                                  ": input is not a spherical configuration");
  return total;
}

template <class F>
F design_moment(const SphericalConfig<F>& cfg, int degree) {
  return design_moment(inner_product_set(cfg), cfg.n, cfg.m, degree);
}

template <class F>
struct DesignProfile {
  std::vector<F> moments;  // S_1 .. S_{last computed}
  int strength = 0;
  int t_max = 0;
};

/// Largest t <= t_max with S_1 = ... = S_t = 0. The default ceiling is
/// 2s + 1, which always exhibits the nonzero witness moment since t <= 2s.
template <class F>
DesignProfile<F> design_strength(const DistanceDistribution<F>& dist, std::size_t n, int m,
                                 int t_max = 0) {
  if (t_max <= 0) t_max = 2 * dist.s() + 1;
  DesignProfile<F> profile;
  profile.t_max = t_max;
  for (int i = 1; i <= t_max; ++i) {
    profile.moments.push_back(design_moment(dist, n, m, i));
    if (!(profile.moments.back() == F())) break;
  }
  profile.strength = static_cast<int>(profile.moments.size());
  if (!profile.moments.empty() && !(profile.moments.back() == F())) --profile.strength;
  return profile;
}

template <class F>
DesignProfile<F> design_strength(const SphericalConfig<F>& cfg, int t_max = 0) {
  return design_strength(inner_product_set(cfg), cfg.n, cfg.m, t_max);
}

/// D_i = (G_i applied entrywise to the Gram matrix); positive semidefinite
/// with trace n h_i and entry sum S_i.
template <class F>
DenseMatrix<F> d_matrix(const SphericalConfig<F>& cfg, int degree) {
  const GegenbauerBasis& basis = gegenbauer_basis(cfg.m, degree);
  const Poly& g = basis.poly(degree);
  DistanceDistribution<F> dist = inner_product_set(cfg);
  // Palette evaluation: one polynomial evaluation per distinct value.
  std::vector<F> pal(dist.values.size());
  for (std::size_t a = 0; a < pal.size(); ++a) pal[a] = poly_eval(g, dist.values[a]);
  F diag = poly_eval(g, F(1));
  DenseMatrix<F> d(cfg.n, cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    d(i, i) = diag;
    for (std::size_t j = i + 1; j < cfg.n; ++j) {
      auto it = std::lower_bound(dist.values.begin(), dist.values.end(), cfg.gram(i, j));
      d(i, j) = pal[std::size_t(it - dist.values.begin())];
      d(j, i) = d(i, j);
    }
  }
  return d;
}

/// Exact rank with the size cap applied (FEWDIST_RANK_CAP / --allow-large-exact).
template <class F>
std::size_t rank_exact(const DenseMatrix<F>& m) {
  if (m.rows() > exact_rank_cap() || m.cols() > exact_rank_cap())
    throw SizeLimitExceeded("matrix size " + std::to_string(m.rows()) +
                            " exceeds the exact-rank cap " +
                            std::to_string(exact_rank_cap().load()));
  return bareiss_rank(m);
}

/// Classifies every ordered pair by its inner product: class 0 is the
/// diagonal, classes 1..s follow the ascending order of A(X).
template <class F>
RelationMatrix distance_classes(const SphericalConfig<F>& cfg,
                                const DistanceDistribution<F>& dist) {
  RelationMatrix rel(cfg.n, dist.s());
  parallel_for(cfg.n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < cfg.n; ++j) {
        if (i == j) continue;
        auto it = std::lower_bound(dist.values.begin(), dist.values.end(), cfg.gram(i, j));
        rel.at(i, j) = static_cast<std::uint16_t>(1 + (it - dist.values.begin()));
      }
  });
  return rel;
}

/// Evaluates a polynomial given by coefficients in F (ascending degree).
template <class F>
F poly_eval_field(const std::vector<F>& p, const F& x) {
  F acc = F();
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

template <class F>
struct DelsarteReport {
  F lhs;                        // |X| (1 - |X| f_0)
  F rhs;                        // Sum_{k>=1} f_k S_k
  std::vector<F> contributions; // f_k S_k for k = 1..deg
  bool holds = false;
};

/// Checks |X|(1 - |X| f_0) = Sum_k f_k S_k for a polynomial F with F(1) = 1
/// vanishing on A(X). The norm ||tH_k H_0||^2 equals S_k because the degree-0
/// characteristic matrix is the all-ones column.
template <class F>
DelsarteReport<F> delsarte_identity_check(const SphericalConfig<F>& cfg,
                                          const std::vector<F>& poly) {
  DistanceDistribution<F> dist = inner_product_set(cfg);
  for (const F& a : dist.values)
    if (!(poly_eval_field(poly, a) == F()))
      throw PreconditionViolated("polynomial does not annihilate A(X)");
  if (!(poly_eval_field(poly, F(1)) == F(1)))
    throw PreconditionViolated("polynomial is not 1 at t = 1");
  std::vector<F> f = expand_in_gegenbauer(poly, cfg.m);
  DelsarteReport<F> report;
  F nn = F(Rational(BigInt(cfg.n)));
  report.lhs = nn * (F(1) - nn * f[0]);
  report.rhs = F();
  for (std::size_t k = 1; k < f.size(); ++k) {
    F term = f[k] * design_moment(dist, cfg.n, cfg.m, static_cast<int>(k));
    report.contributions.push_back(term);
    report.rhs += term;
  }
  report.holds = report.lhs == report.rhs;
  return report;
}

/// Verifies D_k D_l = |X| delta_{kl} D_k for all k + l <= t. When the distance
/// classes close into a Bose-Mesner algebra the products collapse to the
/// intersection numbers; otherwise the matrices are multiplied directly
/// (subject to the exact-rank size cap).
template <class F>
bool design_orthogonality_check(const SphericalConfig<F>& cfg, int t) {
  DistanceDistribution<F> dist = inner_product_set(cfg);
  DesignProfile<F> profile = design_strength(dist, cfg.n, cfg.m, t);
  if (profile.strength < t)
    throw NotADesign("configuration has strength " + std::to_string(profile.strength) +
                     " < " + std::to_string(t));
  const GegenbauerBasis& basis = gegenbauer_basis(cfg.m, t);
  const int s = dist.s();
  // Class-value vectors of D_k: entry 0 is the diagonal value G_k(1).
  auto class_values = [&](int k) {
    std::vector<F> v(std::size_t(s) + 1);
    v[0] = poly_eval(basis.poly(k), F(1));
    for (int a = 0; a < s; ++a)
      v[std::size_t(a) + 1] = poly_eval(basis.poly(k), dist.values[std::size_t(a)]);
    return v;
  };
  F nn = F(Rational(BigInt(cfg.n)));

  RelationMatrix rel = distance_classes(cfg, dist);
  std::optional<IntersectionNumbers> inter = intersection_numbers(rel);
  if (inter) {
    for (int k = 0; k <= t; ++k)
      for (int l = k; k + l <= t; ++l) {
        std::vector<F> a = class_values(k), b = class_values(l);
        for (int c = 0; c <= s; ++c) {
          F prod = F();
          for (int i = 0; i <= s; ++i) {
            if (a[std::size_t(i)] == F()) continue;
            for (int j = 0; j <= s; ++j)
              prod += a[std::size_t(i)] * b[std::size_t(j)] *
                      F(Rational(inter->at(i, j, c)));
          }
          F expected = k == l ? nn * a[std::size_t(c)] : F();
          if (!(prod == expected)) return false;
        }
      }
    return true;
  }
  if (cfg.n > exact_rank_cap())
    throw SizeLimitExceeded("orthogonality check without scheme structure needs n <= cap");
  for (int k = 0; k <= t; ++k) {
    DenseMatrix<F> dk = d_matrix(cfg, k);
    for (int l = k; k + l <= t; ++l) {
      DenseMatrix<F> dl = d_matrix(cfg, l);
      DenseMatrix<F> prod = dk * dl;
      DenseMatrix<F> expected = k == l ? nn * dk : DenseMatrix<F>(cfg.n, cfg.n);
      if (!(prod == expected)) return false;
    }
  }
  return true;
}

template <class F>
struct AnnihilatorAudit {
  int s = 0;
  int t = 0;
  std::vector<F> coeffs;            // f_0..f_s in the Gegenbauer basis
  std::vector<bool> equals_inv_n;   // f_k == 1/|X| ?
  bool lemma_inv_n_ok = false;      // f_{t-s+1} != 1/|X|
  bool remark_prefix_ok = false;    // f_j == 1/|X| for j <= t-s (when t >= s)
};

/// Expands F_X in the Gegenbauer basis and audits which coefficients equal
/// 1/|X|. The two proven facts (f_{t-s+1} != 1/|X|; the equal prefix up to
/// t-s) are asserted: a violation falsifies the underlying lemmas.
template <class F>
AnnihilatorAudit<F> annihilator_coeff_audit(const SphericalConfig<F>& cfg) {
  DistanceDistribution<F> dist = inner_product_set(cfg);
  DesignProfile<F> profile = design_strength(dist, cfg.n, cfg.m);
  const int s = dist.s();
  const int t = profile.strength;
  if (t < s - 1)
    throw StrengthTooLow("strength " + std::to_string(t) + " < s - 1 = " +
                         std::to_string(s - 1));
  AnnihilatorAudit<F> audit;
  audit.s = s;
  audit.t = t;
  audit.coeffs = expand_in_gegenbauer(annihilator(dist.values), cfg.m);
  audit.coeffs.resize(std::size_t(s) + 1, F());
  F inv_n = F(Rational(BigInt(1), BigInt(cfg.n)));
  for (const F& fk : audit.coeffs) audit.equals_inv_n.push_back(fk == inv_n);
  int idx = t - s + 1;
  audit.lemma_inv_n_ok = idx > s || !audit.equals_inv_n[std::size_t(idx)];
  if (!audit.lemma_inv_n_ok)
    throw ConstructionInvariantViolated("f_{t-s+1} = 1/|X| contradicts the strength lemma");
  audit.remark_prefix_ok = true;
  for (int j = 0; j <= t - s; ++j)
    if (!audit.equals_inv_n[std::size_t(j)]) audit.remark_prefix_ok = false;
  if (t >= s && !audit.remark_prefix_ok)
    throw ConstructionInvariantViolated("f_j != 1/|X| for some j <= t-s");
  return audit;
}

template <class C>
decltype(auto) coord_to_field(const C& v) {
  if constexpr (std::is_integral_v<C>) {
    return Rational(static_cast<long long>(v));
  } else {
    return (v);
  }
}

template <class C>
using CoordField = std::decay_t<decltype(coord_to_field(std::declval<C>()))>;

/// One linear constraint (x, vec) = value * norm_sq, with `value` stated in
/// unit-sphere terms.
template <class C>
struct SectionConstraint {
  std::vector<C> vec;
  CoordField<C> value;
};

template <class C>
struct SectionResult {
  SphericalConfig<CoordField<C>> config;
  std::vector<std::size_t> selected;
  CoordField<C> residual_norm_sq;  // relative to norm_sq = 1 scaling
};

/// Slices a constant-norm coordinate family by one or two affine constraints,
/// removes the common component in the span of the constraint vectors, checks
/// that all residuals share one positive norm, and returns the renormalized
/// configuration. The ambient dimension drops by the number of constraints.
template <class C>
SectionResult<C> affine_section(const DenseMatrix<C>& coords, const C& norm_sq,
                                const std::vector<SectionConstraint<C>>& constraints,
                                bool psd_check = true) {
  using F = CoordField<C>;
  const std::size_t k = constraints.size();
  if (k == 0 || k > 2) throw RangeError("affine_section supports 1 or 2 constraints");
  const std::size_t dim = coords.cols();
  for (const auto& c : constraints)
    if (c.vec.size() != dim) throw RangeError("constraint dimension mismatch");
  F normf = F(coord_to_field(norm_sq));

  auto dot_vec = [&](std::size_t row, const std::vector<C>& v) {
    C acc = C();
    for (std::size_t j = 0; j < dim; ++j) acc += coords(row, j) * v[j];
    return acc;
  };

  std::vector<std::size_t> selected;
  for (std::size_t x = 0; x < coords.rows(); ++x) {
    bool all = true;
    for (const auto& c : constraints)
      if (!(F(coord_to_field(dot_vec(x, c.vec))) == c.value * normf)) {
        all = false;
        break;
      }
    if (all) selected.push_back(x);
  }
  if (selected.size() < 2)
    throw EmptySection("section contains " + std::to_string(selected.size()) +
                       " point(s)");

  // Constraint Gram and the component p of every selected point in the span
  // of the constraint vectors: (p, vec_c) = value_c * N.
  DenseMatrix<F> cgram(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      C acc = C();
      for (std::size_t j = 0; j < dim; ++j)
        acc += constraints[a].vec[j] * constraints[b].vec[j];
      cgram(a, b) = F(coord_to_field(acc));
    }
  std::vector<F> rhs(k);
  for (std::size_t a = 0; a < k; ++a) rhs[a] = constraints[a].value * normf;
  std::optional<std::vector<F>> sol = solve_linear(cgram, rhs);
  if (!sol) throw PreconditionViolated("constraint vectors are linearly dependent");
  F pp = F();
  for (std::size_t a = 0; a < k; ++a) pp += (*sol)[a] * rhs[a];

  F residual = normf - pp;
  if (sign_of(residual) <= 0)
    throw InconsistentNorm("residual norm is not positive; section is degenerate");

  const std::size_t n = selected.size();
  SectionResult<C> result;
  result.selected = selected;
  result.residual_norm_sq = residual / normf;
  DenseMatrix<F> gram(n, n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        C acc = C();
        for (std::size_t c = 0; c < dim; ++c)
          acc += coords(selected[i], c) * coords(selected[j], c);
        F val = (F(coord_to_field(acc)) - pp) / residual;
        gram(i, j) = val;
        gram(j, i) = std::move(val);
      }
    }
  });
  for (std::size_t i = 0; i < n; ++i)
    if (!(gram(i, i) == F(1)))
      throw InconsistentNorm("residual norms differ across the section");
  FieldTag tag = FieldTag::rational();
  if constexpr (std::is_same_v<F, QuadExt>) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < n && d == 0; ++i)
      for (std::size_t j = 0; j < n && d == 0; ++j)
        if (!gram(i, j).sqrt_part().is_zero()) d = gram(i, j).d();
    tag = d != 0 ? FieldTag::quadratic(d) : FieldTag::rational();
  }
  result.config = config_from_gram(std::move(gram), static_cast<int>(dim - k), tag,
                                   psd_check && n <= exact_rank_cap());
  return result;
}

struct AntipodalReport {
  bool antipodal = false;
  std::vector<std::size_t> pairing;  // sigma with gram(x, sigma(x)) = -1
};

/// True iff the Gram rows admit a perfect pairing at inner product -1; unit
/// vectors at inner product -1 are exact antipodes.
template <class F>
AntipodalReport antipodal_check(const SphericalConfig<F>& cfg) {
  AntipodalReport report;
  report.pairing.assign(cfg.n, cfg.n);
  F minus_one = F(-1);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    for (std::size_t j = 0; j < cfg.n; ++j) {
      if (i == j) continue;
      if (cfg.gram(i, j) == minus_one) {
        if (report.pairing[i] != cfg.n) return report;  // two antipodes: impossible
        report.pairing[i] = j;
      }
    }
    if (report.pairing[i] == cfg.n) return report;
  }
  for (std::size_t i = 0; i < cfg.n; ++i)
    if (report.pairing[report.pairing[i]] != i) return report;
  report.antipodal = true;
  return report;
}

}  // namespace fewdist
