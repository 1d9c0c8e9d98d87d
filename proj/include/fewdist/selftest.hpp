#pragma once

#include <random>
#include <string>
#include <vector>

#include "fewdist/bounds.hpp"
#include "fewdist/catalog.hpp"
#include "fewdist/schemes.hpp"

namespace fewdist {

struct SelftestResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace selftest_detail {

template <class Fn>
SelftestResult run_suite(const std::string& name, Fn&& fn) {
  SelftestResult result;
  result.name = name;
  try {
    std::string detail = fn();
    result.pass = true;
    result.detail = detail;
  } catch (const std::exception& e) {
    result.pass = false;
    result.detail = e.what();
  }
  return result;
}

inline void require(bool condition, const std::string& what) {
  if (!condition) throw ConstructionInvariantViolated(what);
}

inline std::string gegenbauer_suite() {
  int checks = 0;
  for (int m = 2; m <= 25; ++m) {
    const GegenbauerBasis& basis = gegenbauer_basis(m, 10);
    for (int k = 1; k < 10; ++k) {
      Poly residual = poly_sub(
          poly_shift(basis.poly(k)),
          poly_add(poly_scale(gegenbauer_lambda(m, k + 1), basis.poly(k + 1)),
                   poly_scale(Rational(1) - gegenbauer_lambda(m, k - 1),
                              basis.poly(k - 1))));
      require(residual.empty(), "recurrence residual nonzero");
      ++checks;
    }
    for (int k = 0; k <= 10; ++k) {
      require(poly_eval(basis.poly(k), Rational(1)) == Rational(harm_dim(m, k)),
              "G_k(1) != h_k");
      ++checks;
    }
    for (int i = 0; i <= 6; ++i)
      for (int jj = 0; jj <= 6; ++jj) {
        std::vector<Rational> c = linearization(m, i, jj);
        for (const Rational& v : c) require(v.sign() >= 0, "negative linearization");
        require(c[0] == (i == jj ? Rational(harm_dim(m, i)) : Rational(0)),
                "c_{i,j}^0 != h_i delta");
        ++checks;
      }
  }
  return std::to_string(checks) + " checks";
}

inline std::string lemma_f0_suite() {
  std::mt19937 rng(20250810);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  for (int trial = 0; trial < 100; ++trial) {
    int m = 2 + trial % 9;
    int deg = trial % 6;
    int l = trial % 5;
    std::vector<Rational> f(std::size_t(deg) + 1);
    for (auto& c : f) c = Rational(num(rng), den(rng));
    const GegenbauerBasis& basis = gegenbauer_basis(m, deg + l);
    Poly big;
    for (int k = 0; k <= deg; ++k)
      big = poly_add(big, poly_scale(f[std::size_t(k)], basis.poly(k)));
    Poly g = poly_scale(Rational(1) / Rational(harm_dim(m, l)),
                        poly_mul(basis.poly(l), big));
    std::vector<Rational> coeffs = expand_in_gegenbauer(g, m);
    Rational expected = std::size_t(l) < f.size() ? f[std::size_t(l)] : Rational(0);
    require(coeffs[0] == expected, "g_0 != f_l");
  }
  return "100 random polynomials";
}

template <class F>
void ani_and_design_checks(const SphericalConfig<F>& cfg) {
  DistanceDistribution<F> dist = inner_product_set(cfg);
  DesignProfile<F> profile = design_strength(dist, cfg.n, cfg.m);
  std::vector<F> fx = annihilator(dist.values);
  DelsarteReport<F> report = delsarte_identity_check(cfg, fx);
  require(report.holds, "Delsarte identity fails");
  require(design_orthogonality_check(cfg, profile.strength),
          "design orthogonality fails");
}

inline std::string ani_design_suite(bool include_leech) {
  ani_and_design_checks(catalog::simplex(3));
  ani_and_design_checks(catalog::simplex(5));
  ani_and_design_checks(catalog::cross_polytope(3));
  ani_and_design_checks(catalog::dodecahedron());
  if (include_leech) {
    SphericalConfig<Rational> leech = catalog::leech_derived_2025();
    ani_and_design_checks(leech);
    // With G = G_2 F_X / h_2 (degree t+1 = 5) the design orthogonality kills
    // every right-hand term below k = 5; the k = 5 term must survive, which
    // is exactly why g_0 = f_2 != 1/|X|.
    DistanceDistribution<Rational> dist = inner_product_set(leech);
    std::vector<Rational> fx = annihilator(dist.values);
    const GegenbauerBasis& basis = gegenbauer_basis(leech.m, 5);
    Poly g = poly_scale(Rational(1) / Rational(harm_dim(leech.m, 2)),
                        poly_mul(basis.poly(2), Poly(fx.begin(), fx.end())));
    DelsarteReport<Rational> report =
        delsarte_identity_check(leech, std::vector<Rational>(g.begin(), g.end()));
    require(report.holds, "Delsarte identity fails for G_2 F_X / h_2");
    require(report.contributions.size() == 5, "expected contributions up to k = 5");
    for (std::size_t k = 0; k + 1 < report.contributions.size(); ++k)
      require(report.contributions[k].is_zero(), "cross term below k = 5 survives");
    require(!report.contributions.back().is_zero(), "the k = 5 term vanished");
    require(!report.lhs.is_zero(), "g_0 = 1/|X| would contradict the strength lemma");
    return "simplex, cross-polytope, dodecahedron, 2025-point set";
  }
  return "simplex, cross-polytope, dodecahedron";
}

template <class F>
void rank_lemma_checks(const SphericalConfig<F>& cfg) {
  DistanceDistribution<F> dist = inner_product_set(cfg);
  const int s = dist.s();
  DesignProfile<F> profile = design_strength(dist, cfg.n, cfg.m);
  const int t = profile.strength;
  std::vector<F> f = expand_in_gegenbauer(annihilator(dist.values), cfg.m);
  f.resize(std::size_t(s) + 1, F());
  // Lemma dim
  for (int i = 0; i <= s; ++i)
    require(BigInt(rank_exact(d_matrix(cfg, i))) <= harm_dim(cfg.m, i),
            "rank D_i exceeds h_i");
  // Lemma neg
  DenseMatrix<F> positive(cfg.n, cfg.n);
  for (int k = 0; k <= s; ++k)
    if (sign_of(f[std::size_t(k)]) > 0) positive = positive + d_matrix(cfg, k);
  require(rank_exact(positive) == cfg.n, "positive-coefficient D-sum not full rank");
  // Identity I = sum f_k D_k
  DenseMatrix<F> identity_sum(cfg.n, cfg.n);
  for (int k = 0; k <= s; ++k)
    identity_sum = identity_sum + f[std::size_t(k)] * d_matrix(cfg, k);
  require(identity_sum == DenseMatrix<F>::identity(cfg.n), "I != sum f_k D_k");
  // Lemma reduce
  const int i = 2 * s - t;
  if (i >= 2 && i <= 2 * s) {
    F inv_n = F(Rational(BigInt(1), BigInt(cfg.n)));
    DenseMatrix<F> top(cfg.n, cfg.n);
    for (int k = (2 * s - i) / 2 + 1; k <= s; ++k) top = top + d_matrix(cfg, k);
    std::size_t top_rank = rank_exact(top);
    for (int jj = std::max(s - i + 1, 0); jj <= (2 * s - i) / 2; ++jj) {
      if (f[std::size_t(jj)] == inv_n) continue;
      require(rank_exact(top + d_matrix(cfg, jj)) == top_rank,
              "column space of D_j escapes the top block");
    }
  }
}

inline std::string rank_lemmas_suite() {
  int count = 0;
  for (int m = 2; m <= 6; ++m) {
    rank_lemma_checks(catalog::simplex(m));
    rank_lemma_checks(catalog::cross_polytope(m));
    count += 2;
  }
  rank_lemma_checks(catalog::dodecahedron());
  ++count;
  SpectralData t5 = idempotents(catalog::triangular(5));
  QPolyStructure qp = q_polynomial_structure(krein(t5));
  EmbeddingInfo info = embedding_gram(t5, qp.ordering[1]);
  rank_lemma_checks(*info.config);
  ++count;
  return std::to_string(count) + " configurations";
}

inline std::string hadamard_suite() {
  SpectralData t5 = idempotents(catalog::triangular(5));
  QPolyStructure qp5 = q_polynomial_structure(krein(t5));
  HadamardRankReport r5 = hadamard_rank_check(t5, 3, qp5.ordering[1]);
  require(r5.bound_ok && r5.downward_ok, "lemma S3 fails on T(5)");
  require(r5.equality[2], "T(5) rank E_1^{o2} != C(5,2)");
  for (int m : {3, 4}) {
    DistanceClasses dc = from_distance_classes(catalog::cross_polytope(m));
    SpectralData sp = idempotents(*dc.scheme);
    QPolyStructure qp = q_polynomial_structure(krein(sp));
    HadamardRankReport r = hadamard_rank_check(sp, 3, qp.ordering[1]);
    require(r.bound_ok && r.downward_ok, "lemma S3 fails on the cross-polytope scheme");
  }
  return "T(5), cross-polytope m=3,4";
}

inline std::string bound_consistency_suite() {
  for (int m = 2; m <= 25; ++m) {
    for (int s = 1; s <= 6; ++s)
      for (int i = 2; i <= s + 1; ++i) {
        std::vector<int> flags;
        for (int k = std::max(s - i + 1, 0); k <= (2 * s - i) / 2; ++k)
          if (k != s - i + 1) flags.push_back(k);
        require(main_bound(m, s, i, flags) == corollary_bound(m, s, i),
                "corollary != flagged main bound");
      }
    for (int s = 0; s <= 8; ++s) {
      BigInt hs = 0;
      for (int i = s % 2; i <= s; i += 2) hs += harm_dim(m, i);
      require(hs == binomial(m + s - 1, s), "parity h-sum != binomial");
    }
    for (int s = 1; s <= 6; ++s)
      for (int l = 0; l <= s; ++l) s0_bound(m, s, l);  // internal agreement check
  }
  return "m <= 25, s <= 6 (h-sums to s = 8)";
}

}  // namespace selftest_detail

/// Runs the invariant suites and returns one result per suite. Exact
/// arithmetic throughout; any failure is a correctness regression, not noise.
inline std::vector<SelftestResult> run_selftest(bool include_leech = true) {
  using namespace selftest_detail;
  std::vector<SelftestResult> results;
  results.push_back(run_suite("gegenbauer", [] { return gegenbauer_suite(); }));
  results.push_back(run_suite("lemma_f0", [] { return lemma_f0_suite(); }));
  results.push_back(run_suite("ani_and_design_orthogonality",
                              [&] { return ani_design_suite(include_leech); }));
  results.push_back(run_suite("rank_lemmas", [] { return rank_lemmas_suite(); }));
  results.push_back(run_suite("hadamard_rank", [] { return hadamard_suite(); }));
  results.push_back(run_suite("bound_consistency", [] { return bound_consistency_suite(); }));
  return results;
}

}  // namespace fewdist
