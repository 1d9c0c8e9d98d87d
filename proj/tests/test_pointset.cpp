#include "doctest.h"
#include "fewdist/bounds.hpp"
#include "fewdist/catalog.hpp"
#include "fewdist/pointset.hpp"

using namespace fewdist;

namespace {

// Independent design oracle via power sums: X is a t-design iff for every
// e <= t the average of (x,y)^e over X x X equals the sphere moment
// M_e = (e-1)!! / (m (m+2) ... (m+e-2)) for even e and 0 for odd e.
Rational sphere_moment(int m, int e) {
  if (e % 2 == 1) return Rational(0);
  Rational moment(1);
  for (int j = 1; j < e; j += 2) moment *= Rational(j);
  for (int j = 0; j < e / 2; ++j) moment /= Rational(m + 2 * j);
  return moment;
}

template <class F>
bool is_design_powersum(const SphericalConfig<F>& cfg, int t) {
  for (int e = 1; e <= t; ++e) {
    F total = F();
    for (std::size_t x = 0; x < cfg.n; ++x)
      for (std::size_t y = 0; y < cfg.n; ++y) {
        F power = F(1);
        for (int j = 0; j < e; ++j) power *= cfg.gram(x, y);
        total += power;
      }
    F expected = F(Rational(BigInt(cfg.n) * BigInt(cfg.n)) * sphere_moment(cfg.m, e));
    if (!(total == expected)) return false;
  }
  return true;
}

SphericalConfig<Rational> antipodal_pair() {
  DenseMatrix<Rational> gram(2, 2, Rational(-1));
  gram(0, 0) = gram(1, 1) = Rational(1);
  return config_from_gram(std::move(gram), 2, FieldTag::rational());
}

template <class F>
std::vector<F> gegenbauer_combination(int m, const std::vector<F>& coeffs) {
  const GegenbauerBasis& basis = gegenbauer_basis(m, int(coeffs.size()) - 1);
  std::vector<F> poly(coeffs.size(), F());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Poly& g = basis.poly(int(k));
    for (std::size_t j = 0; j < g.size(); ++j) poly[j] += coeffs[k] * F(g[j]);
  }
  return poly;
}

}  // namespace

TEST_SUITE("pointset") {

TEST_CASE("config validation catches broken grams") {
  DenseMatrix<Rational> gram(2, 2, Rational(-1));
  gram(0, 0) = Rational(1);
  gram(1, 1) = Rational(2);
  CHECK_THROWS_AS(config_from_gram(gram, 2, FieldTag::rational()), NonUnitNorm);
  gram(1, 1) = Rational(1);
  gram(0, 1) = Rational(-1, 2);
  CHECK_THROWS_AS(config_from_gram(gram, 2, FieldTag::rational()), NotSymmetric);
  gram(0, 1) = Rational(-3, 2);
  gram(1, 0) = Rational(-3, 2);
  CHECK_THROWS_AS(config_from_gram(gram, 2, FieldTag::rational()),
                  NotPositiveSemidefinite);
  // Rank above the claimed ambient dimension is rejected too.
  DenseMatrix<Rational> tetra(4, 4, Rational(-1, 3));
  for (int i = 0; i < 4; ++i) tetra(std::size_t(i), std::size_t(i)) = Rational(1);
  CHECK_THROWS_AS(config_from_gram(tetra, 2, FieldTag::rational()),
                  NotPositiveSemidefinite);
  CHECK_NOTHROW(config_from_gram(tetra, 3, FieldTag::rational()));
}

TEST_CASE("antipodal pair and triangle grams load") {
  SphericalConfig<Rational> pair = antipodal_pair();
  CHECK(pair.n == 2);
  DistanceDistribution<Rational> dist = inner_product_set(pair);
  CHECK(dist.values == std::vector<Rational>{Rational(-1)});
  CHECK(dist.counts == std::vector<std::int64_t>{2});

  DenseMatrix<Rational> tri(3, 3, Rational(-1, 2));
  for (int i = 0; i < 3; ++i) tri(std::size_t(i), std::size_t(i)) = Rational(1);
  CHECK_NOTHROW(config_from_gram(tri, 2, FieldTag::rational()));
}

TEST_CASE("unit-norm coords are kept, non-unit ones normalize the gram") {
  SphericalConfig<Rational> cp = catalog::cross_polytope(3);
  CHECK(cp.coords.has_value());
  DenseMatrix<Rational> doubled(2, 2);
  doubled(0, 0) = Rational(2);
  doubled(1, 1) = Rational(-2);
  DenseMatrix<Rational> two_cols(2, 2);
  two_cols(0, 0) = Rational(2);
  two_cols(1, 0) = Rational(-2);
  SphericalConfig<Rational> cfg = config_from_coords(two_cols, FieldTag::rational());
  CHECK(!cfg.coords.has_value());
  CHECK(cfg.gram(0, 1) == Rational(-1));
}

TEST_CASE("distance distributions of the baseline families") {
  for (int m : {2, 3, 5}) {
    SphericalConfig<Rational> sx = catalog::simplex(m);
    DistanceDistribution<Rational> dist = inner_product_set(sx);
    CHECK(dist.values == std::vector<Rational>{Rational(-1, m)});
    CHECK(dist.counts == std::vector<std::int64_t>{std::int64_t(m + 1) * m});
  }
  for (int m : {2, 3, 4}) {
    SphericalConfig<Rational> cp = catalog::cross_polytope(m);
    DistanceDistribution<Rational> dist = inner_product_set(cp);
    CHECK(dist.values == std::vector<Rational>{Rational(-1), Rational(0)});
    CHECK(dist.counts ==
          std::vector<std::int64_t>{2 * m, std::int64_t(4) * m * (m - 1)});
  }
}

TEST_CASE("moments vanish exactly as far as the strength and no further") {
  SphericalConfig<Rational> pair = antipodal_pair();
  CHECK(design_moment(pair, 1) == Rational(0));

  for (int m : {2, 3, 4}) {
    SphericalConfig<Rational> sx = catalog::simplex(m);
    CHECK(design_moment(sx, 1) == Rational(0));
    DesignProfile<Rational> profile = design_strength(sx);
    CHECK(profile.strength == 2);
    CHECK(is_design_powersum(sx, 2));
    CHECK(!is_design_powersum(sx, 3));
  }

  SphericalConfig<Rational> cp3 = catalog::cross_polytope(3);
  DesignProfile<Rational> profile = design_strength(cp3);
  CHECK(profile.strength == 3);
  CHECK(profile.moments.size() == 4);
  CHECK(!(profile.moments[3] == Rational(0)));
  CHECK(is_design_powersum(cp3, 3));
  CHECK(!is_design_powersum(cp3, 4));
}

TEST_CASE("strength never exceeds twice the distance count") {
  std::vector<SphericalConfig<Rational>> corpus;
  for (int m : {2, 3, 4, 5}) corpus.push_back(catalog::simplex(m));
  for (int m : {2, 3, 4, 5}) corpus.push_back(catalog::cross_polytope(m));
  corpus.push_back(antipodal_pair());
  for (const auto& cfg : corpus) {
    DistanceDistribution<Rational> dist = inner_product_set(cfg);
    DesignProfile<Rational> profile = design_strength(dist, cfg.n, cfg.m);
    CHECK(profile.strength <= 2 * dist.s());
    // Positive definiteness: every moment through 2s+2 has a clean sign.
    for (int i = 1; i <= 2 * dist.s() + 2; ++i)
      CHECK(sign_of(design_moment(dist, cfg.n, cfg.m, i)) >= 0);
  }
}

TEST_CASE("configs reject scalars outside the declared field") {
  DenseMatrix<QuadExt> gram(2, 2, QuadExt(Rational(1, 2), Rational(-1, 4), 5));
  gram(0, 0) = gram(1, 1) = QuadExt(1);
  gram(1, 0) = gram(0, 1);
  CHECK_NOTHROW(config_from_gram(gram, 2, FieldTag::quadratic(5)));
  CHECK_THROWS_AS(config_from_gram(gram, 2, FieldTag::quadratic(3)), FieldMismatch);
  CHECK_THROWS_AS(config_from_gram(gram, 2, FieldTag::rational()), FieldMismatch);
  DenseMatrix<Rational> rat(2, 2, Rational(-1));
  rat(0, 0) = rat(1, 1) = Rational(1);
  CHECK_THROWS_AS(config_from_gram(rat, 2, FieldTag::quadratic(5)), FieldMismatch);
}

TEST_CASE("d_matrix trace and entry sum follow the addition formula") {
  auto check_traces = [](const auto& cfg) {
    using F = std::decay_t<decltype(cfg.gram(0, 0))>;
    DistanceDistribution<F> dist = inner_product_set(cfg);
    for (int i = 0; i <= dist.s(); ++i) {
      DenseMatrix<F> d = d_matrix(cfg, i);
      CHECK(d.trace() == F(Rational(BigInt(cfg.n) * harm_dim(cfg.m, i))));
      F sum = F();
      for (std::size_t x = 0; x < cfg.n; ++x)
        for (std::size_t y = 0; y < cfg.n; ++y) sum += d(x, y);
      CHECK(sum == design_moment(dist, cfg.n, cfg.m, i));
      CHECK(psd_rank(d).has_value());  // D_i is positive semidefinite
    }
  };
  check_traces(catalog::cross_polytope(3));
  check_traces(catalog::simplex(4));
  check_traces(catalog::dodecahedron());
}

TEST_CASE("d_matrix values: all-ones at degree 0, m * gram at degree 1") {
  SphericalConfig<Rational> pair = antipodal_pair();
  DenseMatrix<Rational> d0 = d_matrix(pair, 0);
  CHECK(d0 == DenseMatrix<Rational>(2, 2, Rational(1)));
  DenseMatrix<Rational> d1 = d_matrix(pair, 1);
  CHECK(d1(0, 0) == Rational(2));
  CHECK(d1(0, 1) == Rational(-2));

  SphericalConfig<Rational> cp = catalog::cross_polytope(4);
  DenseMatrix<Rational> d = d_matrix(cp, 1);
  for (std::size_t i = 0; i < cp.n; ++i)
    for (std::size_t j = 0; j < cp.n; ++j)
      CHECK(d(i, j) == Rational(4) * cp.gram(i, j));
  // trace = n h_1 and entry sum = S_1 = 0
  CHECK(d.trace() == Rational(BigInt(cp.n) * 4));
}

TEST_CASE("ranks of the D_i: lemma dim with exact elimination") {
  for (int m : {2, 3, 4}) {
    SphericalConfig<Rational> sx = catalog::simplex(m);
    CHECK(rank_exact(d_matrix(sx, 0)) == 1);
    CHECK(rank_exact(d_matrix(sx, 1)) == std::size_t(m));
  }
  SphericalConfig<Rational> cp3 = catalog::cross_polytope(3);
  std::size_t r2 = rank_exact(d_matrix(cp3, 2));
  CHECK(BigInt(r2) <= harm_dim(3, 2));
  SphericalConfig<QuadExt> dode = catalog::dodecahedron();
  DistanceDistribution<QuadExt> dist = inner_product_set(dode);
  for (int i = 1; i <= dist.s(); ++i) {
    DenseMatrix<QuadExt> di = d_matrix(dode, i);
    CHECK(BigInt(bareiss_rank(di)) <= harm_dim(3, i));
    // PSD route must agree with Bareiss on these positive semidefinite D_i.
    auto psd = psd_rank(di);
    REQUIRE(psd.has_value());
    CHECK(*psd == bareiss_rank(di));
  }
}

TEST_CASE("size cap turns huge rank requests into SizeLimitExceeded") {
  std::size_t old_cap = exact_rank_cap().exchange(4);
  DenseMatrix<Rational> m(5, 5);
  CHECK_THROWS_AS(rank_exact(m), SizeLimitExceeded);
  exact_rank_cap().store(old_cap);
}

TEST_CASE("delsarte identity on tight designs gives zero on both sides") {
  for (int m : {2, 3, 7}) {
    SphericalConfig<Rational> sx = catalog::simplex(m);
    std::vector<Rational> f = annihilator(std::vector<Rational>{Rational(-1, m)});
    DelsarteReport<Rational> report = delsarte_identity_check(sx, f);
    CHECK(report.holds);
    CHECK(report.lhs == Rational(0));
    CHECK(report.rhs == Rational(0));
  }
  SphericalConfig<Rational> pair = antipodal_pair();
  DelsarteReport<Rational> report = delsarte_identity_check(
      pair, std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(report.holds);
  CHECK(report.lhs == Rational(0));
  CHECK_THROWS_AS(delsarte_identity_check(
                      pair, std::vector<Rational>{Rational(1), Rational(0)}),
                  PreconditionViolated);
}

TEST_CASE("delsarte identity with a non-tight polynomial still balances") {
  // Use F_X of the cross-polytope: identity must hold with nonzero sides.
  SphericalConfig<Rational> cp = catalog::cross_polytope(4);
  DistanceDistribution<Rational> dist = inner_product_set(cp);
  std::vector<Rational> f = annihilator(dist.values);
  DelsarteReport<Rational> report = delsarte_identity_check(cp, f);
  CHECK(report.holds);
}

TEST_CASE("design orthogonality D_k D_l = |X| delta D_k") {
  SphericalConfig<Rational> cp3 = catalog::cross_polytope(3);
  CHECK(design_orthogonality_check(cp3, 3));
  // Direct spot check: D_1 D_2 = 0 and D_1^2 = 6 D_1.
  DenseMatrix<Rational> d1 = d_matrix(cp3, 1), d2 = d_matrix(cp3, 2);
  CHECK(d1 * d2 == DenseMatrix<Rational>(6, 6));
  CHECK(d1 * d1 == Rational(6) * d1);
  CHECK_THROWS_AS(design_orthogonality_check(cp3, 4), NotADesign);

  SphericalConfig<QuadExt> dode = catalog::dodecahedron();
  CHECK(design_orthogonality_check(dode, 5));
}

TEST_CASE("identity I = sum f_k D_k for annihilator coefficients") {
  auto check_identity = [](const auto& cfg) {
    using F = std::decay_t<decltype(cfg.gram(0, 0))>;
    DistanceDistribution<F> dist = inner_product_set(cfg);
    std::vector<F> f = expand_in_gegenbauer(annihilator(dist.values), cfg.m);
    DenseMatrix<F> acc(cfg.n, cfg.n);
    for (std::size_t k = 0; k < f.size(); ++k)
      acc = acc + f[k] * d_matrix(cfg, int(k));
    CHECK(acc == DenseMatrix<F>::identity(cfg.n));
  };
  check_identity(catalog::simplex(3));
  check_identity(catalog::cross_polytope(3));
  check_identity(catalog::dodecahedron());
}

TEST_CASE("lemma neg: positive-coefficient D-sum has full rank") {
  auto check_full_rank = [](const auto& cfg) {
    using F = std::decay_t<decltype(cfg.gram(0, 0))>;
    DistanceDistribution<F> dist = inner_product_set(cfg);
    std::vector<F> f = expand_in_gegenbauer(annihilator(dist.values), cfg.m);
    DenseMatrix<F> acc(cfg.n, cfg.n);
    for (std::size_t k = 0; k < f.size(); ++k)
      if (sign_of(f[k]) > 0) acc = acc + d_matrix(cfg, int(k));
    CHECK(bareiss_rank(acc) == cfg.n);
  };
  check_full_rank(catalog::simplex(4));
  check_full_rank(catalog::cross_polytope(3));
  check_full_rank(catalog::cross_polytope(4));
  check_full_rank(catalog::dodecahedron());
}

TEST_CASE("lemma reduce: column spaces fold into the top block") {
  // Strength 2s-i configurations; for j in the middle range with f_j != 1/n,
  // col(D_j) lies inside col(sum_{k > floor(s - i/2)} D_k).
  auto check_reduce = [](const auto& cfg) {
    using F = std::decay_t<decltype(cfg.gram(0, 0))>;
    DistanceDistribution<F> dist = inner_product_set(cfg);
    const int s = dist.s();
    DesignProfile<F> profile = design_strength(dist, cfg.n, cfg.m);
    const int t = profile.strength;
    const int i = 2 * s - t;
    if (i < 2 || i > 2 * s) return;
    std::vector<F> f = expand_in_gegenbauer(annihilator(dist.values), cfg.m);
    f.resize(std::size_t(s) + 1, F());
    F inv_n = F(Rational(BigInt(1), BigInt(cfg.n)));
    DenseMatrix<F> top(cfg.n, cfg.n);
    for (int k = (2 * s - i) / 2 + 1; k <= s; ++k) top = top + d_matrix(cfg, k);
    std::size_t top_rank = bareiss_rank(top);
    for (int j = std::max(s - i + 1, 0); j <= (2 * s - i) / 2; ++j) {
      if (f[std::size_t(j)] == inv_n) continue;
      DenseMatrix<F> with = top + d_matrix(cfg, j);
      CHECK(bareiss_rank(with) == top_rank);
    }
  };
  check_reduce(catalog::dodecahedron());   // s=5, t=5, i=5: j in [1, 2]
  check_reduce(catalog::cross_polytope(3));
}

TEST_CASE("annihilator coefficient audit: tight prefix and the strength bound") {
  SphericalConfig<Rational> sx = catalog::simplex(4);
  AnnihilatorAudit<Rational> audit = annihilator_coeff_audit(sx);
  CHECK(audit.s == 1);
  CHECK(audit.t == 2);
  CHECK(audit.coeffs[0] == Rational(1, 5));
  CHECK(audit.equals_inv_n[0]);
  CHECK(audit.lemma_inv_n_ok);
  CHECK(audit.remark_prefix_ok);

  SphericalConfig<QuadExt> dode = catalog::dodecahedron();
  AnnihilatorAudit<QuadExt> daudit = annihilator_coeff_audit(dode);
  CHECK(daudit.s == 5);
  CHECK(daudit.t == 5);
  // t - s + 1 = 1: f_1 != 1/20
  CHECK(!daudit.equals_inv_n[1]);
  CHECK(daudit.coeffs[0] == QuadExt(Rational(1, 20)));
}

TEST_CASE("affine section of the cube: one constraint gives the square") {
  DenseMatrix<long long> cube(8, 3);
  std::size_t row = 0;
  for (int sx = -1; sx <= 1; sx += 2)
    for (int sy = -1; sy <= 1; sy += 2)
      for (int sz = -1; sz <= 1; sz += 2) {
        cube(row, 0) = sx;
        cube(row, 1) = sy;
        cube(row, 2) = sz;
        ++row;
      }
  SectionConstraint<long long> top;
  top.vec = {0, 0, 1};
  top.value = Rational(1, 3);  // raw (x,u) = 1 over norm_sq 3
  SectionResult<long long> square = affine_section(cube, 3LL, {top});
  CHECK(square.config.n == 4);
  CHECK(square.config.m == 2);
  DistanceDistribution<Rational> dist = inner_product_set(square.config);
  CHECK(dist.values == std::vector<Rational>{Rational(-1), Rational(0)});

  // Selecting a single point must fail.
  SectionConstraint<long long> apex;
  apex.vec = {1, 1, 1};
  apex.value = Rational(1);
  CHECK_THROWS_AS(affine_section(cube, 3LL, {apex, top}), EmptySection);
  SectionConstraint<long long> parallel;
  parallel.vec = {0, 0, 2};
  parallel.value = Rational(2, 3);
  CHECK_THROWS_AS(affine_section(cube, 3LL, {top, parallel}), PreconditionViolated);
}

TEST_CASE("antipodal detection returns the involution") {
  SphericalConfig<Rational> cp = catalog::cross_polytope(4);
  AntipodalReport report = antipodal_check(cp);
  CHECK(report.antipodal);
  for (std::size_t i = 0; i < cp.n; ++i) {
    CHECK(report.pairing[report.pairing[i]] == i);
    CHECK(cp.gram(i, report.pairing[i]) == Rational(-1));
  }
  CHECK(!antipodal_check(catalog::simplex(3)).antipodal);
  CHECK(antipodal_check(catalog::dodecahedron()).antipodal);
}

TEST_CASE("positive moments reject non-spherical input grams") {
  // A symmetric unit-diagonal matrix that is not PSD sneaks past the shape
  // checks only when the PSD pass is skipped; the moment sign test flags it.
  DenseMatrix<Rational> bad(3, 3, Rational(-1));
  for (int i = 0; i < 3; ++i) bad(std::size_t(i), std::size_t(i)) = Rational(1);
  SphericalConfig<Rational> cfg = config_from_gram(bad, 2, FieldTag::rational(), false);
  bool negative_moment = false;
  try {
    for (int i = 1; i <= 4; ++i) design_moment(cfg, i);
  } catch (const NotPositiveSemidefinite&) {
    negative_moment = true;
  }
  CHECK(negative_moment);
}

}  // TEST_SUITE
