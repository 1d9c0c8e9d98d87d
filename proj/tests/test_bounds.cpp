#include <algorithm>

#include "doctest.h"
#include "fewdist/bounds.hpp"
#include "fewdist/catalog.hpp"

using namespace fewdist;

TEST_SUITE("bounds") {

TEST_CASE("absolute bound sums harmonic dimensions") {
  for (int m : {2, 5, 13}) CHECK(absolute_bound_sdist(m, 1) == 1 + m);
  CHECK(absolute_bound_sdist(22, 3) == 2277);
  CHECK(absolute_bound_sdist(3, 2) == 9);
}

TEST_CASE("design lower bound") {
  CHECK(design_lower_bound(7, 0) == 1);
  CHECK(design_lower_bound(22, 2) == 275);
  CHECK(design_lower_bound(3, 1) == 4);
}

TEST_CASE("main theorem bound with coefficient flags") {
  // All middle flags present: collapses to the absolute bound.
  for (int m : {3, 22})
    for (int s = 2; s <= 5; ++s)
      for (int i = 2; i <= s + 1; ++i) {
        std::vector<int> full;
        for (int k = 0; k <= s; ++k) full.push_back(k);
        CHECK(main_bound(m, s, i, full) == absolute_bound_sdist(m, s));
      }
  CHECK(main_bound(22, 3, 2, {}) == 2025);  // h_0 + h_1 + h_3
  for (int m : {4, 9})
    CHECK(main_bound(m, 2, 2, {}) == harm_dim(m, 0) + harm_dim(m, 2));
  CHECK_THROWS_AS(main_bound(5, 3, 1, {}), RangeError);
  CHECK_THROWS_AS(main_bound(5, 3, 7, {}), RangeError);
}

TEST_CASE("corollary bound values") {
  CHECK(corollary_bound(22, 3, 2) == 2025);
  CHECK(corollary_bound(22, 3, 2) == 2277 - 252);
  for (int m : {4, 9})
    CHECK(corollary_bound(m, 2, 2) == harm_dim(m, 0) + harm_dim(m, 2));
  CHECK(corollary_bound(3, 2, 3) == 8);
  CHECK_THROWS_AS(corollary_bound(3, 2, 4), RangeError);
}

TEST_CASE("corollary equals main with the full middle block minus s-i+1") {
  for (int m = 2; m <= 25; ++m)
    for (int s = 1; s <= 6; ++s)
      for (int i = 2; i <= s + 1; ++i) {
        std::vector<int> flags;
        for (int k = std::max(s - i + 1, 0); k <= (2 * s - i) / 2; ++k)
          if (k != s - i + 1) flags.push_back(k);
        CHECK(main_bound(m, s, i, flags) == corollary_bound(m, s, i));
      }
}

TEST_CASE("main bound never exceeds the absolute bound") {
  for (int m : {2, 3, 7, 25})
    for (int s = 1; s <= 6; ++s)
      for (int i = 2; i <= 2 * s; ++i) {
        std::vector<int> partial;
        for (int k = 0; k <= s; k += 2) partial.push_back(k);
        CHECK(main_bound(m, s, i, partial) <= absolute_bound_sdist(m, s));
        CHECK(main_bound(m, s, i, {}) <= absolute_bound_sdist(m, s));
      }
}

TEST_CASE("antipodal bound values at the parity edges") {
  CHECK(antipodal_bound(3, 5, 2) == 20);  // 2(1+5+9) - 2*5
  CHECK(antipodal_bound(3, 5, 3) == 28);  // 30 - 2 h_0
  for (int m : {3, 6}) CHECK(antipodal_bound(m, 2, 1) == 2 * harm_dim(m, 2));
  // Range: i = 1 needs even s; (s+delta)/2 is the ceiling.
  CHECK_THROWS_AS(antipodal_bound(3, 5, 1), RangeError);
  CHECK_THROWS_AS(antipodal_bound(3, 5, 4), RangeError);
  CHECK_THROWS_AS(antipodal_bound(3, 4, 3), RangeError);
}

TEST_CASE("s0 bound selects the case by l and reconciles both forms") {
  S0Bound b1 = s0_bound(22, 3, 1);
  CHECK(b1.case_tag == 2);
  CHECK(b1.value == 2025);
  REQUIRE(b1.h_sum.has_value());
  CHECK(*b1.h_sum == 2025);

  S0Bound b2 = s0_bound(4, 2, 0);
  CHECK(b2.case_tag == 3);
  CHECK(b2.value == 10);
  CHECK(*b2.h_sum == harm_dim(4, 0) + harm_dim(4, 2));

  for (int m : {3, 4, 9})
    for (int s = 1; s <= 4; ++s) {
      S0Bound b = s0_bound(m, s, s);
      CHECK(b.case_tag == 1);
      CHECK(b.value == 2 * binomial(m + s - 2, s - 1));
    }
  CHECK_THROWS_AS(s0_bound(4, 2, 3), RangeError);
}

TEST_CASE("binomial and parity harmonic sums agree") {
  for (int m = 2; m <= 25; ++m)
    for (int s = 0; s <= 8; ++s) {
      BigInt hs = 0;
      for (int i = s % 2; i <= s; i += 2) hs += harm_dim(m, i);
      CHECK(hs == binomial(m + s - 1, s));
    }
}

TEST_CASE("audit marks the right bounds attained for the baselines") {
  std::vector<BoundReport> simplex_report = bounds_audit(catalog::simplex(4));
  for (const BoundReport& r : simplex_report) {
    if (r.name == "absolute_s_distance") CHECK(*r.attained == (5 == 1 + 4));
    if (r.name == "design_lower") CHECK(*r.attained);  // tight 2-design
    if (r.name == "corollary_strength") CHECK(!r.applicable);  // i = 0
  }

  std::vector<BoundReport> dode_report = bounds_audit(catalog::dodecahedron());
  bool antipodal_attained = false;
  for (const BoundReport& r : dode_report)
    if (r.name == "antipodal" && r.applicable && *r.attained) antipodal_attained = true;
  CHECK(antipodal_attained);

  // No violations anywhere on the corpus (a throw would fail the test).
  CHECK_NOTHROW(bounds_audit(catalog::cross_polytope(3)));
  CHECK_NOTHROW(bounds_audit(catalog::cross_polytope(5)));
  CHECK_NOTHROW(bounds_audit(catalog::simplex(2)));
}

}  // TEST_SUITE
