#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fewdist/pointset.hpp"

namespace fewdist {

/// Delsarte-Goethals-Seidel absolute bound for an s-distance set on S^{m-1}.
inline BigInt absolute_bound_sdist(int m, int s) {
  if (m < 2 || s < 1) throw RangeError("absolute_bound_sdist requires m >= 2, s >= 1");
  BigInt total = 0;
  for (int k = 0; k <= s; ++k) total += harm_dim(m, k);
  return total;
}

/// Lower bound for the size of a spherical 2e-design.
inline BigInt design_lower_bound(int m, int e) {
  if (m < 2 || e < 0) throw RangeError("design_lower_bound requires m >= 2, e >= 0");
  BigInt total = 0;
  for (int i = 0; i <= e; ++i) total += harm_dim(m, i);
  return total;
}

/// Bound for an s-distance set with strength 2s-i: the absolute sum keeps the
/// low block (k <= s-i), the middle block only where f_k = 1/|X| (the caller's
/// flags), and the whole top block. The low sum is empty when s - i < 0.
inline BigInt main_bound(int m, int s, int i, const std::vector<int>& flags) {
  if (i < 2 || i > 2 * s) throw RangeError("main_bound requires 2 <= i <= 2s");
  const int mid_lo = std::max(s - i + 1, 0);
  const int mid_hi = (2 * s - i) / 2;  // floor(s - i/2)
  BigInt total = 0;
  for (int k = 0; k <= s - i; ++k) total += harm_dim(m, k);
  for (int k : flags)
    if (k >= mid_lo && k <= mid_hi) total += harm_dim(m, k);
  for (int k = mid_hi + 1; k <= s; ++k) total += harm_dim(m, k);
  return total;
}

/// Strength-(2s-i) corollary: Sum_{k<=s} h_k - h_{s-i+1}, for 2 <= i <= s+1.
inline BigInt corollary_bound(int m, int s, int i) {
  if (i < 2 || i > s + 1) throw RangeError("corollary_bound requires 2 <= i <= s+1");
  return absolute_bound_sdist(m, s) - harm_dim(m, s - i + 1);
}

inline int delta_s(int s) { return s % 2; }

/// Antipodal corollary for strength 2s-2i-1. The valid range is
/// 1 + delta_s <= i <= (s + delta_s)/2: beyond that the subtracted harmonic
/// index s + delta_s - 2i would be negative, so the projective-space corollary
/// behind the statement no longer applies.
inline BigInt antipodal_bound(int m, int s, int i) {
  const int d = delta_s(s);
  if (i < 1 + d || 2 * i > s + d)
    throw RangeError("antipodal_bound requires 1+delta_s <= i <= (s+delta_s)/2");
  BigInt total = 0;
  for (int k = 0; 2 * k <= s - d; ++k) total += 2 * harm_dim(m, 2 * k);
  return total - 2 * harm_dim(m, s + d - 2 * i);
}

struct S0Bound {
  int case_tag = 0;  // 1: l = s; 2: (s-1)/2 <= l <= s-1; 3: l <= (s-2)/2
  BigInt value;
  std::optional<BigInt> h_sum;  // the equivalent harmonic-sum form (cases 2, 3)
};

/// Q-polynomial absolute bound, split by the index l. The binomial value and
/// the harmonic-sum form are computed independently and must agree exactly.
inline S0Bound s0_bound(int m, int s, int l) {
  if (s < 1 || l < 0 || l > s) throw RangeError("s0_bound requires 1 <= s, 0 <= l <= s");
  S0Bound out;
  if (l == s) {
    out.case_tag = 1;
    out.value = 2 * binomial(m + s - 2, s - 1);
    return out;
  }
  if (2 * l >= s - 1) {
    out.case_tag = 2;
    out.value = binomial(m + 2 * l - s, 2 * l + 1 - s) + binomial(m + s - 1, s);
    BigInt hs = 0;
    for (int i = 0; i <= s; ++i) hs += harm_dim(m, i);
    for (int i = 2 * l - s + 3; i <= s - 1; ++i)
      if ((i - (s - 1)) % 2 == 0) hs -= harm_dim(m, i);
    out.h_sum = hs;
  } else {
    out.case_tag = 3;
    out.value = binomial(m + s - 1, s);
    BigInt hs = 0;
    for (int i = s % 2; i <= s; i += 2) hs += harm_dim(m, i);
    out.h_sum = hs;
  }
  if (out.h_sum && *out.h_sum != out.value)
    throw ConstructionInvariantViolated("binomial and harmonic-sum bound forms disagree");
  return out;
}

struct BoundReport {
  std::string name;
  std::string hypothesis;
  bool applicable = false;
  BigInt value;
  std::optional<bool> attained;
  std::optional<std::size_t> witness_size;
};

/// Evaluates every bound whose hypotheses the configuration satisfies and
/// marks attainment. Out-of-range parameters yield applicable = false, never
/// a clamped value.
template <class F>
std::vector<BoundReport> bounds_audit(const SphericalConfig<F>& cfg) {
  std::vector<BoundReport> reports;
  DistanceDistribution<F> dist = inner_product_set(cfg);
  const int s = dist.s();
  DesignProfile<F> profile = design_strength(dist, cfg.n, cfg.m);
  const int t = profile.strength;
  const BigInt size(cfg.n);

  {
    BoundReport r;
    r.name = "absolute_s_distance";
    r.hypothesis = "m=" + std::to_string(cfg.m) + " s=" + std::to_string(s);
    r.applicable = true;
    r.value = absolute_bound_sdist(cfg.m, s);
    r.attained = r.value == size;
    r.witness_size = cfg.n;
    reports.push_back(std::move(r));
  }
  {
    BoundReport r;
    r.name = "design_lower";
    int e = t / 2;
    r.hypothesis = "m=" + std::to_string(cfg.m) + " e=" + std::to_string(e);
    r.applicable = true;
    r.value = design_lower_bound(cfg.m, e);
    r.attained = r.value == size;  // tight design
    r.witness_size = cfg.n;
    reports.push_back(std::move(r));
  }
  {
    BoundReport r;
    r.name = "corollary_strength";
    int i = 2 * s - t;
    r.hypothesis = "m=" + std::to_string(cfg.m) + " s=" + std::to_string(s) +
                   " i=" + std::to_string(i);
    if (i >= 2 && i <= s + 1) {
      r.applicable = true;
      r.value = corollary_bound(cfg.m, s, i);
      r.attained = r.value == size;
      r.witness_size = cfg.n;
    }
    reports.push_back(std::move(r));
  }
  {
    BoundReport r;
    r.name = "main_theorem";
    int i = 2 * s - t;
    r.hypothesis = "m=" + std::to_string(cfg.m) + " s=" + std::to_string(s) +
                   " i=" + std::to_string(i) + " flags from annihilator audit";
    if (i >= 2 && i <= 2 * s && t >= s - 1) {
      AnnihilatorAudit<F> audit = annihilator_coeff_audit(cfg);
      std::vector<int> flags;
      for (int k = 0; k <= s; ++k)
        if (audit.equals_inv_n[std::size_t(k)]) flags.push_back(k);
      r.applicable = true;
      r.value = main_bound(cfg.m, s, i, flags);
      r.attained = r.value == size;
      r.witness_size = cfg.n;
    }
    reports.push_back(std::move(r));
  }
  {
    BoundReport r;
    r.name = "antipodal";
    AntipodalReport anti = antipodal_check(cfg);
    const int d = delta_s(s);
    // strength 2s-2i-1 <=> i = (2s-1-t)/2, integral only for odd t
    int i = (2 * s - 1 - t) % 2 == 0 ? (2 * s - 1 - t) / 2 : -1;
    r.hypothesis = "antipodal=" + std::string(anti.antipodal ? "yes" : "no") +
                   " s=" + std::to_string(s) + " i=" + std::to_string(i);
    if (anti.antipodal && i >= 1 + d && 2 * i <= s + d) {
      r.applicable = true;
      r.value = antipodal_bound(cfg.m, s, i);
      r.attained = r.value == size;
      r.witness_size = cfg.n;
    }
    reports.push_back(std::move(r));
  }
  // A bound violation by an actual configuration falsifies a theorem.
  for (const BoundReport& r : reports)
    if (r.applicable && r.name != "design_lower" && BigInt(cfg.n) > r.value)
      throw ConstructionInvariantViolated("configuration violates " + r.name);
  if (reports[1].applicable && size < reports[1].value)
    throw ConstructionInvariantViolated("configuration violates design_lower");
  return reports;
}

}  // namespace fewdist
