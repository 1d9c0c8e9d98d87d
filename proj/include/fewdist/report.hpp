#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fewdist/bounds.hpp"
#include "fewdist/io.hpp"
#include "fewdist/schemes.hpp"

namespace fewdist {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json big_to_json(const BigInt& v) {
  // Values beyond int64 are emitted as strings to stay lossless.
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

template <class F>
Json scalar_list(const std::vector<F>& values) {
  Json arr = Json::array();
  for (const F& v : values) arr.push_back(to_string(v));
  return arr;
}

inline Json bound_report_json(const BoundReport& r) {
  Json j;
  j["name"] = r.name;
  j["hypothesis"] = r.hypothesis;
  j["applicable"] = r.applicable;
  if (r.applicable) {
    j["value"] = big_to_json(r.value);
    if (r.attained) j["attained"] = *r.attained;
    if (r.witness_size) j["witness_size"] = *r.witness_size;
  }
  return j;
}

}  // namespace detail

/// Scheme certificate: multiplicities, the full Krein tensor, B_1*, the
/// orderings found, l, SHO design tests, the S0 audit, and the spherical
/// embedding summary (cross-validated against the Krein-side design test).
inline Json scheme_report(const AssociationScheme& scheme) {
  Json j;
  j["n"] = scheme.n;
  j["s"] = scheme.s;
  SpectralData spectral = idempotents(scheme);
  j["multiplicities"] = spectral.mult;
  KreinData kd = krein(spectral);
  const int s = kd.s;
  {
    Json tensor = Json::array();
    for (int i = 0; i <= s; ++i) {
      Json plane = Json::array();
      for (int jj = 0; jj <= s; ++jj) {
        Json row = Json::array();
        for (int k = 0; k <= s; ++k) row.push_back(to_string(kd.at(i, jj, k)));
        plane.push_back(row);
      }
      tensor.push_back(plane);
    }
    j["krein_tensor"] = tensor;
  }
  std::vector<Ordering> orderings = q_polynomial_orderings(kd);
  j["orderings"] = orderings;
  if (orderings.empty()) {
    j["q_polynomial"] = false;
    return j;
  }
  j["q_polynomial"] = true;
  QPolyStructure qp = apply_ordering(kd, orderings.front());
  {
    Json b1 = Json::array();
    for (int row = 0; row <= s; ++row) {
      Json r = Json::array();
      for (int col = 0; col <= s; ++col)
        r.push_back(to_string(qp.b1star(std::size_t(row), std::size_t(col))));
      b1.push_back(r);
    }
    j["B1star"] = b1;
  }
  j["l"] = qp.l;
  j["ordered_multiplicities"] = qp.mult;

  EmbeddingInfo embedding = embedding_gram(spectral, qp.ordering[1]);
  Json emb;
  emb["m1"] = embedding.m1;
  emb["distance_values"] = detail::scalar_list(embedding.dist.values);
  emb["distance_counts"] = embedding.dist.counts;
  std::optional<int> embedding_strength;
  if (embedding.m1 >= 2) {
    DesignProfile<Rational> profile =
        design_strength(embedding.dist, embedding.n, embedding.m1);
    embedding_strength = profile.strength;
    emb["strength"] = profile.strength;
  }
  j["embedding"] = emb;

  {
    Json sho = Json::array();
    for (int t = 1; t <= 2 * s + 1; ++t) {
      Json entry;
      entry["t"] = t;
      bool krein_side = sho_design_check(qp, t);
      entry["design"] = krein_side;
      if (embedding_strength &&
          krein_side != (t <= *embedding_strength))
        throw ConstructionInvariantViolated(
            "Krein-side and embedding-side design tests disagree at t = " +
            std::to_string(t));
      sho.push_back(entry);
    }
    j["sho_results"] = sho;
  }

  S0Report s0 = s0_audit(qp, spectral);
  j["s0_case"] = s0.case_tag;
  j["s0_bound"] = detail::big_to_json(s0.bound);
  if (s0.h_sum) j["s0_bound_h_sum"] = detail::big_to_json(*s0.h_sum);
  j["s0_attained"] = s0.attained;
  if (s0.attained) {
    Json pm = Json::array();
    for (const BigInt& v : s0.predicted_mult) pm.push_back(detail::big_to_json(v));
    j["predicted_multiplicities"] = pm;
    j["predicted_multiplicities_match"] = s0.mult_match;
    j["equality_design_t"] = s0.design_t;
    j["equality_design_ok"] = s0.design_ok;
  }

  if (scheme.n <= exact_rank_cap()) {
    HadamardRankReport h = hadamard_rank_check(spectral, std::min(3, s + 1), qp.ordering[1]);
    Json hj;
    hj["ranks"] = h.ranks;
    Json hb = Json::array();
    for (const BigInt& b : h.bounds) hb.push_back(detail::big_to_json(b));
    hj["bounds"] = hb;
    hj["bound_ok"] = h.bound_ok;
    hj["downward_ok"] = h.downward_ok;
    j["hadamard_ranks"] = hj;
  }
  return j;
}

struct AnalyzeOptions {
  int max_degree = 0;     // 0: default strength ceiling 2s+1
  bool with_scheme = true;
};

/// Full audit certificate for a configuration: distance data, design profile,
/// annihilator expansion, every applicable bound, and (when the distance
/// classes close) the scheme certificate.
template <class F>
Json analyze_report(const SphericalConfig<F>& cfg, const AnalyzeOptions& options,
                    const std::string& input_digest) {
  Json j;
  j["toolchain"] = kVersion;
  if (!input_digest.empty()) j["input_digest"] = input_digest;
  j["n"] = cfg.n;
  j["m"] = cfg.m;
  j["field"] = cfg.field.kind == FieldTag::Kind::rational
                   ? std::string("Q")
                   : "Q(sqrt " + std::to_string(cfg.field.d) + ")";
  DistanceDistribution<F> dist = inner_product_set(cfg);
  const int s = dist.s();
  j["distance_values"] = detail::scalar_list(dist.values);
  j["distance_counts"] = dist.counts;
  DesignProfile<F> profile = design_strength(dist, cfg.n, cfg.m, options.max_degree);
  j["strength"] = profile.strength;
  j["moments"] = detail::scalar_list(profile.moments);

  std::vector<F> coeffs = expand_in_gegenbauer(annihilator(dist.values), cfg.m);
  coeffs.resize(std::size_t(s) + 1, F());
  j["annihilator_coeffs"] = detail::scalar_list(coeffs);

  Json flags;
  flags["antipodal"] = antipodal_check(cfg).antipodal;
  {
    F inv_n = F(Rational(BigInt(1), BigInt(cfg.n)));
    Json equal = Json::array();
    for (int k = 0; k <= s; ++k)
      if (coeffs[std::size_t(k)] == inv_n) equal.push_back(k);
    flags["coeff_equals_inv_n"] = equal;
  }
  if (profile.strength >= s - 1) {
    AnnihilatorAudit<F> audit = annihilator_coeff_audit(cfg);
    flags["lemma_inv_n_ok"] = audit.lemma_inv_n_ok;
    flags["remark_prefix_ok"] = audit.remark_prefix_ok;
  }
  j["flags"] = flags;

  {
    Json arr = Json::array();
    for (const BoundReport& r : bounds_audit(cfg)) arr.push_back(detail::bound_report_json(r));
    j["bounds"] = arr;
  }

  if (options.with_scheme && cfg.n >= 2) {
    DistanceClasses dc = from_distance_classes(cfg);
    if (dc.scheme) {
      try {
        j["scheme"] = scheme_report(*dc.scheme);
      } catch (const NonRationalSpectrum& e) {
        // The classes close into a scheme, but its idempotents live outside Q
        // (e.g. the dodecahedron graph); report instead of failing the audit.
        j["scheme_note"] = e.what();
      }
    } else if (dc.failure) {
      Json fail;
      fail["axiom"] = dc.failure->axiom;
      fail["witness"] = dc.failure->detail;
      j["scheme_failure"] = fail;
    }
  }
  return j;
}

inline Json analyze_report(const ConfigVariant& cfg, const AnalyzeOptions& options,
                           const std::string& input_digest) {
  return std::visit(
      [&](const auto& c) { return analyze_report(c, options, input_digest); }, cfg);
}

}  // namespace fewdist
