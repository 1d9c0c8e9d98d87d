#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "fewdist/pointset.hpp"
#include "fewdist/schemes.hpp"

namespace fewdist {
namespace catalog {

/// Extended binary Golay code [24,12,8], built from the cyclic [23,12,7] code
/// with generator polynomial x^11+x^10+x^6+x^5+x^4+x^2+1 plus an overall
/// parity bit (bit 23). All 4096 words are materialized as 24-bit masks and
/// the construction is validated against the known weight enumerator
/// 1 + 759 x^8 + 2576 x^12 + 759 x^16 + x^24.
struct GolayCode {
  std::array<std::uint32_t, 12> generator{};
  std::vector<std::uint32_t> codewords;  // sorted

  bool contains(std::uint32_t mask) const {
    return std::binary_search(codewords.begin(), codewords.end(), mask);
  }
  std::vector<std::uint32_t> octads() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t w : codewords)
      if (std::popcount(w) == 8) out.push_back(w);
    return out;
  }
};

inline const GolayCode& golay() {
  static const GolayCode code = [] {
    GolayCode c;
    constexpr std::uint32_t g = (1u << 0) | (1u << 2) | (1u << 4) | (1u << 5) |
                                (1u << 6) | (1u << 10) | (1u << 11);
    for (int i = 0; i < 12; ++i) {
      std::uint32_t row = g << i;  // x^i g(x), degree <= 22
      if (std::popcount(row) % 2 == 1) row |= 1u << 23;
      c.generator[std::size_t(i)] = row;
    }
    c.codewords.reserve(4096);
    for (std::uint32_t msg = 0; msg < 4096; ++msg) {
      std::uint32_t word = 0;
      for (int i = 0; i < 12; ++i)
        if (msg & (1u << i)) word ^= c.generator[std::size_t(i)];
      c.codewords.push_back(word);
    }
    std::sort(c.codewords.begin(), c.codewords.end());
    std::array<int, 25> enumerator{};
    for (std::uint32_t w : c.codewords) ++enumerator[std::size_t(std::popcount(w))];
    const std::array<int, 25> expected = [] {
      std::array<int, 25> e{};
      e[0] = 1; e[8] = 759; e[12] = 2576; e[16] = 759; e[24] = 1;
      return e;
    }();
    if (enumerator != expected)
      throw ConstructionInvariantViolated("Golay weight enumerator mismatch");
    return c;
  }();
  return code;
}

using LeechVector = std::array<std::int8_t, 24>;

/// The 196560 minimal vectors of the Leech lattice in the integer scaling
/// where the squared norm is 32, sorted lexicographically.
struct LatticeVectorSet {
  std::vector<LeechVector> vectors;
  static constexpr int norm_sq = 32;
};

/// Standard congruence membership test for the integer-scaled Leech lattice:
/// all coordinates share a parity m, the positions with x_i = 2+m (mod 4)
/// form a Golay support, and the coordinate sum is 4m (mod 8).
inline bool is_leech_point(const LeechVector& x, const GolayCode& code) {
  int parity = ((x[0] % 2) + 2) % 2;
  std::uint32_t support = 0;
  int sum = 0;
  for (int i = 0; i < 24; ++i) {
    int v = x[std::size_t(i)];
    if (((v % 2) + 2) % 2 != parity) return false;
    if (((v % 4) + 4) % 4 == (2 + parity) % 4) support |= 1u << i;
    sum += v;
  }
  if (!code.contains(support)) return false;
  return ((sum - 4 * parity) % 8 + 8) % 8 == 0;
}

inline const LatticeVectorSet& leech_minimal_vectors() {
  static const LatticeVectorSet set = [] {
    const GolayCode& code = golay();
    LatticeVectorSet s;
    s.vectors.reserve(196560);

    // Shape (+-4^2, 0^22)
    std::size_t shape_a = 0;
    for (int i = 0; i < 24; ++i)
      for (int j = i + 1; j < 24; ++j)
        for (int si = -1; si <= 1; si += 2)
          for (int sj = -1; sj <= 1; sj += 2) {
            LeechVector x{};
            x[std::size_t(i)] = static_cast<std::int8_t>(4 * si);
            x[std::size_t(j)] = static_cast<std::int8_t>(4 * sj);
            if (is_leech_point(x, code)) {
              s.vectors.push_back(x);
              ++shape_a;
            }
          }

    // Shape (+-2^8, 0^16) on octads
    std::size_t shape_b = 0;
    for (std::uint32_t octad : code.octads()) {
      std::array<int, 8> pos{};
      int k = 0;
      for (int i = 0; i < 24; ++i)
        if (octad & (1u << i)) pos[std::size_t(k++)] = i;
      for (int signs = 0; signs < 256; ++signs) {
        LeechVector x{};
        for (int b = 0; b < 8; ++b)
          x[std::size_t(pos[std::size_t(b)])] =
              static_cast<std::int8_t>((signs >> b) & 1 ? -2 : 2);
        if (is_leech_point(x, code)) {
          s.vectors.push_back(x);
          ++shape_b;
        }
      }
    }

    // Shape (-+3, +-1^23): start from 1 - 2c and shift one coordinate by 4
    // toward the sign that keeps the congruences.
    std::size_t shape_c = 0;
    for (std::uint32_t word : code.codewords) {
      LeechVector base;
      for (int i = 0; i < 24; ++i)
        base[std::size_t(i)] = static_cast<std::int8_t>(word & (1u << i) ? -1 : 1);
      for (int p = 0; p < 24; ++p) {
        LeechVector x = base;
        x[std::size_t(p)] = static_cast<std::int8_t>(
            x[std::size_t(p)] + (word & (1u << p) ? 4 : -4));
        if (is_leech_point(x, code)) {
          s.vectors.push_back(x);
          ++shape_c;
        }
      }
    }

    if (shape_a != 1104 || shape_b != 97152 || shape_c != 98304 ||
        s.vectors.size() != 196560)
      throw ConstructionInvariantViolated(
          "Leech shape counts " + std::to_string(shape_a) + "+" +
          std::to_string(shape_b) + "+" + std::to_string(shape_c) + " != 196560");
    for (const LeechVector& v : s.vectors) {
      int norm = 0;
      for (int i = 0; i < 24; ++i) norm += int(v[std::size_t(i)]) * v[std::size_t(i)];
      if (norm != LatticeVectorSet::norm_sq)
        throw ConstructionInvariantViolated("minimal vector with norm != 32");
    }
    std::sort(s.vectors.begin(), s.vectors.end());
    return s;
  }();
  return set;
}

inline int leech_dot(const LeechVector& a, const LeechVector& b) {
  int acc = 0;
  for (int i = 0; i < 24; ++i) acc += int(a[std::size_t(i)]) * b[std::size_t(i)];
  return acc;
}

/// The k-th pair (u, v) with normalized inner product -1/4, scanning ordered
/// index pairs (i, j), i < j, in lexicographic order.
inline std::pair<std::size_t, std::size_t> leech_admissible_pair(std::size_t index) {
  const LatticeVectorSet& set = leech_minimal_vectors();
  std::size_t seen = 0;
  for (std::size_t i = 0; i < set.vectors.size(); ++i)
    for (std::size_t j = i + 1; j < set.vectors.size(); ++j)
      if (leech_dot(set.vectors[i], set.vectors[j]) == -8 && seen++ == index)
        return {i, j};
  throw RangeError("no admissible (u, v) pair with that index");
}

/// The 2025-point spherical 3-distance set in S^21: the slice
/// {x : (x,u) = 1/2, (x,v) = 0} of the minimal vectors, with the span{u,v}
/// component removed and the Gram renormalized.
inline SphericalConfig<Rational> leech_derived_2025(std::size_t pair_index = 0) {
  const LatticeVectorSet& set = leech_minimal_vectors();
  auto [ui, vi] = leech_admissible_pair(pair_index);
  DenseMatrix<long long> coords(set.vectors.size(), 24);
  for (std::size_t i = 0; i < set.vectors.size(); ++i)
    for (std::size_t c = 0; c < 24; ++c) coords(i, c) = set.vectors[i][c];
  SectionConstraint<long long> cu, cv;
  cu.vec.assign(set.vectors[ui].begin(), set.vectors[ui].end());
  cu.value = Rational(1, 2);
  cv.vec.assign(set.vectors[vi].begin(), set.vectors[vi].end());
  cv.value = Rational(0);
  SectionResult<long long> section =
      affine_section(coords, static_cast<long long>(LatticeVectorSet::norm_sq), {cu, cv});
  if (section.config.n != 2025)
    throw ConstructionInvariantViolated("Leech section has " +
                                        std::to_string(section.config.n) + " points");
  return std::move(section.config);
}

/// The 20 dodecahedron vertices over Q(sqrt(5)): the cube (+-1,+-1,+-1) and
/// the cyclic shifts of (0, +-1/phi, +-phi), common squared norm 3.
inline SphericalConfig<QuadExt> dodecahedron() {
  QuadExt phi(Rational(1, 2), Rational(1, 2), 5);
  QuadExt phi_inv(Rational(-1, 2), Rational(1, 2), 5);  // 1/phi = phi - 1
  DenseMatrix<QuadExt> coords(20, 3);
  std::size_t row = 0;
  for (int sx = -1; sx <= 1; sx += 2)
    for (int sy = -1; sy <= 1; sy += 2)
      for (int sz = -1; sz <= 1; sz += 2) {
        coords(row, 0) = QuadExt(sx);
        coords(row, 1) = QuadExt(sy);
        coords(row, 2) = QuadExt(sz);
        ++row;
      }
  for (int shift = 0; shift < 3; ++shift)
    for (int sa = -1; sa <= 1; sa += 2)
      for (int sb = -1; sb <= 1; sb += 2) {
        std::array<QuadExt, 3> v{QuadExt(0), QuadExt(sa) * phi_inv, QuadExt(sb) * phi};
        for (int c = 0; c < 3; ++c)
          coords(row, std::size_t((c + shift) % 3)) = v[std::size_t(c)];
        ++row;
      }
  return config_from_coords(coords, FieldTag::quadratic(5));
}

/// Regular simplex: n = m+1 unit vectors at pairwise inner product -1/m.
inline SphericalConfig<Rational> simplex(int m) {
  if (m < 1) throw RangeError("simplex needs m >= 1");
  std::size_t n = std::size_t(m) + 1;
  DenseMatrix<Rational> gram(n, n, Rational(-1, m));
  for (std::size_t i = 0; i < n; ++i) gram(i, i) = Rational(1);
  return config_from_gram(std::move(gram), m, FieldTag::rational());
}

/// Cross-polytope: the 2m signed standard basis vectors.
inline SphericalConfig<Rational> cross_polytope(int m) {
  if (m < 2) throw RangeError("cross_polytope needs m >= 2");
  DenseMatrix<Rational> coords(2 * std::size_t(m), std::size_t(m));
  for (int i = 0; i < m; ++i) {
    coords(2 * std::size_t(i), std::size_t(i)) = Rational(1);
    coords(2 * std::size_t(i) + 1, std::size_t(i)) = Rational(-1);
  }
  return config_from_coords(coords, FieldTag::rational());
}

/// Triangular scheme T(k): vertices are the 2-subsets of [k]; relation 1 pairs
/// subsets sharing one point (the line graph of K_k), relation 2 disjoint ones.
inline AssociationScheme triangular(int k) {
  if (k < 4) throw RangeError("triangular scheme needs k >= 4");
  std::vector<std::pair<int, int>> verts;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) verts.emplace_back(a, b);
  const std::size_t n = verts.size();
  RelationMatrix rel(n, 2);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      int common = (verts[x].first == verts[y].first) + (verts[x].first == verts[y].second) +
                   (verts[x].second == verts[y].first) + (verts[x].second == verts[y].second);
      rel.at(x, y) = common == 1 ? 1 : 2;
    }
  return verify_scheme(std::move(rel));
}

/// Cycle scheme of the n-gon: classes by circular distance 1..floor(n/2).
inline AssociationScheme cycle(int n) {
  if (n < 3) throw RangeError("cycle scheme needs n >= 3");
  RelationMatrix rel(std::size_t(n), n / 2);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      int d = std::abs(x - y);
      d = std::min(d, n - d);
      rel.at(std::size_t(x), std::size_t(y)) = static_cast<std::uint16_t>(d);
    }
  return verify_scheme(std::move(rel));
}

}  // namespace catalog
}  // namespace fewdist
