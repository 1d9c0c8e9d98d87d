#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fewdist/util.hpp"

namespace fewdist {

/// Partition of X x X into classes 0..s, class 0 being the diagonal.
struct RelationMatrix {
  std::size_t n = 0;
  int classes = 0;  // s: number of off-diagonal classes
  std::vector<std::uint16_t> rel;

  RelationMatrix() = default;
  RelationMatrix(std::size_t n, int classes)
      : n(n), classes(classes), rel(n * n, 0) {}

  std::uint16_t at(std::size_t x, std::size_t y) const { return rel[x * n + y]; }
  std::uint16_t& at(std::size_t x, std::size_t y) { return rel[x * n + y]; }
};

/// Intersection numbers p_{i,j}^k of a verified partition: the number of z
/// with (x,z) in R_i and (z,y) in R_j depends only on the class of (x,y).
struct IntersectionNumbers {
  int classes = 0;  // s
  std::vector<std::int64_t> p;  // (s+1)^3, indexed [i][j][k]
  std::vector<std::int64_t> valency;

  std::int64_t at(int i, int j, int k) const {
    const int t = classes + 1;
    return p[std::size_t((i * t + j) * t + k)];
  }
};

namespace detail {

/// Rows of one 0/1 class matrix packed into 64-bit words.
struct BitRows {
  std::size_t n = 0, words = 0;
  std::vector<std::uint64_t> bits;
  explicit BitRows(std::size_t n) : n(n), words((n + 63) / 64), bits(n * words, 0) {}
  void set(std::size_t x, std::size_t y) {
    bits[x * words + y / 64] |= std::uint64_t(1) << (y % 64);
  }
  const std::uint64_t* row(std::size_t x) const { return bits.data() + x * words; }
};

inline std::int64_t intersect_count(const std::uint64_t* a, const std::uint64_t* b,
                                    std::size_t words) {
  std::int64_t c = 0;
  for (std::size_t w = 0; w < words; ++w) c += std::popcount(a[w] & b[w]);
  return c;
}

}  // namespace detail

struct SchemeWitness {
  int axiom = 0;
  std::string detail;
};

/// Computes intersection numbers if the partition satisfies the Bose-Mesner
/// closure axiom (A_i A_j in span{A_0..A_s}), verified exactly over every
/// ordered pair via packed-bitset popcounts. On failure returns nullopt and
/// fills the witness.
inline std::optional<IntersectionNumbers> intersection_numbers(
    const RelationMatrix& r, SchemeWitness* witness = nullptr) {
  const std::size_t n = r.n;
  const int s = r.classes;
  const int t = s + 1;
  std::vector<detail::BitRows> rows;
  rows.reserve(std::size_t(t));
  for (int i = 0; i <= s; ++i) rows.emplace_back(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) rows[r.at(x, y)].set(x, y);

  // First pair of each class in row-major order, the deterministic reference
  // the constancy check compares against.
  std::vector<std::size_t> first_x(std::size_t(t), n), first_y(std::size_t(t), n);
  {
    int remaining = t;
    for (std::size_t x = 0; x < n && remaining; ++x)
      for (std::size_t y = 0; y < n && remaining; ++y) {
        int k = r.at(x, y);
        if (first_x[std::size_t(k)] == n) {
          first_x[std::size_t(k)] = x;
          first_y[std::size_t(k)] = y;
          --remaining;
        }
      }
  }

  IntersectionNumbers out;
  out.classes = s;
  out.p.assign(std::size_t(t) * t * t, 0);
  out.valency.assign(std::size_t(t), 0);
  for (std::size_t y = 0; y < n; ++y) ++out.valency[r.at(0, y)];

  auto set_p = [&](int i, int j, int k, std::int64_t v) {
    out.p[std::size_t((i * t + j) * t + k)] = v;
  };
  // The diagonal class multiplies trivially: p_{0,j}^k = p_{j,0}^k = delta_{jk}.
  for (int j = 0; j <= s; ++j)
    for (int k = 0; k <= s; ++k) {
      set_p(0, j, k, j == k ? 1 : 0);
      set_p(j, 0, k, j == k ? 1 : 0);
    }

  std::atomic<bool> ok{true};
  SchemeWitness local;
  std::mutex witness_mu;
  for (int i = 1; i <= s && ok; ++i) {
    for (int j = 1; j <= s && ok; ++j) {
      std::vector<std::int64_t> expected(std::size_t(t), -1);
      for (int k = 0; k <= s; ++k) {
        if (first_x[std::size_t(k)] == n) continue;  // empty class: caught by axioms
        expected[std::size_t(k)] = detail::intersect_count(
            rows[std::size_t(i)].row(first_x[std::size_t(k)]),
            rows[std::size_t(j)].row(first_y[std::size_t(k)]), rows[0].words);
      }
      parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t x = begin; x < end && ok; ++x) {
          const std::uint64_t* ri = rows[std::size_t(i)].row(x);
          for (std::size_t y = 0; y < n; ++y) {
            std::int64_t c = detail::intersect_count(
                ri, rows[std::size_t(j)].row(y), rows[0].words);
            if (c != expected[r.at(x, y)]) {
              std::lock_guard<std::mutex> lock(witness_mu);
              if (ok.exchange(false)) {
                local.axiom = 4;
                local.detail = "A_" + std::to_string(i) + "A_" + std::to_string(j) +
                               " not constant on class " +
                               std::to_string(r.at(x, y)) + " at pair (" +
                               std::to_string(x) + "," + std::to_string(y) + ")";
              }
              return;
            }
          }
        }
      });
      if (!ok) break;
      for (int k = 0; k <= s; ++k)
        set_p(i, j, k, expected[std::size_t(k)] < 0 ? 0 : expected[std::size_t(k)]);
    }
  }
  if (!ok) {
    if (witness) *witness = local;
    return std::nullopt;
  }
  // Commutativity comes with symmetry, but assert it rather than assume it.
  for (int i = 0; i <= s; ++i)
    for (int j = 0; j <= s; ++j)
      for (int k = 0; k <= s; ++k)
        if (out.at(i, j, k) != out.at(j, i, k)) {
          if (witness)
            *witness = SchemeWitness{
                4, "p_{i,j}^k != p_{j,i}^k at i=" + std::to_string(i) + " j=" +
                       std::to_string(j) + " k=" + std::to_string(k)};
          return std::nullopt;
        }
  return out;
}

}  // namespace fewdist
