#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fewdist {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr const char* kVersion = "fewdist 0.1.0";

/// Error category used by the CLI exit-code contract: `input` covers malformed
/// or mathematically inapplicable inputs (exit 1), `invariant` covers violated
/// mathematical invariants, which signal a bug or a broken construction rather
/// than a user mistake (exit 2).
enum class ErrorKind { input, invariant };

struct Error : std::runtime_error {
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), kind(kind), name(std::move(name)) {}
  ErrorKind kind;
  std::string name;
};

#define FEWDIST_DEFINE_ERROR(NAME, KIND)              \
  struct NAME : Error {                               \
    explicit NAME(const std::string& what)            \
        : Error(ErrorKind::KIND, #NAME, what) {}      \
  }

FEWDIST_DEFINE_ERROR(ZeroDenominator, input);
FEWDIST_DEFINE_ERROR(DivisionByZero, input);
FEWDIST_DEFINE_ERROR(FieldMismatch, input);
FEWDIST_DEFINE_ERROR(ParseError, input);
FEWDIST_DEFINE_ERROR(RangeError, input);
FEWDIST_DEFINE_ERROR(DegenerateValue, input);
FEWDIST_DEFINE_ERROR(NonUnitNorm, input);
FEWDIST_DEFINE_ERROR(NotSymmetric, input);
FEWDIST_DEFINE_ERROR(NotPositiveSemidefinite, input);
FEWDIST_DEFINE_ERROR(SizeLimitExceeded, input);
FEWDIST_DEFINE_ERROR(PreconditionViolated, input);
FEWDIST_DEFINE_ERROR(NotADesign, input);
FEWDIST_DEFINE_ERROR(StrengthTooLow, input);
FEWDIST_DEFINE_ERROR(EmptySection, input);
FEWDIST_DEFINE_ERROR(InconsistentNorm, input);
FEWDIST_DEFINE_ERROR(NotQPolynomial, input);
FEWDIST_DEFINE_ERROR(RepeatedRows, input);
FEWDIST_DEFINE_ERROR(NonConstantDiagonal, input);
FEWDIST_DEFINE_ERROR(NegativeKrein, invariant);
FEWDIST_DEFINE_ERROR(ConstructionInvariantViolated, invariant);

/// Scheme-axiom failure. `axiom` is 1..4, `witness` names the offending
/// vertices/classes.
struct NotAScheme : Error {
  NotAScheme(int axiom, std::string witness)
      : Error(ErrorKind::input, "NotAScheme",
              "axiom " + std::to_string(axiom) + " fails (" + witness + ")"),
        axiom(axiom),
        witness(std::move(witness)) {}
  int axiom;
  std::string witness;
};

/// The Bose-Mesner algebra does not split over Q. `factor_degrees` lists the
/// degrees of the minimal-polynomial factors that could not be split further.
struct NonRationalSpectrum : Error {
  explicit NonRationalSpectrum(std::vector<int> degrees)
      : Error(ErrorKind::input, "NonRationalSpectrum", describe(degrees)),
        factor_degrees(std::move(degrees)) {}
  std::vector<int> factor_degrees;

 private:
  static std::string describe(const std::vector<int>& degrees) {
    std::string s = "minimal polynomial has non-split factors of degree";
    for (int d : degrees) s += " " + std::to_string(d);
    return s;
  }
};

inline BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

/// Cap for exact (Bareiss) rank computations; matrices larger than this raise
/// SizeLimitExceeded unless the cap is lifted via FEWDIST_RANK_CAP or the CLI
/// --allow-large-exact flag.
inline std::atomic<std::size_t>& exact_rank_cap() {
  static std::atomic<std::size_t> cap = [] {
    if (const char* env = std::getenv("FEWDIST_RANK_CAP")) {
      char* end = nullptr;
      unsigned long v = std::strtoul(env, &end, 10);
      if (end && *end == '\0' && v > 0) return std::size_t(v);
    }
    return std::size_t(512);
  }();
  return cap;
}

inline std::atomic<unsigned>& worker_count() {
  static std::atomic<unsigned> n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

/// Runs fn(begin, end) over disjoint index ranges covering [0, count). Results
/// must be written to disjoint locations; the split is deterministic, so exact
/// arithmetic yields bitwise-identical output for any worker count.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  unsigned workers = worker_count().load();
  if (workers <= 1 || count < 2048) {
    fn(std::size_t(0), count);
    return;
  }
  workers = std::min<std::size_t>(workers, count);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : threads) t.join();
}

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string to_hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[std::size_t(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace fewdist
