#pragma once

#include <string>
#include <string_view>

#include "fewdist/quadext.hpp"

namespace fewdist {

// Textual scalar grammar shared by every file format:
//   rationals            p  or  p/q
//   quadratic elements   p/q+r/s*sqrt(d)   (also p/q-r/s*sqrt(d), r/s*sqrt(d))
// Whitespace inside a token is not allowed; tokens are whitespace-separated.

inline std::string to_string(const Rational& r) {
  std::string s = r.numerator().str();
  if (!r.is_integer()) s += "/" + r.denominator().str();
  return s;
}

inline std::string to_string(const QuadExt& q) {
  if (q.is_rational()) return to_string(q.rational_part());
  std::string s;
  const Rational& b = q.sqrt_part();
  if (!q.rational_part().is_zero()) {
    s = to_string(q.rational_part());
    s += b.sign() < 0 ? "-" : "+";
    s += to_string(b.abs());
  } else {
    s = to_string(b);
  }
  s += "*sqrt(" + std::to_string(q.d()) + ")";
  return s;
}

namespace detail {

inline std::string strip_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') out.push_back(c);
  return out;
}

inline bool parse_big_int(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') return false;
  out = BigInt(std::string(s));
  return true;
}

}  // namespace detail

/// The grammar is whitespace-insensitive: embedded spaces are ignored.
inline Rational parse_rational(std::string_view raw) {
  std::string token = detail::strip_whitespace(raw);
  std::size_t slash = token.find('/');
  BigInt num, den = 1;
  bool ok = slash == std::string_view::npos
                ? detail::parse_big_int(token, num)
                : detail::parse_big_int(std::string_view(token).substr(0, slash), num) &&
                      detail::parse_big_int(std::string_view(token).substr(slash + 1), den);
  if (!ok) throw ParseError("bad rational token '" + std::string(raw) + "'");
  return Rational(std::move(num), std::move(den));
}

/// Parses the full grammar; plain rational tokens yield a field-agnostic value.
inline QuadExt parse_quadext(std::string_view raw) {
  std::string stripped = detail::strip_whitespace(raw);
  std::string_view token(stripped);
  std::size_t star = token.find("*sqrt(");
  if (star == std::string_view::npos) return QuadExt(parse_rational(token));
  if (token.back() != ')')
    throw ParseError("bad quadratic token '" + std::string(raw) + "'");
  std::string_view dpart = token.substr(star + 6, token.size() - star - 7);
  BigInt d;
  if (!detail::parse_big_int(dpart, d) || d <= 1)
    throw ParseError("bad field parameter in '" + std::string(token) + "'");
  std::string_view head = token.substr(0, star);
  // Split "a+b" / "a-b" at the last sign that follows a digit; absent that,
  // the whole head is the sqrt coefficient.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if ((head[i] == '+' || head[i] == '-') && head[i - 1] >= '0' && head[i - 1] <= '9') {
      split = i;
      break;
    }
  }
  Rational a, b;
  if (split == std::string_view::npos) {
    b = parse_rational(head);
  } else {
    a = parse_rational(head.substr(0, split));
    b = parse_rational(head.substr(split + 1));
    if (head[split] == '-') b = -b;
  }
  return QuadExt(std::move(a), std::move(b), static_cast<std::int64_t>(d));
}

template <class F>
F parse_scalar(std::string_view token);

template <>
inline Rational parse_scalar<Rational>(std::string_view token) {
  if (token.find("sqrt") != std::string_view::npos)
    throw FieldMismatch("quadratic token '" + std::string(token) + "' in a rational context");
  return parse_rational(token);
}

template <>
inline QuadExt parse_scalar<QuadExt>(std::string_view token) {
  return parse_quadext(token);
}

}  // namespace fewdist
