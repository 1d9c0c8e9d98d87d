#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include "fewdist/pointset.hpp"
#include "fewdist/relations.hpp"
#include "fewdist/scalar_io.hpp"

namespace fewdist {

// Points file:
//   field Q              (or: field Q sqrt 5)
//   dim <m>
//   count <n>
//   kind coords|gram
//   <n rows of whitespace-separated scalars, n x m or n x n>
//
// Relations file:
//   classes <s>
//   count <n>
//   <n rows of n integers in 0..s>

using ConfigVariant = std::variant<SphericalConfig<Rational>, SphericalConfig<QuadExt>>;

namespace detail {

inline std::string next_token(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) throw ParseError(std::string("expected ") + what);
  return token;
}

inline void expect_keyword(std::istream& in, const std::string& keyword) {
  std::string token = next_token(in, keyword.c_str());
  if (token != keyword)
    throw ParseError("expected '" + keyword + "', got '" + token + "'");
}

inline long long parse_count(const std::string& token, const char* what) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(token, &pos);
    if (pos != token.size() || v < 0) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + std::string(what) + " '" + token + "'");
  }
}

template <class F>
SphericalConfig<F> read_points_body(std::istream& in, FieldTag tag, int m, long long n,
                                    bool is_gram) {
  const std::size_t cols = is_gram ? std::size_t(n) : std::size_t(m);
  DenseMatrix<F> mat(std::size_t(n), cols);
  for (std::size_t r = 0; r < std::size_t(n); ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      F value = parse_scalar<F>(next_token(in, "scalar"));
      if constexpr (std::is_same_v<F, QuadExt>) {
        if (value.d() != 0 && value.d() != tag.d)
          throw FieldMismatch("scalar in Q(sqrt(" + std::to_string(value.d()) +
                              ")) in a Q(sqrt(" + std::to_string(tag.d) + ")) file");
      }
      mat(r, c) = std::move(value);
    }
  std::string extra;
  if (in >> extra) throw ParseError("trailing content '" + extra + "'");
  if (is_gram) return config_from_gram(std::move(mat), m, tag);
  SphericalConfig<F> cfg = config_from_coords(mat, tag);
  return cfg;
}

}  // namespace detail

inline ConfigVariant read_points(std::istream& in) {
  detail::expect_keyword(in, "field");
  std::string field = detail::next_token(in, "field name");
  if (field != "Q") throw ParseError("unsupported field '" + field + "'");
  FieldTag tag = FieldTag::rational();
  std::string token = detail::next_token(in, "dim");
  if (token == "sqrt") {
    long long d = detail::parse_count(detail::next_token(in, "field parameter"), "d");
    if (d <= 1 || !is_square_free(d))
      throw ParseError("field parameter " + std::to_string(d) +
                       " is not square-free and > 1");
    tag = FieldTag::quadratic(d);
    token = detail::next_token(in, "dim");
  }
  if (token != "dim") throw ParseError("expected 'dim', got '" + token + "'");
  int m = static_cast<int>(detail::parse_count(detail::next_token(in, "dimension"), "dim"));
  detail::expect_keyword(in, "count");
  long long n = detail::parse_count(detail::next_token(in, "count"), "count");
  detail::expect_keyword(in, "kind");
  std::string kind = detail::next_token(in, "kind");
  if (kind != "coords" && kind != "gram")
    throw ParseError("kind must be coords or gram, got '" + kind + "'");
  if (n <= 0) throw ParseError("count must be positive");
  if (tag.kind == FieldTag::Kind::rational)
    return detail::read_points_body<Rational>(in, tag, m, n, kind == "gram");
  return detail::read_points_body<QuadExt>(in, tag, m, n, kind == "gram");
}

namespace detail {

inline void write_field_line(std::ostream& out, FieldTag tag) {
  if (tag.kind == FieldTag::Kind::rational)
    out << "field Q\n";
  else
    out << "field Q sqrt " << tag.d << "\n";
}

}  // namespace detail

template <class F>
void write_points_gram(std::ostream& out, const SphericalConfig<F>& cfg) {
  detail::write_field_line(out, cfg.field);
  out << "dim " << cfg.m << "\n";
  out << "count " << cfg.n << "\n";
  out << "kind gram\n";
  for (std::size_t r = 0; r < cfg.n; ++r) {
    for (std::size_t c = 0; c < cfg.n; ++c) {
      if (c) out << ' ';
      out << to_string(cfg.gram(r, c));
    }
    out << '\n';
  }
}

/// Raw coordinate rows (any common squared norm; readers renormalize).
template <class F>
void write_points_coords(std::ostream& out, const DenseMatrix<F>& coords, FieldTag tag) {
  detail::write_field_line(out, tag);
  out << "dim " << coords.cols() << "\n";
  out << "count " << coords.rows() << "\n";
  out << "kind coords\n";
  for (std::size_t r = 0; r < coords.rows(); ++r) {
    for (std::size_t c = 0; c < coords.cols(); ++c) {
      if (c) out << ' ';
      out << to_string(coords(r, c));
    }
    out << '\n';
  }
}

inline RelationMatrix read_relations(std::istream& in) {
  detail::expect_keyword(in, "classes");
  int s = static_cast<int>(detail::parse_count(detail::next_token(in, "classes"), "classes"));
  detail::expect_keyword(in, "count");
  long long n = detail::parse_count(detail::next_token(in, "count"), "count");
  if (s < 1 || n < 1) throw ParseError("classes and count must be positive");
  RelationMatrix rel(std::size_t(n), s);
  for (std::size_t x = 0; x < std::size_t(n); ++x)
    for (std::size_t y = 0; y < std::size_t(n); ++y) {
      long long c = detail::parse_count(detail::next_token(in, "relation index"), "entry");
      if (c > s) throw ParseError("relation index " + std::to_string(c) + " exceeds s");
      rel.at(x, y) = static_cast<std::uint16_t>(c);
    }
  std::string extra;
  if (in >> extra) throw ParseError("trailing content '" + extra + "'");
  return rel;
}

inline void write_relations(std::ostream& out, const RelationMatrix& rel) {
  out << "classes " << rel.classes << "\n";
  out << "count " << rel.n << "\n";
  for (std::size_t x = 0; x < rel.n; ++x) {
    for (std::size_t y = 0; y < rel.n; ++y) {
      if (y) out << ' ';
      out << rel.at(x, y);
    }
    out << '\n';
  }
}

}  // namespace fewdist
