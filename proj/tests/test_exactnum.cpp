#include <random>

#include "doctest.h"
#include "fewdist/quadext.hpp"
#include "fewdist/rational.hpp"
#include "fewdist/scalar_io.hpp"

using namespace fewdist;

namespace {

Rational rand_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-40, 40);
  std::uniform_int_distribution<int> den(1, 12);
  return Rational(num(rng), den(rng));
}

QuadExt rand_quadext(std::mt19937& rng, std::int64_t d) {
  return QuadExt(rand_rational(rng), rand_rational(rng), d);
}

}  // namespace

TEST_SUITE("exactnum") {

TEST_CASE("canonicalize reduces, normalizes sign, and is idempotent") {
  CHECK(canonicalize(2, 4) == Rational(1, 2));
  CHECK(canonicalize(3, -6) == Rational(-1, 2));
  CHECK(canonicalize(0, 7) == Rational(0));
  CHECK(canonicalize(0, 7).denominator() == 1);
  Rational r = canonicalize(-36, 84);
  CHECK(canonicalize(r.numerator(), r.denominator()) == r);
  CHECK(r.denominator() > 0);
  CHECK(gcd(BigInt(abs(r.numerator())), r.denominator()) == 1);
  CHECK_THROWS_AS(canonicalize(1, 0), ZeroDenominator);
}

TEST_CASE("rational ordering and sign are exact") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 3) > Rational(-1, 2));
  CHECK(sign(Rational(1, 2)) == 1);
  CHECK(sign(Rational(0)) == 0);
  CHECK(sign(Rational(-7, 3)) == -1);
}

TEST_CASE("quadext sign decides via a^2 versus b^2 d") {
  CHECK(sign(QuadExt(Rational(1, 2), Rational(0), 5)) == 1);
  // -1 + sqrt(5) > 0 since 5 > 1
  CHECK(sign(QuadExt(Rational(-1), Rational(1), 5)) == 1);
  // 2 - sqrt(5) < 0 since 4 < 5
  CHECK(sign(QuadExt(Rational(2), Rational(-1), 5)) == -1);
  CHECK(sign(QuadExt()) == 0);
}

TEST_CASE("golden ratio identities") {
  QuadExt phi(Rational(1, 2), Rational(1, 2), 5);
  QuadExt phi_minus_1(Rational(-1, 2), Rational(1, 2), 5);
  CHECK(phi * phi_minus_1 == QuadExt(1));
  QuadExt root5(Rational(0), Rational(1), 5);
  CHECK(root5 * root5 == QuadExt(5));
  QuadExt conj(Rational(1, 2), Rational(-1, 2), 5);
  CHECK(phi + conj == QuadExt(1));
}

TEST_CASE("quadext division uses the conjugate and rejects zero") {
  QuadExt x(Rational(3), Rational(2), 5);
  QuadExt y(Rational(1), Rational(1), 5);
  CHECK(x / y * y == x);
  CHECK_THROWS_AS(x / QuadExt(), DivisionByZero);
  QuadExt other_field(Rational(1), Rational(1), 2);
  CHECK_THROWS_AS(x + other_field, FieldMismatch);
}

TEST_CASE("constructor rejects non-square-free or tiny d") {
  CHECK_THROWS_AS(QuadExt(Rational(1), Rational(1), 4), FieldMismatch);
  CHECK_THROWS_AS(QuadExt(Rational(1), Rational(1), 12), FieldMismatch);
  CHECK_THROWS_AS(QuadExt(Rational(1), Rational(1), 1), FieldMismatch);
  CHECK_NOTHROW(QuadExt(Rational(1), Rational(1), 10));
}

TEST_CASE("field axioms on randomized inputs") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    Rational a = rand_rational(rng), b = rand_rational(rng), c = rand_rational(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == Rational(0));
    if (!a.is_zero()) CHECK(a * a.reciprocal() == Rational(1));

    QuadExt x = rand_quadext(rng, 5), y = rand_quadext(rng, 5), z = rand_quadext(rng, 5);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x + (-x) == QuadExt());
    if (!x.is_zero()) CHECK(x / x == QuadExt(1));
  }
}

TEST_CASE("sign is multiplicative and zero only at zero") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    QuadExt x = rand_quadext(rng, 3), y = rand_quadext(rng, 3);
    CHECK(sign(x * y) == sign(x) * sign(y));
    CHECK((sign(x) == 0) == x.is_zero());
  }
}

TEST_CASE("scalar grammar round trips") {
  CHECK(to_string(Rational(-1, 2)) == "-1/2");
  CHECK(to_string(Rational(7)) == "7");
  CHECK(parse_rational("22/7") == Rational(22, 7));
  CHECK(parse_rational("-3") == Rational(-3));
  QuadExt q(Rational(1, 2), Rational(-1, 3), 5);
  CHECK(parse_quadext(to_string(q)) == q);
  CHECK(parse_quadext("1/2+1/2*sqrt(5)") == QuadExt(Rational(1, 2), Rational(1, 2), 5));
  CHECK(parse_quadext("-1/3*sqrt(2)") == QuadExt(Rational(0), Rational(-1, 3), 2));
  CHECK(parse_quadext("5/3") == QuadExt(Rational(5, 3)));
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_quadext("1/2+1/2*sqrt(4)"), FieldMismatch);
  CHECK_THROWS_AS(parse_scalar<Rational>("1/2+1/2*sqrt(5)"), FieldMismatch);
}

TEST_CASE("scalar grammar ignores embedded whitespace") {
  CHECK(parse_rational(" -22 / 7 ") == Rational(-22, 7));
  CHECK(parse_quadext("1/2 + 1/2 * sqrt( 5 )") ==
        QuadExt(Rational(1, 2), Rational(1, 2), 5));
  CHECK(parse_quadext("2 - 1 * sqrt(5)") == QuadExt(Rational(2), Rational(-1), 5));
}

}  // TEST_SUITE
