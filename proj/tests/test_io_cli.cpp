#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fewdist/catalog.hpp"
#include "fewdist/cli.hpp"
#include "fewdist/io.hpp"

using namespace fewdist;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fewdist_test_" + name);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("points gram file round trip") {
  SphericalConfig<Rational> cp = catalog::cross_polytope(3);
  std::ostringstream out;
  write_points_gram(out, cp);
  std::istringstream in(out.str());
  ConfigVariant round = read_points(in);
  REQUIRE(std::holds_alternative<SphericalConfig<Rational>>(round));
  const auto& cfg = std::get<SphericalConfig<Rational>>(round);
  CHECK(cfg.n == cp.n);
  CHECK(cfg.m == cp.m);
  CHECK(cfg.gram == cp.gram);
  CHECK(cfg.field == cp.field);
}

TEST_CASE("coords files renormalize on read") {
  // Dodecahedron written as raw coordinates of squared norm 3.
  QuadExt phi(Rational(1, 2), Rational(1, 2), 5);
  QuadExt phi_inv(Rational(-1, 2), Rational(1, 2), 5);
  SphericalConfig<QuadExt> reference = catalog::dodecahedron();
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
  std::ostringstream out;
  write_points_coords(out, coords, FieldTag::quadratic(5));
  std::istringstream in(out.str());
  ConfigVariant round = read_points(in);
  const auto& cfg = std::get<SphericalConfig<QuadExt>>(round);
  CHECK(cfg.gram == reference.gram);
  CHECK(!cfg.coords.has_value());  // norm was 3, so coords are dropped
}

TEST_CASE("relations file round trip") {
  AssociationScheme t5 = catalog::triangular(5);
  std::ostringstream out;
  write_relations(out, t5.relation);
  std::istringstream in(out.str());
  RelationMatrix rel = read_relations(in);
  CHECK(rel.n == t5.relation.n);
  CHECK(rel.classes == t5.relation.classes);
  CHECK(rel.rel == t5.relation.rel);
}

TEST_CASE("parse errors carry precise messages") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_points(in);
  };
  CHECK_THROWS_AS(parse("dim 2\ncount 2\nkind gram\n1 -1\n-1 1\n"), ParseError);
  CHECK_THROWS_AS(parse("field R\ndim 2\ncount 2\nkind gram\n1 -1\n-1 1\n"), ParseError);
  CHECK_THROWS_AS(parse("field Q\ndim 2\ncount 2\nkind blob\n1 -1\n-1 1\n"), ParseError);
  CHECK_THROWS_AS(parse("field Q\ndim 2\ncount 2\nkind gram\n1 -1\n-1 1\nextra\n"),
                  ParseError);
  CHECK_THROWS_AS(parse("field Q sqrt 4\ndim 2\ncount 2\nkind gram\n1 -1\n-1 1\n"),
                  ParseError);
  // Scalar outside the declared field.
  CHECK_THROWS_AS(
      parse("field Q\ndim 2\ncount 2\nkind gram\n1 1/2*sqrt(5)\n1/2*sqrt(5) 1\n"),
      FieldMismatch);
  CHECK_THROWS_AS(
      parse("field Q sqrt 5\ndim 2\ncount 2\nkind gram\n1 1/2*sqrt(3)\n1/2*sqrt(3) 1\n"),
      FieldMismatch);
}

TEST_CASE("cli: analyze produces the documented JSON schema") {
  auto pts = temp_file("square.pts");
  {
    std::ofstream out(pts);
    write_points_gram(out, catalog::cross_polytope(2));
  }
  CliResult result = run_cli({"analyze", pts.string(), "--json"});
  REQUIRE(result.code == 0);
  Json j = Json::parse(result.out);
  for (const char* key :
       {"toolchain", "input_digest", "n", "m", "field", "distance_values",
        "distance_counts", "strength", "moments", "annihilator_coeffs", "flags",
        "bounds"})
    CHECK(j.contains(key));
  CHECK(j["n"] == 4);
  CHECK(j["strength"] == 3);
  CHECK(j["flags"]["antipodal"] == true);
  // Deterministic: identical certificate on a second run.
  CliResult again = run_cli({"analyze", pts.string(), "--json"});
  CHECK(again.out == result.out);
  std::filesystem::remove(pts);
}

TEST_CASE("cli: json round trips through the file formats") {
  auto pts = temp_file("simplex.pts");
  CliResult gen = run_cli({"catalog", "simplex-4", "-o", pts.string()});
  REQUIRE(gen.code == 0);
  CliResult result = run_cli({"analyze", pts.string(), "--json"});
  REQUIRE(result.code == 0);
  Json j = Json::parse(result.out);
  CHECK(j["n"] == 5);
  CHECK(j["distance_values"][0] == "-1/4");
  std::filesystem::remove(pts);
}

TEST_CASE("cli: exit code 1 for malformed or missing input") {
  CHECK(run_cli({"analyze", "/nonexistent/file.pts"}).code == 1);
  auto bad = temp_file("bad.pts");
  {
    std::ofstream out(bad);
    out << "field Q\ndim 2\ncount 2\nkind gram\n1 0.5\n0.5 1\n";
  }
  CliResult result = run_cli({"analyze", bad.string()});
  CHECK(result.code == 1);
  CHECK(result.err.find("ParseError") != std::string::npos);
  std::filesystem::remove(bad);
  CHECK(run_cli({"catalog", "no-such-thing"}).code == 1);
  CHECK(run_cli({"bounds"}).code == 1);
  CHECK(run_cli({"nonsense-subcommand"}).code == 1);
}

TEST_CASE("cli: scheme subcommand on an irrational-spectrum scheme") {
  auto rel = temp_file("pentagon.rel");
  CliResult gen = run_cli({"catalog", "cycle-5", "-o", rel.string()});
  REQUIRE(gen.code == 0);
  CliResult result = run_cli({"scheme", rel.string()});
  CHECK(result.code == 1);
  CHECK(result.err.find("NonRationalSpectrum") != std::string::npos);
  std::filesystem::remove(rel);
}

TEST_CASE("cli: bounds evaluate the paper numbers") {
  CliResult result = run_cli({"bounds", "--m", "22", "--s", "3", "--strength", "4"});
  REQUIRE(result.code == 0);
  CHECK(result.out.find("2025") != std::string::npos);
  CliResult table = run_cli({"bounds", "--table", "--m", "4", "--json"});
  REQUIRE(table.code == 0);
  Json j = Json::parse(table.out);
  CHECK(j[0]["table"][1][2] == 5);  // h_{2,3}
  CliResult anti = run_cli({"bounds", "--m", "3", "--s", "5", "--i", "2", "--antipodal"});
  REQUIRE(anti.code == 0);
  CHECK(anti.out.find("= 20") != std::string::npos);
}

TEST_CASE("cli: catalog output is deterministic") {
  CliResult a = run_cli({"catalog", "cross-polytope-4"});
  CliResult b = run_cli({"catalog", "cross-polytope-4"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("cli: output is identical for any worker count") {
  auto pts = temp_file("threads.pts");
  REQUIRE(run_cli({"catalog", "cross-polytope-5", "-o", pts.string()}).code == 0);
  CliResult one = run_cli({"--threads", "1", "analyze", pts.string(), "--json"});
  CliResult two = run_cli({"--threads", "2", "analyze", pts.string(), "--json"});
  CliResult four = run_cli({"--threads", "4", "analyze", pts.string(), "--json"});
  CHECK(one.code == 0);
  CHECK(one.out == two.out);
  CHECK(one.out == four.out);
  worker_count().store(std::max(1u, std::thread::hardware_concurrency()));
  std::filesystem::remove(pts);
}

}  // TEST_SUITE
