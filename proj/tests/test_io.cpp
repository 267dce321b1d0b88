#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "zpf/construct.hpp"
#include "zpf/io.hpp"

using namespace zpf;

namespace {

template <typename F>
ParseError parse_error(F f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  throw std::logic_error("unreachable");
}

GFMatrix gf(const std::string& s) {
  std::istringstream in(s);
  return parse_gf_matrix(in, "t");
}

PointSet ps(const std::string& s) {
  std::istringstream in(s);
  return parse_point_set(in, "t");
}

SignMatrix sm(const std::string& s) {
  std::istringstream in(s);
  return parse_sign_matrix(in, "t");
}

}  // namespace

TEST_CASE("matrix format") {
  CHECK(gf("2 2 2\n0 0\n0 1\n") == GFMatrix(PrimeModulus(2), {{0, 0}, {0, 1}}));
  CHECK(gf("# comment\n\n1 3 5\n  4 0 2 \n") == GFMatrix(PrimeModulus(5), {{4, 0, 2}}));

  const ParseError big = parse_error([] { gf("2 2 3\n0 1\n2 5\n"); });
  CHECK(big.line() == 3);
  CHECK(big.column() == 3);
  CHECK(std::string(big.what()).find("t:3:3") == 0);

  CHECK(parse_error([] { gf("2 2 3\n0 1\n"); }).line() >= 2);
  CHECK(parse_error([] { gf("2 2 3\n0 1\n1 1 1\n"); }).line() == 3);
  CHECK(parse_error([] { gf("2 2 3\n0 1\n1 1\n0 0\n"); }).line() == 4);
  CHECK(parse_error([] { gf("2 2 4\n0 1\n1 1\n"); }).line() == 1);
  CHECK(parse_error([] { gf("2 2\n0 1\n1 1\n"); }).line() == 1);
  CHECK(parse_error([] { gf("1 2 3\n0 x\n"); }).column() == 3);
  CHECK_THROWS_AS(gf(""), ParseError);
}

TEST_CASE("matrix round trip") {
  std::mt19937_64 rng(8);
  for (std::uint64_t pv : {2ull, 3ull, 101ull}) {
    ResidueMatrix a(4, 6);
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 6; ++j) a(i, j) = static_cast<Residue>(rng() % pv);
    const GFMatrix m(PrimeModulus(pv), a);
    CHECK(gf(serialize(m)) == m);
    CHECK(serialize(gf(serialize(m))) == serialize(m));
  }
  CHECK(serialize(GFMatrix(PrimeModulus(2), {{0, 1}, {1, 1}})) == "2 2 2\n0 1\n1 1\n");
}

TEST_CASE("point-set format") {
  const PointSet e = ps("3 4 6\n0 0 0 0\n1 1 1 0\n1 2 2 0\n0 0 0 2\n2 2 1 2\n2 1 2 2\n");
  CHECK(e.size() == 6);
  CHECK(e == build_spectral_pair(PrimeModulus(3), 2, 1).set);
  CHECK(ps(serialize(e)).points() == e.points());

  const ParseError dup = parse_error([] { ps("2 2 2\n0 1\n0 1\n"); });
  CHECK(dup.line() == 3);
  CHECK(std::string(dup.what()).find("duplicate") != std::string::npos);
  CHECK(parse_error([] { ps("3 2 1\n0 3\n"); }).column() == 3);
  CHECK(parse_error([] { ps("4 2 1\n0 1\n"); }).line() == 1);
  CHECK(parse_error([] { ps("2 2 1\n0 1 1\n"); }).line() == 2);
  CHECK_THROWS_AS(ps("2 2 1\n0 1\n2 2 1\n0 0\n"), ParseError);

  std::istringstream two("2 2 1\n0 1\n2 2 2\n0 0\n1 1\n");
  const auto sets = parse_point_sets(two, "t");
  REQUIRE(sets.size() == 2);
  CHECK(sets[1].size() == 2);
}

TEST_CASE("sign-matrix formats") {
  const SignMatrix h2{{1, 1}, {1, -1}};
  CHECK(sm("++\n+-\n") == h2);
  CHECK(sm("1 1\n1 -1\n") == h2);
  CHECK(sm("+1 +1\n+1 -1\n") == h2);
  CHECK(sm("2 2\n++\n+-\n") == h2);
  CHECK(sm(serialize(h2)) == h2);
  CHECK(serialize(h2) == "++\n+-\n");

  const ParseError ragged = parse_error([] { sm("+++\n+-+\n++\n"); });
  CHECK(ragged.line() == 3);
  CHECK(std::string(ragged.what()).find("ragged") != std::string::npos);
  const ParseError illegal = parse_error([] { sm("++\n+x\n"); });
  CHECK(illegal.line() == 2);
  CHECK(illegal.column() == 2);
  CHECK_THROWS_AS(sm(""), ParseError);
  CHECK_THROWS_AS(sm("# nothing\n\n"), ParseError);
  CHECK_THROWS_AS(sm("3 2\n++\n+-\n"), ParseError);
}

TEST_CASE("bundled files") {
  const std::filesystem::path data = ZPF_DATA_DIR;
  const SignMatrix h = parse_sign_matrix_file(data / "hadamard" / "had.12.txt");
  CHECK(h == bundled_hadamard_12());
  CHECK(parse_gf_matrix_file(data / "tao_dephased_12.txt") == tao_dephased_12());
  CHECK_THROWS(parse_gf_matrix_file(data / "missing.txt"));

  // A 12-column grid with an 11-character row.
  const auto tmp = std::filesystem::temp_directory_path() / "zpf_ragged12.txt";
  {
    std::ofstream out(tmp);
    std::string grid = serialize(h);
    grid.erase(grid.find('\n', 13 * 4) - 1, 1);  // shorten row 5
    out << grid;
  }
  const ParseError e = parse_error([&] { parse_sign_matrix_file(tmp); });
  CHECK(e.line() == 5);
  std::filesystem::remove(tmp);
}
