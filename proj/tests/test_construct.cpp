#include "doctest.h"
#include "zpf/construct.hpp"
#include "zpf/fuglede.hpp"
#include "zpf/log_hadamard.hpp"
#include "zpf/reference.hpp"

using namespace zpf;

namespace {

GFMatrix points_matrix(const PointSet& e) {
  const auto pts = e.coords();
  ResidueMatrix a(static_cast<Index>(pts.size()), e.ambient().dimension());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (int j = 0; j < e.ambient().dimension(); ++j) a(static_cast<Index>(i), j) = pts[i][j];
  return GFMatrix(e.ambient().modulus(), a);
}

}  // namespace

TEST_CASE("moment vectors and nonsquares") {
  const PrimeModulus p(5);
  CHECK(moment_vector(p, 0) == GFVector(p, {1, 1, 1, 1, 1}));
  CHECK(moment_vector(p, 2) == GFVector(p, {0, 1, 4, 4, 1}));
  CHECK(smallest_nonsquare(PrimeModulus(3)) == 2);
  CHECK(smallest_nonsquare(PrimeModulus(7)) == 3);
  CHECK(smallest_nonsquare(PrimeModulus(17)) == 3);
  CHECK_THROWS_AS(smallest_nonsquare(PrimeModulus(2)), std::invalid_argument);
}

TEST_CASE("parameter validation") {
  const PrimeModulus p(7);
  CHECK(CounterexampleParams::beta_for(p, 3, 1) == p.reduce(3 * 1 - 9 - 3));
  CHECK_THROWS_AS(CounterexampleParams(p, 2, 0, 0), std::invalid_argument);  // 2 is a square mod 7
  CHECK_THROWS_AS(CounterexampleParams(p, 3, 0, 0), std::invalid_argument);  // beta off the relation
  CHECK_THROWS_AS(CounterexampleParams(p, 3, 9, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_original(PrimeModulus(2), 1), std::invalid_argument);
  CHECK_THROWS_AS(build_original(PrimeModulus(5), 4), std::invalid_argument);
}

TEST_CASE("original family entries") {
  for (std::uint64_t pv : {3ull, 5ull, 7ull}) {
    const PrimeModulus p(pv);
    const Residue n = smallest_nonsquare(p);
    const GFMatrix l = build_original(p, n);
    REQUIRE(l.rows() == static_cast<Index>(2 * pv));
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(pv); ++k)
      for (std::int64_t x = 0; x < static_cast<std::int64_t>(pv); ++x) {
        const std::int64_t nn = n;
        CHECK(l(k, x) == p.reduce(2 * k * x - k * k));
        CHECK(l(k, x + pv) == p.reduce(nn * (2 * k * x - k * k)));
        CHECK(l(k + pv, x) == p.reduce(x * x - 2 * nn * k * x + nn * nn * k * k));
        CHECK(l(k + pv, x + pv) == p.reduce(nn * x * x - 2 * nn * k * x + nn * k * k));
      }
    CHECK(is_log_hadamard(l));
    CHECK(reference::is_log_hadamard(l));
  }
}

TEST_CASE("modified family is the Gram matrix of the spectral pair") {
  for (std::uint64_t pv : {3ull, 5ull, 7ull, 13ull}) {
    const PrimeModulus p(pv);
    const Residue n = smallest_nonsquare(p);
    for (Residue a = 0; a < pv; ++a) {
      const SpectralPair sp = build_spectral_pair(p, n, a);
      const GFMatrix l = build_modified(CounterexampleParams::with_alpha(p, n, a));
      CHECK(multiply_transposed(points_matrix(sp.spectrum), points_matrix(sp.set)) == l);
      CHECK(rank(l) == 4);
    }
  }
}

TEST_CASE("alpha = 1 gives a dephased matrix") {
  for (std::uint64_t pv : {3ull, 5ull, 7ull, 11ull}) {
    const PrimeModulus p(pv);
    const GFMatrix l = build_modified(CounterexampleParams::with_alpha(p, smallest_nonsquare(p), 1));
    CHECK(is_dephased(l));
    CHECK(dephase(l) == l);
  }
}

TEST_CASE("spectral pair points") {
  const SpectralPair sp = build_spectral_pair(PrimeModulus(3), 2, 1);
  const Ambient g(PrimeModulus(3), 4);
  const PointSet want = PointSet::from_coords(
      g, {{0, 0, 0, 0}, {1, 1, 1, 0}, {1, 2, 2, 0}, {0, 0, 0, 2}, {2, 2, 1, 2}, {2, 1, 2, 2}});
  CHECK(sp.set == want);
  CHECK(sp.set.points() == want.points());
  CHECK(verify_spectrum(sp.set, sp.spectrum));
  CHECK(verify_spectrum(sp.spectrum, sp.set));
  CHECK(reference::is_spectrum(3, sp.set.coords(), sp.spectrum.coords()));
  CHECK_FALSE(tiles(sp.set).has_value());
}

TEST_CASE("rank-ten matrix") {
  const GFMatrix t = tao_dephased_12();
  CHECK(is_dephased(t));
  CHECK(is_log_hadamard(t));
  CHECK(rank(t) == 10);
  CHECK(reference::span_rank(t) == 10);
  CHECK(dephase(from_sign_matrix(bundled_hadamard_12(), true)) == t);
}

TEST_CASE("size-8 example") {
  const PointSet e = size8_example_z2_5();
  CHECK(e.size() == 8);
  CHECK(e.contains(0));
  CHECK_FALSE(reference::tiles(e));
}
