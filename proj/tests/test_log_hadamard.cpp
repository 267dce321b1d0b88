#include <numeric>
#include <random>

#include "doctest.h"
#include "zpf/construct.hpp"
#include "zpf/log_hadamard.hpp"
#include "zpf/reference.hpp"

using namespace zpf;

namespace {

EquivalenceMove random_move(std::mt19937_64& rng, PrimeModulus p, Index n) {
  std::uniform_int_distribution<Residue> d(0, p.value() - 1);
  ResidueVector rs(n), cs(n);
  for (Index i = 0; i < n; ++i) {
    rs(i) = d(rng);
    cs(i) = d(rng);
  }
  std::vector<Index> rp(n), cp(n);
  std::iota(rp.begin(), rp.end(), Index{0});
  std::iota(cp.begin(), cp.end(), Index{0});
  std::shuffle(rp.begin(), rp.end(), rng);
  std::shuffle(cp.begin(), cp.end(), rng);
  return EquivalenceMove(GFVector(p, rs), GFVector(p, cs), rp, cp);
}

}  // namespace

TEST_CASE("equidistribution") {
  const PrimeModulus p(3);
  CHECK(is_equidistributed(GFVector(p, {0, 1, 2})));
  CHECK(is_equidistributed(GFVector(p, {2, 1, 0, 0, 2, 1})));
  CHECK_FALSE(is_equidistributed(GFVector(p, {0, 0, 1})));
  CHECK_FALSE(is_equidistributed(GFVector(p, {0, 1})));
  CHECK_FALSE(is_equidistributed(GFVector(p, {0, 1, 2, 0})));
}

TEST_CASE("log-Hadamard predicate") {
  const PrimeModulus p2(2);
  CHECK(is_log_hadamard(GFMatrix(p2, {{0, 0}, {0, 1}})));
  CHECK_FALSE(is_log_hadamard(GFMatrix(p2, {{0, 0}, {0, 0}})));
  CHECK_FALSE(is_log_hadamard(GFMatrix(p2, {{0, 0, 1}, {0, 1, 1}})));
  CHECK(is_log_hadamard(GFMatrix(p2, {{1}})));
  // Zero matrix of size >= 2 is never log-Hadamard.
  CHECK_FALSE(is_log_hadamard(GFMatrix::zero(PrimeModulus(3), 6, 6)));
  const auto bad = find_unbalanced_rows(GFMatrix(p2, {{0, 0}, {0, 1}, {0, 1}}));
  REQUIRE(bad);
  CHECK(*bad == std::pair<Index, Index>{1, 2});

  // Fourier matrix of Z_5 in log form.
  const PrimeModulus p5(5);
  ResidueMatrix f(5, 5);
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 5; ++j) f(i, j) = p5.mul(i, j);
  const GFMatrix fm(p5, f);
  CHECK(is_log_hadamard(fm));
  CHECK(is_log_hadamard_by_columns(fm));
  CHECK(reference::is_log_hadamard(fm));
}

TEST_CASE("dephasing") {
  const GFMatrix l = build_original(PrimeModulus(5), 2);
  const GFMatrix d = dephase(l);
  CHECK(is_dephased(d));
  CHECK_FALSE(is_dephased(l));
  CHECK(is_log_hadamard(d));
  CHECK(dephase(d) == d);
  CHECK(apply_move(l, dephasing_move(l)) == d);
  CHECK(min_rank_in_class(l) == rank(d));
  CHECK_THROWS_AS(min_rank_in_class(GFMatrix::zero(PrimeModulus(3), 3, 3)), std::invalid_argument);
}

TEST_CASE("equivalence moves preserve the log-Hadamard property and never beat the dephased rank") {
  std::mt19937_64 rng(2024);
  const std::vector<GFMatrix> inputs = {
      build_modified(CounterexampleParams::with_alpha(PrimeModulus(3), 2, 1)),
      build_original(PrimeModulus(7), 3),
      tao_dephased_12(),
  };
  for (const GFMatrix& m : inputs) {
    const Index base = rank(dephase(m));
    for (int t = 0; t < 200; ++t) {
      const GFMatrix moved = apply_move(m, random_move(rng, m.modulus(), m.rows()));
      CHECK(is_log_hadamard(moved));
      CHECK(is_log_hadamard_by_columns(moved));
      CHECK(rank(moved) >= base);
      CHECK(rank(dephase(moved)) == base);
    }
  }
}

TEST_CASE("equivalence move validation") {
  const PrimeModulus p(3);
  const GFVector z2 = GFVector::constant(p, 2, 0);
  CHECK_THROWS_AS(EquivalenceMove(z2, z2, {0, 0}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(EquivalenceMove(z2, z2, {0, 1, 2}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(EquivalenceMove(z2, z2, {0, 2}, {0, 1}), std::invalid_argument);
  const EquivalenceMove id = EquivalenceMove::identity(p, 2, 2);
  CHECK_THROWS_AS(apply_move(GFMatrix::zero(p, 3, 3), id), std::invalid_argument);
  const GFMatrix m(p, {{0, 1}, {2, 0}});
  CHECK(apply_move(m, id) == m);
  // Row 0 goes to row 1, and every entry gains 1 + column shift.
  const EquivalenceMove mv(GFVector(p, {1, 1}), GFVector(p, {0, 2}), {1, 0}, {0, 1});
  CHECK(apply_move(m, mv) == GFMatrix(p, {{0, 0}, {1, 1}}));
}

TEST_CASE("sign matrices") {
  CHECK_THROWS_AS(SignMatrix({{1, 0}, {1, -1}}), std::invalid_argument);
  const SignMatrix h2{{1, 1}, {1, -1}};
  CHECK(is_hadamard(h2));
  CHECK(from_sign_matrix(h2, true) == GFMatrix(PrimeModulus(2), {{0, 0}, {0, 1}}));
  const SignMatrix bad{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, 1, 1, -1}};
  CHECK_FALSE(is_hadamard(bad));
  CHECK_THROWS_WITH_AS(from_sign_matrix(bad, true), "rows 1 and 4 are not orthogonal", std::invalid_argument);
  CHECK_NOTHROW(from_sign_matrix(bad, false));
  CHECK_FALSE(is_hadamard(SignMatrix{{1, 1}}));
}

TEST_CASE("Hadamard and log-Hadamard correspond over Z_2") {
  const SignMatrix h = bundled_hadamard_12();
  CHECK(is_hadamard(h));
  const GFMatrix l = from_sign_matrix(h, true);
  CHECK(is_log_hadamard(l));
  // Frozen from independent elimination in Python: the shipped matrix has
  // log rank 11 and dephases to rank 10.
  CHECK(rank(l) == 11);
  CHECK(reference::span_rank(l) == 11);
  CHECK(rank(dephase(l)) == 10);
}
