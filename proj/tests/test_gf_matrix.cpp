#include <random>

#include "doctest.h"
#include "zpf/gf_matrix.hpp"
#include "zpf/reference.hpp"

using namespace zpf;

namespace {

GFMatrix random_matrix(std::mt19937_64& rng, PrimeModulus p, Index m, Index n) {
  std::uniform_int_distribution<Residue> d(0, p.value() - 1);
  ResidueMatrix a(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = d(rng);
  return GFMatrix(p, a);
}

GFMatrix naive_product(const GFMatrix& a, const GFMatrix& b) {
  const PrimeModulus p = a.modulus();
  ResidueMatrix c(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      Residue s = 0;
      for (Index k = 0; k < a.cols(); ++k) s = p.add(s, p.mul(a(i, k), b(k, j)));
      c(i, j) = s;
    }
  return GFMatrix(p, c);
}

}  // namespace

TEST_CASE("prime modulus") {
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_THROWS_AS(PrimeModulus(1), std::invalid_argument);
  CHECK_THROWS_AS(PrimeModulus(15), std::invalid_argument);
  CHECK_NOTHROW(PrimeModulus(PrimeModulus::kMax));

  const PrimeModulus p(7);
  CHECK(p.reduce(-1) == 6);
  CHECK(p.sub(2, 5) == 4);
  CHECK(p.neg(0) == 0);
  CHECK(p.mul(p.inv(3), 3) == 1);
  CHECK_THROWS_AS(p.inv(0), std::domain_error);
  CHECK(p.pow(3, 6) == 1);
  CHECK(p.is_nonsquare(3));
  CHECK_FALSE(p.is_nonsquare(2));
  CHECK_FALSE(p.is_nonsquare(0));

  const PrimeModulus big(PrimeModulus::kMax);
  const Residue x = big.value() - 1;
  CHECK(big.mul(x, x) == 1);
  CHECK(big.add(x, x) == big.value() - 2);
}

TEST_CASE("matrix construction validates residues") {
  const PrimeModulus p(3);
  CHECK_THROWS_AS(GFMatrix(p, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(GFVector(p, {4}), std::invalid_argument);
  const GFMatrix z = GFMatrix::zero(p, 0, 3);
  CHECK(z.rows() == 0);
  CHECK(rank(z) == 0);
  CHECK(rank(GFMatrix::identity(p, 5)) == 5);
  CHECK_THROWS_AS(GFMatrix::from_rows(p, {GFVector(p, {1, 2}), GFVector(p, {1})}), std::invalid_argument);
}

TEST_CASE("vector arithmetic") {
  const PrimeModulus p(5);
  const GFVector a(p, {1, 4, 2}), b(p, {3, 3, 3});
  CHECK(a + b == GFVector(p, {4, 2, 0}));
  CHECK(a - b == GFVector(p, {3, 1, 4}));
  CHECK(2 * a == GFVector(p, {2, 3, 4}));
}

TEST_CASE("products agree with the schoolbook product") {
  std::mt19937_64 rng(11);
  for (std::uint64_t pv : std::initializer_list<std::uint64_t>{2, 3, 13, 65521, PrimeModulus::kMax}) {
    const PrimeModulus p(pv);
    for (int t = 0; t < 10; ++t) {
      const GFMatrix a = random_matrix(rng, p, 7, 9), b = random_matrix(rng, p, 9, 4);
      CHECK(multiply(a, b) == naive_product(a, b));
      CHECK(multiply_transposed(a, b.transpose()) == naive_product(a, b));
    }
  }
  CHECK_THROWS_AS(multiply(GFMatrix::zero(PrimeModulus(2), 2, 3), GFMatrix::zero(PrimeModulus(2), 2, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(multiply(GFMatrix::zero(PrimeModulus(2), 2, 2), GFMatrix::zero(PrimeModulus(3), 2, 2)),
                  std::invalid_argument);
}

TEST_CASE("rank agrees with the span-size oracle") {
  std::mt19937_64 rng(5);
  for (std::uint64_t pv : {2ull, 3ull, 5ull}) {
    const PrimeModulus p(pv);
    for (int t = 0; t < 40; ++t) {
      const Index m = 1 + static_cast<Index>(rng() % (pv == 2 ? 10 : 6));
      const Index n = 1 + static_cast<Index>(rng() % 9);
      // Low-rank products make the check meaningful beyond full rank.
      const Index k = 1 + static_cast<Index>(rng() % 4);
      const GFMatrix a = multiply(random_matrix(rng, p, m, k), random_matrix(rng, p, k, n));
      const Index r = reference::span_rank(a);
      CHECK(rank(a) == r);
      CHECK(rank_generic(a) == r);
      CHECK(rank(a.transpose()) == r);
      if (pv == 2) CHECK(rank_gf2_packed(a) == r);
    }
  }
  CHECK_THROWS_AS(rank_gf2_packed(GFMatrix::zero(PrimeModulus(3), 2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(rank_gf2_packed(GFMatrix::zero(PrimeModulus(2), 2, 65)), std::invalid_argument);
}

TEST_CASE("packed rank beyond the span oracle's reach") {
  std::mt19937_64 rng(9);
  const PrimeModulus p(2);
  for (int t = 0; t < 20; ++t) {
    const GFMatrix a = random_matrix(rng, p, 70, 64);
    CHECK(rank_gf2_packed(a) == rank_generic(a));
  }
}

TEST_CASE("row reduction and rank factorization") {
  std::mt19937_64 rng(3);
  for (std::uint64_t pv : {2ull, 7ull}) {
    const PrimeModulus p(pv);
    for (int t = 0; t < 20; ++t) {
      const GFMatrix a = multiply(random_matrix(rng, p, 6, 3), random_matrix(rng, p, 3, 8));
      const RowEchelonForm e = row_reduce(a);
      CHECK(static_cast<Index>(e.pivots.size()) == rank(a));
      for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        CHECK(e.reduced(static_cast<Index>(i), e.pivots[i]) == 1);
        for (Index r = 0; r < e.reduced.rows(); ++r)
          if (r != static_cast<Index>(i)) CHECK(e.reduced(r, e.pivots[i]) == 0);
      }
      const RankFactorization f = rank_factorization(a);
      CHECK(f.inner_dimension() == rank(a));
      CHECK(multiply_transposed(f.left, f.right) == a);
    }
  }
  const RankFactorization z = rank_factorization(GFMatrix::zero(PrimeModulus(5), 3, 4));
  CHECK(z.is_zero());
  CHECK(z.left.rows() == 3);
  CHECK(z.right.rows() == 4);
}
