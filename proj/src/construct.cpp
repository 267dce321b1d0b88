#include "zpf/construct.hpp"

#include <stdexcept>
#include <string>

namespace zpf {

GFVector moment_vector(PrimeModulus p, std::uint64_t k) {
  ResidueVector v(p.value());
  for (Residue j = 0; j < p.value(); ++j) v[j] = p.pow(j, k);  // pow(0, 0) == 1
  return GFVector(p, std::move(v));
}

Residue smallest_nonsquare(PrimeModulus p) {
  if (p.value() == 2) throw std::invalid_argument("there is no nonsquare modulo 2");
  for (Residue n = 2; n < p.value(); ++n)
    if (p.is_nonsquare(n)) return n;
  throw std::logic_error("odd prime without a nonsquare");
}

namespace {

void require_odd_nonsquare(PrimeModulus p, Residue n) {
  if (p.value() == 2) throw std::invalid_argument("p must be an odd prime");
  if (n >= p.value() || !p.is_nonsquare(n))
    throw std::invalid_argument(std::to_string(n) + " is not a nonsquare modulo " +
                                std::to_string(p.value()));
}

// Row k of the first block and row k + p of the second block share this shape:
//   a * (v1, b v1) + (c v2, d v2) + (e v0, f v0)
// with all coefficients already reduced.
struct RowCoefficients {
  Residue v1_left, v1_right;
  Residue v2_left, v2_right;
  Residue v0_left, v0_right;
};

void fill_row(PrimeModulus p, ResidueMatrix& a, Index row, const RowCoefficients& c) {
  for (Residue j = 0; j < p.value(); ++j) {
    const Residue j2 = p.mul(j, j);
    a(row, j) = p.add(p.add(p.mul(c.v1_left, j), p.mul(c.v2_left, j2)), c.v0_left);
    a(row, j + p.value()) = p.add(p.add(p.mul(c.v1_right, j), p.mul(c.v2_right, j2)), c.v0_right);
  }
}

// Rows of L' for given alpha/beta; the original matrix is alpha = beta = 0.
GFMatrix build_family(PrimeModulus p, Residue n, Residue alpha, Residue beta) {
  const Residue q = p.value();
  ResidueMatrix a(2 * q, 2 * q);
  const Residue n2 = p.mul(n, n);
  for (Residue k = 0; k < q; ++k) {
    const Residue k2 = p.mul(k, k);
    const Residue two_k = p.mul(2 % q, k);
    const Residue two_nk = p.mul(two_k, n);
    // L'_k = 2k(v1, n v1) + k^2((alpha-1) v0, (alpha-n) v0)
    fill_row(p, a, k,
             {two_k, p.mul(two_k, n), 0, 0, p.mul(k2, p.sub(alpha, 1)), p.mul(k2, p.sub(alpha, n))});
    // L'_{k+p} = (v2, n v2) - 2nk(v1, v1) + k^2((beta+n^2) v0, (beta+n) v0)
    fill_row(p, a, k + q,
             {p.neg(two_nk), p.neg(two_nk), 1, n, p.mul(k2, p.add(beta, n2)), p.mul(k2, p.add(beta, n))});
  }
  return GFMatrix(p, std::move(a));
}

}  // namespace

CounterexampleParams::CounterexampleParams(PrimeModulus p, Residue n, Residue alpha, Residue beta)
    : p_(p), n_(n), alpha_(alpha), beta_(beta) {
  require_odd_nonsquare(p, n);
  if (alpha >= p.value() || beta >= p.value())
    throw std::invalid_argument("alpha and beta must be reduced residues");
  if (beta != beta_for(p, n, alpha))
    throw std::invalid_argument("beta - n*alpha + n^2 + n is not zero mod p");
}

Residue CounterexampleParams::beta_for(PrimeModulus p, Residue n, Residue alpha) {
  // beta = n*alpha - n^2 - n
  return p.sub(p.sub(p.mul(n, alpha), p.mul(n, n)), n);
}

CounterexampleParams CounterexampleParams::with_alpha(PrimeModulus p, Residue n, Residue alpha) {
  require_odd_nonsquare(p, n);
  alpha %= p.value();
  return CounterexampleParams(p, n, alpha, beta_for(p, n, alpha));
}

GFMatrix build_original(PrimeModulus p, Residue n) {
  require_odd_nonsquare(p, n);
  // -k^2 (v0, n v0) is alpha = 0 in the first block; n k^2 (n v0, v0) is
  // beta = 0 in the second.
  return build_family(p, n, 0, 0);
}

GFMatrix build_modified(const CounterexampleParams& params) {
  return build_family(params.p(), params.n(), params.alpha(), params.beta());
}

SpectralPair build_spectral_pair(PrimeModulus p, Residue n, Residue alpha) {
  require_odd_nonsquare(p, n);
  alpha %= p.value();
  const Ambient z4(p, 4);
  std::vector<Coords> e, b;
  e.reserve(2 * p.value());
  b.reserve(2 * p.value());
  for (Residue k = 0; k < p.value(); ++k) {
    const Residue k2 = p.mul(k, k);
    e.push_back({k2, k, k, p.sub(alpha, 1)});
    b.push_back({0, p.mul(2 % p.value(), k), 0, k2});
  }
  for (Residue k = 0; k < p.value(); ++k) {
    const Residue k2 = p.mul(k, k);
    e.push_back({p.mul(n, k2), p.mul(n, k), k, p.sub(alpha, n)});
    b.push_back({1, 0, p.neg(p.mul(p.mul(2 % p.value(), n), k)), p.mul(n, k2)});
  }
  return {PointSet::from_coords(z4, e), PointSet::from_coords(z4, b)};
}

GFMatrix tao_dephased_12() {
  return GFMatrix(PrimeModulus(2), {
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 1, 0, 1, 0, 0, 0, 1, 1, 1, 0, 1},
      {0, 1, 1, 0, 1, 0, 0, 0, 1, 1, 1, 0},
      {0, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1, 1},
      {0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1},
      {0, 1, 1, 0, 1, 1, 0, 1, 0, 0, 0, 1},
      {0, 1, 1, 1, 0, 1, 1, 0, 1, 0, 0, 0},
      {0, 0, 1, 1, 1, 0, 1, 1, 0, 1, 0, 0},
      {0, 0, 0, 1, 1, 1, 0, 1, 1, 0, 1, 0},
      {0, 0, 0, 0, 1, 1, 1, 0, 1, 1, 0, 1},
      {0, 1, 0, 0, 0, 1, 1, 1, 0, 1, 1, 0},
      {0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 1, 1},
  });
}

SignMatrix bundled_hadamard_12() {
  // Keep in sync with data/hadamard/had.12.txt.
  static const char* const kRows[12] = {
      "+++--+-++--+", "-+--+-+++-++", "+---++-+-+++", "++-+---++++-",
      "-+-------+-+", "-+++-+++-+++", "-++-++--+++-", "--+----+--+-",
      "+++++-----++", "---+-+--+-++", "-+-+++-+----", "--+++--+++-+",
  };
  SignEntries h(12, 12);
  for (Index i = 0; i < 12; ++i)
    for (Index j = 0; j < 12; ++j) h(i, j) = kRows[i][j] == '-' ? -1 : 1;
  return SignMatrix(std::move(h));
}

PointSet size8_example_z2_5() {
  const Ambient g(PrimeModulus(2), 5);
  return PointSet::from_coords(g, {{0, 0, 0, 0, 0},
                                   {1, 0, 0, 0, 0},
                                   {0, 1, 0, 0, 0},
                                   {0, 0, 1, 0, 0},
                                   {0, 0, 0, 1, 0},
                                   {0, 0, 0, 0, 1},
                                   {1, 1, 0, 0, 0},
                                   {1, 1, 1, 1, 1}});
}

}  // namespace zpf
