#pragma once

#include <cstdint>

#include "zpf/gf_matrix.hpp"
#include "zpf/group.hpp"
#include "zpf/log_hadamard.hpp"

namespace zpf {

/// (0^k, 1^k, ..., (p-1)^k) with 0^0 = 1.
GFVector moment_vector(PrimeModulus p, std::uint64_t k);

/// Least n >= 2 with n^((p-1)/2) = -1. Throws std::invalid_argument for p = 2.
Residue smallest_nonsquare(PrimeModulus p);

/// Parameters of the rank-four family. beta is tied to alpha by
/// beta - n*alpha + n^2 + n = 0 (mod p).
class CounterexampleParams {
public:
  /// Validates p odd, n a nonsquare, and the alpha/beta relation.
  CounterexampleParams(PrimeModulus p, Residue n, Residue alpha, Residue beta);
  /// Solves the relation for beta.
  static CounterexampleParams with_alpha(PrimeModulus p, Residue n, Residue alpha);
  static Residue beta_for(PrimeModulus p, Residue n, Residue alpha);

  PrimeModulus p() const { return p_; }
  Residue n() const { return n_; }
  Residue alpha() const { return alpha_; }
  Residue beta() const { return beta_; }

private:
  PrimeModulus p_;
  Residue n_, alpha_, beta_;
};

/// The 2p x 2p matrix with rows
///   L_k     = 2k(v1, n v1) - k^2 (v0, n v0)
///   L_{k+p} = (v2, n v2) - 2nk (v1, v1) + n k^2 (n v0, v0),  0 <= k < p.
/// Throws std::invalid_argument unless p is odd and n a nonsquare.
GFMatrix build_original(PrimeModulus p, Residue n);

/// The original matrix with alpha k^2 added to row k and beta k^2 to row
/// k + p. Log-Hadamard of rank exactly four.
GFMatrix build_modified(const CounterexampleParams& params);

struct SpectralPair {
  PointSet set;       // E, 2p points of Z_p^4
  PointSet spectrum;  // B
};

/// E = {(k^2, k, k, a-1)} u {(nk^2, nk, k, a-n)},
/// B = {(0, 2k, 0, k^2)} u {(1, 0, -2nk, nk^2)}, k in Z_p.
SpectralPair build_spectral_pair(PrimeModulus p, Residue n, Residue alpha);

/// The dephased 12 x 12 log-Hadamard matrix over Z_2 of rank ten.
GFMatrix tao_dephased_12();

/// Order-12 Hadamard matrix shipped with the library (data/hadamard/had.12.txt).
SignMatrix bundled_hadamard_12();

/// {0, e1, e2, e3, e4, e5, e1+e2, e1+e2+e3+e4+e5} in Z_2^5: neither a tile
/// nor spectral, so not a graph on any 3-dimensional subspace.
PointSet size8_example_z2_5();

}  // namespace zpf
