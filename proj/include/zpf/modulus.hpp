#pragma once

#include <cstdint>
#include <stdexcept>

#include "zpf/dense.hpp"

namespace zpf {

bool is_prime(std::uint64_t n);

/// A prime p small enough that products of two residues fit in 64 bits.
class PrimeModulus {
public:
  static constexpr std::uint64_t kMax = 0xFFFFFFFBull;  // largest 32-bit prime

  /// Throws std::invalid_argument unless p is prime and at most kMax.
  explicit PrimeModulus(std::uint64_t p);

  Residue value() const { return p_; }
  operator Residue() const { return p_; }

  Residue reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Residue>(s >= p_ ? s - p_ : s);
  }
  Residue sub(Residue a, Residue b) const {
    return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + p_ - b);
  }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>(std::uint64_t{a} * b % p_);
  }
  Residue pow(Residue base, std::uint64_t exp) const;
  /// Multiplicative inverse; throws std::domain_error for zero.
  Residue inv(Residue a) const;

  /// Euler's criterion. Only meaningful for odd p; zero is not a nonsquare.
  bool is_nonsquare(Residue n) const;

  friend bool operator==(PrimeModulus a, PrimeModulus b) { return a.p_ == b.p_; }

private:
  Residue p_;
};

}  // namespace zpf
