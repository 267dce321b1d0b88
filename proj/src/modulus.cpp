#include "zpf/modulus.hpp"

#include <string>

namespace zpf {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(0) {
  if (p > kMax || !is_prime(p))
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not a supported prime");
  p_ = static_cast<Residue>(p);
}

Residue PrimeModulus::pow(Residue base, std::uint64_t exp) const {
  Residue result = 1 % p_;
  Residue b = base % p_;
  while (exp > 0) {
    if (exp & 1) result = mul(result, b);
    b = mul(b, b);
    exp >>= 1;
  }
  return result;
}

Residue PrimeModulus::inv(Residue a) const {
  if (a % p_ == 0) throw std::domain_error("zero has no inverse mod " + std::to_string(p_));
  return pow(a, p_ - 2);
}

bool PrimeModulus::is_nonsquare(Residue n) const {
  if (p_ == 2 || n % p_ == 0) return false;
  return pow(n, (p_ - 1) / 2) == p_ - 1;
}

}  // namespace zpf
