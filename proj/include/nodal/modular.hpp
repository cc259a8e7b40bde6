#pragma once

#include "nodal/bigint.hpp"
#include "nodal/rng.hpp"

namespace nodal {

// An element of Z_m. The value is kept reduced to [0, modulus).
class Residue {
 public:
  /// Reduces value mod modulus. Throws std::invalid_argument if modulus < 2.
  Residue(BigUint value, BigUint modulus);

  const BigUint& value() const { return value_; }
  const BigUint& modulus() const { return modulus_; }

  friend bool operator==(const Residue&, const Residue&) = default;

 private:
  BigUint modulus_;
  BigUint value_;
};

/// a * b in Z_m. Throws std::invalid_argument on modulus mismatch.
Residue mul(const Residue& a, const Residue& b);

/// base^exponent in Z_m. exponent >= 0; exponent == 0 gives 1 mod m.
Residue mod_pow(const Residue& base, const BigUint& exponent);

/// Multiplicative inverse of a when gcd(a.value, m) == 1; otherwise that gcd
/// as a Factor (a nontrivial divisor of m, or m itself when a.value == 0).
Fallible<Residue> inverse_or_factor(const Residue& a);

inline constexpr unsigned kDefaultPrimalityRounds = 40;

/// Miller-Rabin with `rounds` random bases drawn from rng; exact (trial
/// division) below 2^16. rounds must be >= 1.
bool is_probable_prime(const BigUint& n, unsigned rounds, RandomSource& rng);

/// Same, with an internal deterministic base source.
bool is_probable_prime(const BigUint& n,
                       unsigned rounds = kDefaultPrimalityRounds);

/// Random probable prime with exactly `bits` bits: top bit set, odd,
/// Miller-Rabin screened. bits must be >= 3.
BigUint random_prime(unsigned bits, RandomSource& rng);

}  // namespace nodal
