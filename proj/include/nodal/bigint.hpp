#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace nodal {

// Arbitrary-precision integer. Everything in this library keeps values
// non-negative; GMP supplies the representation and the low-level kernels.
using BigUint = mpz_class;

/// Number of significant bits; bit_length(0) == 0.
inline unsigned bit_length(const BigUint& x) {
  if (x == 0) return 0;
  return static_cast<unsigned>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

/// x mod m, always in [0, m). m must be positive. Unlike operator% this is
/// well-behaved for negative intermediate values.
inline BigUint mod_reduce(const BigUint& x, const BigUint& m) {
  BigUint r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Lowercase hex with no prefix, e.g. "1f4".
inline std::string to_hex(const BigUint& x) { return x.get_str(16); }

// A nontrivial divisor of the active modulus, surfaced when an element that
// should have been a unit turned out not to be. Over an RSA-style composite
// modulus this is a factoring event, so it travels as a value, not an error.
struct Factor {
  BigUint value;
};

// Result of a computation that can hit a failed inversion: either the value
// or the divisor of the modulus that blocked the inversion.
template <class T>
class Fallible {
 public:
  Fallible(T value) : out_(std::move(value)) {}
  Fallible(Factor f) : out_(std::move(f)) {}

  bool ok() const { return out_.index() == 0; }
  const T& value() const& { return std::get<0>(out_); }
  T& value() & { return std::get<0>(out_); }
  T&& value() && { return std::get<0>(std::move(out_)); }
  const Factor& factor() const { return std::get<1>(out_); }

 private:
  std::variant<T, Factor> out_;
};

// Thrown at API boundaries that cannot return Fallible (key generation,
// decryption) when an operation over a composite modulus exposes a factor.
class ModulusFactoredError : public std::runtime_error {
 public:
  explicit ModulusFactoredError(BigUint factor)
      : std::runtime_error("modulus factored: nontrivial divisor 0x" +
                           to_hex(factor) + " found"),
        factor_(std::move(factor)) {}

  const BigUint& factor() const { return factor_; }

 private:
  BigUint factor_;
};

}  // namespace nodal
