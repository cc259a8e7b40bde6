#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nodal/bigint.hpp"
#include "nodal/jacobian.hpp"
#include "nodal/poly.hpp"
#include "nodal/rng.hpp"

namespace nodal::pke {

using Bytes = std::vector<std::uint8_t>;

/// Key generation could not complete with the supplied parameters (e.g. the
/// requested public exponent divides the group order).
class KeyGenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A decrypted or parsed ciphertext does not carry a well-formed payload.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The message does not fit into one group element of this key.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(std::size_t max_bytes, std::size_t got_bytes);
  std::size_t max_bytes() const { return max_bytes_; }
  std::size_t got_bytes() const { return got_bytes_; }

 private:
  std::size_t max_bytes_;
  std::size_t got_bytes_;
};

/// Encryption key: the curve y^2 = x f(x)^2 over Z_n plus the exponent e.
struct PublicKey {
  BigUint n;
  Poly f;
  BigUint e;
};

/// Adds the factorization and the inverse exponent d with e*d = 1 (mod K),
/// where K is the product of the two per-prime group orders.
struct PrivateKey {
  BigUint n;
  BigUint p;
  BigUint q;
  Poly f;
  BigUint d;
  BigUint K;
};

struct KeyPair {
  PublicKey pub;
  PrivateKey priv;
};

struct Ciphertext {
  JacElement element;

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

/// Bytes per coefficient block: floor((bitlen(n) - 1) / 8), so every block
/// value stays strictly below n.
std::size_t block_size(const BigUint& n);

/// Longest message (in bytes) one element can carry: deg(f) - 1 blocks minus
/// the two-byte length header and one byte of mandatory filler, capped at
/// 65535 so the header cannot overflow. Zero means even the empty message is
/// rejected (the key is too small to pad).
std::size_t max_message_bytes(const PublicKey& key);

/// Generates a fresh keypair: two `prime_bits`-bit primes p, q; a monic f of
/// the given degree that is irreducible modulo both; and exponents e, d
/// inverse to each other modulo the group order product K. Without a supplied
/// e, 65537 is used and incompatible primes are resampled; a supplied e that
/// shares a factor with K raises KeyGenError naming the obstruction.
/// prime_bits must be >= 16 and degree >= 2.
KeyPair keygen(unsigned prime_bits, int degree, std::optional<BigUint> e,
               RandomSource& rng);

/// Assembles a keypair from fixed parts (demo and test keys). f is given by
/// its coefficients modulo n = p*q and must be monic, of degree >= 2, and
/// irreducible modulo both primes.
KeyPair keygen_from_parts(const BigUint& p, const BigUint& q, const Poly& f,
                          const BigUint& e);

/// Embeds a message into a group element: the padded payload fills the
/// coefficients of x^0 .. x^(deg f - 2) one block each, and the leading
/// coefficient is drawn at random until the element lands in the group.
/// Throws CapacityError when the message is too long for the key.
JacElement encode(const PublicKey& key, std::span<const std::uint8_t> message,
                  RandomSource& rng);

/// Recovers the message bytes embedded by encode. DecodeError if the element
/// does not carry a well-formed payload.
Bytes decode(const PublicKey& key, const JacElement& element);

/// encode, then multiply by e in the group. Randomized: encrypting the same
/// message twice almost surely yields different ciphertexts.
Ciphertext encrypt(const PublicKey& key, std::span<const std::uint8_t> message,
                   RandomSource& rng);

/// Multiplies by d and decodes. DecodeError for ciphertexts that are not
/// valid group elements or do not decode to a payload; ModulusFactoredError
/// if the arithmetic stumbles on a factor of n (possible for corrupt inputs).
Bytes decrypt(const PrivateKey& key, const Ciphertext& ct);

/// Decrypts with only the public key and the factorization of n, recomputing
/// d from scratch — the attack that breaking n reduces to.
Bytes break_with_factors(const PublicKey& key, const BigUint& p,
                         const BigUint& q, const Ciphertext& ct);

}  // namespace nodal::pke
