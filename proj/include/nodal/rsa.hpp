#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nodal/bigint.hpp"
#include "nodal/rng.hpp"

namespace nodal::rsa {

struct PublicKey {
  BigUint n;
  BigUint e;
};

struct KeyPair {
  BigUint n;
  BigUint e;
  BigUint d;
  BigUint p;
  BigUint q;

  PublicKey public_part() const { return {n, e}; }
};

/// Textbook RSA keypair over two distinct random primes of exactly `bits`
/// bits. When e is not supplied, 65537 is used, falling back to 3 for keys
/// too small for it; either way primes are resampled until gcd(e, phi) = 1.
/// A supplied e must be odd and >= 3 (std::invalid_argument otherwise;
/// std::runtime_error if no compatible primes are found after many tries).
KeyPair keygen(unsigned bits, std::optional<BigUint> e, RandomSource& rng);

/// Assembles a keypair from fixed odd primes. Throws std::invalid_argument
/// if p or q is not prime, p == q, or gcd(e, phi) != 1.
KeyPair keygen_from_primes(const BigUint& p, const BigUint& q,
                           const BigUint& e);

/// m^e mod n for m in [0, n); no padding. std::invalid_argument otherwise.
BigUint encrypt(const PublicKey& key, const BigUint& m);

/// c^d mod n for c in [0, n).
BigUint decrypt(const KeyPair& key, const BigUint& c);

/// A parsed or decrypted byte ciphertext is inconsistent with the key.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Longest byte string guaranteed to encode below n: floor((bitlen(n)-1)/8).
std::size_t max_message_bytes(const BigUint& n);

/// Byte-level ciphertext: the integer plus the original length, so leading
/// zero bytes survive the round trip.
struct ByteCiphertext {
  std::size_t length;
  BigUint c;

  friend bool operator==(const ByteCiphertext&,
                         const ByteCiphertext&) = default;
};

/// Interprets the message as a big-endian integer and encrypts it. Throws
/// std::length_error when the message exceeds max_message_bytes(n).
ByteCiphertext encrypt_bytes(const PublicKey& key,
                             std::span<const std::uint8_t> message);

/// Inverse of encrypt_bytes. DecodeError when the recorded length is beyond
/// the key's capacity, the value is out of range, or the decryption does not
/// fit the recorded length (i.e. the key is wrong).
std::vector<std::uint8_t> decrypt_bytes(const KeyPair& key,
                                        const ByteCiphertext& ct);

}  // namespace nodal::rsa
