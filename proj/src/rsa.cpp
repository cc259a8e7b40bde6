#include "nodal/rsa.hpp"

#include <stdexcept>
#include <string>

#include "nodal/modular.hpp"

namespace nodal::rsa {

namespace {

// Draws p != q of exactly `bits` bits each.
std::pair<BigUint, BigUint> draw_primes(unsigned bits, RandomSource& rng) {
  const BigUint p = random_prime(bits, rng);
  BigUint q = random_prime(bits, rng);
  while (q == p) q = random_prime(bits, rng);
  return {p, q};
}

BigUint invert_exponent(const BigUint& e, const BigUint& phi) {
  const Fallible<Residue> inv = inverse_or_factor(Residue(e, phi));
  if (!inv.ok()) throw std::logic_error("exponent not coprime to phi");
  return inv.value().value();
}

}  // namespace

KeyPair keygen(unsigned bits, std::optional<BigUint> e, RandomSource& rng) {
  if (bits < 3) throw std::invalid_argument("key size must be >= 3 bits");
  if (e) {
    if (*e < 3 || mpz_even_p(e->get_mpz_t()))
      throw std::invalid_argument("public exponent must be odd and >= 3");
  }

  // An odd e can always be made coprime to phi by redrawing the primes, but
  // cap the attempts so a pathological request fails loudly.
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto [p, q] = draw_primes(bits, rng);
    const BigUint phi = (p - 1) * (q - 1);
    // 65537 is the conventional choice; tiny demo keys fall back to 3.
    const BigUint pub = e ? *e : (phi > 65537 ? BigUint(65537) : BigUint(3));
    if (pub >= phi) continue;
    BigUint g;
    mpz_gcd(g.get_mpz_t(), pub.get_mpz_t(), phi.get_mpz_t());
    if (g != 1) continue;
    return {p * q, pub, invert_exponent(pub, phi), p, q};
  }
  throw std::runtime_error("no primes compatible with the public exponent");
}

KeyPair keygen_from_primes(const BigUint& p, const BigUint& q,
                           const BigUint& e) {
  if (!is_probable_prime(p) || !is_probable_prime(q))
    throw std::invalid_argument("p and q must both be prime");
  if (p == q) throw std::invalid_argument("p and q must be distinct");
  if (e < 2) throw std::invalid_argument("public exponent must be >= 2");
  const BigUint phi = (p - 1) * (q - 1);
  BigUint g;
  mpz_gcd(g.get_mpz_t(), e.get_mpz_t(), phi.get_mpz_t());
  if (g != 1)
    throw std::invalid_argument("public exponent shares a factor with phi");
  return {p * q, e, invert_exponent(e, phi), p, q};
}

BigUint encrypt(const PublicKey& key, const BigUint& m) {
  if (m < 0 || m >= key.n)
    throw std::invalid_argument("message must lie in [0, n)");
  return mod_pow(Residue(m, key.n), key.e).value();
}

BigUint decrypt(const KeyPair& key, const BigUint& c) {
  if (c < 0 || c >= key.n)
    throw std::invalid_argument("ciphertext must lie in [0, n)");
  return mod_pow(Residue(c, key.n), key.d).value();
}

std::size_t max_message_bytes(const BigUint& n) {
  return (bit_length(n) - 1) / 8;
}

ByteCiphertext encrypt_bytes(const PublicKey& key,
                             std::span<const std::uint8_t> message) {
  const std::size_t cap = max_message_bytes(key.n);
  if (message.size() > cap)
    throw std::length_error("message of " + std::to_string(message.size()) +
                            " bytes exceeds the key capacity of " +
                            std::to_string(cap) + " bytes");
  BigUint m = 0;
  if (!message.empty())
    mpz_import(m.get_mpz_t(), message.size(), 1, 1, 0, 0, message.data());
  return {message.size(), encrypt(key, m)};
}

std::vector<std::uint8_t> decrypt_bytes(const KeyPair& key,
                                        const ByteCiphertext& ct) {
  if (ct.length > max_message_bytes(key.n))
    throw DecodeError("recorded length exceeds the key capacity");
  if (ct.c >= key.n) throw DecodeError("ciphertext value is out of range");
  const BigUint m = decrypt(key, ct.c);
  if (bit_length(m) > 8 * ct.length)
    throw DecodeError("decryption does not fit the recorded length");
  std::vector<std::uint8_t> out(ct.length, 0);
  if (m != 0) {
    const std::size_t need = (bit_length(m) + 7) / 8;
    std::size_t written = 0;
    mpz_export(out.data() + (out.size() - need), &written, 1, 1, 0, 0,
               m.get_mpz_t());
  }
  return out;
}

}  // namespace nodal::rsa
