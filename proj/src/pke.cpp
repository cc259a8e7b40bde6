#include "nodal/pke.hpp"

#include <algorithm>
#include <utility>

#include "nodal/modular.hpp"

namespace nodal::pke {

namespace {

// Redraws of the random leading coefficient before encode gives up. Each
// draw lands in the group with probability near 1, so hitting this cap
// signals a broken key rather than bad luck.
constexpr int kEmbedAttempts = 64;

// The length header is two bytes, so no key can carry more than this.
constexpr std::size_t kMaxLength = 65535;

std::string capacity_message(std::size_t max_bytes, std::size_t got_bytes) {
  if (max_bytes == 0)
    return "the key is too small to embed any message";
  return "message of " + std::to_string(got_bytes) +
         " bytes exceeds the key capacity of " + std::to_string(max_bytes) +
         " bytes";
}

// Big-endian bytes -> integer.
BigUint block_value(std::span<const std::uint8_t> block) {
  BigUint v = 0;
  if (!block.empty())
    mpz_import(v.get_mpz_t(), block.size(), 1, 1, 0, 0, block.data());
  return v;
}

// Integer -> big-endian bytes, left-padded with zeros. v < 256^block_size.
void store_block(const BigUint& v, std::span<std::uint8_t> block) {
  std::fill(block.begin(), block.end(), std::uint8_t{0});
  if (v == 0) return;
  const std::size_t need = (bit_length(v) + 7) / 8;
  std::size_t written = 0;
  mpz_export(block.data() + (block.size() - need), &written, 1, 1, 0, 0,
             v.get_mpz_t());
}

struct Orders {
  BigUint K;  // product of the per-prime group orders
};

// The group order of the curve over Z_pq is the product of the orders over
// F_p and F_q. group_order validates primality and irreducibility for us.
Orders orders_from_parts(const BigUint& p, const BigUint& q, const Poly& f) {
  const GroupOrder over_p = group_order(p, f.reduced_mod(p));
  const GroupOrder over_q = group_order(q, f.reduced_mod(q));
  return {over_p.value * over_q.value};
}

BigUint exponent_gcd(const BigUint& e, const BigUint& K) {
  BigUint g;
  mpz_gcd(g.get_mpz_t(), e.get_mpz_t(), K.get_mpz_t());
  return g;
}

KeyPair assemble(BigUint p, BigUint q, Poly f, const BigUint& e,
                 const BigUint& K) {
  const Fallible<Residue> inv = inverse_or_factor(Residue(e, K));
  if (!inv.ok()) throw std::logic_error("exponent not coprime to K");
  BigUint n = p * q;
  PublicKey pub{n, f, e};
  PrivateKey priv{std::move(n), std::move(p), std::move(q),
                  std::move(f), inv.value().value(), K};
  return {std::move(pub), std::move(priv)};
}

// Shared by decrypt and decode: the element must be a non-identity group
// element of the right curve before it can carry a payload.
const Poly& payload_poly(const NodalCurve& curve, const JacElement& element) {
  if (element.is_identity())
    throw DecodeError("the identity element carries no payload");
  const Poly& t = element.poly();
  if (t.modulus() != curve.modulus())
    throw DecodeError("element modulus does not match the key");
  if (t.degree() >= curve.degree())
    throw DecodeError("element degree is out of range for the key");
  return t;
}

Bytes decode_element(const BigUint& n, const Poly& f,
                     const JacElement& element) {
  const NodalCurve curve(n, f);
  const Poly& t = payload_poly(curve, element);
  const std::size_t bs = block_size(n);
  const std::size_t blocks = static_cast<std::size_t>(f.degree()) - 1;
  const std::size_t total = blocks * bs;
  if (total < 3)
    throw DecodeError("the key is too small to carry a payload");
  const std::size_t cap = std::min(total - 3, kMaxLength);

  Bytes payload(total);
  for (std::size_t j = 0; j < blocks; ++j) {
    const BigUint& c = t.coeff(j);
    if (bit_length(c) > 8 * bs)
      throw DecodeError("coefficient block is out of range");
    store_block(c, std::span(payload).subspan(j * bs, bs));
  }

  const std::size_t length = (static_cast<std::size_t>(payload[0]) << 8) |
                             static_cast<std::size_t>(payload[1]);
  if (length > cap) throw DecodeError("payload length field is out of range");
  return Bytes(payload.begin() + 2, payload.begin() + 2 + length);
}

}  // namespace

CapacityError::CapacityError(std::size_t max_bytes, std::size_t got_bytes)
    : std::runtime_error(capacity_message(max_bytes, got_bytes)),
      max_bytes_(max_bytes),
      got_bytes_(got_bytes) {}

std::size_t block_size(const BigUint& n) {
  return (bit_length(n) - 1) / 8;
}

std::size_t max_message_bytes(const PublicKey& key) {
  const std::size_t blocks = static_cast<std::size_t>(key.f.degree()) - 1;
  const std::size_t total = blocks * block_size(key.n);
  // Two bytes of length header plus at least one byte of filler must fit.
  if (total < 3) return 0;
  return std::min(total - 3, kMaxLength);
}

KeyPair keygen(unsigned prime_bits, int degree, std::optional<BigUint> e,
               RandomSource& rng) {
  if (prime_bits < 16)
    throw std::invalid_argument("prime size must be >= 16 bits");
  if (degree < 2) throw std::invalid_argument("degree must be >= 2");
  if (e && *e < 2) throw std::invalid_argument("public exponent must be >= 2");

  for (int attempt = 0; attempt < 1000; ++attempt) {
    const BigUint p = random_prime(prime_bits, rng);
    BigUint q = random_prime(prime_bits, rng);
    while (q == p) q = random_prime(prime_bits, rng);
    Poly f = lift_irreducible(degree, p, q, rng);
    const auto [K] = orders_from_parts(p, q, f);
    if (e) {
      const BigUint g = exponent_gcd(*e, K);
      if (g != 1)
        throw KeyGenError("public exponent shares the factor " + g.get_str() +
                          " with the group order");
      return assemble(p, q, std::move(f), *e, K);
    }
    // Conventional exponent; the rare incompatible draw is thrown away.
    const BigUint pub = 65537;
    if (exponent_gcd(pub, K) != 1) continue;
    return assemble(p, q, std::move(f), pub, K);
  }
  throw KeyGenError("no key found compatible with the public exponent");
}

KeyPair keygen_from_parts(const BigUint& p, const BigUint& q, const Poly& f,
                          const BigUint& e) {
  if (p == q) throw std::invalid_argument("p and q must be distinct");
  if (f.modulus() != p * q)
    throw std::invalid_argument("f must be given modulo n = p*q");
  if (f.degree() < 2) throw std::invalid_argument("degree must be >= 2");
  if (e < 2) throw std::invalid_argument("public exponent must be >= 2");
  const auto [K] = orders_from_parts(p, q, f);
  const BigUint g = exponent_gcd(e, K);
  if (g != 1)
    throw KeyGenError("public exponent shares the factor " + g.get_str() +
                      " with the group order");
  return assemble(p, q, f, e, K);
}

JacElement encode(const PublicKey& key, std::span<const std::uint8_t> message,
                  RandomSource& rng) {
  const NodalCurve curve(key.n, key.f);
  const int r = key.f.degree();
  const std::size_t bs = block_size(key.n);
  const std::size_t blocks = static_cast<std::size_t>(r) - 1;
  const std::size_t cap = max_message_bytes(key);
  // cap == 0 with no room for the header means nothing fits, not even "".
  if (blocks * bs < 3 || message.size() > cap)
    throw CapacityError(cap, message.size());

  // Payload: two-byte big-endian length, the message, random filler.
  Bytes payload(blocks * bs);
  payload[0] = static_cast<std::uint8_t>(message.size() >> 8);
  payload[1] = static_cast<std::uint8_t>(message.size() & 0xff);
  std::copy(message.begin(), message.end(), payload.begin() + 2);
  rng.fill(std::span(payload).subspan(2 + message.size()));

  // One block per coefficient, ascending: the first block sits at the
  // constant term. Blocks are below 256^bs < n, so they reduce to themselves.
  std::vector<BigUint> coeffs(static_cast<std::size_t>(r));
  for (std::size_t j = 0; j < blocks; ++j)
    coeffs[j] = block_value(std::span(payload).subspan(j * bs, bs));

  // The coefficient of x^(r-1) is free; redraw it until the element is valid.
  for (int attempt = 0; attempt < kEmbedAttempts; ++attempt) {
    coeffs.back() = 1 + rng.below(key.n - 1);
    Poly t(key.n, coeffs);
    const Fallible<bool> valid = is_valid_element(curve, t);
    if (!valid.ok()) throw ModulusFactoredError(valid.factor().value);
    if (valid.value()) return JacElement::repr(std::move(t));
  }
  throw std::runtime_error("failed to embed the message into the group");
}

Bytes decode(const PublicKey& key, const JacElement& element) {
  return decode_element(key.n, key.f, element);
}

Ciphertext encrypt(const PublicKey& key, std::span<const std::uint8_t> message,
                   RandomSource& rng) {
  const NodalCurve curve(key.n, key.f);
  const JacElement t = encode(key, message, rng);
  Fallible<JacElement> c = scalar_mul(curve, key.e, t);
  if (!c.ok()) throw ModulusFactoredError(c.factor().value);
  return {std::move(c).value()};
}

Bytes decrypt(const PrivateKey& key, const Ciphertext& ct) {
  const NodalCurve curve(key.n, key.f);
  const Poly& c = payload_poly(curve, ct.element);
  const Fallible<bool> valid = is_valid_element(curve, c);
  if (!valid.ok()) throw ModulusFactoredError(valid.factor().value);
  if (!valid.value())
    throw DecodeError("ciphertext is not a valid group element");

  Fallible<JacElement> t = scalar_mul(curve, key.d, ct.element);
  if (!t.ok()) throw ModulusFactoredError(t.factor().value);
  return decode_element(key.n, key.f, t.value());
}

Bytes break_with_factors(const PublicKey& key, const BigUint& p,
                         const BigUint& q, const Ciphertext& ct) {
  if (p < 2 || q < 2 || p == q || p * q != key.n)
    throw std::invalid_argument("p and q do not factor the key modulus");
  // With the factorization in hand the secret exponent is recomputable in
  // polynomial time: the per-prime orders give K, and d = e^-1 mod K.
  const auto [K] = orders_from_parts(p, q, key.f);
  const Fallible<Residue> inv = inverse_or_factor(Residue(key.e, K));
  if (!inv.ok())
    throw KeyGenError("public exponent is not invertible mod the group order");
  const PrivateKey priv{key.n, p, q, key.f, inv.value().value(), K};
  return decrypt(priv, ct);
}

}  // namespace nodal::pke
