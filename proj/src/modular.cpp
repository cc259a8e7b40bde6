#include "nodal/modular.hpp"

#include <stdexcept>

namespace nodal {

namespace {

// Trial division; n must fit in an unsigned long. Exact.
bool is_prime_small(unsigned long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (unsigned long d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

Residue::Residue(BigUint value, BigUint modulus) : modulus_(std::move(modulus)) {
  if (modulus_ < 2) throw std::invalid_argument("Residue modulus must be >= 2");
  value_ = mod_reduce(value, modulus_);
}

Residue mul(const Residue& a, const Residue& b) {
  if (a.modulus() != b.modulus()) {
    throw std::invalid_argument("Residue modulus mismatch");
  }
  return Residue(a.value() * b.value(), a.modulus());
}

Residue mod_pow(const Residue& base, const BigUint& exponent) {
  if (exponent < 0) throw std::invalid_argument("mod_pow exponent must be >= 0");
  BigUint r;
  mpz_powm(r.get_mpz_t(), base.value().get_mpz_t(), exponent.get_mpz_t(),
           base.modulus().get_mpz_t());
  return Residue(std::move(r), base.modulus());
}

Fallible<Residue> inverse_or_factor(const Residue& a) {
  BigUint g, s;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), nullptr, a.value().get_mpz_t(),
             a.modulus().get_mpz_t());
  if (g != 1) return Factor{std::move(g)};
  return Residue(std::move(s), a.modulus());
}

bool is_probable_prime(const BigUint& n, unsigned rounds, RandomSource& rng) {
  if (rounds < 1) throw std::invalid_argument("primality rounds must be >= 1");
  if (n < 65536) return is_prime_small(mpz_get_ui(n.get_mpz_t()));
  if (mpz_even_p(n.get_mpz_t())) return false;

  // n - 1 = 2^s * d with d odd.
  BigUint nm1 = n - 1;
  unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
  BigUint d = nm1 >> s;

  BigUint a, x;
  for (unsigned round = 0; round < rounds; ++round) {
    a = 2 + rng.below(n - 3);  // uniform in [2, n-2]
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) continue;
    bool witness = true;
    for (unsigned long i = 1; i < s; ++i) {
      x = mod_reduce(x * x, n);
      if (x == nm1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

bool is_probable_prime(const BigUint& n, unsigned rounds) {
  thread_local SeededRng base_source(0x6d725f6261736573ULL);
  return is_probable_prime(n, rounds, base_source);
}

BigUint random_prime(unsigned bits, RandomSource& rng) {
  if (bits < 3) throw std::invalid_argument("random_prime needs bits >= 3");
  const BigUint top = BigUint(1) << (bits - 1);
  for (;;) {
    BigUint candidate = top | (rng.bits(bits - 2) << 1) | 1;
    if (is_probable_prime(candidate, kDefaultPrimalityRounds, rng)) {
      return candidate;
    }
  }
}

}  // namespace nodal
