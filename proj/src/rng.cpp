#include "nodal/rng.hpp"

#include <random>
#include <stdexcept>

namespace nodal {

SeededRng::SeededRng(std::uint64_t seed) : state_(gmp_randinit_mt) {
  // Seed through an mpz so the full 64 bits land in the state even where
  // unsigned long is narrower.
  BigUint s;
  mpz_import(s.get_mpz_t(), 1, 1, sizeof(seed), 0, 0, &seed);
  state_.seed(s);
}

BigUint SeededRng::below(const BigUint& bound) {
  if (bound <= 0) throw std::invalid_argument("rng bound must be positive");
  return state_.get_z_range(bound);
}

BigUint SeededRng::bits(unsigned nbits) { return state_.get_z_bits(nbits); }

void SeededRng::fill(std::span<std::uint8_t> out) {
  std::size_t i = 0;
  while (i < out.size()) {
    const BigUint chunk = state_.get_z_bits(32);
    unsigned long word = mpz_get_ui(chunk.get_mpz_t());
    for (int b = 3; b >= 0 && i < out.size(); --b) {
      out[i++] = static_cast<std::uint8_t>((word >> (8 * b)) & 0xff);
    }
  }
}

std::uint64_t entropy_seed() {
  std::random_device dev;
  return (static_cast<std::uint64_t>(dev()) << 32) ^ dev();
}

}  // namespace nodal
