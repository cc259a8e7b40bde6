#pragma once

#include <cstdint>
#include <span>

#include "nodal/bigint.hpp"

namespace nodal {

// Source of randomness for sampling and key generation. Implementations are
// stateful; do not share one instance across threads.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  /// Uniform integer in [0, bound). bound must be positive.
  virtual BigUint below(const BigUint& bound) = 0;

  /// Uniform integer in [0, 2^nbits).
  virtual BigUint bits(unsigned nbits) = 0;

  /// Fills `out` with uniform bytes.
  virtual void fill(std::span<std::uint8_t> out) = 0;
};

// Deterministic generator: a fixed seed reproduces the exact draw sequence,
// which is what makes seeded keygen/encrypt runs byte-identical.
class SeededRng final : public RandomSource {
 public:
  explicit SeededRng(std::uint64_t seed);

  BigUint below(const BigUint& bound) override;
  BigUint bits(unsigned nbits) override;
  void fill(std::span<std::uint8_t> out) override;

 private:
  gmp_randclass state_;
};

/// Fresh 64-bit seed from the OS entropy source.
std::uint64_t entropy_seed();

}  // namespace nodal
