#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nodal::bench {

// One timing row. `degree` is deg g = 2 deg f + 1 for the raw group-law
// comparison (the curve y^2 = g(x) both sides operate on) and deg f for the
// encryption-scheme comparison; `seconds` is the mean over `trials` runs.
struct Record {
  std::string scheme;
  unsigned prime_bits;
  int degree;
  std::string operation;
  double seconds;
  int trials;
  std::uint64_t seed;
};

/// CSV with the fixed header
/// `scheme,prime_bits,degree,operation,seconds,trials,seed`.
std::string to_csv(const std::vector<Record>& records);

/// Times p-fold scalar multiplication of a random group element two ways on
/// the same curve: via the single-polynomial group law ("nodal") and via
/// Cantor's algorithm on the Mumford image ("cantor"). One random prime p of
/// `prime_bits` bits is drawn once and shared by every degree, and each
/// deg_g entry (odd, >= 3) builds y^2 = x f(x)^2 with deg f = (deg g - 1)/2.
/// Two records per degree. trials >= 3. Progress lines go to *log if given.
std::vector<Record> group_add(unsigned prime_bits,
                              const std::vector<int>& deg_g, int trials,
                              std::uint64_t seed, std::ostream* log);

/// Times encrypt and decrypt for the nodal scheme against textbook RSA on
/// same-size keys: one pair of (modulus_bits/2)-bit primes is drawn once and
/// shared by both schemes and every degree (deg f in `degrees`, each >= 2),
/// with e = 65537 throughout. The message is random, as long as fits both
/// schemes. Four records per degree. trials >= 3.
std::vector<Record> pke_compare(unsigned modulus_bits,
                                const std::vector<int>& degrees, int trials,
                                std::uint64_t seed, std::ostream* log);

}  // namespace nodal::bench
