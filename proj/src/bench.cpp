#include "nodal/bench.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "nodal/jacobian.hpp"
#include "nodal/modular.hpp"
#include "nodal/mumford.hpp"
#include "nodal/pke.hpp"
#include "nodal/rng.hpp"
#include "nodal/rsa.hpp"

namespace nodal::bench {

namespace {

using Clock = std::chrono::steady_clock;

// Mean seconds per call of fn() over `trials` timed runs, after one
// untimed warmup call.
template <class Fn>
double time_mean(int trials, Fn&& fn) {
  fn();
  double total = 0.0;
  for (int i = 0; i < trials; ++i) {
    const auto start = Clock::now();
    fn();
    total += std::chrono::duration<double>(Clock::now() - start).count();
  }
  return total / trials;
}

void log_record(std::ostream* log, const Record& rec) {
  if (!log) return;
  *log << rec.scheme << " bits=" << rec.prime_bits << " degree=" << rec.degree
       << " " << rec.operation << ": " << rec.seconds << " s (mean of "
       << rec.trials << ")\n";
}

void check_trials(int trials) {
  if (trials < 3) throw std::invalid_argument("trials must be >= 3");
}

}  // namespace

std::string to_csv(const std::vector<Record>& records) {
  std::string out = "scheme,prime_bits,degree,operation,seconds,trials,seed\n";
  char buf[64];
  for (const Record& r : records) {
    std::snprintf(buf, sizeof buf, "%.9e", r.seconds);
    out += r.scheme + ',' + std::to_string(r.prime_bits) + ',' +
           std::to_string(r.degree) + ',' + r.operation + ',' + buf + ',' +
           std::to_string(r.trials) + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

std::vector<Record> group_add(unsigned prime_bits,
                              const std::vector<int>& deg_g, int trials,
                              std::uint64_t seed, std::ostream* log) {
  check_trials(trials);
  if (deg_g.empty()) throw std::invalid_argument("no degrees given");
  for (const int d : deg_g)
    if (d < 3 || d % 2 == 0)
      throw std::invalid_argument("deg g must be odd and >= 3");

  SeededRng rng(seed);
  // One prime per bit size, shared across degrees, so rows differ only in
  // the degree.
  const BigUint p = random_prime(prime_bits, rng);

  std::vector<Record> records;
  for (const int dg : deg_g) {
    const int r = (dg - 1) / 2;
    const Poly f = random_irreducible(r, p, rng);
    const NodalCurve curve(p, f);
    const SingularCurve model = curve.singular_model();

    const JacElement q = random_element(curve, rng);
    const MumfordDivisor divisor =
        reduce(model, to_mumford(curve, q)).value();

    Record nodal{"nodal", prime_bits, dg, "scalar-mul", 0.0, trials, seed};
    nodal.seconds = time_mean(
        trials, [&] { (void)scalar_mul(curve, p, q).value(); });
    log_record(log, nodal);
    records.push_back(std::move(nodal));

    Record cantor{"cantor", prime_bits, dg, "scalar-mul", 0.0, trials, seed};
    cantor.seconds = time_mean(
        trials, [&] { (void)cantor_scalar_mul(model, p, divisor).value(); });
    log_record(log, cantor);
    records.push_back(std::move(cantor));
  }
  return records;
}

std::vector<Record> pke_compare(unsigned modulus_bits,
                                const std::vector<int>& degrees, int trials,
                                std::uint64_t seed, std::ostream* log) {
  check_trials(trials);
  if (modulus_bits < 32 || modulus_bits % 2 != 0)
    throw std::invalid_argument("modulus bits must be even and >= 32");
  if (degrees.empty()) throw std::invalid_argument("no degrees given");
  for (const int d : degrees)
    if (d < 2) throw std::invalid_argument("degree must be >= 2");

  const unsigned prime_bits = modulus_bits / 2;
  const BigUint e = 65537;
  SeededRng rng(seed);

  // One prime pair shared by both schemes and all degrees: the comparison
  // then isolates the scheme and the degree, not the key material.
  BigUint p, q;
  for (;;) {
    p = random_prime(prime_bits, rng);
    do q = random_prime(prime_bits, rng);
    while (q == p);
    BigUint g;
    const BigUint phi = (p - 1) * (q - 1);
    mpz_gcd(g.get_mpz_t(), e.get_mpz_t(), phi.get_mpz_t());
    if (g == 1) break;  // e must also work for the RSA side
  }
  const rsa::KeyPair rsa_key = rsa::keygen_from_primes(p, q, e);

  std::vector<Record> records;
  for (const int degree : degrees) {
    // Retry f until the group order is coprime to e; the obstruction is a
    // property of f, not of the primes.
    pke::KeyPair key = [&] {
      for (;;) {
        try {
          return pke::keygen_from_parts(
              p, q, lift_irreducible(degree, p, q, rng), e);
        } catch (const pke::KeyGenError&) {
        }
      }
    }();

    // The longest message both schemes can carry, so the work compared is
    // byte-for-byte the same.
    std::vector<std::uint8_t> msg(
        std::min(pke::max_message_bytes(key.pub),
                 rsa::max_message_bytes(rsa_key.n)));
    rng.fill(msg);

    Record rec{"nodal-pke", prime_bits, degree, "encrypt", 0.0, trials, seed};
    rec.seconds =
        time_mean(trials, [&] { (void)pke::encrypt(key.pub, msg, rng); });
    log_record(log, rec);
    records.push_back(rec);

    const pke::Ciphertext ct = pke::encrypt(key.pub, msg, rng);
    rec.operation = "decrypt";
    rec.seconds =
        time_mean(trials, [&] { (void)pke::decrypt(key.priv, ct); });
    log_record(log, rec);
    records.push_back(rec);

    rec = {"rsa", prime_bits, degree, "encrypt", 0.0, trials, seed};
    rec.seconds = time_mean(
        trials, [&] { (void)rsa::encrypt_bytes(rsa_key.public_part(), msg); });
    log_record(log, rec);
    records.push_back(rec);

    const rsa::ByteCiphertext rct =
        rsa::encrypt_bytes(rsa_key.public_part(), msg);
    rec.operation = "decrypt";
    rec.seconds =
        time_mean(trials, [&] { (void)rsa::decrypt_bytes(rsa_key, rct); });
    log_record(log, rec);
    records.push_back(rec);
  }
  return records;
}

}  // namespace nodal::bench
