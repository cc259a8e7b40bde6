#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nodal/bigint.hpp"
#include "nodal/rng.hpp"

namespace nodal {

class RandomSource;

// Dense univariate polynomial over Z_m, coefficients stored by ascending
// degree. Canonical form: coefficients reduced to [0, m) and no trailing
// zeros; the zero polynomial has an empty coefficient vector and degree -1.
class Poly {
 public:
  /// Reduces every coefficient mod `modulus` and trims trailing zeros.
  /// Throws std::invalid_argument if modulus < 2.
  Poly(BigUint modulus, std::vector<BigUint> coeffs);

  static Poly zero(BigUint modulus);
  static Poly one(BigUint modulus);
  static Poly constant(BigUint modulus, BigUint c);
  static Poly x(BigUint modulus);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  const BigUint& modulus() const { return modulus_; }

  /// Coefficient of x^i; zero beyond the degree.
  const BigUint& coeff(std::size_t i) const;
  /// Leading coefficient. Throws std::logic_error on the zero polynomial.
  const BigUint& leading() const;
  std::span<const BigUint> coeffs() const { return coeffs_; }

  /// Same coefficients re-reduced modulo a different modulus.
  Poly reduced_mod(const BigUint& new_modulus) const;

  /// Horner evaluation at `point`, result in [0, m).
  BigUint eval(const BigUint& point) const;

  /// Human-readable form, descending powers, e.g. "x^2 + 2x + 4".
  std::string str() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
  }

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly mul_scalar(const Poly& a, const BigUint& c);
  friend Poly derivative(const Poly& a);
  friend struct PolyDivision;

 private:
  // Tag ctor for internal results whose coefficients are already reduced.
  struct reduced_tag {};
  Poly(reduced_tag, BigUint modulus, std::vector<BigUint> coeffs);

  void trim();

  BigUint modulus_;
  std::vector<BigUint> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

struct DivRem {
  Poly quot;
  Poly rem;
};

/// Long division: a = quot * b + rem with deg rem < deg b. Throws
/// std::invalid_argument if b is zero or the moduli differ. When a division
/// step needs to invert b's leading coefficient and it is not a unit mod m,
/// returns gcd(lc(b), m) as a Factor.
Fallible<DivRem> divrem(const Poly& a, const Poly& b);

/// a mod f for a monic f of degree >= 1; monic division can never hit the
/// factor branch. Throws std::logic_error if f is not monic.
Poly mod_monic(const Poly& a, const Poly& f);

struct Xgcd {
  Poly g;  // monic gcd
  Poly s;
  Poly t;  // g == s*a + t*b
};

/// Extended Euclid over Z_m[x]. Throws std::invalid_argument if both inputs
/// are zero. Non-unit leading coefficients along the remainder chain surface
/// as Factors, exactly like divrem.
Fallible<Xgcd> xgcd(const Poly& a, const Poly& b);

struct HalfXgcd {
  Poly g;  // monic gcd
  Poly t;  // g == s*a + t*b for some untracked s
};

/// xgcd without the a-side cofactor: the same remainder chain (and the same
/// factor behavior), half the cofactor arithmetic. This is the hot path of
/// the group law, which only ever inverts s modulo f.
Fallible<HalfXgcd> half_xgcd(const Poly& a, const Poly& b);

/// Monic gcd without Bezout cofactors (cheaper when they are not needed).
Fallible<Poly> gcd(const Poly& a, const Poly& b);

/// a scaled by the inverse of its leading coefficient. Zero stays zero.
Fallible<Poly> monic(const Poly& a);

/// base^exponent mod `modpoly` by square-and-multiply. modpoly must have
/// degree >= 1; a non-unit leading coefficient surfaces as a Factor.
Fallible<Poly> powmod(const Poly& base, const BigUint& exponent,
                      const Poly& modpoly);

/// Rabin's irreducibility test over F_p: f irreducible of degree r iff
/// x^(p^r) == x mod f and gcd(x^(p^(r/l)) - x, f) == 1 for every prime l
/// dividing r. Requires a monic f of degree >= 1 over a prime modulus
/// (throws std::invalid_argument otherwise).
bool is_irreducible(const Poly& f);

/// Uniform monic irreducible of the given degree over F_p with a nonzero
/// constant term (so x never divides it). p must be an odd prime.
Poly random_irreducible(int degree, const BigUint& p, RandomSource& rng);

/// Monic f over Z_pq, coefficients uniform in [0, pq), irreducible modulo
/// both p and q. Expected tries ~ r^2 / (probability both reductions are
/// irreducible); p and q must be distinct odd primes.
Poly lift_irreducible(int degree, const BigUint& p, const BigUint& q,
                      RandomSource& rng);

}  // namespace nodal
