#pragma once

#include <optional>
#include <vector>

#include "nodal/bigint.hpp"
#include "nodal/mumford.hpp"
#include "nodal/poly.hpp"
#include "nodal/rng.hpp"

namespace nodal {

// The nodal curve y^2 = x f(x)^2 over Z_m, f monic with a unit constant
// term (so every singular point is a node, never a cusp). Over F_p with f
// irreducible of degree r, the generalized Jacobian is a rank-r torus whose
// classes admit the single-polynomial representation below.
class NodalCurve {
 public:
  /// Throws std::invalid_argument unless m >= 3 is odd, f is monic of
  /// degree >= 1 over m, and gcd(f(0), m) = 1. Irreducibility of f (mod each
  /// prime factor of m) is the caller's contract; it is not re-checked here
  /// because m may be composite.
  NodalCurve(BigUint modulus, Poly f);

  const BigUint& modulus() const { return modulus_; }
  const Poly& f() const { return f_; }
  int degree() const { return f_.degree(); }

  /// The Mumford-side model y^2 = g(x) with g = x f(x)^2 (genus = deg f),
  /// used by the Cantor-algorithm cross-check.
  SingularCurve singular_model() const;

 private:
  BigUint modulus_;
  Poly f_;
};

// A divisor class: the distinguished identity, or a polynomial h with
// deg h < deg f and gcd(f, x - h^2) = 1. Every non-identity class has
// exactly one such h.
class JacElement {
 public:
  static JacElement identity() { return JacElement(); }
  static JacElement repr(Poly h) { return JacElement(std::move(h)); }

  bool is_identity() const { return !h_.has_value(); }
  /// The representative polynomial. Throws std::logic_error on the identity.
  const Poly& poly() const;

  friend bool operator==(const JacElement&, const JacElement&) = default;

 private:
  JacElement() = default;
  explicit JacElement(Poly h) : h_(std::move(h)) {}

  std::optional<Poly> h_;
};

/// deg h < deg f and gcd(f, x - h^2) = 1. A degree violation simply yields
/// false; the gcd can surface a Factor over a composite modulus.
Fallible<bool> is_valid_element(const NodalCurve& curve, const Poly& h);

/// Group law on representatives: s = h1 + h2; s == 0 means the classes are
/// inverse to one another and the sum is the identity; otherwise with
/// g1 f + g2 s = 1 the sum is g2 (h1 h2 + x) mod f. Inputs must be valid
/// elements (std::invalid_argument if detectably not).
Fallible<JacElement> add(const NodalCurve& curve, const JacElement& e1,
                         const JacElement& e2);

/// The inverse class: h maps to -h, the identity to itself.
JacElement negate(const JacElement& e);

/// k-fold sum by square-and-multiply. k >= 0.
Fallible<JacElement> scalar_mul(const NodalCurve& curve, const BigUint& k,
                                const JacElement& e);

/// The Mumford pair of the class: identity -> (1, 0), h -> (f^2, h f).
/// Note the non-identity pair has deg u = 2 deg f, i.e. it is the
/// composition-shaped representative, not the reduced one; canonicalize with
/// reduce() before comparing against Cantor-side output.
MumfordDivisor to_mumford(const NodalCurve& curve, const JacElement& e);

enum class Twist { split, nonsplit };

struct GroupOrder {
  BigUint value;
  Twist twist;
};

/// Group order over F_p for irreducible f of degree r: p^r - 1 when the
/// class of x is a square in F_p[x]/(f) (split torus), else p^r + 1
/// (nonsplit). Decided by the Euler criterion x^((p^r-1)/2) mod f and
/// verified by annihilating 5 pseudorandomly sampled elements; if the
/// primary candidate fails verification the other one is tried, and
/// std::runtime_error reports an internal inconsistency if both fail.
GroupOrder group_order(const BigUint& p, const Poly& f);

/// Uniform valid representative (never the identity): redraws random h of
/// degree < deg f until is_valid_element accepts. Throws
/// ModulusFactoredError if a draw factors a composite modulus.
JacElement random_element(const NodalCurve& curve, RandomSource& rng);

/// Every valid representative, by brute force; meant for small test curves.
/// Throws std::invalid_argument when p^r exceeds 2^20.
std::vector<Poly> enumerate_elements(const NodalCurve& curve);

}  // namespace nodal
