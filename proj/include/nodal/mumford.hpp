#pragma once

#include "nodal/bigint.hpp"
#include "nodal/poly.hpp"

namespace nodal {

// A (possibly singular) odd-degree curve y^2 = g(x) over Z_m with g monic.
// Its Jacobian arithmetic runs through Mumford pairs and Cantor's algorithm,
// which tolerates repeated roots of g; the genus used by the reduction bound
// is (deg g - 1) / 2.
class SingularCurve {
 public:
  /// Throws std::invalid_argument unless m >= 3 is odd and g is monic of odd
  /// degree >= 3 over m.
  SingularCurve(BigUint modulus, Poly g);

  const BigUint& modulus() const { return modulus_; }
  const Poly& g() const { return g_; }
  int genus() const { return genus_; }

 private:
  BigUint modulus_;
  Poly g_;
  int genus_;
};

// Mumford pair (u, v): u monic, deg v < deg u, u | v^2 - g. The pair (1, 0)
// is the identity class.
struct MumfordDivisor {
  Poly u;
  Poly v;

  static MumfordDivisor identity(const BigUint& modulus);
  bool is_identity() const { return u.is_one() && v.is_zero(); }

  friend bool operator==(const MumfordDivisor&, const MumfordDivisor&) = default;
};

/// Checks the Mumford conditions, including the extra one at singular points:
/// a prime-power factor shared by u, v, and the singular locus of g must not
/// survive into (v^2 - g)/u. Intended for prime moduli; a factor event over a
/// composite modulus raises std::logic_error.
bool is_valid(const SingularCurve& curve, const MumfordDivisor& d);

/// Cantor reduction: repeats u <- (v^2 - g)/u, v <- -v mod u until
/// deg u <= genus, then makes u monic. Input needs deg v < deg u and
/// u | v^2 - g (callers produce this shape); output is the unique reduced
/// representative of the class.
Fallible<MumfordDivisor> reduce(const SingularCurve& curve, MumfordDivisor d);

/// Cantor's addition: composition via two extended gcds, then reduction.
Fallible<MumfordDivisor> cantor_add(const SingularCurve& curve,
                                    const MumfordDivisor& d1,
                                    const MumfordDivisor& d2);

/// k-fold sum by square-and-multiply over cantor_add. k >= 0.
Fallible<MumfordDivisor> cantor_scalar_mul(const SingularCurve& curve,
                                           const BigUint& k,
                                           const MumfordDivisor& d);

/// (u, -v mod u): the group negation.
MumfordDivisor cantor_negate(const MumfordDivisor& d);

}  // namespace nodal
