#include "nodal/mumford.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace nodal {

namespace {

void check_divisor(const SingularCurve& c, const MumfordDivisor& d) {
  if (d.u.modulus() != c.modulus() || d.v.modulus() != c.modulus()) {
    throw std::invalid_argument("divisor modulus does not match the curve");
  }
}

template <class T>
T must(Fallible<T> r, const char* what) {
  if (!r.ok()) {
    throw std::logic_error(std::string("unexpected factor event in ") + what);
  }
  return std::move(std::move(r).value());
}

}  // namespace

SingularCurve::SingularCurve(BigUint modulus, Poly g)
    : modulus_(std::move(modulus)), g_(std::move(g)) {
  if (modulus_ < 3 || mpz_even_p(modulus_.get_mpz_t())) {
    throw std::invalid_argument("curve modulus must be an odd integer >= 3");
  }
  if (g_.modulus() != modulus_) {
    throw std::invalid_argument("g is defined over a different modulus");
  }
  if (!g_.is_monic() || g_.degree() < 3 || g_.degree() % 2 == 0) {
    throw std::invalid_argument("g must be monic of odd degree >= 3");
  }
  genus_ = (g_.degree() - 1) / 2;
}

MumfordDivisor MumfordDivisor::identity(const BigUint& modulus) {
  return {Poly::one(modulus), Poly::zero(modulus)};
}

bool is_valid(const SingularCurve& curve, const MumfordDivisor& d) {
  check_divisor(curve, d);
  if (d.u.is_zero() || !d.u.is_monic()) return false;
  if (d.v.degree() >= d.u.degree()) return false;

  // u | v^2 - g. The quotient is reused by the singular-point condition.
  auto div = divrem(d.v * d.v - curve.g(), d.u);
  if (!div.ok()) throw std::logic_error("is_valid expects a prime modulus");
  if (!div.value().rem.is_zero()) return false;
  const Poly& q = div.value().quot;

  // Common factors of u and v located at singular points of the curve (the
  // repeated-root locus gcd(g, g')) must not divide (v^2 - g)/u; otherwise
  // the pair does not describe a divisor class of the generalized Jacobian.
  if (d.u.degree() == 0) return true;
  Poly s1 = must(gcd(d.u, d.v), "is_valid");
  if (s1.degree() < 1) return true;
  Poly sing = must(gcd(curve.g(), derivative(curve.g())), "is_valid");
  if (sing.degree() < 1) return true;
  Poly w = must(gcd(s1, sing), "is_valid");
  if (w.degree() < 1) return true;
  return must(gcd(w, q), "is_valid").degree() < 1;
}

Fallible<MumfordDivisor> reduce(const SingularCurve& curve, MumfordDivisor d) {
  check_divisor(curve, d);
  if (d.u.is_zero()) throw std::invalid_argument("reduce needs a nonzero u");
  Poly u = std::move(d.u);
  Poly v = std::move(d.v);
  while (u.degree() > curve.genus()) {
    auto step = divrem(v * v - curve.g(), u);
    if (!step.ok()) return step.factor();
    if (!step.value().rem.is_zero()) {
      throw std::invalid_argument("reduce input violates u | v^2 - g");
    }
    Poly unew = std::move(step.value().quot);
    // deg((v^2 - g)/u) < deg u is guaranteed while deg u > genus; a
    // violation means the input was not a divisor at all.
    if (unew.degree() >= u.degree()) {
      throw std::invalid_argument("reduction failed to decrease the degree");
    }
    auto vr = divrem(v, unew);
    if (!vr.ok()) return vr.factor();
    v = -std::move(vr.value().rem);
    u = std::move(unew);
  }
  auto mu = monic(u);
  if (!mu.ok()) return mu.factor();
  return MumfordDivisor{std::move(mu).value(), std::move(v)};
}

Fallible<MumfordDivisor> cantor_add(const SingularCurve& curve,
                                    const MumfordDivisor& d1,
                                    const MumfordDivisor& d2) {
  check_divisor(curve, d1);
  check_divisor(curve, d2);
  if (d1.is_identity()) return reduce(curve, d2);
  if (d2.is_identity()) return reduce(curve, d1);

  // Composition. First h = gcd(u1, u2, v1 + v2) with Bezout cofactors
  // h1, h2, h3 obtained by chaining two extended gcds.
  auto ga = xgcd(d1.u, d2.u);  // e1 u1 + e2 u2 = a
  if (!ga.ok()) return ga.factor();
  Poly vs = d1.v + d2.v;
  auto gb = xgcd(ga.value().g, vs);  // c1 a + c2 vs = h
  if (!gb.ok()) return gb.factor();
  Poly h = std::move(gb.value().g);
  Poly h1 = gb.value().s * ga.value().s;
  Poly h2 = gb.value().s * ga.value().t;
  Poly h3 = std::move(gb.value().t);

  // u = u1 u2 / h^2, v = (h1 u1 v2 + h2 u2 v1 + h3 (v1 v2 + g)) / h mod u.
  auto du = divrem(d1.u * d2.u, h * h);
  if (!du.ok()) return du.factor();
  if (!du.value().rem.is_zero()) {
    throw std::invalid_argument("composition inputs violate the Mumford form");
  }
  Poly u = std::move(du.value().quot);
  Poly num = h1 * d1.u * d2.v + h2 * d2.u * d1.v +
             h3 * (d1.v * d2.v + curve.g());
  auto dv = divrem(num, h);
  if (!dv.ok()) return dv.factor();
  if (!dv.value().rem.is_zero()) {
    throw std::invalid_argument("composition inputs violate the Mumford form");
  }
  Poly v = mod_monic(dv.value().quot, u);
  return reduce(curve, MumfordDivisor{std::move(u), std::move(v)});
}

Fallible<MumfordDivisor> cantor_scalar_mul(const SingularCurve& curve,
                                           const BigUint& k,
                                           const MumfordDivisor& d) {
  check_divisor(curve, d);
  if (k < 0) throw std::invalid_argument("scalar must be >= 0");
  if (k == 0 || d.is_identity()) {
    return MumfordDivisor::identity(curve.modulus());
  }
  auto base = reduce(curve, d);
  if (!base.ok()) return base.factor();
  MumfordDivisor acc = base.value();
  for (int i = static_cast<int>(bit_length(k)) - 2; i >= 0; --i) {
    auto dbl = cantor_add(curve, acc, acc);
    if (!dbl.ok()) return dbl.factor();
    acc = std::move(dbl).value();
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      auto sum = cantor_add(curve, acc, base.value());
      if (!sum.ok()) return sum.factor();
      acc = std::move(sum).value();
    }
  }
  return acc;
}

MumfordDivisor cantor_negate(const MumfordDivisor& d) {
  return MumfordDivisor{d.u, -d.v};
}

}  // namespace nodal
