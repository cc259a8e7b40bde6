#include "nodal/jacobian.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "nodal/modular.hpp"

namespace nodal {

namespace {

template <class T>
T must(Fallible<T> r, const char* what) {
  if (!r.ok()) {
    throw std::logic_error(std::string("unexpected factor event in ") + what);
  }
  return std::move(std::move(r).value());
}

void check_element(const NodalCurve& curve, const JacElement& e) {
  if (e.is_identity()) return;
  if (e.poly().modulus() != curve.modulus()) {
    throw std::invalid_argument("element modulus does not match the curve");
  }
  if (e.poly().degree() >= curve.degree()) {
    throw std::invalid_argument("element degree must be below deg f");
  }
}

}  // namespace

NodalCurve::NodalCurve(BigUint modulus, Poly f)
    : modulus_(std::move(modulus)), f_(std::move(f)) {
  if (modulus_ < 3 || mpz_even_p(modulus_.get_mpz_t())) {
    throw std::invalid_argument("curve modulus must be an odd integer >= 3");
  }
  if (f_.modulus() != modulus_) {
    throw std::invalid_argument("f is defined over a different modulus");
  }
  if (!f_.is_monic() || f_.degree() < 1) {
    throw std::invalid_argument("f must be monic of degree >= 1");
  }
  BigUint g;
  mpz_gcd(g.get_mpz_t(), f_.coeff(0).get_mpz_t(), modulus_.get_mpz_t());
  if (g != 1) {
    throw std::invalid_argument(
        "f must have a unit constant term (x | f makes the curve cuspidal)");
  }
}

SingularCurve NodalCurve::singular_model() const {
  return SingularCurve(modulus_, Poly::x(modulus_) * f_ * f_);
}

const Poly& JacElement::poly() const {
  if (!h_) throw std::logic_error("the identity has no representative");
  return *h_;
}

Fallible<bool> is_valid_element(const NodalCurve& curve, const Poly& h) {
  if (h.modulus() != curve.modulus()) {
    throw std::invalid_argument("element modulus does not match the curve");
  }
  if (h.degree() >= curve.degree()) return false;
  // x - h^2 is never the zero polynomial (odd vs even degree), so the gcd
  // is well defined.
  auto g = gcd(curve.f(), Poly::x(curve.modulus()) - h * h);
  if (!g.ok()) return g.factor();
  return g.value().is_one();
}

Fallible<JacElement> add(const NodalCurve& curve, const JacElement& e1,
                         const JacElement& e2) {
  check_element(curve, e1);
  check_element(curve, e2);
  if (e1.is_identity()) return e2;
  if (e2.is_identity()) return e1;

  const Poly& h1 = e1.poly();
  const Poly& h2 = e2.poly();
  Poly s = h1 + h2;
  // deg s < deg f, so s is a multiple of f exactly when it is zero: the
  // inverse-classes branch.
  if (s.is_zero()) return JacElement::identity();

  auto bez = half_xgcd(curve.f(), s);
  if (!bez.ok()) return bez.factor();
  if (!bez.value().g.is_one()) {
    throw std::invalid_argument("inputs are not valid group elements");
  }
  // Reducing h1 h2 + x first keeps the cofactor product at degree < 2 deg f.
  Poly w = mod_monic(h1 * h2 + Poly::x(curve.modulus()), curve.f());
  Poly h3 = mod_monic(bez.value().t * w, curve.f());
  return JacElement::repr(std::move(h3));
}

JacElement negate(const JacElement& e) {
  if (e.is_identity()) return e;
  return JacElement::repr(-e.poly());
}

Fallible<JacElement> scalar_mul(const NodalCurve& curve, const BigUint& k,
                                const JacElement& e) {
  check_element(curve, e);
  if (k < 0) throw std::invalid_argument("scalar must be >= 0");
  if (k == 0 || e.is_identity()) return JacElement::identity();

  JacElement acc = e;
  for (int i = static_cast<int>(bit_length(k)) - 2; i >= 0; --i) {
    auto dbl = add(curve, acc, acc);
    if (!dbl.ok()) return dbl.factor();
    acc = std::move(dbl).value();
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      auto sum = add(curve, acc, e);
      if (!sum.ok()) return sum.factor();
      acc = std::move(sum).value();
    }
  }
  return acc;
}

MumfordDivisor to_mumford(const NodalCurve& curve, const JacElement& e) {
  check_element(curve, e);
  if (e.is_identity()) return MumfordDivisor::identity(curve.modulus());
  return MumfordDivisor{curve.f() * curve.f(), e.poly() * curve.f()};
}

GroupOrder group_order(const BigUint& p, const Poly& f) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_probable_prime(p)) {
    throw std::invalid_argument("group_order needs an odd prime modulus");
  }
  if (f.modulus() != p) {
    throw std::invalid_argument("f is defined over a different modulus");
  }
  if (!is_irreducible(f)) {
    throw std::invalid_argument("group_order needs an irreducible f");
  }
  NodalCurve curve(p, f);
  const int r = f.degree();

  BigUint pr;
  mpz_pow_ui(pr.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(r));

  // Euler criterion in F_p[x]/(f): x is a square exactly when
  // x^((p^r - 1)/2) == 1, and then the torus splits.
  Poly euler = must(powmod(Poly::x(p), (pr - 1) / 2, f), "group_order");
  const bool split = euler.is_one();

  // The formula is backed by sampling: the candidate must annihilate a few
  // pseudorandom elements. A fixed seed keeps group_order a pure function.
  auto verifies = [&](const BigUint& order) {
    SeededRng rng(0x6f726465727633ULL);
    for (int i = 0; i < 5; ++i) {
      JacElement e = random_element(curve, rng);
      if (!must(scalar_mul(curve, order, e), "group_order").is_identity()) {
        return false;
      }
    }
    return true;
  };

  const BigUint primary = split ? BigUint(pr - 1) : BigUint(pr + 1);
  const BigUint alternate = split ? BigUint(pr + 1) : BigUint(pr - 1);
  if (verifies(primary)) {
    return GroupOrder{primary, split ? Twist::split : Twist::nonsplit};
  }
  if (verifies(alternate)) {
    return GroupOrder{alternate, split ? Twist::nonsplit : Twist::split};
  }
  throw std::runtime_error(
      "group_order: neither torus order annihilates the samples");
}

JacElement random_element(const NodalCurve& curve, RandomSource& rng) {
  const int r = curve.degree();
  for (;;) {
    std::vector<BigUint> c(static_cast<std::size_t>(r));
    for (auto& v : c) v = rng.below(curve.modulus());
    Poly h(curve.modulus(), std::move(c));
    auto ok = is_valid_element(curve, h);
    if (!ok.ok()) throw ModulusFactoredError(ok.factor().value);
    if (ok.value()) return JacElement::repr(std::move(h));
  }
}

std::vector<Poly> enumerate_elements(const NodalCurve& curve) {
  const int r = curve.degree();
  BigUint total;
  mpz_pow_ui(total.get_mpz_t(), curve.modulus().get_mpz_t(),
             static_cast<unsigned long>(r));
  if (total > (1 << 20)) {
    throw std::invalid_argument("curve too large to enumerate");
  }

  std::vector<Poly> out;
  std::vector<BigUint> odo(static_cast<std::size_t>(r), BigUint(0));
  for (;;) {
    Poly h(curve.modulus(), odo);
    auto ok = is_valid_element(curve, h);
    if (!ok.ok()) throw ModulusFactoredError(ok.factor().value);
    if (ok.value()) out.push_back(std::move(h));

    // Odometer step over [0, m)^r.
    std::size_t pos = 0;
    while (pos < odo.size()) {
      odo[pos] += 1;
      if (odo[pos] < curve.modulus()) break;
      odo[pos] = 0;
      ++pos;
    }
    if (pos == odo.size()) break;
  }
  return out;
}

}  // namespace nodal
