#include "nodal/poly.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "nodal/modular.hpp"

namespace nodal {

namespace {

void check_same_modulus(const Poly& a, const Poly& b) {
  if (a.modulus() != b.modulus()) {
    throw std::invalid_argument("polynomial modulus mismatch");
  }
}

}  // namespace

Poly::Poly(BigUint modulus, std::vector<BigUint> coeffs)
    : modulus_(std::move(modulus)), coeffs_(std::move(coeffs)) {
  if (modulus_ < 2) {
    throw std::invalid_argument("polynomial modulus must be >= 2");
  }
  for (auto& c : coeffs_) c = mod_reduce(c, modulus_);
  trim();
}

Poly::Poly(reduced_tag, BigUint modulus, std::vector<BigUint> coeffs)
    : modulus_(std::move(modulus)), coeffs_(std::move(coeffs)) {
  trim();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::zero(BigUint modulus) { return Poly(std::move(modulus), {}); }

Poly Poly::one(BigUint modulus) { return Poly(std::move(modulus), {1}); }

Poly Poly::constant(BigUint modulus, BigUint c) {
  return Poly(std::move(modulus), {std::move(c)});
}

Poly Poly::x(BigUint modulus) { return Poly(std::move(modulus), {0, 1}); }

const BigUint& Poly::coeff(std::size_t i) const {
  static const BigUint kZero = 0;
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

const BigUint& Poly::leading() const {
  if (coeffs_.empty()) {
    throw std::logic_error("zero polynomial has no leading coefficient");
  }
  return coeffs_.back();
}

Poly Poly::reduced_mod(const BigUint& new_modulus) const {
  return Poly(new_modulus, coeffs_);
}

BigUint Poly::eval(const BigUint& point) const {
  BigUint acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = mod_reduce(acc * point + *it, modulus_);
  }
  return acc;
}

std::string Poly::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigUint& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != 1) os << c.get_str();
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) {
  return os << p.str();
}

Poly operator+(const Poly& a, const Poly& b) {
  check_same_modulus(a, b);
  const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
  std::vector<BigUint> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a.coeff(i) + b.coeff(i);
    if (out[i] >= a.modulus_) out[i] -= a.modulus_;
  }
  return Poly(Poly::reduced_tag{}, a.modulus_, std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) {
  check_same_modulus(a, b);
  const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
  std::vector<BigUint> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a.coeff(i) - b.coeff(i);
    if (out[i] < 0) out[i] += a.modulus_;
  }
  return Poly(Poly::reduced_tag{}, a.modulus_, std::move(out));
}

Poly operator-(const Poly& a) {
  std::vector<BigUint> out(a.coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a.coeffs_[i] == 0 ? BigUint(0) : BigUint(a.modulus_ - a.coeffs_[i]);
  }
  return Poly(Poly::reduced_tag{}, a.modulus_, std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
  check_same_modulus(a, b);
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.modulus_);
  std::vector<BigUint> acc(a.coeffs_.size() + b.coeffs_.size() - 1);
  if (&a == &b) {
    // Squaring (the bulk of a double-and-add ladder): each cross term
    // appears twice, so accumulate one triangle, double, add the diagonal.
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = i + 1; j < a.coeffs_.size(); ++j) {
        mpz_addmul(acc[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                   a.coeffs_[j].get_mpz_t());
      }
    }
    for (auto& c : acc) {
      mpz_mul_2exp(c.get_mpz_t(), c.get_mpz_t(), 1);
    }
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      mpz_addmul(acc[2 * i].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                 a.coeffs_[i].get_mpz_t());
    }
  } else {
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        mpz_addmul(acc[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                   b.coeffs_[j].get_mpz_t());
      }
    }
  }
  for (auto& c : acc) {
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), a.modulus_.get_mpz_t());
  }
  return Poly(Poly::reduced_tag{}, a.modulus_, std::move(acc));
}

Poly mul_scalar(const Poly& a, const BigUint& c) {
  const BigUint cr = mod_reduce(c, a.modulus_);
  if (cr == 0) return Poly::zero(a.modulus_);
  std::vector<BigUint> out(a.coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = mod_reduce(a.coeffs_[i] * cr, a.modulus_);
  }
  return Poly(Poly::reduced_tag{}, a.modulus_, std::move(out));
}

Poly derivative(const Poly& a) {
  if (a.coeffs_.size() <= 1) return Poly::zero(a.modulus_);
  std::vector<BigUint> out(a.coeffs_.size() - 1);
  for (std::size_t i = 1; i < a.coeffs_.size(); ++i) {
    BigUint c;
    mpz_mul_ui(c.get_mpz_t(), a.coeffs_[i].get_mpz_t(),
               static_cast<unsigned long>(i));
    out[i - 1] = mod_reduce(c, a.modulus_);
  }
  return Poly(Poly::reduced_tag{}, a.modulus_, std::move(out));
}

// Access seam for the division-based free functions: they need the raw
// coefficient vectors and the already-reduced constructor.
struct PolyDivision {
  static Poly from_reduced(BigUint m, std::vector<BigUint> c) {
    return Poly(Poly::reduced_tag{}, std::move(m), std::move(c));
  }

  static Fallible<DivRem> divrem_impl(const Poly& a, const Poly& b) {
    check_same_modulus(a, b);
    if (b.is_zero()) {
      throw std::invalid_argument("division by the zero polynomial");
    }
    const BigUint& m = a.modulus_;
    const int da = a.degree();
    const int db = b.degree();
    if (da < db) return DivRem{Poly::zero(m), a};

    const bool monic_b = b.is_monic();
    BigUint lcinv;
    if (!monic_b) {
      auto inv = inverse_or_factor(Residue(b.leading(), m));
      if (!inv.ok()) return inv.factor();
      lcinv = inv.value().value();
    }

    // Remainder accumulator: entries above the working position may hold
    // unreduced (possibly negative) values from mpz_submul; they are
    // re-reduced exactly once, either when they become the working
    // coefficient or in the final pass over the true remainder.
    std::vector<BigUint> rem(a.coeffs_.begin(), a.coeffs_.end());
    std::vector<BigUint> quot(static_cast<std::size_t>(da - db) + 1);
    for (int k = da; k >= db; --k) {
      BigUint c = mod_reduce(rem[static_cast<std::size_t>(k)], m);
      if (c != 0 && !monic_b) c = mod_reduce(c * lcinv, m);
      if (c != 0) {
        for (int j = 0; j < db; ++j) {
          mpz_submul(rem[static_cast<std::size_t>(k - db + j)].get_mpz_t(),
                     c.get_mpz_t(),
                     b.coeffs_[static_cast<std::size_t>(j)].get_mpz_t());
        }
      }
      quot[static_cast<std::size_t>(k - db)] = std::move(c);
    }
    rem.resize(static_cast<std::size_t>(db));
    for (auto& v : rem) v = mod_reduce(v, m);
    return DivRem{from_reduced(m, std::move(quot)),
                  from_reduced(m, std::move(rem))};
  }
};

Fallible<DivRem> divrem(const Poly& a, const Poly& b) {
  return PolyDivision::divrem_impl(a, b);
}

Poly mod_monic(const Poly& a, const Poly& f) {
  if (!f.is_monic()) {
    throw std::logic_error("mod_monic needs a monic divisor");
  }
  // Same reduction as divrem, minus the quotient bookkeeping it would throw
  // away; monic divisors need no inversion, so this can never fail.
  if (a.degree() < f.degree()) return a;
  const BigUint& m = a.modulus();
  const std::size_t lenf = f.coeffs().size();
  std::vector<BigUint> rem(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t k = rem.size(); k-- >= lenf;) {
    BigUint& top = rem[k];
    mpz_mod(top.get_mpz_t(), top.get_mpz_t(), m.get_mpz_t());
    if (top == 0) continue;
    for (std::size_t j = 0; j + 1 < lenf; ++j) {
      mpz_submul(rem[k - lenf + 1 + j].get_mpz_t(), top.get_mpz_t(),
                 f.coeffs()[j].get_mpz_t());
    }
  }
  rem.resize(lenf - 1);
  for (auto& v : rem) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return PolyDivision::from_reduced(m, std::move(rem));
}

Fallible<Xgcd> xgcd(const Poly& a, const Poly& b) {
  check_same_modulus(a, b);
  if (a.is_zero() && b.is_zero()) {
    throw std::invalid_argument("xgcd(0, 0) is undefined");
  }
  const BigUint& m = a.modulus();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(m), s1 = Poly::zero(m);
  Poly t0 = Poly::zero(m), t1 = Poly::one(m);
  while (!r1.is_zero()) {
    auto step = divrem(r0, r1);
    if (!step.ok()) return step.factor();
    Poly q = std::move(step.value().quot);
    Poly r2 = std::move(step.value().rem);
    Poly s2 = s0 - q * s1;
    Poly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_monic()) return Xgcd{std::move(r0), std::move(s0), std::move(t0)};
  auto inv = inverse_or_factor(Residue(r0.leading(), m));
  if (!inv.ok()) return inv.factor();
  const BigUint& v = inv.value().value();
  return Xgcd{mul_scalar(r0, v), mul_scalar(s0, v), mul_scalar(t0, v)};
}

// half_xgcd is the group law's inner loop, so it runs the classic chain on
// raw coefficient buffers instead of Poly temporaries. The remainder sequence,
// and with it the order in which non-unit leading coefficients surface as
// Factors, is exactly the one divrem/xgcd produce.
Fallible<HalfXgcd> half_xgcd(const Poly& a, const Poly& b) {
  check_same_modulus(a, b);
  if (a.is_zero() && b.is_zero()) {
    throw std::invalid_argument("half_xgcd(0, 0) is undefined");
  }
  const BigUint& m = a.modulus();

  // Remainder pair, b-side cofactor pair, current quotient. Entries are kept
  // reduced with trailing zeros trimmed (Poly's canonical form); buffers swap
  // roles between steps rather than reallocating.
  std::vector<BigUint> r0(a.coeffs().begin(), a.coeffs().end());
  std::vector<BigUint> r1(b.coeffs().begin(), b.coeffs().end());
  std::vector<BigUint> t0, t1{BigUint(1)}, t2, q;

  // Inverse of the most recent divisor's leading coefficient. After the loop
  // the gcd *is* that divisor, so normalization can reuse it.
  BigUint lcinv = 1;
  bool have_lcinv = false;

  while (!r1.empty()) {
    if (r0.size() < r1.size()) {  // quotient zero: a pure swap
      std::swap(r0, r1);
      std::swap(t0, t1);
      continue;
    }
    const std::size_t len1 = r1.size();
    const std::size_t qlen = r0.size() - len1 + 1;

    if (r1.back() == 1) {
      lcinv = 1;
    } else {
      BigUint g, s;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), nullptr,
                 r1.back().get_mpz_t(), m.get_mpz_t());
      if (g != 1) return Factor{std::move(g)};
      lcinv = mod_reduce(s, m);
    }
    have_lcinv = true;

    // r0 <- r0 mod r1 in place, recording the quotient. Slots above position
    // i hold unreduced mpz_submul residue until they become the working
    // coefficient (same bookkeeping as divrem).
    q.assign(qlen, BigUint());
    for (std::size_t i = qlen; i-- > 0;) {
      BigUint& top = r0[i + len1 - 1];
      mpz_mod(top.get_mpz_t(), top.get_mpz_t(), m.get_mpz_t());
      if (top != 0 && lcinv != 1) {
        top *= lcinv;
        mpz_mod(top.get_mpz_t(), top.get_mpz_t(), m.get_mpz_t());
      }
      if (top != 0) {
        for (std::size_t j = 0; j + 1 < len1; ++j) {
          mpz_submul(r0[i + j].get_mpz_t(), top.get_mpz_t(),
                     r1[j].get_mpz_t());
        }
      }
      mpz_swap(q[i].get_mpz_t(), top.get_mpz_t());  // slot is dead now
    }
    r0.resize(len1 - 1);
    for (auto& v : r0) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    while (!r0.empty() && r0.back() == 0) r0.pop_back();

    // t2 <- t0 - q * t1, then rotate the cofactor pair.
    const std::size_t t2len =
        std::max(t0.size(), t1.empty() ? std::size_t{0} : qlen + t1.size() - 1);
    t2.assign(t2len, BigUint());
    for (std::size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
    for (std::size_t i = 0; i < qlen; ++i) {
      if (q[i] == 0) continue;
      for (std::size_t j = 0; j < t1.size(); ++j) {
        mpz_submul(t2[i + j].get_mpz_t(), q[i].get_mpz_t(),
                   t1[j].get_mpz_t());
      }
    }
    for (auto& v : t2) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    while (!t2.empty() && t2.back() == 0) t2.pop_back();

    std::swap(r0, r1);  // the in-place remainder is the new r1
    std::swap(t0, t1);
    std::swap(t1, t2);
  }

  if (r0.back() != 1) {
    if (!have_lcinv) {  // possible only when no division ran (a was zero)
      auto inv = inverse_or_factor(Residue(r0.back(), m));
      if (!inv.ok()) return inv.factor();
      lcinv = inv.value().value();
    }
    for (auto& v : r0) {
      v *= lcinv;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    }
    for (auto& v : t0) {
      v *= lcinv;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    }
  }
  return HalfXgcd{PolyDivision::from_reduced(m, std::move(r0)),
                  PolyDivision::from_reduced(m, std::move(t0))};
}

Fallible<Poly> gcd(const Poly& a, const Poly& b) {
  check_same_modulus(a, b);
  if (a.is_zero() && b.is_zero()) {
    throw std::invalid_argument("gcd(0, 0) is undefined");
  }
  Poly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    auto step = divrem(r0, r1);
    if (!step.ok()) return step.factor();
    r0 = std::move(r1);
    r1 = std::move(std::move(step).value().rem);
  }
  return monic(r0);
}

Fallible<Poly> monic(const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  auto inv = inverse_or_factor(Residue(a.leading(), a.modulus()));
  if (!inv.ok()) return inv.factor();
  return mul_scalar(a, inv.value().value());
}

Fallible<Poly> powmod(const Poly& base, const BigUint& exponent,
                      const Poly& modpoly) {
  check_same_modulus(base, modpoly);
  if (modpoly.degree() < 1) {
    throw std::invalid_argument("powmod modulus must have degree >= 1");
  }
  if (exponent < 0) {
    throw std::invalid_argument("powmod exponent must be >= 0");
  }
  Poly f = modpoly;
  if (!f.is_monic()) {
    auto mf = monic(f);
    if (!mf.ok()) return mf.factor();
    f = std::move(mf).value();
  }
  if (exponent == 0) return Poly::one(base.modulus());

  const Poly b0 = mod_monic(base, f);
  Poly acc = b0;
  for (int i = static_cast<int>(bit_length(exponent)) - 2; i >= 0; --i) {
    acc = mod_monic(acc * acc, f);
    if (mpz_tstbit(exponent.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      acc = mod_monic(acc * b0, f);
    }
  }
  return acc;
}

namespace {

Poly must_powmod(const Poly& base, const BigUint& e, const Poly& f) {
  auto r = powmod(base, e, f);
  if (!r.ok()) {
    throw std::logic_error("powmod over a prime modulus reported a factor");
  }
  return std::move(std::move(r).value());
}

Poly must_gcd(const Poly& a, const Poly& b) {
  auto r = gcd(a, b);
  if (!r.ok()) {
    throw std::logic_error("gcd over a prime modulus reported a factor");
  }
  return std::move(std::move(r).value());
}

// Distinct prime divisors of r by trial division (r is a small degree).
std::vector<int> prime_divisors(int r) {
  std::vector<int> out;
  for (int d = 2; d * d <= r; ++d) {
    if (r % d == 0) {
      out.push_back(d);
      while (r % d == 0) r /= d;
    }
  }
  if (r > 1) out.push_back(r);
  return out;
}

// Rabin's criterion; assumes the modulus is already known to be prime and f
// is monic of degree >= 1.
bool is_irreducible_assuming_prime(const Poly& f) {
  const BigUint& p = f.modulus();
  const int r = f.degree();
  if (r == 1) return true;

  std::set<int> milestones;
  for (int l : prime_divisors(r)) milestones.insert(r / l);

  const Poly xp = Poly::x(p);
  Poly cur = xp;
  for (int k = 1; k <= r; ++k) {
    cur = must_powmod(cur, p, f);  // now x^(p^k) mod f
    if (k < r && milestones.contains(k)) {
      if (!must_gcd(cur - xp, f).is_one()) return false;
    }
  }
  return cur == xp;
}

void check_odd_prime(const BigUint& p, const char* what) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_probable_prime(p)) {
    throw std::invalid_argument(std::string(what) + " must be an odd prime");
  }
}

}  // namespace

bool is_irreducible(const Poly& f) {
  if (!f.is_monic()) {
    throw std::invalid_argument("irreducibility test needs a monic polynomial");
  }
  if (f.degree() < 1) {
    throw std::invalid_argument("irreducibility test needs degree >= 1");
  }
  if (!is_probable_prime(f.modulus())) {
    throw std::invalid_argument("irreducibility test needs a prime modulus");
  }
  return is_irreducible_assuming_prime(f);
}

Poly random_irreducible(int degree, const BigUint& p, RandomSource& rng) {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  check_odd_prime(p, "modulus");
  for (;;) {
    std::vector<BigUint> c(static_cast<std::size_t>(degree) + 1);
    for (int i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = rng.below(p);
    c[static_cast<std::size_t>(degree)] = 1;
    // A zero constant term means x divides f; redraw (only degree 1 can
    // otherwise slip through the irreducibility test).
    if (c[0] == 0) continue;
    Poly f(p, std::move(c));
    if (degree == 1 || is_irreducible_assuming_prime(f)) return f;
  }
}

Poly lift_irreducible(int degree, const BigUint& p, const BigUint& q,
                      RandomSource& rng) {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  check_odd_prime(p, "p");
  check_odd_prime(q, "q");
  if (p == q) throw std::invalid_argument("p and q must be distinct");
  const BigUint n = p * q;
  for (;;) {
    std::vector<BigUint> c(static_cast<std::size_t>(degree) + 1);
    for (int i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = rng.below(n);
    c[static_cast<std::size_t>(degree)] = 1;
    Poly f(n, std::move(c));
    if (mod_reduce(f.coeff(0), p) == 0 || mod_reduce(f.coeff(0), q) == 0) {
      continue;  // constant term must stay a unit in both reductions
    }
    if (is_irreducible_assuming_prime(f.reduced_mod(p)) &&
        is_irreducible_assuming_prime(f.reduced_mod(q))) {
      return f;
    }
  }
}

}  // namespace nodal
