#include "nodal/selftest.hpp"

#include <set>
#include <stdexcept>

#include "nodal/jacobian.hpp"
#include "nodal/modular.hpp"
#include "nodal/mumford.hpp"
#include "nodal/pke.hpp"
#include "nodal/poly.hpp"
#include "nodal/rng.hpp"

namespace nodal::selftest {

namespace {

// Accumulates checks within one suite; the first failure wins the detail
// line so the operator sees a concrete broken property, not a tally.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok && failure_.empty()) failure_ = what;
  }

  Result done(std::string name, const std::string& extra = "") {
    if (!failure_.empty()) return {std::move(name), false, failure_};
    std::string detail = std::to_string(total_) + " checks";
    if (!extra.empty()) detail += "; " + extra;
    return {std::move(name), true, detail};
  }

 private:
  int total_ = 0;
  std::string failure_;
};

Poly poly_of(const BigUint& m, std::vector<long> coeffs) {
  std::vector<BigUint> c(coeffs.begin(), coeffs.end());
  return Poly(m, std::move(c));
}

Result suite_arith() {
  Checker c;
  SeededRng rng(0x61726974681ULL);

  c.expect(mod_pow(Residue(8, 33), 7).value() == 2, "8^7 mod 33 != 2");
  c.expect(inverse_or_factor(Residue(4, 15)).value().value() == 4,
           "4 is its own inverse mod 15");
  const Fallible<Residue> blocked = inverse_or_factor(Residue(5, 15));
  c.expect(!blocked.ok() && blocked.factor().value == 5,
           "inverting 5 mod 15 must surface the factor 5");

  const BigUint mersenne = (BigUint(1) << 61) - 1;
  c.expect(is_probable_prime(mersenne, kDefaultPrimalityRounds, rng),
           "2^61 - 1 is prime");
  c.expect(!is_probable_prime(mersenne + 2, kDefaultPrimalityRounds, rng),
           "2^61 + 1 is divisible by 3");
  for (int i = 0; i < 10; ++i) {
    const BigUint p = random_prime(24, rng);
    c.expect(bit_length(p) == 24 && is_probable_prime(p),
             "random_prime must return a 24-bit prime");
  }
  return c.done("arith-substrate");
}

Result suite_poly() {
  Checker c;
  SeededRng rng(0x706f6c79ULL);
  const BigUint p = 101;

  for (int i = 0; i < 50; ++i) {
    std::vector<BigUint> ac(1 + rng.below(6).get_ui());
    std::vector<BigUint> bc(1 + rng.below(6).get_ui());
    for (auto& x : ac) x = rng.below(p);
    for (auto& x : bc) x = rng.below(p);
    const Poly a(p, ac), b(p, bc);
    if (b.is_zero() || a.is_zero()) continue;

    const DivRem dr = divrem(a, b).value();
    c.expect(dr.quot * b + dr.rem == a, "divrem must reconstruct a");
    c.expect(dr.rem.degree() < b.degree(), "divrem remainder degree bound");

    const Xgcd g = xgcd(a, b).value();
    c.expect(g.s * a + g.t * b == g.g, "xgcd Bezout identity");
    c.expect(divrem(a, g.g).value().rem.is_zero(), "gcd divides a");
    c.expect(divrem(b, g.g).value().rem.is_zero(), "gcd divides b");
  }

  c.expect(is_irreducible(poly_of(7, {1, 0, 1})), "x^2 + 1 irreducible mod 7");
  c.expect(!is_irreducible(poly_of(13, {1, 0, 1})),
           "x^2 + 1 = (x-5)(x+5) mod 13");
  c.expect(is_irreducible(random_irreducible(4, 31, rng)),
           "random_irreducible output is irreducible");
  return c.done("poly-substrate");
}

Result suite_oracle() {
  Checker c;
  SeededRng rng(0x6f7261636c65ULL);
  int pairs = 0;
  for (const long pv : {7L, 11L}) {
    const BigUint p = pv;
    for (int r = 1; r <= 3; ++r) {
      const Poly f = random_irreducible(r, p, rng);
      const NodalCurve curve(p, f);
      const SingularCurve model = curve.singular_model();
      for (int i = 0; i < 50; ++i) {
        const JacElement h1 = random_element(curve, rng);
        const JacElement h2 =
            i % 7 == 0 ? negate(h1) : random_element(curve, rng);

        const JacElement sum = add(curve, h1, h2).value();
        const MumfordDivisor via_nodal =
            reduce(model, to_mumford(curve, sum)).value();
        const MumfordDivisor via_cantor =
            cantor_add(model, to_mumford(curve, h1), to_mumford(curve, h2))
                .value();
        c.expect(via_nodal == via_cantor,
                 "group law disagrees with the Cantor oracle");
        ++pairs;
      }
    }
  }
  return c.done("cantor-oracle-equivalence",
                std::to_string(pairs) + " random pairs");
}

Result suite_cayley() {
  Checker c;
  const NodalCurve curve(7, poly_of(7, {1, 0, 1}));

  std::vector<JacElement> classes{JacElement::identity()};
  for (const Poly& h : enumerate_elements(curve))
    classes.push_back(JacElement::repr(h));
  c.expect(classes.size() == 48, "expected 48 classes over F_7");

  std::set<std::string> names;
  for (const JacElement& e : classes)
    names.insert(e.is_identity() ? "identity" : e.poly().str());

  // Full multiplication table: closure, commutativity, and each row a
  // permutation containing the identity exactly once (inverses exist and
  // are unique).
  for (const JacElement& a : classes) {
    std::set<std::string> row;
    int identity_hits = 0;
    for (const JacElement& b : classes) {
      const JacElement ab = add(curve, a, b).value();
      const std::string name =
          ab.is_identity() ? "identity" : ab.poly().str();
      c.expect(names.contains(name), "product escaped the class set");
      c.expect(ab == add(curve, b, a).value(), "table must be symmetric");
      row.insert(name);
      if (ab.is_identity()) ++identity_hits;
    }
    c.expect(row.size() == classes.size(), "row is not a permutation");
    c.expect(identity_hits == 1, "row must contain the identity once");
  }

  // Associativity on random triples.
  SeededRng rng(0x6361796c6579ULL);
  for (int i = 0; i < 500; ++i) {
    const JacElement& a = classes[rng.below(classes.size()).get_ui()];
    const JacElement& b = classes[rng.below(classes.size()).get_ui()];
    const JacElement& d = classes[rng.below(classes.size()).get_ui()];
    const JacElement left = add(curve, add(curve, a, b).value(), d).value();
    const JacElement right = add(curve, a, add(curve, b, d).value()).value();
    c.expect(left == right, "associativity failed");
  }

  for (const JacElement& a : classes)
    c.expect(scalar_mul(curve, 48, a).value().is_identity(),
             "48 must annihilate every class");
  return c.done("cayley-table-p7", "48x48 table, 500 triples");
}

Result suite_counting() {
  Checker c;

  // Split torus: x is a square in F_49, so 2 of the 49 candidate h are
  // invalid and the group has 7^2 - 1 = 48 classes.
  const NodalCurve split(7, poly_of(7, {1, 0, 1}));
  const GroupOrder split_order = group_order(7, poly_of(7, {1, 0, 1}));
  c.expect(split_order.twist == Twist::split, "(7, x^2+1) must be split");
  c.expect(split_order.value == 48, "split order must be 48");
  c.expect(enumerate_elements(split).size() == 47,
           "47 valid representatives over F_7");

  // Nonsplit torus: every h is valid and the order is p + 1.
  const NodalCurve nonsplit(3, poly_of(3, {1, 1}));
  const GroupOrder ns_order = group_order(3, poly_of(3, {1, 1}));
  c.expect(ns_order.twist == Twist::nonsplit, "(3, x+1) must be nonsplit");
  c.expect(ns_order.value == 4, "nonsplit order must be 4");
  c.expect(enumerate_elements(nonsplit).size() == 3,
           "all 3 candidate h valid over F_3");
  return c.done("counting-theorem-p7", "orders 48 and 4 confirmed");
}

Result suite_twists() {
  Checker c;
  SeededRng rng(0x7477697374ULL);

  struct Case {
    long p;
    std::vector<long> f;
    Twist twist;
    long order;
  };
  const std::vector<Case> cases = {
      {7, {1, 0, 1}, Twist::split, 48},
      {3, {1, 1}, Twist::nonsplit, 4},
      {5, {2, 1}, Twist::nonsplit, 6},
  };
  for (const Case& tc : cases) {
    const Poly f = poly_of(tc.p, tc.f);
    const GroupOrder order = group_order(tc.p, f);
    c.expect(order.twist == tc.twist, "twist classification changed");
    c.expect(order.value == tc.order, "group order changed");

    const NodalCurve curve(tc.p, f);
    for (int i = 0; i < 20; ++i) {
      const JacElement h = random_element(curve, rng);
      c.expect(scalar_mul(curve, order.value, h).value().is_identity(),
               "group order must annihilate every element");
    }
  }
  return c.done("twist-annihilation", "both twists, 60 annihilations");
}

Result suite_toy_key() {
  Checker c;

  // Element-level round trips on the transparent demo modulus n = 77.
  // Inversions mod 77 fail about once in four, so most exponent ladders
  // factor n instead of finishing; every completed trip must return to the
  // start, and every failure must expose 7 or 11.
  const pke::KeyPair toy =
      pke::keygen_from_parts(7, 11, poly_of(77, {1, 0, 1}), 7);
  c.expect(toy.priv.K == 5760 && toy.priv.d == 823,
           "demo key exponents changed");
  const NodalCurve curve(toy.pub.n, toy.pub.f);
  SeededRng rng(0x746f796b6579ULL);
  int completed = 0, factored = 0;
  for (int i = 0; i < 40; ++i) {
    try {
      const JacElement t = random_element(curve, rng);
      const Fallible<JacElement> ct = scalar_mul(curve, toy.pub.e, t);
      if (!ct.ok()) {
        c.expect(ct.factor().value == 7 || ct.factor().value == 11,
                 "factor event must expose 7 or 11");
        ++factored;
        continue;
      }
      const Fallible<JacElement> back = scalar_mul(curve, toy.priv.d,
                                                   ct.value());
      if (!back.ok()) {
        c.expect(back.factor().value == 7 || back.factor().value == 11,
                 "factor event must expose 7 or 11");
        ++factored;
        continue;
      }
      c.expect(back.value() == t, "e then d must return to the element");
      ++completed;
    } catch (const ModulusFactoredError& e) {
      c.expect(e.factor() == 7 || e.factor() == 11,
               "factor event must expose 7 or 11");
      ++factored;
    }
  }
  c.expect(factored > 0, "n = 77 should get factored along the way");

  // Byte-level round trips on a seeded key large enough that factoring
  // events are no longer a practical concern.
  const pke::KeyPair key = pke::keygen(32, 3, std::nullopt, rng);
  const std::size_t cap = pke::max_message_bytes(key.pub);
  int trips = 0;
  for (std::size_t len : {std::size_t{0}, std::size_t{1}, cap, cap / 2}) {
    pke::Bytes msg(len);
    rng.fill(msg);
    const pke::Ciphertext ct = pke::encrypt(key.pub, msg, rng);
    c.expect(pke::decrypt(key.priv, ct) == msg,
             "encrypt/decrypt round trip broke");
    ++trips;
  }
  return c.done("toy-key-roundtrip",
                std::to_string(completed) + " element trips, " +
                    std::to_string(factored) + " factor events, " +
                    std::to_string(trips) + " byte trips");
}

template <class Fn>
Result guarded(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {name, false, std::string("unexpected exception: ") + e.what()};
  }
}

}  // namespace

std::vector<Result> run_all() {
  return {
      guarded("arith-substrate", suite_arith),
      guarded("poly-substrate", suite_poly),
      guarded("cantor-oracle-equivalence", suite_oracle),
      guarded("cayley-table-p7", suite_cayley),
      guarded("counting-theorem-p7", suite_counting),
      guarded("twist-annihilation", suite_twists),
      guarded("toy-key-roundtrip", suite_toy_key),
  };
}

}  // namespace nodal::selftest
