#include "nodal/keyio.hpp"

#include <doctest.h>

#include <string>

#include "nodal/rng.hpp"
#include "support.hpp"

using namespace nodal;
using testsupport::P;

namespace {

pke::KeyPair toy_key() {
  return pke::keygen_from_parts(7, 11, P(77, {1, 0, 1}), 7);
}

}  // namespace

TEST_CASE("demo nodal key serializes to the documented text") {
  const pke::KeyPair key = toy_key();
  // 77 = 0x4d, 5760 = 0x1680, 823 = 0x337.
  CHECK(keyio::serialize(key.pub) ==
        "nodal-pke public v1\n"
        "n = 4d\n"
        "f = 1,0,1\n"
        "e = 7\n");
  CHECK(keyio::serialize(key) ==
        "nodal-pke private v1\n"
        "n = 4d\n"
        "f = 1,0,1\n"
        "e = 7\n"
        "p = 7\n"
        "q = b\n"
        "d = 337\n"
        "K = 1680\n");
}

TEST_CASE("rsa key serialization") {
  const rsa::KeyPair key = rsa::keygen_from_primes(3, 11, 3);
  CHECK(keyio::serialize(key.public_part()) ==
        "rsa public v1\n"
        "n = 21\n"
        "e = 3\n");
  CHECK(keyio::serialize(key) ==
        "rsa private v1\n"
        "n = 21\n"
        "e = 3\n"
        "d = 7\n"
        "p = 3\n"
        "q = b\n");
}

TEST_CASE("ciphertext serialization") {
  const keyio::NodalCiphertextFile file{77, {JacElement::repr(P(77, {9, 63}))}};
  CHECK(keyio::serialize(file) ==
        "nodal-pke ciphertext v1\n"
        "n = 4d\n"
        "c = 9,3f\n");

  const keyio::NodalCiphertextFile id{77, {JacElement::identity()}};
  CHECK(keyio::serialize(id) ==
        "nodal-pke ciphertext v1\n"
        "n = 4d\n"
        "c = identity\n");

  const rsa::ByteCiphertext rc{5, BigUint(0x1a2b)};
  CHECK(keyio::serialize(rc) ==
        "rsa ciphertext v1\n"
        "len = 5\n"
        "c = 1a2b\n");
}

TEST_CASE("round trips on random keys") {
  SeededRng rng(321);

  SUBCASE("nodal") {
    const pke::KeyPair key = pke::keygen(32, 3, std::nullopt, rng);
    const pke::KeyPair back = keyio::parse_nodal_private(keyio::serialize(key));
    CHECK(back.priv.n == key.priv.n);
    CHECK(back.priv.p == key.priv.p);
    CHECK(back.priv.q == key.priv.q);
    CHECK(back.priv.f == key.priv.f);
    CHECK(back.priv.d == key.priv.d);
    CHECK(back.priv.K == key.priv.K);
    CHECK(back.pub.e == key.pub.e);

    const pke::PublicKey pub =
        keyio::parse_nodal_public(keyio::serialize(key.pub));
    CHECK(pub.n == key.pub.n);
    CHECK(pub.f == key.pub.f);
    CHECK(pub.e == key.pub.e);

    // A parsed private key actually decrypts.
    const pke::Bytes msg{'o', 'k'};
    const pke::Ciphertext c = pke::encrypt(pub, msg, rng);
    CHECK(pke::decrypt(back.priv, c) == msg);

    const keyio::NodalCiphertextFile ct_file{pub.n, c};
    const keyio::NodalCiphertextFile ct_back =
        keyio::parse_nodal_ciphertext(keyio::serialize(ct_file));
    CHECK(ct_back.n == pub.n);
    CHECK(ct_back.ct == c);
  }

  SUBCASE("rsa") {
    const rsa::KeyPair key = rsa::keygen(48, std::nullopt, rng);
    const rsa::KeyPair back = keyio::parse_rsa_private(keyio::serialize(key));
    CHECK(back.n == key.n);
    CHECK(back.e == key.e);
    CHECK(back.d == key.d);
    CHECK(back.p == key.p);
    CHECK(back.q == key.q);

    const rsa::PublicKey pub =
        keyio::parse_rsa_public(keyio::serialize(key.public_part()));
    CHECK(pub.n == key.n);

    const std::vector<std::uint8_t> msg{1, 0, 0, 255};
    const rsa::ByteCiphertext c = rsa::encrypt_bytes(pub, msg);
    const rsa::ByteCiphertext c_back =
        keyio::parse_rsa_ciphertext(keyio::serialize(c));
    CHECK(c_back == c);
    CHECK(rsa::decrypt_bytes(back, c_back) == msg);
  }
}

TEST_CASE("peek_kind reads the header") {
  CHECK(keyio::peek_kind("nodal-pke public v1\nn = 4d\n") ==
        keyio::FileKind::nodal_public);
  CHECK(keyio::peek_kind("nodal-pke private v1\n") ==
        keyio::FileKind::nodal_private);
  CHECK(keyio::peek_kind("rsa public v1\n") == keyio::FileKind::rsa_public);
  CHECK(keyio::peek_kind("rsa private v1\n") == keyio::FileKind::rsa_private);
  CHECK(keyio::peek_kind("nodal-pke ciphertext v1\n") ==
        keyio::FileKind::nodal_ciphertext);
  CHECK(keyio::peek_kind("rsa ciphertext v1") ==
        keyio::FileKind::rsa_ciphertext);
  CHECK_THROWS_AS(keyio::peek_kind("pem nonsense\n"), keyio::ParseError);
  CHECK_THROWS_AS(keyio::peek_kind(""), keyio::ParseError);
}

TEST_CASE("strict parsing rejects malformed files") {
  const std::string good =
      "rsa public v1\n"
      "n = 21\n"
      "e = 3\n";
  CHECK(keyio::parse_rsa_public(good).n == 33);

  // Wrong header for the parser invoked.
  CHECK_THROWS_AS(keyio::parse_rsa_private(good), keyio::ParseError);
  // Fields out of order.
  CHECK_THROWS_AS(keyio::parse_rsa_public("rsa public v1\ne = 3\nn = 21\n"),
                  keyio::ParseError);
  // Missing field.
  CHECK_THROWS_AS(keyio::parse_rsa_public("rsa public v1\nn = 21\n"),
                  keyio::ParseError);
  // Trailing junk.
  CHECK_THROWS_AS(keyio::parse_rsa_public(good + "x = 1\n"),
                  keyio::ParseError);
  // Uppercase hex is not canonical.
  CHECK_THROWS_AS(keyio::parse_rsa_public("rsa public v1\nn = 2A\ne = 3\n"),
                  keyio::ParseError);
  // Bad spacing around '='.
  CHECK_THROWS_AS(keyio::parse_rsa_public("rsa public v1\nn=21\ne = 3\n"),
                  keyio::ParseError);
  // CRLF endings.
  CHECK_THROWS_AS(keyio::parse_rsa_public("rsa public v1\r\nn = 21\r\n"),
                  keyio::ParseError);
  // Empty value.
  CHECK_THROWS_AS(keyio::parse_rsa_public("rsa public v1\nn = \ne = 3\n"),
                  keyio::ParseError);

  // Inconsistent private key: 3 * 5 != 0x21.
  CHECK_THROWS_AS(keyio::parse_rsa_private("rsa private v1\nn = 21\ne = 3\n"
                                           "d = 7\np = 3\nq = 5\n"),
                  keyio::ParseError);

  // Malformed polynomial coefficient list.
  CHECK_THROWS_AS(
      keyio::parse_nodal_public("nodal-pke public v1\nn = 4d\nf = 1,,1\ne = 7\n"),
      keyio::ParseError);
  CHECK_THROWS_AS(
      keyio::parse_nodal_public("nodal-pke public v1\nn = 4d\nf = \ne = 7\n"),
      keyio::ParseError);
}

TEST_CASE("identity and zero-polynomial values are distinct") {
  const std::string id_file =
      "nodal-pke ciphertext v1\n"
      "n = 4d\n"
      "c = identity\n";
  CHECK(keyio::parse_nodal_ciphertext(id_file).ct.element.is_identity());

  // h = 0 is a real group element (the square root of the class of x), so
  // it must parse as the zero polynomial, not as the identity.
  const std::string zero_file =
      "nodal-pke ciphertext v1\n"
      "n = 4d\n"
      "c = 0\n";
  const keyio::NodalCiphertextFile zf = keyio::parse_nodal_ciphertext(zero_file);
  CHECK_FALSE(zf.ct.element.is_identity());
  CHECK(zf.ct.element.poly().is_zero());
  // And it round-trips back to the same text.
  CHECK(keyio::serialize(zf) == zero_file);
}
