#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "nodal/bigint.hpp"
#include "nodal/pke.hpp"
#include "nodal/rsa.hpp"

// Line-oriented text serialization for keys and ciphertexts. Every file is
// UTF-8, one `name = value` pair per line after a magic header line that
// names the payload kind. Integers are lowercase hex; polynomials are
// comma-separated hex coefficients in ascending degree ("1,0,1" is x^2 + 1);
// the group identity is the literal `identity`. Writers emit fields in a
// fixed order so seeded runs produce byte-identical files.
namespace nodal::keyio {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FileKind {
  nodal_public,
  nodal_private,
  rsa_public,
  rsa_private,
  nodal_ciphertext,
  rsa_ciphertext,
};

/// Identifies a file by its header line alone. ParseError if the header is
/// not one of the known magics.
FileKind peek_kind(std::string_view text);

// `nodal-pke public v1`: n, f, e.
std::string serialize(const pke::PublicKey& key);
pke::PublicKey parse_nodal_public(std::string_view text);

// `nodal-pke private v1`: n, f, e, p, q, d, K.
std::string serialize(const pke::KeyPair& key);
pke::KeyPair parse_nodal_private(std::string_view text);

// `rsa public v1`: n, e.
std::string serialize(const rsa::PublicKey& key);
rsa::PublicKey parse_rsa_public(std::string_view text);

// `rsa private v1`: n, e, d, p, q.
std::string serialize(const rsa::KeyPair& key);
rsa::KeyPair parse_rsa_private(std::string_view text);

// `nodal-pke ciphertext v1`: n, c. The modulus travels with the ciphertext
// so the element polynomial can be parsed without the key (and so decrypt
// can reject a ciphertext for a different key up front).
struct NodalCiphertextFile {
  BigUint n;
  pke::Ciphertext ct;
};
std::string serialize(const NodalCiphertextFile& file);
NodalCiphertextFile parse_nodal_ciphertext(std::string_view text);

// `rsa ciphertext v1`: len, c.
std::string serialize(const rsa::ByteCiphertext& ct);
rsa::ByteCiphertext parse_rsa_ciphertext(std::string_view text);

}  // namespace nodal::keyio
