#include "nodal/keyio.hpp"

#include <utility>
#include <vector>

namespace nodal::keyio {

namespace {

constexpr std::string_view kNodalPublicMagic = "nodal-pke public v1";
constexpr std::string_view kNodalPrivateMagic = "nodal-pke private v1";
constexpr std::string_view kRsaPublicMagic = "rsa public v1";
constexpr std::string_view kRsaPrivateMagic = "rsa private v1";
constexpr std::string_view kNodalCiphertextMagic = "nodal-pke ciphertext v1";
constexpr std::string_view kRsaCiphertextMagic = "rsa ciphertext v1";

constexpr auto npos = std::string_view::npos;

std::string poly_str(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) out += ',';
    out += to_hex(p.coeffs()[i]);
  }
  return out;
}

void emit(std::string& out, std::string_view name, std::string_view value) {
  out += name;
  out += " = ";
  out += value;
  out += '\n';
}

void emit(std::string& out, std::string_view name, const BigUint& value) {
  emit(out, name, to_hex(value));
}

// Splits on LF. A missing final newline is tolerated; CR is not.
std::vector<std::string_view> split_lines(std::string_view text) {
  if (text.find('\r') != npos)
    throw ParseError("expected LF line endings, found a carriage return");
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    if (nl == npos) {
      lines.push_back(text);
      break;
    }
    lines.push_back(text.substr(0, nl));
    text.remove_prefix(nl + 1);
  }
  if (lines.empty()) throw ParseError("empty file");
  return lines;
}

// Walks the fixed `name = value` sequence that follows the header line.
class FieldReader {
 public:
  FieldReader(std::string_view text, std::string_view magic)
      : lines_(split_lines(text)) {
    if (lines_[0] != magic)
      throw ParseError("expected header '" + std::string(magic) + "'");
  }

  std::string_view field(std::string_view name) {
    if (next_ >= lines_.size())
      throw ParseError("missing field '" + std::string(name) + "'");
    const std::string_view line = lines_[next_++];
    if (line.substr(0, name.size()) != name ||
        line.substr(name.size(), 3) != " = ")
      throw ParseError("expected field '" + std::string(name) + "', got '" +
                       std::string(line) + "'");
    return line.substr(name.size() + 3);
  }

  void finish() const {
    if (next_ != lines_.size())
      throw ParseError("unexpected content after the last field");
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t next_ = 1;
};

BigUint parse_int(std::string_view value) {
  if (value.empty()) throw ParseError("empty integer value");
  for (const char ch : value)
    if (!((ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f')))
      throw ParseError("integers must be lowercase hex, got '" +
                       std::string(value) + "'");
  BigUint x;
  x.set_str(std::string(value), 16);
  return x;
}

std::size_t parse_size(std::string_view value) {
  const BigUint x = parse_int(value);
  if (!x.fits_ulong_p()) throw ParseError("length does not fit a machine word");
  return static_cast<std::size_t>(x.get_ui());
}

// The modulus must already be parsed; Poly needs it up front.
Poly parse_poly(std::string_view value, const BigUint& modulus) {
  if (modulus < 2) throw ParseError("modulus is out of range");
  std::vector<BigUint> coeffs;
  for (;;) {
    const auto comma = value.find(',');
    coeffs.push_back(parse_int(value.substr(0, comma)));
    if (comma == npos) break;
    value.remove_prefix(comma + 1);
  }
  return Poly(modulus, std::move(coeffs));
}

JacElement parse_element(std::string_view value, const BigUint& modulus) {
  if (value == "identity") return JacElement::identity();
  return JacElement::repr(parse_poly(value, modulus));
}

}  // namespace

FileKind peek_kind(std::string_view text) {
  const auto nl = text.find('\n');
  const std::string_view header =
      nl == npos ? text : text.substr(0, nl);
  if (header == kNodalPublicMagic) return FileKind::nodal_public;
  if (header == kNodalPrivateMagic) return FileKind::nodal_private;
  if (header == kRsaPublicMagic) return FileKind::rsa_public;
  if (header == kRsaPrivateMagic) return FileKind::rsa_private;
  if (header == kNodalCiphertextMagic) return FileKind::nodal_ciphertext;
  if (header == kRsaCiphertextMagic) return FileKind::rsa_ciphertext;
  throw ParseError("unrecognized file header");
}

std::string serialize(const pke::PublicKey& key) {
  std::string out(kNodalPublicMagic);
  out += '\n';
  emit(out, "n", key.n);
  emit(out, "f", poly_str(key.f));
  emit(out, "e", key.e);
  return out;
}

pke::PublicKey parse_nodal_public(std::string_view text) {
  FieldReader r(text, kNodalPublicMagic);
  BigUint n = parse_int(r.field("n"));
  Poly f = parse_poly(r.field("f"), n);
  BigUint e = parse_int(r.field("e"));
  r.finish();
  return {std::move(n), std::move(f), std::move(e)};
}

std::string serialize(const pke::KeyPair& key) {
  std::string out(kNodalPrivateMagic);
  out += '\n';
  emit(out, "n", key.priv.n);
  emit(out, "f", poly_str(key.priv.f));
  emit(out, "e", key.pub.e);
  emit(out, "p", key.priv.p);
  emit(out, "q", key.priv.q);
  emit(out, "d", key.priv.d);
  emit(out, "K", key.priv.K);
  return out;
}

pke::KeyPair parse_nodal_private(std::string_view text) {
  FieldReader r(text, kNodalPrivateMagic);
  BigUint n = parse_int(r.field("n"));
  Poly f = parse_poly(r.field("f"), n);
  BigUint e = parse_int(r.field("e"));
  BigUint p = parse_int(r.field("p"));
  BigUint q = parse_int(r.field("q"));
  BigUint d = parse_int(r.field("d"));
  BigUint K = parse_int(r.field("K"));
  r.finish();
  if (p * q != n) throw ParseError("n does not equal p*q");
  pke::PublicKey pub{n, f, std::move(e)};
  pke::PrivateKey priv{std::move(n), std::move(p), std::move(q),
                       std::move(f), std::move(d), std::move(K)};
  return {std::move(pub), std::move(priv)};
}

std::string serialize(const rsa::PublicKey& key) {
  std::string out(kRsaPublicMagic);
  out += '\n';
  emit(out, "n", key.n);
  emit(out, "e", key.e);
  return out;
}

rsa::PublicKey parse_rsa_public(std::string_view text) {
  FieldReader r(text, kRsaPublicMagic);
  BigUint n = parse_int(r.field("n"));
  BigUint e = parse_int(r.field("e"));
  r.finish();
  return {std::move(n), std::move(e)};
}

std::string serialize(const rsa::KeyPair& key) {
  std::string out(kRsaPrivateMagic);
  out += '\n';
  emit(out, "n", key.n);
  emit(out, "e", key.e);
  emit(out, "d", key.d);
  emit(out, "p", key.p);
  emit(out, "q", key.q);
  return out;
}

rsa::KeyPair parse_rsa_private(std::string_view text) {
  FieldReader r(text, kRsaPrivateMagic);
  BigUint n = parse_int(r.field("n"));
  BigUint e = parse_int(r.field("e"));
  BigUint d = parse_int(r.field("d"));
  BigUint p = parse_int(r.field("p"));
  BigUint q = parse_int(r.field("q"));
  r.finish();
  if (p * q != n) throw ParseError("n does not equal p*q");
  return {std::move(n), std::move(e), std::move(d), std::move(p),
          std::move(q)};
}

std::string serialize(const NodalCiphertextFile& file) {
  if (!file.ct.element.is_identity() &&
      file.ct.element.poly().modulus() != file.n)
    throw std::logic_error("ciphertext element modulus does not match n");
  std::string out(kNodalCiphertextMagic);
  out += '\n';
  emit(out, "n", file.n);
  emit(out, "c",
       file.ct.element.is_identity() ? std::string("identity")
                                     : poly_str(file.ct.element.poly()));
  return out;
}

NodalCiphertextFile parse_nodal_ciphertext(std::string_view text) {
  FieldReader r(text, kNodalCiphertextMagic);
  BigUint n = parse_int(r.field("n"));
  JacElement c = parse_element(r.field("c"), n);
  r.finish();
  return {std::move(n), {std::move(c)}};
}

std::string serialize(const rsa::ByteCiphertext& ct) {
  std::string out(kRsaCiphertextMagic);
  out += '\n';
  emit(out, "len", BigUint(static_cast<unsigned long>(ct.length)));
  emit(out, "c", ct.c);
  return out;
}

rsa::ByteCiphertext parse_rsa_ciphertext(std::string_view text) {
  FieldReader r(text, kRsaCiphertextMagic);
  const std::size_t length = parse_size(r.field("len"));
  BigUint c = parse_int(r.field("c"));
  r.finish();
  return {length, std::move(c)};
}

}  // namespace nodal::keyio
