#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nodal/bench.hpp"
#include "nodal/keyio.hpp"
#include "nodal/pke.hpp"
#include "nodal/rng.hpp"
#include "nodal/rsa.hpp"
#include "nodal/selftest.hpp"

namespace {

// Exit codes: 0 success, 1 usage, 2 I/O, 3 crypto/decode, 4 self-test.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitCrypto = 3;
constexpr int kExitSelftest = 4;

// Filesystem-level failures; malformed content throws keyio::ParseError.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return std::move(ss).str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

nodal::SeededRng make_rng(const std::optional<std::uint64_t>& seed) {
  return nodal::SeededRng(seed ? *seed : nodal::entropy_seed());
}

struct KeygenOptions {
  std::string scheme;
  unsigned bits = 0;
  std::optional<int> degree;
  std::optional<std::uint64_t> e;
  std::optional<std::uint64_t> seed;
  std::string pub_path;
  std::string priv_path;
};

int run_keygen(const KeygenOptions& opt) {
  std::optional<nodal::BigUint> e;
  if (opt.e) e = nodal::BigUint(*opt.e);
  nodal::SeededRng rng = make_rng(opt.seed);

  if (opt.scheme == "nodal") {
    if (!opt.degree) {
      std::cerr << "error: --degree is required for the nodal scheme\n";
      return kExitUsage;
    }
    if (*opt.degree < 2) {
      std::cerr << "error: degree must be >= 2\n";
      return kExitUsage;
    }
    if (opt.bits < 16) {
      std::cerr << "error: prime size must be >= 16 bits\n";
      return kExitUsage;
    }
    const nodal::pke::KeyPair key =
        nodal::pke::keygen(opt.bits, *opt.degree, e, rng);
    write_file(opt.pub_path, nodal::keyio::serialize(key.pub));
    write_file(opt.priv_path, nodal::keyio::serialize(key));
    return kExitOk;
  }

  // RSA takes no degree.
  if (opt.degree) {
    std::cerr << "error: --degree only applies to the nodal scheme\n";
    return kExitUsage;
  }
  if (opt.bits < 3) {
    std::cerr << "error: prime size must be >= 3 bits\n";
    return kExitUsage;
  }
  const nodal::rsa::KeyPair key = nodal::rsa::keygen(opt.bits, e, rng);
  write_file(opt.pub_path, nodal::keyio::serialize(key.public_part()));
  write_file(opt.priv_path, nodal::keyio::serialize(key));
  return kExitOk;
}

struct CryptOptions {
  std::string key_path;
  std::string in_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
};

std::vector<std::uint8_t> file_bytes(const std::string& path) {
  const std::string text = read_file(path);
  return {text.begin(), text.end()};
}

int run_encrypt(const CryptOptions& opt) {
  const std::string key_text = read_file(opt.key_path);
  const std::vector<std::uint8_t> msg = file_bytes(opt.in_path);
  nodal::SeededRng rng = make_rng(opt.seed);

  // Private key files contain the public part, so both kinds encrypt.
  switch (nodal::keyio::peek_kind(key_text)) {
    case nodal::keyio::FileKind::nodal_public:
    case nodal::keyio::FileKind::nodal_private: {
      const nodal::pke::PublicKey pub =
          nodal::keyio::peek_kind(key_text) ==
                  nodal::keyio::FileKind::nodal_public
              ? nodal::keyio::parse_nodal_public(key_text)
              : nodal::keyio::parse_nodal_private(key_text).pub;
      const nodal::pke::Ciphertext ct = nodal::pke::encrypt(pub, msg, rng);
      write_file(opt.out_path,
                 nodal::keyio::serialize(
                     nodal::keyio::NodalCiphertextFile{pub.n, ct}));
      return kExitOk;
    }
    case nodal::keyio::FileKind::rsa_public:
    case nodal::keyio::FileKind::rsa_private: {
      const nodal::rsa::PublicKey pub =
          nodal::keyio::peek_kind(key_text) == nodal::keyio::FileKind::rsa_public
              ? nodal::keyio::parse_rsa_public(key_text)
              : nodal::keyio::parse_rsa_private(key_text).public_part();
      write_file(opt.out_path, nodal::keyio::serialize(
                                   nodal::rsa::encrypt_bytes(pub, msg)));
      return kExitOk;
    }
    default:
      throw nodal::keyio::ParseError("'" + opt.key_path +
                                     "' is a ciphertext, not a key");
  }
}

int run_decrypt(const CryptOptions& opt) {
  const std::string key_text = read_file(opt.key_path);
  const std::string ct_text = read_file(opt.in_path);

  switch (nodal::keyio::peek_kind(key_text)) {
    case nodal::keyio::FileKind::nodal_private: {
      const nodal::pke::KeyPair key =
          nodal::keyio::parse_nodal_private(key_text);
      const nodal::keyio::NodalCiphertextFile file =
          nodal::keyio::parse_nodal_ciphertext(ct_text);
      if (file.n != key.priv.n)
        throw nodal::pke::DecodeError(
            "ciphertext modulus does not match the key");
      const nodal::pke::Bytes msg = nodal::pke::decrypt(key.priv, file.ct);
      write_file(opt.out_path,
                 std::string_view(reinterpret_cast<const char*>(msg.data()),
                                  msg.size()));
      return kExitOk;
    }
    case nodal::keyio::FileKind::rsa_private: {
      const nodal::rsa::KeyPair key = nodal::keyio::parse_rsa_private(key_text);
      const std::vector<std::uint8_t> msg = nodal::rsa::decrypt_bytes(
          key, nodal::keyio::parse_rsa_ciphertext(ct_text));
      write_file(opt.out_path,
                 std::string_view(reinterpret_cast<const char*>(msg.data()),
                                  msg.size()));
      return kExitOk;
    }
    case nodal::keyio::FileKind::nodal_public:
    case nodal::keyio::FileKind::rsa_public:
      std::cerr << "error: decryption requires a private key file\n";
      return kExitCrypto;
    default:
      throw nodal::keyio::ParseError("'" + opt.key_path +
                                     "' is a ciphertext, not a key");
  }
}

struct BenchOptions {
  unsigned bits = 0;
  std::string degrees;
  std::string deg_f;  // bench-add only
  int trials = 3;
  std::uint64_t seed = 1;
  std::string csv_path;
};

std::optional<std::vector<int>> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) return std::nullopt;
      out.push_back(v);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (out.empty()) return std::nullopt;
  return out;
}

void emit_csv(const std::vector<nodal::bench::Record>& records,
              const std::string& csv_path) {
  const std::string csv = nodal::bench::to_csv(records);
  if (csv_path.empty())
    std::cout << csv;
  else
    write_file(csv_path, csv);
}

int run_bench_add(const BenchOptions& opt) {
  std::vector<int> deg_g;
  if (!opt.deg_f.empty()) {
    const auto list = parse_int_list(opt.deg_f);
    if (!list) {
      std::cerr << "error: --deg-f must be a comma-separated integer list\n";
      return kExitUsage;
    }
    for (const int r : *list) deg_g.push_back(2 * r + 1);
  } else {
    const auto list = parse_int_list(opt.degrees);
    if (!list) {
      std::cerr << "error: --degrees must be a comma-separated integer list\n";
      return kExitUsage;
    }
    deg_g = *list;
  }
  for (const int d : deg_g)
    if (d < 3 || d % 2 == 0) {
      std::cerr << "error: deg g values must be odd and >= 3\n";
      return kExitUsage;
    }
  if (opt.trials < 3) {
    std::cerr << "error: --trials must be >= 3\n";
    return kExitUsage;
  }
  if (opt.bits < 4) {
    std::cerr << "error: --bits must be >= 4\n";
    return kExitUsage;
  }
  emit_csv(nodal::bench::group_add(opt.bits, deg_g, opt.trials, opt.seed,
                                   &std::cerr),
           opt.csv_path);
  return kExitOk;
}

int run_bench_pke(const BenchOptions& opt) {
  const auto degrees = parse_int_list(opt.degrees);
  if (!degrees) {
    std::cerr << "error: --degrees must be a comma-separated integer list\n";
    return kExitUsage;
  }
  for (const int d : *degrees)
    if (d < 2) {
      std::cerr << "error: degrees must be >= 2\n";
      return kExitUsage;
    }
  if (opt.trials < 3) {
    std::cerr << "error: --trials must be >= 3\n";
    return kExitUsage;
  }
  if (opt.bits < 32 || opt.bits % 2 != 0) {
    std::cerr << "error: --bits is the modulus size and must be even, >= 32\n";
    return kExitUsage;
  }
  emit_csv(nodal::bench::pke_compare(opt.bits, *degrees, opt.trials, opt.seed,
                                     &std::cerr),
           opt.csv_path);
  return kExitOk;
}

int run_selftest() {
  const std::vector<nodal::selftest::Result> results =
      nodal::selftest::run_all();
  int failures = 0;
  for (const nodal::selftest::Result& r : results) {
    std::cout << (r.pass ? "ok   " : "FAIL ") << r.name << ": " << r.detail
              << "\n";
    if (!r.pass) ++failures;
  }
  if (failures) {
    std::cerr << failures << " of " << results.size() << " suites failed\n";
    return kExitSelftest;
  }
  std::cout << "all " << results.size() << " suites passed\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Arithmetic-backed public-key toolkit: keys, encryption, and "
      "benchmarks for the nodal-curve scheme and a textbook-RSA baseline"};
  app.require_subcommand(1);

  KeygenOptions kg;
  CLI::App* keygen = app.add_subcommand("keygen", "Generate a key pair");
  keygen->add_option("--scheme", kg.scheme, "nodal or rsa")
      ->required()
      ->check(CLI::IsMember({"nodal", "rsa"}));
  keygen->add_option("--bits", kg.bits, "Bits per prime")->required();
  keygen->add_option("--degree", kg.degree,
                     "deg f, nodal scheme only (>= 2)");
  keygen->add_option("--e", kg.e, "Public exponent (default 65537)");
  keygen->add_option("--seed", kg.seed, "Deterministic RNG seed");
  keygen->add_option("--pub", kg.pub_path, "Public key output path")
      ->required();
  keygen->add_option("--priv", kg.priv_path, "Private key output path")
      ->required();

  CryptOptions enc;
  CLI::App* encrypt =
      app.add_subcommand("encrypt", "Encrypt a file with a key file");
  encrypt->add_option("--key", enc.key_path, "Key file (public or private)")
      ->required();
  encrypt->add_option("--in", enc.in_path, "Plaintext input path")->required();
  encrypt->add_option("--out", enc.out_path, "Ciphertext output path")
      ->required();
  encrypt->add_option("--seed", enc.seed, "Deterministic RNG seed");

  CryptOptions dec;
  CLI::App* decrypt =
      app.add_subcommand("decrypt", "Decrypt a ciphertext file");
  decrypt->add_option("--key", dec.key_path, "Private key file")->required();
  decrypt->add_option("--in", dec.in_path, "Ciphertext input path")
      ->required();
  decrypt->add_option("--out", dec.out_path, "Plaintext output path")
      ->required();

  BenchOptions ba;
  ba.bits = 512;
  ba.degrees = "11,23,47";
  CLI::App* bench_add = app.add_subcommand(
      "bench-add", "Time the group law against Cantor's algorithm");
  bench_add->add_option("--bits", ba.bits, "Prime size in bits (default 512)");
  bench_add->add_option("--degrees", ba.degrees,
                        "Comma-separated odd deg g list (default 11,23,47)");
  bench_add->add_option("--deg-f", ba.deg_f,
                        "Alternative: comma-separated deg f list");
  bench_add->add_option("--trials", ba.trials, "Timed runs per row (>= 3)");
  bench_add->add_option("--seed", ba.seed, "RNG seed (default 1)");
  bench_add->add_option("--csv", ba.csv_path,
                        "CSV output path (default stdout)");

  BenchOptions bp;
  bp.bits = 1024;
  bp.degrees = "2,3,4,5";
  CLI::App* bench_pke = app.add_subcommand(
      "bench-pke", "Time nodal encryption against textbook RSA");
  bench_pke->add_option("--bits", bp.bits,
                        "Modulus size in bits (default 1024)");
  bench_pke->add_option("--degrees", bp.degrees,
                        "Comma-separated deg f list (default 2,3,4,5)");
  bench_pke->add_option("--trials", bp.trials, "Timed runs per row (>= 3)");
  bench_pke->add_option("--seed", bp.seed, "RNG seed (default 1)");
  bench_pke->add_option("--csv", bp.csv_path,
                        "CSV output path (default stdout)");

  CLI::App* selftest = app.add_subcommand(
      "selftest", "Run the brute-force property suites at toy parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (keygen->parsed()) return run_keygen(kg);
    if (encrypt->parsed()) return run_encrypt(enc);
    if (decrypt->parsed()) return run_decrypt(dec);
    if (bench_add->parsed()) return run_bench_add(ba);
    if (bench_pke->parsed()) return run_bench_pke(bp);
    if (selftest->parsed()) return run_selftest();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const nodal::keyio::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCrypto;
  }
  return kExitUsage;
}
