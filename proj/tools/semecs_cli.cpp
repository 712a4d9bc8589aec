// semecs: key generation, signing, verification and reporting.
//
// Exit codes: 0 success, 1 verification failed, 2 usage error or malformed
// input, 3 state or I/O error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semecs/bench.hpp"
#include "semecs/energy.hpp"
#include "semecs/errors.hpp"
#include "semecs/keystore.hpp"
#include "semecs/rng.hpp"

namespace fs = std::filesystem;
using namespace semecs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitState = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kMalformedEncoding:
    case Errc::kUnsupportedCombo:
    case Errc::kInvalidArgument:
    case Errc::kEmptyMessage:
      return kExitUsage;
    default:
      return kExitState;
  }
}

fs::path home_dir() {
  const char* home = std::getenv("SEMECS_HOME");
  return home != nullptr && *home != '\0' ? fs::path(home) : fs::path(".");
}

Bytes read_input(const std::string& path) {
  if (path == "-") {
    return Bytes((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
  }
  return read_file(path);
}

void write_output(const std::string& path, ByteView data) {
  if (path == "-") {
    std::cout.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return;
  }
  write_file_atomic(path, data);
}

Group make_group(const std::string& name, unsigned toy_bits) {
  if (name == "prod") return Group::production();
  return toy_bits == 0 ? Group::toy_default() : Group::generate_toy(toy_bits, 1);
}

// Detached signatures (Schnorr, ETA) carry the scheme tag ahead of the
// signature octets; SEMECS envelopes are self-describing.
Bytes tag_signature(SchemeTag tag, ByteView sig) {
  Bytes out{static_cast<std::uint8_t>(tag)};
  append(out, sig);
  return out;
}

ByteView untag_signature(SchemeTag expected, ByteView file) {
  if (file.empty() || file[0] != static_cast<std::uint8_t>(expected)) {
    throw Error(Errc::kMalformedEncoding, std::string("not a ") + scheme_name(expected) + " signature file");
  }
  return file.subspan(1);
}

// ---- keygen ---------------------------------------------------------------

struct KeygenArgs {
  std::string scheme;
  std::string group = "prod";
  unsigned toy_bits = 0;
  std::optional<std::uint64_t> K;
  std::string out_prefix;
  std::string digest = "blake2s";
  bool force = false;
};

int cmd_keygen(const KeygenArgs& a) {
  const bool k_time = a.scheme != "schnorr";
  if (k_time && !a.K) throw UsageError("-K is required for " + a.scheme);
  if (!k_time && a.K) throw UsageError("-K does not apply to schnorr");
  if (a.group != "toy" && a.toy_bits != 0) throw UsageError("--toy-bits requires --group toy");

  const Suite suite{make_group(a.group, a.toy_bits),
                    a.digest == "sha256" ? DigestAlg::kSha256 : DigestAlg::kBlake2s256};
  const fs::path prefix = a.out_prefix.empty() ? home_dir() / a.scheme : fs::path(a.out_prefix);
  fs::path sk_path = prefix;
  sk_path += ".sk";
  fs::path pk_path = prefix;
  pk_path += ".pk";
  if (!a.force && (fs::exists(sk_path) || fs::exists(pk_path))) {
    throw UsageError(sk_path.string() + " or " + pk_path.string() + " exists; pass --force to replace");
  }

  SystemRandom rng;
  const auto t0 = std::chrono::steady_clock::now();
  Bytes sk, pk;
  bool indexed = true;
  if (a.scheme == "schnorr") {
    const auto kp = schnorr_keygen(suite, rng);
    sk = encode_state(to_record(kp));
    pk = encode_public_key(SchnorrPublicKey{suite, kp.Y});
  } else if (a.scheme == "eta") {
    const auto kp = eta_keygen(suite, *a.K, rng);
    sk = encode_state(to_record(kp.state));
    pk = encode_public_key(kp.pk);
  } else {
    SemecsKeygenOptions options;
    // Tiny groups cannot hold K distinct betas; index-only verification still works.
    options.require_distinct_betas = suite.group.id() == GroupId::kProduction;
    const auto kp = semecs_keygen(suite, *a.K, rng, options);
    indexed = kp.pk.search_index.has_value();
    sk = encode_state(to_record(kp.state));
    pk = encode_public_key(kp.pk);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!prefix.parent_path().empty()) fs::create_directories(prefix.parent_path());
  write_file_atomic(sk_path, sk);
  write_file_atomic(pk_path, pk);
  secure_wipe(sk);

  std::cout << "scheme    " << a.scheme << "\n"
            << "group     " << suite.group.describe() << "\n";
  if (k_time) std::cout << "K         " << *a.K << "\n";
  std::cout << "secret    " << sk_path.string() << " (" << fs::file_size(sk_path) << " octets)\n"
            << "public    " << pk_path.string() << " (" << pk.size() << " octets, payload "
            << pk.size() - public_key_header_len(parse_header(pk).scheme, suite.group) << ")\n"
            << "keygen    " << seconds << " s\n";
  if (!indexed) {
    std::cerr << "note: betas collide in this group; search verification is unavailable\n";
  }
  return kExitOk;
}

// ---- sign -----------------------------------------------------------------

int cmd_sign(const std::string& sk_arg, const std::string& in, const std::string& out) {
  const fs::path sk_path = sk_arg.empty() ? home_dir() / "semecs.sk" : fs::path(sk_arg);
  const SignerStateRecord rec = load_state(sk_path);
  const Bytes msg = read_input(in);
  const Group& g = rec.suite.group;
  SystemRandom rng;
  Bytes wire;
  std::uint64_t index = 0;
  std::size_t overhead = 0;
  switch (rec.scheme) {
    case SchemeTag::kSchnorr: {
      const auto kp = schnorr_from_record(rec);
      wire = tag_signature(SchemeTag::kSchnorr, encode_schnorr_signature(g, schnorr_sign(kp, msg, rng)));
      overhead = wire.size();
      break;
    }
    case SchemeTag::kEta: {
      EtaSigningState state = eta_from_record(rec);
      EtaFileStore store(sk_path, state);
      const auto sig = eta_sign(state, msg, rng, &store);
      index = sig.j;
      wire = tag_signature(SchemeTag::kEta, encode_eta_signature(g, sig));
      overhead = wire.size();
      break;
    }
    case SchemeTag::kSemecs: {
      SemecsSigningState state = semecs_from_record(rec);
      FileCounterStore store(sk_path);
      const auto env = semecs_sign(state, msg, &store);
      index = *env.j;
      wire = encode_envelope(env);
      overhead = g.scalar_len() + kEnvelopeHeaderLen;
      break;
    }
  }
  write_output(out, wire);
  std::cerr << "signed with " << scheme_name(rec.scheme);
  if (rec.scheme != SchemeTag::kSchnorr) std::cerr << " index " << index << " of " << rec.K;
  std::cerr << "; overhead " << overhead << " octets";
  if (rec.scheme == SchemeTag::kSemecs) {
    std::cerr << " (" << g.scalar_len() << " signature + " << kEnvelopeHeaderLen << " header)";
  }
  std::cerr << "\n";
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const std::string& pk_arg, const std::string& env_path, bool no_index,
               const std::string& in, const std::string& out) {
  const fs::path pk_path = pk_arg.empty() ? home_dir() / "semecs.pk" : fs::path(pk_arg);
  const PublicKey key = decode_public_key(read_file(pk_path));
  const Bytes sig_file = read_input(env_path);

  if (const auto* pk = std::get_if<SemecsPublicKey>(&key)) {
    if (!in.empty()) throw UsageError("--in does not apply to SEMECS envelopes");
    const auto env = decode_envelope(sig_file, pk->suite.group.scalar_len());
    if (no_index && !pk->search_index) {
      throw Error(Errc::kUnsupportedCombo, "public key has colliding betas; --no-index is unavailable");
    }
    const VerifyResult r = no_index ? semecs_verify_search(*pk, env) : semecs_verify_indexed(*pk, env);
    if (!r.accepted) {
      std::cerr << "INVALID\n";
      return kExitInvalid;
    }
    write_output(out, r.message);
    std::cerr << "valid; index " << *r.j;
    if (no_index) std::cerr << " located in " << r.comparisons << " comparisons";
    std::cerr << "\n";
    return kExitOk;
  }

  if (no_index) throw UsageError("--no-index applies to SEMECS keys only");
  if (in.empty()) throw UsageError("--in is required for detached signatures");
  const Bytes msg = read_input(in);
  bool ok = false;
  if (const auto* pk = std::get_if<SchnorrPublicKey>(&key)) {
    const auto sig = decode_schnorr_signature(pk->suite.group, untag_signature(SchemeTag::kSchnorr, sig_file));
    ok = schnorr_verify(pk->suite, pk->Y, msg, sig);
  } else {
    const auto& epk = std::get<EtaPublicKey>(key);
    const auto sig = decode_eta_signature(epk.suite.group, untag_signature(SchemeTag::kEta, sig_file));
    ok = eta_verify(epk, msg, sig);
  }
  std::cerr << (ok ? "valid\n" : "INVALID\n");
  return ok ? kExitOk : kExitInvalid;
}

// ---- inspect --------------------------------------------------------------

const char* role_name(KeyRole r) {
  switch (r) {
    case KeyRole::kSecret: return "secret key";
    case KeyRole::kPublic: return "public key";
    case KeyRole::kState: return "signer state";
  }
  return "unknown";
}

int cmd_inspect(const std::string& path) {
  const Bytes file = read_file(path);
  const KeyFileHeader h = parse_header(file);
  std::cout << "file      " << path << " (" << file.size() << " octets)\n"
            << "role      " << role_name(h.role) << "\n"
            << "scheme    " << scheme_name(h.scheme) << "\n";
  if (h.role == KeyRole::kPublic) {
    const PublicKey key = decode_public_key(file);
    std::visit(
        [&](const auto& pk) {
          std::cout << "group     " << pk.suite.group.describe() << "\n"
                    << "digest    " << digest_name(pk.suite.digest) << "\n";
        },
        key);
    if (const auto* pk = std::get_if<EtaPublicKey>(&key)) {
      std::cout << "K         " << pk->K << "\n";
    }
    if (const auto* pk = std::get_if<SemecsPublicKey>(&key)) {
      std::cout << "K         " << pk->K << "\n"
                << "payload   " << file.size() - public_key_header_len(h.scheme, pk->suite.group) << " octets\n"
                << "search    " << (pk->search_index ? "available" : "unavailable (colliding betas)") << "\n";
    }
    return kExitOk;
  }
  SignerStateRecord rec = decode_state(file);
  secure_wipe(rec.secret);
  std::cout << "group     " << rec.suite.group.describe() << "\n"
            << "digest    " << digest_name(rec.suite.digest) << "\n";
  if (rec.scheme != SchemeTag::kSchnorr) {
    std::cout << "j         " << rec.j << "\n"
              << "K         " << rec.K << "\n"
              << "remaining " << rec.K - rec.j << "\n";
  }
  return kExitOk;
}

// ---- bench / energy-report ------------------------------------------------

void emit_reports(const std::vector<BenchRecord>& rows, const std::string& csv_path,
                  const std::string& json_path) {
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    write_csv(f, rows);
    if (!f) throw Error(Errc::kIoFailure, "cannot write " + csv_path);
  }
  if (!json_path.empty()) {
    std::ofstream f(json_path);
    f << to_json(rows) << "\n";
    if (!f) throw Error(Errc::kIoFailure, "cannot write " + json_path);
  }
  if (csv_path.empty() && json_path.empty()) {
    write_csv(std::cout, rows);
  }
}

EnergyProfile resolve_profile(const std::string& name) {
  const auto p = builtin_profile(name);
  if (!p) throw UsageError("unknown profile '" + name + "'");
  return *p;
}

int cmd_bench(const std::string& scheme, const std::string& group, unsigned toy_bits, std::uint64_t iters,
              const std::string& profile, const std::string& csv, const std::string& json) {
  std::vector<BenchScheme> schemes;
  if (scheme == "all") {
    schemes = {BenchScheme::kSchnorr, BenchScheme::kEta, BenchScheme::kSemecs};
  } else {
    schemes = {*parse_bench_scheme(scheme)};
  }
  // Benchmarks need K distinct betas, which the smallest toy group cannot hold.
  const Group g = group == "prod" ? Group::production() : Group::generate_toy(toy_bits == 0 ? 30 : toy_bits, 1);
  std::optional<EnergyProfile> energy;
  if (!profile.empty()) energy = resolve_profile(profile);
  std::vector<BenchRecord> rows;
  for (auto s : schemes) {
    for (auto op : bench_ops(s)) {
      std::cerr << "bench " << bench_scheme_name(s) << " " << bench_op_name(op) << " ...\n";
      BenchRecord r = run_bench(s, op, g, iters);
      if (energy) apply_energy(r, *energy);
      rows.push_back(std::move(r));
    }
  }
  emit_reports(rows, csv, json);
  return kExitOk;
}

struct EnergyArgs {
  std::string profile = "avr-atmega2560";
  std::string from;
  std::optional<double> cycles;
  std::optional<double> seconds;
  std::optional<double> bits;
  std::string out;
  std::string json;
};

int cmd_energy_report(const EnergyArgs& a) {
  const EnergyProfile p = resolve_profile(a.profile);
  if (!a.from.empty()) {
    if (a.seconds || a.bits) throw UsageError("--seconds and --bits do not combine with --from");
    std::ifstream f(a.from);
    if (!f) throw Error(Errc::kIoFailure, "cannot open " + a.from);
    auto rows = read_csv(f);
    for (auto& r : rows) apply_energy(r, p, a.cycles);
    emit_reports(rows, a.out, a.json);
    return kExitOk;
  }
  if (!a.cycles && !a.seconds && !a.bits) throw UsageError("give --from, or at least one of --cycles, --seconds, --bits");
  if (a.cycles && a.seconds) throw UsageError("--cycles and --seconds are exclusive");
  const double bits = a.bits.value_or(0);
  const EnergyEstimate e = a.seconds ? energy_from_time(p, *a.seconds, bits)
                                     : energy_from_cycles(p, a.cycles.value_or(0), bits);
  std::cout << "profile     " << p.name << " (" << p.nj_per_cycle << " nJ/cycle, " << p.nj_per_bit
            << " nJ/bit)\n"
            << "compute_mJ  " << e.compute_mJ << "\n"
            << "comm_uJ     " << e.comm_uJ << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-time signatures with message recovery"};
  app.require_subcommand(1);

  KeygenArgs kg;
  auto* keygen = app.add_subcommand("keygen", "Generate a signer state file and a public key file");
  keygen->add_option("--scheme", kg.scheme, "Signature scheme")->required()->check(CLI::IsMember({"schnorr", "eta", "semecs"}));
  keygen->add_option("--group", kg.group, "Group backend")->check(CLI::IsMember({"toy", "prod"}));
  keygen->add_option("--toy-bits", kg.toy_bits, "Generate a toy group with a q of this many bits")->check(CLI::Range(8, 30));
  keygen->add_option("-K,--capacity", kg.K, "Number of signatures (eta, semecs)")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 32));
  keygen->add_option("--out-prefix", kg.out_prefix, "Writes <prefix>.sk and <prefix>.pk (default $SEMECS_HOME/<scheme>)");
  keygen->add_option("--digest", kg.digest, "Hash underlying H0 and H1")->check(CLI::IsMember({"blake2s", "sha256"}));
  keygen->add_flag("--force", kg.force, "Replace existing key files");

  std::string sk, in, out = "-";
  auto* sign = app.add_subcommand("sign", "Sign a message and advance the signer state");
  sign->add_option("--sk", sk, "Signer state file (default $SEMECS_HOME/semecs.sk)");
  sign->add_option("--in", in, "Message file, or - for stdin")->required();
  sign->add_option("--out", out, "Envelope or signature file, or - for stdout");

  std::string pk, env, vin, vout = "-";
  bool no_index = false;
  auto* verify = app.add_subcommand("verify", "Verify an envelope and recover its message");
  verify->add_option("--pk", pk, "Public key file (default $SEMECS_HOME/semecs.pk)");
  verify->add_option("--env", env, "Envelope or signature file, or - for stdin")->required();
  verify->add_flag("--no-index", no_index, "Locate the token by search instead of the envelope index");
  verify->add_option("--in", vin, "Message file for detached signatures");
  verify->add_option("--out", vout, "Where the recovered message goes (default stdout)");

  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect", "Show key file metadata; never prints secrets");
  inspect->add_option("file", inspect_path, "Key or state file")->required();

  std::string b_scheme = "all", b_group = "prod", b_profile, b_csv, b_json;
  unsigned b_toy_bits = 0;
  std::uint64_t b_iters = 1000;
  auto* bench = app.add_subcommand("bench", "Time sign and verify paths");
  bench->add_option("--scheme", b_scheme, "Scheme or all")->check(CLI::IsMember({"schnorr", "eta", "semecs", "all"}));
  bench->add_option("--group", b_group, "Group backend")->check(CLI::IsMember({"toy", "prod"}));
  bench->add_option("--toy-bits", b_toy_bits, "Toy group size in bits of q (default 30)")->check(CLI::Range(8, 30));
  bench->add_option("--iters", b_iters, "Timed iterations per operation")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1000000000}));
  bench->add_option("--profile", b_profile, "Fill energy columns from median time with this profile");
  bench->add_option("--csv", b_csv, "Write CSV here");
  bench->add_option("--json", b_json, "Write JSON here");

  EnergyArgs ea;
  auto* energy = app.add_subcommand("energy-report", "Apply an energy profile to cycle counts or a bench CSV");
  energy->add_option("--profile", ea.profile, "Built-in profile")->check(CLI::IsMember(builtin_profile_names()));
  energy->add_option("--from", ea.from, "Bench CSV to annotate");
  energy->add_option("--cycles", ea.cycles, "Cycle count (overrides measured time)")->check(CLI::NonNegativeNumber);
  energy->add_option("--seconds", ea.seconds, "Computation time")->check(CLI::NonNegativeNumber);
  energy->add_option("--bits", ea.bits, "Transmitted bits")->check(CLI::NonNegativeNumber);
  energy->add_option("--out", ea.out, "Write annotated CSV here");
  energy->add_option("--json", ea.json, "Write annotated JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*keygen) return cmd_keygen(kg);
    if (*sign) return cmd_sign(sk, in, out);
    if (*verify) return cmd_verify(pk, env, no_index, vin, vout);
    if (*inspect) return cmd_inspect(inspect_path);
    if (*bench) return cmd_bench(b_scheme, b_group, b_toy_bits, b_iters, b_profile, b_csv, b_json);
    if (*energy) return cmd_energy_report(ea);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitState;
  }
  return kExitUsage;
}
