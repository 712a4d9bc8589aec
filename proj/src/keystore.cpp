#include "semecs/keystore.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>

#include "semecs/digest.hpp"
#include "semecs/errors.hpp"

namespace semecs {
namespace {

constexpr std::uint8_t kMagic[4] = {'S', 'M', 'K', 'S'};
constexpr std::size_t kToyParamsLen = 12;

class Reader {
 public:
  Reader(ByteView in, Errc err) : in_(in), err_(err) {}

  ByteView take(std::size_t n) {
    if (in_.size() - pos_ < n) {
      throw Error(err_, "file truncated");
    }
    ByteView out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint64_t u64() { return get_be(take(8)); }
  std::uint8_t u8() { return take(1)[0]; }
  [[nodiscard]] std::size_t remaining() const noexcept { return in_.size() - pos_; }
  [[nodiscard]] std::size_t position() const noexcept { return pos_; }

 private:
  ByteView in_;
  std::size_t pos_ = 0;
  Errc err_;
};

void put_header(Bytes& out, SchemeTag scheme, const Suite& suite, KeyRole role) {
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  out.push_back(kKeyFileVersion);
  out.push_back(static_cast<std::uint8_t>(scheme));
  out.push_back(static_cast<std::uint8_t>(suite.group.id()));
  out.push_back(static_cast<std::uint8_t>(role));
  out.push_back(static_cast<std::uint8_t>(suite.digest));
  if (const auto toy = suite.group.toy_params()) {
    put_be(out, toy->p, 4);
    put_be(out, toy->q, 4);
    put_be(out, toy->alpha, 4);
  }
}

KeyFileHeader read_header(Reader& rd, Errc err) {
  try {
    const ByteView magic = rd.take(4);
    if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) {
      throw Error(err, "bad magic");
    }
    KeyFileHeader h;
    h.version = rd.u8();
    if (h.version != kKeyFileVersion) {
      throw Error(err, "unsupported key file version " + std::to_string(h.version));
    }
    const std::uint8_t scheme = rd.u8();
    const std::uint8_t group = rd.u8();
    const std::uint8_t role = rd.u8();
    if (scheme < 0x01 || scheme > 0x03) throw Error(err, "unknown scheme tag");
    if (group < 0x01 || group > 0x02) throw Error(err, "unknown group id");
    if (role < 0x01 || role > 0x03) throw Error(err, "unknown role");
    h.scheme = static_cast<SchemeTag>(scheme);
    h.group = static_cast<GroupId>(group);
    h.role = static_cast<KeyRole>(role);
    return h;
  } catch (const Error& e) {
    if (e.code() == err) throw;
    throw Error(err, e.what());
  }
}

Suite read_suite(Reader& rd, GroupId group, Errc err) {
  const auto alg = digest_from_id(rd.u8());
  if (!alg) {
    throw Error(err, "unknown digest algorithm");
  }
  if (group == GroupId::kProduction) {
    return Suite{Group::production(), *alg};
  }
  ToyParams params;
  params.p = get_be(rd.take(4));
  params.q = get_be(rd.take(4));
  params.alpha = get_be(rd.take(4));
  try {
    return Suite{Group::toy(params), *alg};
  } catch (const Error& e) {
    throw Error(err, e.what());
  }
}

std::size_t secret_len(SchemeTag scheme, const Group& group) {
  return (scheme == SchemeTag::kEta ? 2 : 1) * group.scalar_len();
}

KeyRole secret_role(SchemeTag scheme) {
  return scheme == SchemeTag::kSchnorr ? KeyRole::kSecret : KeyRole::kState;
}

[[noreturn]] void io_fail(const std::string& what, const std::filesystem::path& path) {
  throw Error(Errc::kIoFailure, what + " " + path.string() + ": " + std::strerror(errno));
}

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  [[nodiscard]] int get() const noexcept { return fd_; }
  int release() noexcept { return std::exchange(fd_, -1); }

 private:
  int fd_;
};

void write_all(int fd, ByteView data, const std::filesystem::path& path) {
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(fd, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      io_fail("write", path);
    }
    off += static_cast<std::size_t>(n);
  }
}

void advance_locked(const std::filesystem::path& path, std::uint64_t expected_j,
                    std::optional<ByteView> new_secret) {
  std::filesystem::path lock_path = path;
  lock_path += ".lock";
  Fd lock(::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0600));
  if (lock.get() < 0) io_fail("cannot open lock", lock_path);
  if (::flock(lock.get(), LOCK_EX) != 0) io_fail("cannot lock", lock_path);

  SignerStateRecord rec = load_state(path);
  if (rec.j != expected_j) {
    throw Error(Errc::kStaleState, "state file holds j=" + std::to_string(rec.j) + ", expected " +
                                       std::to_string(expected_j));
  }
  if (rec.j >= rec.K) {
    throw Error(Errc::kKeyExhausted, "all " + std::to_string(rec.K) + " signatures used");
  }
  if (new_secret) {
    if (new_secret->size() != rec.secret.size()) {
      throw Error(Errc::kCorruptState, "replacement secret has wrong length");
    }
    secure_wipe(rec.secret);
    rec.secret.assign(new_secret->begin(), new_secret->end());
  }
  rec.j += 1;
  save_state(path, rec);
  secure_wipe(rec.secret);
}

}  // namespace

const char* scheme_name(SchemeTag tag) noexcept {
  switch (tag) {
    case SchemeTag::kSchnorr: return "schnorr";
    case SchemeTag::kEta: return "eta";
    case SchemeTag::kSemecs: return "semecs";
  }
  return "unknown";
}

KeyFileHeader parse_header(ByteView file) {
  Reader rd(file, Errc::kMalformedEncoding);
  return read_header(rd, Errc::kMalformedEncoding);
}

Bytes encode_state(const SignerStateRecord& record) {
  if (record.secret.size() != secret_len(record.scheme, record.suite.group)) {
    throw Error(Errc::kInvalidArgument, "secret payload has wrong length");
  }
  Bytes out;
  put_header(out, record.scheme, record.suite, secret_role(record.scheme));
  append(out, record.secret);
  put_be(out, record.j, 8);
  put_be(out, record.K, 8);
  const Digest tag = digest(DigestAlg::kBlake2s256, {out});
  append(out, tag);
  return out;
}

SignerStateRecord decode_state(ByteView file) {
  constexpr Errc kErr = Errc::kCorruptState;
  if (file.size() < kIntegrityTagLen) {
    throw Error(kErr, "file truncated");
  }
  const ByteView body = file.first(file.size() - kIntegrityTagLen);
  const Digest tag = digest(DigestAlg::kBlake2s256, {body});
  if (!ct_equal(tag, file.subspan(body.size()))) {
    throw Error(kErr, "integrity tag mismatch");
  }
  Reader rd(body, kErr);
  const KeyFileHeader h = read_header(rd, kErr);
  if (h.role != secret_role(h.scheme)) {
    throw Error(kErr, "not a signer state file");
  }
  Suite suite = read_suite(rd, h.group, kErr);
  const ByteView secret = rd.take(secret_len(h.scheme, suite.group));
  SignerStateRecord rec{h.scheme, suite, Bytes(secret.begin(), secret.end()), 0, 0};
  rec.j = rd.u64();
  rec.K = rd.u64();
  if (rd.remaining() != 0) {
    throw Error(kErr, "trailing octets");
  }
  if (rec.j > rec.K) {
    throw Error(kErr, "counter j exceeds capacity K");
  }
  try {
    const std::size_t n = rec.suite.group.scalar_len();
    for (std::size_t off = 0; off < rec.secret.size(); off += n) {
      if (rec.suite.group.decode_scalar(ByteView(rec.secret).subspan(off, n)).is_zero()) {
        throw Error(kErr, "zero secret scalar");
      }
    }
  } catch (const Error& e) {
    if (e.code() == kErr) throw;
    throw Error(kErr, e.what());
  }
  return rec;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    io_fail("cannot open", path);
  }
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    io_fail("cannot read", path);
  }
  return data;
}

void write_file_atomic(const std::filesystem::path& path, ByteView data) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    Fd fd(::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600));
    if (fd.get() < 0) io_fail("cannot create", tmp);
    write_all(fd.get(), data, tmp);
    if (::fsync(fd.get()) != 0) io_fail("fsync", tmp);
  }
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    io_fail("rename onto", path);
  }
  std::filesystem::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  Fd dfd(::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC));
  if (dfd.get() >= 0) {
    ::fsync(dfd.get());
  }
}

void save_state(const std::filesystem::path& path, const SignerStateRecord& record) {
  write_file_atomic(path, encode_state(record));
}

SignerStateRecord load_state(const std::filesystem::path& path) { return decode_state(read_file(path)); }

void advance_counter(const std::filesystem::path& path, std::uint64_t expected_j) {
  advance_locked(path, expected_j, std::nullopt);
}

void advance_state(const std::filesystem::path& path, std::uint64_t expected_j, ByteView new_secret) {
  advance_locked(path, expected_j, new_secret);
}

void EtaFileStore::advance(std::uint64_t expected_j) {
  SignerStateRecord next = to_record(state_);
  if (next.j != expected_j + 1) {
    throw Error(Errc::kInvalidArgument, "signer state has not been stepped past index " +
                                            std::to_string(expected_j));
  }
  advance_state(path_, expected_j, next.secret);
  secure_wipe(next.secret);
}


SignerStateRecord to_record(const SchnorrKeyPair& kp) {
  return SignerStateRecord{SchemeTag::kSchnorr, kp.suite, kp.suite.group.encode(kp.y), 0, 0};
}

SignerStateRecord to_record(const EtaSigningState& state) {
  return SignerStateRecord{SchemeTag::kEta, state.suite,
                           concat({state.y.bytes(), state.r_cur.bytes()}), state.j, state.K};
}

SignerStateRecord to_record(const SemecsSigningState& state) {
  return SignerStateRecord{SchemeTag::kSemecs, state.suite, state.suite.group.encode(state.y), state.j,
                           state.K};
}

namespace {
void expect_scheme(const SignerStateRecord& record, SchemeTag tag) {
  if (record.scheme != tag) {
    throw Error(Errc::kInvalidArgument, std::string("state belongs to scheme ") +
                                            scheme_name(record.scheme) + ", not " + scheme_name(tag));
  }
}
}  // namespace

SchnorrKeyPair schnorr_from_record(const SignerStateRecord& record) {
  expect_scheme(record, SchemeTag::kSchnorr);
  return schnorr_keypair_from_secret(record.suite, record.suite.group.decode_scalar(record.secret));
}

EtaSigningState eta_from_record(const SignerStateRecord& record) {
  expect_scheme(record, SchemeTag::kEta);
  const Group& g = record.suite.group;
  const std::size_t n = g.scalar_len();
  const ByteView secret(record.secret);
  return EtaSigningState{record.suite, g.decode_scalar(secret.first(n)),
                         g.decode_scalar(secret.subspan(n)), record.j, record.K};
}

SemecsSigningState semecs_from_record(const SignerStateRecord& record) {
  expect_scheme(record, SchemeTag::kSemecs);
  return SemecsSigningState{record.suite, record.suite.group.decode_scalar(record.secret), record.j,
                            record.K};
}

std::size_t public_key_header_len(SchemeTag scheme, const Group& group) {
  std::size_t len = kKeyFileHeaderLen + 1;
  if (group.id() == GroupId::kToy) len += kToyParamsLen;
  if (scheme != SchemeTag::kSchnorr) len += 8;
  return len;
}

std::size_t state_overhead_len(const Group& group) {
  return kKeyFileHeaderLen + 1 + (group.id() == GroupId::kToy ? kToyParamsLen : 0) + 8 + 8 +
         kIntegrityTagLen;
}

Bytes encode_public_key(const SchnorrPublicKey& pk) {
  Bytes out;
  put_header(out, SchemeTag::kSchnorr, pk.suite, KeyRole::kPublic);
  append(out, pk.Y.bytes());
  return out;
}

Bytes encode_public_key(const EtaPublicKey& pk) {
  Bytes out;
  put_header(out, SchemeTag::kEta, pk.suite, KeyRole::kPublic);
  put_be(out, pk.K, 8);
  append(out, pk.Y.bytes());
  append(out, pk.tokens);
  return out;
}

Bytes encode_public_key(const SemecsPublicKey& pk) {
  Bytes out;
  out.reserve(public_key_header_len(SchemeTag::kSemecs, pk.suite.group) +
              pk.suite.group.element_len() + pk.tokens.size());
  put_header(out, SchemeTag::kSemecs, pk.suite, KeyRole::kPublic);
  put_be(out, pk.K, 8);
  append(out, pk.Y.bytes());
  append(out, pk.tokens);
  return out;
}

PublicKey decode_public_key(ByteView file) {
  constexpr Errc kErr = Errc::kMalformedEncoding;
  Reader rd(file, kErr);
  const KeyFileHeader h = read_header(rd, kErr);
  if (h.role != KeyRole::kPublic) {
    throw Error(kErr, "not a public key file");
  }
  Suite suite = read_suite(rd, h.group, kErr);
  const Group& g = suite.group;
  std::uint64_t K = 0;
  if (h.scheme != SchemeTag::kSchnorr) {
    K = rd.u64();
    if (K < 1 || K > (std::uint64_t{1} << 32)) {
      throw Error(kErr, "K out of range");
    }
  }
  const Element Y = g.decode_element(rd.take(g.element_len()));
  const std::size_t per_token = (h.scheme == SchemeTag::kSemecs ? 2 : 1) * g.scalar_len();
  const std::size_t expected = h.scheme == SchemeTag::kSchnorr ? 0 : K * per_token;
  if (rd.remaining() != expected) {
    throw Error(kErr, "token payload has wrong length");
  }
  const ByteView payload = rd.take(expected);

  switch (h.scheme) {
    case SchemeTag::kSchnorr:
      return SchnorrPublicKey{suite, Y};
    case SchemeTag::kEta:
      return EtaPublicKey{suite, Y, K, Bytes(payload.begin(), payload.end())};
    case SchemeTag::kSemecs: {
      SemecsPublicKey pk{suite, Y, K, Bytes(payload.begin(), payload.end()), std::nullopt};
      pk.rebuild_search_index();
      return pk;
    }
  }
  throw Error(kErr, "unknown scheme");
}

}  // namespace semecs
