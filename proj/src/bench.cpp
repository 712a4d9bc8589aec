#include "semecs/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "semecs/errors.hpp"
#include "semecs/eta.hpp"
#include "semecs/rng.hpp"
#include "semecs/schnorr.hpp"
#include "semecs/semecs.hpp"

namespace semecs {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kMessageLen = 48;
constexpr std::uint64_t kPresignedPool = 256;
constexpr const char* kCsvHeader =
    "scheme,operation,iters,median_ns,p10_ns,p90_ns,exp_ops,double_exp_ops,tx_bytes,compute_mJ,"
    "comm_uJ";

// Nearest-rank percentile of sorted samples.
double percentile(const std::vector<double>& sorted, double p) {
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

std::vector<Bytes> make_messages(std::uint64_t count, RandomSource& rng) {
  std::vector<Bytes> out(count, Bytes(kMessageLen));
  for (auto& m : out) {
    rng.fill(m);
  }
  return out;
}

// Runs warmup + iterations calls of body(i), timing only the last
// `iterations`, and fills timing and op-count fields.
template <typename Body>
void measure(BenchRecord& rec, const Group& group, std::uint64_t warmup, std::uint64_t iterations,
             Body&& body) {
  for (std::uint64_t i = 0; i < warmup; ++i) {
    body(i);
  }
  std::vector<double> samples;
  samples.reserve(iterations);
  const OpCounts before = group.counter().snapshot();
  for (std::uint64_t i = 0; i < iterations; ++i) {
    const auto t0 = Clock::now();
    body(warmup + i);
    const auto t1 = Clock::now();
    samples.push_back(static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
  }
  const OpCounts delta = group.counter().snapshot() - before;
  std::sort(samples.begin(), samples.end());
  rec.iterations = iterations;
  rec.median_ns = percentile(samples, 0.5);
  rec.p10_ns = percentile(samples, 0.1);
  rec.p90_ns = percentile(samples, 0.9);
  const auto n = static_cast<double>(iterations);
  rec.exp_ops = static_cast<double>(delta.exp) / n;
  rec.double_exp_ops = static_cast<double>(delta.double_exp) / n;
  rec.mul_ops = static_cast<double>(delta.mul) / n;
}

void require(bool ok, const char* what) {
  if (!ok) {
    throw std::logic_error(std::string("benchmark self-check failed: ") + what);
  }
}

void bench_schnorr(BenchRecord& rec, BenchOp op, const Suite& suite, std::uint64_t warmup,
                   std::uint64_t iters, SeededRandom& rng) {
  const SchnorrKeyPair kp = schnorr_keygen(suite, rng);
  const auto msgs = make_messages(kPresignedPool, rng);
  if (op == BenchOp::kSign) {
    measure(rec, suite.group, warmup, iters, [&](std::uint64_t i) {
      const auto sig = schnorr_sign(kp, msgs[i % msgs.size()], rng);
      require(!sig.s.bytes().empty(), "schnorr sign");
    });
    return;
  }
  std::vector<SchnorrSignature> sigs;
  for (const auto& m : msgs) {
    sigs.push_back(schnorr_sign(kp, m, rng));
  }
  measure(rec, suite.group, warmup, iters, [&](std::uint64_t i) {
    const std::size_t k = i % msgs.size();
    require(schnorr_verify(suite, kp.Y, msgs[k], sigs[k]), "schnorr verify");
  });
}

void bench_eta(BenchRecord& rec, BenchOp op, const Suite& suite, std::uint64_t warmup,
               std::uint64_t iters, SeededRandom& rng) {
  const auto msgs = make_messages(kPresignedPool, rng);
  if (op == BenchOp::kSign) {
    EtaKeyPair kp = eta_keygen(suite, warmup + iters, rng);
    measure(rec, suite.group, warmup, iters, [&](std::uint64_t i) {
      const auto sig = eta_sign(kp.state, msgs[i % msgs.size()], rng);
      require(sig.j == i, "eta sign index");
    });
    return;
  }
  EtaKeyPair kp = eta_keygen(suite, msgs.size(), rng);
  std::vector<EtaSignature> sigs;
  for (const auto& m : msgs) {
    sigs.push_back(eta_sign(kp.state, m, rng));
  }
  measure(rec, suite.group, warmup, iters, [&](std::uint64_t i) {
    const std::size_t k = i % msgs.size();
    require(eta_verify(kp.pk, msgs[k], sigs[k]), "eta verify");
  });
}

void bench_semecs(BenchRecord& rec, BenchOp op, const Suite& suite, std::uint64_t warmup,
                  std::uint64_t iters, SeededRandom& rng) {
  const auto msgs = make_messages(kPresignedPool, rng);
  SemecsKeygenOptions options;
  options.require_distinct_betas = op == BenchOp::kVerifySearch;
  if (op == BenchOp::kSign) {
    SemecsKeyPair kp = semecs_keygen(suite, warmup + iters, rng, options);
    measure(rec, suite.group, warmup, iters, [&](std::uint64_t i) {
      const auto env = semecs_sign(kp.state, msgs[i % msgs.size()]);
      require(env.j == i, "semecs sign index");
    });
    return;
  }
  SemecsKeyPair kp = semecs_keygen(suite, msgs.size(), rng, options);
  std::vector<SignedEnvelope> envs;
  for (const auto& m : msgs) {
    envs.push_back(semecs_sign(kp.state, m));
  }
  const bool search = op == BenchOp::kVerifySearch;
  measure(rec, suite.group, warmup, iters, [&](std::uint64_t i) {
    const std::size_t k = i % msgs.size();
    const VerifyResult r =
        search ? semecs_verify_search(kp.pk, envs[k]) : semecs_verify_indexed(kp.pk, envs[k]);
    require(r.accepted, "semecs verify");
  });
}

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(Errc::kMalformedEncoding, "not a number: '" + s + "'");
  }
  if (used != s.size()) {
    throw Error(Errc::kMalformedEncoding, "not a number: '" + s + "'");
  }
  return v;
}

std::uint64_t parse_count(const std::string& s) {
  const double v = parse_double(s);
  if (v < 0 || v != std::floor(v)) {
    throw Error(Errc::kMalformedEncoding, "not a count: '" + s + "'");
  }
  return static_cast<std::uint64_t>(v);
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

}  // namespace

const char* bench_scheme_name(BenchScheme s) noexcept {
  switch (s) {
    case BenchScheme::kSchnorr: return "schnorr";
    case BenchScheme::kEta: return "eta";
    case BenchScheme::kSemecs: return "semecs";
  }
  return "unknown";
}

const char* bench_op_name(BenchOp op) noexcept {
  switch (op) {
    case BenchOp::kSign: return "sign";
    case BenchOp::kVerify: return "verify";
    case BenchOp::kVerifySearch: return "verify_search";
  }
  return "unknown";
}

std::optional<BenchScheme> parse_bench_scheme(std::string_view name) noexcept {
  for (auto s : {BenchScheme::kSchnorr, BenchScheme::kEta, BenchScheme::kSemecs}) {
    if (name == bench_scheme_name(s)) return s;
  }
  return std::nullopt;
}

std::vector<BenchOp> bench_ops(BenchScheme s) {
  if (s == BenchScheme::kSemecs) {
    return {BenchOp::kSign, BenchOp::kVerify, BenchOp::kVerifySearch};
  }
  return {BenchOp::kSign, BenchOp::kVerify};
}

std::uint64_t bench_warmup(std::uint64_t iterations) noexcept {
  return std::clamp<std::uint64_t>(iterations / 10, 1, 100);
}

std::uint64_t signature_overhead(BenchScheme scheme, const Group& group) {
  const std::size_t n = group.scalar_len();
  switch (scheme) {
    case BenchScheme::kSchnorr: return 2 * n;
    case BenchScheme::kEta: return n + kEtaRandomnessLen + kEtaIndexLen;
    case BenchScheme::kSemecs: return n;
  }
  return 0;
}

BenchRecord run_bench(BenchScheme scheme, BenchOp op, const Group& group, std::uint64_t iterations,
                      std::uint64_t seed) {
  if (iterations == 0) {
    throw Error(Errc::kInvalidArgument, "iterations must be at least 1");
  }
  const auto ops = bench_ops(scheme);
  if (std::find(ops.begin(), ops.end(), op) == ops.end()) {
    throw Error(Errc::kUnsupportedCombo, std::string(bench_scheme_name(scheme)) + " has no " +
                                             bench_op_name(op) + " operation");
  }
  const Suite suite{group.with_fresh_counter(), DigestAlg::kBlake2s256};
  SeededRandom rng(seed);
  BenchRecord rec;
  rec.scheme = bench_scheme_name(scheme);
  rec.operation = bench_op_name(op);
  rec.tx_bytes = signature_overhead(scheme, group);
  const std::uint64_t warmup = bench_warmup(iterations);
  switch (scheme) {
    case BenchScheme::kSchnorr: bench_schnorr(rec, op, suite, warmup, iterations, rng); break;
    case BenchScheme::kEta: bench_eta(rec, op, suite, warmup, iterations, rng); break;
    case BenchScheme::kSemecs: bench_semecs(rec, op, suite, warmup, iterations, rng); break;
  }
  return rec;
}

void apply_energy(BenchRecord& record, const EnergyProfile& profile, std::optional<double> cycles) {
  const double bits = static_cast<double>(record.tx_bytes) * 8;
  const EnergyEstimate e = cycles ? energy_from_cycles(profile, *cycles, bits)
                                  : energy_from_time(profile, record.median_ns * 1e-9, bits);
  record.compute_mJ = e.compute_mJ;
  record.comm_uJ = e.comm_uJ;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.scheme << ',' << r.operation << ',' << r.iterations << ',' << format_number(r.median_ns, 15)
        << ',' << format_number(r.p10_ns, 15) << ',' << format_number(r.p90_ns, 15) << ','
        << format_number(r.exp_ops, 6) << ',' << format_number(r.double_exp_ops, 6) << ','
        << r.tx_bytes << ',' << (r.compute_mJ ? format_number(*r.compute_mJ, 6) : "") << ','
        << (r.comm_uJ ? format_number(*r.comm_uJ, 6) : "") << '\n';
  }
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(Errc::kMalformedEncoding, "empty CSV");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw Error(Errc::kMalformedEncoding, "CSV header does not match schema version 1");
  }
  std::vector<BenchRecord> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 11) {
      throw Error(Errc::kMalformedEncoding, "CSV row has " + std::to_string(f.size()) + " fields");
    }
    BenchRecord r;
    r.scheme = f[0];
    r.operation = f[1];
    r.iterations = parse_count(f[2]);
    r.median_ns = parse_double(f[3]);
    r.p10_ns = parse_double(f[4]);
    r.p90_ns = parse_double(f[5]);
    r.exp_ops = parse_double(f[6]);
    r.double_exp_ops = parse_double(f[7]);
    r.tx_bytes = parse_count(f[8]);
    r.compute_mJ = parse_optional(f[9]);
    r.comm_uJ = parse_optional(f[10]);
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_json(const std::vector<BenchRecord>& records) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : records) {
    rows.push_back({
        {"scheme", r.scheme},
        {"operation", r.operation},
        {"iters", r.iterations},
        {"median_ns", r.median_ns},
        {"p10_ns", r.p10_ns},
        {"p90_ns", r.p90_ns},
        {"exp_ops", r.exp_ops},
        {"double_exp_ops", r.double_exp_ops},
        {"tx_bytes", r.tx_bytes},
        {"compute_mJ", r.compute_mJ ? nlohmann::json(*r.compute_mJ) : nlohmann::json(nullptr)},
        {"comm_uJ", r.comm_uJ ? nlohmann::json(*r.comm_uJ) : nlohmann::json(nullptr)},
    });
  }
  return nlohmann::json{{"schema_version", kBenchSchemaVersion}, {"records", rows}}.dump(2);
}

}  // namespace semecs
