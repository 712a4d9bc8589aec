#pragma once

// Timing harness. Each record covers `iterations` timed calls after a
// discarded warmup; op counts are per timed call, read from the group's
// OpCounter.
//
// CSV schema, version 1 (header row included):
//   scheme,operation,iters,median_ns,p10_ns,p90_ns,exp_ops,double_exp_ops,
//   tx_bytes,compute_mJ,comm_uJ
// The energy columns stay empty until an energy profile is applied.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semecs/energy.hpp"
#include "semecs/group.hpp"

namespace semecs {

inline constexpr int kBenchSchemaVersion = 1;

enum class BenchScheme { kSchnorr, kEta, kSemecs };
/// kVerifySearch exists for SEMECS only.
enum class BenchOp { kSign, kVerify, kVerifySearch };

[[nodiscard]] const char* bench_scheme_name(BenchScheme s) noexcept;
[[nodiscard]] const char* bench_op_name(BenchOp op) noexcept;
[[nodiscard]] std::optional<BenchScheme> parse_bench_scheme(std::string_view name) noexcept;
[[nodiscard]] std::vector<BenchOp> bench_ops(BenchScheme s);

struct BenchRecord {
  std::string scheme;
  std::string operation;
  std::uint64_t iterations = 0;
  double median_ns = 0;
  double p10_ns = 0;
  double p90_ns = 0;
  double exp_ops = 0;
  double double_exp_ops = 0;
  double mul_ops = 0;
  /// Cryptographic octets on the wire per signature.
  std::uint64_t tx_bytes = 0;
  std::optional<double> compute_mJ;
  std::optional<double> comm_uJ;
};

/// Warmup length used for a run of `iterations` timed calls.
[[nodiscard]] std::uint64_t bench_warmup(std::uint64_t iterations) noexcept;

/// kUnsupportedCombo for an operation the scheme lacks; kInvalidArgument
/// for zero iterations. Deterministic inputs derived from `seed`.
[[nodiscard]] BenchRecord run_bench(BenchScheme scheme, BenchOp op, const Group& group,
                                    std::uint64_t iterations, std::uint64_t seed = 1);

/// Crypto overhead octets of one signature in the given group.
[[nodiscard]] std::uint64_t signature_overhead(BenchScheme scheme, const Group& group);

/// Fills the energy columns: compute from `cycles` when given, else from
/// median wall time; communication from tx_bytes.
void apply_energy(BenchRecord& record, const EnergyProfile& profile,
                  std::optional<double> cycles = std::nullopt);

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
/// kMalformedEncoding on a header or row that does not match the schema.
[[nodiscard]] std::vector<BenchRecord> read_csv(std::istream& in);
[[nodiscard]] std::string to_json(const std::vector<BenchRecord>& records);

}  // namespace semecs
