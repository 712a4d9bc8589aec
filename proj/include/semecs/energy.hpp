#pragma once

// Energy model E = V * I * t. A cycle at clock f costs V*I/f joules; a bit
// at link rate b costs V*I/b joules.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semecs {

struct ClockRate {
  double hz = 0;
};

struct BitRate {
  double bps = 0;
};

struct EnergyProfile {
  std::string name;
  double volts = 0;
  double amps = 0;
  double clock_hz = 0;
  double nj_per_cycle = 0;
  double nj_per_bit = 0;
};

/// V*I/rate in nanojoules.
[[nodiscard]] double nj_per_unit(double volts, double amps, double rate);

/// Computation profile; nj_per_bit stays 0. kInvalidArgument unless all
/// parameters are positive and finite.
[[nodiscard]] EnergyProfile derive_profile(double volts, double amps, ClockRate clock);
/// Radio profile; clock_hz and nj_per_cycle stay 0.
[[nodiscard]] EnergyProfile derive_profile(double volts, double amps, BitRate link);

/// "avr-atmega2560": 5 V, 20 mA, 16 MHz MCU with 6.25 nJ/cycle and
///     18.65 nJ/bit pinned (the bit cost is the paired radio's).
/// "nrf24l01": 3.3 V, 11.3 mA, 2 Mbps radio, nj_per_bit derived.
[[nodiscard]] std::optional<EnergyProfile> builtin_profile(std::string_view name);
[[nodiscard]] std::vector<std::string> builtin_profile_names();

struct EnergyEstimate {
  double compute_mJ = 0;
  double comm_uJ = 0;
};

/// compute = cycles * nj_per_cycle, comm = bits * nj_per_bit.
/// kInvalidArgument on negative input.
[[nodiscard]] EnergyEstimate energy_from_cycles(const EnergyProfile& profile, double cycles, double bits);
/// compute = seconds * V * I, comm = bits * nj_per_bit.
[[nodiscard]] EnergyEstimate energy_from_time(const EnergyProfile& profile, double seconds, double bits);

/// Rounds to `digits` significant figures; 0 stays 0.
[[nodiscard]] double round_sig(double value, int digits);

}  // namespace semecs
