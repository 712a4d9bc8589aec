#include "semecs/energy.hpp"

#include <cmath>

#include "semecs/errors.hpp"

namespace semecs {
namespace {

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0) {
    throw Error(Errc::kInvalidArgument, std::string(what) + " must be positive");
  }
}

void require_non_negative(double v, const char* what) {
  if (!std::isfinite(v) || v < 0) {
    throw Error(Errc::kInvalidArgument, std::string(what) + " must be non-negative");
  }
}

}  // namespace

double nj_per_unit(double volts, double amps, double rate) {
  require_positive(volts, "voltage");
  require_positive(amps, "current");
  require_positive(rate, "rate");
  return volts * amps / rate * 1e9;
}

EnergyProfile derive_profile(double volts, double amps, ClockRate clock) {
  EnergyProfile p;
  p.name = "derived";
  p.volts = volts;
  p.amps = amps;
  p.clock_hz = clock.hz;
  p.nj_per_cycle = nj_per_unit(volts, amps, clock.hz);
  return p;
}

EnergyProfile derive_profile(double volts, double amps, BitRate link) {
  EnergyProfile p;
  p.name = "derived";
  p.volts = volts;
  p.amps = amps;
  p.nj_per_bit = nj_per_unit(volts, amps, link.bps);
  return p;
}

std::optional<EnergyProfile> builtin_profile(std::string_view name) {
  if (name == "avr-atmega2560") {
    return EnergyProfile{"avr-atmega2560", 5.0, 0.020, 16e6, 6.25, 18.65};
  }
  if (name == "nrf24l01") {
    EnergyProfile p = derive_profile(3.3, 0.0113, BitRate{2e6});
    p.name = "nrf24l01";
    return p;
  }
  return std::nullopt;
}

std::vector<std::string> builtin_profile_names() { return {"avr-atmega2560", "nrf24l01"}; }

EnergyEstimate energy_from_cycles(const EnergyProfile& profile, double cycles, double bits) {
  require_non_negative(cycles, "cycles");
  require_non_negative(bits, "bits");
  return {cycles * profile.nj_per_cycle * 1e-6, bits * profile.nj_per_bit * 1e-3};
}

EnergyEstimate energy_from_time(const EnergyProfile& profile, double seconds, double bits) {
  require_non_negative(seconds, "time");
  require_non_negative(bits, "bits");
  return {seconds * profile.volts * profile.amps * 1e3, bits * profile.nj_per_bit * 1e-3};
}

double round_sig(double value, int digits) {
  if (value == 0 || !std::isfinite(value)) {
    return value;
  }
  const double magnitude = std::floor(std::log10(std::fabs(value)));
  const double scale = std::pow(10.0, digits - 1 - magnitude);
  return std::round(value * scale) / scale;
}

}  // namespace semecs
