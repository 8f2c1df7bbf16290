#ifndef BONDSIM_CORE_TIME_HPP
#define BONDSIM_CORE_TIME_HPP

#include <cstdint>

namespace bondsim {

// Simulation clock in integer microseconds. All MAC timings (slots, IFS,
// frame airtimes) are whole microseconds at 10 MHz OFDM, so integer time
// keeps event ordering exact.
using SimTime = std::int64_t;

constexpr SimTime kUsPerMs = 1000;
constexpr SimTime kUsPerSec = 1000000;

constexpr SimTime ms_to_us(std::int64_t ms) { return ms * kUsPerMs; }
constexpr SimTime sec_to_us(double s) {
  return static_cast<SimTime>(s * static_cast<double>(kUsPerSec));
}
constexpr double us_to_sec(SimTime t) {
  return static_cast<double>(t) / static_cast<double>(kUsPerSec);
}

}  // namespace bondsim

#endif
