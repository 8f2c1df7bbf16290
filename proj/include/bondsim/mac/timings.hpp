#ifndef BONDSIM_MAC_TIMINGS_HPP
#define BONDSIM_MAC_TIMINGS_HPP

#include <array>

#include "bondsim/core/time.hpp"

namespace bondsim {

// Interframe spacings at 10 MHz OFDM. EIFS = SIFS + AIFS + lowest-rate ACK
// airtime (188 us total by default) even though all traffic here is
// broadcast; the composition follows the usual EIFS construction.
struct MacTimings {
  SimTime slot_us = 13;
  SimTime sifs_us = 32;
  SimTime aifs_us = 58;  // sifs + 2 slots
  SimTime pifs_us = 45;  // sifs + 1 slot
  SimTime eifs_us = 188;
};

// The four channel access methods under comparison. Vehicles run Edca for
// their safety messages plus one of these for perception traffic; roadside
// units run Edca only.
enum class AccessMethod : int {
  Edca = 0,            // single-channel listen-before-talk
  BondN = 1,           // legacy bonding: PIFS check on the secondary at zero
  BondBd = 2,          // bonding without fallback: suspend on any-channel busy
  BondBdFallback = 3,  // as BondBd, but retreats to the primary mid-countdown
};
constexpr int kNumAccessMethods = 4;

const char* access_method_name(AccessMethod m);
bool parse_access_method(const char* name, AccessMethod& out);

// CW values selectable in standard-compliant mode. Broadcast traffic keeps CW
// constant for the whole run.
constexpr std::array<int, 7> kStandardCwSet = {15, 31, 63, 127, 255, 511, 1023};
bool is_standard_cw(int cw);

}  // namespace bondsim

#endif
