#ifndef BONDSIM_PHY_PARAMS_HPP
#define BONDSIM_PHY_PARAMS_HPP

#include <cmath>

#include "bondsim/core/time.hpp"
#include "bondsim/phy/frame.hpp"

namespace bondsim {

// Log-distance path loss: PL(l) = PL(l0) + 10*gamma*log10(l/l0).
struct PathLossParams {
  double gamma = 2.83;   // path-loss exponent
  double pl0_db = 44.0;  // reference loss at l0
  double l0_m = 1.0;     // reference distance
};

// Receiver/transmitter radio parameters per 10 MHz channel. The standard does
// not fix ED/PD/decode thresholds for this setup; these defaults are
// conventional values and every one of them is configurable.
struct RadioConfig {
  double tx_power_dbm = 23.0;
  double ed_threshold_dbm = -65.0;  // energy detection (any channel)
  double pd_threshold_dbm = -85.0;  // preamble detection (primary channel)
  double decode_snr_db = 8.0;       // whole-frame SINR threshold for MCS-1
  double noise_floor_dbm = -95.0;   // per 10 MHz
};

// MCS-1 airtime model: BPSK rate-3/4 at 10 MHz (4.5 Mb/s), i.e. 36 data bits
// per 8 us OFDM symbol. A 20 MHz frame carries twice the bits per symbol; the
// 40 us preamble+header is duplicated per 10 MHz half and does not shrink.
struct McsConfig {
  int bits_per_symbol_10mhz = 36;
  SimTime symbol_us = 8;
  SimTime preamble_us = 40;
};

double path_loss_db(double distance_m, const PathLossParams& p);

// Link budget between two positions; throws on coincident endpoints.
double rx_power_dbm(double tx_x, double tx_y, double rx_x, double rx_y,
                    const RadioConfig& cfg, const PathLossParams& p);

// Airtime of a frame: preamble + ceil((16 + 8*payload + 6) / bits_per_symbol)
// symbols. Service and tail bits follow the usual OFDM PPDU accounting.
SimTime frame_duration_us(int payload_bytes, TxWidth width, const McsConfig& mcs);

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace bondsim

#endif
