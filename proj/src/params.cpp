#include "bondsim/phy/params.hpp"

#include <cmath>
#include <stdexcept>

namespace bondsim {

const char* channel_name(ChannelId c) {
  return c == ChannelId::Ch180 ? "ch180" : "ch182";
}

const char* msg_type_name(MsgType m) {
  switch (m) {
    case MsgType::Bsm: return "bsm";
    case MsgType::Cpm: return "cpm";
    case MsgType::SpatMap: return "spat_map";
    case MsgType::Wsa: return "wsa";
  }
  return "?";
}

double path_loss_db(double distance_m, const PathLossParams& p) {
  if (distance_m <= 0.0) {
    throw std::invalid_argument("path_loss_db: distance must be positive");
  }
  return p.pl0_db + 10.0 * p.gamma * std::log10(distance_m / p.l0_m);
}

double rx_power_dbm(double tx_x, double tx_y, double rx_x, double rx_y,
                    const RadioConfig& cfg, const PathLossParams& p) {
  const double dx = tx_x - rx_x;
  const double dy = tx_y - rx_y;
  const double d = std::sqrt(dx * dx + dy * dy);
  if (d <= 0.0) {
    throw std::invalid_argument("rx_power_dbm: coincident positions");
  }
  return cfg.tx_power_dbm - path_loss_db(d, p);
}

SimTime frame_duration_us(int payload_bytes, TxWidth width, const McsConfig& mcs) {
  if (payload_bytes <= 0) {
    throw std::invalid_argument("frame_duration_us: payload must be positive");
  }
  const long long bits = 16 + 8LL * payload_bytes + 6;
  const long long per_symbol = (width == TxWidth::Mhz20)
                                   ? 2LL * mcs.bits_per_symbol_10mhz
                                   : mcs.bits_per_symbol_10mhz;
  const long long symbols = (bits + per_symbol - 1) / per_symbol;
  return mcs.preamble_us + symbols * mcs.symbol_us;
}

}  // namespace bondsim
