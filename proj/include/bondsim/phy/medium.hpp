#ifndef BONDSIM_PHY_MEDIUM_HPP
#define BONDSIM_PHY_MEDIUM_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "bondsim/core/engine.hpp"
#include "bondsim/phy/frame.hpp"
#include "bondsim/phy/params.hpp"

namespace bondsim {

// Station-side notifications from the medium. Per frame event the order is:
// decode reports, own-transmission end, busy-state batches (station id
// ascending), transmission-complete.
class MediumListener {
 public:
  virtual ~MediumListener() = default;
  virtual void on_channel_state(SimTime now, bool busy180, bool busy182) = 0;
  virtual void on_decode_ok(SimTime now) = 0;
  virtual void on_own_tx_end(SimTime now) = 0;
  virtual void on_tx_complete(SimTime now) = 0;
};

struct FrameOutcome {
  FrameTransmission frame;
  std::vector<int> decoded_by;  // receivers that decoded it, id ascending
};

// Radio propagation and per-receiver channel observation. Tracks the energy
// each receiver sees per channel (exact mW bookkeeping: contributions are
// summed from a list, so the level returns exactly to the noise floor once
// all frames end), preamble locks, and whole-frame SINR for decoding.
//
// Busy at a receiver: own transmission, summed energy above the ED threshold,
// or an unbroken preamble lock on the receiver's primary channel. The
// secondary channel is sensed by energy only.
class Medium {
 public:
  Medium(Engine& engine, const RadioConfig& radio, const PathLossParams& pl,
         const McsConfig& mcs);

  int add_station(ChannelId primary);
  void set_listener(int station, MediumListener* l);
  void set_position(int station, double x, double y);

  // Rebuilds the cached pairwise link budget; call after moving stations.
  void refresh_link_budget();

  // Puts a frame on the air at engine.now() and schedules its end.
  void start_frame(const FrameTransmission& frame);

  bool busy(int station, ChannelId ch) const;
  bool transmitting(int station) const;

  // Summed received signal power (mW, noise excluded) on a channel.
  double energy_mw(int station, ChannelId ch) const;

  const RadioConfig& radio() const { return radio_; }
  const McsConfig& mcs() const { return mcs_; }

  // Sink for resolved frames (metrics). Optional.
  std::function<void(const FrameOutcome&)> on_frame_done;

 private:
  struct Contribution {
    std::uint64_t key;
    double mw;
  };
  struct Lock {
    std::uint64_t key = 0;
    SimTime frame_start = 0;
    bool broken = false;
    double sig_mw = 0.0;                  // per occupied channel (equal split)
    double max_interf_mw[kNumChannels] = {0.0, 0.0};
  };
  struct StationPhy {
    double x = 0, y = 0;
    ChannelId primary = ChannelId::Ch180;
    MediumListener* listener = nullptr;
    std::vector<Contribution> contrib[kNumChannels];
    bool own_tx[kNumChannels] = {false, false};
    bool busy_now[kNumChannels] = {false, false};
    bool has_lock = false;
    Lock lock;
    bool transmitting = false;
  };
  struct InFlight {
    FrameTransmission frame;
    std::uint64_t key = 0;
    std::vector<double> rx_mw;  // per-channel power at each station
  };

  double sum_mw(const StationPhy& st, int c) const;
  double pd_level_mw(const StationPhy& st, int c, std::uint64_t skip_key) const;
  bool compute_busy(const StationPhy& st, int c) const;
  void refresh_busy_and_notify();
  void end_frame(std::size_t flight_idx);
  void update_lock_interference(StationPhy& st, const FrameTransmission& fr);

  Engine& engine_;
  RadioConfig radio_;
  PathLossParams pl_;
  McsConfig mcs_;
  double noise_mw_, ed_mw_, pd_mw_, snr_lin_, split_lin_;

  std::vector<StationPhy> stations_;
  std::vector<double> pair_mw_;  // full-power rx power, stations_.size()^2
  std::vector<InFlight> flights_;
  std::uint64_t next_key_ = 1;
};

}  // namespace bondsim

#endif
