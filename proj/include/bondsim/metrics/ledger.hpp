#ifndef BONDSIM_METRICS_LEDGER_HPP
#define BONDSIM_METRICS_LEDGER_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bondsim/core/time.hpp"
#include "bondsim/phy/frame.hpp"
#include "bondsim/phy/medium.hpp"
#include "bondsim/scenario/highway.hpp"

namespace bondsim {

// Per-service satisfaction thresholds. A station is unsatisfied with a
// service when the chosen percentile of its own transmission delays exceeds
// T_d or its per-receiver loss ratio exceeds T_plr.
struct SatisfactionThresholds {
  SimTime delay_bsm_us = 100 * kUsPerMs;
  SimTime delay_cpm_us = 10 * kUsPerMs;
  SimTime delay_spat_us = 100 * kUsPerMs;
  double plr = 0.10;
  double delay_percentile = 0.95;  // nearest-rank; 1.0 gives the maximum

  SimTime delay_threshold_us(MsgType m) const;
};

// One transmitted message with its frozen intended-receiver outcome.
struct MsgRecord {
  std::uint64_t msg_id = 0;
  MsgType type = MsgType::Bsm;
  int sender = -1;
  TxWidth width = TxWidth::Mhz10;
  SimTime enqueue_time = 0;
  SimTime access_start = 0;
  SimTime send_time = 0;
  SimTime airtime = 0;
  int intended = 0;  // |F_j|
  int decoded = 0;   // |S_j|
};

// Delay of one completed transmission: queue wait + backoff + airtime.
SimTime tx_delay_us(const MsgRecord& r);

// Intended receivers of a message: same-side stations within the
// satisfaction range of the sender at send time (boundary inclusive);
// SPaT(+MAP) counts vehicles only. WSA load is carried but has no intended
// set. Returns ids in ascending order.
std::vector<int> intended_receivers(const std::vector<StationInfo>& topo,
                                    int sender, MsgType type, double r_s);

// Nearest-rank percentile of a sample set (q in (0, 1]).
SimTime percentile_us(std::vector<SimTime> samples, double q);

// Accumulates transmission/reception records for one run, ignoring anything
// sent outside the [warmup_end, run_end] measurement window.
class MetricLedger {
 public:
  MetricLedger(int n_stations, SimTime warmup_end, SimTime run_end);

  // Called when a frame goes on air; freezes the intended set.
  void on_sent(const FrameTransmission& frame, std::vector<int> intended);

  // Called when the frame resolves; matches the pending sent record.
  void on_done(const FrameOutcome& outcome);

  // Eq.-style loss ratio per type: 1 - sum(S)/sum(F); nullopt when no
  // intended receivers were recorded.
  std::optional<double> plr(MsgType m) const;

  // Per-station satisfaction for a service; nullopt for stations with no
  // data on that service.
  std::optional<bool> station_unsatisfied(int station, MsgType service,
                                          const SatisfactionThresholds& th) const;

  // Fraction of participating stations unsatisfied with the service; nullopt
  // when nobody participates.
  std::optional<double> unsatisfied_ratio(MsgType service,
                                          const SatisfactionThresholds& th) const;

  // Max over the BSM, CPM and SPaT+MAP delivery services (WSA excluded).
  double max_unsatisfied_ratio(const SatisfactionThresholds& th) const;

  // All completed records inside the measurement window.
  const std::vector<MsgRecord>& records() const { return records_; }

  std::vector<SimTime> delays_us(MsgType m) const;
  long long sent_count(MsgType m) const;
  long long intended_sum(MsgType m) const;
  long long decoded_sum(MsgType m) const;

 private:
  struct Pending {
    std::size_t record_idx;
    std::vector<int> intended;
  };

  int n_stations_;
  SimTime warmup_end_, run_end_;
  std::vector<MsgRecord> records_;
  std::unordered_map<std::uint64_t, Pending> pending_;
  // Per station x type tallies.
  std::vector<long long> intended_of_;
  std::vector<long long> received_of_;
  std::vector<std::vector<SimTime>> own_delays_;

  std::size_t cell(int station, MsgType m) const {
    return static_cast<std::size_t>(station) * kNumMsgTypes +
           static_cast<std::size_t>(m);
  }
};

}  // namespace bondsim

#endif
