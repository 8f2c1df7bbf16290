#include "bondsim/phy/medium.hpp"

#include <algorithm>
#include <cmath>

#include "bondsim/core/check.hpp"

namespace bondsim {

Medium::Medium(Engine& engine, const RadioConfig& radio,
               const PathLossParams& pl, const McsConfig& mcs)
    : engine_(engine), radio_(radio), pl_(pl), mcs_(mcs) {
  check(radio_.pd_threshold_dbm <= radio_.ed_threshold_dbm,
        "preamble detection threshold must not exceed the ED threshold");
  noise_mw_ = dbm_to_mw(radio_.noise_floor_dbm);
  ed_mw_ = dbm_to_mw(radio_.ed_threshold_dbm);
  pd_mw_ = dbm_to_mw(radio_.pd_threshold_dbm);
  snr_lin_ = db_to_linear(radio_.decode_snr_db);
  split_lin_ = db_to_linear(-3.0);  // 20 MHz power split per half
}

int Medium::add_station(ChannelId primary) {
  StationPhy st;
  st.primary = primary;
  stations_.push_back(st);
  pair_mw_.assign(stations_.size() * stations_.size(), 0.0);
  return static_cast<int>(stations_.size()) - 1;
}

void Medium::set_listener(int station, MediumListener* l) {
  stations_[static_cast<std::size_t>(station)].listener = l;
}

void Medium::set_position(int station, double x, double y) {
  stations_[static_cast<std::size_t>(station)].x = x;
  stations_[static_cast<std::size_t>(station)].y = y;
}

void Medium::refresh_link_budget() {
  const std::size_t n = stations_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = stations_[i].x - stations_[j].x;
      const double dy = stations_[i].y - stations_[j].y;
      // Distances inside the reference distance are clamped to it; the
      // log-distance model is not defined below l0.
      const double d = std::max(std::sqrt(dx * dx + dy * dy), pl_.l0_m);
      const double mw =
          dbm_to_mw(radio_.tx_power_dbm - path_loss_db(d, pl_));
      pair_mw_[i * n + j] = mw;
      pair_mw_[j * n + i] = mw;
    }
  }
}

double Medium::sum_mw(const StationPhy& st, int c) const {
  double s = 0.0;
  for (const auto& k : st.contrib[c]) s += k.mw;
  return s;
}

double Medium::pd_level_mw(const StationPhy& st, int c,
                           std::uint64_t skip_key) const {
  double best = 0.0;
  for (const auto& k : st.contrib[c]) {
    if (k.key != skip_key) best = std::max(best, k.mw);
  }
  return best;
}

bool Medium::compute_busy(const StationPhy& st, int c) const {
  if (st.own_tx[c]) return true;
  if (noise_mw_ + sum_mw(st, c) > ed_mw_) return true;
  if (st.has_lock && !st.lock.broken && c == channel_index(st.primary))
    return true;
  return false;
}

bool Medium::busy(int station, ChannelId ch) const {
  const auto& st = stations_[static_cast<std::size_t>(station)];
  return st.busy_now[channel_index(ch)];
}

bool Medium::transmitting(int station) const {
  return stations_[static_cast<std::size_t>(station)].transmitting;
}

double Medium::energy_mw(int station, ChannelId ch) const {
  const auto& st = stations_[static_cast<std::size_t>(station)];
  return sum_mw(st, channel_index(ch));
}

void Medium::refresh_busy_and_notify() {
  const SimTime now = engine_.now();
  for (auto& st : stations_) {
    const bool b0 = compute_busy(st, 0);
    const bool b1 = compute_busy(st, 1);
    if (b0 != st.busy_now[0] || b1 != st.busy_now[1]) {
      st.busy_now[0] = b0;
      st.busy_now[1] = b1;
      if (st.listener) st.listener->on_channel_state(now, b0, b1);
    }
  }
}

void Medium::update_lock_interference(StationPhy& st,
                                      const FrameTransmission& fr) {
  if (!st.has_lock || st.lock.broken) return;
  for (int c = 0; c < kNumChannels; ++c) {
    if (!fr.occupies(static_cast<ChannelId>(c))) continue;
    double interf = 0.0;
    for (const auto& k : st.contrib[c]) {
      if (k.key != st.lock.key) interf += k.mw;
    }
    st.lock.max_interf_mw[c] = std::max(st.lock.max_interf_mw[c], interf);
  }
}

void Medium::start_frame(const FrameTransmission& frame) {
  const SimTime now = engine_.now();
  check(frame.start == now, "start_frame not at the current instant");
  const std::size_t n = stations_.size();
  const auto sender = static_cast<std::size_t>(frame.sender);
  check(sender < n, "unknown sender");
  StationPhy& tx = stations_[sender];
  check(!tx.transmitting, "sender already on air");

  InFlight fl;
  fl.frame = frame;
  fl.key = next_key_++;
  fl.rx_mw.assign(n, 0.0);

  tx.transmitting = true;
  for (int c = 0; c < kNumChannels; ++c) {
    if (frame.occupies(static_cast<ChannelId>(c))) tx.own_tx[c] = true;
  }
  // A station that starts transmitting stops receiving.
  if (tx.has_lock && !tx.lock.broken) tx.lock.broken = true;

  const double width_factor =
      frame.width == TxWidth::Mhz20 ? split_lin_ : 1.0;

  for (std::size_t j = 0; j < n; ++j) {
    if (j == sender) continue;
    StationPhy& rx = stations_[j];
    const double mw = pair_mw_[sender * n + j] * width_factor;
    fl.rx_mw[j] = mw;

    const int pc = channel_index(rx.primary);
    const bool covers_primary = frame.occupies(rx.primary);

    // A detectable frame arriving inside a preamble ruins synchronisation.
    if (rx.has_lock && !rx.lock.broken && covers_primary && mw >= pd_mw_ &&
        now - rx.lock.frame_start < mcs_.preamble_us) {
      rx.lock.broken = true;
    }

    // Preamble lock: primary coverage, detectable power, receiver not
    // transmitting, and no other detectable frame already on that channel.
    bool establish = covers_primary && mw >= pd_mw_ && !rx.transmitting &&
                     !(rx.has_lock && !rx.lock.broken) &&
                     pd_level_mw(rx, pc, 0) < pd_mw_;
    // A broken lock still means a detectable frame is on the air.
    if (establish && rx.has_lock) establish = false;

    for (int c = 0; c < kNumChannels; ++c) {
      if (frame.occupies(static_cast<ChannelId>(c)))
        rx.contrib[c].push_back({fl.key, mw});
    }

    if (establish) {
      rx.has_lock = true;
      rx.lock = Lock{};
      rx.lock.key = fl.key;
      rx.lock.frame_start = now;
      rx.lock.sig_mw = mw;
    }
    update_lock_interference(rx, frame);
  }

  flights_.push_back(std::move(fl));
  refresh_busy_and_notify();

  const std::uint64_t key = flights_.back().key;
  engine_.schedule(frame.end(), EventKind::TxEnd, [this, key] {
    for (std::size_t i = 0; i < flights_.size(); ++i) {
      if (flights_[i].key == key) {
        end_frame(i);
        return;
      }
    }
    check(false, "in-flight frame vanished");
  });
}

void Medium::end_frame(std::size_t flight_idx) {
  const SimTime now = engine_.now();
  InFlight fl = std::move(flights_[flight_idx]);
  flights_.erase(flights_.begin() + static_cast<std::ptrdiff_t>(flight_idx));
  const std::size_t n = stations_.size();
  const auto sender = static_cast<std::size_t>(fl.frame.sender);

  FrameOutcome outcome;
  outcome.frame = fl.frame;

  // Decode resolution and decode reports, receiver id ascending.
  for (std::size_t j = 0; j < n; ++j) {
    StationPhy& rx = stations_[j];
    if (!rx.has_lock || rx.lock.key != fl.key) continue;
    bool ok = !rx.lock.broken;
    if (ok) {
      for (int c = 0; c < kNumChannels && ok; ++c) {
        if (!fl.frame.occupies(static_cast<ChannelId>(c))) continue;
        const double sinr =
            rx.lock.sig_mw / (noise_mw_ + rx.lock.max_interf_mw[c]);
        ok = sinr >= snr_lin_;
      }
    }
    rx.has_lock = false;
    if (ok) {
      outcome.decoded_by.push_back(static_cast<int>(j));
      if (rx.listener) rx.listener->on_decode_ok(now);
    }
  }

  // Remove this frame's energy everywhere.
  for (std::size_t j = 0; j < n; ++j) {
    StationPhy& rx = stations_[j];
    for (int c = 0; c < kNumChannels; ++c) {
      auto& v = rx.contrib[c];
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].key == fl.key) {
          v.erase(v.begin() + static_cast<std::ptrdiff_t>(k));
          break;
        }
      }
    }
  }

  StationPhy& tx = stations_[sender];
  tx.transmitting = false;
  tx.own_tx[0] = tx.own_tx[1] = false;
  if (tx.listener) tx.listener->on_own_tx_end(now);

  refresh_busy_and_notify();

  if (on_frame_done) on_frame_done(outcome);
  if (tx.listener) tx.listener->on_tx_complete(now);
}

}  // namespace bondsim
