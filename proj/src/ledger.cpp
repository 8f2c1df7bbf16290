#include "bondsim/metrics/ledger.hpp"

#include <algorithm>
#include <cmath>

#include "bondsim/core/check.hpp"

namespace bondsim {

SimTime SatisfactionThresholds::delay_threshold_us(MsgType m) const {
  switch (m) {
    case MsgType::Bsm: return delay_bsm_us;
    case MsgType::Cpm: return delay_cpm_us;
    case MsgType::SpatMap: return delay_spat_us;
    case MsgType::Wsa: return 0;
  }
  return 0;
}

SimTime tx_delay_us(const MsgRecord& r) {
  return (r.send_time - r.enqueue_time) + r.airtime;
}

std::vector<int> intended_receivers(const std::vector<StationInfo>& topo,
                                    int sender, MsgType type, double r_s) {
  std::vector<int> out;
  if (type == MsgType::Wsa) return out;
  const auto& tx = topo[static_cast<std::size_t>(sender)];
  for (const auto& st : topo) {
    if (st.id == sender) continue;
    if (st.side != tx.side) continue;
    if (type == MsgType::SpatMap && st.kind != StationKind::Vehicle) continue;
    const double dx = st.x - tx.x;
    const double dy = st.y - tx.y;
    if (dx * dx + dy * dy <= r_s * r_s) out.push_back(st.id);
  }
  return out;
}

SimTime percentile_us(std::vector<SimTime> samples, double q) {
  check(!samples.empty(), "percentile of an empty sample set");
  check(q > 0.0 && q <= 1.0, "percentile rank out of range");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  auto idx = static_cast<std::size_t>(std::ceil(q * n)) - 1;
  if (idx >= samples.size()) idx = samples.size() - 1;
  return samples[idx];
}

MetricLedger::MetricLedger(int n_stations, SimTime warmup_end, SimTime run_end)
    : n_stations_(n_stations),
      warmup_end_(warmup_end),
      run_end_(run_end),
      intended_of_(static_cast<std::size_t>(n_stations) * kNumMsgTypes, 0),
      received_of_(static_cast<std::size_t>(n_stations) * kNumMsgTypes, 0),
      own_delays_(static_cast<std::size_t>(n_stations) * kNumMsgTypes) {}

void MetricLedger::on_sent(const FrameTransmission& frame,
                           std::vector<int> intended) {
  if (frame.start < warmup_end_ || frame.start > run_end_) return;
  MsgRecord r;
  r.msg_id = frame.msg_id;
  r.type = frame.type;
  r.sender = frame.sender;
  r.width = frame.width;
  r.enqueue_time = frame.enqueue_time;
  r.access_start = frame.access_start;
  r.send_time = frame.start;
  r.airtime = frame.duration;
  r.intended = static_cast<int>(intended.size());
  records_.push_back(r);
  for (int j : intended) ++intended_of_[cell(j, frame.type)];
  pending_.emplace(frame.msg_id, Pending{records_.size() - 1, std::move(intended)});
}

void MetricLedger::on_done(const FrameOutcome& outcome) {
  const auto it = pending_.find(outcome.frame.msg_id);
  if (it == pending_.end()) return;  // sent outside the measurement window
  MsgRecord& rec = records_[it->second.record_idx];
  const auto& intended = it->second.intended;
  int decoded = 0;
  // Both lists are id-ascending.
  auto ii = intended.begin();
  for (int d : outcome.decoded_by) {
    while (ii != intended.end() && *ii < d) ++ii;
    if (ii != intended.end() && *ii == d) {
      ++decoded;
      ++received_of_[cell(d, rec.type)];
      ++ii;
    }
  }
  rec.decoded = decoded;
  own_delays_[cell(rec.sender, rec.type)].push_back(tx_delay_us(rec));
  pending_.erase(it);
}

std::optional<double> MetricLedger::plr(MsgType m) const {
  long long f = 0, s = 0;
  for (const auto& r : records_) {
    if (r.type != m) continue;
    f += r.intended;
    s += r.decoded;
  }
  if (f == 0) return std::nullopt;
  return 1.0 - static_cast<double>(s) / static_cast<double>(f);
}

std::optional<bool> MetricLedger::station_unsatisfied(
    int station, MsgType service, const SatisfactionThresholds& th) const {
  const auto& delays = own_delays_[cell(station, service)];
  const long long intended = intended_of_[cell(station, service)];
  const long long received = received_of_[cell(station, service)];
  if (delays.empty() && intended == 0) return std::nullopt;
  if (!delays.empty()) {
    const SimTime p = percentile_us(delays, th.delay_percentile);
    if (p > th.delay_threshold_us(service)) return true;
  }
  if (intended > 0) {
    const double lost =
        1.0 - static_cast<double>(received) / static_cast<double>(intended);
    if (lost > th.plr) return true;
  }
  return false;
}

std::optional<double> MetricLedger::unsatisfied_ratio(
    MsgType service, const SatisfactionThresholds& th) const {
  int participants = 0, unsatisfied = 0;
  for (int j = 0; j < n_stations_; ++j) {
    const auto u = station_unsatisfied(j, service, th);
    if (!u.has_value()) continue;
    ++participants;
    if (*u) ++unsatisfied;
  }
  if (participants == 0) return std::nullopt;
  return static_cast<double>(unsatisfied) / static_cast<double>(participants);
}

double MetricLedger::max_unsatisfied_ratio(
    const SatisfactionThresholds& th) const {
  double best = 0.0;
  for (MsgType m : {MsgType::Bsm, MsgType::Cpm, MsgType::SpatMap}) {
    const auto r = unsatisfied_ratio(m, th);
    if (r.has_value()) best = std::max(best, *r);
  }
  return best;
}

std::vector<SimTime> MetricLedger::delays_us(MsgType m) const {
  std::vector<SimTime> out;
  for (const auto& r : records_) {
    if (r.type == m) out.push_back(tx_delay_us(r));
  }
  return out;
}

long long MetricLedger::sent_count(MsgType m) const {
  long long n = 0;
  for (const auto& r : records_)
    if (r.type == m) ++n;
  return n;
}

long long MetricLedger::intended_sum(MsgType m) const {
  long long n = 0;
  for (const auto& r : records_)
    if (r.type == m) n += r.intended;
  return n;
}

long long MetricLedger::decoded_sum(MsgType m) const {
  long long n = 0;
  for (const auto& r : records_)
    if (r.type == m) n += r.decoded;
  return n;
}

}  // namespace bondsim
