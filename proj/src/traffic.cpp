#include "bondsim/scenario/traffic.hpp"

#include <cmath>

#include "bondsim/core/check.hpp"

namespace bondsim {

int cpm_size_bytes(const std::vector<StationInfo>& stations, int sender,
                   double sensor_range_m, const TrafficProfile& profile) {
  return profile.cpm_base_bytes +
         profile.cpm_per_neighbor_bytes *
             vehicle_neighbor_count(stations, sender, sensor_range_m);
}

namespace {

SimTime period_us_from_rate(double rate_hz) {
  check(rate_hz > 0.0, "generation rate must be positive");
  return static_cast<SimTime>(std::llround(1e6 / rate_hz));
}

}  // namespace

TrafficGenerator::TrafficGenerator(Engine& engine,
                                   const std::vector<StationInfo>& stations,
                                   const HighwayConfig& highway,
                                   const TrafficProfile& profile,
                                   ScenarioCase scenario_case, SimTime gen_end,
                                   Sink sink)
    : engine_(engine),
      stations_(stations),
      highway_(highway),
      profile_(profile),
      case_(scenario_case),
      gen_end_(gen_end),
      sink_(std::move(sink)) {
  if (profile_.enable_spat) {
    spat_combined_every_ = std::max<long long>(
        1, std::llround(profile_.spat_rate_hz / profile_.map_rate_hz));
  }
}

int TrafficGenerator::payload_for(int station, MsgType type,
                                  long long index) const {
  switch (type) {
    case MsgType::Bsm:
      return profile_.bsm_bytes;
    case MsgType::Cpm:
      return cpm_size_bytes(stations_, station, highway_.sensor_range_m,
                            profile_);
    case MsgType::SpatMap:
      return index % spat_combined_every_ == 0 ? profile_.spat_map_bytes
                                               : profile_.spat_bytes;
    case MsgType::Wsa:
      return profile_.wsa_bytes;
  }
  return 0;
}

void TrafficGenerator::schedule_periodic(int station, MsgType type,
                                         SimTime first, SimTime period,
                                         long long index) {
  if (first >= gen_end_) return;
  engine_.schedule(first, EventKind::MessageGeneration,
                   [this, station, type, period, index] {
                     const std::uint64_t id = next_msg_id_++;
                     sink_(station, type, payload_for(station, type, index), id);
                     schedule_periodic(station, type, engine_.now() + period,
                                       period, index + 1);
                   });
}

void TrafficGenerator::install(int station, RngStream& rng) {
  const StationInfo& st = stations_[static_cast<std::size_t>(station)];
  if (st.kind == StationKind::Vehicle) {
    if (profile_.enable_bsm) {
      const SimTime period = period_us_from_rate(profile_.bsm_rate_hz);
      const SimTime phase = static_cast<SimTime>(rng.uniform_below(
          static_cast<std::uint64_t>(period)));
      schedule_periodic(station, MsgType::Bsm, phase, period, 0);
    }
    if (profile_.enable_cpm) {
      const SimTime period = period_us_from_rate(profile_.cpm_rate_hz);
      const SimTime phase = static_cast<SimTime>(rng.uniform_below(
          static_cast<std::uint64_t>(period)));
      schedule_periodic(station, MsgType::Cpm, phase, period, 0);
    }
  } else {
    if (profile_.enable_spat) {
      const SimTime period = period_us_from_rate(profile_.spat_rate_hz);
      const SimTime phase = static_cast<SimTime>(rng.uniform_below(
          static_cast<std::uint64_t>(period)));
      schedule_periodic(station, MsgType::SpatMap, phase, period, 0);
    }
    if (profile_.enable_wsa && case_ == ScenarioCase::Symmetric) {
      const SimTime period = period_us_from_rate(profile_.wsa_rate_hz);
      const SimTime phase = static_cast<SimTime>(rng.uniform_below(
          static_cast<std::uint64_t>(period)));
      schedule_periodic(station, MsgType::Wsa, phase, period, 0);
    }
  }
}

}  // namespace bondsim
