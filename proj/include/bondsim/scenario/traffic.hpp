#ifndef BONDSIM_SCENARIO_TRAFFIC_HPP
#define BONDSIM_SCENARIO_TRAFFIC_HPP

#include <functional>
#include <vector>

#include "bondsim/core/engine.hpp"
#include "bondsim/core/rng.hpp"
#include "bondsim/scenario/highway.hpp"

namespace bondsim {

struct TrafficProfile {
  double bsm_rate_hz = 10.0;
  int bsm_bytes = 250;
  // The paper never fixes the CPM rate; 10 Hz fits the 10 ms CPM deadline
  // regime and is configurable.
  double cpm_rate_hz = 10.0;
  int cpm_base_bytes = 250;
  int cpm_per_neighbor_bytes = 30;
  double spat_rate_hz = 10.0;
  int spat_bytes = 120;
  double map_rate_hz = 1.0;     // MAP rides in the SPaT frame at these instants
  int spat_map_bytes = 1200;
  double wsa_rate_hz = 1.0;     // symmetric case only
  int wsa_bytes = 100;
  bool enable_bsm = true;
  bool enable_cpm = true;
  bool enable_spat = true;
  bool enable_wsa = true;
};

// CPM payload at generation time: base size plus one increment per vehicle
// currently inside the sensor range.
int cpm_size_bytes(const std::vector<StationInfo>& stations, int sender,
                   double sensor_range_m, const TrafficProfile& profile);

// Schedules periodic message generation for every station with a per-station
// random phase, stopping at gen_end. Vehicles produce BSMs and CPMs; RSUs
// produce the SPaT stream (every spat/map-th frame carries the combined
// SPaT+MAP payload) plus WSAs in the symmetric case.
class TrafficGenerator {
 public:
  using Sink = std::function<void(int station, MsgType, int payload_bytes,
                                  std::uint64_t msg_id)>;

  TrafficGenerator(Engine& engine, const std::vector<StationInfo>& stations,
                   const HighwayConfig& highway, const TrafficProfile& profile,
                   ScenarioCase scenario_case, SimTime gen_end, Sink sink);

  // Draws this station's phases and schedules its first instances. Call once
  // per station, in station order, with that station's own rng stream.
  void install(int station, RngStream& rng);

 private:
  void schedule_periodic(int station, MsgType type, SimTime first,
                         SimTime period, long long index);
  int payload_for(int station, MsgType type, long long index) const;

  Engine& engine_;
  const std::vector<StationInfo>& stations_;
  HighwayConfig highway_;
  TrafficProfile profile_;
  ScenarioCase case_;
  SimTime gen_end_;
  Sink sink_;
  std::uint64_t next_msg_id_ = 0;
  long long spat_combined_every_ = 10;
};

}  // namespace bondsim

#endif
