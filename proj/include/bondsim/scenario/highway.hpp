#ifndef BONDSIM_SCENARIO_HIGHWAY_HPP
#define BONDSIM_SCENARIO_HIGHWAY_HPP

#include <vector>

#include "bondsim/core/rng.hpp"
#include "bondsim/core/time.hpp"
#include "bondsim/phy/frame.hpp"

namespace bondsim {

enum class StationKind { Vehicle, Rsu };
enum class Side : int { A = 0, B = 1 };
enum class ScenarioCase { Symmetric, Asymmetric };

const char* scenario_case_name(ScenarioCase c);
bool parse_scenario_case(const char* name, ScenarioCase& out);

struct HighwayConfig {
  double length_m = 1000.0;
  int lanes_per_side = 4;
  double lane_width_m = 4.0;
  double median_width_m = 25.0;
  double rsu_period_m = 300.0;
  double sensor_range_m = 150.0;        // R, sizes the CPM payload
  double satisfaction_range_m = 150.0;  // R_s, scopes the PLR receiver set
  double speed_min_mps = 10.0;
  double speed_max_mps = 30.0;
};

struct StationInfo {
  int id = 0;
  StationKind kind = StationKind::Vehicle;
  Side side = Side::A;
  int lane = -1;  // -1 for RSUs
  double x = 0.0;
  double y = 0.0;
  double speed_mps = 0.0;
  ChannelId primary = ChannelId::Ch180;
};

// Vehicles split evenly across the two sides with random lane, position and
// speed; RSUs sit at every rsu_period_m along both road edges. In the
// symmetric case side A uses channel 182 as primary and side B channel 180;
// in the asymmetric case every station uses channel 180.
std::vector<StationInfo> build_topology(int n_vehicles, const HighwayConfig& cfg,
                                        ScenarioCase scenario_case,
                                        RngStream& rng);

// Wrap-around drive along the road; lanes, sides and speeds never change.
void advance_mobility(std::vector<StationInfo>& stations,
                      const HighwayConfig& cfg, SimTime dt);

double distance_m(const StationInfo& a, const StationInfo& b);

// Other vehicles (either side) within `range_m`, boundary inclusive.
int vehicle_neighbor_count(const std::vector<StationInfo>& stations, int idx,
                           double range_m);

}  // namespace bondsim

#endif
