#include "bondsim/scenario/highway.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace bondsim {

const char* scenario_case_name(ScenarioCase c) {
  return c == ScenarioCase::Symmetric ? "symmetric" : "asymmetric";
}

bool parse_scenario_case(const char* name, ScenarioCase& out) {
  if (std::strcmp(name, "symmetric") == 0) {
    out = ScenarioCase::Symmetric;
    return true;
  }
  if (std::strcmp(name, "asymmetric") == 0) {
    out = ScenarioCase::Asymmetric;
    return true;
  }
  return false;
}

namespace {

ChannelId primary_for(Side side, ScenarioCase c) {
  if (c == ScenarioCase::Asymmetric) return ChannelId::Ch180;
  return side == Side::A ? ChannelId::Ch182 : ChannelId::Ch180;
}

double lane_center_y(const HighwayConfig& cfg, Side side, int lane) {
  const double side_width = cfg.lanes_per_side * cfg.lane_width_m;
  const double base = side == Side::A ? 0.0 : side_width + cfg.median_width_m;
  return base + lane * cfg.lane_width_m + cfg.lane_width_m / 2.0;
}

double rsu_edge_y(const HighwayConfig& cfg, Side side) {
  const double side_width = cfg.lanes_per_side * cfg.lane_width_m;
  return side == Side::A ? 0.0 : 2.0 * side_width + cfg.median_width_m;
}

}  // namespace

std::vector<StationInfo> build_topology(int n_vehicles,
                                        const HighwayConfig& cfg,
                                        ScenarioCase scenario_case,
                                        RngStream& rng) {
  if (n_vehicles < 0 || n_vehicles % 2 != 0) {
    throw std::invalid_argument(
        "build_topology: vehicle count must be even (equal split per side)");
  }
  std::vector<StationInfo> out;
  out.reserve(static_cast<std::size_t>(n_vehicles) + 16);

  for (int i = 0; i < n_vehicles; ++i) {
    StationInfo v;
    v.id = i;
    v.kind = StationKind::Vehicle;
    v.side = i < n_vehicles / 2 ? Side::A : Side::B;
    v.lane = static_cast<int>(rng.uniform_int(0, cfg.lanes_per_side - 1));
    v.x = rng.uniform_real(0.0, cfg.length_m);
    v.y = lane_center_y(cfg, v.side, v.lane);
    v.speed_mps = rng.uniform_real(cfg.speed_min_mps, cfg.speed_max_mps);
    v.primary = primary_for(v.side, scenario_case);
    out.push_back(v);
  }

  int id = n_vehicles;
  for (Side side : {Side::A, Side::B}) {
    for (double x = 0.0; x < cfg.length_m; x += cfg.rsu_period_m) {
      StationInfo r;
      r.id = id++;
      r.kind = StationKind::Rsu;
      r.side = side;
      r.x = x;
      r.y = rsu_edge_y(cfg, side);
      r.primary = primary_for(side, scenario_case);
      out.push_back(r);
    }
  }
  return out;
}

void advance_mobility(std::vector<StationInfo>& stations,
                      const HighwayConfig& cfg, SimTime dt) {
  if (dt <= 0) throw std::invalid_argument("advance_mobility: dt must be > 0");
  const double dt_s = us_to_sec(dt);
  for (auto& st : stations) {
    if (st.kind != StationKind::Vehicle) continue;
    st.x = std::fmod(st.x + st.speed_mps * dt_s, cfg.length_m);
  }
}

double distance_m(const StationInfo& a, const StationInfo& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

int vehicle_neighbor_count(const std::vector<StationInfo>& stations, int idx,
                           double range_m) {
  const auto& self = stations[static_cast<std::size_t>(idx)];
  int count = 0;
  for (const auto& st : stations) {
    if (st.id == self.id || st.kind != StationKind::Vehicle) continue;
    const double dx = st.x - self.x;
    const double dy = st.y - self.y;
    if (dx * dx + dy * dy <= range_m * range_m) ++count;
  }
  return count;
}

}  // namespace bondsim
