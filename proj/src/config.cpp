#include "bondsim/experiment/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bondsim {

void ExperimentConfig::validate() const {
  if (methods.empty()) throw std::invalid_argument("config: no methods selected");
  if (cws.empty()) throw std::invalid_argument("config: no CW values selected");
  if (vehicle_counts.empty())
    throw std::invalid_argument("config: no vehicle counts selected");
  if (!research_cw) {
    for (int cw : cws) {
      if (!is_standard_cw(cw)) {
        std::ostringstream os;
        os << "config: CW=" << cw
           << " is outside the standard set {15, 31, 63, 127, 255, 511, 1023};"
              " pass --research-cw to allow it";
        throw std::invalid_argument(os.str());
      }
    }
  } else {
    for (int cw : cws) {
      if (cw < 0) throw std::invalid_argument("config: CW must be >= 0");
    }
  }
  for (int n : vehicle_counts) {
    if (n < 0 || n % 2 != 0) {
      throw std::invalid_argument(
          "config: vehicle counts must be even and non-negative");
    }
  }
  if (replications < 1)
    throw std::invalid_argument("config: replications must be >= 1");
  if (duration_s <= 0) throw std::invalid_argument("config: duration must be > 0");
  if (warmup_s < 0 || warmup_s >= duration_s)
    throw std::invalid_argument("config: warmup must be in [0, duration)");
  if (radio.pd_threshold_dbm > radio.ed_threshold_dbm)
    throw std::invalid_argument("config: pd threshold above ed threshold");
  if (thresholds.delay_percentile <= 0.0 || thresholds.delay_percentile > 1.0)
    throw std::invalid_argument("config: delay percentile must be in (0, 1]");
}

namespace {

using nlohmann::json;

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void parse_methods(const json& j, std::vector<AccessMethod>& out) {
  if (!j.contains("methods")) return;
  out.clear();
  for (const auto& name : j.at("methods")) {
    AccessMethod m;
    if (!parse_access_method(name.get<std::string>().c_str(), m)) {
      throw std::invalid_argument("config: unknown method " +
                                  name.get<std::string>());
    }
    out.push_back(m);
  }
}

}  // namespace

void apply_config_json(ExperimentConfig& cfg, const std::string& json_text) {
  const json j = json::parse(json_text);

  parse_methods(j, cfg.methods);
  maybe(j, "cws", cfg.cws);
  maybe(j, "vehicle_counts", cfg.vehicle_counts);
  if (j.contains("case")) {
    ScenarioCase c;
    if (!parse_scenario_case(j.at("case").get<std::string>().c_str(), c)) {
      throw std::invalid_argument("config: unknown case " +
                                  j.at("case").get<std::string>());
    }
    cfg.scenario_case = c;
  }
  maybe(j, "duration_s", cfg.duration_s);
  maybe(j, "warmup_s", cfg.warmup_s);
  maybe(j, "replications", cfg.replications);
  maybe(j, "base_seed", cfg.base_seed);
  maybe(j, "research_cw", cfg.research_cw);
  maybe(j, "log_messages", cfg.log_messages);
  maybe(j, "mobility_step_us", cfg.mobility_step_us);

  if (j.contains("radio")) {
    const auto& r = j.at("radio");
    maybe(r, "tx_power_dbm", cfg.radio.tx_power_dbm);
    maybe(r, "ed_threshold_dbm", cfg.radio.ed_threshold_dbm);
    maybe(r, "pd_threshold_dbm", cfg.radio.pd_threshold_dbm);
    maybe(r, "decode_snr_db", cfg.radio.decode_snr_db);
    maybe(r, "noise_floor_dbm", cfg.radio.noise_floor_dbm);
  }
  if (j.contains("pathloss")) {
    const auto& p = j.at("pathloss");
    maybe(p, "gamma", cfg.pathloss.gamma);
    maybe(p, "pl0_db", cfg.pathloss.pl0_db);
    maybe(p, "l0_m", cfg.pathloss.l0_m);
  }
  if (j.contains("mcs")) {
    const auto& m = j.at("mcs");
    maybe(m, "bits_per_symbol_10mhz", cfg.mcs.bits_per_symbol_10mhz);
    maybe(m, "symbol_us", cfg.mcs.symbol_us);
    maybe(m, "preamble_us", cfg.mcs.preamble_us);
  }
  if (j.contains("timings")) {
    const auto& t = j.at("timings");
    maybe(t, "slot_us", cfg.timings.slot_us);
    maybe(t, "sifs_us", cfg.timings.sifs_us);
    maybe(t, "aifs_us", cfg.timings.aifs_us);
    maybe(t, "pifs_us", cfg.timings.pifs_us);
    maybe(t, "eifs_us", cfg.timings.eifs_us);
  }
  if (j.contains("highway")) {
    const auto& h = j.at("highway");
    maybe(h, "length_m", cfg.highway.length_m);
    maybe(h, "lanes_per_side", cfg.highway.lanes_per_side);
    maybe(h, "lane_width_m", cfg.highway.lane_width_m);
    maybe(h, "median_width_m", cfg.highway.median_width_m);
    maybe(h, "rsu_period_m", cfg.highway.rsu_period_m);
    maybe(h, "sensor_range_m", cfg.highway.sensor_range_m);
    maybe(h, "satisfaction_range_m", cfg.highway.satisfaction_range_m);
    maybe(h, "speed_min_mps", cfg.highway.speed_min_mps);
    maybe(h, "speed_max_mps", cfg.highway.speed_max_mps);
  }
  if (j.contains("traffic")) {
    const auto& t = j.at("traffic");
    maybe(t, "bsm_rate_hz", cfg.traffic.bsm_rate_hz);
    maybe(t, "bsm_bytes", cfg.traffic.bsm_bytes);
    maybe(t, "cpm_rate_hz", cfg.traffic.cpm_rate_hz);
    maybe(t, "cpm_base_bytes", cfg.traffic.cpm_base_bytes);
    maybe(t, "cpm_per_neighbor_bytes", cfg.traffic.cpm_per_neighbor_bytes);
    maybe(t, "spat_rate_hz", cfg.traffic.spat_rate_hz);
    maybe(t, "spat_bytes", cfg.traffic.spat_bytes);
    maybe(t, "map_rate_hz", cfg.traffic.map_rate_hz);
    maybe(t, "spat_map_bytes", cfg.traffic.spat_map_bytes);
    maybe(t, "wsa_rate_hz", cfg.traffic.wsa_rate_hz);
    maybe(t, "wsa_bytes", cfg.traffic.wsa_bytes);
    maybe(t, "enable_bsm", cfg.traffic.enable_bsm);
    maybe(t, "enable_cpm", cfg.traffic.enable_cpm);
    maybe(t, "enable_spat", cfg.traffic.enable_spat);
    maybe(t, "enable_wsa", cfg.traffic.enable_wsa);
  }
  if (j.contains("thresholds")) {
    const auto& t = j.at("thresholds");
    maybe(t, "delay_bsm_us", cfg.thresholds.delay_bsm_us);
    maybe(t, "delay_cpm_us", cfg.thresholds.delay_cpm_us);
    maybe(t, "delay_spat_us", cfg.thresholds.delay_spat_us);
    maybe(t, "plr", cfg.thresholds.plr);
    maybe(t, "delay_percentile", cfg.thresholds.delay_percentile);
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg;
  apply_config_json(cfg, buf.str());
  return cfg;
}

}  // namespace bondsim
