#ifndef BONDSIM_EXPERIMENT_CONFIG_HPP
#define BONDSIM_EXPERIMENT_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bondsim/mac/timings.hpp"
#include "bondsim/metrics/ledger.hpp"
#include "bondsim/phy/params.hpp"
#include "bondsim/scenario/highway.hpp"
#include "bondsim/scenario/traffic.hpp"

namespace bondsim {

// Everything a sweep needs. Each field has the default decided for this
// study and can be overridden by the JSON config file or CLI flags; the
// values in effect are echoed into every CSV row.
struct ExperimentConfig {
  std::vector<AccessMethod> methods{AccessMethod::Edca, AccessMethod::BondN,
                                    AccessMethod::BondBd,
                                    AccessMethod::BondBdFallback};
  std::vector<int> cws{15};
  std::vector<int> vehicle_counts{100};
  ScenarioCase scenario_case = ScenarioCase::Symmetric;
  double duration_s = 60.0;
  double warmup_s = 2.0;
  int replications = 10;
  std::uint64_t base_seed = 1;
  bool research_cw = false;  // lifts the standard CW-set restriction
  bool trace = false;
  bool log_messages = false;

  RadioConfig radio;
  PathLossParams pathloss;
  McsConfig mcs;
  MacTimings timings;
  HighwayConfig highway;
  TrafficProfile traffic;
  SatisfactionThresholds thresholds;
  SimTime mobility_step_us = 100000;

  // Throws std::invalid_argument with a diagnostic on bad combinations.
  void validate() const;
};

// Reads a JSON config file; fields not present keep their defaults.
ExperimentConfig load_config_file(const std::string& path);
void apply_config_json(ExperimentConfig& cfg, const std::string& json_text);

}  // namespace bondsim

#endif
