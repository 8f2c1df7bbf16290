#ifndef BONDSIM_EXPERIMENT_RUNNER_HPP
#define BONDSIM_EXPERIMENT_RUNNER_HPP

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bondsim/experiment/config.hpp"
#include "bondsim/metrics/ledger.hpp"

namespace bondsim {

struct RunPoint {
  AccessMethod method = AccessMethod::Edca;
  int cw = 15;
  int n_vehicles = 0;
  std::uint64_t seed = 1;
};

struct RunResult {
  RunPoint point;
  double max_unsatisfied_ratio = 0.0;
  std::array<std::optional<double>, 3> unsat;  // bsm, cpm, spat
  std::array<std::optional<double>, kNumMsgTypes> plr;
  std::array<std::optional<SimTime>, kNumMsgTypes> delay_p50_us;
  std::array<std::optional<SimTime>, kNumMsgTypes> delay_p95_us;
  std::array<long long, kNumMsgTypes> sent{};
  std::array<long long, kNumMsgTypes> intended{};
  std::array<long long, kNumMsgTypes> decoded{};
  std::vector<MsgRecord> messages;  // only with log_messages
};

// Executes one (method, cw, n_vehicles, seed) point and collects the metrics.
// trace_sink, when given, receives every automaton transition.
RunResult run_single(const ExperimentConfig& cfg, const RunPoint& point,
                     std::ostream* trace_sink = nullptr);

// Topology dump of a point (no simulation): CSV with one station per row.
std::string topology_csv(const ExperimentConfig& cfg, int n_vehicles,
                         std::uint64_t seed);

}  // namespace bondsim

#endif
