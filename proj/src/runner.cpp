#include "bondsim/experiment/runner.hpp"

#include <functional>
#include <memory>
#include <sstream>

#include "bondsim/core/check.hpp"
#include "bondsim/mac/station.hpp"
#include "bondsim/phy/medium.hpp"
#include "bondsim/scenario/traffic.hpp"

namespace bondsim {

RunResult run_single(const ExperimentConfig& cfg, const RunPoint& point,
                     std::ostream* trace_sink) {
  Engine engine;

  RngStream topo_rng(point.seed, 0);
  auto topo =
      build_topology(point.n_vehicles, cfg.highway, cfg.scenario_case, topo_rng);
  const int n_stations = static_cast<int>(topo.size());

  Medium medium(engine, cfg.radio, cfg.pathloss, cfg.mcs);
  for (const auto& st : topo) {
    const int id = medium.add_station(st.primary);
    check(id == st.id, "station id mismatch");
    medium.set_position(id, st.x, st.y);
  }
  medium.refresh_link_budget();

  std::vector<std::unique_ptr<RngStream>> rngs;
  std::vector<std::unique_ptr<Station>> stations;
  rngs.reserve(static_cast<std::size_t>(n_stations));
  stations.reserve(static_cast<std::size_t>(n_stations));
  for (const auto& st : topo) {
    rngs.push_back(std::make_unique<RngStream>(
        point.seed, static_cast<std::uint64_t>(st.id) + 1));
    stations.push_back(std::make_unique<Station>(
        engine, medium, st.id, st.primary, *rngs.back(), cfg.timings, point.cw,
        point.method, st.kind == StationKind::Vehicle));
    medium.set_listener(st.id, stations.back().get());
    if (trace_sink) stations.back()->set_trace(trace_sink);
  }

  const SimTime run_end = sec_to_us(cfg.duration_s);
  const SimTime warmup_end = sec_to_us(cfg.warmup_s);
  MetricLedger ledger(n_stations, warmup_end, run_end);

  for (auto& st : stations) {
    st->on_frame_sent = [&ledger, &topo, &cfg](const FrameTransmission& fr) {
      ledger.on_sent(fr, intended_receivers(topo, fr.sender, fr.type,
                                            cfg.highway.satisfaction_range_m));
    };
  }
  medium.on_frame_done = [&ledger](const FrameOutcome& o) { ledger.on_done(o); };

  TrafficGenerator gen(engine, topo, cfg.highway, cfg.traffic,
                       cfg.scenario_case, run_end,
                       [&stations, &engine](int sta, MsgType t, int bytes,
                                            std::uint64_t id) {
                         stations[static_cast<std::size_t>(sta)]->enqueue(
                             t, bytes, id, engine.now());
                       });
  for (int i = 0; i < n_stations; ++i) gen.install(i, *rngs[static_cast<std::size_t>(i)]);

  std::function<void()> mobility_step = [&] {
    advance_mobility(topo, cfg.highway, cfg.mobility_step_us);
    for (const auto& st : topo) {
      if (st.kind == StationKind::Vehicle)
        medium.set_position(st.id, st.x, st.y);
    }
    medium.refresh_link_budget();
    const SimTime next = engine.now() + cfg.mobility_step_us;
    if (next <= run_end)
      engine.schedule(next, EventKind::MobilityStep, mobility_step);
  };
  if (cfg.mobility_step_us <= run_end) {
    engine.schedule(cfg.mobility_step_us, EventKind::MobilityStep,
                    mobility_step);
  }

  // Grace period drains frames already on the air at run_end; nothing sent
  // after run_end enters the ledger.
  const SimTime grace = 10 * kUsPerMs;
  engine.run_until(run_end + grace);

  RunResult res;
  res.point = point;
  res.max_unsatisfied_ratio = ledger.max_unsatisfied_ratio(cfg.thresholds);
  const MsgType services[3] = {MsgType::Bsm, MsgType::Cpm, MsgType::SpatMap};
  for (int i = 0; i < 3; ++i)
    res.unsat[static_cast<std::size_t>(i)] =
        ledger.unsatisfied_ratio(services[i], cfg.thresholds);
  for (int m = 0; m < kNumMsgTypes; ++m) {
    const auto type = static_cast<MsgType>(m);
    res.plr[static_cast<std::size_t>(m)] = ledger.plr(type);
    auto delays = ledger.delays_us(type);
    if (!delays.empty()) {
      res.delay_p50_us[static_cast<std::size_t>(m)] = percentile_us(delays, 0.50);
      res.delay_p95_us[static_cast<std::size_t>(m)] = percentile_us(delays, 0.95);
    }
    res.sent[static_cast<std::size_t>(m)] = ledger.sent_count(type);
    res.intended[static_cast<std::size_t>(m)] = ledger.intended_sum(type);
    res.decoded[static_cast<std::size_t>(m)] = ledger.decoded_sum(type);
  }
  if (cfg.log_messages) res.messages = ledger.records();
  return res;
}

std::string topology_csv(const ExperimentConfig& cfg, int n_vehicles,
                         std::uint64_t seed) {
  RngStream topo_rng(seed, 0);
  const auto topo =
      build_topology(n_vehicles, cfg.highway, cfg.scenario_case, topo_rng);
  std::ostringstream os;
  os << "id,kind,side,lane,x_m,y_m,speed_mps,primary\n";
  for (const auto& st : topo) {
    os << st.id << ','
       << (st.kind == StationKind::Vehicle ? "vehicle" : "rsu") << ','
       << (st.side == Side::A ? 'A' : 'B') << ',' << st.lane << ',' << st.x
       << ',' << st.y << ',' << st.speed_mps << ','
       << channel_name(st.primary) << '\n';
  }
  return os.str();
}

}  // namespace bondsim
