#include "bondsim/experiment/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "bondsim/core/check.hpp"

namespace bondsim {

std::vector<RunPoint> enumerate_points(const ExperimentConfig& cfg) {
  std::vector<RunPoint> out;
  for (AccessMethod m : cfg.methods) {
    for (int cw : cfg.cws) {
      for (int n : cfg.vehicle_counts) {
        for (int rep = 0; rep < cfg.replications; ++rep) {
          out.push_back(RunPoint{m, cw, n,
                                 cfg.base_seed + static_cast<std::uint64_t>(rep)});
        }
      }
    }
  }
  return out;
}

int worker_count_from_env() {
  if (const char* env = std::getenv("BONDSIM_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<RunResult> run_sweep(const ExperimentConfig& cfg, int workers,
                                 std::ostream* trace_sink) {
  cfg.validate();
  const auto points = enumerate_points(cfg);
  std::vector<RunResult> results(points.size());

  if (workers <= 1 || trace_sink != nullptr || points.size() <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (trace_sink) {
        (*trace_sink) << "# run method=" << access_method_name(points[i].method)
                      << " cw=" << points[i].cw
                      << " vehicles=" << points[i].n_vehicles
                      << " seed=" << points[i].seed << "\n";
      }
      results[i] = run_single(cfg, points[i], trace_sink);
    }
    return results;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      results[i] = run_single(cfg, points[i], nullptr);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(workers, static_cast<int>(points.size()));
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) {
  return v.has_value() ? fmt(*v) : std::string("na");
}

std::string fmt(const std::optional<SimTime>& v) {
  return v.has_value() ? std::to_string(*v) : std::string("na");
}

}  // namespace

std::string results_csv_header() {
  return "method,case,cw,n_vehicles,seed,r_s_m,duration_s,warmup_s,"
         "max_unsatisfied_ratio,unsat_bsm,unsat_cpm,unsat_spat,"
         "plr_bsm,plr_cpm,plr_spat,plr_wsa,"
         "delay_p50_bsm_us,delay_p95_bsm_us,delay_p50_cpm_us,delay_p95_cpm_us,"
         "delay_p50_spat_us,delay_p95_spat_us,delay_p50_wsa_us,delay_p95_wsa_us,"
         "sent_bsm,sent_cpm,sent_spat,sent_wsa,"
         "intended_bsm,intended_cpm,intended_spat,"
         "decoded_bsm,decoded_cpm,decoded_spat,"
         "tx_power_dbm,ed_threshold_dbm,pd_threshold_dbm,decode_snr_db,"
         "noise_floor_dbm,gamma,pl0_db,l0_m,"
         "slot_us,sifs_us,aifs_us,pifs_us,eifs_us,"
         "cpm_rate_hz,delay_percentile,t_plr,"
         "t_delay_bsm_us,t_delay_cpm_us,t_delay_spat_us";
}

std::string result_csv_row(const ExperimentConfig& cfg, const RunResult& r) {
  std::ostringstream os;
  os << access_method_name(r.point.method) << ','
     << scenario_case_name(cfg.scenario_case) << ',' << r.point.cw << ','
     << r.point.n_vehicles << ',' << r.point.seed << ','
     << fmt(cfg.highway.satisfaction_range_m) << ',' << fmt(cfg.duration_s)
     << ',' << fmt(cfg.warmup_s) << ',' << fmt(r.max_unsatisfied_ratio);
  for (const auto& u : r.unsat) os << ',' << fmt(u);
  for (const auto& p : r.plr) os << ',' << fmt(p);
  for (int m = 0; m < kNumMsgTypes; ++m) {
    os << ',' << fmt(r.delay_p50_us[static_cast<std::size_t>(m)]) << ','
       << fmt(r.delay_p95_us[static_cast<std::size_t>(m)]);
  }
  for (auto v : r.sent) os << ',' << v;
  for (int m = 0; m < 3; ++m) os << ',' << r.intended[static_cast<std::size_t>(m)];
  for (int m = 0; m < 3; ++m) os << ',' << r.decoded[static_cast<std::size_t>(m)];
  os << ',' << fmt(cfg.radio.tx_power_dbm) << ','
     << fmt(cfg.radio.ed_threshold_dbm) << ','
     << fmt(cfg.radio.pd_threshold_dbm) << ',' << fmt(cfg.radio.decode_snr_db)
     << ',' << fmt(cfg.radio.noise_floor_dbm) << ',' << fmt(cfg.pathloss.gamma)
     << ',' << fmt(cfg.pathloss.pl0_db) << ',' << fmt(cfg.pathloss.l0_m) << ','
     << cfg.timings.slot_us << ',' << cfg.timings.sifs_us << ','
     << cfg.timings.aifs_us << ',' << cfg.timings.pifs_us << ','
     << cfg.timings.eifs_us << ',' << fmt(cfg.traffic.cpm_rate_hz) << ','
     << fmt(cfg.thresholds.delay_percentile) << ',' << fmt(cfg.thresholds.plr)
     << ',' << cfg.thresholds.delay_bsm_us << ','
     << cfg.thresholds.delay_cpm_us << ',' << cfg.thresholds.delay_spat_us;
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    check(static_cast<bool>(out), "cannot open output file");
    out << content;
    out.flush();
    check(static_cast<bool>(out), "failed writing output file");
  }
  std::filesystem::rename(tmp, path);
}

void write_results_csv(const std::string& path, const ExperimentConfig& cfg,
                       const std::vector<RunResult>& results) {
  std::ostringstream os;
  os << results_csv_header() << '\n';
  for (const auto& r : results) os << result_csv_row(cfg, r) << '\n';
  write_file_atomic(path, os.str());
}

void write_messages_csv(const std::string& path,
                        const std::vector<RunResult>& results) {
  std::ostringstream os;
  os << "method,cw,n_vehicles,seed,msg_id,type,sender,enqueue_us,access_us,"
        "send_us,airtime_us,width_mhz,intended,decoded\n";
  for (const auto& r : results) {
    for (const auto& m : r.messages) {
      os << access_method_name(r.point.method) << ',' << r.point.cw << ','
         << r.point.n_vehicles << ',' << r.point.seed << ',' << m.msg_id << ','
         << msg_type_name(m.type) << ',' << m.sender << ',' << m.enqueue_time
         << ',' << m.access_start << ',' << m.send_time << ',' << m.airtime
         << ',' << static_cast<int>(m.width) << ',' << m.intended << ','
         << m.decoded << '\n';
    }
  }
  write_file_atomic(path, os.str());
}

}  // namespace bondsim
