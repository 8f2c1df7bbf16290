#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bondsim/experiment/config.hpp"
#include "bondsim/experiment/plotdata.hpp"
#include "bondsim/experiment/sweep.hpp"

namespace {

using namespace bondsim;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<AccessMethod> parse_methods_flag(const std::string& flag) {
  std::vector<AccessMethod> out;
  if (flag == "all") {
    for (int i = 0; i < kNumAccessMethods; ++i)
      out.push_back(static_cast<AccessMethod>(i));
    return out;
  }
  for (const auto& name : split_list(flag)) {
    AccessMethod m;
    if (!parse_access_method(name.c_str(), m)) {
      throw CLI::ValidationError(
          "--method", "unknown method '" + name +
                          "' (edca, bond_n, bond_bd, bond_bd_fallback, all)");
    }
    out.push_back(m);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& flag, const char* what) {
  std::vector<int> out;
  for (const auto& tok : split_list(flag)) {
    try {
      out.push_back(std::stoi(tok));
    } catch (...) {
      throw CLI::ValidationError(what, "bad integer '" + tok + "'");
    }
  }
  return out;
}

int cmd_run(const std::string& config_path, const std::string& method_flag,
            const std::string& cw_flag, const std::string& vehicles_flag,
            const std::string& case_flag, double duration, int seeds,
            std::uint64_t base_seed, const std::string& out_path,
            bool research_cw, bool trace, bool log_messages) {
  ExperimentConfig cfg;
  if (!config_path.empty()) cfg = load_config_file(config_path);
  if (!method_flag.empty()) cfg.methods = parse_methods_flag(method_flag);
  if (!cw_flag.empty()) cfg.cws = parse_int_list(cw_flag, "--cw");
  if (!vehicles_flag.empty())
    cfg.vehicle_counts = parse_int_list(vehicles_flag, "--vehicles");
  if (!case_flag.empty()) {
    ScenarioCase c;
    if (!parse_scenario_case(case_flag.c_str(), c)) {
      std::cerr << "error: unknown case '" << case_flag
                << "' (symmetric|asymmetric)\n";
      return 2;
    }
    cfg.scenario_case = c;
  }
  if (duration > 0) cfg.duration_s = duration;
  if (seeds > 0) cfg.replications = seeds;
  if (base_seed != 0) cfg.base_seed = base_seed;
  cfg.research_cw = cfg.research_cw || research_cw;
  cfg.trace = cfg.trace || trace;
  cfg.log_messages = cfg.log_messages || log_messages;

  try {
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::ofstream trace_file;
  std::ostream* trace_sink = nullptr;
  if (cfg.trace) {
    trace_file.open(out_path + ".trace");
    if (!trace_file) {
      std::cerr << "error: cannot open trace file " << out_path << ".trace\n";
      return 2;
    }
    trace_sink = &trace_file;
  }

  const int workers = worker_count_from_env();
  const auto results = run_sweep(cfg, workers, trace_sink);
  write_results_csv(out_path, cfg, results);
  if (cfg.log_messages) write_messages_csv(out_path + ".messages.csv", results);
  std::cerr << "wrote " << results.size() << " rows to " << out_path << "\n";
  return 0;
}

int cmd_plotdata(const std::string& in_path, const std::string& figure_flag,
                 const std::string& out_path) {
  Figure fig;
  if (!parse_figure(figure_flag, fig)) {
    std::cerr << "error: unknown figure '" << figure_flag
              << "' (fig2|fig3|fig4|fig5)\n";
    return 2;
  }
  try {
    const auto rows = read_results_csv(in_path);
    const auto points = make_plotdata(rows, fig);
    const std::string csv = plotdata_csv(points);
    if (out_path.empty() || out_path == "-") {
      std::cout << csv;
    } else {
      write_file_atomic(out_path, csv);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_dump_topology(const std::string& config_path, int vehicles,
                      const std::string& case_flag, std::uint64_t seed,
                      const std::string& out_path) {
  ExperimentConfig cfg;
  if (!config_path.empty()) cfg = load_config_file(config_path);
  if (!case_flag.empty()) {
    ScenarioCase c;
    if (!parse_scenario_case(case_flag.c_str(), c)) {
      std::cerr << "error: unknown case '" << case_flag << "'\n";
      return 2;
    }
    cfg.scenario_case = c;
  }
  try {
    const std::string csv = topology_csv(cfg, vehicles, seed);
    if (out_path.empty() || out_path == "-") {
      std::cout << csv;
    } else {
      write_file_atomic(out_path, csv);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Discrete-event simulator of broadcast channel access over two "
      "adjacent 10 MHz vehicular channels (EDCA and three channel-bonding "
      "techniques)"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Execute a sweep and write a CSV");
  std::string config_path, method_flag, cw_flag, vehicles_flag, case_flag;
  std::string out_path = "results.csv";
  double duration = 0;
  int seeds = 0;
  std::uint64_t base_seed = 0;
  bool research_cw = false, trace = false, log_messages = false;
  run->add_option("--config", config_path, "JSON config file");
  run->add_option("--method", method_flag,
                  "Access method(s): edca, bond_n, bond_bd, bond_bd_fallback, "
                  "all, or a comma list");
  run->add_option("--cw", cw_flag, "Contention window value or comma list");
  run->add_option("--vehicles", vehicles_flag,
                  "Vehicle count or comma list (even values)");
  run->add_option("--case", case_flag, "symmetric or asymmetric");
  run->add_option("--duration", duration, "Simulated seconds per run");
  run->add_option("--seeds", seeds, "Replications per sweep point");
  run->add_option("--base-seed", base_seed, "First replication seed");
  run->add_option("--out", out_path, "Output CSV path");
  run->add_flag("--research-cw", research_cw,
                "Allow CW values outside the standard set");
  run->add_flag("--trace", trace,
                "Write per-transition MAC trace next to the CSV (single "
                "worker)");
  run->add_flag("--log-messages", log_messages,
                "Write a per-message log next to the CSV");

  // plotdata
  auto* plot = app.add_subcommand(
      "plotdata", "Aggregate a results CSV into a plot-ready table");
  std::string in_path, figure_flag, plot_out;
  plot->add_option("--in", in_path, "Results CSV from `run`")->required();
  plot->add_option("--figure", figure_flag, "fig2|fig3|fig4|fig5")->required();
  plot->add_option("--out", plot_out, "Output path (default stdout)");

  // dump-topology
  auto* dump = app.add_subcommand("dump-topology",
                                  "Write the generated station layout as CSV");
  std::string dump_config, dump_case, dump_out;
  int dump_vehicles = 100;
  std::uint64_t dump_seed = 1;
  dump->add_option("--config", dump_config, "JSON config file");
  dump->add_option("--vehicles", dump_vehicles, "Vehicle count (even)");
  dump->add_option("--case", dump_case, "symmetric or asymmetric");
  dump->add_option("--seed", dump_seed, "Topology seed");
  dump->add_option("--out", dump_out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return cmd_run(config_path, method_flag, cw_flag, vehicles_flag, case_flag,
                   duration, seeds, base_seed, out_path, research_cw, trace,
                   log_messages);
  }
  if (plot->parsed()) return cmd_plotdata(in_path, figure_flag, plot_out);
  if (dump->parsed()) {
    return cmd_dump_topology(dump_config, dump_vehicles, dump_case, dump_seed,
                             dump_out);
  }
  return 0;
}
