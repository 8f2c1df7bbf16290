#ifndef BONDSIM_EXPERIMENT_SWEEP_HPP
#define BONDSIM_EXPERIMENT_SWEEP_HPP

#include <string>
#include <vector>

#include "bondsim/experiment/runner.hpp"

namespace bondsim {

// Cartesian product method x cw x n_vehicles x seed, in that nesting order.
std::vector<RunPoint> enumerate_points(const ExperimentConfig& cfg);

// Runs every point. Points execute on `workers` threads (each run is
// single-threaded and owns all its state); results always come back in
// enumeration order, so the CSV bytes do not depend on scheduling. Tracing
// forces a single worker.
std::vector<RunResult> run_sweep(const ExperimentConfig& cfg, int workers,
                                 std::ostream* trace_sink = nullptr);

// BONDSIM_WORKERS, or hardware concurrency when unset.
int worker_count_from_env();

std::string results_csv_header();
std::string result_csv_row(const ExperimentConfig& cfg, const RunResult& r);

// Atomic write: content goes to <path>.tmp first, then renames into place.
void write_file_atomic(const std::string& path, const std::string& content);

void write_results_csv(const std::string& path, const ExperimentConfig& cfg,
                       const std::vector<RunResult>& results);

// Per-message log (one file for the whole sweep).
void write_messages_csv(const std::string& path, const std::vector<RunResult>& results);

}  // namespace bondsim

#endif
