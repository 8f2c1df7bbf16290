#ifndef BONDSIM_EXPERIMENT_PLOTDATA_HPP
#define BONDSIM_EXPERIMENT_PLOTDATA_HPP

#include <string>
#include <vector>

#include "bondsim/mac/timings.hpp"
#include "bondsim/scenario/highway.hpp"

namespace bondsim {

enum class Figure { Fig2, Fig3, Fig4, Fig5 };
bool parse_figure(const std::string& name, Figure& out);

// Minimal view of one results-CSV row.
struct CsvResultRow {
  AccessMethod method;
  ScenarioCase scenario_case;
  int cw = 0;
  int n_vehicles = 0;
  std::uint64_t seed = 0;
  double max_unsatisfied_ratio = 0.0;
};

std::vector<CsvResultRow> read_results_csv(const std::string& path);

// One aggregated plot point: mean and sample standard deviation of the
// max-unsatisfied-STA ratio over seeds.
struct PlotPoint {
  ScenarioCase scenario_case;
  AccessMethod method;
  int cw = 0;
  int n_vehicles = 0;
  double mean = 0.0;
  double stddev = 0.0;
  int seeds = 0;
};

// Groups rows the way the target figure is laid out:
//   fig2: symmetric, CW=15, x = n_vehicles, one line per method
//   fig3: symmetric, n=100, x = CW over the standard set, one line per method
//   fig4: asymmetric, CW=15, x = n_vehicles, one line per method
//   fig5: BondN only, both cases, x = n_vehicles, one line per (case, CW)
// Throws std::runtime_error listing the missing sweep points when the rows do
// not cover the figure's axes.
std::vector<PlotPoint> make_plotdata(const std::vector<CsvResultRow>& rows,
                                     Figure fig);

std::string plotdata_csv(const std::vector<PlotPoint>& points);

}  // namespace bondsim

#endif
