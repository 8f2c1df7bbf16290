#include "bondsim/experiment/plotdata.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bondsim {

bool parse_figure(const std::string& name, Figure& out) {
  if (name == "fig2") out = Figure::Fig2;
  else if (name == "fig3") out = Figure::Fig3;
  else if (name == "fig4") out = Figure::Fig4;
  else if (name == "fig5") out = Figure::Fig5;
  else return false;
  return true;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::vector<CsvResultRow> read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("plotdata: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("plotdata: empty CSV " + path);
  const auto header = split_csv_line(line);
  auto col = [&](const char* name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::runtime_error(std::string("plotdata: missing column ") + name);
  };
  const std::size_t c_method = col("method");
  const std::size_t c_case = col("case");
  const std::size_t c_cw = col("cw");
  const std::size_t c_n = col("n_vehicles");
  const std::size_t c_seed = col("seed");
  const std::size_t c_ratio = col("max_unsatisfied_ratio");

  std::vector<CsvResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    CsvResultRow r;
    if (!parse_access_method(f.at(c_method).c_str(), r.method))
      throw std::runtime_error("plotdata: bad method " + f.at(c_method));
    if (!parse_scenario_case(f.at(c_case).c_str(), r.scenario_case))
      throw std::runtime_error("plotdata: bad case " + f.at(c_case));
    r.cw = std::stoi(f.at(c_cw));
    r.n_vehicles = std::stoi(f.at(c_n));
    r.seed = std::stoull(f.at(c_seed));
    r.max_unsatisfied_ratio = std::stod(f.at(c_ratio));
    rows.push_back(r);
  }
  return rows;
}

namespace {

struct GroupKey {
  int scenario_case;
  int method;
  int cw;
  int n_vehicles;
  bool operator<(const GroupKey& o) const {
    if (scenario_case != o.scenario_case) return scenario_case < o.scenario_case;
    if (method != o.method) return method < o.method;
    if (cw != o.cw) return cw < o.cw;
    return n_vehicles < o.n_vehicles;
  }
};

PlotPoint aggregate(const GroupKey& key, const std::vector<double>& vals) {
  PlotPoint p;
  p.scenario_case = static_cast<ScenarioCase>(key.scenario_case);
  p.method = static_cast<AccessMethod>(key.method);
  p.cw = key.cw;
  p.n_vehicles = key.n_vehicles;
  p.seeds = static_cast<int>(vals.size());
  double sum = 0.0;
  for (double v : vals) sum += v;
  p.mean = sum / static_cast<double>(vals.size());
  if (vals.size() > 1) {
    double ss = 0.0;
    for (double v : vals) ss += (v - p.mean) * (v - p.mean);
    p.stddev = std::sqrt(ss / static_cast<double>(vals.size() - 1));
  }
  return p;
}

[[noreturn]] void missing_error(const std::string& what,
                                const std::vector<std::string>& items) {
  std::ostringstream os;
  os << "plotdata: missing " << what << ":";
  for (const auto& s : items) os << ' ' << s;
  throw std::runtime_error(os.str());
}

}  // namespace

std::vector<PlotPoint> make_plotdata(const std::vector<CsvResultRow>& rows,
                                     Figure fig) {
  // Row filter per figure.
  auto keep = [&](const CsvResultRow& r) {
    switch (fig) {
      case Figure::Fig2:
        return r.scenario_case == ScenarioCase::Symmetric && r.cw == 15;
      case Figure::Fig3:
        return r.scenario_case == ScenarioCase::Symmetric && r.n_vehicles == 100;
      case Figure::Fig4:
        return r.scenario_case == ScenarioCase::Asymmetric && r.cw == 15;
      case Figure::Fig5:
        return r.method == AccessMethod::BondN;
    }
    return false;
  };

  std::map<GroupKey, std::vector<double>> groups;
  for (const auto& r : rows) {
    if (!keep(r)) continue;
    GroupKey k{static_cast<int>(r.scenario_case), static_cast<int>(r.method),
               r.cw, r.n_vehicles};
    groups[k].push_back(r.max_unsatisfied_ratio);
  }
  if (groups.empty()) {
    missing_error("rows for the requested figure", {"(none matched)"});
  }

  // Coverage checks along the figure's axes.
  std::vector<std::string> missing;
  if (fig == Figure::Fig3) {
    std::set<int> methods;
    for (const auto& [k, v] : groups) methods.insert(k.method);
    for (int m : methods) {
      for (int cw : kStandardCwSet) {
        GroupKey k{static_cast<int>(ScenarioCase::Symmetric), m, cw, 100};
        if (!groups.count(k)) {
          missing.push_back(
              std::string(access_method_name(static_cast<AccessMethod>(m))) +
              "/cw=" + std::to_string(cw));
        }
      }
    }
  } else if (fig == Figure::Fig2 || fig == Figure::Fig4) {
    std::set<int> methods, ns;
    for (const auto& [k, v] : groups) {
      methods.insert(k.method);
      ns.insert(k.n_vehicles);
    }
    for (int m : methods) {
      for (int n : ns) {
        GroupKey k{static_cast<int>(fig == Figure::Fig2
                                        ? ScenarioCase::Symmetric
                                        : ScenarioCase::Asymmetric),
                   m, 15, n};
        if (!groups.count(k)) {
          missing.push_back(
              std::string(access_method_name(static_cast<AccessMethod>(m))) +
              "/n=" + std::to_string(n));
        }
      }
    }
  } else {  // Fig5: per case, every (cw, n) combination seen in that case
    std::set<int> cases;
    for (const auto& [k, v] : groups) cases.insert(k.scenario_case);
    for (int c : cases) {
      std::set<int> cws, ns;
      for (const auto& [k, v] : groups) {
        if (k.scenario_case != c) continue;
        cws.insert(k.cw);
        ns.insert(k.n_vehicles);
      }
      for (int cw : cws) {
        for (int n : ns) {
          GroupKey k{c, static_cast<int>(AccessMethod::BondN), cw, n};
          if (!groups.count(k)) {
            missing.push_back(
                std::string(scenario_case_name(static_cast<ScenarioCase>(c))) +
                "/cw=" + std::to_string(cw) + "/n=" + std::to_string(n));
          }
        }
      }
    }
  }
  if (!missing.empty()) missing_error("sweep points", missing);

  std::vector<PlotPoint> out;
  for (const auto& [k, vals] : groups) out.push_back(aggregate(k, vals));
  return out;
}

std::string plotdata_csv(const std::vector<PlotPoint>& points) {
  std::ostringstream os;
  os << "case,method,cw,n_vehicles,mean_max_unsatisfied_ratio,stddev,seeds\n";
  char buf[64];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g", p.mean, p.stddev);
    os << scenario_case_name(p.scenario_case) << ','
       << access_method_name(p.method) << ',' << p.cw << ',' << p.n_vehicles
       << ',' << buf << ',' << p.seeds << '\n';
  }
  return os.str();
}

}  // namespace bondsim
