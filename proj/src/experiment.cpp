#include "icgrad/experiment.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "icgrad/errors.hpp"
#include "icgrad/quantum.hpp"
#include "icgrad/rng.hpp"
#include "icgrad/sampling.hpp"
#include "icgrad/stats.hpp"
#include "icgrad/walk.hpp"

namespace icgrad {

namespace {

using nlohmann::json;

json features_json(const ICFeatures& f) {
  return {{"H_M", f.h_m},           {"eps_M", f.eps_m},
          {"eps_S", f.eps_s},       {"eta", f.eta},
          {"m", f.m},               {"eps_M_sqrt_m", f.eps_m_sqrt_m},
          {"eps_S_sqrt_m", f.eps_s_sqrt_m}};
}

json bounds_json(const GradientBounds& b) {
  // NaN serializes as null, which marks the inapplicable entries.
  return {{"lower_mic", b.lower_mic},
          {"upper_mic", b.upper_mic},
          {"upper_sic", b.upper_sic},
          {"q", b.q},
          {"applicable_mic", b.applicable_mic}};
}

json aggregate_json(std::vector<double> values) {
  if (values.empty()) return {{"count", 0}};
  return {{"count", values.size()},
          {"median", median(values)},
          {"std", sample_std(values)}};
}

}  // namespace

int resolve_num_steps(const WalkSettings& walk, int dimension) {
  if (walk.num_steps != 0) return walk.num_steps;
  return auto_num_steps(dimension, walk.sample_multiplier);
}

WalkRecord run_walk_repetition(const CostFunction& cost, const WalkSettings& walk,
                               std::uint64_t seed, int rep) {
  const std::uint64_t rep_seed = derive_seed(seed, {static_cast<std::uint64_t>(rep)});
  const int m = cost.dimension();
  const int steps = resolve_num_steps(walk, m);
  if (walk.mode == "walk-over-sample") {
    const auto sample = lhs_sample(m, steps + 1, rep_seed);
    return walk_over_sample(cost, sample);
  }
  if (walk.mode != "isotropic")
    throw ArgumentError("run_walk_repetition: unknown walk mode '" + walk.mode + "'");
  WalkConfig wc;
  wc.step_size = walk.step_size;
  wc.num_steps = steps;
  wc.seed = rep_seed;
  if (!walk.start.empty()) wc.start = walk.start;
  return random_walk(cost, wc);
}

RepetitionAnalysis analyze_deltas(std::span<const double> deltas, int dimension,
                                  int rep, const IcSettings& ic) {
  RepetitionAnalysis out;
  out.rep = rep;
  std::vector<double> grid = ic.epsilon_grid;
  if (grid.empty()) {
    double eps_ref = 0.0;
    for (double d : deltas) eps_ref = std::max(eps_ref, std::fabs(d));
    grid = default_epsilon_grid(eps_ref, ic.grid_points);
  }
  out.curve = ic_curve(deltas, dimension, grid);
  out.features = extract_features(out.curve, ic.eta);
  out.bounds = gradient_bounds(out.features);
  return out;
}

std::string analysis_report_json(const std::vector<RepetitionAnalysis>& reps) {
  json per_rep = json::array();
  std::vector<double> eps_m_sqrt_m, eps_s_sqrt_m, h_m, lower, upper, sic;
  for (const auto& r : reps) {
    per_rep.push_back({{"rep", r.rep},
                       {"features", features_json(r.features)},
                       {"bounds", bounds_json(r.bounds)}});
    eps_m_sqrt_m.push_back(r.features.eps_m_sqrt_m);
    eps_s_sqrt_m.push_back(r.features.eps_s_sqrt_m);
    h_m.push_back(r.features.h_m);
    sic.push_back(r.bounds.upper_sic);
    if (r.bounds.applicable_mic) {
      lower.push_back(r.bounds.lower_mic);
      upper.push_back(r.bounds.upper_mic);
    }
  }
  json j;
  j["repetitions"] = per_rep;
  j["aggregate"] = {{"eps_M_sqrt_m", aggregate_json(eps_m_sqrt_m)},
                    {"eps_S_sqrt_m", aggregate_json(eps_s_sqrt_m)},
                    {"H_M", aggregate_json(h_m)},
                    {"lower_mic", aggregate_json(lower)},
                    {"upper_mic", aggregate_json(upper)},
                    {"upper_sic", aggregate_json(sic)},
                    {"applicable_mic_count", lower.size()}};
  return j.dump(2) + "\n";
}

namespace {

struct ScanCell {
  Observable kind;
  int qubits;
  int layers;
  int rep;
};

ScanRow run_cell(const ExperimentConfig& config, const ScanCell& cell) {
  const QuantumCost cost(AnsatzSpec{cell.qubits, cell.layers}, cell.kind);
  // Seed depends on the cell identity only, never on grid position, so
  // adding or removing other cells cannot perturb this row.
  const std::uint64_t cell_seed =
      derive_seed(config.seed, {cell.kind == Observable::Local ? 1ull : 2ull,
                                static_cast<std::uint64_t>(cell.qubits),
                                static_cast<std::uint64_t>(cell.layers)});
  const WalkRecord walk =
      run_walk_repetition(cost, config.walk, cell_seed, cell.rep);
  const RepetitionAnalysis analysis =
      analyze_deltas(walk.deltas, walk.dimension(), cell.rep, config.ic);

  ScanRow row;
  row.observable = observable_name(cell.kind);
  row.qubits = cell.qubits;
  row.layers = cell.layers;
  row.rep = cell.rep;
  row.eps_m = analysis.features.eps_m;
  row.eps_s = analysis.features.eps_s;
  row.h_m = analysis.features.h_m;
  row.lower_mic = analysis.bounds.lower_mic;
  row.upper_mic = analysis.bounds.upper_mic;
  row.upper_sic = analysis.bounds.upper_sic;
  return row;
}

}  // namespace

ScanOutcome run_scan(const ExperimentConfig& config) {
  validate_config(config);
  std::vector<ScanCell> cells;
  for (const auto& obs : config.scan.observables)
    for (int n : config.scan.qubits)
      for (int l : config.scan.layers)
        for (int rep = 0; rep < config.repetitions; ++rep)
          cells.push_back({parse_observable(obs), n, l, rep});

  ScanOutcome out;
  out.rows.resize(cells.size());
  std::vector<std::string> cell_errors(cells.size());

  const int jobs = std::max(1, config.jobs);
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        out.rows[i] = run_cell(config, cells[i]);
      } catch (const std::exception& e) {
        cell_errors[i] = "cell (" + observable_name(cells[i].kind) + ", n=" +
                         std::to_string(cells[i].qubits) + ", L=" +
                         std::to_string(cells[i].layers) + ", rep=" +
                         std::to_string(cells[i].rep) + "): " + e.what();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Failed cells are dropped from the CSV but reported; order is preserved.
  std::vector<ScanRow> rows;
  rows.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cell_errors[i].empty())
      rows.push_back(std::move(out.rows[i]));
    else
      out.errors.push_back(std::move(cell_errors[i]));
  }
  out.rows = std::move(rows);
  return out;
}

std::vector<ScanPoint> aggregate_scan(const std::vector<ScanRow>& rows) {
  struct Key {
    std::string obs;
    int n, l;
    bool operator<(const Key& o) const {
      return std::tie(obs, n, l) < std::tie(o.obs, o.n, o.l);
    }
  };
  std::vector<Key> order;
  std::map<Key, std::vector<const ScanRow*>> groups;
  for (const auto& r : rows) {
    const Key k{r.observable, r.qubits, r.layers};
    auto [it, inserted] = groups.try_emplace(k);
    if (inserted) order.push_back(k);
    it->second.push_back(&r);
  }

  std::vector<ScanPoint> points;
  points.reserve(order.size());
  for (const auto& k : order) {
    const auto& group = groups[k];
    ScanPoint p;
    p.observable = parse_observable(k.obs);
    p.qubits = k.n;
    p.layers = k.l;
    p.repetitions = static_cast<int>(group.size());
    const double root_m = std::sqrt(static_cast<double>(k.n) * k.l);
    std::vector<double> eps_m_sqrt_m, lower, upper, sic;
    for (const ScanRow* r : group) {
      eps_m_sqrt_m.push_back(r->eps_m * root_m);
      sic.push_back(r->upper_sic);
      if (!std::isnan(r->lower_mic)) {
        lower.push_back(r->lower_mic);
        upper.push_back(r->upper_mic);
      }
    }
    p.eps_m_sqrt_m = median(eps_m_sqrt_m);
    p.eps_m_sqrt_m_spread = sample_std(eps_m_sqrt_m);
    p.upper_sic = median(sic);
    p.upper_sic_spread = sample_std(sic);
    if (!lower.empty()) {
      p.lower_mic = median(lower);
      p.lower_mic_spread = sample_std(lower);
      p.upper_mic = median(upper);
      p.upper_mic_spread = sample_std(upper);
    } else {
      p.lower_mic = p.upper_mic = std::numeric_limits<double>::quiet_NaN();
      p.lower_mic_spread = p.upper_mic_spread = 0.0;
    }
    points.push_back(p);
  }
  return points;
}

void write_heatmaps(const std::filesystem::path& dir,
                    const std::vector<ScanPoint>& points) {
  for (const Observable kind : {Observable::Local, Observable::Global}) {
    std::string csv = "qubits,layers,median_eps_M_sqrt_m\n";
    bool any = false;
    for (const auto& p : points) {
      if (p.observable != kind) continue;
      any = true;
      csv += std::to_string(p.qubits) + "," + std::to_string(p.layers) + "," +
             format_double(p.eps_m_sqrt_m) + "\n";
    }
    if (any)
      write_text_file(dir / ("heatmap_" + observable_name(kind) + ".csv"), csv);
  }
}

}  // namespace icgrad
