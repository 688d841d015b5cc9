#include "gridlab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "gridlab/charts.hpp"
#include "gridlab/errors.hpp"
#include "gridlab/random.hpp"

namespace gridlab {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string grid_descriptor(const ProblemSpec& p, int n) {
  return p.is_ode() ? std::to_string(n) : std::to_string(n) + "x" + std::to_string(n);
}

// Sort key for grid descriptors ("400", "20x20").
long grid_points(const std::string& grid) {
  long total = 1;
  std::stringstream ss(grid);
  std::string part;
  while (std::getline(ss, part, 'x')) total *= std::strtol(part.c_str(), nullptr, 10);
  return total;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("write failed for " + path.string());
}

std::string slug(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return s;
}

}  // namespace

std::vector<RunSpec> enumerate_runs(const ExperimentConfig& cfg) {
  std::vector<RunSpec> runs;
  runs.reserve(cfg.run_count());
  for (Strategy s : cfg.strategies)
    for (int n : cfg.grid_sizes)
      for (const auto& layout : cfg.architectures)
        for (std::uint64_t seed : cfg.seeds) runs.push_back({runs.size(), s, n, layout, seed});
  return runs;
}

RunOutput execute_run(const ExperimentConfig& cfg, const RunSpec& run) {
  const ProblemSpec& p = cfg.problem;
  RunOutput out;
  ResultRecord& r = out.record;
  r.problem = std::string(to_string(p.kind));
  r.strategy = std::string(to_string(run.strategy));
  r.depth = run.layout.depth();
  r.widths = run.layout.widths_string();
  r.grid = grid_descriptor(p, run.grid);
  r.boundary_n = p.is_ode() ? 0 : cfg.boundary_per_edge;
  r.seed = run.seed;
  r.epochs = cfg.epochs;

  const TrainingData data = make_training_data(p, run.strategy, run.grid, cfg.boundary_per_edge, run.seed);
  const ShallowNet net0 = init_glorot(run.layout, derive_seed(run.seed, "weights"));
  try {
    out.report = train(p, net0, data, cfg.epochs);
  } catch (const NonFiniteError& e) {
    r.status = "nonfinite_epoch_" + std::to_string(e.epoch());
    r.final_loss = std::numeric_limits<double>::quiet_NaN();
    r.mae = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  r.final_loss = out.report.final_loss;
  r.wall_time_s = out.report.wall_time_seconds;
  r.mae = evaluate(p, ShallowNet(run.layout, out.report.final_theta), eval_grid(p)).mae;
  return out;
}

void write_loss_history(std::ostream& os, const std::vector<double>& history, int log_every) {
  os << "epoch,loss\n";
  const std::size_t step = log_every > 0 ? static_cast<std::size_t>(log_every) : 1;
  for (std::size_t e = 0; e < history.size(); ++e)
    if (e % step == 0 || e + 1 == history.size()) os << e << ',' << fmt17(history[e]) << '\n';
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg, const SweepOptions& options) {
  cfg.validate();
  const auto runs = enumerate_runs(cfg);
  std::vector<ResultRecord> records(runs.size());
  if (!options.history_dir.empty()) std::filesystem::create_directories(options.history_dir);

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        RunOutput out = execute_run(cfg, runs[i]);
        if (!options.history_dir.empty() && out.record.ok()) {
          std::ostringstream os;
          write_loss_history(os, out.report.loss_history, options.log_every);
          write_file(options.history_dir / ("loss_" + std::to_string(i) + ".csv"), os.str());
        }
        records[i] = std::move(out.record);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = runs.size();
      }
    }
  };

  const int workers = std::clamp(options.workers, 1, static_cast<int>(std::max<std::size_t>(runs.size(), 1)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return records;
}

std::vector<StrategySummary> summarize(const std::vector<ResultRecord>& records) {
  std::vector<StrategySummary> out;
  if (records.empty()) return out;
  const auto key = [](const ResultRecord& r) { return std::tie(r.problem, r.widths, r.grid); };
  std::vector<std::string> order;
  std::map<std::string, std::pair<std::vector<double>, int>> groups;
  for (const auto& r : records) {
    if (key(r) != key(records.front()))
      throw std::invalid_argument("summarize: records mix problems, architectures or grids");
    auto [it, inserted] = groups.try_emplace(r.strategy);
    if (inserted) order.push_back(r.strategy);
    if (r.ok())
      it->second.first.push_back(r.mae);
    else
      ++it->second.second;
  }
  for (const auto& name : order) {
    const auto& [maes, failures] = groups[name];
    if (maes.empty()) {
      std::cerr << "warning: strategy " << name << " has no successful runs; omitted from summary\n";
      continue;
    }
    out.push_back({name, aggregate(maes), failures});
  }
  return out;
}

std::vector<SummaryRow> summarize_all(const std::vector<ResultRecord>& records) {
  std::vector<std::tuple<std::string, std::string, std::string>> order;
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<ResultRecord>> groups;
  for (const auto& r : records) {
    auto k = std::make_tuple(r.problem, r.widths, r.grid);
    auto [it, inserted] = groups.try_emplace(k);
    if (inserted) order.push_back(k);
    it->second.push_back(r);
  }
  std::vector<SummaryRow> rows;
  for (const auto& k : order) {
    const auto& group = groups[k];
    for (auto& s : summarize(group))
      rows.push_back({std::get<0>(k), group.front().depth, std::get<1>(k), std::get<2>(k), std::move(s)});
  }
  return rows;
}

void write_results_csv(std::ostream& os, const std::vector<ResultRecord>& records) {
  os << kResultsHeader << '\n';
  for (const auto& r : records)
    os << r.problem << ',' << r.strategy << ',' << r.depth << ',' << r.widths << ',' << r.grid << ',' << r.boundary_n
       << ',' << r.seed << ',' << r.epochs << ',' << fmt17(r.final_loss) << ',' << fmt17(r.mae) << ','
       << fmt17(r.wall_time_s) << ',' << r.status << '\n';
}

std::vector<ResultRecord> read_results_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kResultsHeader) throw ConfigError("results.csv: unexpected header");
  std::vector<ResultRecord> records;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 12) throw ConfigError("results.csv line " + std::to_string(line_no) + ": expected 12 fields");
    try {
      ResultRecord r;
      r.problem = f[0];
      r.strategy = f[1];
      r.depth = std::stoi(f[2]);
      r.widths = f[3];
      r.grid = f[4];
      r.boundary_n = std::stoi(f[5]);
      r.seed = std::stoull(f[6]);
      r.epochs = std::stol(f[7]);
      r.final_loss = std::strtod(f[8].c_str(), nullptr);
      r.mae = std::strtod(f[9].c_str(), nullptr);
      r.wall_time_s = std::strtod(f[10].c_str(), nullptr);
      r.status = f[11];
      records.push_back(std::move(r));
    } catch (const std::exception&) {
      throw ConfigError("results.csv line " + std::to_string(line_no) + ": malformed number");
    }
  }
  return records;
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "problem,depth,widths,grid,strategy,runs,failures,mean_mae,sd_mae\n";
  for (const auto& r : rows)
    os << r.problem << ',' << r.depth << ',' << r.widths << ',' << r.grid << ',' << r.summary.strategy << ','
       << r.summary.stats.runs << ',' << r.summary.failures << ',' << fmt17(r.summary.stats.mean_mae) << ','
       << fmt17(r.summary.stats.sd) << '\n';
}

std::vector<std::filesystem::path> emit_outputs(const std::vector<ResultRecord>& records,
                                                const std::vector<SummaryRow>& summary,
                                                const std::filesystem::path& outdir) {
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw IoError("cannot create output directory " + outdir.string() + ": " + ec.message());

  std::ostringstream results;
  write_results_csv(results, records);
  write_file(outdir / "results.csv", results.str());
  std::ostringstream sum;
  write_summary_csv(sum, summary);
  write_file(outdir / "summary.csv", sum.str());

  std::vector<std::filesystem::path> charts;
  if (records.empty()) {
    std::cerr << "warning: no results; wrote header-only CSVs and no charts\n";
    return charts;
  }

  // MAE vs grid size, one chart per (problem, architecture).
  std::vector<std::pair<std::string, std::string>> arch_order;
  for (const auto& row : summary) {
    const auto k = std::make_pair(row.problem, row.widths);
    if (std::find(arch_order.begin(), arch_order.end(), k) == arch_order.end()) arch_order.push_back(k);
  }
  for (const auto& [problem, widths] : arch_order) {
    std::vector<std::string> grids;
    std::vector<std::string> strategies;
    for (const auto& row : summary) {
      if (row.problem != problem || row.widths != widths) continue;
      if (std::find(grids.begin(), grids.end(), row.grid) == grids.end()) grids.push_back(row.grid);
      if (std::find(strategies.begin(), strategies.end(), row.summary.strategy) == strategies.end())
        strategies.push_back(row.summary.strategy);
    }
    std::stable_sort(grids.begin(), grids.end(),
                     [](const std::string& a, const std::string& b) { return grid_points(a) < grid_points(b); });
    std::vector<charts::Series> series;
    for (const auto& s : strategies) {
      charts::Series line{s, std::vector<double>(grids.size(), std::numeric_limits<double>::quiet_NaN())};
      for (const auto& row : summary)
        if (row.problem == problem && row.widths == widths && row.summary.strategy == s) {
          const auto at = std::find(grids.begin(), grids.end(), row.grid) - grids.begin();
          line.y[static_cast<std::size_t>(at)] = row.summary.stats.mean_mae;
        }
      series.push_back(std::move(line));
    }
    const auto path = outdir / ("mae_vs_grid_" + slug(problem) + "_" + slug(widths) + ".svg");
    write_file(path, charts::line_chart_svg(problem + ", hidden " + widths + ": MAE vs grid size", "grid size",
                                            "MAE (log scale)", grids, series));
    charts.push_back(path);
  }

  // Mean MAE per strategy with SD whiskers, one chart per (problem, architecture, grid).
  std::vector<std::tuple<std::string, std::string, std::string>> group_order;
  for (const auto& row : summary) {
    const auto k = std::make_tuple(row.problem, row.widths, row.grid);
    if (std::find(group_order.begin(), group_order.end(), k) == group_order.end()) group_order.push_back(k);
  }
  for (const auto& [problem, widths, grid] : group_order) {
    std::vector<charts::Bar> bars;
    int runs = 0;
    for (const auto& row : summary)
      if (row.problem == problem && row.widths == widths && row.grid == grid) {
        bars.push_back({row.summary.strategy, row.summary.stats.mean_mae, row.summary.stats.sd});
        runs = std::max(runs, row.summary.stats.runs);
      }
    const auto path = outdir / ("mae_by_strategy_" + slug(problem) + "_" + slug(widths) + "_" + slug(grid) + ".svg");
    write_file(path, charts::bar_chart_svg(problem + ", hidden " + widths + ", grid " + grid + ": mean MAE over " +
                                               std::to_string(runs) + " run(s)",
                                           "mean MAE", bars));
    charts.push_back(path);
  }
  return charts;
}

}  // namespace gridlab
