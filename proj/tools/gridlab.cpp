// gridlab: training-point strategy experiments for shallow PINNs.
//
//   gridlab sample --strategy S --n N --domain a,b [--seed K]
//   gridlab train  --config FILE [--out DIR] [--log-every N]
//   gridlab sweep  --config FILE --out DIR [--workers W] [--log-every N]
//   gridlab plot   --in results.csv --out DIR
//
// Exit codes: 0 success, 1 config error, 2 run failures present, 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#ifdef __GLIBC__
#include <malloc.h>
#endif

#include <CLI11.hpp>

#include "gridlab/config.hpp"
#include "gridlab/errors.hpp"
#include "gridlab/random.hpp"
#include "gridlab/runner.hpp"
#include "gridlab/sampler.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kRunFailures = 2, kIo = 3 };

std::vector<double> parse_domain(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    v.push_back(std::stod(part, &used));
    if (used != part.size()) throw gridlab::ConfigError("bad domain '" + text + "'");
  }
  if (v.size() != 2 && v.size() != 4) throw gridlab::ConfigError("--domain takes a,b or xa,xb,ya,yb");
  return v;
}

int cmd_sample(const std::string& strategy_name, int n, int ny, const std::string& domain_text, std::uint64_t seed) {
  using namespace gridlab;
  Strategy strategy;
  try {
    strategy = parse_strategy(strategy_name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto d = parse_domain(domain_text);
  char buf[64];
  try {
    if (d.size() == 2) {
      const auto pts = sample(strategy, Interval(d[0], d[1]), n, derive_seed(seed, "points-x"));
      std::cout << "index,x\n";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, pts.points[i]);
        std::cout << buf;
      }
    } else {
      const auto xs = sample(strategy, Interval(d[0], d[1]), n, derive_seed(seed, "points-x"));
      const auto ys = sample(strategy, Interval(d[2], d[3]), ny > 0 ? ny : n, derive_seed(seed, "points-y"));
      const auto grid = tensor_grid(xs, ys);
      std::cout << "index,x,y\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, grid.points[i][0], grid.points[i][1]);
        std::cout << buf;
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return kOk;
}

int finish_sweep(const std::vector<gridlab::ResultRecord>& records, const std::filesystem::path& out) {
  const auto summary = gridlab::summarize_all(records);
  const auto charts = gridlab::emit_outputs(records, summary, out);
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.ok() ? 0 : 1;
  std::cerr << records.size() << " run(s), " << failed << " failed; wrote " << (out / "results.csv").string() << ", "
            << (out / "summary.csv").string() << " and " << charts.size() << " chart(s)\n";
  return failed ? kRunFailures : kOk;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef __GLIBC__
  // Training allocates the same large temporaries every epoch; keep them in
  // the heap instead of returning pages to the kernel between epochs.
  mallopt(M_MMAP_THRESHOLD, 64 << 20);
  mallopt(M_TRIM_THRESHOLD, 256 << 20);
#endif
  CLI::App app{"gridlab: training-point distribution experiments for shallow PINNs"};
  app.require_subcommand(1);

  auto* sample = app.add_subcommand("sample", "Print a training point set as CSV (index,x[,y])");
  std::string strategy;
  int n = 0;
  int ny = 0;
  std::string domain;
  std::uint64_t seed = 42;
  sample->add_option("--strategy", strategy, "equidistant|random|random_sorted|chebyshev|sine_based")->required();
  sample->add_option("--n", n, "Number of points (per x axis for 2D)")->required();
  sample->add_option("--ny", ny, "Points along y for a 2D domain (default: n)");
  sample->add_option("--domain", domain, "a,b or xa,xb,ya,yb")->required();
  sample->add_option("--seed", seed, "Run seed for random strategies");

  auto* train = app.add_subcommand("train", "Run every configuration in a config file sequentially");
  std::string config_path;
  std::string out_dir;
  int log_every = -1;
  train->add_option("--config", config_path, "Experiment config file")->required();
  train->add_option("--out", out_dir, "Output directory (default: output.dir from the config)");
  train->add_option("--log-every", log_every, "Loss-history sampling interval in epochs");

  auto* sweep = app.add_subcommand("sweep", "Run a configuration sweep on a worker pool");
  int workers = 1;
  sweep->add_option("--config", config_path, "Experiment config file")->required();
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--workers", workers, "Parallel runs")->check(CLI::PositiveNumber);
  sweep->add_option("--log-every", log_every, "Write per-run loss histories every N epochs");

  auto* plot = app.add_subcommand("plot", "Summarise an existing results.csv and redraw charts");
  std::string in_path;
  plot->add_option("--in", in_path, "results.csv")->required();
  plot->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*sample) return cmd_sample(strategy, n, ny, domain, seed);

    if (*train || *sweep) {
      const auto cfg = gridlab::load_config(config_path);
      const std::filesystem::path out = out_dir.empty()
                                            ? std::filesystem::path(config_path).parent_path() / cfg.output_dir
                                            : std::filesystem::path(out_dir);
      gridlab::SweepOptions options;
      options.workers = *sweep ? workers : 1;
      if (*train || log_every >= 0) {
        options.history_dir = out / "loss_history";
        options.log_every = log_every >= 0 ? log_every : cfg.log_every;
      }
      return finish_sweep(gridlab::run_experiment(cfg, options), out);
    }

    if (*plot) {
      std::ifstream in(in_path);
      if (!in) throw gridlab::IoError("cannot read " + in_path);
      return finish_sweep(gridlab::read_results_csv(in), out_dir);
    }
  } catch (const gridlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const gridlab::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}
