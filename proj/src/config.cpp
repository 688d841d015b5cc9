#include "gridlab/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "gridlab/errors.hpp"

namespace gridlab {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"problem", {"kind", "lambda", "x0", "omega", "v0"}},
    {"sampling", {"strategies", "grid_sizes", "boundary_per_edge"}},
    {"network", {"architectures"}},
    {"training", {"epochs", "seeds", "log_every"}},
    {"output", {"dir"}},
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    boost::algorithm::trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

template <class T>
T parse_number(std::string_view text, std::string_view key) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
  return value;
}

double parse_real(const std::string& text, std::string_view key) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ConfigError("invalid number '" + text + "' for " + std::string(key));
  return value;
}

}  // namespace

void ExperimentConfig::validate() const {
  problem.validate();
  if (strategies.empty()) throw ConfigError("no strategies configured");
  if (grid_sizes.empty()) throw ConfigError("no grid sizes configured");
  if (architectures.empty()) throw ConfigError("no architectures configured");
  if (seeds.empty()) throw ConfigError("no seeds configured");
  for (int n : grid_sizes)
    if (n < 2) throw ConfigError("grid sizes must be at least 2");
  for (const auto& a : architectures) {
    a.validate();
    if (a.input_dim != problem.dimension()) throw ConfigError("architecture input dimension does not match problem");
  }
  if (epochs < 1) throw ConfigError("epochs must be positive");
  if (!problem.is_ode() && boundary_per_edge < 2) throw ConfigError("boundary_per_edge must be at least 2");
  if (log_every < 0) throw ConfigError("log_every must be non-negative");
}

ExperimentConfig default_experiment(ProblemKind kind) {
  ExperimentConfig cfg;
  cfg.problem = make_problem(kind);
  const DefaultConfig d = default_config(kind);
  cfg.grid_sizes = d.training_sizes;
  cfg.epochs = d.epochs;
  cfg.boundary_per_edge = d.boundary_per_edge;
  const int dim = cfg.problem.dimension();
  cfg.architectures = {{dim, {100}}, {dim, {50, 50}}};
  return cfg;
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  std::string s(text);
  boost::algorithm::trim(s);
  std::vector<std::uint64_t> seeds;
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    std::string lo = s.substr(0, dots);
    std::string hi = s.substr(dots + 2);
    boost::algorithm::trim(lo);
    boost::algorithm::trim(hi);
    const auto first = parse_number<std::uint64_t>(lo, "seeds");
    const auto last = parse_number<std::uint64_t>(hi, "seeds");
    if (last < first) throw ConfigError("seed range '" + s + "' is empty");
    for (std::uint64_t v = first;; ++v) {
      seeds.push_back(v);
      if (v == last) break;
    }
    return seeds;
  }
  for (const auto& item : split_list(s)) seeds.push_back(parse_number<std::uint64_t>(item, "seeds"));
  if (seeds.empty()) throw ConfigError("no seeds given");
  return seeds;
}

ExperimentConfig parse_config(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream is{std::string(text)};
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  for (const auto& [section, body] : tree) {
    const auto known = kKnownKeys.find(section);
    if (known == kKnownKeys.end() || body.empty())
      throw ConfigError("config: unknown section or top-level key '" + section + "'");
    for (const auto& [key, value] : body) {
      if (!known->second.count(key)) throw ConfigError("config: unknown key '" + section + "." + key + "'");
      if (!value.empty()) throw ConfigError("config: nested value under '" + section + "." + key + "'");
    }
  }
  const auto get = [&tree](const char* path) { return tree.get_optional<std::string>(pt::ptree::path_type(path, '.')); };

  const auto kind = get("problem.kind");
  ExperimentConfig cfg = default_experiment(kind ? parse_problem_kind(*kind) : ProblemKind::oscillator);

  if (auto v = get("problem.lambda")) cfg.problem.lambda = parse_real(*v, "problem.lambda");
  if (auto v = get("problem.x0")) cfg.problem.x0 = parse_real(*v, "problem.x0");
  if (auto v = get("problem.omega")) cfg.problem.omega = parse_real(*v, "problem.omega");
  if (auto v = get("problem.v0")) cfg.problem.v0 = parse_real(*v, "problem.v0");

  if (auto v = get("sampling.strategies")) {
    cfg.strategies.clear();
    for (const auto& s : split_list(*v)) {
      try {
        cfg.strategies.push_back(parse_strategy(s));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }
  if (auto v = get("sampling.grid_sizes")) {
    cfg.grid_sizes.clear();
    for (const auto& s : split_list(*v)) cfg.grid_sizes.push_back(parse_number<int>(s, "sampling.grid_sizes"));
  }
  if (auto v = get("sampling.boundary_per_edge"))
    cfg.boundary_per_edge = parse_number<int>(*v, "sampling.boundary_per_edge");

  if (auto v = get("network.architectures")) {
    cfg.architectures.clear();
    for (const auto& s : split_list(*v)) cfg.architectures.push_back(NetLayout::parse(cfg.problem.dimension(), s));
  }

  if (auto v = get("training.epochs")) cfg.epochs = parse_number<long>(*v, "training.epochs");
  if (auto v = get("training.seeds")) cfg.seeds = parse_seeds(*v);
  if (auto v = get("training.log_every")) cfg.log_every = parse_number<int>(*v, "training.log_every");

  if (auto v = get("output.dir")) cfg.output_dir = *v;

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace gridlab
