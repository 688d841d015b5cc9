#include "gridlab/network.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "gridlab/random.hpp"

namespace gridlab {

void NetLayout::validate() const {
  if (input_dim != 1 && input_dim != 2) throw ConfigError("network input dimension must be 1 or 2");
  if (hidden_widths.empty() || hidden_widths.size() > 2) throw ConfigError("network needs one or two hidden layers");
  for (int w : hidden_widths)
    if (w < 1) throw ConfigError("hidden layer widths must be positive");
}

Eigen::Index NetLayout::param_count() const {
  Eigen::Index n = 0;
  for (const auto& b : layer_blocks(*this)) n += b.size();
  return n;
}

std::string NetLayout::widths_string() const {
  std::string s;
  for (std::size_t i = 0; i < hidden_widths.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(hidden_widths[i]);
  }
  return s;
}

NetLayout NetLayout::parse(int input_dim, const std::string& widths) {
  NetLayout layout{input_dim, {}};
  std::stringstream ss(widths);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    try {
      std::size_t used = 0;
      const int w = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      layout.hidden_widths.push_back(w);
    } catch (const std::exception&) {
      throw ConfigError("bad architecture '" + widths + "' (expected e.g. 100 or 50x50)");
    }
  }
  layout.validate();
  return layout;
}

std::vector<LayerBlock> layer_blocks(const NetLayout& layout) {
  std::vector<LayerBlock> blocks;
  Eigen::Index offset = 0;
  int fan_in = layout.input_dim;
  for (int w : layout.hidden_widths) {
    blocks.push_back({offset, fan_in, w});
    offset += blocks.back().size();
    fan_in = w;
  }
  blocks.push_back({offset, fan_in, 1});
  return blocks;
}

ShallowNet::ShallowNet(NetLayout l, Vector t) : layout(std::move(l)), theta(std::move(t)) {
  layout.validate();
  if (theta.size() != layout.param_count())
    throw ConfigError("theta has " + std::to_string(theta.size()) + " entries, layout needs " +
                      std::to_string(layout.param_count()));
}

ShallowNet ShallowNet::zeros(const NetLayout& layout) {
  layout.validate();
  return {layout, Vector::Zero(layout.param_count())};
}

ShallowNet init_glorot(const NetLayout& layout, std::uint64_t seed) {
  ShallowNet net = ShallowNet::zeros(layout);
  Xoshiro256 rng(seed);
  for (const auto& b : layer_blocks(layout)) {
    const double limit = std::sqrt(6.0 / (b.fan_in + b.fan_out));
    double* p = net.theta.data() + b.offset;
    for (int j = 0; j < b.fan_out; ++j, p += b.fan_in + 1)
      for (int i = 0; i < b.fan_in; ++i) p[i] = rng.uniform(-limit, limit);
  }
  return net;
}

double forward(const ShallowNet& net, std::span<const double> x) { return forward_generic<double>(net, x); }

Jet forward_jet(const ShallowNet& net, std::span<const double> x, int axis) {
  if (axis < 0 || axis >= net.layout.input_dim) throw ConfigError("forward_jet: axis out of range");
  std::vector<Jet> lifted;
  lifted.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    lifted.push_back(static_cast<int>(i) == axis ? Jet::variable(x[i]) : Jet::constant(x[i]));
  return forward_generic<Jet>(net, lifted);
}

Vector forward(const ShallowNet& net, const Matrix& points) {
  if (points.rows() != net.layout.input_dim) throw ConfigError("forward: point dimension mismatch");
  Vector u(points.cols());
  for (Eigen::Index i = 0; i < points.cols(); ++i)
    u[i] = forward_generic<double>(net, std::span<const double>(points.col(i).data(), static_cast<std::size_t>(points.rows())));
  return u;
}

void save_checkpoint(std::ostream& os, const ShallowNet& net) {
  std::string widths;
  for (std::size_t i = 0; i < net.layout.hidden_widths.size(); ++i)
    widths += (i ? "," : "") + std::to_string(net.layout.hidden_widths[i]);
  os << net.layout.input_dim << ';' << widths << '\n';
  char buf[40];
  for (double t : net.theta) {
    std::snprintf(buf, sizeof buf, "%.16e", t);
    os << buf << '\n';
  }
}

ShallowNet load_checkpoint(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw ConfigError("checkpoint: missing layout line");
  const auto semi = header.find(';');
  if (semi == std::string::npos) throw ConfigError("checkpoint: layout line must be 'input_dim;widths'");
  std::string widths = header.substr(semi + 1);
  for (char& c : widths)
    if (c == ',') c = 'x';
  NetLayout layout;
  try {
    layout = NetLayout::parse(std::stoi(header.substr(0, semi)), widths);
  } catch (const std::invalid_argument&) {
    throw ConfigError("checkpoint: bad input dimension");
  }
  Vector theta(layout.param_count());
  std::string line;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (!std::getline(is, line)) throw ConfigError("checkpoint: truncated parameter list");
    theta[i] = std::strtod(line.c_str(), nullptr);
  }
  return {layout, theta};
}

}  // namespace gridlab
