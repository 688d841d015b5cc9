#include "gridlab/charts.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace gridlab::charts {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 80;
constexpr double kRight = 170;
constexpr double kTop = 50;
constexpr double kBottom = 60;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#111111",
                                                 "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void open_svg(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << num(kWidth / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
     << "</text>\n";
}

void axes(std::ostringstream& os, const std::string& x_label, const std::string& y_label) {
  const double x1 = kWidth - kRight;
  const double y1 = kHeight - kBottom;
  os << "<line x1=\"" << kLeft << "\" y1=\"" << y1 << "\" x2=\"" << x1 << "\" y2=\"" << y1
     << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << y1
     << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << num((kLeft + x1) / 2) << "\" y=\"" << num(kHeight - 18)
     << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n"
     << "<text transform=\"translate(18," << num((kTop + y1) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape(y_label) << "</text>\n";
}

}  // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<std::string>& x_ticks, const std::vector<Series>& series) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : series)
    for (double v : s.y)
      if (std::isfinite(v) && v > 0.0) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
  if (!std::isfinite(lo)) {
    lo = 1e-3;
    hi = 1.0;
  }
  const double dlo = std::floor(std::log10(lo));
  const double dhi = std::max(std::ceil(std::log10(hi)), dlo + 1.0);

  const double x0 = kLeft + 30;
  const double x1 = kWidth - kRight - 30;
  const double y0 = kHeight - kBottom;
  const auto px = [&](std::size_t i) {
    return x_ticks.size() < 2 ? (x0 + x1) / 2 : x0 + (x1 - x0) * static_cast<double>(i) / (x_ticks.size() - 1);
  };
  const auto py = [&](double v) { return y0 - (y0 - kTop) * (std::log10(v) - dlo) / (dhi - dlo); };

  std::ostringstream os;
  open_svg(os, title);
  axes(os, x_label, y_label);
  for (double d = dlo; d <= dhi; d += 1.0) {
    const double y = py(std::pow(10.0, d));
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(y) << "\" x2=\"" << kWidth - kRight << "\" y2=\"" << num(y)
       << "\" stroke=\"#dddddd\"/>\n"
       << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">1e" << static_cast<int>(d)
       << "</text>\n";
  }
  for (std::size_t i = 0; i < x_ticks.size(); ++i)
    os << "<text x=\"" << num(px(i)) << "\" y=\"" << num(y0 + 18) << "\" text-anchor=\"middle\">"
       << escape(x_ticks[i]) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPalette.size()];
    std::string path;
    for (std::size_t i = 0; i < series[s].y.size() && i < x_ticks.size(); ++i) {
      const double v = series[s].y[i];
      if (!std::isfinite(v) || v <= 0.0) continue;
      path += (path.empty() ? "M" : " L") + num(px(i)) + ' ' + num(py(v));
      os << "<circle cx=\"" << num(px(i)) << "\" cy=\"" << num(py(v)) << "\" r=\"3.5\" fill=\"" << color
         << "\"/>\n";
    }
    if (!path.empty())
      os << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(s);
    os << "<line x1=\"" << kWidth - kRight + 15 << "\" y1=\"" << num(ly) << "\" x2=\"" << kWidth - kRight + 35
       << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << kWidth - kRight + 40 << "\" y=\"" << num(ly + 4) << "\">" << escape(series[s].name)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string bar_chart_svg(const std::string& title, const std::string& y_label, const std::vector<Bar>& bars) {
  double hi = 0.0;
  for (const auto& b : bars)
    if (std::isfinite(b.value + b.error)) hi = std::max(hi, b.value + std::max(b.error, 0.0));
  if (hi <= 0.0) hi = 1.0;
  hi *= 1.1;

  const double y0 = kHeight - kBottom;
  const double plot_w = kWidth - kRight - kLeft;
  const double slot = bars.empty() ? plot_w : plot_w / static_cast<double>(bars.size());
  const auto py = [&](double v) { return y0 - (y0 - kTop) * v / hi; };

  std::ostringstream os;
  open_svg(os, title);
  axes(os, "strategy", y_label);
  for (int t = 0; t <= 5; ++t) {
    const double v = hi * t / 5.0;
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(py(v)) << "\" x2=\"" << kWidth - kRight << "\" y2=\""
       << num(py(v)) << "\" stroke=\"#dddddd\"/>\n"
       << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py(v) + 4) << "\" text-anchor=\"end\">" << tick_label(v)
       << "</text>\n";
  }
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const auto& b = bars[i];
    const double cx = kLeft + slot * (static_cast<double>(i) + 0.5);
    const double bw = slot * 0.6;
    const double v = std::isfinite(b.value) ? std::max(b.value, 0.0) : 0.0;
    os << "<rect x=\"" << num(cx - bw / 2) << "\" y=\"" << num(py(v)) << "\" width=\"" << num(bw) << "\" height=\""
       << num(y0 - py(v)) << "\" fill=\"" << kPalette[i % kPalette.size()] << "\"/>\n";
    if (std::isfinite(b.error) && b.error > 0.0) {
      const double top = py(b.value + b.error);
      const double bottom = py(whisker_low(b));
      os << "<g stroke=\"#ff8c00\" stroke-width=\"2\"><line x1=\"" << num(cx) << "\" y1=\"" << num(top)
         << "\" x2=\"" << num(cx) << "\" y2=\"" << num(bottom) << "\"/><line x1=\"" << num(cx - 8) << "\" y1=\""
         << num(top) << "\" x2=\"" << num(cx + 8) << "\" y2=\"" << num(top) << "\"/></g>\n";
    }
    os << "<text x=\"" << num(cx) << "\" y=\"" << num(y0 + 18) << "\" text-anchor=\"middle\">" << escape(b.label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace gridlab::charts
