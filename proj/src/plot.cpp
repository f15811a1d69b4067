#include "cone/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cone {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kMarginL = 70, kMarginR = 30, kMarginT = 30, kMarginB = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

// round to 1/2/5 x 10^k for tick spacing
double nice_step(double span, int target_ticks) {
  const double raw = span / std::max(1, target_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (mult * mag >= raw) return mult * mag;
  }
  return 10.0 * mag;
}

}  // namespace

void emit_plot(const std::vector<CurveSeries>& series, const std::string& path) {
  if (series.empty()) throw std::invalid_argument("emit_plot: no series to draw");

  double x_max = 1.0, y_min = 0.0, y_max = 1.0;
  for (const auto& s : series) {
    for (double v : s.stages) x_max = std::max(x_max, v);
    for (double v : s.values) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  const double plot_w = kWidth - kMarginL - kMarginR;
  const double plot_h = kHeight - kMarginT - kMarginB;
  auto px = [&](double x) { return kMarginL + plot_w * x / x_max; };
  auto py = [&](double y) { return kMarginT + plot_h * (1.0 - (y - y_min) / (y_max - y_min)); };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_plot: cannot open " + path);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  // axes
  out << "<line x1=\"" << kMarginL << "\" y1=\"" << kMarginT << "\" x2=\"" << kMarginL
      << "\" y2=\"" << kHeight - kMarginB << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kMarginL << "\" y1=\"" << kHeight - kMarginB << "\" x2=\""
      << kWidth - kMarginR << "\" y2=\"" << kHeight - kMarginB << "\" stroke=\"black\"/>\n";

  const double xstep = nice_step(x_max, 6);
  for (double x = 0.0; x <= x_max * (1 + 1e-9); x += xstep) {
    out << "<line x1=\"" << px(x) << "\" y1=\"" << kHeight - kMarginB << "\" x2=\"" << px(x)
        << "\" y2=\"" << kHeight - kMarginB + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px(x) << "\" y=\"" << kHeight - kMarginB + 20
        << "\" text-anchor=\"middle\" font-size=\"12\">" << fmt(x) << "</text>\n";
  }
  const double ystep = nice_step(y_max - y_min, 5);
  for (double y = y_min; y <= y_max * (1 + 1e-9); y += ystep) {
    out << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << py(y) << "\" x2=\"" << kMarginL
        << "\" y2=\"" << py(y) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kMarginL - 8 << "\" y=\"" << py(y) + 4
        << "\" text-anchor=\"end\" font-size=\"12\">" << fmt(y) << "</text>\n";
  }
  out << "<text x=\"" << kMarginL + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">observations</text>\n";
  out << "<text x=\"16\" y=\"" << kMarginT + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << kMarginT + plot_h / 2 << ")\">correct selection rate</text>\n";

  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
    for (size_t i = 0; i < series[s].stages.size(); ++i) {
      out << px(series[s].stages[i]) << ',' << py(series[s].values[i]) << ' ';
    }
    out << "\"/>\n";
    // legend entry
    const double ly = kMarginT + 18.0 * (static_cast<double>(s) + 1.0);
    out << "<line x1=\"" << kWidth - kMarginR - 150 << "\" y1=\"" << ly << "\" x2=\""
        << kWidth - kMarginR - 120 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kWidth - kMarginR - 112 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\">" << series[s].label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace cone
