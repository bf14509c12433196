#include "growthfpt/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace growthfpt::cli {

namespace {

std::string num(double v, const char* f = "%.2f") {
  char buf[40];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

/// Round step of about range/5 with mantissa 1, 2 or 5.
double tick_step(double range) {
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double m = raw / mag;
  return (m < 1.5 ? 1.0 : m < 3.5 ? 2.0 : m < 7.5 ? 5.0 : 10.0) * mag;
}

}  // namespace

std::string render_svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                              const std::vector<Series>& series) {
  constexpr double W = 800, H = 500, L = 80, R = 180, T = 40, B = 60;
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y0 > 0 && y0 < 0.2 * y1) y0 = 0;
  if (y1 == y0) y1 = y0 + 1;
  const double pad = 0.05 * (y1 - y0);
  y1 += pad;
  if (y0 != 0) y0 -= pad;

  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
  out += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(W / 2 - R / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + escape(title) + "</text>\n";
  out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  const double xs = tick_step(x1 - x0), ys = tick_step(y1 - y0);
  for (double v = std::ceil(x0 / xs) * xs; v <= x1 + 1e-9 * xs; v += xs) {
    out += "<line x1=\"" + num(px(v)) + "\" y1=\"" + num(T) + "\" x2=\"" + num(px(v)) +
           "\" y2=\"" + num(H - B) + "\" stroke=\"#eee\"/>\n";
    out += "<text x=\"" + num(px(v)) + "\" y=\"" + num(H - B + 16) + "\" text-anchor=\"middle\">" +
           num(v, "%g") + "</text>\n";
  }
  for (double v = std::ceil(y0 / ys) * ys; v <= y1 + 1e-9 * ys; v += ys) {
    out += "<line x1=\"" + num(L) + "\" y1=\"" + num(py(v)) + "\" x2=\"" + num(W - R) +
           "\" y2=\"" + num(py(v)) + "\" stroke=\"#eee\"/>\n";
    out += "<text x=\"" + num(L - 6) + "\" y=\"" + num(py(v) + 4) + "\" text-anchor=\"end\">" +
           num(std::abs(v) < 1e-12 * ys ? 0.0 : v, "%g") + "</text>\n";
  }
  out += "<rect x=\"" + num(L) + "\" y=\"" + num(T) + "\" width=\"" + num(W - L - R) +
         "\" height=\"" + num(H - T - B) + "\" fill=\"none\" stroke=\"#333\"/>\n";
  out += "<text x=\"" + num((L + W - R) / 2) + "\" y=\"" + num(H - 18) + "\" text-anchor=\"middle\">" +
         escape(xlabel) + "</text>\n";
  out += "<text transform=\"translate(20 " + num((T + H - B) / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(ylabel) + "</text>\n";
  out += "</g>\n";

  std::size_t shown = 0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const std::string color = palette[k % 10];
    std::string pts;
    auto flush = [&] {
      if (!pts.empty())
        out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" stroke-opacity=\"" +
               num(s.opacity) + "\" points=\"" + pts + "\"/>\n";
      pts.clear();
    };
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      if (!pts.empty()) pts += ' ';
      pts += num(px(s.x[i])) + "," + num(py(std::clamp(s.y[i], y0, y1)));
    }
    flush();
    if (s.legend) {
      const double ly = T + 10 + 18 * static_cast<double>(shown++);
      out += "<line x1=\"" + num(W - R + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" +
             num(W - R + 36) + "\" y2=\"" + num(ly) + "\" stroke=\"" + color +
             "\" stroke-width=\"2\"/>\n";
      out += "<text x=\"" + num(W - R + 42) + "\" y=\"" + num(ly + 4) +
             "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(s.name) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace growthfpt::cli
