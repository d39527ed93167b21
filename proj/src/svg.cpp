#include "kolmo/svg.hpp"

#include "kolmo/simd/pl_eval.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace kolmo {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

constexpr double kWidth = 960;
constexpr double kMargin = 40;
constexpr double kRow = 10;
constexpr double kBlockGap = 24;

}  // namespace

std::string towns_svg(const std::vector<RefinementState>& states) {
  if (states.empty()) throw std::invalid_argument("no states to draw");
  const int n = states.front().n;
  const double span_lo = -1.0;
  const double span_hi = 1.0 + 2.0 * n * states.front().epsilon.to_double();
  auto sx = [&](double x) { return kMargin + (x - span_lo) / (span_hi - span_lo) * (kWidth - 2 * kMargin); };
  const double block = (2 * n + 1) * kRow + kBlockGap;
  const double height = 2 * kMargin + block * static_cast<double>(states.size());

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(height) +
                    "\" font-family=\"monospace\" font-size=\"10\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (double edge : {0.0, 1.0}) {
    out += "<line x1=\"" + num(sx(edge)) + "\" y1=\"" + num(kMargin / 2) + "\" x2=\"" + num(sx(edge)) + "\" y2=\"" +
           num(height - kMargin / 2) + "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (std::size_t b = 0; b < states.size(); ++b) {
    const RefinementState& s = states[b];
    const double top = kMargin + block * static_cast<double>(b);
    out += "<text x=\"4\" y=\"" + num(top + kRow) + "\">j=" + std::to_string(s.level) + "</text>\n";
    for (int q = 0; q <= 2 * s.n; ++q) {
      const double y = top + q * kRow;
      const char* colour = q % 2 == 0 ? "#1f5fa8" : "#c0392b";
      for (const Interval& iv : shifted_view(s, q)) {
        const double x0 = sx(iv.lo.to_double());
        const double x1 = sx(iv.hi.to_double());
        out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y + 2) + "\" width=\"" + num(std::max(x1 - x0, 0.5)) +
               "\" height=\"" + num(kRow - 4) + "\" fill=\"" + colour + "\"/>\n";
      }
    }
  }
  out += "</svg>\n";
  return out;
}

std::string psi_svg(const RationalPL& psi, int samples) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  const double lo = psi.lo().to_double();
  const double hi = psi.hi().to_double();
  std::vector<double> xs(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (samples - 1);
  const std::vector<double> ys = simd::eval_batch(simd::PlTable::from(psi), xs);
  double ymin = ys.front();
  double ymax = ys.front();
  for (double v : ys) {
    ymin = std::min(ymin, v);
    ymax = std::max(ymax, v);
  }
  if (ymax <= ymin) ymax = ymin + 1;
  const double height = 600;
  auto sx = [&](double x) { return kMargin + (x - lo) / (hi - lo) * (kWidth - 2 * kMargin); };
  auto sy = [&](double y) { return height - kMargin - (y - ymin) / (ymax - ymin) * (height - 2 * kMargin); };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(height) +
                    "\" font-family=\"monospace\" font-size=\"10\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(height - kMargin) + "\" x2=\"" + num(kWidth - kMargin) + "\" y2=\"" +
         num(height - kMargin) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kMargin) + "\" x2=\"" + num(kMargin) + "\" y2=\"" +
         num(height - kMargin) + "\" stroke=\"black\"/>\n";
  out += "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) out += num(sx(xs[i])) + "," + num(sy(ys[i])) + " ";
  out += "\"/>\n";
  out += "<text x=\"" + num(kMargin) + "\" y=\"" + num(height - kMargin / 3) + "\">" + num(lo) + "</text>\n";
  out += "<text x=\"" + num(kWidth - kMargin) + "\" y=\"" + num(height - kMargin / 3) + "\">" + num(hi) + "</text>\n";
  out += "<text x=\"4\" y=\"" + num(kMargin) + "\">" + num(ymax) + "</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace kolmo
