#include "riopt/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace riopt {

namespace {

constexpr Scalar kWidth = 720.0, kHeight = 480.0;
constexpr Scalar kLeft = 72.0, kRight = 690.0, kTop = 46.0, kBottom = 428.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string coord(Scalar v) {
  // Round to 0.01 px; keeps files small and byte-stable.
  return format_double(std::round(v * 100.0) / 100.0);
}

}  // namespace

std::string render_gradnorm_svg(const std::vector<const IterTrace*>& traces,
                                const std::vector<std::string>& labels,
                                const std::string& title) {
  if (traces.empty()) throw ContractViolation("plot: need at least one trace");
  if (labels.size() != traces.size())
    throw ContractViolation("plot: one label per trace required");

  long kmax = 1;
  Scalar ymin = std::numeric_limits<Scalar>::infinity();
  Scalar ymax = -std::numeric_limits<Scalar>::infinity();
  for (const IterTrace* tr : traces)
    for (const IterRecord& r : tr->rows) {
      kmax = std::max(kmax, r.k);
      if (r.gradnorm > 0.0 && std::isfinite(r.gradnorm)) {
        ymin = std::min(ymin, std::log10(r.gradnorm));
        ymax = std::max(ymax, std::log10(r.gradnorm));
      }
    }
  if (!std::isfinite(ymin)) {
    ymin = -1.0;
    ymax = 1.0;
  }
  Scalar lo = std::floor(ymin), hi = std::ceil(ymax);
  if (hi - lo < 2.0) {
    lo -= 1.0;
    hi += 1.0;
  }

  auto map_x = [&](Scalar k) { return kLeft + (kRight - kLeft) * k / static_cast<Scalar>(kmax); };
  auto map_y = [&](Scalar logv) {
    return kBottom - (kBottom - kTop) * (logv - lo) / (hi - lo);
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(kWidth) +
         "\" height=\"" + coord(kHeight) + "\" viewBox=\"0 0 " + coord(kWidth) + " " +
         coord(kHeight) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + coord(kWidth) + "\" height=\"" + coord(kHeight) +
         "\" fill=\"white\"/>\n";
  if (!title.empty())
    svg += "<text x=\"" + coord((kLeft + kRight) / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           xml_escape(title) + "</text>\n";

  // Axes.
  svg += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(kBottom) + "\" x2=\"" +
         coord(kRight) + "\" y2=\"" + coord(kBottom) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(kTop) + "\" x2=\"" + coord(kLeft) +
         "\" y2=\"" + coord(kBottom) + "\" stroke=\"black\"/>\n";

  // Y ticks at integer powers of ten (at most 12 labels).
  const int y_step = std::max(1, static_cast<int>((hi - lo) / 12.0 + 0.999));
  for (int e = static_cast<int>(lo); e <= static_cast<int>(hi); e += y_step) {
    const Scalar y = map_y(static_cast<Scalar>(e));
    svg += "<line x1=\"" + coord(kLeft - 4) + "\" y1=\"" + coord(y) + "\" x2=\"" +
           coord(kLeft) + "\" y2=\"" + coord(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + coord(kLeft - 8) + "\" y=\"" + coord(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" +
           std::to_string(e) + "</text>\n";
  }
  // X ticks: five evenly spaced marks.
  for (int i = 0; i <= 4; ++i) {
    const long k = kmax * i / 4;
    const Scalar x = map_x(static_cast<Scalar>(k));
    svg += "<line x1=\"" + coord(x) + "\" y1=\"" + coord(kBottom) + "\" x2=\"" + coord(x) +
           "\" y2=\"" + coord(kBottom + 4) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + coord(x) + "\" y=\"" + coord(kBottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           std::to_string(k) + "</text>\n";
  }
  svg += "<text x=\"" + coord((kLeft + kRight) / 2) + "\" y=\"" + coord(kHeight - 14) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">iteration"
         "</text>\n";
  svg += "<text x=\"18\" y=\"" + coord((kTop + kBottom) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 18 " +
         coord((kTop + kBottom) / 2) + ")\">gradient norm</text>\n";

  // One path per trace.
  for (size_t ti = 0; ti < traces.size(); ++ti) {
    std::string d;
    bool pen_down = false;
    for (const IterRecord& r : traces[ti]->rows) {
      if (!(r.gradnorm > 0.0) || !std::isfinite(r.gradnorm)) {
        pen_down = false;
        continue;
      }
      d += pen_down ? " L " : (d.empty() ? "M " : " M ");
      d += coord(map_x(static_cast<Scalar>(r.k))) + " " + coord(map_y(std::log10(r.gradnorm)));
      pen_down = true;
    }
    if (d.empty()) d = "M " + coord(kLeft) + " " + coord(kBottom);
    svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + kPalette[ti % kPaletteSize] +
           "\" stroke-width=\"1.5\"/>\n";
  }

  // Legend, top right.
  for (size_t ti = 0; ti < traces.size(); ++ti) {
    const Scalar y = kTop + 8.0 + 16.0 * static_cast<Scalar>(ti);
    svg += "<line x1=\"" + coord(kRight - 150) + "\" y1=\"" + coord(y) + "\" x2=\"" +
           coord(kRight - 126) + "\" y2=\"" + coord(y) + "\" stroke=\"" +
           kPalette[ti % kPaletteSize] + "\" stroke-width=\"1.5\"/>\n";
    svg += "<text class=\"legend\" x=\"" + coord(kRight - 120) + "\" y=\"" + coord(y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(labels[ti]) +
           "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

void emit_plot(const std::vector<const IterTrace*>& traces,
               const std::vector<std::string>& labels, const std::string& path,
               const std::string& title) {
  const std::string svg = render_gradnorm_svg(traces, labels, title);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write plot to " + path);
  out << svg;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace riopt
