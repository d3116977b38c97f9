#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scalelaw/errors.hpp"
#include "scalelaw/experiment.hpp"
#include "scalelaw/frontier.hpp"
#include "scalelaw/law.hpp"

namespace scalelaw {

enum class PlotKind {
  compute_frontier,
  isoflop_panels,
  allocation,
  data_scaling,
  heatmap_2d
};

inline PlotKind plot_kind_from_name(std::string_view name) {
  if (name == "compute_frontier") return PlotKind::compute_frontier;
  if (name == "isoflop_panels") return PlotKind::isoflop_panels;
  if (name == "allocation") return PlotKind::allocation;
  if (name == "data_scaling") return PlotKind::data_scaling;
  if (name == "heatmap_2d") return PlotKind::heatmap_2d;
  fail("bad_argument", "unknown plot kind '" + std::string(name) + "'");
}

inline const char* plot_kind_name(PlotKind k) {
  switch (k) {
    case PlotKind::compute_frontier: return "compute_frontier";
    case PlotKind::isoflop_panels: return "isoflop_panels";
    case PlotKind::allocation: return "allocation";
    case PlotKind::data_scaling: return "data_scaling";
    case PlotKind::heatmap_2d: return "heatmap_2d";
  }
  return "?";
}

struct LawSeries {
  std::string name;
  ScalingLaw law;
  double xi = 6.0;
};

struct FrontierSeries {
  std::string name;
  ComputeFrontier frontier;
};

struct DataSeries {
  std::string name;
  ExperimentDataset dataset;
};

struct AxisRange {
  double lo = 0, hi = 0;
};

struct PlotSpec {
  PlotKind kind = PlotKind::compute_frontier;
  std::vector<FrontierSeries> frontiers;
  std::vector<LawSeries> laws;
  std::vector<DataSeries> datasets;
  std::vector<double> budgets;  // isoflop_panels
  std::optional<AxisRange> x_range, y_range;
  int curve_samples = 256;
};

namespace svg_detail {

inline constexpr const char* kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#9467bd", "#ff7f0e", "#8c564b"};

inline std::string fmt2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}

// A log-log pixel box. Data values map through log10 onto the rectangle
// (left, top, w, h), y growing downward.
struct LogBox {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  double left = 0, top = 0, w = 1, h = 1;

  double sx(double v) const {
    return left + (std::log10(v) - x0) / (x1 - x0) * w;
  }
  double sy(double v) const {
    return top + h - (std::log10(v) - y0) / (y1 - y0) * h;
  }
};

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (v > 0 && std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  bool ok() const { return lo <= hi; }
};

inline void resolve_range(double& a0, double& a1, const Extent& e,
                          const std::optional<AxisRange>& override_range,
                          double pad_decades) {
  if (override_range) {
    require(override_range->lo > 0 && override_range->hi > override_range->lo,
            "bad_argument", "axis range must be positive with hi > lo");
    a0 = std::log10(override_range->lo);
    a1 = std::log10(override_range->hi);
    return;
  }
  require(e.ok(), "bad_argument",
          "cannot infer an axis range from the inputs; pass one explicitly");
  a0 = std::log10(e.lo) - pad_decades;
  a1 = std::log10(e.hi) + pad_decades;
  if (a1 - a0 < 0.05) {
    a0 -= 0.5;
    a1 += 0.5;
  }
}

// Axes frame, decade gridlines, tick labels, and the machine-readable
// data-* mapping block. Everything needed to invert pixel coordinates back
// to data coordinates is on the <g> element.
inline void open_box(std::string& out, const LogBox& b, std::string_view cls,
                     std::string_view extra_attrs) {
  out += "<g class=\"";
  out += cls;
  out += "\" data-log-x0=\"" + fmt17(b.x0) + "\" data-log-x1=\"" + fmt17(b.x1) +
         "\" data-log-y0=\"" + fmt17(b.y0) + "\" data-log-y1=\"" + fmt17(b.y1) +
         "\" data-left=\"" + fmt2(b.left) + "\" data-top=\"" + fmt2(b.top) +
         "\" data-width=\"" + fmt2(b.w) + "\" data-height=\"" + fmt2(b.h) + "\"";
  if (!extra_attrs.empty()) {
    out += ' ';
    out += extra_attrs;
  }
  out += ">\n";
  out += "<rect x=\"" + fmt2(b.left) + "\" y=\"" + fmt2(b.top) + "\" width=\"" +
         fmt2(b.w) + "\" height=\"" + fmt2(b.h) +
         "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
  for (int k = static_cast<int>(std::ceil(b.x0)); k <= std::floor(b.x1); ++k) {
    const double px = b.left + (k - b.x0) / (b.x1 - b.x0) * b.w;
    out += "<line x1=\"" + fmt2(px) + "\" y1=\"" + fmt2(b.top) + "\" x2=\"" +
           fmt2(px) + "\" y2=\"" + fmt2(b.top + b.h) +
           "\" stroke=\"#d0d0d0\" stroke-width=\"0.5\"/>\n";
    char lbl[24];
    std::snprintf(lbl, sizeof lbl, "1e%d", k);
    out += "<text x=\"" + fmt2(px) + "\" y=\"" + fmt2(b.top + b.h + 14) +
           "\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"middle\" "
           "fill=\"#303030\">" + lbl + "</text>\n";
  }
  for (int k = static_cast<int>(std::ceil(b.y0)); k <= std::floor(b.y1); ++k) {
    const double py = b.top + b.h - (k - b.y0) / (b.y1 - b.y0) * b.h;
    out += "<line x1=\"" + fmt2(b.left) + "\" y1=\"" + fmt2(py) + "\" x2=\"" +
           fmt2(b.left + b.w) + "\" y2=\"" + fmt2(py) +
           "\" stroke=\"#d0d0d0\" stroke-width=\"0.5\"/>\n";
    char lbl[24];
    std::snprintf(lbl, sizeof lbl, "1e%d", k);
    out += "<text x=\"" + fmt2(b.left - 4) + "\" y=\"" + fmt2(py + 3) +
           "\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"end\" "
           "fill=\"#303030\">" + lbl + "</text>\n";
  }
}

inline void axis_labels(std::string& out, const LogBox& b, std::string_view x_label,
                        std::string_view y_label) {
  out += "<text x=\"" + fmt2(b.left + b.w / 2) + "\" y=\"" +
         fmt2(b.top + b.h + 32) +
         "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" "
         "fill=\"#000000\">" + escape(x_label) + "</text>\n";
  out += "<text x=\"" + fmt2(b.left - 50) + "\" y=\"" + fmt2(b.top + b.h / 2) +
         "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 " + fmt2(b.left - 50) + " " +
         fmt2(b.top + b.h / 2) + ")\" fill=\"#000000\">" + escape(y_label) +
         "</text>\n";
}

inline void polyline(std::string& out, const std::vector<std::pair<double, double>>& px,
                     std::string_view color, std::string_view name, bool dashed) {
  if (px.empty()) return;
  out += "<polyline class=\"curve\" data-name=\"" + escape(name) +
         "\" fill=\"none\" stroke=\"" + std::string(color) +
         "\" stroke-width=\"1.8\"";
  if (dashed) out += " stroke-dasharray=\"6,4\"";
  out += " points=\"";
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (i) out += ' ';
    out += fmt2(px[i].first) + "," + fmt2(px[i].second);
  }
  out += "\"/>\n";
}

inline void marker(std::string& out, double x, double y, std::string_view color,
                   std::string_view name) {
  out += "<circle class=\"marker\" data-name=\"" + escape(name) + "\" cx=\"" +
         fmt2(x) + "\" cy=\"" + fmt2(y) + "\" r=\"3\" fill=\"" +
         std::string(color) + "\" fill-opacity=\"0.75\" stroke=\"#ffffff\" "
         "stroke-width=\"0.6\"/>\n";
}

inline void legend(std::string& out, const LogBox& b,
                   const std::vector<std::pair<std::string, std::string>>& entries) {
  double y = b.top + 14;
  for (const auto& [name, color] : entries) {
    const double x = b.left + b.w - 150;
    out += "<line x1=\"" + fmt2(x) + "\" y1=\"" + fmt2(y - 4) + "\" x2=\"" +
           fmt2(x + 18) + "\" y2=\"" + fmt2(y - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fmt2(x + 24) + "\" y=\"" + fmt2(y) +
           "\" font-family=\"monospace\" font-size=\"11\" fill=\"#000000\">" +
           escape(name) + "</text>\n";
    y += 15;
  }
}

inline std::string heat_color(double t) {
  static constexpr int stops[5][3] = {{0x44, 0x01, 0x54},
                                      {0x3b, 0x52, 0x8b},
                                      {0x21, 0x91, 0x8c},
                                      {0x5e, 0xc9, 0x62},
                                      {0xfd, 0xe7, 0x25}};
  t = std::clamp(t, 0.0, 1.0);
  const double seg = t * 4.0;
  const int i = std::min(3, static_cast<int>(seg));
  const double f = seg - i;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
  return buf;
}

inline std::string open_svg(double width, double height) {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    fmt2(width) + "\" height=\"" + fmt2(height) +
                    "\" viewBox=\"0 0 " + fmt2(width) + " " + fmt2(height) +
                    "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt2(width) + "\" height=\"" +
         fmt2(height) + "\" fill=\"#ffffff\"/>\n";
  return out;
}

}  // namespace svg_detail

// Renders the spec to a complete standalone SVG document. Identical specs
// produce identical bytes: iteration order follows the input vectors, and
// all numbers are printed with fixed formats. Pixel coordinates carry two
// decimals; the data-* attributes on each plot group carry the exact log10
// axis mapping so data slopes can be recovered from the emitted geometry.
inline std::string render_plot(const PlotSpec& spec) {
  using namespace svg_detail;
  require(spec.curve_samples >= 2, "bad_argument", "curve_samples must be >= 2");

  const int samples = std::max(spec.curve_samples, 200);
  std::string out;

  auto curve_points = [&](const LogBox& b, auto&& f) {
    std::vector<std::pair<double, double>> px;
    px.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
      const double lx =
          b.x0 + (b.x1 - b.x0) * static_cast<double>(i) / (samples - 1);
      const double x = std::pow(10.0, lx);
      const double y = f(x);
      if (!(y > 0) || !std::isfinite(y)) continue;
      px.emplace_back(b.sx(x), b.sy(y));
    }
    return px;
  };

  switch (spec.kind) {
    case PlotKind::compute_frontier:
    case PlotKind::allocation: {
      require(!spec.frontiers.empty() || !spec.datasets.empty(), "bad_argument",
              "plot needs at least one frontier or dataset");
      const bool alloc = spec.kind == PlotKind::allocation;
      Extent ex, ey;
      for (const auto& d : spec.datasets)
        for (const auto& r : d.dataset.records) {
          ex.add(training_budget(r));
          ey.add(alloc ? r.model_params : r.test_loss);
        }
      if (!ex.ok() && !spec.x_range) {
        ex.add(1e15);
        ex.add(1e21);
      }
      LogBox b;
      b.left = 70;
      b.top = 30;
      b.w = 790;
      b.h = 480;
      resolve_range(b.x0, b.x1, ex, spec.x_range, 0.1);
      for (const auto& fs : spec.frontiers)
        for (double lx : {b.x0, b.x1}) {
          const double c = std::pow(10.0, lx);
          ey.add(alloc ? optimal_params(fs.frontier, c)
                       : optimal_loss(fs.frontier, c));
        }
      resolve_range(b.y0, b.y1, ey, spec.y_range, 0.05);

      out = open_svg(880, 560);
      open_box(out, b, "plot",
               std::string("data-kind=\"") + plot_kind_name(spec.kind) + "\"");
      std::vector<std::pair<std::string, std::string>> entries;
      std::size_t ci = 0;
      for (const auto& fs : spec.frontiers) {
        const char* color = kPalette[ci % 6];
        polyline(out,
                 curve_points(b,
                              [&](double c) {
                                return alloc ? optimal_params(fs.frontier, c)
                                             : optimal_loss(fs.frontier, c);
                              }),
                 color, fs.name, ci % 2 == 1);
        entries.emplace_back(fs.name, color);
        ++ci;
      }
      for (const auto& d : spec.datasets) {
        const char* color = kPalette[ci % 6];
        for (const auto& r : d.dataset.records)
          marker(out, b.sx(training_budget(r)),
                 b.sy(alloc ? r.model_params : r.test_loss), color, d.name);
        entries.emplace_back(d.name, color);
        ++ci;
      }
      legend(out, b, entries);
      axis_labels(out, b, "training compute C [FLOPs]",
                  alloc ? "optimal model size N*" : "test loss");
      out += "</g>\n</svg>\n";
      return out;
    }

    case PlotKind::isoflop_panels: {
      require(!spec.laws.empty() || !spec.datasets.empty(), "bad_argument",
              "plot needs at least one law or dataset");
      std::vector<double> budgets = spec.budgets;
      if (budgets.empty()) {
        // Cluster observed budgets: a gap of more than 25% starts a new
        // panel; each panel sits at its cluster's geometric mean.
        std::vector<double> all;
        for (const auto& d : spec.datasets)
          for (const auto& r : d.dataset.records) all.push_back(training_budget(r));
        require(!all.empty(), "bad_argument",
                "no budgets given and no datasets to derive them from");
        std::sort(all.begin(), all.end());
        double log_sum = std::log(all[0]);
        int count = 1;
        double prev = all[0];
        for (std::size_t i = 1; i <= all.size(); ++i) {
          if (i < all.size() && all[i] <= prev * 1.25) {
            log_sum += std::log(all[i]);
            ++count;
            prev = all[i];
            continue;
          }
          budgets.push_back(std::exp(log_sum / count));
          if (i < all.size()) {
            log_sum = std::log(all[i]);
            count = 1;
            prev = all[i];
          }
        }
      }
      for (double c : budgets)
        require(c > 0 && std::isfinite(c), "bad_argument",
                "budgets must be positive");

      Extent gx, gy;
      for (const auto& d : spec.datasets)
        for (const auto& r : d.dataset.records) {
          gx.add(r.model_params);
          gy.add(r.test_loss);
        }

      const int cols = std::min<std::size_t>(3, budgets.size());
      const int rows =
          static_cast<int>((budgets.size() + cols - 1) / cols);
      const double panel_w = 250, panel_h = 230;
      const double margin_l = 70, margin_t = 34, gap_x = 40, gap_y = 58;
      const double width = margin_l + cols * panel_w + (cols - 1) * gap_x + 20;
      const double height = margin_t + rows * panel_h + (rows - 1) * gap_y + 56;

      out = open_svg(width, height);
      for (std::size_t pi = 0; pi < budgets.size(); ++pi) {
        const double c = budgets[pi];
        const int row = static_cast<int>(pi) / cols;
        const int col = static_cast<int>(pi) % cols;
        LogBox b;
        b.left = margin_l + col * (panel_w + gap_x);
        b.top = margin_t + row * (panel_h + gap_y);
        b.w = panel_w;
        b.h = panel_h;

        Extent px_ext = gx, py_ext = gy;
        Extent panel_x, panel_y;
        for (const auto& d : spec.datasets)
          for (const auto& r : d.dataset.records)
            if (std::abs(training_budget(r) / c - 1.0) <= 0.1) {
              panel_x.add(r.model_params);
              panel_y.add(r.test_loss);
            }
        if (panel_x.ok()) px_ext = panel_x;
        resolve_range(b.x0, b.x1, px_ext, spec.x_range, 0.15);
        for (const auto& ls : spec.laws)
          for (double lx : {b.x0, 0.5 * (b.x0 + b.x1), b.x1}) {
            const double n = std::pow(10.0, lx);
            const double d = c / (ls.xi * n);
            if (d >= 1) py_ext.add(eval_law(ls.law, n, d));
          }
        if (panel_y.ok() && !spec.laws.empty()) {
          py_ext.add(panel_y.lo);
          py_ext.add(panel_y.hi);
        } else if (panel_y.ok()) {
          py_ext = panel_y;
        }
        resolve_range(b.y0, b.y1, py_ext, spec.y_range, 0.1);

        char extra[80];
        std::snprintf(extra, sizeof extra, "data-kind=\"isoflop_panels\" data-budget=\"%.17g\"", c);
        open_box(out, b, "panel", extra);
        char title[40];
        std::snprintf(title, sizeof title, "C = %.3g", c);
        out += "<text x=\"" + fmt2(b.left + b.w / 2) + "\" y=\"" +
               fmt2(b.top - 8) +
               "\" font-family=\"monospace\" font-size=\"12\" "
               "text-anchor=\"middle\" fill=\"#000000\">" + title + "</text>\n";

        std::size_t ci = 0;
        for (const auto& ls : spec.laws) {
          polyline(out,
                   curve_points(b,
                                [&](double n) {
                                  const double d = c / (ls.xi * n);
                                  return d >= 1 ? eval_law(ls.law, n, d) : 0.0;
                                }),
                   kPalette[ci % 6], ls.name, false);
          ++ci;
        }
        for (const auto& d : spec.datasets) {
          const char* color = kPalette[ci % 6];
          for (const auto& r : d.dataset.records)
            if (std::abs(training_budget(r) / c - 1.0) <= 0.1)
              marker(out, b.sx(r.model_params), b.sy(r.test_loss), color, d.name);
          ++ci;
        }
        if (pi == 0) {
          std::vector<std::pair<std::string, std::string>> entries;
          std::size_t li = 0;
          for (const auto& ls : spec.laws) entries.emplace_back(ls.name, kPalette[li++ % 6]);
          for (const auto& d : spec.datasets) entries.emplace_back(d.name, kPalette[li++ % 6]);
          legend(out, b, entries);
        }
        axis_labels(out, b, "model size N", "test loss");
        out += "</g>\n";
      }
      out += "</svg>\n";
      return out;
    }

    case PlotKind::data_scaling: {
      // Series split: one line per (input name, arch_id, augmented flag)
      // group, over the records that carry unique-token counts.
      struct Group {
        std::string name;
        std::vector<std::pair<double, double>> pts;  // (unique tokens, loss)
      };
      std::vector<Group> groups;
      Extent ex, ey;
      for (const auto& d : spec.datasets)
        for (const auto& r : d.dataset.records) {
          if (!r.unique_tokens) continue;
          std::string name = d.name + "/" + r.arch_id;
          if (r.augmented) name += *r.augmented ? "+aug" : "";
          auto it = std::find_if(groups.begin(), groups.end(),
                                 [&](const Group& g) { return g.name == name; });
          if (it == groups.end()) {
            groups.push_back({name, {}});
            it = groups.end() - 1;
          }
          it->pts.emplace_back(*r.unique_tokens, r.test_loss);
          ex.add(*r.unique_tokens);
          ey.add(r.test_loss);
        }
      require(!groups.empty(), "bad_argument",
              "no records with unique_tokens to plot");

      LogBox b;
      b.left = 70;
      b.top = 30;
      b.w = 790;
      b.h = 480;
      resolve_range(b.x0, b.x1, ex, spec.x_range, 0.1);
      resolve_range(b.y0, b.y1, ey, spec.y_range, 0.05);

      out = open_svg(880, 560);
      open_box(out, b, "plot", "data-kind=\"data_scaling\"");
      std::vector<std::pair<std::string, std::string>> entries;
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        auto& g = groups[gi];
        std::sort(g.pts.begin(), g.pts.end());
        const char* color = kPalette[gi % 6];
        std::vector<std::pair<double, double>> px;
        px.reserve(g.pts.size());
        for (const auto& [x, y] : g.pts) px.emplace_back(b.sx(x), b.sy(y));
        polyline(out, px, color, g.name, gi % 2 == 1);
        for (const auto& [x, y] : g.pts) marker(out, b.sx(x), b.sy(y), color, g.name);
        entries.emplace_back(g.name, color);
      }
      legend(out, b, entries);
      axis_labels(out, b, "unique training tokens", "test loss");
      out += "</g>\n</svg>\n";
      return out;
    }

    case PlotKind::heatmap_2d: {
      require(!spec.laws.empty(), "bad_argument", "heatmap needs a law");
      const LawSeries& ls = spec.laws.front();
      Extent ex, ey;
      for (const auto& d : spec.datasets)
        for (const auto& r : d.dataset.records) {
          ex.add(r.model_params);
          ey.add(r.train_tokens);
        }
      if (!ex.ok() && !spec.x_range) {
        ex.add(1e3);
        ex.add(1e9);
      }
      if (!ey.ok() && !spec.y_range) {
        ey.add(1e6);
        ey.add(1e12);
      }
      LogBox b;
      b.left = 70;
      b.top = 30;
      b.w = 760;
      b.h = 480;
      resolve_range(b.x0, b.x1, ex, spec.x_range, 0.1);
      resolve_range(b.y0, b.y1, ey, spec.y_range, 0.1);

      const int nx = 60, ny = 44;
      std::vector<double> cell(static_cast<std::size_t>(nx * ny));
      double v_lo = std::numeric_limits<double>::infinity(), v_hi = -v_lo;
      for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
          const double lx = b.x0 + (b.x1 - b.x0) * (ix + 0.5) / nx;
          const double ly = b.y0 + (b.y1 - b.y0) * (iy + 0.5) / ny;
          const double v =
              log_eval_law(ls.law, std::pow(10.0, lx), std::pow(10.0, ly)) /
              std::log(10.0);
          cell[static_cast<std::size_t>(iy * nx + ix)] = v;
          v_lo = std::min(v_lo, v);
          v_hi = std::max(v_hi, v);
        }
      if (v_hi - v_lo < 1e-12) v_hi = v_lo + 1e-12;

      out = open_svg(880, 560);
      std::string extra = "data-kind=\"heatmap_2d\" data-log-v0=\"" +
                          fmt17(v_lo) + "\" data-log-v1=\"" + fmt17(v_hi) + "\"";
      open_box(out, b, "plot", extra);
      for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
          const double t =
              (cell[static_cast<std::size_t>(iy * nx + ix)] - v_lo) / (v_hi - v_lo);
          const double x = b.left + b.w * ix / nx;
          // Lower data y sits at the bottom of the box.
          const double y = b.top + b.h - b.h * (iy + 1) / ny;
          out += "<rect class=\"cell\" x=\"" + fmt2(x) + "\" y=\"" + fmt2(y) +
                 "\" width=\"" + fmt2(b.w / nx + 0.5) + "\" height=\"" +
                 fmt2(b.h / ny + 0.5) + "\" fill=\"" + heat_color(1.0 - t) +
                 "\"/>\n";
        }
      for (const auto& d : spec.datasets)
        for (const auto& r : d.dataset.records)
          marker(out, b.sx(r.model_params), b.sy(r.train_tokens), "#ffffff",
                 d.name);
      legend(out, b, {{ls.name, "#000000"}});
      axis_labels(out, b, "model size N", "train tokens D");
      out += "</g>\n</svg>\n";
      return out;
    }
  }
  fail("bad_argument", "unknown plot kind");
}

}  // namespace scalelaw
