// CSV and SVG artifact writers. Output is plain text with fixed formatting so
// re-exporting the same result is byte-identical.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "edgecache/harness.hpp"

namespace edgecache {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  return out;
}

// Minimal SVG chart canvas: a fixed plot box with a [0,1] y axis.
struct SvgCanvas {
  std::ostringstream body;
  double width = 720.0, height = 440.0;
  double left = 70.0, right = 30.0, top = 40.0, bottom = 60.0;
  double y_max = 1.0;

  double plot_w() const { return width - left - right; }
  double plot_h() const { return height - top - bottom; }
  double ty(double v) const { return top + (1.0 - v / y_max) * plot_h(); }

  void rect(double x, double y, double w, double h, const std::string& fill) {
    body << "<rect x=\"" << fmt("%.2f", x) << "\" y=\"" << fmt("%.2f", y) << "\" width=\""
         << fmt("%.2f", w) << "\" height=\"" << fmt("%.2f", h) << "\" fill=\"" << fill
         << "\"/>\n";
  }
  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double width_px = 1.0) {
    body << "<line x1=\"" << fmt("%.2f", x1) << "\" y1=\"" << fmt("%.2f", y1) << "\" x2=\""
         << fmt("%.2f", x2) << "\" y2=\"" << fmt("%.2f", y2) << "\" stroke=\"" << stroke
         << "\" stroke-width=\"" << fmt("%.2f", width_px) << "\"/>\n";
  }
  void text(double x, double y, const std::string& s, int size = 12,
            const std::string& anchor = "middle") {
    body << "<text x=\"" << fmt("%.2f", x) << "\" y=\"" << fmt("%.2f", y)
         << "\" font-family=\"sans-serif\" font-size=\"" << size << "\" text-anchor=\"" << anchor
         << "\">" << s << "</text>\n";
  }
  void axes(const std::string& y_label) {
    line(left, top, left, top + plot_h(), "#000000", 1.5);
    line(left, top + plot_h(), left + plot_w(), top + plot_h(), "#000000", 1.5);
    for (int i = 0; i <= 5; ++i) {
      const double v = y_max * i / 5.0;
      line(left - 4.0, ty(v), left, ty(v), "#000000");
      text(left - 8.0, ty(v) + 4.0, fmt("%.2f", v), 11, "end");
    }
    text(16.0, top + plot_h() / 2.0, y_label, 12, "middle");
  }
  void write(const std::string& path, const std::string& title) {
    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt("%.0f", width)
        << "\" height=\"" << fmt("%.0f", height) << "\" viewBox=\"0 0 " << fmt("%.0f", width)
        << ' ' << fmt("%.0f", height) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << fmt("%.0f", width) << "\" height=\""
        << fmt("%.0f", height) << "\" fill=\"#ffffff\"/>\n";
    out << "<text x=\"" << fmt("%.2f", width / 2.0)
        << "\" y=\"22\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">"
        << title << "</text>\n";
    out << body.str() << "</svg>\n";
  }
};

std::string scheme_color(const std::string& scheme) {
  if (scheme == "mpso") return "#1f6fb4";
  if (scheme == "random") return "#e07b28";
  if (scheme == "equal") return "#3a9e4e";
  return "#888888";
}

}  // namespace

void export_csv(const ExperimentResult& result, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "scheme,sweep_param,sweep_value,seed,sigma,runtime_s\n";
  for (const ResultRow& row : result.rows) {
    out << row.scheme << ',' << row.sweep_param << ',' << fmt("%.10g", row.sweep_value) << ','
        << row.seed << ',' << fmt("%.12g", row.sigma) << ',' << fmt("%.6f", row.runtime_s)
        << '\n';
  }
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open results file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "scheme,sweep_param,sweep_value,seed,sigma,runtime_s")
    throw std::runtime_error("results file has an unexpected header: " + path);

  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    ResultRow row;
    std::string tok;
    std::getline(ss, row.scheme, ',');
    std::getline(ss, row.sweep_param, ',');
    std::getline(ss, tok, ',');
    row.sweep_value = std::stod(tok);
    std::getline(ss, tok, ',');
    row.seed = std::stoull(tok);
    std::getline(ss, tok, ',');
    row.sigma = std::stod(tok);
    std::getline(ss, tok, ',');
    row.runtime_s = std::stod(tok);
    if (std::isnan(row.sigma)) row.error = "nan";
    rows.push_back(row);
  }
  return rows;
}

void export_results_svg(const std::vector<ResultRow>& rows, const std::string& path) {
  const std::vector<Aggregate> aggs = aggregate_rows(rows);
  if (aggs.empty()) throw std::runtime_error("export_results_svg: no successful rows");

  std::set<double> sweep_values;
  std::set<std::string> schemes;
  std::string sweep_param = aggs.front().sweep_param;
  for (const Aggregate& a : aggs) {
    sweep_values.insert(a.sweep_value);
    schemes.insert(a.scheme);
  }

  SvgCanvas canvas;
  if (sweep_values.size() <= 1) {
    // Single point: one bar per scheme with a +/- one-standard-deviation whisker.
    canvas.axes("mean cache hit ratio");
    const int n = static_cast<int>(aggs.size());
    const double slot = canvas.plot_w() / n;
    int i = 0;
    for (const Aggregate& a : aggs) {
      const double cx = canvas.left + slot * (i + 0.5);
      const double w = slot * 0.5;
      canvas.rect(cx - w / 2.0, canvas.ty(a.mean), w, canvas.ty(0.0) - canvas.ty(a.mean),
                  scheme_color(a.scheme));
      canvas.line(cx, canvas.ty(std::min(canvas.y_max, a.mean + a.stddev)), cx,
                  canvas.ty(std::max(0.0, a.mean - a.stddev)), "#000000", 1.5);
      canvas.text(cx, canvas.ty(0.0) + 18.0, a.scheme);
      canvas.text(cx, canvas.ty(a.mean) - 6.0, fmt("%.3f", a.mean), 11);
      ++i;
    }
    canvas.write(path, "cache hit ratio by scheme");
  } else {
    // Swept parameter: one polyline per scheme over the sweep values.
    canvas.axes("mean cache hit ratio");
    std::vector<double> xs(sweep_values.begin(), sweep_values.end());
    auto x_of = [&](double v) {
      const auto it = std::find(xs.begin(), xs.end(), v);
      const double idx = static_cast<double>(it - xs.begin());
      return canvas.left + canvas.plot_w() * (idx + 0.5) / xs.size();
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = canvas.left + canvas.plot_w() * (i + 0.5) / xs.size();
      canvas.text(x, canvas.ty(0.0) + 18.0, fmt("%.4g", xs[i]));
      canvas.line(x, canvas.ty(0.0), x, canvas.ty(0.0) + 4.0, "#000000");
    }
    canvas.text(canvas.left + canvas.plot_w() / 2.0, canvas.height - 12.0, sweep_param);
    int legend = 0;
    for (const std::string& scheme : schemes) {
      std::map<double, const Aggregate*> series;
      for (const Aggregate& a : aggs)
        if (a.scheme == scheme) series[a.sweep_value] = &a;
      const Aggregate* prev = nullptr;
      double prev_x = 0.0;
      for (const auto& [v, a] : series) {
        const double x = x_of(v);
        if (prev)
          canvas.line(prev_x, canvas.ty(prev->mean), x, canvas.ty(a->mean),
                      scheme_color(scheme), 2.0);
        canvas.rect(x - 3.0, canvas.ty(a->mean) - 3.0, 6.0, 6.0, scheme_color(scheme));
        prev = a;
        prev_x = x;
      }
      canvas.rect(canvas.left + canvas.plot_w() - 110.0, canvas.top + 8.0 + 16.0 * legend, 10.0,
                  10.0, scheme_color(scheme));
      canvas.text(canvas.left + canvas.plot_w() - 94.0, canvas.top + 17.0 + 16.0 * legend,
                  scheme, 11, "start");
      ++legend;
    }
    canvas.write(path, "cache hit ratio vs " + sweep_param);
  }
}

namespace {

struct NodeRef {
  std::string node_class;
  int class_index;
  int row;
};

std::vector<NodeRef> placement_rows(int n_users, int n_sbs, int n_mbs) {
  std::vector<NodeRef> refs;
  for (int i = 0; i < n_users; ++i) refs.push_back({"user", i, i});
  for (int j = 0; j < n_sbs; ++j) refs.push_back({"sbs", j, n_users + j});
  for (int l = 0; l < n_mbs; ++l) refs.push_back({"mbs", l, n_users + n_sbs + l});
  return refs;
}

}  // namespace

void export_placement_csv(const Placement& placement, int n_users, int n_sbs, int n_mbs,
                          const std::string& path) {
  if (n_users + n_sbs + n_mbs != placement.rows())
    throw std::invalid_argument("export_placement_csv: class sizes do not match placement");
  std::ofstream out = open_out(path);
  out << "node_class,node_index,content_id,eta,row_capacity\n";
  for (const NodeRef& ref : placement_rows(n_users, n_sbs, n_mbs)) {
    for (int k = 0; k < placement.cols(); ++k) {
      out << ref.node_class << ',' << ref.class_index << ',' << k << ','
          << fmt("%.12g", placement.eta.at(ref.row, k)) << ',' << placement.capacities[ref.row]
          << '\n';
    }
  }
}

void export_placement_svg(const Placement& placement, int n_users, int n_sbs, int n_mbs,
                          const std::string& path) {
  if (n_users + n_sbs + n_mbs != placement.rows())
    throw std::invalid_argument("export_placement_svg: class sizes do not match placement");

  // First two nodes of each class, mirroring the per-node probability bars.
  std::vector<NodeRef> panels;
  const std::vector<NodeRef> all = placement_rows(n_users, n_sbs, n_mbs);
  for (const char* cls : {"user", "sbs", "mbs"}) {
    int taken = 0;
    for (const NodeRef& ref : all) {
      if (ref.node_class == cls && taken < 2) {
        panels.push_back(ref);
        ++taken;
      }
    }
  }
  if (panels.empty()) throw std::invalid_argument("export_placement_svg: empty placement");

  const double panel_w = 360.0, panel_h = 200.0;
  const int per_row = 2;
  const int panel_rows = (static_cast<int>(panels.size()) + per_row - 1) / per_row;

  std::ostringstream body;
  auto put_rect = [&](double x, double y, double w, double h, const std::string& fill) {
    body << "<rect x=\"" << fmt("%.2f", x) << "\" y=\"" << fmt("%.2f", y) << "\" width=\""
         << fmt("%.2f", w) << "\" height=\"" << fmt("%.2f", h) << "\" fill=\"" << fill
         << "\"/>\n";
  };

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const NodeRef& ref = panels[p];
    const double ox = (p % per_row) * panel_w + 50.0;
    const double oy = (p / per_row) * panel_h + 40.0;
    const double plot_w = panel_w - 80.0;
    const double plot_h = panel_h - 70.0;

    body << "<text x=\"" << fmt("%.2f", ox + plot_w / 2.0) << "\" y=\"" << fmt("%.2f", oy - 8.0)
         << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
         << ref.node_class << ' ' << ref.class_index
         << " (capacity " << placement.capacities[ref.row] << ")</text>\n";
    body << "<line x1=\"" << fmt("%.2f", ox) << "\" y1=\"" << fmt("%.2f", oy) << "\" x2=\""
         << fmt("%.2f", ox) << "\" y2=\"" << fmt("%.2f", oy + plot_h)
         << "\" stroke=\"#000000\"/>\n";
    body << "<line x1=\"" << fmt("%.2f", ox) << "\" y1=\"" << fmt("%.2f", oy + plot_h)
         << "\" x2=\"" << fmt("%.2f", ox + plot_w) << "\" y2=\"" << fmt("%.2f", oy + plot_h)
         << "\" stroke=\"#000000\"/>\n";

    const int f = placement.cols();
    const double bar_w = plot_w / f;
    for (int k = 0; k < f; ++k) {
      const double v = placement.eta.at(ref.row, k);
      put_rect(ox + k * bar_w + bar_w * 0.1, oy + plot_h * (1.0 - v), bar_w * 0.8, plot_h * v,
               scheme_color("mpso"));
    }
  }

  const double width = per_row * panel_w + 60.0;
  const double height = panel_rows * panel_h + 60.0;
  std::ofstream out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt("%.0f", width)
      << "\" height=\"" << fmt("%.0f", height) << "\" viewBox=\"0 0 " << fmt("%.0f", width)
      << ' ' << fmt("%.0f", height) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << fmt("%.0f", width) << "\" height=\""
      << fmt("%.0f", height) << "\" fill=\"#ffffff\"/>\n";
  out << "<text x=\"" << fmt("%.2f", width / 2.0)
      << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">"
      << "caching probabilities per node</text>\n";
  out << body.str() << "</svg>\n";
}

}  // namespace edgecache
