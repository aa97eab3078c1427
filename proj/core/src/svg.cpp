#include <algorithm>
#include <cmath>
#include <string>

#include "mapgen/analysis.hpp"

namespace mapgen {

namespace {

// Tiny SVG builder. Everything is emitted with integer coordinates so the
// output bytes depend only on the input data.
class SvgDoc {
 public:
  SvgDoc(int width, int height) {
    body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
             std::to_string(width) + "\" height=\"" + std::to_string(height) +
             "\" viewBox=\"0 0 " + std::to_string(width) + " " +
             std::to_string(height) + "\">\n";
    body_ += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) +
             "\" height=\"" + std::to_string(height) + "\" fill=\"white\"/>\n";
  }

  void rect(int x, int y, int w, int h, const std::string& fill) {
    body_ += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
             "\" width=\"" + std::to_string(w) + "\" height=\"" + std::to_string(h) +
             "\" fill=\"" + fill + "\"/>\n";
  }

  void line(int x1, int y1, int x2, int y2) {
    body_ += "<line x1=\"" + std::to_string(x1) + "\" y1=\"" + std::to_string(y1) +
             "\" x2=\"" + std::to_string(x2) + "\" y2=\"" + std::to_string(y2) +
             "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  }

  void text(int x, int y, int size, const std::string& content,
            const std::string& anchor = "start", const std::string& transform = "") {
    body_ += "<text x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
             "\" font-size=\"" + std::to_string(size) +
             "\" font-family=\"sans-serif\" text-anchor=\"" + anchor + "\"";
    if (!transform.empty()) body_ += " transform=\"" + transform + "\"";
    body_ += ">" + content + "</text>\n";
  }

  std::string finish() { return body_ + "</svg>\n"; }

 private:
  std::string body_;
};

std::string gray(double intensity) {
  const int k = 255 - static_cast<int>(std::lround(std::clamp(intensity, 0.0, 1.0) * 225.0));
  return "rgb(" + std::to_string(k) + "," + std::to_string(k) + "," + std::to_string(k) + ")";
}

}  // namespace

std::string render_summary_svg(const std::vector<SummaryRow>& rows) {
  const int bar_w = 14, gap = 6, margin_left = 50, margin_top = 20, margin_bottom = 90;
  const int plot_h = 200;
  const int n = static_cast<int>(rows.size());
  const int width = std::max(320, margin_left + n * (bar_w + gap) + 20);
  const int height = margin_top + plot_h + margin_bottom;

  SvgDoc doc(width, height);
  doc.text(margin_left, margin_top - 6, 12, "solution percentage per configuration");

  // axes with 0/25/50/75/100 ticks
  const int axis_x = margin_left - 8;
  doc.line(axis_x, margin_top, axis_x, margin_top + plot_h);
  doc.line(axis_x, margin_top + plot_h, width - 10, margin_top + plot_h);
  for (int tick = 0; tick <= 100; tick += 25) {
    const int y = margin_top + plot_h - tick * plot_h / 100;
    doc.line(axis_x - 3, y, axis_x, y);
    doc.text(axis_x - 5, y + 3, 8, std::to_string(tick), "end");
  }

  if (rows.empty()) {
    doc.text(width / 2, margin_top + plot_h / 2, 12, "no data", "middle");
    return doc.finish();
  }

  for (int i = 0; i < n; ++i) {
    const SummaryRow& r = rows[i];
    const int h = static_cast<int>(std::lround(r.solution_pct * plot_h / 100.0));
    const int x = margin_left + i * (bar_w + gap);
    const int y = margin_top + plot_h - h;
    doc.rect(x, y, bar_w, h, "#4878a8");
    const std::string label =
        r.key.label() + "/" + objective_name(r.key.objective);
    const int lx = x + bar_w / 2;
    const int ly = margin_top + plot_h + 10;
    doc.text(lx, ly, 8, label, "end",
             "rotate(-60 " + std::to_string(lx) + " " + std::to_string(ly) + ")");
  }
  return doc.finish();
}

std::string render_expressive_svg(const ExpressiveTable& table) {
  const int cell = 5;
  const int title_h = 26, pad = 14, label_h = 14;
  const int plot_w = std::max(1, table.bins_x) * cell;
  const int plot_h = std::max(1, table.bins_y) * cell;
  const int tile_w = plot_w + pad * 2;
  const int tile_h = plot_h + title_h + label_h + pad;
  const int per_row = 4;
  const int n = static_cast<int>(table.configs.size());
  const int rows = n == 0 ? 1 : (n + per_row - 1) / per_row;
  const int width = std::max(360, per_row * tile_w + pad);
  const int height = 30 + rows * tile_h + pad;

  SvgDoc doc(width, height);
  std::string heading = std::string("expressive range, driving objective: ") +
                        objective_name(table.driving) + " (" + table.x_metric + " vs " +
                        table.y_metric + ")";
  doc.text(pad, 18, 12, heading);

  if (n == 0) {
    const int ox = pad * 2, oy = 40;
    doc.line(ox, oy, ox, oy + plot_h);
    doc.line(ox, oy + plot_h, ox + plot_w, oy + plot_h);
    doc.text(ox + plot_w / 2, oy + plot_h / 2, 12, "no data", "middle");
    return doc.finish();
  }

  std::int64_t max_count = 1;
  for (const auto& cfg : table.configs)
    for (std::int64_t c : cfg.counts) max_count = std::max(max_count, c);
  const double log_max = std::log1p(static_cast<double>(max_count));

  for (int i = 0; i < n; ++i) {
    const auto& cfg = table.configs[i];
    const int ox = pad + (i % per_row) * tile_w;
    const int oy = 30 + (i / per_row) * tile_h + title_h;

    doc.text(ox, oy - 8, 10, cfg.key.label() + "  (n=" + std::to_string(cfg.total) + ")");
    doc.rect(ox, oy, plot_w, plot_h, "#f4f4f4");

    for (int y = 0; y < table.bins_y; ++y) {
      for (int x = 0; x < table.bins_x; ++x) {
        const std::int64_t c = cfg.counts[static_cast<std::size_t>(y) * table.bins_x + x];
        if (c == 0) continue;
        const double intensity = std::log1p(static_cast<double>(c)) / log_max;
        // y axis grows upward: bin 0 at the bottom
        doc.rect(ox + x * cell, oy + (table.bins_y - 1 - y) * cell, cell, cell,
                 gray(intensity));
      }
    }
    doc.line(ox, oy, ox, oy + plot_h);
    doc.line(ox, oy + plot_h, ox + plot_w, oy + plot_h);
    doc.text(ox + plot_w / 2, oy + plot_h + 10, 8, table.x_metric, "middle");
    doc.text(ox - 4, oy + plot_h / 2, 8, table.y_metric, "middle",
             "rotate(-90 " + std::to_string(ox - 4) + " " +
                 std::to_string(oy + plot_h / 2) + ")");
  }
  return doc.finish();
}

}  // namespace mapgen
