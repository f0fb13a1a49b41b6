#include "sensivar/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "sensivar/errors.hpp"
#include "sensivar/io.hpp"
#include "sensivar/rng.hpp"

namespace sensivar {

std::vector<BinnedMean> binned_means(std::span<const double> x, std::span<const double> y,
                                     std::size_t bins) {
    if (x.size() != y.size()) throw AlignmentError("binned means need matched x and y");
    if (bins == 0) throw ConfigError("bin count must be positive");
    double lo = x[0], hi = x[0];
    for (double v : x) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi == lo) hi = lo + 1.0;
    std::vector<double> sums(bins, 0.0);
    std::vector<std::size_t> counts(bins, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto b = static_cast<std::size_t>((x[i] - lo) / (hi - lo) * static_cast<double>(bins));
        if (b >= bins) b = bins - 1;
        sums[b] += y[i];
        counts[b] += 1;
    }
    std::vector<BinnedMean> out;
    for (std::size_t b = 0; b < bins; ++b)
        if (counts[b])
            out.push_back({lo + (static_cast<double>(b) + 0.5) * (hi - lo) /
                                    static_cast<double>(bins),
                           sums[b] / static_cast<double>(counts[b]), counts[b]});
    return out;
}

namespace {

constexpr double kPanelW = 260.0;
constexpr double kPanelH = 220.0;
constexpr double kMargin = 44.0;
constexpr int kPanelsPerRow = 4;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
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

struct Extent {
    double lo = 0.0, hi = 1.0;

    static Extent of(std::span<const double> values, double pad_frac = 0.05) {
        Extent e{values[0], values[0]};
        for (double v : values) {
            e.lo = std::min(e.lo, v);
            e.hi = std::max(e.hi, v);
        }
        if (e.hi == e.lo) e.hi = e.lo + 1.0;
        const double pad = (e.hi - e.lo) * pad_frac;
        e.lo -= pad;
        e.hi += pad;
        return e;
    }

    double frac(double v) const { return (v - lo) / (hi - lo); }
};

// Panel-local coordinates: origin at the top-left of the plot area.
class Panel {
public:
    Panel(std::string& out, std::size_t index, const std::string& id,
          const std::string& title)
        : out_(out) {
        const int col = static_cast<int>(index) % kPanelsPerRow;
        const int row = static_cast<int>(index) / kPanelsPerRow;
        x0_ = kMargin + col * (kPanelW + kMargin);
        y0_ = kMargin + row * (kPanelH + kMargin);
        out_ += "<g class=\"panel\" id=\"" + xml_escape(id) + "\">\n";
        out_ += "<rect x=\"" + num(x0_) + "\" y=\"" + num(y0_) + "\" width=\"" + num(kPanelW) +
                "\" height=\"" + num(kPanelH) +
                "\" fill=\"white\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
        out_ += "<text x=\"" + num(x0_ + kPanelW / 2) + "\" y=\"" + num(y0_ - 8) +
                "\" text-anchor=\"middle\" font-size=\"13\">" + xml_escape(title) +
                "</text>\n";
    }

    ~Panel() { out_ += "</g>\n"; }

    double px(double fx) const { return x0_ + fx * kPanelW; }
    double py(double fy) const { return y0_ + (1.0 - fy) * kPanelH; }

    void circle(double fx, double fy, double r, const std::string& fill,
                double opacity = 1.0) {
        out_ += "<circle cx=\"" + num(px(fx)) + "\" cy=\"" + num(py(fy)) + "\" r=\"" + num(r) +
                "\" fill=\"" + fill + "\" fill-opacity=\"" + num(opacity) + "\"/>\n";
    }

    void line(double fx1, double fy1, double fx2, double fy2, const std::string& stroke,
              double width = 1.0, bool dashed = false) {
        out_ += "<line x1=\"" + num(px(fx1)) + "\" y1=\"" + num(py(fy1)) + "\" x2=\"" +
                num(px(fx2)) + "\" y2=\"" + num(py(fy2)) + "\" stroke=\"" + stroke +
                "\" stroke-width=\"" + num(width) + "\"" +
                (dashed ? " stroke-dasharray=\"5,4\"" : "") + "/>\n";
    }

    void rect(double fx, double fy, double fw, double fh, const std::string& fill,
              double opacity = 1.0) {
        out_ += "<rect x=\"" + num(px(fx)) + "\" y=\"" + num(py(fy + fh)) + "\" width=\"" +
                num(fw * kPanelW) + "\" height=\"" + num(fh * kPanelH) + "\" fill=\"" + fill +
                "\" fill-opacity=\"" + num(opacity) + "\"/>\n";
    }

    void hexagon(double fx, double fy, double radius_px, const std::string& fill,
                 double opacity) {
        out_ += "<polygon points=\"";
        for (int i = 0; i < 6; ++i) {
            const double angle = (60.0 * i + 30.0) * 3.14159265358979323846 / 180.0;
            out_ += num(px(fx) + radius_px * std::cos(angle)) + "," +
                    num(py(fy) + radius_px * std::sin(angle)) + " ";
        }
        out_ += "\" fill=\"" + fill + "\" fill-opacity=\"" + num(opacity) + "\"/>\n";
    }

    void text(double fx, double fy, const std::string& content, int size = 10,
              const std::string& anchor = "middle") {
        out_ += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(py(fy)) + "\" text-anchor=\"" +
                anchor + "\" font-size=\"" + std::to_string(size) + "\">" +
                xml_escape(content) + "</text>\n";
    }

    void axis_labels(const Extent& x, const Extent& y) {
        text(0.0, -0.07, num(x.lo), 9);
        text(1.0, -0.07, num(x.hi), 9);
        text(-0.02, 0.0, num(y.lo), 9, "end");
        text(-0.02, 0.95, num(y.hi), 9, "end");
    }

private:
    std::string& out_;
    double x0_ = 0.0, y0_ = 0.0;
};

std::string svg_open(std::size_t panels) {
    const int rows = static_cast<int>((panels + kPanelsPerRow - 1) / kPanelsPerRow);
    const int cols = static_cast<int>(std::min<std::size_t>(panels, kPanelsPerRow));
    const double width = kMargin + cols * (kPanelW + kMargin);
    const double height = kMargin + rows * (kPanelH + kMargin) + 20;
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           num(width) + "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
           num(height) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

// five-stop gradient from dark violet to yellow
std::string heat_color(double t) {
    static const double stops[5][3] = {{68, 1, 84}, {59, 82, 139}, {33, 145, 140},
                                       {94, 201, 98}, {253, 231, 37}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const int i = std::min(3, static_cast<int>(t));
    const double f = t - i;
    char buf[10];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(stops[i][0] + f * (stops[i + 1][0] - stops[i][0])),
                  static_cast<int>(stops[i][1] + f * (stops[i + 1][1] - stops[i][1])),
                  static_cast<int>(stops[i][2] + f * (stops[i + 1][2] - stops[i][2])));
    return buf;
}

} // namespace

std::string plot_uncertainty(std::span<const double> y_a, std::size_t bins) {
    if (y_a.empty()) throw ConfigError("uncertainty plot needs outputs");
    const Extent ex = Extent::of(y_a, 0.0);
    std::vector<std::size_t> counts(bins, 0);
    for (double v : y_a) {
        auto b = static_cast<std::size_t>(ex.frac(v) * static_cast<double>(bins));
        if (b >= bins) b = bins - 1;
        counts[b] += 1;
    }
    const double peak = static_cast<double>(*std::max_element(counts.begin(), counts.end()));

    std::string out = svg_open(1);
    {
        Panel panel(out, 0, "panel-uncertainty", "output distribution");
        for (std::size_t b = 0; b < bins; ++b) {
            if (!counts[b]) continue;
            panel.rect(static_cast<double>(b) / static_cast<double>(bins), 0.0,
                       1.0 / static_cast<double>(bins) * 0.92,
                       0.95 * static_cast<double>(counts[b]) / peak, "#3b528b", 0.9);
        }
        panel.axis_labels(ex, Extent{0.0, peak});
    }
    return out + "</svg>\n";
}

std::string plot_scatter(const Matrix& a_block, std::span<const double> y_a,
                         const std::vector<std::string>& params, std::size_t bins,
                         ScatterMethod method) {
    if (a_block.rows() != y_a.size())
        throw AlignmentError("scatter plot needs one output per A-block row");
    if (a_block.cols() != params.size())
        throw AlignmentError("scatter plot needs one name per column");

    const Extent ey = Extent::of(y_a);
    std::string out = svg_open(params.size());
    for (std::size_t c = 0; c < params.size(); ++c) {
        const auto x = a_block.column(c);
        const Extent ex = Extent::of(x);
        Panel panel(out, c, "panel-scatter-" + params[c], params[c]);

        if (method == ScatterMethod::points) {
            for (std::size_t r = 0; r < x.size(); ++r)
                panel.circle(ex.frac(x[r]), ey.frac(y_a[r]), 1.3, "#333333", 0.35);
        } else {
            // hexagonal density bins over the panel
            const int nx = 24;
            const double rad = 1.0 / nx;
            std::map<std::pair<int, int>, std::size_t> cells;
            for (std::size_t r = 0; r < x.size(); ++r) {
                const double fx = ex.frac(x[r]);
                const double fy = ey.frac(y_a[r]);
                const int row = static_cast<int>(fy / (rad * 1.5));
                const double shift = (row % 2) ? rad : 0.0;
                const int col = static_cast<int>((fx + shift) / (2.0 * rad));
                cells[{row, col}] += 1;
            }
            double peak = 0.0;
            for (const auto& [cell, count] : cells)
                peak = std::max(peak, static_cast<double>(count));
            for (const auto& [cell, count] : cells) {
                const double shift = (cell.first % 2) ? rad : 0.0;
                const double fx = cell.second * 2.0 * rad - shift + rad;
                const double fy = cell.first * rad * 1.5 + rad * 0.75;
                panel.hexagon(fx, fy, rad * kPanelW,
                              heat_color(static_cast<double>(count) / peak), 0.9);
            }
        }

        for (const auto& bm : binned_means(x, y_a, bins))
            panel.circle(ex.frac(bm.center), ey.frac(bm.mean), 3.0, "#d62728");
        panel.axis_labels(ex, ey);
    }
    return out + "</svg>\n";
}

std::string plot_multiscatter(const Matrix& a_block, std::span<const double> y_a,
                              const std::vector<std::string>& params, std::size_t subsample,
                              std::uint64_t seed) {
    if (a_block.rows() != y_a.size())
        throw AlignmentError("multiscatter plot needs one output per A-block row");
    if (params.size() < 2) throw ConfigError("multiscatter plot needs at least two inputs");

    std::vector<std::size_t> keep(a_block.rows());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
    if (subsample > 0 && subsample < keep.size()) {
        Rng rng(derive_seed(seed, 0x706c6f74));
        for (std::size_t i = 0; i < subsample; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.next_below(keep.size() - i));
            std::swap(keep[i], keep[j]);
        }
        keep.resize(subsample);
    }

    const Extent ey = Extent::of(y_a, 0.0);
    const std::size_t pairs = params.size() * (params.size() - 1) / 2;
    std::string out = svg_open(pairs);
    std::size_t panel_index = 0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        for (std::size_t j = i + 1; j < params.size(); ++j) {
            const auto xi = a_block.column(i);
            const auto xj = a_block.column(j);
            const Extent exi = Extent::of(xi);
            const Extent exj = Extent::of(xj);
            Panel panel(out, panel_index++, "panel-pair-" + params[i] + "." + params[j],
                        params[i] + " vs " + params[j]);
            for (std::size_t r : keep)
                panel.circle(exi.frac(xi[r]), exj.frac(xj[r]), 1.6,
                             heat_color(ey.frac(y_a[r])), 0.8);
            panel.axis_labels(exi, exj);
        }
    }
    return out + "</svg>\n";
}

std::string plot_indices(const IndexTable& table, const IndexTable* dummy) {
    std::vector<const IndexRow*> si, ti, sij;
    for (const auto& row : table.rows) {
        if (row.sensitivity == Sensitivity::Si) si.push_back(&row);
        if (row.sensitivity == Sensitivity::Ti) ti.push_back(&row);
        if (row.sensitivity == Sensitivity::Sij) sij.push_back(&row);
    }
    if (si.empty()) throw ConfigError("index plot needs first-order rows");

    // pairs whose confidence interval excludes zero; all pairs without CIs
    std::vector<const IndexRow*> shown_pairs;
    for (const IndexRow* row : sij)
        if (!row->low_ci || *row->low_ci > 0.0) shown_pairs.push_back(row);

    double hi = 0.0, lo = 0.0;
    auto stretch = [&](const IndexRow* row) {
        hi = std::max(hi, row->high_ci.value_or(row->original));
        lo = std::min(lo, row->low_ci.value_or(row->original));
    };
    for (const auto* row : si) stretch(row);
    for (const auto* row : ti) stretch(row);
    for (const auto* row : shown_pairs) stretch(row);
    if (dummy)
        for (const auto& row : dummy->rows) stretch(&row);
    const Extent ev{lo - 0.02, std::max(hi, 1.0) + 0.02};

    std::string out = svg_open(shown_pairs.empty() ? 1 : 2);
    {
        Panel panel(out, 0, "panel-indices", "first and total-order indices");
        const double slot = 1.0 / static_cast<double>(si.size());
        panel.line(0.0, ev.frac(0.0), 1.0, ev.frac(0.0), "#999999", 0.6);
        for (std::size_t p = 0; p < si.size(); ++p) {
            const double x_si = (static_cast<double>(p) + 0.33) * slot;
            const double x_ti = (static_cast<double>(p) + 0.67) * slot;
            panel.rect(x_si - 0.4 * slot / 3.0, std::min(ev.frac(0.0), ev.frac(si[p]->original)),
                       0.8 * slot / 3.0, std::abs(ev.frac(si[p]->original) - ev.frac(0.0)),
                       "#d62728", 0.8);
            if (p < ti.size())
                panel.rect(x_ti - 0.4 * slot / 3.0,
                           std::min(ev.frac(0.0), ev.frac(ti[p]->original)), 0.8 * slot / 3.0,
                           std::abs(ev.frac(ti[p]->original) - ev.frac(0.0)), "#3b528b", 0.8);
            if (si[p]->low_ci)
                panel.line(x_si, ev.frac(*si[p]->low_ci), x_si, ev.frac(*si[p]->high_ci),
                           "#7a1416", 1.4);
            if (p < ti.size() && ti[p]->low_ci)
                panel.line(x_ti, ev.frac(*ti[p]->low_ci), x_ti, ev.frac(*ti[p]->high_ci),
                           "#1d2e52", 1.4);
            panel.text((static_cast<double>(p) + 0.5) * slot, -0.07, si[p]->parameters, 9);
        }
        if (dummy) {
            for (const auto& row : dummy->rows) {
                const bool is_si = row.sensitivity == Sensitivity::Si;
                panel.line(0.0, ev.frac(row.original), 1.0, ev.frac(row.original),
                           is_si ? "#d62728" : "#3b528b", 1.0, true);
            }
        }
        panel.axis_labels(Extent{0.0, static_cast<double>(si.size())}, ev);
    }
    if (!shown_pairs.empty()) {
        Panel panel(out, 1, "panel-second-order", "second-order indices (CI excludes zero)");
        const double slot = 1.0 / static_cast<double>(shown_pairs.size());
        panel.line(0.0, ev.frac(0.0), 1.0, ev.frac(0.0), "#999999", 0.6);
        for (std::size_t p = 0; p < shown_pairs.size(); ++p) {
            const double x = (static_cast<double>(p) + 0.5) * slot;
            panel.circle(x, ev.frac(shown_pairs[p]->original), 3.2, "#21918c");
            if (shown_pairs[p]->low_ci)
                panel.line(x, ev.frac(*shown_pairs[p]->low_ci), x,
                           ev.frac(*shown_pairs[p]->high_ci), "#21918c", 1.4);
            panel.text(x, -0.07, shown_pairs[p]->parameters, 9);
        }
        panel.axis_labels(Extent{0.0, static_cast<double>(shown_pairs.size())}, ev);
    }
    return out + "</svg>\n";
}

void write_svg(const std::string& svg, const std::string& path) {
    write_text_atomic(path, svg);
}

} // namespace sensivar
