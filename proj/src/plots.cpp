#include "mescale/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mescale/error.hpp"
#include "mescale/text.hpp"

namespace mescale {

namespace fs = std::filesystem;

PlotKind plot_kind_from_string(std::string_view text) {
    if (text == "sobol") return PlotKind::Sobol;
    if (text == "oat") return PlotKind::Oat;
    if (text == "ranking") return PlotKind::Ranking;
    if (text == "surface") return PlotKind::Surface;
    throw ValidationError("unknown plot kind '" + std::string(text) + "'");
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
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

// Minimal SVG document with a plotting frame and linear axis mapping.
class Svg {
public:
    Svg(double width, double height) : width_(width), height_(height) {}

    void set_frame(double left, double top, double right, double bottom) {
        left_ = left;
        top_ = top;
        right_ = width_ - right;
        bottom_ = height_ - bottom;
    }
    void set_range(double x0, double x1, double y0, double y1) {
        if (x1 == x0) {
            x0 -= 0.5;
            x1 += 0.5;
        }
        if (y1 == y0) {
            const double pad = y0 == 0.0 ? 1.0 : std::abs(y0) * 0.05;
            y0 -= pad;
            y1 += pad;
        }
        x0_ = x0;
        x1_ = x1;
        y0_ = y0;
        y1_ = y1;
    }
    double px(double x) const { return left_ + (x - x0_) / (x1_ - x0_) * (right_ - left_); }
    double py(double y) const { return bottom_ - (y - y0_) / (y1_ - y0_) * (bottom_ - top_); }
    double frame_left() const { return left_; }
    double frame_right() const { return right_; }
    double frame_top() const { return top_; }
    double frame_bottom() const { return bottom_; }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double w = 1.0) {
        body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
              << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(w) << "\"/>\n";
    }
    void rect(double x, double y, double w, double h, const std::string& fill, const std::string& title = {},
              const std::string& cls = {}) {
        body_ << "<rect";
        if (!cls.empty()) {
            body_ << " class=\"" << cls << "\"";
        }
        body_ << " x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(std::max(0.0, w))
              << "\" height=\"" << num(std::max(0.0, h)) << "\" fill=\"" << fill << "\"";
        if (title.empty()) {
            body_ << "/>\n";
        } else {
            body_ << "><title>" << escape(title) << "</title></rect>\n";
        }
    }
    void circle(double x, double y, double r, const std::string& fill) {
        body_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r) << "\" fill=\"" << fill
              << "\"/>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke) {
        body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            body_ << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
        }
        body_ << "\"/>\n";
    }
    void text(double x, double y, const std::string& s, const std::string& anchor = "middle", int size = 12,
              double rotate = 0.0) {
        body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size
              << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\"";
        if (rotate != 0.0) {
            body_ << " transform=\"rotate(" << num(rotate) << ' ' << num(x) << ' ' << num(y) << ")\"";
        }
        body_ << ">" << escape(s) << "</text>\n";
    }

    // Frame with `ticks` labelled y ticks; x ticks are left to the caller.
    void y_axis(int ticks, const std::string& title) {
        line(left_, top_, left_, bottom_, "#000");
        line(left_, bottom_, right_, bottom_, "#000");
        for (int t = 0; t <= ticks; ++t) {
            const double v = y0_ + (y1_ - y0_) * t / ticks;
            const double y = py(v);
            line(left_ - 4, y, left_, y, "#000");
            line(left_, y, right_, y, "#e0e0e0", 0.5);
            text(left_ - 6, y + 4, label(v), "end", 10);
        }
        text(16, (top_ + bottom_) / 2, title, "middle", 12, -90);
    }

    void save(const fs::path& path) const {
        std::ofstream out(path);
        if (!out) {
            throw std::runtime_error("cannot write " + path.string());
        }
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_) << "\" height=\"" << num(height_)
            << "\" viewBox=\"0 0 " << num(width_) << ' ' << num(height_) << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n"
            << body_.str() << "</svg>\n";
    }

private:
    double width_, height_;
    double left_ = 0, top_ = 0, right_ = 0, bottom_ = 0;
    double x0_ = 0, x1_ = 1, y0_ = 0, y1_ = 1;
    std::ostringstream body_;
};

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
        }
        out << '\n';
    }
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    }
}

// Light yellow to dark blue.
std::string ramp(double t) {
    t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
    const double r = 255 + (8 - 255) * t;
    const double g = 247 + (48 - 247) * t;
    const double b = 188 + (107 - 188) * t;
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(r)), static_cast<int>(std::lround(g)),
                  static_cast<int>(std::lround(b)));
    return buf;
}

}  // namespace

std::vector<fs::path> plot_sobol(const SobolResult& result, const fs::path& out_dir) {
    ensure_dir(out_dir);
    std::vector<fs::path> written;
    for (const auto& [metric, idx] : result.metrics) {
        const std::size_t k = idx.factors.size();
        double hi = 1.0;
        double lo = 0.0;
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < k; ++i) {
            hi = std::max({hi, idx.s1[i] + idx.s1_conf[i], idx.st[i] + idx.st_conf[i]});
            lo = std::min({lo, idx.s1[i] - idx.s1_conf[i], idx.st[i] - idx.st_conf[i]});
            rows.push_back({idx.factors[i], format_double(idx.s1[i]), format_double(idx.s1_conf[i]),
                            format_double(idx.st[i]), format_double(idx.st_conf[i])});
        }
        Svg svg(120.0 + 90.0 * static_cast<double>(k), 360);
        svg.set_frame(60, 40, 20, 70);
        svg.set_range(0, static_cast<double>(k), lo, hi);
        svg.y_axis(5, "index");
        svg.text((svg.frame_left() + svg.frame_right()) / 2, 22, "Sobol indices: " + metric, "middle", 14);
        svg.line(svg.frame_left(), svg.py(0), svg.frame_right(), svg.py(0), "#000");
        const double slot = svg.px(1) - svg.px(0);
        const double bar = slot * 0.32;
        for (std::size_t i = 0; i < k; ++i) {
            const double x0 = svg.px(static_cast<double>(i)) + slot * 0.16;
            const std::pair<double, double> vals[] = {{idx.s1[i], idx.s1_conf[i]}, {idx.st[i], idx.st_conf[i]}};
            for (int b = 0; b < 2; ++b) {
                const double x = x0 + b * bar;
                const auto [v, c] = vals[b];
                const double top = svg.py(std::max(v, 0.0));
                const double bottom = svg.py(std::min(v, 0.0));
                svg.rect(x, top, bar, bottom - top, kPalette[b], (b ? "ST " : "S1 ") + label(v) + " +/- " + label(c),
                         b ? "bar st" : "bar s1");
                const double cx = x + bar / 2;
                svg.line(cx, svg.py(v - c), cx, svg.py(v + c), "#000", 1.2);
                svg.line(cx - 5, svg.py(v - c), cx + 5, svg.py(v - c), "#000", 1.2);
                svg.line(cx - 5, svg.py(v + c), cx + 5, svg.py(v + c), "#000", 1.2);
            }
            svg.text(svg.px(static_cast<double>(i) + 0.5), svg.frame_bottom() + 18, idx.factors[i], "middle", 11);
        }
        const double ly = svg.frame_bottom() + 45;
        svg.rect(svg.frame_left(), ly - 10, 12, 12, kPalette[0]);
        svg.text(svg.frame_left() + 16, ly, "S1", "start", 11);
        svg.rect(svg.frame_left() + 50, ly - 10, 12, 12, kPalette[1]);
        svg.text(svg.frame_left() + 66, ly, "ST", "start", 11);

        const fs::path svg_path = out_dir / ("sobol_" + metric + ".svg");
        const fs::path csv_path = out_dir / ("sobol_" + metric + ".csv");
        svg.save(svg_path);
        write_csv(csv_path, {"factor", "s1", "s1_conf", "st", "st_conf"}, rows);
        written.push_back(svg_path);
        written.push_back(csv_path);
    }
    return written;
}

std::vector<fs::path> plot_oat(const OatRanking& ranking, const fs::path& out_dir) {
    ensure_dir(out_dir);
    std::vector<fs::path> written;
    static const char* kLevels[] = {"min", "base", "max"};
    for (const auto& m : ranking.per_metric) {
        // Keep factor order stable (input order) rather than rank order.
        std::vector<const OatFactorScore*> scores;
        for (const auto& f : ranking.factors) {
            for (const auto& s : m.scores) {
                if (s.factor == f) {
                    scores.push_back(&s);
                }
            }
        }
        double lo = INFINITY;
        double hi = -INFINITY;
        std::vector<std::vector<std::string>> rows;
        for (const auto* s : scores) {
            for (int l = 0; l < 3; ++l) {
                const double v = s->values[l];
                if (std::isfinite(v)) {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                rows.push_back({s->factor, kLevels[l], std::isfinite(v) ? format_double(v) : ""});
            }
        }
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        Svg svg(560, 380);
        svg.set_frame(70, 40, 170, 50);
        svg.set_range(0, 2, lo, hi);
        svg.y_axis(5, m.metric);
        svg.text((svg.frame_left() + svg.frame_right()) / 2, 22, "OAT: " + m.metric, "middle", 14);
        for (int l = 0; l < 3; ++l) {
            svg.text(svg.px(l), svg.frame_bottom() + 18, kLevels[l], "middle", 11);
        }
        for (std::size_t f = 0; f < scores.size(); ++f) {
            const std::string color = kPalette[f % std::size(kPalette)];
            std::vector<std::pair<double, double>> pts;
            for (int l = 0; l < 3; ++l) {
                if (std::isfinite(scores[f]->values[l])) {
                    pts.emplace_back(svg.px(l), svg.py(scores[f]->values[l]));
                    svg.circle(pts.back().first, pts.back().second, 3, color);
                }
            }
            svg.polyline(pts, color);
            const double ly = svg.frame_top() + 16.0 * static_cast<double>(f);
            svg.line(svg.frame_right() + 12, ly - 4, svg.frame_right() + 30, ly - 4, color, 2);
            svg.text(svg.frame_right() + 34, ly, scores[f]->factor, "start", 11);
        }
        const fs::path svg_path = out_dir / ("oat_" + m.metric + ".svg");
        const fs::path csv_path = out_dir / ("oat_" + m.metric + ".csv");
        svg.save(svg_path);
        write_csv(csv_path, {"factor", "level", "value"}, rows);
        written.push_back(svg_path);
        written.push_back(csv_path);
    }
    return written;
}

std::vector<fs::path> plot_ranking(const OatRanking& ranking, const fs::path& out_dir) {
    ensure_dir(out_dir);
    const std::size_t nf = ranking.factors.size();
    const std::size_t nm = ranking.per_metric.size();
    const double cell_w = 90;
    const double cell_h = 28;
    const double left = 170;
    const double top = 110;
    Svg svg(left + cell_w * static_cast<double>(nm + 1) + 20, top + cell_h * static_cast<double>(nf) + 30);
    svg.text(left, 22, "OAT factor ranking (1 = most influential)", "start", 14);

    std::vector<std::vector<std::string>> rows;
    const double worst = static_cast<double>(std::max<std::size_t>(nf, 2) - 1);
    for (std::size_t f = 0; f < nf; ++f) {
        const std::string& factor = ranking.aggregate_order[f];
        const double y = top + cell_h * static_cast<double>(f);
        svg.text(left - 8, y + cell_h / 2 + 4, factor, "end", 11);
        for (std::size_t m = 0; m <= nm; ++m) {
            const bool aggregate = m == nm;
            const double rank = aggregate ? ranking.mean_rank.at(factor)
                                          : static_cast<double>(ranking.rank_of(ranking.per_metric[m].metric, factor));
            const double t = 1.0 - (rank - 1.0) / worst;
            const double x = left + cell_w * static_cast<double>(m);
            svg.rect(x, y, cell_w - 2, cell_h - 2, ramp(t));
            svg.text(x + cell_w / 2, y + cell_h / 2 + 4, label(rank), "middle", 11);
            if (!aggregate) {
                double score = 0.0;
                for (const auto& s : ranking.per_metric[m].scores) {
                    if (s.factor == factor) {
                        score = s.score;
                    }
                }
                rows.push_back({factor, ranking.per_metric[m].metric, format_double(rank), format_double(score)});
            } else {
                rows.push_back({factor, "mean_rank", format_double(rank), ""});
            }
        }
    }
    for (std::size_t m = 0; m <= nm; ++m) {
        const double x = left + cell_w * (static_cast<double>(m) + 0.5);
        svg.text(x, top - 8, m == nm ? "mean rank" : ranking.per_metric[m].metric, "start", 11, -40);
    }
    const fs::path svg_path = out_dir / "ranking.svg";
    const fs::path csv_path = out_dir / "ranking.csv";
    svg.save(svg_path);
    write_csv(csv_path, {"factor", "metric", "rank", "score"}, rows);
    return {svg_path, csv_path};
}

std::vector<fs::path> plot_surface(const MetaModelFit& fit, const fs::path& out_dir, std::size_t points) {
    ensure_dir(out_dir);
    const MetaModel& model = fit.model;
    std::vector<std::vector<double>> grid;
    if (points > 0 || fit.grid_points.size() != model.axes.size()) {
        grid = axis_points(model, points > 0 ? points : 8);
    } else {
        grid = fit.grid_points;
    }
    const auto rows = surface(model, grid);
    const std::string metric = fit.metric.empty() ? "y" : fit.metric;

    std::vector<std::string> header;
    for (const auto& a : model.axes) {
        header.push_back(a.name);
    }
    header.push_back(metric);
    std::vector<std::vector<std::string>> csv_rows;
    double lo = INFINITY;
    double hi = -INFINITY;
    for (const auto& r : rows) {
        std::vector<std::string> cells;
        for (double v : r) {
            cells.push_back(format_double(v));
        }
        csv_rows.push_back(std::move(cells));
        lo = std::min(lo, r.back());
        hi = std::max(hi, r.back());
    }

    const std::string title = "Meta-model (degree " + std::to_string(model.degree) + "): " + metric;
    Svg svg(560, 400);
    if (model.axes.size() == 1) {
        svg.set_frame(80, 40, 20, 50);
        svg.set_range(model.axes[0].lo, model.axes[0].hi, lo, hi);
        svg.y_axis(5, metric);
        svg.text((svg.frame_left() + svg.frame_right()) / 2, 22, title, "middle", 14);
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : rows) {
            pts.emplace_back(svg.px(r[0]), svg.py(r[1]));
        }
        svg.polyline(pts, kPalette[0]);
        for (const auto& [x, y] : pts) {
            svg.circle(x, y, 3, kPalette[0]);
        }
        for (const double v : grid[0]) {
            svg.text(svg.px(v), svg.frame_bottom() + 16, label(v), "middle", 10);
        }
        svg.text((svg.frame_left() + svg.frame_right()) / 2, svg.frame_bottom() + 38, model.axes[0].name);
    } else {
        svg.set_frame(80, 40, 110, 60);
        const auto& gx = grid[0];
        const auto& gy = grid[1];
        svg.set_range(0, static_cast<double>(gx.size()), 0, static_cast<double>(gy.size()));
        svg.text((svg.frame_left() + svg.frame_right()) / 2, 22, title, "middle", 14);
        const double span = hi > lo ? hi - lo : 1.0;
        for (std::size_t i = 0; i < gx.size(); ++i) {
            for (std::size_t j = 0; j < gy.size(); ++j) {
                const double v = rows[i * gy.size() + j][2];
                const double x0 = svg.px(static_cast<double>(i));
                const double y0 = svg.py(static_cast<double>(j + 1));
                svg.rect(x0, y0, svg.px(1) - svg.px(0), svg.py(0) - svg.py(1), ramp((v - lo) / span),
                         label(gx[i]) + ", " + label(gy[j]) + ": " + label(v), "cell");
            }
        }
        for (std::size_t i = 0; i < gx.size(); ++i) {
            svg.text(svg.px(static_cast<double>(i) + 0.5), svg.frame_bottom() + 16, label(gx[i]), "middle", 10);
        }
        for (std::size_t j = 0; j < gy.size(); ++j) {
            svg.text(svg.frame_left() - 6, svg.py(static_cast<double>(j) + 0.5) + 4, label(gy[j]), "end", 10);
        }
        svg.text((svg.frame_left() + svg.frame_right()) / 2, svg.frame_bottom() + 40, model.axes[0].name);
        svg.text(16, (svg.frame_top() + svg.frame_bottom()) / 2, model.axes[1].name, "middle", 12, -90);
        // Colour bar.
        const double bx = svg.frame_right() + 20;
        for (int s = 0; s < 20; ++s) {
            const double h = (svg.frame_bottom() - svg.frame_top()) / 20.0;
            svg.rect(bx, svg.frame_bottom() - h * (s + 1), 16, h + 0.5, ramp((s + 0.5) / 20.0));
        }
        svg.text(bx + 20, svg.frame_top() + 4, label(hi), "start", 10);
        svg.text(bx + 20, svg.frame_bottom(), label(lo), "start", 10);
    }
    const fs::path svg_path = out_dir / ("surface_" + metric + ".svg");
    const fs::path csv_path = out_dir / ("surface_" + metric + ".csv");
    svg.save(svg_path);
    write_csv(csv_path, header, csv_rows);
    return {svg_path, csv_path};
}

std::vector<fs::path> emit_plots(PlotKind kind, const fs::path& input, const fs::path& out_dir) {
    const nlohmann::json j = read_json_file(input);
    switch (kind) {
        case PlotKind::Sobol:
            return plot_sobol(sobol_result_from_json(j), out_dir);
        case PlotKind::Oat:
            return plot_oat(oat_ranking_from_json(j), out_dir);
        case PlotKind::Ranking:
            return plot_ranking(oat_ranking_from_json(j), out_dir);
        case PlotKind::Surface:
            return plot_surface(metamodel_fit_from_json(j), out_dir);
    }
    throw ValidationError("unknown plot kind");
}

}  // namespace mescale
