#pragma once

// Serialization of reports: JSON for bound reports and cycles, CSV for
// periodic summaries and trajectory clouds, and a small SVG scatter renderer.

#include "henon/analysis.hpp"
#include "henon/dynamics.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace henon {

using nlohmann::json;

/// 17 significant digits, enough to round-trip a double.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline json to_json(const BoundReport& r) {
    json j{{"lemma", std::string(to_string(r.kind))},
           {"d", r.d},
           {"grid", {{"spec", r.grid_spec}, {"points", r.grid.size()}}},
           {"worst_margin", to_string(r.worst_margin)},
           {"worst_point", to_string(r.worst_point)},
           {"strict", r.strict},
           {"pass", r.pass}};
    if (r.kind == BoundKind::padic_escape) j["prime"] = r.prime;
    return j;
}

inline json to_json(const LatticePoint& p) { return json::array({p.x, p.y}); }

inline json to_json(const CycleRecord& c) {
    json points = json::array();
    for (const auto& p : c.points) points.push_back(to_json(p));
    return {{"representative", to_json(c.representative)}, {"length", c.length}, {"points", std::move(points)}};
}

inline json to_json(const PeriodicReport& r) {
    json hist = json::object();
    for (const auto& [length, count] : r.histogram) hist[std::to_string(length)] = count;
    return {{"d", r.d},
            {"c", r.shift},
            {"orientation", std::string(to_string(r.orientation))},
            {"count", r.confined_count},
            {"confined_radius", r.confined_radius},
            {"total_periodic", r.total},
            {"longest_cycle", r.longest},
            {"n_cycles", r.cycle_count},
            {"histogram", std::move(hist)}};
}

inline json to_json(const ConvergenceReport& r) {
    return {{"k", r.ks},
            {"sine_error", r.sine_error},
            {"sine_derivative_error", r.sine_deriv_error},
            {"cosine_error", r.cosine_error},
            {"cosine_derivative_error", r.cosine_deriv_error},
            {"grid", {{"lo", r.lo}, {"hi", r.hi}, {"step", r.step}}},
            {"tolerance", r.tolerance},
            {"pass", r.pass}};
}

inline constexpr const char* periodic_csv_header = "d,d_mod_6,c,count,longest_cycle,n_cycles,elapsed_ms,total_periodic";

/// One CSV row; `count` is the confined count and `total_periodic` counts
/// every periodic point. elapsed_ms is written as 0 unless `with_timing`.
inline std::string periodic_csv_row(const PeriodicReport& r, bool with_timing) {
    return std::to_string(r.d) + "," + std::to_string(r.d % 6) + "," + std::to_string(r.shift) + "," +
           std::to_string(r.confined_count) + "," + std::to_string(r.longest) + "," + std::to_string(r.cycle_count) +
           "," + std::to_string(with_timing ? r.elapsed.count() : 0) + "," + std::to_string(r.total);
}

inline constexpr const char* atlas_csv_header = "base_x,base_y,period_class,step,x,y";

inline std::string atlas_csv_row(const AtlasPoint& p) {
    return std::to_string(p.base_x) + "," + std::to_string(p.base_y) + "," + std::to_string(p.period_class) + "," +
           std::to_string(p.step) + "," + format_double(p.x) + "," + format_double(p.y);
}

/// Fixed palette keyed by h_inf period class.
inline std::string period_colour(std::int64_t period) {
    switch (period) {
    case 1: return "#ff1a1a";
    case 4: return "#5a0000";
    case 5: return "#1f8f2f";
    case 6: return "#1a75ff";
    case 12: return "#0b2a6b";
    case 20: return "#9acd32";
    default: return "#808080";
    }
}

/// Minimal scatter plot: one circle per point, coloured by period class.
class SvgScatter {
public:
    SvgScatter(double lo, double hi, int pixels = 800) : lo_(lo), hi_(hi), pixels_(pixels) {}

    void add(double x, double y, std::int64_t period_class) {
        if (x < lo_ || x > hi_ || y < lo_ || y > hi_) return;
        points_.push_back({x, y, period_class});
    }

    void write(std::ostream& os) const {
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels_ << "\" height=\"" << pixels_
           << "\" viewBox=\"0 0 " << pixels_ << " " << pixels_ << "\">\n";
        os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        const double scale = pixels_ / (hi_ - lo_);
        char buf[160];
        for (const auto& p : points_) {
            std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"0.6\" fill=\"%s\"/>\n",
                          (p.x - lo_) * scale, (hi_ - p.y) * scale, period_colour(p.period).c_str());
            os << buf;
        }
        os << "</svg>\n";
    }

    std::size_t size() const { return points_.size(); }

private:
    struct Dot {
        double x, y;
        std::int64_t period;
    };
    double lo_, hi_;
    int pixels_;
    std::vector<Dot> points_;
};

} // namespace henon
