#pragma once

// Integer-lattice dynamics of the Henon maps h_{d,c} and of the limiting map
// h_inf(x, y) = (y, -x + (2/sqrt3) sin(pi y / 3)).

#include "henon/exact.hpp"
#include "henon/family.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

namespace henon {

struct LatticePoint {
    std::int64_t x = 0;
    std::int64_t y = 0;

    std::int64_t sup_norm() const { return std::max(x < 0 ? -x : x, y < 0 ? -y : y); }
    LatticePoint operator-() const { return {-x, -y}; }

    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

inline std::string to_string(const LatticePoint& p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

enum class Orientation {
    standard,      // (x, y) -> (y, -x + s_d(y + c))
    paper_shifted, // (x, y) -> (-y, x + s_d(y + c))
};

inline std::string_view to_string(Orientation o) { return o == Orientation::standard ? "standard" : "paper-shifted"; }

/// Sup-norm at which an orbit is declared escaping. For |c| <= 2 this is
/// (d+7)/2 + |c|; the second term keeps |s_d(y+c)| > 2|y| beyond the
/// threshold for larger shifts.
inline std::int64_t escape_threshold(unsigned d, std::int64_t shift) {
    const std::int64_t a = shift < 0 ? -shift : shift;
    return std::max<std::int64_t>((static_cast<std::int64_t>(d) + 7) / 2 + a, 3 * a + 1);
}

/// Radius of the box that every periodic point's orbit is tested against
/// for the confined count: (d+1)/2 + |c|.
inline std::int64_t core_radius(unsigned d, std::int64_t shift) {
    return (static_cast<std::int64_t>(d) + 1) / 2 + (shift < 0 ? -shift : shift);
}

class HenonMap {
public:
    HenonMap(unsigned d, std::int64_t shift = 0, Orientation orientation = Orientation::standard)
        : d_(check_degree(d)), shift_(shift), orientation_(orientation), threshold_(escape_threshold(d, shift)),
          table_(d, threshold_ + (shift < 0 ? -shift : shift)) {}

    unsigned degree() const { return d_; }
    std::int64_t shift() const { return shift_; }
    Orientation orientation() const { return orientation_; }
    std::int64_t threshold() const { return threshold_; }
    const SdTable& table() const { return table_; }

    LatticePoint step(LatticePoint p) const {
        const std::int64_t s = table_.at(p.y + shift_);
        if (orientation_ == Orientation::standard) return {p.y, -p.x + s};
        return {-p.y, p.x + s};
    }

    LatticePoint inverse_step(LatticePoint p) const {
        if (orientation_ == Orientation::standard) return {table_.at(p.x + shift_) - p.y, p.x};
        return {p.y - table_.at(shift_ - p.x), -p.x};
    }

private:
    static unsigned check_degree(unsigned d) {
        if (d < 3 || d % 2 == 0) throw argument_error("Henon maps h_d require odd d >= 3");
        return d;
    }

    unsigned d_;
    std::int64_t shift_;
    Orientation orientation_;
    std::int64_t threshold_;
    SdTable table_;
};

inline LatticePoint henon_step(const HenonMap& map, LatticePoint p) { return map.step(p); }
inline LatticePoint henon_inverse_step(const HenonMap& map, LatticePoint p) { return map.inverse_step(p); }

struct Periodic {
    std::int64_t period;
    friend bool operator==(const Periodic&, const Periodic&) = default;
};
struct Escapes {
    std::int64_t steps;
    friend bool operator==(const Escapes&, const Escapes&) = default;
};
using Classification = std::variant<Periodic, Escapes>;

/// Maximum number of steps a non-escaping orbit can take before returning.
inline std::int64_t iteration_cap(const HenonMap& map) {
    const std::int64_t side = 2 * map.threshold() + 1;
    return side * side + 1;
}

inline Classification classify(const HenonMap& map, LatticePoint p) {
    const std::int64_t threshold = map.threshold();
    if (p.sup_norm() >= threshold) return Escapes{0};
    const std::int64_t cap = iteration_cap(map);
    LatticePoint q = p;
    for (std::int64_t n = 1; n <= cap; ++n) {
        q = map.step(q);
        if (q.sup_norm() >= threshold) return Escapes{n};
        if (q == p) return Periodic{n};
    }
    throw internal_error("orbit of " + to_string(p) + " neither escaped nor returned within the iteration cap");
}

/// Radius R such that every integer point with sup-norm <= R is periodic
/// under h_d (c = 0).
inline std::int64_t guaranteed_periodic_radius(unsigned d) {
    const std::int64_t half = (static_cast<std::int64_t>(d) + 1) / 2;
    switch (d % 6) {
    case 1: return half;
    case 3: return half - 2;
    default: return half - 3;
    }
}

struct CycleRecord {
    LatticePoint representative; // lexicographically least point
    std::int64_t length = 0;
    std::vector<LatticePoint> points; // starts at the representative, in orbit order
};

struct PeriodicReport {
    unsigned d = 0;
    std::int64_t shift = 0;
    Orientation orientation = Orientation::standard;
    std::int64_t total = 0; // all periodic points
    std::map<std::int64_t, std::int64_t> histogram; // cycle length -> number of cycles
    std::int64_t longest = 0;
    std::int64_t cycle_count = 0;
    std::int64_t confined_radius = 0;
    std::int64_t confined_count = 0; // periodic points whose orbit stays within confined_radius
    std::chrono::milliseconds elapsed{0};
};

struct Enumeration {
    PeriodicReport report;
    std::vector<CycleRecord> cycles; // sorted by representative
};

inline unsigned default_thread_count() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

/// Classifies every integer point with sup-norm below the escape threshold
/// and collects the cycles. For c = 0 it also checks that the guaranteed box
/// is entirely periodic.
inline Enumeration enumerate_periodic(const HenonMap& map, unsigned threads = default_thread_count()) {
    const auto started = std::chrono::steady_clock::now();
    const std::int64_t box = map.threshold() - 1;
    const std::int64_t confined = core_radius(map.degree(), map.shift());
    const std::int64_t cap = iteration_cap(map);

    struct Partial {
        std::int64_t total = 0;
        std::int64_t confined_count = 0;
        std::vector<CycleRecord> cycles;
        std::optional<LatticePoint> violation;
    };

    std::atomic<std::int64_t> next_row{-box};
    auto work = [&](Partial& out) {
        std::vector<LatticePoint> orbit;
        for (std::int64_t x = next_row++; x <= box; x = next_row++) {
            for (std::int64_t y = -box; y <= box; ++y) {
                const LatticePoint p{x, y};
                orbit.clear();
                orbit.push_back(p);
                LatticePoint q = p;
                LatticePoint least = p;
                std::int64_t widest = p.sup_norm();
                bool periodic = false;
                for (std::int64_t n = 1; n <= cap; ++n) {
                    q = map.step(q);
                    const std::int64_t norm = q.sup_norm();
                    if (norm >= map.threshold()) break;
                    if (q == p) {
                        periodic = true;
                        break;
                    }
                    orbit.push_back(q);
                    widest = std::max(widest, norm);
                    least = std::min(least, q);
                    if (n == cap) throw internal_error("iteration cap exceeded at " + to_string(p));
                }
                if (!periodic) {
                    if (map.shift() == 0 && p.sup_norm() <= guaranteed_periodic_radius(map.degree()) && !out.violation)
                        out.violation = p;
                    continue;
                }
                ++out.total;
                if (widest <= confined) ++out.confined_count;
                if (least == p)
                    out.cycles.push_back({p, static_cast<std::int64_t>(orbit.size()), orbit});
            }
        }
    };

    const unsigned worker_count = std::max(1u, threads);
    std::vector<Partial> partials(worker_count);
    if (worker_count == 1) {
        work(partials[0]);
    } else {
        std::vector<std::jthread> workers;
        std::vector<std::exception_ptr> errors(worker_count);
        for (unsigned i = 0; i < worker_count; ++i)
            workers.emplace_back([&, i] {
                try {
                    work(partials[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
        workers.clear();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    Enumeration result;
    PeriodicReport& report = result.report;
    report.d = map.degree();
    report.shift = map.shift();
    report.orientation = map.orientation();
    report.confined_radius = confined;
    std::optional<LatticePoint> violation;
    for (auto& part : partials) {
        report.total += part.total;
        report.confined_count += part.confined_count;
        for (auto& cycle : part.cycles) result.cycles.push_back(std::move(cycle));
        if (part.violation && (!violation || *part.violation < *violation)) violation = part.violation;
    }
    if (violation)
        throw contract_error("point " + to_string(*violation) + " inside the guaranteed periodic box of h_" +
                             std::to_string(map.degree()) + " escapes");
    std::sort(result.cycles.begin(), result.cycles.end(),
              [](const CycleRecord& a, const CycleRecord& b) { return a.representative < b.representative; });
    for (const auto& cycle : result.cycles) {
        ++report.histogram[cycle.length];
        report.longest = std::max(report.longest, cycle.length);
    }
    report.cycle_count = static_cast<std::int64_t>(result.cycles.size());
    report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    return result;
}

inline Enumeration enumerate_periodic(unsigned d, std::int64_t shift = 0,
                                      Orientation orientation = Orientation::standard,
                                      unsigned threads = default_thread_count()) {
    return enumerate_periodic(HenonMap(d, shift, orientation), threads);
}

inline std::int64_t longest_cycle(unsigned d, std::int64_t shift = 0) {
    return enumerate_periodic(d, shift).report.longest;
}

/// |s_d(y + c)| > 2|y| for all threshold <= |y| <= factor * threshold, checked
/// exactly. This is the hypothesis that makes the escape threshold sound.
inline bool verify_escape_threshold(unsigned d, std::int64_t shift, std::int64_t factor = 4) {
    const std::int64_t threshold = escape_threshold(d, shift);
    for (std::int64_t y = threshold; y <= factor * threshold; ++y) {
        for (std::int64_t signed_y : {y, -y}) {
            const Rational s = s_value(d, Rational(static_cast<long>(signed_y + shift)));
            if (abs(s) <= 2 * Rational(static_cast<long>(y))) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Interpolated count / longest-cycle formulas for the shifted maps.

struct TablePrediction {
    Rational count;
    Rational longest;
};

/// The polynomial interpolations reported for 15 <= d <= 299 (|c| <= 2).
inline std::optional<TablePrediction> shift_table_prediction(unsigned d, std::int64_t c) {
    if (d % 2 == 0 || c < -2 || c > 2) return std::nullopt;
    const Rational D(static_cast<long>(d));
    const Rational third = make_rational(1, 3);
    const std::int64_t a = c < 0 ? -c : c;
    switch (d % 6) {
    case 1:
        if (a == 0) return TablePrediction{D * D - 8 * D * third + 56 * third, (8 * D + 10) * third};
        if (a == 1) return TablePrediction{D * D + 2 * D + 4, (10 * D - 7) * third};
        return TablePrediction{D * D - 6 * D + 18, (16 * D - 61) * third};
    case 3:
        if (c == 0) return TablePrediction{D * D + 8, Rational(20)};
        if (c == -1) return TablePrediction{D * D + 4 * D, 8 * D - 39};
        if (c == 1) return TablePrediction{D * D + 4 * D + 1, 8 * D - 39};
        return TablePrediction{D * D - 4 * D + 7, Rational(60)};
    default:
        if (a == 0) return TablePrediction{D * D - 8 * D * third + 40 * third, Rational(20)};
        if (a == 1) return TablePrediction{D * D - 2 * D + 29, (14 * D - 31) * third};
        return TablePrediction{D * D - 22 * D * third + 161 * third, (28 * D - 185) * third};
    }
}

inline bool in_table_range(unsigned d) { return d >= 15 && d <= 299; }

struct SweepRow {
    PeriodicReport report;
    std::optional<TablePrediction> prediction;
    bool count_matches = false;
    bool longest_matches = false;
    bool in_range = false;
};

inline std::vector<SweepRow> sweep(const std::vector<unsigned>& ds, const std::vector<std::int64_t>& cs,
                                   Orientation orientation = Orientation::paper_shifted,
                                   unsigned threads = default_thread_count(),
                                   const std::function<void(const SweepRow&)>& progress = {}) {
    std::vector<SweepRow> rows;
    for (unsigned d : ds) {
        if (d % 2 == 0 || d < 3) throw argument_error("sweep requires odd d >= 3");
        for (std::int64_t c : cs) {
            SweepRow row;
            row.report = enumerate_periodic(d, c, orientation, threads).report;
            row.prediction = shift_table_prediction(d, c);
            row.in_range = in_table_range(d);
            if (row.prediction) {
                row.count_matches = row.prediction->count == Rational(static_cast<long>(row.report.confined_count));
                row.longest_matches = row.prediction->longest == Rational(static_cast<long>(row.report.longest));
            }
            if (progress) progress(row);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// The long cycle for d = 1 mod 6.

/// Start of the long cycle, (R+1, -R+1) with R = (d+1)/2.
inline LatticePoint long_cycle_start(unsigned d) {
    const std::int64_t R = (static_cast<std::int64_t>(d) + 1) / 2;
    return {R + 1, -R + 1};
}

inline std::int64_t long_cycle_length(unsigned d) { return (8 * static_cast<std::int64_t>(d) + 10) / 3; }

/// Admissible y for the eight-step translation: -R+1 <= y <= R-7, y = R-1 mod 6.
inline std::vector<std::int64_t> eight_step_admissible(unsigned d) {
    if (d % 6 != 1) throw argument_error("eight-step translation requires d = 1 mod 6");
    const std::int64_t R = (static_cast<std::int64_t>(d) + 1) / 2;
    std::vector<std::int64_t> out;
    for (std::int64_t y = -R + 1; y <= R - 7; ++y)
        if (((y - (R - 1)) % 6 + 6) % 6 == 0) out.push_back(y);
    return out;
}

/// Checks h_d^8(R+1, y) = (R+1, y+6), step by step against the chain
/// (y,-R-1), (-R-1,-y-2), (-y-2,R), (R,y+3), (y+3,-R), (-R,-y-4), (-y-4,R+1), (R+1,y+6).
inline bool verify_eight_step_translation(unsigned d, std::int64_t y) {
    if (d % 6 != 1) throw argument_error("eight-step translation requires d = 1 mod 6");
    const std::int64_t R = (static_cast<std::int64_t>(d) + 1) / 2;
    if (y < -R + 1 || y > R - 7 || ((y - (R - 1)) % 6 + 6) % 6 != 0)
        throw argument_error("y = " + std::to_string(y) + " is not admissible for d = " + std::to_string(d));
    const HenonMap map(d);
    const LatticePoint chain[8] = {{y, -R - 1}, {-R - 1, -y - 2}, {-y - 2, R},    {R, y + 3},
                                   {y + 3, -R}, {-R, -y - 4},     {-y - 4, R + 1}, {R + 1, y + 6}};
    LatticePoint p{R + 1, y};
    for (const auto& expected : chain) {
        p = map.step(p);
        if (p != expected) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// The limiting map h_inf.

inline LatticePoint hinf_step_exact(LatticePoint p) { return {p.y, -p.x + sigma(p.y)}; }

inline std::int64_t hinf_period(LatticePoint p) {
    LatticePoint q = p;
    for (std::int64_t n = 1; n <= 1000; ++n) {
        q = hinf_step_exact(q);
        if (q == p) return n;
    }
    throw internal_error("h_inf orbit of " + to_string(p) + " did not close within 1000 steps");
}

struct HinfException {
    LatticePoint point;
    std::int64_t period;
};

/// Integer points whose h_inf period is not the one of their residue class.
inline const std::vector<HinfException>& hinf_listed_exceptions() {
    static const std::vector<HinfException> list = {
        {{0, 0}, 1},
        {{2, 0}, 5},   {{2, 1}, 5},   {{1, 2}, 5},  {{0, 2}, 5},  {{-1, 1}, 5},
        {{-2, 0}, 5},  {{-2, -1}, 5}, {{-1, -2}, 5}, {{0, -2}, 5}, {{1, -1}, 5},
        {{1, 0}, 6},   {{1, 1}, 6},   {{0, 1}, 6},  {{-1, 0}, 6}, {{-1, -1}, 6}, {{0, -1}, 6},
    };
    return list;
}

inline std::optional<std::int64_t> hinf_exception_period(LatticePoint p) {
    for (const auto& e : hinf_listed_exceptions())
        if (e.point == p) return e.period;
    return std::nullopt;
}

struct HinfPeriodTable {
    std::int64_t range = 0;
    std::int64_t period[6][6] = {}; // [y mod 6][x mod 6]
    std::vector<HinfException> exceptions; // observed, sorted by point
};

inline int residue6(std::int64_t v) { return static_cast<int>(((v % 6) + 6) % 6); }

/// Periods of all integer points with |x|, |y| <= range. Points outside the
/// listed exceptions must share one period per residue class.
inline HinfPeriodTable hinf_period_table(std::int64_t range) {
    if (range < 6) throw argument_error("h_inf period table requires range >= 6");
    HinfPeriodTable table;
    table.range = range;
    for (std::int64_t x = -range; x <= range; ++x) {
        for (std::int64_t y = -range; y <= range; ++y) {
            const LatticePoint p{x, y};
            const std::int64_t n = hinf_period(p);
            if (auto listed = hinf_exception_period(p)) {
                if (*listed != n)
                    throw contract_error("listed exception " + to_string(p) + " has period " + std::to_string(n));
                table.exceptions.push_back({p, n});
                continue;
            }
            std::int64_t& cell = table.period[residue6(y)][residue6(x)];
            if (cell == 0)
                cell = n;
            else if (cell != n)
                throw contract_error("period of " + to_string(p) + " is " + std::to_string(n) +
                                     ", not the residue-class period " + std::to_string(cell));
        }
    }
    std::sort(table.exceptions.begin(), table.exceptions.end(),
              [](const HinfException& a, const HinfException& b) { return a.point < b.point; });
    return table;
}

/// s_inf(y) = (2/sqrt3) sin(pi y / 3), exactly sigma(y) at integers.
inline double s_inf(double y) {
    if (y == std::floor(y) && std::abs(y) < 9.0e15) return sigma(static_cast<std::int64_t>(y));
    const double r = y - 6.0 * std::floor(y / 6.0);
    return 2.0 / std::sqrt(3.0) * std::sin(std::numbers::pi * r / 3.0);
}

struct RealPoint {
    double x = 0;
    double y = 0;
};

namespace detail {
/// Uniform in [-1, 1) from the top 53 bits of a 64-bit draw.
inline double symmetric_unit(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0;
}
} // namespace detail

/// Float orbit of h_inf from `start` plus a uniform perturbation in
/// [-epsilon, epsilon]^2. Element 0 is the perturbed start.
inline std::vector<RealPoint> hinf_orbit_float(RealPoint start, double epsilon, std::int64_t iterations,
                                               std::uint64_t seed) {
    if (iterations < 1) throw argument_error("iterations must be >= 1");
    std::mt19937_64 gen(seed);
    RealPoint p{start.x + epsilon * detail::symmetric_unit(gen), start.y + epsilon * detail::symmetric_unit(gen)};
    std::vector<RealPoint> out;
    out.reserve(static_cast<std::size_t>(iterations) + 1);
    out.push_back(p);
    for (std::int64_t i = 0; i < iterations; ++i) {
        p = {p.y, -p.x + s_inf(p.y)};
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw domain_error("h_inf float orbit diverged at step " + std::to_string(i + 1));
        out.push_back(p);
    }
    return out;
}

struct AtlasPoint {
    std::int64_t base_x = 0;
    std::int64_t base_y = 0;
    std::int64_t period_class = 0;
    std::int64_t step = 0;
    double x = 0;
    double y = 0;
};

/// Perturbed float orbits of every integer point of [-box, box]^2, each point
/// labelled with the exact h_inf period of its base point. Every `stride`-th
/// step is passed to `sink`. Base point k uses seed + k.
inline void perturbation_atlas(std::int64_t box, double epsilon, std::int64_t iterations, std::uint64_t seed,
                               std::int64_t stride, const std::function<void(const AtlasPoint&)>& sink) {
    if (box < 0) throw argument_error("atlas box must be >= 0");
    if (stride < 1) throw argument_error("stride must be >= 1");
    std::uint64_t k = 0;
    for (std::int64_t x = -box; x <= box; ++x) {
        for (std::int64_t y = -box; y <= box; ++y, ++k) {
            const std::int64_t period = hinf_period({x, y});
            const auto orbit = hinf_orbit_float({static_cast<double>(x), static_cast<double>(y)}, epsilon, iterations,
                                                seed + k);
            for (std::size_t i = 0; i < orbit.size(); i += static_cast<std::size_t>(stride))
                sink({x, y, period, static_cast<std::int64_t>(i), orbit[i].x, orbit[i].y});
        }
    }
}

inline std::vector<AtlasPoint> perturbation_atlas(std::int64_t box, double epsilon, std::int64_t iterations,
                                                  std::uint64_t seed, std::int64_t stride = 1) {
    std::vector<AtlasPoint> out;
    perturbation_atlas(box, epsilon, iterations, seed, stride, [&](const AtlasPoint& p) { out.push_back(p); });
    return out;
}

} // namespace henon
