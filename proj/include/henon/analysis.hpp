#pragma once

// Exact checks of the estimates on c_d / s_d, escape radii of r_d at every
// place, the preperiodic set of r_d, and compression optimality searches.
//
// Every inequality is decided in exact rational arithmetic on a rational grid;
// a grid check is evidence over finitely many points, not a proof.

#include "henon/exact.hpp"
#include "henon/family.hpp"
#include "henon/polynomial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace henon {

enum class BoundKind { cd_sup, cd_sup_inner, cd_deriv, cd_deriv_inner, tail_growth, monotone, real_escape, padic_escape };

inline std::string_view to_string(BoundKind kind) {
    switch (kind) {
    case BoundKind::cd_sup: return "cd_sup";
    case BoundKind::cd_sup_inner: return "cd_sup_inner";
    case BoundKind::cd_deriv: return "cd_deriv";
    case BoundKind::cd_deriv_inner: return "cd_deriv_inner";
    case BoundKind::tail_growth: return "tail_growth";
    case BoundKind::monotone: return "monotone";
    case BoundKind::real_escape: return "real_escape";
    case BoundKind::padic_escape: return "padic_escape";
    }
    return "unknown";
}

/// Outcome of checking one inequality over a finite set of rational points.
///
/// `worst_margin` is the minimum of (bound - observed) over the grid; a strict
/// inequality passes iff the margin is positive, a non-strict one iff it is
/// non-negative.
struct BoundReport {
    BoundKind kind{};
    unsigned d = 0;
    std::int64_t prime = 0; // padic_escape only
    std::vector<Rational> grid;
    std::string grid_spec;
    Rational worst_margin = 0;
    Rational worst_point = 0;
    bool strict = false;
    bool pass = false;
};

namespace detail {

inline void finish(BoundReport& report) {
    report.pass = report.strict ? report.worst_margin > 0 : report.worst_margin >= 0;
}

/// Records `margin` at `x` if it is the smallest so far.
inline void observe(BoundReport& report, const Rational& x, const Rational& margin, bool first) {
    if (first || margin < report.worst_margin) {
        report.worst_margin = margin;
        report.worst_point = x;
    }
}

inline std::vector<Rational> grid_points(const Rational& lo, const Rational& hi, const Rational& step) {
    std::vector<Rational> out;
    for (Rational x = lo; x <= hi; x += step) out.push_back(x);
    return out;
}

inline void require_unit_fraction(const Rational& step) {
    if (step <= 0 || step.get_num() != 1) throw argument_error("grid step must be 1/n for a positive integer n");
}

/// 2 * atanh(z) truncated after `terms` terms, with the remainder bound.
inline std::pair<Rational, Rational> log_via_atanh(const Rational& z, int terms) {
    Rational sum = 0;
    Rational power = z;
    const Rational z2 = z * z;
    for (int i = 0; i < terms; ++i) {
        sum += power / Rational(2 * i + 1);
        power *= z2;
    }
    // Remaining terms are bounded by a geometric series in z^2.
    const Rational tail = power / (Rational(2 * terms + 1) * (1 - z2));
    return {2 * sum, 2 * (sum + tail)};
}

} // namespace detail

/// Certified enclosure [lower, upper] of log(n), n >= 1.
inline std::pair<Rational, Rational> log_enclosure(unsigned long n) {
    if (n < 1) throw argument_error("log of a non-positive integer");
    constexpr int terms = 24;
    const auto [ln2_lo, ln2_hi] = detail::log_via_atanh(make_rational(1, 3), terms);
    unsigned long k = 0;
    while ((1UL << (k + 1)) <= n) ++k;
    const Rational y = make_rational(static_cast<long>(n), 1L << k); // in [1, 2)
    const auto [lny_lo, lny_hi] = detail::log_via_atanh((y - 1) / (y + 1), terms);
    return {Rational(k) * ln2_lo + lny_lo, Rational(k) * ln2_hi + lny_hi};
}

inline Rational log_lower_bound(unsigned long n) { return log_enclosure(n).first; }
inline Rational log_upper_bound(unsigned long n) { return log_enclosure(n).second; }

/// c_d'(x) from the product rule over the roots of c_d, using prefix and
/// suffix products so the cost is linear in d.
inline Rational c_derivative_value(unsigned d, const Rational& x) {
    if (d == 0) return 0;
    const Rational center = make_rational(static_cast<long>(d) - 1, 2);
    std::vector<Rational> factors(d);
    for (unsigned i = 0; i < d; ++i) factors[i] = x - (center - Rational(i));
    std::vector<Rational> suffix(d + 1);
    suffix[d] = 1;
    for (unsigned i = d; i-- > 0;) suffix[i] = suffix[i + 1] * factors[i];
    Rational prefix = 1;
    Rational sum = 0;
    for (unsigned j = 0; j < d; ++j) {
        sum += prefix * suffix[j + 1];
        prefix *= factors[j];
    }
    return sum / Rational(factorial(d));
}

/// Which identity to test. `literal` is s_d(m) = sigma(m + 3(d-1)/2) as stated;
/// it holds for odd d only. `parity_signed` multiplies the right side by
/// (-1)^(d+1), which holds for every d >= 1.
enum class SigmaConvention { literal, parity_signed };

/// Exact check of the sigma identity for m = -(d+1)/2, ..., (d+1)/2
/// (half-integers for even d). Returns the first failing m, if any.
inline std::optional<Rational> verify_sigma_agreement(unsigned d,
                                                      SigmaConvention convention = SigmaConvention::literal) {
    if (d < 1) throw argument_error("sigma agreement requires d >= 1");
    const Rational half_range = make_rational(static_cast<long>(d) + 1, 2);
    const Rational offset = make_rational(3 * (static_cast<long>(d) - 1), 2);
    const int sign = convention == SigmaConvention::parity_signed && d % 2 == 0 ? -1 : 1;
    for (Rational m = -half_range; m <= half_range; m += 1) {
        const Rational arg = m + offset;
        if (!is_integer(arg)) throw internal_error("sigma argument is not an integer");
        if (s_value(d, m) != sign * sigma(arg.get_num().get_si())) return m;
    }
    return std::nullopt;
}

inline BoundReport verify_cd_bounds(unsigned d, BoundKind kind, const Rational& step = make_rational(1, 4)) {
    if (d < 2) throw argument_error("c_d bounds require d >= 2");
    detail::require_unit_fraction(step);
    const bool inner = kind == BoundKind::cd_sup_inner || kind == BoundKind::cd_deriv_inner;
    const bool derivative = kind == BoundKind::cd_deriv || kind == BoundKind::cd_deriv_inner;
    if (!derivative && kind != BoundKind::cd_sup && kind != BoundKind::cd_sup_inner)
        throw argument_error("not a c_d bound: " + std::string(to_string(kind)));
    if (inner && d < 3) throw argument_error("inner c_d bounds require d >= 3");

    const Rational dd(d);
    const Rational log_d = log_lower_bound(d);
    Rational bound;
    switch (kind) {
    case BoundKind::cd_sup: bound = 1 / (4 * dd); break;
    case BoundKind::cd_sup_inner: bound = 1 / (2 * dd * (dd - 1)); break;
    case BoundKind::cd_deriv: bound = (log_d + 3) / (2 * dd); break;
    default: bound = (log_d + 3) / (dd * (dd - 1)); break;
    }
    const Rational half_width = make_rational(static_cast<long>(d) - (inner ? 3 : 1), 2);

    BoundReport report;
    report.kind = kind;
    report.d = d;
    report.strict = derivative;
    report.grid = detail::grid_points(-half_width, half_width, step);
    report.grid_spec = "[" + to_string(-half_width) + "," + to_string(half_width) + "] step " + to_string(step);
    bool first = true;
    for (const auto& x : report.grid) {
        const Rational value = derivative ? c_derivative_value(d, x) : c_value(d, x);
        detail::observe(report, x, bound - abs(value), first);
        first = false;
    }
    detail::finish(report);
    return report;
}

/// s_d(x) >= 3x on x in Z + (d+1)/2, (d+7)/2 <= x <= cap.
inline BoundReport verify_tail_growth(unsigned d, const Rational& cap) {
    if (d < 3) throw argument_error("tail growth requires d >= 3");
    const Rational start = make_rational(static_cast<long>(d) + 7, 2);
    if (cap < start) throw argument_error("cap must be at least (d+7)/2");
    BoundReport report;
    report.kind = BoundKind::tail_growth;
    report.d = d;
    report.strict = false;
    report.grid = detail::grid_points(start, cap, Rational(1));
    report.grid_spec = "[" + to_string(start) + "," + to_string(cap) + "] step 1";
    bool first = true;
    for (const auto& x : report.grid) {
        detail::observe(report, x, s_value(d, x) - 3 * x, first);
        first = false;
    }
    detail::finish(report);
    return report;
}

inline Rational default_tail_cap(unsigned d) { return make_rational(static_cast<long>(d) + 7, 2) + 500; }

/// Strict increase of s_d along the grid (d+3)/2, (d+3)/2 + step, ..., cap,
/// together with s_d' > 0 at each grid point.
inline BoundReport verify_monotonicity(unsigned d, const Rational& cap, const Rational& step = make_rational(1, 4)) {
    if (d < 1) throw argument_error("monotonicity requires d >= 1");
    detail::require_unit_fraction(step);
    const Rational start = make_rational(static_cast<long>(d) + 3, 2);
    if (cap <= start) throw argument_error("cap must exceed (d+3)/2");
    const PolyExact s = build_s(d);
    const PolyExact ds = s.derivative();
    BoundReport report;
    report.kind = BoundKind::monotone;
    report.d = d;
    report.strict = true;
    report.grid = detail::grid_points(start, cap, step);
    report.grid_spec = "[" + to_string(start) + "," + to_string(cap) + "] step " + to_string(step);
    bool first = true;
    Rational previous;
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        const Rational& x = report.grid[i];
        const Rational value = s(x);
        detail::observe(report, x, ds.eval_monomial(x), first);
        first = false;
        if (i > 0) detail::observe(report, x, value - previous, false);
        previous = value;
    }
    detail::finish(report);
    return report;
}

inline Rational default_monotone_cap(unsigned d) { return make_rational(static_cast<long>(d) + 3, 2) + 20; }

// ---------------------------------------------------------------------------
// Floating-point convergence of s_d to the scaled sine / cosine.

struct ConvergenceReport {
    std::vector<unsigned> ks;
    std::vector<double> sine_error;       // sup |(-1)^k s_{2k+1} - (2/sqrt3) sin(pi x/3)|
    std::vector<double> sine_deriv_error; // same for the derivatives
    std::vector<double> cosine_error;     // sup |(-1)^k s_{2k} - (2/sqrt3) cos(pi x/3)|
    std::vector<double> cosine_deriv_error;
    double lo = 0, hi = 0, step = 0;
    double tolerance = 0;
    bool pass = false;
};

/// (s_d(x), s_d'(x)) in double precision through the c_j recurrence.
inline std::pair<double, double> s_value_float(unsigned d, double x) {
    double c_prev = d % 2 == 0 ? 1.0 : x;
    double dc_prev = d % 2 == 0 ? 0.0 : 1.0;
    double sum = c_prev * ((d / 2) % 2 == 0 ? 1.0 : -1.0);
    double dsum = dc_prev * ((d / 2) % 2 == 0 ? 1.0 : -1.0);
    for (unsigned j = d % 2 + 2; j <= d; j += 2) {
        const double half = (static_cast<double>(j) - 1.0) / 2.0;
        const double factor = x * x - half * half;
        const double scale = 1.0 / ((static_cast<double>(j) - 1.0) * static_cast<double>(j));
        const double c = c_prev * factor * scale;
        const double dc = (dc_prev * factor + c_prev * 2.0 * x) * scale;
        const double sign = ((d - j) / 2) % 2 == 0 ? 1.0 : -1.0;
        sum += sign * c;
        dsum += sign * dc;
        c_prev = c;
        dc_prev = dc;
    }
    return {sum, dsum};
}

inline ConvergenceReport convergence_report(unsigned k_max, double lo, double hi, double step, double tolerance) {
    if (!(hi > lo) || !(step > 0)) throw argument_error("convergence grid needs lo < hi and step > 0");
    if (k_max < 1) throw argument_error("k_max must be positive");
    ConvergenceReport report;
    report.lo = lo;
    report.hi = hi;
    report.step = step;
    report.tolerance = tolerance;
    const double scale = 2.0 / std::sqrt(3.0);
    const double w = std::numbers::pi / 3.0;
    const auto points = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    std::vector<unsigned> ks;
    for (unsigned k = 5; k <= k_max; k += 5) ks.push_back(k);
    if (ks.empty() || ks.back() != k_max) ks.push_back(k_max);
    for (unsigned k : ks) {
        const double sign = k % 2 == 0 ? 1.0 : -1.0;
        double e_sin = 0, e_dsin = 0, e_cos = 0, e_dcos = 0;
        for (long i = 0; i <= points; ++i) {
            const double x = lo + static_cast<double>(i) * step;
            const auto [so, dso] = s_value_float(2 * k + 1, x);
            const auto [se, dse] = s_value_float(2 * k, x);
            e_sin = std::max(e_sin, std::abs(sign * so - scale * std::sin(w * x)));
            e_dsin = std::max(e_dsin, std::abs(sign * dso - scale * w * std::cos(w * x)));
            e_cos = std::max(e_cos, std::abs(sign * se - scale * std::cos(w * x)));
            e_dcos = std::max(e_dcos, std::abs(sign * dse + scale * w * std::sin(w * x)));
        }
        report.ks.push_back(k);
        report.sine_error.push_back(e_sin);
        report.sine_deriv_error.push_back(e_dsin);
        report.cosine_error.push_back(e_cos);
        report.cosine_deriv_error.push_back(e_dcos);
    }
    report.pass = report.sine_error.back() <= tolerance;
    return report;
}

// ---------------------------------------------------------------------------
// Escape and preperiodic points of r_d.

inline std::vector<Rational> default_real_escape_samples(unsigned d) {
    std::vector<Rational> out;
    const Rational half = make_rational(1, 2);
    const Rational hi_start(static_cast<long>(d) + 7);
    for (Rational x = hi_start; x <= hi_start + 10; x += half) out.push_back(x);
    for (Rational x = 0; x >= -10; x -= half) out.push_back(x);
    return out;
}

/// |r_d(x)| > |x| at each sample (samples should satisfy x >= d+7 or x <= 0).
inline BoundReport real_escape_check_rd(unsigned d, std::optional<std::vector<Rational>> samples = std::nullopt) {
    if (d < 2) throw argument_error("real escape requires d >= 2");
    const PolyExact r = build_r(d);
    BoundReport report;
    report.kind = BoundKind::real_escape;
    report.d = d;
    report.strict = true;
    report.grid = samples ? std::move(*samples) : default_real_escape_samples(d);
    report.grid_spec = "{d+7, d+7+1/2, ..., d+17} u {0, -1/2, ..., -10}";
    bool first = true;
    for (const auto& x : report.grid) {
        detail::observe(report, x, abs(r(x)) - abs(x), first);
        first = false;
    }
    detail::finish(report);
    return report;
}

/// x = a / p^k for k = 1..4 and `per_power` numerators a coprime to p,
/// alternating in sign: 1, -1, 2, -2, ... (skipping multiples of p).
inline std::vector<Rational> default_padic_samples(std::int64_t p, unsigned per_power = 50) {
    require_prime(p);
    std::vector<Rational> out;
    for (long k = 1; k <= 4; ++k) {
        const Rational pk = prime_power(p, k);
        unsigned taken = 0;
        for (long a = 1; taken < per_power; ++a) {
            if (a % p == 0) continue;
            for (long sgn : {1L, -1L}) {
                if (taken == per_power) break;
                out.push_back(Rational(sgn * a) / pk);
                ++taken;
            }
        }
    }
    return out;
}

/// |r_d(x)|_p > |x|_p at each sample; every sample must have |x|_p > 1.
inline BoundReport padic_escape_check_rd(unsigned d, std::int64_t p,
                                         std::optional<std::vector<Rational>> samples = std::nullopt) {
    if (d < 2) throw argument_error("p-adic escape requires d >= 2");
    require_prime(p);
    const PolyExact r = build_r(d);
    BoundReport report;
    report.kind = BoundKind::padic_escape;
    report.d = d;
    report.prime = p;
    report.strict = true;
    report.grid = samples ? std::move(*samples) : default_padic_samples(p);
    report.grid_spec = "x = a/p^k, k = 1..4, gcd(a, p) = 1";
    for (const auto& x : report.grid)
        if (padic_abs(x, p) <= 1) throw argument_error("p-adic sample " + to_string(x) + " has |x|_p <= 1");
    bool first = true;
    for (const auto& x : report.grid) {
        detail::observe(report, x, padic_abs(r(x), p) - padic_abs(x, p), first);
        first = false;
    }
    detail::finish(report);
    return report;
}

/// Integer values of f on 1..m; throws if some value is not an integer.
inline std::vector<BigInt> integer_values(const PolyExact& f, long m) {
    std::vector<BigInt> out;
    for (long i = 1; i <= m; ++i) {
        const Rational v = f(Rational(i));
        if (!is_integer(v)) throw argument_error("f(" + std::to_string(i) + ") = " + to_string(v) + " is not an integer");
        out.push_back(v.get_num());
    }
    return out;
}

/// f([m]) subset of [m].
inline bool compression_check(const PolyExact& f, long m) {
    if (m < 1) throw argument_error("compression_check requires m >= 1");
    const auto values = integer_values(f, m);
    return std::all_of(values.begin(), values.end(), [m](const BigInt& v) { return v >= 1 && v <= m; });
}

/// Iterates r_d on every integer of (0, d+7) and returns the set of points
/// whose orbits were followed; each orbit must stay in [d+6].
inline std::set<long> rd_preperiodic_set(unsigned d) {
    if (d < 2) throw argument_error("rd_preperiodic_set requires d >= 2");
    const PolyExact r = build_r(d);
    const long top = static_cast<long>(d) + 6;
    std::vector<long> image(static_cast<std::size_t>(top + 1), 0);
    for (long i = 1; i <= top; ++i) {
        const Rational v = r(Rational(i));
        if (!is_integer(v) || v < 1 || v > top)
            throw internal_error("r_" + std::to_string(d) + "(" + std::to_string(i) + ") = " + to_string(v) +
                                 " leaves [d+6]");
        image[static_cast<std::size_t>(i)] = v.get_num().get_si();
    }
    std::set<long> result;
    for (long i = 1; i <= top; ++i) {
        // Every orbit in a finite set is eventually periodic; walk until a repeat.
        std::vector<bool> seen(static_cast<std::size_t>(top + 1), false);
        long x = i;
        while (!seen[static_cast<std::size_t>(x)]) {
            seen[static_cast<std::size_t>(x)] = true;
            x = image[static_cast<std::size_t>(x)];
        }
        result.insert(i);
    }
    return result;
}

/// All integer-valued polynomials of exactly the given degree with f([m])
/// contained in [m], enumerated by their values at 1..degree+1.
inline std::vector<PolyExact> optimal_compression_search(unsigned degree, long m) {
    if (degree != 2 && degree != 3) throw argument_error("compression search supports degree 2 or 3");
    if (m < 1 || m > 30) throw argument_error("compression search requires 1 <= m <= 30");
    const unsigned n = degree + 1;
    std::vector<long> values(n, 1);
    std::vector<PolyExact> solutions;
    while (true) {
        // Forward differences at 1 determine f(x) = sum_k diff_k * binom(x-1, k).
        std::array<long, 4> diff{};
        std::vector<long> row(values);
        for (unsigned k = 0; k < n; ++k) {
            diff[k] = row[0];
            for (unsigned i = 0; i + 1 < row.size(); ++i) row[i] = row[i + 1] - row[i];
            row.pop_back();
        }
        if (diff[degree] != 0) {
            bool ok = true;
            for (long x = 1; x <= m && ok; ++x) {
                long value = 0;
                long binom = 1; // binom(x-1, k)
                for (unsigned k = 0; k < n; ++k) {
                    value += diff[k] * binom;
                    binom = binom * (x - 1 - static_cast<long>(k)) / static_cast<long>(k + 1);
                }
                ok = value >= 1 && value <= m;
            }
            if (ok) {
                std::vector<Rational> pts;
                for (long v : values) pts.emplace_back(v);
                solutions.push_back(interpolate_from_one(pts));
            }
        }
        unsigned pos = 0;
        while (pos < n && values[pos] == m) values[pos++] = 1;
        if (pos == n) break;
        ++values[pos];
    }
    return solutions;
}

/// Reduces compressors of [m] modulo the symmetries f(x) -> f(m+1-x) and
/// f -> m+1-f. The representative has positive leading coefficient and the
/// lexicographically least value tuple on 1..m.
inline std::vector<PolyExact> canonical_compressors(const std::vector<PolyExact>& solutions, long m) {
    const PolyExact reflect({Rational(m + 1), Rational(-1)});
    auto compose_reflect = [&](const PolyExact& f) {
        // f(m+1-x) by Horner on polynomials.
        PolyExact acc;
        const auto coeffs = f.coefficients();
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * reflect + PolyExact::constant(*it);
        return acc;
    };
    auto value_reflect = [&](const PolyExact& f) { return PolyExact::constant(Rational(m + 1)) - f.without_basis(); };
    auto key = [&](const PolyExact& f) { return integer_values(f, m); };

    std::vector<PolyExact> reps;
    std::set<std::vector<BigInt>> seen;
    for (const auto& f : solutions) {
        const PolyExact g = f.without_basis();
        std::vector<PolyExact> orbit{g, compose_reflect(g), value_reflect(g), value_reflect(compose_reflect(g))};
        std::optional<PolyExact> best;
        for (const auto& h : orbit) {
            if (h.leading_coefficient() <= 0) continue;
            if (!best || key(h) < key(*best)) best = h;
        }
        if (best && seen.insert(key(*best)).second) reps.push_back(*best);
    }
    return reps;
}

// ---------------------------------------------------------------------------
// Escape radii of s_d at each place of Q.

/// A place of Q: the archimedean place or a prime.
struct Place {
    std::int64_t prime = 0; // 0 encodes infinity

    static Place infinity() { return {0}; }
    static Place at_prime(std::int64_t p) {
        require_prime(p);
        return {p};
    }
    bool is_infinite() const { return prime == 0; }
};

/// R_inf = (d+7)/2 and R_p = 1 + 3|d!|_p for odd d >= 3.
inline Rational escape_radius(unsigned d, Place place) {
    if (d < 3 || d % 2 == 0) throw argument_error("escape radius requires odd d >= 3");
    if (place.is_infinite()) return make_rational(static_cast<long>(d) + 7, 2);
    return 1 + 3 * factorial_padic_abs(d, place.prime);
}

/// R_p < p, which forces periodic points to be p-integral.
inline bool escape_radius_below_prime(unsigned d, std::int64_t p) {
    return escape_radius(d, Place::at_prime(p)) < Rational(static_cast<long>(p));
}

/// The one pair where R_p < p fails.
inline bool is_escape_radius_exception(unsigned d, std::int64_t p) { return d == 3 && p == 2; }

} // namespace henon
