// henon_cli: exact polynomial families, bound checks and lattice dynamics.
//
// Exit codes: 0 every requested check passed, 1 a check failed,
// 2 usage error, 3 internal contract violation.

#include "henon/henon.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

using namespace henon;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, contract = 3 };

struct Options {
    // shared
    std::string out;
    std::string format = "csv";
    unsigned threads = default_thread_count();
    bool timing = false;

    // degrees and shifts
    unsigned d = 0;
    unsigned dmin = 0, dmax = 0;
    std::int64_t c = 0, cmin = 0, cmax = 0;
    std::string orientation = "standard";
    std::string sweep_orientation = "paper-shifted";

    // polynomials
    std::string family = "s";
    std::string x = "0";
    std::int64_t range = 0;
    std::string coeffs;
    long m = 0;
    unsigned degree = 2;
    bool canonical = false;

    // verification
    std::string which = "all";
    std::string step = "1/4";
    std::string cap;
    std::vector<std::int64_t> primes{2, 3, 5, 7};
    bool parity_signed = false;
    unsigned kmax = 30;
    double lo = -6, hi = 6, fstep = 0.1, tolerance = 1e-8;

    // h_inf
    double px = 0, py = 0;
    double eps = 1e-3;
    std::int64_t iters = 1000;
    std::uint64_t seed = 1;
    std::int64_t stride = 1;
    std::int64_t box = 6;

    // radius
    std::string place = "inf";
    std::int64_t pmax = 100;
};

/// stdout, or the file named by --out.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw argument_error("cannot open output file " + path);
    }
    std::ostream& operator*() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<unsigned> degree_list(const Options& o, unsigned lowest, bool odd_only) {
    std::vector<unsigned> ds;
    if (o.d != 0) {
        ds.push_back(o.d);
    } else {
        const unsigned a = o.dmin != 0 ? o.dmin : lowest;
        if (o.dmax == 0) throw argument_error("give --d or --dmax");
        for (unsigned d = a; d <= o.dmax; ++d)
            if (!odd_only || d % 2 == 1) ds.push_back(d);
    }
    for (unsigned d : ds) {
        if (d < lowest) throw argument_error("degree " + std::to_string(d) + " is below " + std::to_string(lowest));
        if (odd_only && d % 2 == 0) throw argument_error("degree " + std::to_string(d) + " must be odd");
    }
    return ds;
}

Orientation parse_orientation(const std::string& s) {
    if (s == "standard") return Orientation::standard;
    if (s == "paper-shifted") return Orientation::paper_shifted;
    throw argument_error("orientation must be standard or paper-shifted");
}

PolyExact family_member(const std::string& family, unsigned d) {
    if (family == "s") return build_s(d);
    if (family == "c") return build_c(d);
    if (family == "r") return build_r(d);
    throw argument_error("family must be s, c or r");
}

PolyExact parse_coefficients(const std::string& text) {
    std::vector<Rational> c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(parse_rational(item));
    if (c.empty()) throw argument_error("--coeffs needs ascending coefficients a0,a1,...");
    return PolyExact(std::move(c));
}

/// Prints the reports and returns check_failed if any failed, with the
/// failing reports repeated on stderr.
int emit_reports(const json& reports, const Options& o) {
    Sink sink(o.out);
    *sink << reports.dump(2) << "\n";
    json failures = json::array();
    for (const auto& r : reports)
        if (!r.value("pass", false)) failures.push_back(r);
    if (failures.empty()) return ok;
    std::cerr << json{{"failures", failures}}.dump() << "\n";
    return check_failed;
}

// ---------------------------------------------------------------------------

int cmd_poly_eval(const Options& o) {
    const Rational x = parse_rational(o.x);
    Sink sink(o.out);
    *sink << to_string(eval_exact(family_member(o.family, o.d), x)) << "\n";
    return ok;
}

int cmd_poly_coeffs(const Options& o) {
    const PolyExact f = family_member(o.family, o.d);
    Sink sink(o.out);
    if (o.format == "json") {
        json c = json::array();
        for (const auto& q : f.coefficients()) c.push_back(to_string(q));
        *sink << json{{"family", o.family}, {"d", o.d}, {"coefficients", c}, {"text", format_polynomial(f)}}.dump(2)
              << "\n";
    } else {
        *sink << format_polynomial(f) << "\n";
    }
    return ok;
}

int cmd_poly_table(const Options& o) {
    if (o.range < 0) throw argument_error("--range must be >= 0");
    const Rational offset = o.d % 2 == 0 ? make_rational(1, 2) : Rational(0);
    Sink sink(o.out);
    *sink << "m,s_d(m)\n";
    for (std::int64_t i = -o.range; i <= o.range; ++i) {
        const Rational m = Rational(static_cast<long>(i)) + offset;
        *sink << to_string(m) << "," << to_string(s_value(o.d, m)) << "\n";
    }
    return ok;
}

int cmd_compress_check(const Options& o) {
    const PolyExact f = o.coeffs.empty() ? build_r(o.d) : parse_coefficients(o.coeffs);
    const bool pass = compression_check(f, o.m);
    json values = json::array();
    for (const auto& v : integer_values(f, o.m)) values.push_back(v.get_str());
    const json report{{"polynomial", format_polynomial(f)}, {"m", o.m}, {"values", values}, {"pass", pass}};
    return emit_reports(json::array({report}), o);
}

int cmd_compress_search(const Options& o) {
    auto found = optimal_compression_search(o.degree, o.m);
    if (o.canonical) found = canonical_compressors(found, o.m);
    json list = json::array();
    for (const auto& f : found) list.push_back(format_polynomial(f));
    Sink sink(o.out);
    *sink << json{{"degree", o.degree}, {"m", o.m}, {"canonical", o.canonical}, {"count", found.size()},
                  {"solutions", list}}
                 .dump(2)
          << "\n";
    return ok;
}

int cmd_verify_sigma(const Options& o) {
    const auto convention = o.parity_signed ? SigmaConvention::parity_signed : SigmaConvention::literal;
    json reports = json::array();
    for (unsigned d : degree_list(o, 1, false)) {
        const auto bad = verify_sigma_agreement(d, convention);
        json r{{"lemma", "sigma_agreement"}, {"d", d}, {"parity_signed", o.parity_signed}, {"pass", !bad}};
        if (bad) r["counterexample"] = to_string(*bad);
        reports.push_back(r);
    }
    return emit_reports(reports, o);
}

int cmd_verify_cd(const Options& o) {
    std::vector<BoundKind> kinds;
    if (o.which == "outer" || o.which == "all") kinds.push_back(BoundKind::cd_sup);
    if (o.which == "inner" || o.which == "all") kinds.push_back(BoundKind::cd_sup_inner);
    if (o.which == "deriv-outer" || o.which == "all") kinds.push_back(BoundKind::cd_deriv);
    if (o.which == "deriv-inner" || o.which == "all") kinds.push_back(BoundKind::cd_deriv_inner);
    if (kinds.empty()) throw argument_error("--which must be outer, inner, deriv-outer, deriv-inner or all");
    const Rational step = parse_rational(o.step);
    json reports = json::array();
    for (unsigned d : degree_list(o, 2, false))
        for (auto kind : kinds) {
            const bool inner = kind == BoundKind::cd_sup_inner || kind == BoundKind::cd_deriv_inner;
            if (inner && d < 3) continue;
            reports.push_back(to_json(verify_cd_bounds(d, kind, step)));
        }
    return emit_reports(reports, o);
}

int cmd_verify_tail(const Options& o) {
    json reports = json::array();
    for (unsigned d : degree_list(o, 3, false))
        reports.push_back(to_json(verify_tail_growth(d, o.cap.empty() ? default_tail_cap(d) : parse_rational(o.cap))));
    return emit_reports(reports, o);
}

int cmd_verify_monotone(const Options& o) {
    const Rational step = parse_rational(o.step);
    json reports = json::array();
    for (unsigned d : degree_list(o, 1, false))
        reports.push_back(
            to_json(verify_monotonicity(d, o.cap.empty() ? default_monotone_cap(d) : parse_rational(o.cap), step)));
    return emit_reports(reports, o);
}

int cmd_verify_convergence(const Options& o) {
    return emit_reports(json::array({to_json(convergence_report(o.kmax, o.lo, o.hi, o.fstep, o.tolerance))}), o);
}

int cmd_verify_escape_real(const Options& o) {
    json reports = json::array();
    for (unsigned d : degree_list(o, 2, false)) reports.push_back(to_json(real_escape_check_rd(d)));
    return emit_reports(reports, o);
}

int cmd_verify_escape_padic(const Options& o) {
    json reports = json::array();
    for (unsigned d : degree_list(o, 2, false))
        for (auto p : o.primes) reports.push_back(to_json(padic_escape_check_rd(d, p)));
    return emit_reports(reports, o);
}

int cmd_verify_preperiodic(const Options& o) {
    json reports = json::array();
    for (unsigned d : degree_list(o, 2, false)) {
        const auto set = rd_preperiodic_set(d);
        const bool pass = set.size() == d + 6 && *set.begin() == 1 && *set.rbegin() == static_cast<long>(d) + 6;
        reports.push_back({{"lemma", "preperiodic_set"}, {"d", d}, {"set", set}, {"pass", pass}});
    }
    return emit_reports(reports, o);
}

int cmd_periodic(const Options& o) {
    const auto e = enumerate_periodic(o.d, o.c, parse_orientation(o.orientation), o.threads);
    Sink sink(o.out);
    if (o.format == "json") {
        json j = to_json(e.report);
        if (o.timing) j["elapsed_ms"] = e.report.elapsed.count();
        *sink << j.dump(2) << "\n";
    } else {
        *sink << periodic_csv_header << "\n" << periodic_csv_row(e.report, o.timing) << "\n";
    }
    return ok;
}

int cmd_sweep(const Options& o) {
    std::vector<unsigned> ds;
    for (unsigned d = o.dmin; d <= o.dmax; ++d)
        if (d % 2 == 1 && d >= 3) ds.push_back(d);
    if (ds.empty()) throw argument_error("sweep needs odd degrees in [--dmin, --dmax]");
    if (o.cmin > o.cmax) throw argument_error("--cmin must not exceed --cmax");
    std::vector<std::int64_t> cs;
    for (std::int64_t c = o.cmin; c <= o.cmax; ++c) cs.push_back(c);

    const auto progress = [](const SweepRow& r) {
        std::cerr << "sweep d=" << r.report.d << " c=" << r.report.shift << " count=" << r.report.confined_count
                  << " longest=" << r.report.longest << "\n";
    };
    const auto rows = sweep(ds, cs, parse_orientation(o.sweep_orientation), o.threads, progress);

    Sink sink(o.out);
    bool pass = true;
    json mismatches = json::array();
    if (o.format != "json") *sink << periodic_csv_header << ",table_count,table_longest,in_table_range,matches\n";
    json all = json::array();
    for (const auto& r : rows) {
        const bool matches = r.count_matches && r.longest_matches;
        if (r.prediction && r.in_range && !matches) {
            pass = false;
            mismatches.push_back({{"d", r.report.d}, {"c", r.report.shift}, {"count", r.report.confined_count},
                                  {"longest", r.report.longest}, {"table_count", to_string(r.prediction->count)},
                                  {"table_longest", to_string(r.prediction->longest)}});
        }
        if (o.format == "json") {
            json j = to_json(r.report);
            if (r.prediction) {
                j["table_count"] = to_string(r.prediction->count);
                j["table_longest"] = to_string(r.prediction->longest);
            }
            j["in_table_range"] = r.in_range;
            j["matches"] = matches;
            all.push_back(j);
        } else {
            *sink << periodic_csv_row(r.report, o.timing) << ","
                  << (r.prediction ? to_string(r.prediction->count) : "") << ","
                  << (r.prediction ? to_string(r.prediction->longest) : "") << "," << (r.in_range ? 1 : 0) << ","
                  << (matches ? 1 : 0) << "\n";
        }
    }
    if (o.format == "json") *sink << all.dump(2) << "\n";
    if (pass) return ok;
    std::cerr << json{{"failures", mismatches}}.dump() << "\n";
    return check_failed;
}

int cmd_cycle_dump(const Options& o) {
    const auto e = enumerate_periodic(o.d, o.c, parse_orientation(o.orientation), o.threads);
    json cycles = json::array();
    for (const auto& c : e.cycles) cycles.push_back(to_json(c));
    Sink sink(o.out);
    *sink << json{{"report", to_json(e.report)}, {"cycles", cycles}}.dump(2) << "\n";
    return ok;
}

int cmd_hinf_periods(const Options& o) {
    const auto table = hinf_period_table(o.range == 0 ? 60 : o.range);
    Sink sink(o.out);
    if (o.format == "json") {
        json rows = json::array();
        for (const auto& row : table.period) rows.push_back(std::vector<std::int64_t>(row, row + 6));
        json ex = json::array();
        for (const auto& e : table.exceptions) ex.push_back({{"point", to_json(e.point)}, {"period", e.period}});
        *sink << json{{"range", table.range}, {"period_by_y_then_x", rows}, {"exceptions", ex}}.dump(2) << "\n";
        return ok;
    }
    *sink << "y\\x  0  1  2  3  4  5\n";
    for (int y = 5; y >= 0; --y) {
        *sink << y << "  ";
        for (int x = 0; x < 6; ++x) {
            char buf[8];
            std::snprintf(buf, sizeof buf, " %2lld", static_cast<long long>(table.period[y][x]));
            *sink << buf;
        }
        *sink << "\n";
    }
    *sink << "exceptions (" << table.exceptions.size() << "):\n";
    for (const auto& e : table.exceptions) *sink << "  " << to_string(e.point) << " period " << e.period << "\n";
    return ok;
}

int cmd_hinf_orbit(const Options& o) {
    if (o.stride < 1) throw argument_error("--stride must be >= 1");
    const auto orbit = hinf_orbit_float({o.px, o.py}, o.eps, o.iters, o.seed);
    Sink sink(o.out);
    if (o.format == "svg") {
        const auto base = LatticePoint{static_cast<std::int64_t>(std::llround(o.px)),
                                       static_cast<std::int64_t>(std::llround(o.py))};
        const std::int64_t cls = hinf_period(base);
        SvgScatter svg(-10, 10);
        for (std::size_t i = 0; i < orbit.size(); i += static_cast<std::size_t>(o.stride))
            svg.add(orbit[i].x, orbit[i].y, cls);
        svg.write(*sink);
        return ok;
    }
    *sink << "step,x,y\n";
    for (std::size_t i = 0; i < orbit.size(); i += static_cast<std::size_t>(o.stride))
        *sink << i << "," << format_double(orbit[i].x) << "," << format_double(orbit[i].y) << "\n";
    return ok;
}

int cmd_hinf_atlas(const Options& o) {
    Sink sink(o.out);
    if (o.format == "svg") {
        SvgScatter svg(-static_cast<double>(o.box) - 4, static_cast<double>(o.box) + 4);
        perturbation_atlas(o.box, o.eps, o.iters, o.seed, o.stride,
                           [&](const AtlasPoint& p) { svg.add(p.x, p.y, p.period_class); });
        svg.write(*sink);
    } else {
        *sink << atlas_csv_header << "\n";
        std::int64_t last = std::numeric_limits<std::int64_t>::min();
        perturbation_atlas(o.box, o.eps, o.iters, o.seed, o.stride, [&](const AtlasPoint& p) {
            if (p.base_x != last) {
                std::cerr << "atlas column x=" << p.base_x << "\n";
                last = p.base_x;
            }
            *sink << atlas_csv_row(p) << "\n";
        });
    }
    return ok;
}

int cmd_radius(const Options& o) {
    if (o.d != 0) {
        const Place place = o.place == "inf" ? Place::infinity() : Place::at_prime(std::stoll(o.place));
        const Rational r = escape_radius(o.d, place);
        json j{{"d", o.d}, {"place", o.place}, {"radius", to_string(r)}};
        if (!place.is_infinite()) {
            j["below_prime"] = escape_radius_below_prime(o.d, place.prime);
            j["known_exception"] = is_escape_radius_exception(o.d, place.prime);
        }
        Sink sink(o.out);
        *sink << j.dump(2) << "\n";
        return ok;
    }
    // Audit R_p < p over odd d <= dmax and primes p <= pmax.
    json failures = json::array();
    bool pass = true;
    for (unsigned d = 3; d <= o.dmax; d += 2)
        for (std::int64_t p = 2; p <= o.pmax; ++p) {
            if (!is_prime(p) || escape_radius_below_prime(d, p)) continue;
            const bool expected = is_escape_radius_exception(d, p);
            failures.push_back({{"d", d}, {"p", p}, {"known_exception", expected}});
            pass = pass && expected;
        }
    const json report{{"lemma", "padic_radius_below_prime"}, {"dmax", o.dmax}, {"pmax", o.pmax},
                      {"violations", failures}, {"pass", pass}};
    return emit_reports(json::array({report}), o);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact integer-valued polynomial families and Henon map dynamics"};
    app.require_subcommand(1);
    Options o;
    std::function<int()> action;

    auto common = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Write output to this file"); };
    auto degree = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--d", o.d, "Degree");
        if (required) opt->required();
    };
    auto degree_range = [&](CLI::App* sub) {
        sub->add_option("--d", o.d, "Single degree");
        sub->add_option("--dmin", o.dmin, "Smallest degree");
        sub->add_option("--dmax", o.dmax, "Largest degree");
    };
    auto set = [&](CLI::App* sub, int (*fn)(const Options&)) {
        common(sub);
        sub->callback([&, fn] { action = [&, fn] { return fn(o); }; });
    };

    // poly
    auto* poly = app.add_subcommand("poly", "Evaluate and print c_d, s_d, r_d");
    poly->require_subcommand(1);
    auto* poly_eval = poly->add_subcommand("eval", "Exact value at a rational point");
    degree(poly_eval, true);
    poly_eval->add_option("--x", o.x, "Point, as a or a/b")->required();
    poly_eval->add_option("--family", o.family, "s, c or r");
    set(poly_eval, cmd_poly_eval);
    auto* poly_coeffs = poly->add_subcommand("coeffs", "Monomial expansion");
    degree(poly_coeffs, true);
    poly_coeffs->add_option("--family", o.family, "s, c or r");
    poly_coeffs->add_option("--format", o.format, "text or json");
    set(poly_coeffs, cmd_poly_coeffs);
    auto* poly_table = poly->add_subcommand("table", "s_d on the integers (half-integers for even d)");
    degree(poly_table, true);
    poly_table->add_option("--range", o.range, "Half-width of the table")->required();
    set(poly_table, cmd_poly_table);

    // compress
    auto* compress = app.add_subcommand("compress", "Dynamical compression of [m]");
    compress->require_subcommand(1);
    auto* compress_check = compress->add_subcommand("check", "Check f([m]) in [m] for r_d or given coefficients");
    degree(compress_check, false);
    compress_check->add_option("--coeffs", o.coeffs, "Ascending coefficients a0,a1,... (rationals)");
    compress_check->add_option("--m", o.m, "m")->required();
    set(compress_check, cmd_compress_check);
    auto* compress_search = compress->add_subcommand("search", "All compressors of [m] of degree 2 or 3");
    compress_search->add_option("--degree", o.degree, "2 or 3")->required();
    compress_search->add_option("--m", o.m, "m")->required();
    compress_search->add_flag("--canonical", o.canonical, "Reduce modulo the reflections of [m]");
    set(compress_search, cmd_compress_search);

    // verify
    auto* verify = app.add_subcommand("verify", "Exact checks of the bounds and identities");
    verify->require_subcommand(1);
    auto* v_sigma = verify->add_subcommand("sigma", "s_d against the 6-periodic pattern");
    degree_range(v_sigma);
    v_sigma->add_flag("--parity-signed", o.parity_signed, "Use the sign (-1)^(d+1) on the pattern");
    set(v_sigma, cmd_verify_sigma);
    auto* v_cd = verify->add_subcommand("cd-bounds", "Sup bounds on c_d and c_d'");
    degree_range(v_cd);
    v_cd->add_option("--which", o.which, "outer, inner, deriv-outer, deriv-inner or all");
    v_cd->add_option("--step", o.step, "Grid step 1/n");
    set(v_cd, cmd_verify_cd);
    auto* v_tail = verify->add_subcommand("tail", "s_d(x) >= 3x beyond (d+7)/2");
    degree_range(v_tail);
    v_tail->add_option("--cap", o.cap, "Largest x checked");
    set(v_tail, cmd_verify_tail);
    auto* v_mono = verify->add_subcommand("monotone", "Strict increase of s_d beyond (d+3)/2");
    degree_range(v_mono);
    v_mono->add_option("--cap", o.cap, "Largest x checked");
    v_mono->add_option("--step", o.step, "Grid step 1/n");
    set(v_mono, cmd_verify_monotone);
    auto* v_conv = verify->add_subcommand("convergence", "Float convergence to the scaled sine and cosine");
    v_conv->add_option("--kmax", o.kmax, "Largest k");
    v_conv->add_option("--lo", o.lo, "Grid start");
    v_conv->add_option("--hi", o.hi, "Grid end");
    v_conv->add_option("--step", o.fstep, "Grid step");
    v_conv->add_option("--tol", o.tolerance, "Tolerance at the largest k");
    set(v_conv, cmd_verify_convergence);
    auto* v_real = verify->add_subcommand("escape-real", "|r_d(x)| > |x| outside (0, d+7)");
    degree_range(v_real);
    set(v_real, cmd_verify_escape_real);
    auto* v_padic = verify->add_subcommand("escape-padic", "|r_d(x)|_p > |x|_p for |x|_p > 1");
    degree_range(v_padic);
    v_padic->add_option("--primes", o.primes, "Primes")->delimiter(',');
    set(v_padic, cmd_verify_escape_padic);
    auto* v_pre = verify->add_subcommand("preperiodic", "Integer preperiodic points of r_d");
    degree_range(v_pre);
    set(v_pre, cmd_verify_preperiodic);

    // dynamics
    auto orientation = [&](CLI::App* sub, std::string& target) {
        sub->add_option("--orientation", target, "standard or paper-shifted");
        sub->add_option("--threads", o.threads, "Worker threads");
    };
    auto* periodic = app.add_subcommand("periodic", "Integer periodic points of h_{d,c}");
    degree(periodic, true);
    periodic->add_option("--c", o.c, "Shift");
    periodic->add_option("--format", o.format, "csv or json");
    periodic->add_flag("--timing", o.timing, "Report elapsed time (otherwise 0)");
    orientation(periodic, o.orientation);
    set(periodic, cmd_periodic);

    auto* sweep_cmd = app.add_subcommand("sweep", "Periodic counts over ranges of d and c, checked against the tables");
    sweep_cmd->add_option("--dmin", o.dmin, "Smallest degree")->required();
    sweep_cmd->add_option("--dmax", o.dmax, "Largest degree")->required();
    sweep_cmd->add_option("--cmin", o.cmin, "Smallest shift");
    sweep_cmd->add_option("--cmax", o.cmax, "Largest shift");
    sweep_cmd->add_option("--format", o.format, "csv or json");
    sweep_cmd->add_flag("--timing", o.timing, "Report elapsed time (otherwise 0)");
    orientation(sweep_cmd, o.sweep_orientation);
    set(sweep_cmd, cmd_sweep);

    auto* cycle = app.add_subcommand("cycle", "Cycle listings");
    cycle->require_subcommand(1);
    auto* cycle_dump = cycle->add_subcommand("dump", "All cycles of h_{d,c} as JSON");
    degree(cycle_dump, true);
    cycle_dump->add_option("--c", o.c, "Shift");
    orientation(cycle_dump, o.orientation);
    set(cycle_dump, cmd_cycle_dump);

    auto* hinf = app.add_subcommand("hinf", "The limiting map h_inf");
    hinf->require_subcommand(1);
    auto* hinf_periods = hinf->add_subcommand("periods", "Period table by residues mod 6");
    hinf_periods->add_option("--range", o.range, "Half-width of the audited box (>= 6)");
    hinf_periods->add_option("--format", o.format, "text or json");
    set(hinf_periods, cmd_hinf_periods);
    auto* hinf_orbit = hinf->add_subcommand("orbit", "Perturbed float orbit");
    hinf_orbit->add_option("--x", o.px, "Start x");
    hinf_orbit->add_option("--y", o.py, "Start y");
    hinf_orbit->add_option("--eps", o.eps, "Perturbation size");
    hinf_orbit->add_option("--iters", o.iters, "Iterations");
    hinf_orbit->add_option("--seed", o.seed, "Random seed");
    hinf_orbit->add_option("--stride", o.stride, "Emit every n-th point");
    hinf_orbit->add_option("--format", o.format, "csv or svg");
    set(hinf_orbit, cmd_hinf_orbit);
    auto* hinf_atlas = hinf->add_subcommand("atlas", "Perturbed orbits of every integer point of a box");
    hinf_atlas->add_option("--box", o.box, "Half-width of the box");
    hinf_atlas->add_option("--eps", o.eps, "Perturbation size");
    hinf_atlas->add_option("--iters", o.iters, "Iterations per point");
    hinf_atlas->add_option("--seed", o.seed, "Random seed");
    hinf_atlas->add_option("--stride", o.stride, "Emit every n-th point");
    hinf_atlas->add_option("--format", o.format, "csv or svg");
    set(hinf_atlas, cmd_hinf_atlas);

    auto* radius = app.add_subcommand("radius", "Escape radii R_inf and R_p of s_d");
    radius->add_option("--d", o.d, "Odd degree; omit to audit R_p < p");
    radius->add_option("--place", o.place, "inf or a prime");
    radius->add_option("--dmax", o.dmax, "Largest degree in the audit");
    radius->add_option("--pmax", o.pmax, "Largest prime in the audit");
    set(radius, cmd_radius);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }
    try {
        return action();
    } catch (const argument_error& e) {
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return usage;
    } catch (const domain_error& e) {
        std::cerr << json{{"error", "domain"}, {"message", e.what()}}.dump() << "\n";
        return check_failed;
    } catch (const std::logic_error& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return contract;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return contract;
    }
}
