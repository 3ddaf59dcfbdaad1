#include "henon/analysis.hpp"

#include <gtest/gtest.h>
#include <mpfr.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace henon;

namespace {

Rational c_oracle(unsigned d, const Rational& x) {
    Rational acc = 1;
    for (unsigned i = 0; i < d; ++i) acc *= x - make_rational(static_cast<long>(d) - 1 - 2 * static_cast<long>(i), 2);
    return acc / Rational(factorial(d));
}

Rational s_oracle(unsigned d, const Rational& x) {
    Rational acc = 0;
    for (unsigned j = d % 2; j <= d; j += 2) acc += (((d - j) / 2) % 2 == 0 ? 1 : -1) * c_oracle(j, x);
    return acc;
}

int sigma_oracle(long m) {
    // sin(pi m / 3) * 2 / sqrt(3), rounded: the pattern 0, 1, 1, 0, -1, -1.
    return static_cast<int>(std::lround(2.0 / std::sqrt(3.0) * std::sin(std::numbers::pi * static_cast<double>(m) / 3.0)));
}

// Sup over x = lo/10, ..., hi/10 of |(-1)^k s_{2k+1}(x) - (2/sqrt3) sin(pi x/3)|
// with s evaluated exactly and the sine in 256-bit MPFR.
double mpfr_sine_error(unsigned k, long lo_tenths, long hi_tenths) {
    mpfr_t s, t, pi, root3;
    mpfr_inits2(256, s, t, pi, root3, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_sqrt_ui(root3, 3, MPFR_RNDN);
    double worst = 0;
    for (long i = lo_tenths; i <= hi_tenths; ++i) {
        const Rational x = make_rational(i, 10);
        Rational exact = s_oracle(2 * k + 1, x);
        if (k % 2 == 1) exact = -exact;
        mpfr_set_q(s, exact.get_mpq_t(), MPFR_RNDN);
        mpfr_mul_si(t, pi, i, MPFR_RNDN);
        mpfr_div_ui(t, t, 30, MPFR_RNDN);
        mpfr_sin(t, t, MPFR_RNDN);
        mpfr_mul_ui(t, t, 2, MPFR_RNDN);
        mpfr_div(t, t, root3, MPFR_RNDN);
        mpfr_sub(s, s, t, MPFR_RNDN);
        worst = std::max(worst, std::abs(mpfr_get_d(s, MPFR_RNDN)));
    }
    mpfr_clears(s, t, pi, root3, static_cast<mpfr_ptr>(nullptr));
    return worst;
}

// Values on 1..m of the polynomial of degree <= deg through f(1..deg+1),
// extended by the vanishing (deg+1)-th difference.
std::vector<long> extend(std::vector<long> v, unsigned deg, long m) {
    while (static_cast<long>(v.size()) < m) {
        const std::size_t n = v.size();
        long next = 0;
        long binom = 1;
        for (unsigned j = 1; j <= deg + 1; ++j) {
            binom = binom * (deg + 2 - j) / j;
            next += (j % 2 == 1 ? 1 : -1) * binom * v[n - j];
        }
        v.push_back(next);
    }
    v.resize(static_cast<std::size_t>(m));
    return v;
}

std::set<std::vector<long>> brute_force_compressors(unsigned deg, long m) {
    std::set<std::vector<long>> out;
    std::vector<long> seed(deg + 1, 1);
    while (true) {
        // Leading difference nonzero means exact degree.
        std::vector<long> d(seed);
        for (unsigned k = 0; k < deg; ++k)
            for (std::size_t i = 0; i + 1 < d.size() - k; ++i) d[i] = d[i + 1] - d[i];
        if (d[0] != 0) {
            const auto v = extend(seed, deg, std::max<long>(m, deg + 1));
            bool ok = true;
            for (long i = 0; i < m; ++i) ok = ok && v[static_cast<std::size_t>(i)] >= 1 && v[static_cast<std::size_t>(i)] <= m;
            if (ok) out.insert(std::vector<long>(v.begin(), v.begin() + m));
        }
        unsigned pos = 0;
        while (pos <= deg && seed[pos] == m) seed[pos++] = 1;
        if (pos > deg) break;
        ++seed[pos];
    }
    return out;
}

std::vector<long> values_on(const PolyExact& f, long m) {
    std::vector<long> out;
    for (const auto& v : integer_values(f, m)) out.push_back(v.get_si());
    return out;
}

PolyExact poly(std::initializer_list<long> num, long den) {
    std::vector<Rational> c;
    for (long a : num) c.push_back(make_rational(a, den));
    return PolyExact(c);
}

} // namespace

TEST(SigmaAgreement, OddDegreesHoldAsStated) {
    EXPECT_FALSE(verify_sigma_agreement(1).has_value());
    EXPECT_FALSE(verify_sigma_agreement(3).has_value());
    for (unsigned d = 1; d <= 199; d += 2) EXPECT_FALSE(verify_sigma_agreement(d).has_value()) << d;
}

TEST(SigmaAgreement, EvenDegreesNeedTheParitySign) {
    EXPECT_EQ(s_oracle(2, make_rational(1, 2)), -1);
    EXPECT_EQ(sigma_oracle(2), 1);
    for (unsigned d = 2; d <= 200; d += 2) {
        EXPECT_TRUE(verify_sigma_agreement(d).has_value()) << d;
        EXPECT_FALSE(verify_sigma_agreement(d, SigmaConvention::parity_signed).has_value()) << d;
    }
}

TEST(SigmaAgreement, IndependentOracleWithParitySign) {
    for (unsigned d = 1; d <= 40; ++d) {
        const long twice_h = static_cast<long>(d) + 1;
        for (long t = -twice_h; t <= twice_h; t += 2) {
            const Rational m = make_rational(t, 2);
            const long arg = (t + 3 * (static_cast<long>(d) - 1)) / 2;
            const int expected = (d % 2 == 1 ? 1 : -1) * sigma_oracle(arg);
            EXPECT_EQ(s_oracle(d, m), expected) << d << " " << to_string(m);
        }
    }
}

TEST(LogEnclosure, ContainsTheLogarithm) {
    for (unsigned long n : {1UL, 2UL, 3UL, 7UL, 10UL, 64UL, 99UL, 100UL, 1000UL}) {
        const auto [lo, hi] = log_enclosure(n);
        EXPECT_LE(lo, hi);
        EXPECT_LT(Rational(hi - lo), make_rational(1, 1000000000));
        const long double ln = std::log(static_cast<long double>(n));
        EXPECT_LE(lo.get_d(), static_cast<double>(ln) + 1e-15);
        EXPECT_GE(hi.get_d(), static_cast<double>(ln) - 1e-15);
    }
    EXPECT_EQ(log_enclosure(1).first, 0);
}

TEST(CdBounds, DerivativeMatchesExpansion) {
    for (unsigned d = 1; d <= 25; ++d) {
        const PolyExact dc = build_c(d).derivative();
        for (long i = -20; i <= 20; ++i) EXPECT_EQ(c_derivative_value(d, make_rational(i, 4)), dc(make_rational(i, 4)));
    }
}

TEST(CdBounds, Examples) {
    const auto r = verify_cd_bounds(10, BoundKind::cd_sup, make_rational(1, 4));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.grid.size(), 37u);
    EXPECT_TRUE(verify_cd_bounds(50, BoundKind::cd_deriv_inner).pass);
    EXPECT_THROW(verify_cd_bounds(10, BoundKind::cd_sup, make_rational(2, 5)), argument_error);
    EXPECT_THROW(verify_cd_bounds(10, BoundKind::tail_growth), argument_error);
}

TEST(CdBounds, FullMarginAtRoots) {
    // Integer and half-integer roots of c_4 sit at +-1/2, +-3/2.
    for (const auto& x : {make_rational(1, 2), make_rational(-3, 2)}) EXPECT_EQ(c_oracle(4, x), 0);
}

TEST(CdBounds, WorstMarginMatchesOracle) {
    for (unsigned d : {4u, 9u, 16u, 31u}) {
        const Rational bound = 1 / (4 * Rational(d));
        Rational worst = bound;
        const long half = 2 * (static_cast<long>(d) - 1); // (d-1)/2 in quarter steps
        for (long i = -half; i <= half; ++i) worst = std::min(worst, Rational(bound - abs(c_oracle(d, make_rational(i, 4)))));
        const auto r = verify_cd_bounds(d, BoundKind::cd_sup);
        EXPECT_EQ(r.worst_margin, worst) << d;
    }
}

TEST(CdBounds, AllFourHoldForSmallDegrees) {
    for (unsigned d = 4; d <= 30; ++d)
        for (auto kind : {BoundKind::cd_sup, BoundKind::cd_sup_inner, BoundKind::cd_deriv, BoundKind::cd_deriv_inner}) {
            const auto r = verify_cd_bounds(d, kind);
            EXPECT_TRUE(r.pass) << d << " " << to_string(kind);
            EXPECT_GT(r.worst_margin, 0);
        }
}

TEST(TailGrowth, EqualityAtTheBaseCase) {
    const auto r = verify_tail_growth(3, 20);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.worst_margin, 0);
    EXPECT_EQ(r.worst_point, 5);
    EXPECT_EQ(s_oracle(3, 5), 15);
}

TEST(TailGrowth, StartsAtTheThreshold) {
    const auto r = verify_tail_growth(7, 507);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.grid.front(), 7);
    EXPECT_EQ(r.grid.back(), 507);
    EXPECT_THROW(verify_tail_growth(7, 6), argument_error);
    for (unsigned d = 4; d <= 20; ++d) EXPECT_TRUE(verify_tail_growth(d, default_tail_cap(d)).pass) << d;
}

TEST(Monotonicity, Examples) {
    EXPECT_TRUE(verify_monotonicity(1, 10).pass);
    EXPECT_TRUE(verify_monotonicity(7, make_rational(10, 1) + 5).pass);
    EXPECT_TRUE(verify_monotonicity(20, make_rational(23, 2) + 10).pass);
    EXPECT_THROW(verify_monotonicity(7, 5), argument_error);
}

TEST(Convergence, ZeroAtOrigin) {
    for (unsigned k = 1; k <= 30; ++k) EXPECT_EQ(s_value_float(2 * k + 1, 0.0).first, 0.0);
}

TEST(Convergence, FloatReportAgreesWithHighPrecisionOracle) {
    const auto report = convergence_report(30, -6.0, 6.0, 0.1, 1e-8);
    ASSERT_EQ(report.ks.size(), 6u);
    for (std::size_t i = 0; i < report.ks.size(); ++i) {
        const double oracle = mpfr_sine_error(report.ks[i], -60, 60);
        EXPECT_NEAR(report.sine_error[i], oracle, 1e-12) << report.ks[i];
    }
    const double at10 = mpfr_sine_error(10, -60, 60);
    const double at30 = mpfr_sine_error(30, -60, 60);
    EXPECT_LT(at30, at10);
    EXPECT_LE(at30, 1e-8);
    EXPECT_TRUE(report.pass);
    EXPECT_LT(report.sine_error.back(), report.sine_error[1]);
}

TEST(Convergence, CosineAndDerivativesConverge) {
    const auto report = convergence_report(30, -6.0, 6.0, 0.1, 1e-8);
    EXPECT_LT(report.cosine_error.back(), 1e-8);
    EXPECT_LT(report.sine_deriv_error.back(), 1e-8);
    EXPECT_LT(report.cosine_deriv_error.back(), 1e-8);
}

TEST(RealEscape, Examples) {
    EXPECT_EQ(build_r(2)(9), 11);
    EXPECT_EQ(build_r(2)(0), 11);
    EXPECT_TRUE(real_escape_check_rd(5, std::vector<Rational>{12}).pass);
    for (unsigned d = 2; d <= 20; ++d) EXPECT_TRUE(real_escape_check_rd(d).pass) << d;
}

TEST(PadicEscape, Examples) {
    const Rational v = build_r(2)(make_rational(1, 2));
    EXPECT_EQ(v, make_rational(71, 8));
    EXPECT_EQ(padic_abs(v, 2), 8);
    EXPECT_TRUE(padic_escape_check_rd(2, 2, std::vector<Rational>{make_rational(1, 2)}).pass);
    EXPECT_TRUE(padic_escape_check_rd(3, 3, std::vector<Rational>{make_rational(1, 3)}).pass);
    EXPECT_THROW(padic_escape_check_rd(2, 2, std::vector<Rational>{3}), argument_error);
    EXPECT_EQ(default_padic_samples(5).size(), 200u);
}

TEST(Preperiodic, Examples) {
    auto range = [](long n) {
        std::set<long> s;
        for (long i = 1; i <= n; ++i) s.insert(i);
        return s;
    };
    EXPECT_EQ(rd_preperiodic_set(2), range(8));
    EXPECT_EQ(rd_preperiodic_set(7), range(13));
    EXPECT_EQ(rd_preperiodic_set(3), range(9));
    EXPECT_TRUE(compression_check(build_r(3), 9));
    for (long i = 1; i <= 9; ++i) EXPECT_LE(build_r(3)(i), 7);
}

TEST(Compression, Examples) {
    EXPECT_TRUE(compression_check(build_r(2), 8));
    EXPECT_TRUE(compression_check(poly({-66, 89, -18, 1}, 6), 11));
    EXPECT_FALSE(compression_check(build_r(2), 9));
    EXPECT_THROW(compression_check(poly({0, 1}, 2), 3), argument_error);
}

TEST(Search, MatchesBruteForce) {
    for (long m = 2; m <= 10; ++m) {
        std::set<std::vector<long>> found;
        for (const auto& f : optimal_compression_search(2, m)) found.insert(values_on(f, m));
        EXPECT_EQ(found, brute_force_compressors(2, m)) << m;
    }
    for (long m = 4; m <= 12; ++m) {
        std::set<std::vector<long>> found;
        for (const auto& f : optimal_compression_search(3, m)) found.insert(values_on(f, m));
        EXPECT_EQ(found, brute_force_compressors(3, m)) << m;
    }
}

TEST(Search, DegreeTwoStopsAtEight) {
    for (long m = 2; m <= 12; ++m) EXPECT_EQ(optimal_compression_search(2, m).empty(), m > 8) << m;
    const auto canon = canonical_compressors(optimal_compression_search(2, 8), 8);
    const PolyExact r2 = build_r(2).without_basis();
    ASSERT_EQ(canon.size(), 2u);
    EXPECT_EQ(canon[0], r2);
    EXPECT_EQ(canon[1], r2 + PolyExact::constant(1));
}

TEST(Search, DegreeThreeStopsAtEleven) {
    EXPECT_FALSE(optimal_compression_search(3, 11).empty());
    EXPECT_TRUE(optimal_compression_search(3, 12).empty());
    EXPECT_TRUE(optimal_compression_search(3, 13).empty());
    for (long m = 4; m <= 9; ++m) EXPECT_FALSE(optimal_compression_search(3, m).empty()) << m;
    // No cubic compresses [10], although one compresses [11].
    EXPECT_TRUE(optimal_compression_search(3, 10).empty());
    const auto canon = canonical_compressors(optimal_compression_search(3, 11), 11);
    ASSERT_EQ(canon.size(), 1u);
    EXPECT_EQ(canon[0], poly({-66, 89, -18, 1}, 6));
}

TEST(Search, GuardsTheSearchSpace) {
    EXPECT_THROW(optimal_compression_search(4, 5), argument_error);
    EXPECT_THROW(optimal_compression_search(2, 31), argument_error);
}

TEST(EscapeRadius, Examples) {
    EXPECT_EQ(escape_radius(7, Place::infinity()), 7);
    EXPECT_EQ(escape_radius(3, Place::at_prime(2)), make_rational(5, 2));
    EXPECT_FALSE(escape_radius_below_prime(3, 2));
    EXPECT_TRUE(is_escape_radius_exception(3, 2));
    EXPECT_EQ(escape_radius(7, Place::at_prime(11)), 4);
    EXPECT_THROW(escape_radius(8, Place::infinity()), argument_error);
}

TEST(EscapeRadius, BelowPrimeExceptOnePair) {
    for (unsigned d = 3; d <= 299; d += 2)
        for (std::int64_t p = 2; p <= 100; ++p) {
            if (!is_prime(p)) continue;
            EXPECT_EQ(escape_radius_below_prime(d, p), !(d == 3 && p == 2)) << d << " " << p;
        }
}
