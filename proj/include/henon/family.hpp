#pragma once

// The discrete sine/cosine family c_d, s_d, the compressing polynomials r_d,
// the 6-periodic sign pattern sigma, and integer lookup tables of s_d.

#include "henon/exact.hpp"
#include "henon/polynomial.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace henon {

namespace detail {

/// Monomial expansions of c_parity, c_{parity+2}, ..., c_top via
/// c_j = c_{j-2} * (x^2 - ((j-1)/2)^2) / ((j-1) j).
inline std::vector<PolyExact> c_chain(unsigned parity, unsigned top) {
    std::vector<PolyExact> chain;
    PolyExact current = parity == 0 ? PolyExact::constant(1) : PolyExact::identity();
    chain.push_back(current);
    for (unsigned j = parity + 2; j <= top; j += 2) {
        const Rational half = make_rational(static_cast<long>(j) - 1, 2);
        const PolyExact factor({-(half * half), Rational(0), Rational(1)});
        current = Rational(BigInt(1), BigInt(static_cast<unsigned long>(j - 1) * j)) * (current * factor);
        chain.push_back(current);
    }
    return chain;
}

inline std::vector<Rational> coeffs_of(const PolyExact& p) { return {p.coefficients().begin(), p.coefficients().end()}; }

} // namespace detail

/// c_d(x) = (1/d!) * prod_{i=0}^{d-1} (x - ((d-1)/2 - i)); c_0 = 1, c_1 = x.
inline PolyExact build_c(unsigned d) {
    const auto chain = detail::c_chain(d % 2, d);
    return PolyExact(detail::coeffs_of(chain.back()), ProductBasis{{{1, d}}, 0, 0, 0});
}

/// s_d = sum_{j = d, d-2, ...} (-1)^((d-j)/2) c_j.
inline PolyExact build_s(unsigned d) {
    if (d < 1) throw argument_error("s_d requires d >= 1");
    const auto chain = detail::c_chain(d % 2, d);
    std::vector<ProductTerm> terms;
    PolyExact sum;
    for (unsigned j = d % 2, i = 0; j <= d; j += 2, ++i) {
        const int sign = ((d - j) / 2) % 2 == 0 ? 1 : -1;
        terms.push_back({sign, j});
        sum = sign > 0 ? sum + chain[i] : sum - chain[i];
    }
    return PolyExact(detail::coeffs_of(sum), ProductBasis{std::move(terms), 0, 0, 0});
}

/// s_d(x) through the factored c_j products only (no monomial expansion).
inline Rational s_value(unsigned d, const Rational& x) {
    const auto c = detail::c_values(x, d);
    Rational acc = 0;
    for (unsigned j = d % 2; j <= d; j += 2) {
        if (((d - j) / 2) % 2 == 0)
            acc += c[j];
        else
            acc -= c[j];
    }
    return acc;
}

/// c_d(x) through its factored product.
inline Rational c_value(unsigned d, const Rational& x) { return detail::c_values(x, d)[d]; }

/// r_d(x) = s_d(x - 3 - (d+1)/2) + 2 (d even), s_d(x - 3 - (d+1)/2) - x + d + 6 (d odd).
inline PolyExact build_r(unsigned d) {
    if (d < 2) throw argument_error("r_d requires d >= 2");
    const PolyExact s = build_s(d);
    const Rational shift = 3 + make_rational(static_cast<long>(d) + 1, 2);
    ProductBasis basis = *s.basis();
    basis.shift = shift;
    PolyExact expanded = s.without_basis().shifted(-shift);
    if (d % 2 == 0) {
        basis.constant = 2;
        expanded = expanded + PolyExact::constant(2);
    } else {
        basis.linear = -1;
        basis.constant = static_cast<long>(d) + 6;
        expanded = expanded + PolyExact({basis.constant, Rational(-1)});
    }
    return PolyExact(detail::coeffs_of(expanded), std::move(basis));
}

/// (delta f)(x) = f(x + 1/2) - f(x - 1/2).
///
/// The monomial result is computed by Taylor shifts. A product basis, when
/// present, is carried along using delta c_j = c_{j-1}.
inline PolyExact central_difference(const PolyExact& f) {
    const Rational half = make_rational(1, 2);
    const PolyExact expanded = f.without_basis().shifted(half) - f.without_basis().shifted(-half);
    std::vector<Rational> coeffs(expanded.coefficients().begin(), expanded.coefficients().end());
    if (!f.basis()) return PolyExact(std::move(coeffs));
    ProductBasis basis;
    basis.shift = f.basis()->shift;
    basis.constant = f.basis()->linear;
    for (const auto& term : f.basis()->terms)
        if (term.index > 0) basis.terms.push_back({term.sign, term.index - 1});
    return PolyExact(std::move(coeffs), std::move(basis));
}

/// 6-periodic pattern 0, 1, 1, 0, -1, -1 on residues 0..5.
inline int sigma(std::int64_t m) {
    static constexpr int pattern[6] = {0, 1, 1, 0, -1, -1};
    return pattern[((m % 6) + 6) % 6];
}

/// Exact integer values of s_d on [-M, M] for odd d.
class SdTable {
public:
    SdTable(unsigned d, std::int64_t bound) : d_(d), bound_(bound) {
        if (d < 3 || d % 2 == 0) throw argument_error("SdTable requires odd d >= 3");
        if (bound < (static_cast<std::int64_t>(d) + 5) / 2)
            throw argument_error("SdTable range must cover |m| <= (d+5)/2");
        values_.resize(static_cast<std::size_t>(2 * bound + 1));
        for (std::int64_t m = 0; m <= bound; ++m) {
            const Rational v = s_value(d, Rational(static_cast<long>(m)));
            if (!is_integer(v))
                throw internal_error("s_" + std::to_string(d) + "(" + std::to_string(m) + ") = " + to_string(v) +
                                     " is not an integer");
            if (!mpz_fits_slong_p(v.get_num().get_mpz_t()))
                throw argument_error("s_d table value exceeds 64-bit range; reduce the table bound");
            const std::int64_t value = v.get_num().get_si();
            at_mut(m) = value;
            at_mut(-m) = -value;
        }
        const std::int64_t inner = (static_cast<std::int64_t>(d) + 1) / 2;
        const std::int64_t offset = 3 * (static_cast<std::int64_t>(d) - 1) / 2;
        for (std::int64_t m = -inner; m <= inner; ++m)
            if (at(m) != sigma(m + offset))
                throw internal_error("s_" + std::to_string(d) + "(" + std::to_string(m) +
                                     ") disagrees with the 6-periodic pattern");
    }

    unsigned degree() const { return d_; }
    std::int64_t bound() const { return bound_; }
    bool contains(std::int64_t m) const { return m >= -bound_ && m <= bound_; }

    std::int64_t at(std::int64_t m) const {
        if (!contains(m)) throw internal_error("s_d table lookup out of range: " + std::to_string(m));
        return values_[static_cast<std::size_t>(m + bound_)];
    }

    std::int64_t operator[](std::int64_t m) const { return values_[static_cast<std::size_t>(m + bound_)]; }

private:
    std::int64_t& at_mut(std::int64_t m) { return values_[static_cast<std::size_t>(m + bound_)]; }

    unsigned d_;
    std::int64_t bound_;
    std::vector<std::int64_t> values_;
};

inline SdTable build_sd_table(unsigned d, std::int64_t bound) { return SdTable(d, bound); }

} // namespace henon
