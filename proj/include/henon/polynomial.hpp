#pragma once

// Univariate polynomials with exact rational coefficients.
//
// A PolyExact always carries its monomial expansion. Members of the c_j
// family (and signed sums of them) additionally carry a product-basis form
//
//     f(x) = sum_k sign_k * c_{j_k}(x - shift) + linear * x + constant,
//
// which evaluates through the factored products of c_j and never touches the
// (large) expanded coefficients.

#include "henon/exact.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace henon {

/// sign * c_index
struct ProductTerm {
    int sign = 1;
    unsigned index = 0;

    friend bool operator==(const ProductTerm&, const ProductTerm&) = default;
};

struct ProductBasis {
    std::vector<ProductTerm> terms;
    Rational shift = 0;
    Rational linear = 0;
    Rational constant = 0;
};

namespace detail {

/// Values c_0(t), ..., c_n(t) through the two-step recurrence
/// c_j(t) = c_{j-2}(t) * (t^2 - ((j-1)/2)^2) / ((j-1) j).
inline std::vector<Rational> c_values(const Rational& t, unsigned n) {
    std::vector<Rational> out(n + 1);
    const Rational t2 = t * t;
    out[0] = 1;
    if (n >= 1) out[1] = t;
    for (unsigned j = 2; j <= n; ++j) {
        const Rational half = make_rational(static_cast<long>(j) - 1, 2);
        out[j] = out[j - 2] * (t2 - half * half);
        out[j] /= Rational(static_cast<unsigned long>(j - 1) * j);
    }
    return out;
}

inline void trim(std::vector<Rational>& coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

} // namespace detail

class PolyExact {
public:
    PolyExact() = default;

    /// Ascending monomial coefficients.
    explicit PolyExact(std::vector<Rational> coeffs, std::optional<ProductBasis> basis = std::nullopt)
        : coeffs_(std::move(coeffs)), basis_(std::move(basis)) {
        detail::trim(coeffs_);
    }

    static PolyExact constant(const Rational& c) { return PolyExact({c}); }
    static PolyExact identity() { return PolyExact({Rational(0), Rational(1)}); }

    bool is_zero() const { return coeffs_.empty(); }

    /// Degree; the zero polynomial reports 0.
    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

    std::span<const Rational> coefficients() const { return coeffs_; }

    Rational coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

    Rational leading_coefficient() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

    const std::optional<ProductBasis>& basis() const { return basis_; }

    PolyExact without_basis() const { return PolyExact(coeffs_); }

    Rational eval_monomial(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }

    /// Only valid when basis() is present.
    Rational eval_basis(const Rational& x) const {
        if (!basis_) throw argument_error("polynomial has no product-basis form");
        unsigned top = 0;
        for (const auto& term : basis_->terms) top = std::max(top, term.index);
        const auto c = detail::c_values(x - basis_->shift, top);
        Rational acc = basis_->linear * x + basis_->constant;
        for (const auto& term : basis_->terms) {
            if (term.sign > 0)
                acc += c[term.index];
            else
                acc -= c[term.index];
        }
        return acc;
    }

    /// Product-basis evaluation when available, Horner otherwise.
    Rational operator()(const Rational& x) const { return basis_ ? eval_basis(x) : eval_monomial(x); }

    PolyExact derivative() const {
        std::vector<Rational> out;
        for (std::size_t k = 1; k < coeffs_.size(); ++k) out.push_back(coeffs_[k] * static_cast<unsigned long>(k));
        return PolyExact(std::move(out));
    }

    /// Monomial coefficients of f(x + a).
    PolyExact shifted(const Rational& a) const {
        // Repeated synthetic division (Taylor shift).
        std::vector<Rational> c = coeffs_;
        const std::size_t n = c.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = n - 1; k > i; --k) c[k - 1] += a * c[k];
        return PolyExact(std::move(c));
    }

    friend PolyExact operator+(const PolyExact& f, const PolyExact& g) {
        std::vector<Rational> out(std::max(f.coeffs_.size(), g.coeffs_.size()));
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = f.coefficient(k) + g.coefficient(k);
        return PolyExact(std::move(out));
    }

    friend PolyExact operator-(const PolyExact& f) {
        std::vector<Rational> out(f.coeffs_.begin(), f.coeffs_.end());
        for (auto& c : out) c = -c;
        return PolyExact(std::move(out));
    }

    friend PolyExact operator-(const PolyExact& f, const PolyExact& g) { return f + (-g); }

    friend PolyExact operator*(const PolyExact& f, const PolyExact& g) {
        if (f.is_zero() || g.is_zero()) return {};
        std::vector<Rational> out(f.coeffs_.size() + g.coeffs_.size() - 1);
        for (std::size_t i = 0; i < f.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < g.coeffs_.size(); ++j) out[i + j] += f.coeffs_[i] * g.coeffs_[j];
        return PolyExact(std::move(out));
    }

    friend PolyExact operator*(const Rational& a, const PolyExact& f) { return PolyExact::constant(a) * f; }

    /// Coefficient-wise equality; the basis form is ignored.
    friend bool operator==(const PolyExact& f, const PolyExact& g) { return f.coeffs_ == g.coeffs_; }

private:
    std::vector<Rational> coeffs_;
    std::optional<ProductBasis> basis_;
};

inline Rational eval_exact(const PolyExact& f, const Rational& x) { return f(x); }

/// Human-readable form with exact coefficients, highest degree first,
/// e.g. "x^3/6 - 7x/6".
inline std::string format_polynomial(const PolyExact& f) {
    const auto coeffs = f.coefficients();
    if (coeffs.empty()) return "0";
    std::string out;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        const Rational& c = coeffs[k];
        if (c == 0) continue;
        const bool negative = c < 0;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        const BigInt num = abs(c.get_num());
        const BigInt& den = c.get_den();
        std::string term;
        if (k == 0 || num != 1) term += num.get_str();
        if (k >= 1) term += "x";
        if (k >= 2) term += "^" + std::to_string(k);
        if (den != 1) term += "/" + den.get_str();
        out += term;
    }
    return out;
}

/// The unique polynomial of degree < values.size() with f(1 + i) = values[i],
/// built in the Newton basis binom(x - 1, k).
inline PolyExact interpolate_from_one(std::span<const Rational> values) {
    std::vector<Rational> diffs(values.begin(), values.end());
    std::vector<Rational> leading;
    while (!diffs.empty()) {
        leading.push_back(diffs.front());
        for (std::size_t i = 0; i + 1 < diffs.size(); ++i) diffs[i] = diffs[i + 1] - diffs[i];
        diffs.pop_back();
    }
    PolyExact result;
    PolyExact newton = PolyExact::constant(1); // binom(x - 1, k)
    for (std::size_t k = 0; k < leading.size(); ++k) {
        result = result + leading[k] * newton;
        const PolyExact factor({make_rational(-1 - static_cast<long>(k), 1), Rational(1)});
        newton = make_rational(1, static_cast<long>(k) + 1) * (newton * factor);
    }
    return result;
}

} // namespace henon
