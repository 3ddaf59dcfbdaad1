#pragma once

// Exact integer / rational arithmetic and p-adic absolute values.
//
// Integers and rationals are GMP values; mpq_class results of arithmetic are
// always canonical (lowest terms, positive denominator).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace henon {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Precondition on caller-supplied arguments failed.
struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Mathematically undefined request (e.g. valuation of zero).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// An internal consistency check failed; signals a bug rather than bad input.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// A proven statement was contradicted by a computation.
struct contract_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(BigInt(num), BigInt(den));
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

/// Parses "a", "-a" or "a/b".
inline Rational parse_rational(std::string_view text) {
    const std::string s(text);
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt(s, 10));
        const BigInt den(s.substr(slash + 1), 10);
        if (den == 0) throw argument_error("zero denominator in '" + s + "'");
        return make_rational(BigInt(s.substr(0, slash), 10), den);
    } catch (const std::invalid_argument&) {
        throw argument_error("not a rational number: '" + s + "'");
    }
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline BigInt factorial(unsigned long n) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

inline void require_prime(std::int64_t p) {
    if (!is_prime(p)) throw argument_error("not a prime: " + std::to_string(p));
}

/// Exact p^e for any integer exponent.
inline Rational prime_power(std::int64_t p, long e) {
    BigInt pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? Rational(pe) : Rational(BigInt(1), pe);
}

namespace detail {
inline long integer_valuation(const BigInt& z, std::int64_t p) {
    BigInt rest = abs(z);
    const BigInt bp(static_cast<long>(p));
    long v = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), bp.get_mpz_t())) {
        rest /= bp;
        ++v;
    }
    return v;
}
} // namespace detail

inline long padic_valuation(const Rational& q, std::int64_t p) {
    require_prime(p);
    if (q == 0) throw domain_error("p-adic valuation of 0 is +infinity");
    return detail::integer_valuation(q.get_num(), p) - detail::integer_valuation(q.get_den(), p);
}

/// |q|_p = p^(-v_p(q)), with |0|_p = 0.
inline Rational padic_abs(const Rational& q, std::int64_t p) {
    require_prime(p);
    if (q == 0) return Rational(0);
    return prime_power(p, -padic_valuation(q, p));
}

/// v_p(d!) by Legendre's formula.
inline long factorial_valuation(long d, std::int64_t p) {
    require_prime(p);
    if (d < 0) throw argument_error("factorial of a negative number");
    long v = 0;
    for (std::int64_t pk = p; pk <= d; pk *= p) {
        v += static_cast<long>(d / pk);
        if (pk > d / p) break;
    }
    return v;
}

/// |d!|_p without forming d!.
inline Rational factorial_padic_abs(long d, std::int64_t p) {
    if (d < 1) throw argument_error("factorial_padic_abs requires d >= 1");
    return prime_power(p, -factorial_valuation(d, p));
}

/// A p-adic absolute value held exactly as p^(-valuation); zero is represented
/// by `is_zero`.
struct PadicAbs {
    std::int64_t prime = 2;
    long valuation = 0;
    bool is_zero = false;

    static PadicAbs of(const Rational& q, std::int64_t p) {
        require_prime(p);
        if (q == 0) return {p, 0, true};
        return {p, padic_valuation(q, p), false};
    }

    Rational value() const { return is_zero ? Rational(0) : prime_power(prime, -valuation); }

    friend PadicAbs operator*(const PadicAbs& a, const PadicAbs& b) {
        if (a.prime != b.prime) throw argument_error("p-adic absolute values at different primes");
        if (a.is_zero || b.is_zero) return {a.prime, 0, true};
        return {a.prime, a.valuation + b.valuation, false};
    }

    friend bool operator==(const PadicAbs& a, const PadicAbs& b) {
        return a.prime == b.prime && a.is_zero == b.is_zero && (a.is_zero || a.valuation == b.valuation);
    }
};

} // namespace henon
