#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "bellscope/errors.hpp"

namespace bellscope {

// Exact arithmetic scalar. Arbitrary precision: simplex pivots and product
// priors can blow well past 64-bit numerators.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// The two number representations the library works in. Tables are homogeneous;
// crossing between representations goes through rationalize()/to_floating()
// only, never implicitly.
template <class S> struct scalar_traits;

template <> struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational default_tol() { return Rational(0); }
    static double to_double(const Rational& v) { return v.convert_to<double>(); }
    static bool finite(const Rational&) { return true; }
};

template <> struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double default_tol() { return 1e-9; }
    static double to_double(double v) { return v; }
    static bool finite(double v) { return std::isfinite(v); }
};

inline Rational sabs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
inline double sabs(double v) { return std::fabs(v); }

inline std::string num_to_string(const Rational& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

inline std::string num_to_string(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Best rational approximation to x with denominator <= max_den, by continued
// fractions with a final semiconvergent. Input is clamped to [0,1]: this is
// used only on probabilities, where sub-epsilon negatives from floating
// arithmetic must map to 0.
inline Rational rationalize_probability(double x, std::int64_t max_den = 1000000) {
    if (max_den < 1) throw DomainError("rationalize: denominator cap must be >= 1");
    if (!(x > 0.0)) return Rational(0);
    if (x >= 1.0) return Rational(1);

    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = x;
    while (true) {
        double a_floor = std::floor(frac);
        if (a_floor > static_cast<double>(max_den)) break;
        std::int64_t a = static_cast<std::int64_t>(a_floor);
        if (q1 != 0 && a > (max_den - q0) / q1) {
            // q2 would exceed the cap: take the best semiconvergent.
            std::int64_t k = (max_den - q0) / q1;
            std::int64_t ps = k * p1 + p0, qs = k * q1 + q0;
            double err_semi = std::fabs(x - static_cast<double>(ps) / static_cast<double>(qs));
            double err_conv = std::fabs(x - static_cast<double>(p1) / static_cast<double>(q1));
            if (qs > 0 && err_semi < err_conv) return Rational(ps, qs);
            return Rational(p1, q1);
        }
        std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - static_cast<double>(a);
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    return Rational(p1, q1);
}

} // namespace bellscope
