#pragma once

// Exact quadratic-surd coordinates q * sqrt(r).

#include "directions/core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>

namespace directions {

using Rational = boost::multiprecision::cpp_rational;

/// Floor of the square root of a nonnegative integer.
Natural isqrt(const Natural& n);
bool is_perfect_square(const Natural& n);

/// Splits n = s^2 * f with f square-free; returns {s, f}. Uses trial
/// division, so intended for the moderate radicands that appear in target
/// sets and their normalizations.
std::pair<Natural, Natural> split_square(const Natural& n);

/// Parses "p", "p/q" or "-p/q" into a rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// The real number q * sqrt(r), kept in canonical form: r square-free,
/// and q = 0 implies r = 1.
class ExactCoord {
public:
    ExactCoord() : q_(0), r_(1) {}
    ExactCoord(Rational q, Natural r);
    explicit ExactCoord(long long integer) : ExactCoord(Rational(integer), Natural(1)) {}

    /// The nonnegative square root of a nonnegative rational, canonicalized.
    static ExactCoord sqrt_of(const Rational& value);

    const Rational& q() const { return q_; }
    const Natural& r() const { return r_; }

    bool is_zero() const { return q_ == 0; }
    bool is_rational() const { return r_ == 1; }
    int sign() const { return q_ < 0 ? -1 : (q_ > 0 ? 1 : 0); }
    /// (q * sqrt(r))^2 = q^2 * r.
    Rational square() const { return q_ * q_ * Rational(r_); }
    double to_double() const;

    /// "0", "3/5", "sqrt(2)", "1/2*sqrt(3)".
    std::string to_string() const;

    bool operator==(const ExactCoord&) const = default;

private:
    Rational q_;
    Natural r_;
};

/// A finite sum of surds sum_r c_r * sqrt(r) with square-free r, used to
/// print closed-form distances.
class SurdSum {
public:
    void add(const ExactCoord& term);
    bool is_zero() const { return terms_.empty(); }
    double to_double() const;
    std::string to_string() const;
    const std::map<Natural, Rational>& terms() const { return terms_; }

private:
    std::map<Natural, Rational> terms_;
};

}  // namespace directions
