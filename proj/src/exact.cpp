#include "directions/exact.hpp"

#include "directions/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cctype>
#include <sstream>

namespace directions {

namespace mp = boost::multiprecision;

Natural isqrt(const Natural& n) {
    if (n < 0) throw DomainError("isqrt of a negative number");
    return mp::sqrt(n);
}

bool is_perfect_square(const Natural& n) {
    if (n < 0) return false;
    const Natural s = isqrt(n);
    return s * s == n;
}

std::pair<Natural, Natural> split_square(const Natural& n) {
    if (n < 0) throw DomainError("split_square of a negative number");
    if (n == 0) return {Natural(0), Natural(1)};
    Natural rest = n;
    Natural root = 1;
    Natural free_part = 1;
    // Beyond this many trial divisors the cofactor is only tested for being
    // a perfect square; a non-canonical radicand is harmless since point
    // identity is decided on squared coordinates.
    constexpr unsigned long long kTrialLimit = 2'000'000;
    for (unsigned long long p = 2; p <= kTrialLimit; p += (p == 2 ? 1 : 2)) {
        const Natural pp = Natural(p) * p;
        if (pp > rest) break;
        while (rest % pp == 0) {
            rest /= pp;
            root *= p;
        }
        if (rest % p == 0) {
            rest /= p;
            free_part *= p;
        }
    }
    if (rest > 1) {
        if (is_perfect_square(rest)) {
            root *= isqrt(rest);
        } else {
            free_part *= rest;
        }
    }
    return {root, free_part};
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    auto parse_int = [&](const std::string& part) {
        std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (start == part.size()) throw PreconditionError("malformed rational '" + text + "'");
        for (std::size_t i = start; i < part.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) {
                throw PreconditionError("malformed rational '" + text + "'");
            }
        }
        Natural value(part.substr(start));
        return part[0] == '-' ? Natural(-value) : value;
    };
    if (slash == std::string::npos) return Rational(parse_int(text));
    const Natural num = parse_int(text.substr(0, slash));
    const Natural den = parse_int(text.substr(slash + 1));
    if (den == 0) throw PreconditionError("zero denominator in '" + text + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& q) {
    std::ostringstream out;
    out << mp::numerator(q);
    if (mp::denominator(q) != 1) out << '/' << mp::denominator(q);
    return out.str();
}

// ---------------------------------------------------------------------------
// ExactCoord

ExactCoord::ExactCoord(Rational q, Natural r) : q_(std::move(q)), r_(std::move(r)) {
    if (r_ < 0) throw DomainError("negative radicand");
    if (q_ == 0 || r_ == 0) {
        q_ = 0;
        r_ = 1;
        return;
    }
    auto [root, free_part] = split_square(r_);
    q_ *= Rational(root);
    r_ = free_part;
}

ExactCoord ExactCoord::sqrt_of(const Rational& value) {
    if (value < 0) throw DomainError("square root of a negative rational");
    if (value == 0) return ExactCoord();
    // sqrt(a/b) = sqrt(a*b) / b
    const Natural a = mp::numerator(value);
    const Natural b = mp::denominator(value);
    return ExactCoord(Rational(1, b), a * b);
}

double ExactCoord::to_double() const {
    using Float = mp::cpp_bin_float_50;
    const Float value = Float(mp::numerator(q_)) / Float(mp::denominator(q_)) * mp::sqrt(Float(r_));
    return static_cast<double>(value);
}

std::string ExactCoord::to_string() const {
    if (q_ == 0) return "0";
    std::ostringstream out;
    if (r_ == 1) return directions::to_string(q_);
    if (q_ == 1) {
        out << "sqrt(" << r_ << ')';
    } else if (q_ == -1) {
        out << "-sqrt(" << r_ << ')';
    } else {
        out << directions::to_string(q_) << "*sqrt(" << r_ << ')';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// SurdSum

void SurdSum::add(const ExactCoord& term) {
    if (term.is_zero()) return;
    auto& coeff = terms_[term.r()];
    coeff += term.q();
    if (coeff == 0) terms_.erase(term.r());
}

double SurdSum::to_double() const {
    using Float = mp::cpp_bin_float_50;
    Float sum = 0;
    for (const auto& [r, q] : terms_) {
        sum += Float(mp::numerator(q)) / Float(mp::denominator(q)) * mp::sqrt(Float(r));
    }
    return static_cast<double>(sum);
}

std::string SurdSum::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [r, q] : terms_) {
        std::string term = ExactCoord(q, r).to_string();
        if (!first) {
            out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
        } else {
            out += term;
        }
        first = false;
    }
    return out;
}

}  // namespace directions
