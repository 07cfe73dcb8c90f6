#include "directions/constructor.hpp"

#include "directions/errors.hpp"

#include <sstream>

namespace directions {

Natural factorial(std::uint64_t m) {
    Natural f = 1;
    for (std::uint64_t j = 2; j <= m; ++j) f *= j;
    return f;
}

FactorialFloor factorial_floor(const TargetPoint& y, std::size_t i, std::uint64_t m, unsigned precision_cap) {
    if (m == 0) throw PreconditionError("factorial floors are indexed from m = 1");
    if (i >= y.dim()) throw PreconditionError("coordinate index out of range");
    FactorialFloor out;
    out.m = m;
    out.i = i;

    const ExactCoord coord = y.unit_coords()[i];  // q * sqrt(r), r square-free
    const Natural num = numerator(coord.q());
    const Natural den = denominator(coord.q());
    const Natural scaled = factorial(m) * num;

    if (coord.is_rational()) {
        out.value = scaled / den;
        out.exact = true;
        return out;
    }
    // r > 1 square-free, so m! q sqrt(r) is irrational and never an integer:
    // the enclosure [scaled * s, scaled * (s + 1)) / (den * 2^p) with
    // s = floor(sqrt(r) 2^p) eventually straddles no integer.
    for (unsigned p = 64; p <= precision_cap; p *= 2) {
        const Natural s = isqrt(coord.r() << (2 * p));
        const Natural lo_num = scaled * s;
        const Natural hi_num = lo_num + scaled;
        const Natural denom = den << p;
        const Natural lo = lo_num / denom;
        if (hi_num <= (lo + 1) * denom) {
            out.value = lo;
            out.precision_bits = p;
            return out;
        }
    }
    std::ostringstream msg;
    msg << "factorial floor for m = " << m << ", coordinate " << i + 1 << " unresolved at " << precision_cap
        << " bits";
    throw ResourceError(msg.str());
}

}  // namespace directions
