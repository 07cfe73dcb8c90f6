// One PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include "directions/constructor.hpp"
#include "directions/density.hpp"
#include "directions/enumeration.hpp"
#include "directions/errors.hpp"
#include "directions/targets.hpp"

#include "oracles.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace directions;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < limit_seconds;
    const bool pass = outcome.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %d. %s | %s | %.2fs (limit %.0fs)%s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                outcome.detail.c_str(), seconds, limit_seconds, in_time ? "" : " OVER TIME");
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

GroundSet explicit_set(const std::vector<long long>& values) {
    GroundRule rule;
    rule.kind = RuleKind::explicit_list;
    return GroundSet::from_elements(rule, std::vector<Natural>(values.begin(), values.end()));
}

std::set<oracle::Row> rows_of(const DirectionCloud& cloud) {
    std::set<oracle::Row> out;
    for (const auto& d : cloud.to_vector()) {
        oracle::Row row;
        for (const auto& e : d.entries()) row.push_back(static_cast<long long>(e));
        out.insert(row);
    }
    return out;
}

/// The double read as its shortest round-trip decimal, as an exact fraction.
Rational decimal_value(double x) {
    char buf[64];
    const auto end = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed).ptr;
    std::string text(buf, end);
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(Natural(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    // A leading zero would make the parser read octal.
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Natural scale = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) scale *= 10;
    return Rational(Natural(digits), scale);
}

Outcome oracle_equivalence() {
    std::size_t compared = 0, mismatches = 0;
    for (unsigned mask = 1; mask < (1u << 12); ++mask) {
        if (std::popcount(mask) > 6) continue;
        std::vector<long long> values;
        for (int b = 0; b < 12; ++b)
            if ((mask >> b) & 1u) values.push_back(b + 1);
        const GroundSet A = explicit_set(values);
        for (std::size_t k : {2u, 3u}) {
            for (bool distinct : {false, true}) {
                const auto expected = oracle::directions(values, k, distinct);
                std::set<oracle::Row> got;
                try {
                    got = rows_of(directions::directions(A, k, distinct));
                } catch (const PreconditionError&) {
                    // Fewer than k elements: D^k distinct is empty.
                }
                ++compared;
                if (got != expected) ++mismatches;
            }
        }
    }
    return {mismatches == 0, std::to_string(compared) + " cases, " + std::to_string(mismatches) + " mismatches"};
}

Outcome witness_sandwich() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coord(0.05, 1.0);
    std::vector<UnitVector> xs{UnitVector::from_normalized({0.6, 0.8})};
    for (int i = 0; i < 20; ++i) {
        const std::size_t k = i % 2 == 0 ? 2 : 3;
        std::vector<double> v(k);
        for (auto& e : v) e = coord(rng);
        xs.push_back(rho(std::span<const double>(v)));
    }
    const std::uint64_t m = 10'000;
    bool ok = true;
    std::ostringstream detail;
    for (RuleKind kind : {RuleKind::naturals, RuleKind::primes}) {
        const GroundSet A = ground_set({kind}, 100'000);
        const double limit = kind == RuleKind::naturals ? 5e-3 : 2e-2;
        double worst = 0;
        std::size_t sandwich_failures = 0;
        for (const auto& x : xs) {
            const WitnessResult w = witness_tuple(A, x, m);
            for (std::size_t i = 0; i < x.dim(); ++i) {
                const Rational mx = decimal_value(x[i]) * m;
                const std::size_t idx = w.indices[i];
                const bool below = idx >= 2 && Rational(A[idx - 2]) <= mx;
                const bool above = mx < Rational(A[idx - 1]) && A[idx - 1] == w.tuple[i];
                if (!below || !above) ++sandwich_failures;
            }
            std::vector<double> t;
            for (const auto& e : w.tuple.entries()) t.push_back(static_cast<double>(e));
            const double error = oracle::dist(oracle::unit(t), std::vector<double>(x.coords().begin(), x.coords().end()));
            worst = std::max(worst, error);
        }
        ok = ok && sandwich_failures == 0 && worst < limit;
        detail << to_string(kind) << ": sandwich failures " << sandwich_failures << ", max error " << fmt(worst)
               << " (< " << fmt(limit) << "); ";
    }
    return {ok, detail.str() + std::to_string(xs.size()) + " points, m = 10^4"};
}

Outcome prime_density() {
    const SphereNet net = sphere_net(2, 0.01);
    std::vector<double> eps;
    for (std::uint64_t N : {100, 1000, 10000}) {
        const GroundSet P = ground_set({RuleKind::primes}, N);
        eps.push_back(covering_radius(directions::directions(P, 2, false), net).covering_radius);
    }
    const double eps3 = covering_radius(ground_set({RuleKind::primes}, 5000), 3, false, sphere_net(3, 0.05))
                            .covering_radius;
    const bool ok = eps[0] > eps[1] && eps[1] > eps[2] && eps[2] < 0.05 && eps3 < 0.1;
    return {ok, "k=2 eps " + fmt(eps[0]) + " > " + fmt(eps[1]) + " > " + fmt(eps[2]) + " (< 0.05); k=3 N=5000 eps " +
                    fmt(eps3) + " (< 0.1)"};
}

std::vector<TargetSpec> three_specs() {
    const TargetPoint p = TargetPoint::from_integers({1, 2});
    const TargetPoint eta({ExactCoord(1), ExactCoord::sqrt_of(Rational(2)), ExactCoord(0)});
    return {close_generators(std::span<const TargetPoint>(&p, 1)), close_generators(std::span<const TargetPoint>(&eta, 1)),
            TargetSpec::hyperplane_boundary(3)};
}

Outcome certificates() {
    std::size_t steps = 0, violations = 0;
    for (const TargetSpec& spec : three_specs()) {
        const Construction built = construct(spec, 20);
        std::set<std::pair<Natural, Natural>> ratios;
        for (const auto& step : built.state.history()) {
            ++steps;
            const std::size_t k = step.c.dim();
            const Natural f = oracle::factorial(static_cast<unsigned>(step.m));
            bool ok = step.certificate.all();
            // (C1) pairwise distinct entries.
            ok = ok && step.c.has_distinct_entries();
            // (C2) a fresh reduced ratio c_1 : c_2.
            const Natural g = gcd(step.c[0], step.c[1]);
            ok = ok && ratios.emplace(step.c[0] / g, step.c[1] / g).second;
            for (std::size_t i = 0; i < k; ++i) {
                // (C3) F = c_i - s_i - t satisfies F^2 <= m!^2 y_i^2 < (F + 1)^2.
                const Natural F = step.c[i] - step.s[i] - step.t;
                const Rational scaled = Rational(f * f) * step.y.squared_unit()[i];
                ok = ok && Rational(F * F) <= scaled && scaled < Rational((F + 1) * (F + 1));
                ok = ok && step.c[i] - F <= k + step.m;
            }
            // (C4) |rho(c) - y| <= 10 (k + m) / m!.
            if (step.m >= 4) {
                std::vector<double> c;
                for (const auto& e : step.c.entries()) c.push_back(static_cast<double>(e));
                const auto y = step.y.unit();
                const double error = oracle::dist(oracle::unit(c), std::vector<double>(y.coords().begin(), y.coords().end()));
                ok = ok && error <= 10.0 * static_cast<double>(k + step.m) / static_cast<double>(f) + 1e-15;
            }
            if (!ok) ++violations;
        }
    }
    std::size_t floor_mismatches = 0;
    const TargetPoint diagonal = TargetPoint::from_integers({1, 1});
    for (unsigned m = 1; m <= 30; ++m) {
        if (factorial_floor(diagonal, 0, m).value != oracle::floor_over_sqrt2_4096(m)) ++floor_mismatches;
    }
    return {violations == 0 && floor_mismatches == 0,
            std::to_string(steps) + " steps, " + std::to_string(violations) + " certificate violations; floor(m!/sqrt 2) "
                "mismatches vs 4096-bit oracle for m <= 30: " + std::to_string(floor_mismatches)};
}

Outcome round_trip() {
    bool ok = true;
    std::ostringstream detail;
    const char* names[] = {"closure rho(1,2)", "closure rho(1,sqrt2,0)", "hyperplane k=3"};
    int i = 0;
    for (const TargetSpec& spec : three_specs()) {
        const Construction built = construct(spec, 20);
        const VerificationReport r = verify_construction(built, 20, 10, 0.02, 1e-3);
        ok = ok && r.forward_hausdorff < 1e-6 && r.backward_violations == 0;
        detail << names[i++] << ": forward " << fmt(r.forward_hausdorff) << ", backward violations "
               << r.backward_violations << "/" << r.tail_directions << " (worst " << fmt(r.backward_hausdorff)
               << "), mechanism violations " << r.mechanism_violations << "; ";
    }
    return {ok, detail.str() + "tolerance 1e-3"};
}

Outcome dimension_chain() {
    const double h = 0.02;
    const ChainReport primes = chain_check(ground_set({RuleKind::primes}, 2000), 3, h);
    const Construction built = construct(TargetSpec::hyperplane_boundary(3), 20);
    const ChainReport hyper = chain_check(built.elements, 3, h, true);
    const bool ok = primes.forward_holds() && hyper.lower.covering_radius < 0.1 && hyper.upper.covering_radius > 0.2;
    return {ok, "primes N=2000: eps2 " + fmt(primes.lower.covering_radius) + " <= eps3 " +
                    fmt(primes.upper.covering_radius) + " + 2h; constructed hyperplane set (distinct): eps2 " +
                    fmt(hyper.lower.covering_radius) + " (< 0.1), eps3 " + fmt(hyper.upper.covering_radius) +
                    " (> 0.2)"};
}

Outcome repetition_gap() {
    const double h = 0.02;
    const GroundSet A = ground_set({RuleKind::naturals}, 1000);
    bool ok = true;
    std::ostringstream detail;
    for (std::size_t k : {2u, 3u}) {
        const SphereNet net = sphere_net(k, h);
        const double rep = covering_radius(A, k, false, net).covering_radius;
        const double dist = covering_radius(A, k, true, net).covering_radius;
        ok = ok && std::abs(rep - dist) <= 2 * h;
        detail << "k=" << k << ": rep " << fmt(rep) << ", distinct " << fmt(dist) << "; ";
    }
    return {ok, detail.str() + "bound 2h = 0.04"};
}

Outcome remark() {
    const RemarkReport r = demo_remark(3, 15);
    const bool ok = r.repetition_distance < 1e-3 && r.distinct_tail_distance > 0.1 && !r.separation_exact.empty();
    return {ok, "repetition " + fmt(r.repetition_distance) + " (< 1e-3), distinct tail " +
                    fmt(r.distinct_tail_distance) + " (> 0.1), separation " + r.separation_exact + " = " +
                    fmt(r.separation)};
}

Outcome injectivity() {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> word;
    std::uniform_int_distribution<std::uint64_t> shift(1, 1000);
    std::size_t collisions = 0;
    for (int trial = 0; trial < 10'000; ++trial) {
        const Natural u = word(rng);
        Natural v = word(rng);
        if (v == u) v += 1;
        const std::uint64_t t1 = shift(rng);
        std::uint64_t t2 = shift(rng);
        if (t2 == t1) t2 = t1 % 1000 + 1;
        if ((u + t1) * (v + t2) == (u + t2) * (v + t1)) ++collisions;
    }
    return {collisions == 0, "10^4 samples, " + std::to_string(collisions) + " equal cross-products"};
}

}  // namespace

int main() {
    criterion(1, "oracle equivalence on subsets of {1..12}", 10, oracle_equivalence);
    criterion(2, "witness sandwich and error", 5, witness_sandwich);
    criterion(3, "prime covering radius", 120, prime_density);
    criterion(4, "construction certificates", 30, certificates);
    criterion(5, "construction round trip", 60, round_trip);
    criterion(6, "dimension chain both ways", 60, dimension_chain);
    criterion(7, "repetition versus distinct entries", 60, repetition_gap);
    criterion(8, "repeated entries reach outside X", 30, remark);
    criterion(9, "t-injectivity", 1, injectivity);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
