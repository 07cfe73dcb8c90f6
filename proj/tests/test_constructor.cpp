#include "directions/constructor.hpp"
#include "directions/errors.hpp"
#include "directions/io.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace directions;

namespace {

TargetPoint eta3() {
    return TargetPoint({ExactCoord(1), ExactCoord::sqrt_of(Rational(2)), ExactCoord(0)});
}

TargetSpec closure_of(const TargetPoint& p) { return close_generators(std::span<const TargetPoint>(&p, 1)); }

}  // namespace

TEST_CASE("factorial floors") {
    const TargetPoint diagonal = TargetPoint::from_integers({1, 1});
    CHECK(factorial_floor(TargetPoint::from_integers({0, 1}), 0, 7).value == 0);
    CHECK(factorial_floor(diagonal, 0, 5).value == 84);
    const FactorialFloor rational = factorial_floor(TargetPoint::from_integers({3, 4}), 0, 4);
    CHECK(rational.value == 14);
    CHECK(rational.exact);
    CHECK(factorial_floor(TargetPoint::from_integers({3, 4}), 1, 5).value == 96);  // 120 * 4/5 is an integer

    for (unsigned m = 1; m <= 30; ++m) {
        const FactorialFloor f = factorial_floor(diagonal, 1, m);
        CHECK(f.value == oracle::floor_over_sqrt2_4096(m));
        CHECK(f.value == oracle::floor_sqrt_route(m, 1, 2));
        CHECK_FALSE(f.exact);
    }
    CHECK_THROWS_AS(factorial_floor(diagonal, 0, 0), PreconditionError);
    CHECK_THROWS_AS(factorial_floor(diagonal, 2, 3), PreconditionError);
    // 30! is about 2^108, so 64 bits cannot separate the floor.
    CHECK_THROWS_AS(factorial_floor(diagonal, 0, 30, 64), ResourceError);
}

TEST_CASE("factorial floors match the square-root route on random surd points") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long long> q(0, 9), r(1, 30);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<ExactCoord> coords;
        for (int i = 0; i < 3; ++i) coords.emplace_back(Rational(q(rng)), Natural(r(rng)));
        if (std::all_of(coords.begin(), coords.end(), [](const ExactCoord& c) { return c.is_zero(); })) continue;
        const TargetPoint y(coords);
        for (unsigned m : {1u, 6u, 17u, 40u}) {
            for (std::size_t i = 0; i < 3; ++i) {
                const Rational& y2 = y.squared_unit()[i];
                const auto num = numerator(y2), den = denominator(y2);
                const auto f = oracle::factorial(m);
                const Natural expected = boost::multiprecision::sqrt(Natural(f * f * num / den));
                CHECK(factorial_floor(y, i, m).value == expected);
            }
        }
    }
}

TEST_CASE("construction steps") {
    ConstructionState state(2);
    CHECK(construct_step(TargetPoint::from_integers({1, 0}), 1, state) == IntTuple{3, 2});
    CHECK(construct_step(TargetPoint::from_integers({0, 1}), 2, state) == IntTuple{2, 4});
    const StepRecord& second = state.history().back();
    CHECK(second.s == std::vector<std::uint64_t>{1, 1});
    CHECK(second.t == 1);
    CHECK(second.bases == std::vector<Natural>{0, 2});
    CHECK(state.registry().size() == 2);

    // Out of order steps are rejected.
    CHECK_THROWS_AS(construct_step(TargetPoint::from_integers({1, 1}), 5, state), PreconditionError);
    CHECK_THROWS_AS(construct_step(TargetPoint::from_integers({1, 1, 1}), 3, state), PreconditionError);

    SUBCASE("equal coordinates are separated by the offsets") {
        const StepRecord* last = nullptr;
        construct_step(TargetPoint::from_integers({1, 1}), 3, state);
        last = &state.history().back();
        CHECK(last->bases[0] == last->bases[1]);
        CHECK(last->s == std::vector<std::uint64_t>{1, 2});
        CHECK(last->c.has_distinct_entries());
    }
}

TEST_CASE("an occupied ratio forces a larger shift") {
    const Construction built = construct(closure_of(TargetPoint::from_integers({1, 2})), 2);
    // Step 2 targets rho(2,1): t = 1 would give (3, 2), the ratio of step 1.
    CHECK(built.state.history()[1].c == IntTuple{4, 3});
    CHECK(built.state.history()[1].t == 2);
}

TEST_CASE("constructed elements may repeat across steps") {
    const Construction built = construct(closure_of(TargetPoint::from_integers({1, 2})), 8);
    std::size_t produced = 0;
    for (const auto& step : built.state.history()) {
        CHECK(step.c.has_distinct_entries());
        produced += step.c.dim();
    }
    CHECK(produced == 16);
    // The value 2 comes from steps 1, 4, 5 and 8 (zero coordinates give s + t).
    CHECK(built.elements.size() == 11);
    CHECK(built.elements[0] == 2);
    CHECK(built.elements.origins()[0].size() == 4);
    CHECK(built.all_certified());
    CHECK(construct(closure_of(TargetPoint::from_integers({1, 2})), 0).elements.empty());
}

TEST_CASE("hyperplane construction approaches its targets") {
    const Construction built = construct(TargetSpec::hyperplane_boundary(3), 10);
    std::size_t produced = 0;
    for (const auto& step : built.state.history()) {
        produced += step.c.dim();
        const double error = distance(rho(step.c), step.y.unit());
        CHECK(error == doctest::Approx(step.certificate.rho_error).epsilon(1e-6));
        if (step.m >= 8) CHECK(error < 1e-4);
    }
    CHECK(produced == 30);
    // At m = 7 the error is about 4e-4: within the certified 10 (k + m) / m!, not below 1e-4.
    const double seventh = built.state.history()[6].certificate.rho_error;
    CHECK(seventh > 1e-4);
    CHECK(seventh <= 10.0 * 10 / 5040);
}

TEST_CASE("certificates hold for twenty steps") {
    for (const TargetSpec& spec :
         {closure_of(TargetPoint::from_integers({1, 2})), closure_of(eta3()), TargetSpec::hyperplane_boundary(3)}) {
        const Construction built = construct(spec, 20);
        for (const auto& step : built.state.history()) {
            CHECK(step.certificate.distinct_entries);
            CHECK(step.certificate.new_ratio);
            CHECK(step.certificate.floor_offsets);
            CHECK(step.certificate.rho_bound);
        }
        // The last step works at the scale of 20!, about 2.4e18.
        CHECK(built.elements.elements().back() > (Natural(1) << 60));
    }
}

TEST_CASE("the shift map is injective") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint64_t> word;
    std::uniform_int_distribution<std::uint64_t> shift(1, 1000);
    for (int trial = 0; trial < 10'000; ++trial) {
        const Natural u = (Natural(word(rng)) << 64) + word(rng);
        Natural v = (Natural(word(rng)) << 64) + word(rng);
        if (v == u) v += 1;
        const std::uint64_t t1 = shift(rng);
        std::uint64_t t2 = shift(rng);
        if (t2 == t1) t2 = t1 % 1000 + 1;
        CHECK((u + t1) * (v + t2) != (u + t2) * (v + t1));
    }
}

TEST_CASE("construction preconditions") {
    const TargetSpec raw = TargetSpec::finite_set(2, {TargetPoint::from_integers({1, 2})});
    CHECK_THROWS_AS(construct(raw, 3), PreconditionError);
    const TargetSpec custom = TargetSpec::custom(2, [](std::uint64_t) { return TargetPoint::from_integers({1, 1}); });
    CHECK_THROWS_AS(construct(custom, 3), PreconditionError);
}

TEST_CASE("verification of a construction") {
    const Construction built = construct(closure_of(eta3()), 20);
    const VerificationReport report = verify_construction(built, 20, 10, 0.05);
    CHECK(report.forward_sample_size == 9);
    CHECK(report.forward_hausdorff < 1e-6);
    CHECK(report.tail_threshold == oracle::factorial(10));
    CHECK(report.tail_elements > 0);
    CHECK(report.mechanism_violations == 0);
    CHECK(report.mechanism_max_ratio <= 1.0);
    // Mixed-scale tail tuples land near projected targets, not on X itself.
    CHECK(report.backward_hausdorff > 1e-3);

    const auto json = to_json(report);
    CHECK(json["schema_version"] == kSchemaVersion);
    CHECK(json["tail_threshold"] == "3628800");

    CHECK_THROWS_AS(verify_construction(built, 21, 10, 0.05), PreconditionError);
    CHECK_THROWS_AS(verify_construction(built, 20, 20, 0.05), PreconditionError);
    Budget tight;
    tight.max_tuples = 10;
    CHECK_THROWS_AS(verify_construction(built, 20, 10, 0.05, 1e-3, tight), ResourceError);
}

TEST_CASE("the two-point planar target accumulates only at the axes") {
    const Construction built = construct(closure_of(TargetPoint::from_integers({1, 0})), 16);
    const VerificationReport report = verify_construction(built, 16, 8, 0.05);
    CHECK(report.forward_hausdorff < 1e-6);
    // Tail pairs from different scales approach an axis at rate 1 / m.
    CHECK(report.backward_hausdorff < 0.2);
    CHECK(report.mechanism_violations == 0);
}

TEST_CASE("repeated entries reach a point outside X") {
    const TargetSpec X = closure_of(eta3());
    const Construction built = construct(X, 15);
    const TargetPoint theta({ExactCoord(1), ExactCoord::sqrt_of(Rational(2)), ExactCoord(1)});
    for (const auto& step : built.state.history()) {
        if (!(step.y == eta3()) || step.m < 8) continue;
        const IntTuple repeated(std::vector<Natural>{step.c[0], step.c[1], step.c[0]});
        CHECK(distance(rho(repeated), theta.unit()) < 1e-4);
    }
    const RemarkReport report = demo_remark(3, 15);
    CHECK(report.target_size == 9);
    CHECK(report.repetition_distance < 1e-3);
    CHECK(report.distinct_tail_distance > 0.1);
    CHECK(report.separation == doctest::Approx(std::sqrt(2 - std::sqrt(3.0))));
    CHECK(report.separation_exact == "sqrt(2 - 2*(1/2*sqrt(3)))");
    CHECK(X.distance_to(theta.unit()) == doctest::Approx(report.separation));

    const RemarkReport four = demo_remark(4, 12);
    CHECK(four.repetition_distance < 1e-3);
    CHECK(four.distinct_tail_distance > 0.1);
    CHECK(four.separation > 0.3);
    CHECK_THROWS_AS(demo_remark(2, 10), PreconditionError);
}

TEST_CASE("construction dump records") {
    const Construction built = construct(closure_of(eta3()), 3);
    const auto line = to_json(built.state.history()[1]);
    CHECK(line["m"] == 2);
    CHECK(line["c"].size() == 3);
    CHECK(line["c"][0].is_string());
    CHECK(line["y"][0].get<std::string>().find("sqrt") != std::string::npos);
    CHECK(line.contains("rho_error"));
    CHECK(line.contains("s"));
    CHECK(line.contains("t"));
}
