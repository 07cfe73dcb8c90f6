#include "directions/core.hpp"
#include "directions/errors.hpp"
#include "directions/exact.hpp"

#include <doctest.h>

#include <random>

using namespace directions;

namespace {

UnitVector unit(std::vector<double> v) { return rho(std::span<const double>(v)); }

void check_close(const UnitVector& x, std::vector<double> expected, double tol = 1e-12) {
    REQUIRE(x.dim() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(x[i] == doctest::Approx(expected[i]).epsilon(tol));
}

}  // namespace

TEST_CASE("rho normalizes nonnegative vectors") {
    check_close(unit({3, 4}), {0.6, 0.8});
    check_close(unit({1, 0, 0}), {1, 0, 0});
    check_close(unit({1, 1}), {std::sqrt(0.5), std::sqrt(0.5)});
    CHECK_THROWS_AS(unit({0, 0}), DomainError);
    CHECK_THROWS_AS(unit({-1, 2}), DomainError);
}

TEST_CASE("rho of huge integers stays finite") {
    const Natural big = Natural(1) << 3000;
    const std::vector<Natural> v{big, big};
    check_close(rho(std::span<const Natural>(v)), {std::sqrt(0.5), std::sqrt(0.5)});
}

TEST_CASE("primitive reduces by the gcd") {
    CHECK(primitive({4, 6}) == primitive({2, 3}));
    CHECK(primitive({7, 7, 7}).to_string() == "(1,1,1)");
    CHECK(primitive({0, 5, 10}).to_string() == "(0,1,2)");
    CHECK_THROWS_AS(primitive({0, 0}), DomainError);
}

TEST_CASE("primitive equality matches geometric equality on random tuples") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> entry(1, 1'000'000);
    std::uniform_int_distribution<long long> factor(1, 50);
    for (int trial = 0; trial < 2000; ++trial) {
        const long long a0 = entry(rng), a1 = entry(rng), a2 = entry(rng);
        // Half the pairs are proportional by construction.
        const bool same = trial % 2 == 0;
        const long long f = factor(rng);
        const long long b0 = same ? a0 * f : entry(rng), b1 = same ? a1 * f : entry(rng),
                        b2 = same ? a2 * f : entry(rng);
        const bool equal = primitive({a0, a1, a2}) == primitive({b0, b1, b2});
        const bool close = distance(rho(IntTuple{a0, a1, a2}), rho(IntTuple{b0, b1, b2})) <= 1e-9;
        CHECK(equal == close);
    }
}

TEST_CASE("rho_I zeroes the complement and renormalizes") {
    const UnitVector x = unit({0.6, 0.8});
    check_close(rho_I(x, IndexSet(2, {0})), {1, 0});
    CHECK(rho_I(x, IndexSet(2, {0, 1})) == x);
    check_close(rho_I(unit({1, 2, 2}), IndexSet(3, {1, 2})), {0, std::sqrt(0.5), std::sqrt(0.5)});
    CHECK_THROWS_AS(rho_I(unit({1, 0}), IndexSet(2, {1})), DomainError);
    CHECK_THROWS_AS(IndexSet(3, {}), PreconditionError);
    CHECK_THROWS_AS(IndexSet(3, {3}), PreconditionError);
}

TEST_CASE("rho_I is idempotent and the full index set is the identity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const UnitVector x = unit({coord(rng), coord(rng), coord(rng), coord(rng)});
        CHECK(rho_I(x, IndexSet::all(4)) == x);
        for (std::uint64_t mask = 1; mask < 16; ++mask) {
            const IndexSet I = IndexSet::from_mask(4, mask);
            const UnitVector once = rho_I(x, I);
            CHECK(distance(rho_I(once, I), once) <= 1e-15);
        }
    }
}

TEST_CASE("permute reads coordinates through the permutation") {
    const UnitVector x = unit({0.6, 0.8});
    check_close(permute(x, Permutation({1, 0})), {0.8, 0.6});
    CHECK(permute(x, Permutation::identity(2)) == x);
    // pi = (1 -> 2, 2 -> 3, 3 -> 1): result_i = x_{pi(i)}.
    check_close(permute(unit({1, 0, 0}), Permutation({1, 2, 0})), {0, 0, 1});
    check_close(permute(unit({1, 0, 0}), Permutation({1, 2, 0}).inverse()), {0, 1, 0});
    CHECK_THROWS_AS(Permutation({0, 0, 1}), DomainError);
    CHECK_THROWS_AS(permute(x, Permutation::identity(3)), DomainError);
}

TEST_CASE("permute commutes with rho") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> entry(1, 1000);
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<long long> a{entry(rng), entry(rng), entry(rng)};
        for (const auto& pi : Permutation::all(3)) {
            const IntTuple permuted{a[pi(0)], a[pi(1)], a[pi(2)]};
            CHECK(distance(rho(permuted), permute(rho(IntTuple{a[0], a[1], a[2]}), pi)) <= 1e-15);
        }
    }
    CHECK(Permutation::all(4).size() == 24);
}

TEST_CASE("lift appends a zero coordinate") {
    check_close(lift(unit({0.6, 0.8})), {0.6, 0.8, 0});
    check_close(lift(unit({1, 0})), {1, 0, 0});
    check_close(lift(unit({1, 1})), {std::sqrt(0.5), std::sqrt(0.5), 0});
    CHECK(norm(lift(unit({0.3, 0.7})).coords()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(lift(unit({0.3, 0.7})) == lift(unit({0.7, 0.3})));
}

TEST_CASE("unit vectors reject off-sphere input") {
    CHECK_THROWS_AS(UnitVector::from_normalized({0.6, 0.81}), DomainError);
    CHECK_THROWS_AS(UnitVector::from_normalized({-0.0001, 1.0}), DomainError);
    CHECK_NOTHROW(UnitVector::from_normalized({0.6, 0.8}));
}

TEST_CASE("tuples need k >= 2 positive entries") {
    CHECK_THROWS_AS(IntTuple({5}), PreconditionError);
    CHECK_THROWS_AS(IntTuple({0, 3}), PreconditionError);
    CHECK(IntTuple({2, 3, 4}).has_distinct_entries());
    CHECK_FALSE(IntTuple({2, 3, 2}).has_distinct_entries());
}

TEST_CASE("exact surd coordinates") {
    CHECK(ExactCoord::sqrt_of(Rational(1, 2)).to_string() == "1/2*sqrt(2)");
    CHECK(ExactCoord::sqrt_of(Rational(9, 25)).to_string() == "3/5");
    CHECK(ExactCoord(Rational(2), Natural(8)).to_string() == "4*sqrt(2)");
    CHECK(ExactCoord(Rational(0), Natural(5)).to_string() == "0");
    CHECK(ExactCoord::sqrt_of(Rational(2)).to_double() == doctest::Approx(std::sqrt(2.0)));
    CHECK(isqrt(Natural(99)) == 9);
    CHECK(is_perfect_square(Natural(144)));
    CHECK_FALSE(is_perfect_square(Natural(145)));
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), PreconditionError);
}

TEST_CASE("budget strings") {
    CHECK(Budget::parse("5000").max_tuples == 5000);
    const Budget b = Budget::parse("tuples=1e9,net=50");
    CHECK(b.max_tuples == 1'000'000'000);
    CHECK(b.max_net_points == 50);
    CHECK_THROWS_AS(Budget::parse("cups=3"), PreconditionError);
}
