#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "demonwalk/rng.hpp"
#include "demonwalk/stats.hpp"

using namespace demonwalk;

TEST_CASE("merge_tallies sums componentwise") {
    CHECK(merge_tallies(Tally{3, 10}, Tally{2, 5}) == Tally{5, 15});
    CHECK(merge_tallies(Tally{0, 0}, Tally{7, 9}) == Tally{7, 9});
    const auto huge = std::numeric_limits<std::uint64_t>::max();
    CHECK_THROWS_AS(merge_tallies(Tally{0, huge}, Tally{0, 1}), DomainError);
}

TEST_CASE("merge is associative and commutative on random triples") {
    RngStream stream = derive_stream(Seed{11}, 0);
    for (int i = 0; i < 1000; ++i) {
        const Tally a{stream.next_below(1000), 1000 + stream.next_below(1000)};
        const Tally b{stream.next_below(1000), 1000 + stream.next_below(1000)};
        const Tally c{stream.next_below(1000), 1000 + stream.next_below(1000)};
        CHECK(merge_tallies(merge_tallies(a, b), c) == merge_tallies(a, merge_tallies(b, c)));
        CHECK(merge_tallies(a, b) == merge_tallies(b, a));
    }
}

TEST_CASE("wilson_interval matches the score formula") {
    SUBCASE("500/1000 at 95%") {
        const auto est = wilson_interval(Tally{500, 1000}, 0.95);
        CHECK(est.point == 0.5);
        CHECK(est.lo == doctest::Approx(0.4690696003681042).epsilon(1e-9));
        CHECK(est.hi == doctest::Approx(0.5309303996318958).epsilon(1e-9));
    }
    SUBCASE("all successes: hi pinned to 1") {
        const auto est = wilson_interval(Tally{1000, 1000}, 0.95);
        CHECK(est.hi == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(est.lo == doctest::Approx(0.996173241514445).epsilon(1e-9));
        CHECK(est.lo > 0.99);
    }
    SUBCASE("0/1: contains zero, hi below one") {
        const auto est = wilson_interval(Tally{0, 1}, 0.95);
        CHECK(est.lo == 0.0);
        CHECK(est.hi == doctest::Approx(0.7934506856227626).epsilon(1e-9));
        CHECK(est.hi < 1.0);
    }
    CHECK_THROWS_AS(wilson_interval(Tally{0, 0}, 0.95), DomainError);
    CHECK_THROWS_AS(wilson_interval(Tally{1, 2}, 1.5), ConfigError);
}

TEST_CASE("binomial_cdf agrees with reference tail values") {
    CHECK(binomial_cdf(0, 10, 0.5) == doctest::Approx(0.0009765625).epsilon(1e-12));
    CHECK(binomial_cdf(5, 10, 0.5) == doctest::Approx(0.623046875).epsilon(1e-12));
    CHECK(binomial_cdf(450, 1000, 0.5) == doctest::Approx(0.0008652680424881558).epsilon(1e-9));
    CHECK(binomial_cdf(3, 20, 0.3) == doctest::Approx(0.10708680450373087).epsilon(1e-9));
    CHECK(binomial_cdf(20, 20, 0.3) == 1.0);
    CHECK(binomial_cdf(25, 20, 0.3) == 1.0);
}

TEST_CASE("binomial_flag runs the one-sided exact test") {
    CHECK(binomial_flag(Tally{0, 10}, 0.5, 0.001, TailSide::Below) == SignificanceFlag::Triggered);
    CHECK(binomial_flag(Tally{5, 10}, 0.5, 0.001, TailSide::Below) == SignificanceFlag::NotTriggered);
    CHECK(binomial_flag(Tally{10, 10}, 0.5, 0.05, TailSide::Below) == SignificanceFlag::NotTriggered);
    CHECK(binomial_flag(Tally{10, 10}, 0.5, 0.05, TailSide::Above) == SignificanceFlag::Triggered);
    // above side: P(X >= 550 | 1000, 1/2) ~ 8.65e-4
    CHECK(binomial_flag(Tally{550, 1000}, 0.5, 0.001, TailSide::Above) == SignificanceFlag::Triggered);
    CHECK(binomial_flag(Tally{550, 1000}, 0.5, 0.0005, TailSide::Above) ==
          SignificanceFlag::NotTriggered);
    CHECK_THROWS_AS(binomial_flag(Tally{0, 0}, 0.5, 0.01, TailSide::Below), DomainError);
    CHECK_THROWS_AS(binomial_flag(Tally{1, 2}, 1.0, 0.01, TailSide::Below), ConfigError);
}

TEST_CASE("normal quantile and cdf invert each other") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-9));
    CHECK(normal_quantile(0.001) == doctest::Approx(-3.090232306167813).epsilon(1e-9));
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
    for (double p : {0.0001, 0.01, 0.2, 0.5, 0.77, 0.99, 0.99999})
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-9));
    CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
}

TEST_CASE("wilson 95% interval covers the truth in >= 93% of 200 small runs") {
    const double p = 11.0 / 18.0;
    RngStream stream = derive_stream(Seed{99}, 0);
    int covered = 0;
    for (int run = 0; run < 200; ++run) {
        Tally t;
        for (int i = 0; i < 1000; ++i) t.add(stream.next_unit() < p);
        const auto est = wilson_interval(t, 0.95);
        if (est.lo <= p && p <= est.hi) ++covered;
    }
    CHECK(covered >= 186);
}
