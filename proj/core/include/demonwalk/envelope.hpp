#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "demonwalk/errors.hpp"
#include "demonwalk/rng.hpp"
#include "demonwalk/stats.hpp"

namespace demonwalk {

/// The two envelope amounts, s < l.
struct EnvelopePair {
    double s;
    double l;

    EnvelopePair(double small, double large) : s(small), l(large) {
        if (!(small > 0.0)) throw ConfigError("envelope amounts must be positive");
        if (!(small < large)) throw ConfigError("envelope pair requires s < l");
    }
};

enum class BetDecision : std::uint8_t { Keep, Switch };

/// Threshold law for the bet: a CDF.plus a matching sampler. The shipped
/// constructors below keep both sides exact; arbitrary pairs are accepted
/// but validated only by spot checks.
struct ThresholdDistribution {
    std::string name;
    std::function<double(double)> cdf;                 // P(r <= x)
    std::function<double(RngStream&)> sample;

    static ThresholdDistribution uniform(double a, double b);
    static ThresholdDistribution exponential(double rate);
    static ThresholdDistribution gaussian(double mean, double sd);
    static ThresholdDistribution point_mass(double x);

    /// Parses spec strings: "uniform:a,b", "exp:rate", "normal:mu,sigma", "point:x".
    static ThresholdDistribution parse(const std::string& spec);
};

/// Keep the opened envelope iff the threshold sample does not exceed the
/// observed amount (the tie r == m keeps).
BetDecision decide(double observed, double threshold);

/// Exact success probability of the threshold strategy:
/// 1/2 + (cdf(l) - cdf(s))/2, always in [1/2, 1].
double exact_success_probability(const EnvelopePair& pair, const ThresholdDistribution& dist);

/// Monte Carlo run of the bet: per trial, open a uniformly random envelope,
/// draw the threshold, decide; success means ending with the larger amount.
Tally simulate_bets(const EnvelopePair& pair, const ThresholdDistribution& dist,
                    std::uint64_t trials, RngStream& stream);

}  // namespace demonwalk
