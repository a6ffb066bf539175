#pragma once

#include <cstdint>

#include "demonwalk/errors.hpp"

namespace demonwalk {

/// Success/trial counts of a Bernoulli experiment.
struct Tally {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;

    void add(bool success) {
        ++trials;
        if (success) ++successes;
    }
    double rate() const { return trials == 0 ? 0.0 : static_cast<double>(successes) / trials; }

    friend bool operator==(const Tally&, const Tally&) = default;
};

/// Componentwise sum; throws DomainError on counter overflow.
Tally merge_tallies(const Tally& a, const Tally& b);

/// Binomial-proportion interval at a given confidence level.
struct IntervalEstimate {
    double point;
    double lo;
    double hi;
    double level;
};

/// Wilson score interval for t at the given confidence level (in (0,1)).
/// Throws DomainError when t.trials == 0 (the estimate is undefined).
IntervalEstimate wilson_interval(const Tally& t, double level);

enum class TailSide : std::uint8_t { Below, Above };

enum class SignificanceFlag : std::uint8_t { NotTriggered, Triggered };

/// One-sided exact binomial tail test of H0: rate = p0.
/// Side Below tests P(X <= successes), side Above tests P(X >= successes);
/// Triggered iff the tail probability is below alpha.
SignificanceFlag binomial_flag(const Tally& t, double p0, double alpha, TailSide side);

/// Exact binomial tail probability P(X <= k) for X ~ Binomial(n, p),
/// evaluated through the regularized incomplete beta function.
double binomial_cdf(std::uint64_t k, std::uint64_t n, double p);

/// Standard normal quantile (Acklam's rational approximation, |rel err| < 1.2e-9).
double normal_quantile(double p);

/// Standard normal CDF.
double normal_cdf(double x);

/// Half-width of the 4-sigma binomial band around probability p at n trials.
double four_sigma_band(double p, std::uint64_t n);

}  // namespace demonwalk
