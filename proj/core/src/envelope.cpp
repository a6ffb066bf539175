#include "demonwalk/envelope.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace demonwalk {

namespace {

std::vector<double> parse_args(const std::string& spec, const std::string& name, std::size_t count) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ConfigError("distribution spec '" + spec + "' is missing parameters");
    std::vector<double> args;
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            args.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("distribution spec '" + spec + "': bad number '" + item + "'");
        }
    }
    if (args.size() != count)
        throw ConfigError("distribution '" + name + "' expects " + std::to_string(count) +
                          " parameter(s), got " + std::to_string(args.size()));
    return args;
}

}  // namespace

ThresholdDistribution ThresholdDistribution::uniform(double a, double b) {
    if (!(a < b)) throw ConfigError("uniform distribution requires a < b");
    return {"uniform:" + std::to_string(a) + "," + std::to_string(b),
            [a, b](double x) {
                if (x <= a) return 0.0;
                if (x >= b) return 1.0;
                return (x - a) / (b - a);
            },
            [a, b](RngStream& s) { return a + (b - a) * s.next_unit(); }};
}

ThresholdDistribution ThresholdDistribution::exponential(double rate) {
    if (!(rate > 0.0)) throw ConfigError("exponential distribution requires rate > 0");
    return {"exp:" + std::to_string(rate),
            [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); },
            [rate](RngStream& s) { return -std::log1p(-s.next_unit()) / rate; }};
}

ThresholdDistribution ThresholdDistribution::gaussian(double mean, double sd) {
    if (!(sd > 0.0)) throw ConfigError("gaussian distribution requires sd > 0");
    return {"normal:" + std::to_string(mean) + "," + std::to_string(sd),
            [mean, sd](double x) { return normal_cdf((x - mean) / sd); },
            // inverse-CDF sampling keeps one draw per sample and stays reproducible
            [mean, sd](RngStream& s) {
                double u = s.next_unit();
                if (u <= 0.0) u = 0x1.0p-53;
                return mean + sd * normal_quantile(u);
            }};
}

ThresholdDistribution ThresholdDistribution::point_mass(double x) {
    return {"point:" + std::to_string(x),
            [x](double t) { return t >= x ? 1.0 : 0.0; },
            [x](RngStream&) { return x; }};
}

ThresholdDistribution ThresholdDistribution::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    if (kind == "uniform") {
        const auto a = parse_args(spec, kind, 2);
        return uniform(a[0], a[1]);
    }
    if (kind == "exp") {
        const auto a = parse_args(spec, kind, 1);
        return exponential(a[0]);
    }
    if (kind == "normal") {
        const auto a = parse_args(spec, kind, 2);
        return gaussian(a[0], a[1]);
    }
    if (kind == "point") {
        const auto a = parse_args(spec, kind, 1);
        return point_mass(a[0]);
    }
    throw ConfigError("unknown distribution '" + spec +
                      "' (expected uniform:a,b | exp:rate | normal:mu,sigma | point:x)");
}

BetDecision decide(double observed, double threshold) {
    return threshold <= observed ? BetDecision::Keep : BetDecision::Switch;
}

double exact_success_probability(const EnvelopePair& pair, const ThresholdDistribution& dist) {
    const double fs = dist.cdf(pair.s);
    const double fl = dist.cdf(pair.l);
    if (fl < fs) throw DomainError("invalid distribution: cdf decreases between s and l");
    return 0.5 + (fl - fs) / 2.0;
}

Tally simulate_bets(const EnvelopePair& pair, const ThresholdDistribution& dist,
                    std::uint64_t trials, RngStream& stream) {
    Tally tally;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const bool opened_large = stream.next_bool();
        const double m = opened_large ? pair.l : pair.s;
        const double r = dist.sample(stream);
        const BetDecision d = decide(m, r);
        const bool ends_with_large = opened_large == (d == BetDecision::Keep);
        tally.add(ends_with_large);
    }
    return tally;
}

}  // namespace demonwalk
