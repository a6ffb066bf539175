#include "demonwalk/walks.hpp"

#include <numeric>

namespace demonwalk {

void StationDistribution::validate() const {
    Rational sum;
    for (const auto& p : probabilities) {
        if (p < Rational(0)) throw DomainError("StationDistribution: negative probability");
        sum += p;
    }
    if (!(sum == Rational(1))) throw DomainError("StationDistribution: probabilities sum to " + sum.to_string());
}

WalkState step_circular(const Track& track, const WalkState& state, Direction coin) {
    const int n = track.n_stations;
    if (state.station < 0 || state.station >= n) throw DomainError("step_circular: invalid station");
    const int next = coin == Direction::CW ? (state.station + 1) % n : (state.station + n - 1) % n;
    return WalkState{next, state.steps + 1};
}

LineStep step_line(const LineTrack& line, const WalkState& state, Direction coin) {
    const int n = line.n_stations;
    if (state.station < 0 || state.station >= n) throw DomainError("step_line: invalid station");
    if (state.station == 0) return {WalkState{1, state.steps + 1}, true};
    if (state.station == n - 1) return {WalkState{n - 2, state.steps + 1}, true};
    const int next = coin == Direction::CW ? state.station + 1 : state.station - 1;
    return {WalkState{next, state.steps + 1}, false};
}

StationDistribution stationary_distribution(ChainKind kind, int n_stations) {
    if (n_stations < 3) throw ConfigError("stationary_distribution: need N >= 3");
    StationDistribution dist;
    dist.probabilities.reserve(n_stations);
    if (kind == ChainKind::Circular) {
        for (int i = 0; i < n_stations; ++i) dist.probabilities.emplace_back(1, n_stations);
    } else {
        const long long m = n_stations - 1;
        for (int i = 0; i < n_stations; ++i) {
            const bool boundary = i == 0 || i == n_stations - 1;
            dist.probabilities.emplace_back(1, boundary ? 2 * m : m);
        }
    }
    return dist;
}

StationDistribution apply_transition(ChainKind kind, int n_stations, const StationDistribution& dist) {
    if (static_cast<int>(dist.probabilities.size()) != n_stations)
        throw DomainError("apply_transition: distribution size mismatch");
    const auto& p = dist.probabilities;
    const Rational half(1, 2);
    StationDistribution out;
    out.probabilities.assign(n_stations, Rational(0));
    if (kind == ChainKind::Circular) {
        for (int i = 0; i < n_stations; ++i) {
            const int prev = (i + n_stations - 1) % n_stations;
            const int next = (i + 1) % n_stations;
            out.probabilities[i] = half * p[prev] + half * p[next];
        }
    } else {
        for (int i = 0; i < n_stations; ++i) {
            // mass arriving at i from each neighbour
            if (i - 1 >= 0) out.probabilities[i] += (i - 1 == 0 ? p[0] : half * p[i - 1]);
            if (i + 1 < n_stations)
                out.probabilities[i] += (i + 1 == n_stations - 1 ? p[n_stations - 1] : half * p[i + 1]);
        }
    }
    return out;
}

int sample_stationary(const StationDistribution& dist, RngStream& stream) {
    dist.validate();
    // common denominator, then one exact bounded integer draw
    Rational::Int common_den = 1;
    for (const auto& p : dist.probabilities) {
        const auto d = p.den();
        common_den = common_den / boost::multiprecision::gcd(common_den, d) * d;
    }
    if (common_den > Rational::Int(1) << 62)
        throw DomainError("sample_stationary: common denominator too large for exact sampling");
    std::vector<std::uint64_t> weights;
    weights.reserve(dist.probabilities.size());
    std::uint64_t total = 0;
    for (const auto& p : dist.probabilities) {
        const auto w = (p.num() * (common_den / p.den())).convert_to<std::uint64_t>();
        weights.push_back(w);
        total += w;
    }
    std::uint64_t draw = stream.next_below(total);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (draw < weights[i]) return static_cast<int>(i);
        draw -= weights[i];
    }
    return static_cast<int>(weights.size()) - 1;  // unreachable for a valid distribution
}

}  // namespace demonwalk
