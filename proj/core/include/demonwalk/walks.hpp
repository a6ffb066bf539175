#pragma once

#include <cstdint>
#include <vector>

#include "demonwalk/geometry.hpp"
#include "demonwalk/rational.hpp"
#include "demonwalk/rng.hpp"

namespace demonwalk {

/// Position of the train plus a step counter.
struct WalkState {
    int station;
    std::uint64_t steps = 0;
};

/// N >= 3 stations on a straight segment of normalized length 1; station i
/// at real position i/(N-1). Stations 0 and N-1 are reflecting barriers:
/// their departures are forced inward.
struct LineTrack {
    int n_stations;

    explicit LineTrack(int n) : n_stations(n) {
        if (n < 3) throw ConfigError("LineTrack requires at least 3 stations, got " + std::to_string(n));
    }

    double station_position(int station) const {
        return static_cast<double>(station) / (n_stations - 1);
    }
    bool is_boundary(int station) const { return station == 0 || station == n_stations - 1; }
};

/// Result of one line step; `forced` marks a reflecting-barrier move the
/// coin did not determine.
struct LineStep {
    WalkState state;
    bool forced;
};

/// Exact station distribution; entries are nonnegative rationals summing to 1.
struct StationDistribution {
    std::vector<Rational> probabilities;

    void validate() const;
};

enum class ChainKind : std::uint8_t { Circular, Line };

/// One step on the circle: CW -> +1 (mod N), CCW -> -1 (mod N).
WalkState step_circular(const Track& track, const WalkState& state, Direction coin);

/// One step on the line: interior stations move with the coin; the two
/// barriers move inward regardless of it (flagged forced).
LineStep step_line(const LineTrack& line, const WalkState& state, Direction coin);

/// Exact stationary vector: uniform 1/N on the circle; on the line
/// 1/(2(N-1)) at the two ends and 1/(N-1) inside.
StationDistribution stationary_distribution(ChainKind kind, int n_stations);

/// Applies the chain's one-step transition to a distribution, exactly.
StationDistribution apply_transition(ChainKind kind, int n_stations, const StationDistribution& dist);

/// Draws a station with the distribution's exact probabilities (the rational
/// weights are brought to a common denominator and an integer is drawn).
int sample_stationary(const StationDistribution& dist, RngStream& stream);

}  // namespace demonwalk
