#pragma once

#include <cstdint>
#include <string>

#include "demonwalk/errors.hpp"

namespace demonwalk {

/// Travel direction on the circular track. By project convention station
/// indices increase clockwise and a heads coin flip moves the train
/// clockwise, so CW doubles as "heads" and CCW as "tails" everywhere.
enum class Direction : std::uint8_t { CW, CCW };

constexpr Direction opposite(Direction d) {
    return d == Direction::CW ? Direction::CCW : Direction::CW;
}

std::string to_string(Direction d);

/// Circular track of N equally spaced stations on a circumference
/// normalized to 1. Station i sits at real position i/N, measured
/// clockwise from station 0.
struct Track {
    int n_stations;

    explicit Track(int n) : n_stations(n) {
        if (n < 3) throw ConfigError("Track requires at least 3 stations, got " + std::to_string(n));
    }

    double station_position(int station) const { return static_cast<double>(station) / n_stations; }
    int grid_points() const { return 2 * n_stations; }
};

/// A point of the half-station grid: index in 0..2N-1 at real position
/// index/(2N). Even indices are stations (station = index/2); odd indices
/// are the lights midway between adjacent stations.
struct GridPoint {
    int index;

    bool is_station() const { return index % 2 == 0; }
    bool is_light() const { return index % 2 != 0; }
    int station() const { return index / 2; }

    friend bool operator==(GridPoint a, GridPoint b) { return a.index == b.index; }
};

/// A real position on the unit-circumference track, in [0,1), measured
/// clockwise from station 0.
struct RealPosition {
    double value;

    explicit RealPosition(double v) : value(v) {
        if (!(v >= 0.0 && v < 1.0))
            throw DomainError("RealPosition must lie in [0,1), got " + std::to_string(v));
    }

    /// Wraps an arbitrary real onto [0,1).
    static RealPosition wrap(double v);

    friend bool operator==(RealPosition a, RealPosition b) { return a.value == b.value; }
};

/// Exact real position of a grid point: index/(2N).
RealPosition position_of(const Track& track, GridPoint g);

/// The odd grid point nearest to the point diametrically opposite station w.
/// For odd N this is the exact antipode; for even N the antipode is itself a
/// station and the tie between the two flanking lights breaks clockwise.
GridPoint antipodal_light(const Track& track, int station);

/// Length of travel from `from` to `to` in direction `dir`; 0 when from == to.
double arc_length(RealPosition from, RealPosition to, Direction dir);

/// Direction in which a traveller starting at `from` encounters `r` before
/// `light`. CW iff r lies strictly inside the clockwise arc from `from` to
/// `light`; the measure-zero ties r == from and r == light resolve to CW.
Direction first_encounter_direction(RealPosition from, RealPosition light, RealPosition r);

/// True iff the light lies strictly inside the arc joining stations w-1 and
/// w+1 that does NOT contain w. For N >= 5 that arc is the major arc, the
/// placement the postdiction strategy needs.
bool light_on_outer_arc(const Track& track, int station, GridPoint light);

}  // namespace demonwalk
