#include "demonwalk/geometry.hpp"

#include <cmath>

namespace demonwalk {

std::string to_string(Direction d) { return d == Direction::CW ? "cw" : "ccw"; }

RealPosition RealPosition::wrap(double v) {
    double w = v - std::floor(v);
    if (w >= 1.0) w = 0.0;  // v was a tiny negative, -eps - floor(-eps) rounds to 1
    return RealPosition(w);
}

RealPosition position_of(const Track& track, GridPoint g) {
    if (g.index < 0 || g.index >= track.grid_points())
        throw DomainError("grid index " + std::to_string(g.index) + " out of range for N=" +
                          std::to_string(track.n_stations));
    return RealPosition(static_cast<double>(g.index) / track.grid_points());
}

GridPoint antipodal_light(const Track& track, int station) {
    if (station < 0 || station >= track.n_stations)
        throw DomainError("station " + std::to_string(station) + " out of range");
    const int g = (2 * station + track.n_stations) % track.grid_points();
    if (g % 2 != 0) return GridPoint{g};
    // even N: the antipode is a station; take the light clockwise of it
    return GridPoint{(g + 1) % track.grid_points()};
}

double arc_length(RealPosition from, RealPosition to, Direction dir) {
    const double diff = dir == Direction::CW ? to.value - from.value : from.value - to.value;
    const double len = diff - std::floor(diff);
    return len >= 1.0 ? 0.0 : len;
}

Direction first_encounter_direction(RealPosition from, RealPosition light, RealPosition r) {
    if (from == light) throw DomainError("first_encounter_direction: from coincides with light");
    const double d_r = arc_length(from, r, Direction::CW);
    const double d_light = arc_length(from, light, Direction::CW);
    return d_r <= d_light ? Direction::CW : Direction::CCW;
}

bool light_on_outer_arc(const Track& track, int station, GridPoint light) {
    if (!light.is_light()) throw DomainError("grid index " + std::to_string(light.index) + " is not a light");
    // outer arc = clockwise from station w+1 around to station w-1
    const int n2 = track.grid_points();
    const int from = (2 * (station + 1)) % n2;
    const int span = (light.index - from + n2) % n2;  // clockwise grid distance w+1 -> light
    return span > 0 && span < n2 - 4;                 // station w-1 sits at clockwise distance 2N-4
}

}  // namespace demonwalk
