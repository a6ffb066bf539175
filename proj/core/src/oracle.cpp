#include "demonwalk/oracle.hpp"

#include <array>
#include <utility>

namespace demonwalk {

namespace {

// The pointer circle splits into 2N elementary cells [j/(2N), (j+1)/(2N))
// whose endpoints are the stations and lights, so every guess is constant
// on a cell. The predicate below re-derives the guess at the cell midpoint
// in exact rationals, independently of the floating-point geometry path.
Direction cell_guess_circular(int n, int from_station, GridPoint light, int cell) {
    const Rational mid(2LL * cell + 1, 4LL * n);
    const Rational from(from_station, n);
    const Rational light_pos(light.index, 2LL * n);
    const Rational d_r = (mid - from).mod1();
    const Rational d_light = (light_pos - from).mod1();
    return d_r <= d_light ? Direction::CW : Direction::CCW;
}

// P(guess == dir | current station) on the circle: count cells, each of
// exact mass 1/(2N).
Rational guess_probability_circular(int n, int station, GridPoint light, Direction dir) {
    long long cells = 0;
    for (int cell = 0; cell < 2 * n; ++cell)
        if (cell_guess_circular(n, station, light, cell) == dir) ++cells;
    return Rational(cells, 2LL * n);
}

void check_light(int n, GridPoint light) {
    if (light.index < 0 || light.index >= 2 * n)
        throw DomainError("oracle: grid index " + std::to_string(light.index) + " out of range");
    if (!light.is_light())
        throw DomainError("oracle: grid index " + std::to_string(light.index) + " is not a light");
}

// Line counterpart: 2(N-1) cells on the segment, guess = side of the cell
// midpoint relative to the current station.
Direction cell_guess_line(int n, int from_station, int cell) {
    const long long m = n - 1;
    const Rational mid(2LL * cell + 1, 4LL * m);
    const Rational from(from_station, m);
    return mid >= from ? Direction::CW : Direction::CCW;
}

Rational guess_probability_line(int n, int station, Direction dir) {
    const int cells_total = 2 * (n - 1);
    long long cells = 0;
    for (int cell = 0; cell < cells_total; ++cell)
        if (cell_guess_line(n, station, cell) == dir) ++cells;
    return Rational(cells, cells_total);
}

}  // namespace

Rational exact_postdiction_success(int n_stations, int w, GridPoint light) {
    if (n_stations < 3) throw ConfigError("exact_postdiction_success: need N >= 3");
    if (w < 0 || w >= n_stations) throw DomainError("exact_postdiction_success: invalid station");
    check_light(n_stations, light);
    const Rational half(1, 2);
    Rational total;
    // origin one stop counterclockwise of w: the coin was heads (CW); and vice versa
    const int origin_ccw = (w + n_stations - 1) % n_stations;
    const int origin_cw = (w + 1) % n_stations;
    total += half * guess_probability_circular(n_stations, origin_ccw, light, Direction::CW);
    total += half * guess_probability_circular(n_stations, origin_cw, light, Direction::CCW);
    return total;
}

SuccessTable exact_prediction_table(int n_stations, GridPoint light,
                                    const std::optional<StationDistribution>& stationary) {
    if (n_stations < 3) throw ConfigError("exact_prediction_table: need N >= 3");
    check_light(n_stations, light);
    StationDistribution law = stationary.value_or(stationary_distribution(ChainKind::Circular, n_stations));
    law.validate();
    if (static_cast<int>(law.probabilities.size()) != n_stations)
        throw ConfigError("exact_prediction_table: stationary vector size mismatch");

    const Rational half(1, 2);
    SuccessTable table;
    table.stationary = law;
    std::map<int, Rational> dest_mass, dest_correct;
    Rational overall;
    for (int s = 0; s < n_stations; ++s) {
        const Rational pi = law.probabilities[s];
        Rational correct_given_s;
        for (Direction coin : {Direction::CW, Direction::CCW}) {
            const int dest = coin == Direction::CW ? (s + 1) % n_stations : (s + n_stations - 1) % n_stations;
            const Rational p_match = guess_probability_circular(n_stations, s, light, coin);
            dest_mass[dest] += pi * half;
            dest_correct[dest] += pi * half * p_match;
            correct_given_s += half * p_match;
        }
        table.per_current[s] = correct_given_s;
        table.current_law[s] = pi;
        overall += pi * correct_given_s;
    }
    for (const auto& [dest, mass] : dest_mass) {
        table.destination_law[dest] = mass;
        table.per_destination[dest] = dest_correct[dest] / mass;
    }
    table.overall = overall;
    return table;
}

SuccessTable exact_line_table(int n_stations) {
    if (n_stations < 3) throw ConfigError("exact_line_table: need N >= 3");
    const StationDistribution law = stationary_distribution(ChainKind::Line, n_stations);
    const Rational half(1, 2);

    SuccessTable table;
    table.stationary = law;
    std::map<int, Rational> dest_mass, dest_correct;
    Rational scored_mass, scored_correct;
    for (int s = 1; s < n_stations - 1; ++s) {  // barrier departures are forced, never scored
        const Rational pi = law.probabilities[s];
        Rational correct_given_s;
        for (Direction coin : {Direction::CW, Direction::CCW}) {
            const int dest = coin == Direction::CW ? s + 1 : s - 1;
            const Rational p_match = guess_probability_line(n_stations, s, coin);
            dest_mass[dest] += pi * half;
            dest_correct[dest] += pi * half * p_match;
            correct_given_s += half * p_match;
        }
        table.per_current[s] = correct_given_s;
        scored_mass += pi;
        scored_correct += pi * correct_given_s;
    }
    for (const auto& [dest, mass] : dest_mass) {
        table.destination_law[dest] = mass / scored_mass;
        table.per_destination[dest] = dest_correct[dest] / mass;
    }
    for (auto& [s, p] : table.per_current) table.current_law[s] = law.probabilities[s] / scored_mass;
    table.overall = scored_correct / scored_mass;

    // Destinations every entry into which is a forced barrier move (only the
    // middle station of N = 3): score the forced moves by the pointer rule.
    const std::array<std::pair<int, int>, 2> barrier_feeds{{{0, 1}, {n_stations - 1, n_stations - 2}}};
    std::map<int, Rational> forced_mass, forced_correct;
    for (const auto& [barrier, dest] : barrier_feeds) {
        if (dest_mass.count(dest) > 0) continue;  // reachable by scored moves
        const Direction forced_dir = barrier == 0 ? Direction::CW : Direction::CCW;
        const Rational pi = law.probabilities[barrier];
        forced_mass[dest] += pi;
        forced_correct[dest] += pi * guess_probability_line(n_stations, barrier, forced_dir);
        table.degenerate_destinations.insert(dest);
    }
    for (int dest : table.degenerate_destinations)
        table.per_destination[dest] = forced_correct[dest] / forced_mass[dest];
    return table;
}

Rational exact_policy_success(int n_stations, GridPoint light, const std::set<int>& override_set) {
    if (n_stations < 3) throw ConfigError("exact_policy_success: need N >= 3");
    check_light(n_stations, light);
    for (int s : override_set)
        if (s < 0 || s >= n_stations)
            throw DomainError("exact_policy_success: override station " + std::to_string(s) + " out of range");
    const StationDistribution law = stationary_distribution(ChainKind::Circular, n_stations);
    const Rational half(1, 2);
    Rational overall;
    for (int s = 0; s < n_stations; ++s) {
        const Rational pi = law.probabilities[s];
        Rational correct_given_s;
        for (Direction coin : {Direction::CW, Direction::CCW}) {
            const Rational p_match = override_set.count(s) > 0
                                         ? (coin == Direction::CW ? Rational(1) : Rational(0))
                                         : guess_probability_circular(n_stations, s, light, coin);
            correct_given_s += half * p_match;
        }
        overall += pi * correct_given_s;
    }
    return overall;
}

}  // namespace demonwalk
