#pragma once

#include <map>
#include <optional>
#include <set>

#include "demonwalk/geometry.hpp"
#include "demonwalk/rational.hpp"
#include "demonwalk/walks.hpp"

namespace demonwalk {

/// Exact success probabilities of a prediction setup, produced by
/// brute-force enumeration over (station, coin, pointer cell) in rational
/// arithmetic. `current_law` and `destination_law` are the scored-event
/// conditionals the identities below hold under; on the circle they
/// coincide with the stationary law and the uniform destination law.
///
/// Identities (exact): overall == sum_s current_law[s] * per_current[s]
///                   == sum_d destination_law[d] * per_destination[d].
struct SuccessTable {
    std::map<int, Rational> per_destination;
    std::map<int, Rational> per_current;
    Rational overall;
    StationDistribution stationary;
    std::map<int, Rational> current_law;
    std::map<int, Rational> destination_law;
    /// Destinations reachable only by forced line moves; their entry is the
    /// forced moves scored by the pointer rule (N = 3 middle station only).
    std::set<int> degenerate_destinations;
};

/// Postdiction success for announced destination w and the given light:
/// both origin candidates weighted 1/2, pointer integrated exactly over the
/// half-station arc partition.
Rational exact_postdiction_success(int n_stations, int w, GridPoint light);

/// Full prediction table for a fixed light on the circle. The stationary
/// law defaults to uniform; a custom law reweights the enumeration (the
/// chain's transitions stay fair-coin).
SuccessTable exact_prediction_table(int n_stations, GridPoint light,
                                    const std::optional<StationDistribution>& stationary = std::nullopt);

/// Prediction table for the reflecting line: stationary law of the
/// reflecting chain, pointer uniform on the segment, forced barrier moves
/// excluded from scoring.
SuccessTable exact_line_table(int n_stations);

/// Overall success of Mixed(override_set) under the stationary law:
/// overridden stations guess constant heads, the rest use the pointer.
Rational exact_policy_success(int n_stations, GridPoint light, const std::set<int>& override_set);

}  // namespace demonwalk
