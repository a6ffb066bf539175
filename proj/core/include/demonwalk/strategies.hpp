#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "demonwalk/geometry.hpp"
#include "demonwalk/rng.hpp"
#include "demonwalk/stats.hpp"
#include "demonwalk/walks.hpp"

namespace demonwalk {

/// One guessing step: where the train was, what the demon guessed, what the
/// coin did, where the train went. `pointer` is absent when the policy
/// guessed without drawing one (constant-heads guesses). `forced` marks
/// line-barrier moves the coin did not determine; those are never scored.
struct PredictionEvent {
    int current;
    std::optional<double> pointer;
    Direction guess;
    Direction coin;
    int destination;
    bool correct;
    bool forced;
};

/// Guessing policy: the pointer strategy everywhere, constant heads
/// everywhere, or pointer with constant-heads overrides at a fixed set of
/// current stations.
struct Policy {
    enum class Kind : std::uint8_t { Pointer, AlwaysHeads, Mixed };

    Kind kind = Kind::Pointer;
    std::set<int> override_set;  // used by Mixed only

    static Policy pointer() { return {Kind::Pointer, {}}; }
    static Policy always_heads() { return {Kind::AlwaysHeads, {}}; }
    static Policy mixed(std::set<int> overrides) { return {Kind::Mixed, std::move(overrides)}; }

    bool overrides(int station) const {
        return kind == Kind::AlwaysHeads ||
               (kind == Kind::Mixed && override_set.count(station) > 0);
    }
};

/// Which station label a prediction is tallied under.
enum class BinMode : std::uint8_t { CurrentStation, DestinationStation };

/// The adaptive demon's records: per-bin success tallies plus the stations
/// whose pointer guesses went statistically bad and were switched to
/// constant heads. Stations only ever enter the override set; with
/// `frozen` set, tallies keep accumulating but the set stops growing.
///
/// The one-sided exact binomial tail P(X <= successes | trials, 1/2) is
/// re-evaluated after every event. It is maintained incrementally (tail and
/// pmf both admit O(1) updates per trial), so the per-event test costs a
/// few flops instead of a continued-fraction evaluation.
struct DemonLedger {
    /// Running lower-tail state of one bin: tail = P(X <= k), pmf = P(X = k).
    struct TailState {
        double tail = 1.0;
        double pmf = 1.0;

        void add(bool success, std::uint64_t prior_trials, std::uint64_t prior_successes);
    };

    BinMode bin_mode = BinMode::CurrentStation;
    double alpha = 1e-3;
    std::uint64_t min_samples = 1000;
    std::vector<Tally> tallies;
    std::vector<TailState> tails;
    std::set<int> override_set;
    bool frozen = false;

    DemonLedger() = default;
    DemonLedger(int n_stations, BinMode mode, double alpha_, std::uint64_t min_samples_)
        : bin_mode(mode), alpha(alpha_), min_samples(min_samples_),
          tallies(n_stations), tails(n_stations) {}

    /// The policy the records currently imply. Destination-binned records
    /// cannot steer the pre-flip guess (the destination is unknown then),
    /// so they leave the pointer policy untouched.
    Policy current_policy() const {
        if (bin_mode == BinMode::DestinationStation) return Policy::pointer();
        return Policy::mixed(override_set);
    }

    /// Mutating form of adaptive_update.
    void record(const PredictionEvent& event);
};

/// The pointer strategy's guess: the travel direction in which the pointer
/// is encountered before the light, starting from the current station.
Direction pointer_guess(const Track& track, int current, GridPoint light, RealPosition pointer);

/// Line variant: no light; guess the direction of the pointer relative to
/// the current station (right iff pointer >= position).
Direction pointer_guess(const LineTrack& line, int current, RealPosition pointer);

/// One postdiction trial: origin drawn from the uniform stationary law, the
/// coin decides the destination, the light goes up antipodal to that
/// destination, and the guess is made from the origin. Requires N >= 5 so
/// the antipodal light is on the outer arc of the origin candidates.
PredictionEvent run_postdiction_trial(const Track& track, RngStream& stream);

/// Same trial with a caller-chosen light placement for the announced
/// destination. Used for adjacent and fixed lights; the antipodal variant
/// above validates the outer-arc placement.
using LightPlacement = std::function<GridPoint(const Track&, int destination)>;
PredictionEvent run_postdiction_trial_with_light(const Track& track, RngStream& stream,
                                                 const LightPlacement& place_light);

/// One prediction step on the circle: the demon draws a pointer and guesses
/// per policy before the coin is flipped, then the walk advances.
std::pair<WalkState, PredictionEvent> run_prediction_step(const Track& track, const WalkState& state,
                                                          GridPoint light, const Policy& policy,
                                                          RngStream& stream);

/// One prediction step on the line. Barrier departures still consume the
/// same draws (pointer when the policy wants one, plus the coin) but come
/// back flagged forced.
std::pair<WalkState, PredictionEvent> run_prediction_step(const LineTrack& line, const WalkState& state,
                                                          const Policy& policy, RngStream& stream);

/// Functional form of DemonLedger::record: tallies the event's bin and,
/// once the bin has min_samples trials and the one-sided exact binomial
/// test rejects "rate >= 1/2" at level alpha, adds the station to the
/// override set (unless frozen). Forced events are rejected.
DemonLedger adaptive_update(DemonLedger ledger, const PredictionEvent& event);

}  // namespace demonwalk
