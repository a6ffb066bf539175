#include "demonwalk/strategies.hpp"

namespace demonwalk {

Direction pointer_guess(const Track& track, int current, GridPoint light, RealPosition pointer) {
    if (!light.is_light())
        throw DomainError("pointer_guess: grid index " + std::to_string(light.index) + " is not a light");
    return first_encounter_direction(RealPosition(track.station_position(current)),
                                     position_of(track, light), pointer);
}

Direction pointer_guess(const LineTrack& line, int current, RealPosition pointer) {
    if (current < 0 || current >= line.n_stations) throw DomainError("pointer_guess: invalid station");
    return pointer.value >= line.station_position(current) ? Direction::CW : Direction::CCW;
}

PredictionEvent run_postdiction_trial(const Track& track, RngStream& stream) {
    if (track.n_stations < 5)
        throw ConfigError("postdiction requires N >= 5 so the antipodal light sits on the outer arc");
    return run_postdiction_trial_with_light(track, stream, [](const Track& t, int w) {
        const GridPoint light = antipodal_light(t, w);
        if (!light_on_outer_arc(t, w, light))
            throw DomainError("antipodal light unexpectedly off the outer arc");
        return light;
    });
}

PredictionEvent run_postdiction_trial_with_light(const Track& track, RngStream& stream,
                                                 const LightPlacement& place_light) {
    const int n = track.n_stations;
    const int origin = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(n)));
    const Direction coin = flip_coin(stream);
    const int destination = step_circular(track, WalkState{origin, 0}, coin).station;
    const GridPoint light = place_light(track, destination);
    const RealPosition pointer = uniform_position(stream);
    const Direction guess = pointer_guess(track, origin, light, pointer);
    return PredictionEvent{origin, pointer.value, guess, coin, destination, guess == coin, false};
}

std::pair<WalkState, PredictionEvent> run_prediction_step(const Track& track, const WalkState& state,
                                                          GridPoint light, const Policy& policy,
                                                          RngStream& stream) {
    PredictionEvent event{};
    event.current = state.station;
    if (policy.overrides(state.station)) {
        event.guess = Direction::CW;  // heads
    } else {
        const RealPosition pointer = uniform_position(stream);
        event.pointer = pointer.value;
        event.guess = pointer_guess(track, state.station, light, pointer);
    }
    event.coin = flip_coin(stream);
    const WalkState next = step_circular(track, state, event.coin);
    event.destination = next.station;
    event.correct = event.guess == event.coin;
    event.forced = false;
    return {next, event};
}

std::pair<WalkState, PredictionEvent> run_prediction_step(const LineTrack& line, const WalkState& state,
                                                          const Policy& policy, RngStream& stream) {
    PredictionEvent event{};
    event.current = state.station;
    if (policy.overrides(state.station)) {
        event.guess = Direction::CW;
    } else {
        const RealPosition pointer = uniform_position(stream);
        event.pointer = pointer.value;
        event.guess = pointer_guess(line, state.station, pointer);
    }
    event.coin = flip_coin(stream);
    const LineStep step = step_line(line, state, event.coin);
    event.destination = step.state.station;
    event.forced = step.forced;
    event.correct = !step.forced && event.guess == event.coin;
    return {step.state, event};
}

void DemonLedger::TailState::add(bool success, std::uint64_t prior_trials,
                                 std::uint64_t prior_successes) {
    // T_n(k) = P(Bin(n,1/2) <= k). With one more trial:
    //   failure: T_{n+1}(k)   = T_n(k) - pmf_n(k)/2
    //   success: T_{n+1}(k+1) = T_n(k) + pmf_n(k+1)/2
    const double n = static_cast<double>(prior_trials);
    const double k = static_cast<double>(prior_successes);
    if (success) {
        if (prior_successes == prior_trials) {  // tail stays 1, pmf = 2^-(n+1)
            pmf /= 2.0;
            return;
        }
        const double pmf_up = pmf * (n - k) / (k + 1.0);  // pmf_n(k+1)
        tail += pmf_up / 2.0;
        pmf = pmf_up * (n + 1.0) / (2.0 * (n - k));
    } else {
        tail -= pmf / 2.0;
        pmf *= (n + 1.0) / (2.0 * (n + 1.0 - k));
    }
}

void DemonLedger::record(const PredictionEvent& event) {
    if (event.forced) throw DomainError("adaptive_update: forced moves are not scored");
    const int bin = bin_mode == BinMode::CurrentStation ? event.current : event.destination;
    if (bin < 0 || bin >= static_cast<int>(tallies.size()))
        throw DomainError("adaptive_update: event station out of range");
    Tally& t = tallies[bin];
    tails[bin].add(event.correct, t.trials, t.successes);
    t.add(event.correct);
    if (frozen || override_set.count(bin) > 0) return;
    if (t.trials < min_samples) return;
    if (tails[bin].tail < alpha) override_set.insert(bin);
}

DemonLedger adaptive_update(DemonLedger ledger, const PredictionEvent& event) {
    ledger.record(event);
    return ledger;
}

}  // namespace demonwalk
