#include "demonwalk/experiments.hpp"

#include <thread>
#include <vector>

#include "demonwalk/envelope.hpp"
#include "demonwalk/oracle.hpp"

namespace demonwalk {

namespace {

// total work split across replicas, remainder to the early ones
std::vector<std::uint64_t> split_evenly(std::uint64_t total, std::uint64_t replicas) {
    std::vector<std::uint64_t> parts(replicas, total / replicas);
    for (std::uint64_t i = 0; i < total % replicas; ++i) ++parts[i];
    return parts;
}

// Runs fn(replica_index, work_count) in parallel and returns the results in
// replica order, so merges never depend on scheduling.
template <typename Result, typename Fn>
std::vector<Result> fan_out(std::uint64_t replicas, const std::vector<std::uint64_t>& work, Fn fn) {
    std::vector<Result> results(replicas);
    if (replicas == 1) {
        results[0] = fn(0, work[0]);
        return results;
    }
    std::vector<std::thread> pool;
    pool.reserve(replicas);
    for (std::uint64_t r = 0; r < replicas; ++r)
        pool.emplace_back([&results, &work, fn, r] { results[r] = fn(r, work[r]); });
    for (auto& t : pool) t.join();
    return results;
}

LightPlacement light_placement(const LightSpec& spec) {
    switch (spec.mode) {
        case LightSpec::Mode::Antipodal:
            return [](const Track& t, int w) {
                const GridPoint light = antipodal_light(t, w);
                if (!light_on_outer_arc(t, w, light))
                    throw DomainError("antipodal light unexpectedly off the outer arc");
                return light;
            };
        case LightSpec::Mode::Adjacent:
            return [](const Track& t, int w) { return GridPoint{(2 * w + 1) % t.grid_points()}; };
        case LightSpec::Mode::Grid:
            return [g = spec.grid](const Track&, int) { return GridPoint{g}; };
    }
    throw ConfigError("light: unknown mode");
}

struct WalkCounts {
    Tally overall;
    std::vector<Tally> per_destination;
    std::vector<Tally> per_current;
    std::vector<std::uint64_t> occupancy;
    std::uint64_t steps = 0;
    std::uint64_t forced = 0;

    explicit WalkCounts(int n = 0) : per_destination(n), per_current(n), occupancy(n, 0) {}

    void merge(const WalkCounts& o) {
        overall = merge_tallies(overall, o.overall);
        for (std::size_t i = 0; i < per_destination.size(); ++i) {
            per_destination[i] = merge_tallies(per_destination[i], o.per_destination[i]);
            per_current[i] = merge_tallies(per_current[i], o.per_current[i]);
            occupancy[i] += o.occupancy[i];
        }
        steps += o.steps;
        forced += o.forced;
    }

    void score(const PredictionEvent& event) {
        if (!event.forced) {
            overall.add(event.correct);
            per_destination[event.destination].add(event.correct);
            per_current[event.current].add(event.correct);
        } else {
            ++forced;
        }
        ++occupancy[event.destination];
        ++steps;
    }
};

int initial_station(const ExperimentConfig& cfg, ChainKind kind, RngStream& stream) {
    if (cfg.start.station) return *cfg.start.station;
    const StationDistribution dist = stationary_distribution(kind, cfg.stations);
    return sample_stationary(dist, stream);
}

void add_start_notes(const ExperimentConfig& cfg, Report& report) {
    if (cfg.start.station)
        report.notes.push_back(
            "warning: point start at station " + std::to_string(*cfg.start.station) +
            "; per-step marginals are only stationary for a stationary start (the chain can be "
            "periodic), burn_in=" + std::to_string(cfg.burn_in));
}

Report run_envelope(const ExperimentConfig& cfg) {
    const EnvelopePair pair(cfg.small_amount, cfg.large_amount);
    const ThresholdDistribution dist = ThresholdDistribution::parse(cfg.dist);
    const auto work = split_evenly(cfg.trials, cfg.replicas);
    const auto tallies = fan_out<Tally>(cfg.replicas, work, [&](std::uint64_t r, std::uint64_t n) {
        RngStream stream = derive_stream(Seed{cfg.seed}, r);
        return simulate_bets(pair, dist, n, stream);
    });
    Tally total;
    for (const auto& t : tallies) total = merge_tallies(total, t);

    Report report;
    report.experiment = to_string(cfg.experiment);
    report.parameters = cfg;
    report.overall = BinStat::from(total, cfg.level, exact_success_probability(pair, dist));
    return report;
}

Report run_postdict(const ExperimentConfig& cfg) {
    const Track track(cfg.stations);
    if (cfg.light.mode == LightSpec::Mode::Antipodal && cfg.stations < 5)
        throw ConfigError("stations: antipodal postdiction requires N >= 5");
    const LightPlacement place = light_placement(cfg.light);
    const int n = cfg.stations;

    const auto work = split_evenly(cfg.trials, cfg.replicas);
    const auto counts = fan_out<WalkCounts>(cfg.replicas, work, [&](std::uint64_t r, std::uint64_t m) {
        RngStream stream = derive_stream(Seed{cfg.seed}, r);
        WalkCounts c(n);
        for (std::uint64_t i = 0; i < m; ++i) c.score(run_postdiction_trial_with_light(track, stream, place));
        return c;
    });
    WalkCounts total(n);
    for (const auto& c : counts) total.merge(c);

    Report report;
    report.experiment = to_string(cfg.experiment);
    report.parameters = cfg;

    if (cfg.light.mode == LightSpec::Mode::Grid) {
        // fixed light: same joint law as prediction, full table available
        const SuccessTable table = exact_prediction_table(n, GridPoint{cfg.light.grid});
        report.overall = BinStat::from(total.overall, cfg.level, table.overall);
        for (int d = 0; d < n; ++d)
            report.groups["per_destination"][d] =
                BinStat::from(total.per_destination[d], cfg.level, table.per_destination.at(d));
        for (int s = 0; s < n; ++s)
            report.groups["per_current"][s] =
                BinStat::from(total.per_current[s], cfg.level, table.per_current.at(s));
    } else {
        Rational averaged;
        const Rational uniform(1, n);
        for (int d = 0; d < n; ++d) {
            const Rational exact = exact_postdiction_success(n, d, place(track, d));
            averaged += uniform * exact;
            report.groups["per_destination"][d] =
                BinStat::from(total.per_destination[d], cfg.level, exact);
        }
        report.overall = BinStat::from(total.overall, cfg.level, averaged);
        for (int s = 0; s < n; ++s)
            report.groups["per_current"][s] = BinStat::from(total.per_current[s], cfg.level);
    }
    return report;
}

Report run_predict(const ExperimentConfig& cfg) {
    const Track track(cfg.stations);
    const GridPoint light{cfg.light.grid};
    const Policy policy = cfg.policy.to_policy();
    const int n = cfg.stations;

    const auto work = split_evenly(cfg.steps, cfg.replicas);
    const auto counts = fan_out<WalkCounts>(cfg.replicas, work, [&](std::uint64_t r, std::uint64_t m) {
        RngStream stream = derive_stream(Seed{cfg.seed}, r);
        WalkCounts c(n);
        WalkState state{initial_station(cfg, ChainKind::Circular, stream), 0};
        for (std::uint64_t i = 0; i < cfg.burn_in; ++i)
            state = run_prediction_step(track, state, light, policy, stream).first;
        for (std::uint64_t i = 0; i < m; ++i) {
            auto [next, event] = run_prediction_step(track, state, light, policy, stream);
            c.score(event);
            state = next;
        }
        return c;
    });
    WalkCounts total(n);
    for (const auto& c : counts) total.merge(c);

    Report report;
    report.experiment = to_string(cfg.experiment);
    report.parameters = cfg;
    add_start_notes(cfg, report);

    const SuccessTable table = exact_prediction_table(n, light);
    Rational policy_exact = table.overall;
    if (policy.kind == Policy::Kind::AlwaysHeads) {
        std::set<int> all;
        for (int s = 0; s < n; ++s) all.insert(s);
        policy_exact = exact_policy_success(n, light, all);
    } else if (policy.kind == Policy::Kind::Mixed) {
        policy_exact = exact_policy_success(n, light, policy.override_set);
    }
    report.overall = BinStat::from(total.overall, cfg.level, policy_exact);
    const bool pointer_tables = policy.kind == Policy::Kind::Pointer;
    for (int d = 0; d < n; ++d)
        report.groups["per_destination"][d] =
            pointer_tables ? BinStat::from(total.per_destination[d], cfg.level, table.per_destination.at(d))
                           : BinStat::from(total.per_destination[d], cfg.level);
    for (int s = 0; s < n; ++s)
        report.groups["per_current"][s] =
            pointer_tables ? BinStat::from(total.per_current[s], cfg.level, table.per_current.at(s))
                           : BinStat::from(total.per_current[s], cfg.level);
    for (int s = 0; s < n; ++s)
        report.groups["occupancy"][s] = BinStat::from(Tally{total.occupancy[s], total.steps}, cfg.level,
                                                      table.stationary.probabilities[s]);
    return report;
}

Report run_demon(const ExperimentConfig& cfg) {
    const Track track(cfg.stations);
    const GridPoint light{cfg.light.grid};
    const int n = cfg.stations;

    struct DemonResult {
        WalkCounts counts;
        DemonLedger ledger;
        DemonResult() : counts(0) {}
    };

    const auto work = split_evenly(cfg.steps, cfg.replicas);
    const auto results = fan_out<DemonResult>(cfg.replicas, work, [&](std::uint64_t r, std::uint64_t m) {
        RngStream stream = derive_stream(Seed{cfg.seed}, r);
        DemonResult res;
        res.counts = WalkCounts(n);
        res.ledger = DemonLedger(n, cfg.bin, cfg.alpha, cfg.min_samples);
        WalkState state{initial_station(cfg, ChainKind::Circular, stream), 0};
        Policy policy = res.ledger.current_policy();
        for (std::uint64_t i = 0; i < cfg.burn_in; ++i)
            state = run_prediction_step(track, state, light, policy, stream).first;
        for (std::uint64_t i = 0; i < m; ++i) {
            auto [next, event] = run_prediction_step(track, state, light, policy, stream);
            res.counts.score(event);
            const std::size_t overrides_before = res.ledger.override_set.size();
            res.ledger.record(event);
            if (res.ledger.override_set.size() != overrides_before)
                policy = res.ledger.current_policy();
            state = next;
        }
        return res;
    });

    WalkCounts total(n);
    for (const auto& r : results) total.merge(r.counts);

    Report report;
    report.experiment = to_string(cfg.experiment);
    report.parameters = cfg;
    add_start_notes(cfg, report);

    // oracle for the realized policy, weighted over replicas by step count
    Rational overall_exact;
    for (std::uint64_t r = 0; r < cfg.replicas; ++r) {
        const auto& ledger = results[r].ledger;
        const std::set<int> realized =
            cfg.bin == BinMode::CurrentStation ? ledger.override_set : std::set<int>{};
        const Rational policy_success = exact_policy_success(n, light, realized);
        const Rational weight = cfg.steps == 0
                                    ? Rational(1, static_cast<long long>(cfg.replicas))
                                    : Rational(static_cast<long long>(work[r]),
                                               static_cast<long long>(cfg.steps));
        overall_exact += weight * policy_success;
        report.demon.push_back(DemonReplicaSummary{r, ledger.bin_mode, ledger.tallies,
                                                   ledger.override_set, policy_success});
    }
    report.overall = BinStat::from(total.overall, cfg.level, overall_exact);

    const SuccessTable table = exact_prediction_table(n, light);
    for (int d = 0; d < n; ++d)
        report.groups["per_destination"][d] = BinStat::from(total.per_destination[d], cfg.level);
    for (int s = 0; s < n; ++s)
        report.groups["per_current"][s] = BinStat::from(total.per_current[s], cfg.level);
    for (int s = 0; s < n; ++s)
        report.groups["occupancy"][s] = BinStat::from(Tally{total.occupancy[s], total.steps}, cfg.level,
                                                      table.stationary.probabilities[s]);

    report.notes.push_back(
        "per-current-station success enumerates to exactly 1/2 for every station, so overriding any "
        "subset of stations leaves the exact overall rate at 1/2; the override set reflects sampling "
        "noise under repeated testing, not an exploitable bias");
    if (cfg.bin == BinMode::DestinationStation)
        report.notes.push_back(
            "destination binning is analysis-only: the destination is unknown before the flip, so "
            "flagged stations do not redirect guesses");
    return report;
}

Report run_line(const ExperimentConfig& cfg) {
    const LineTrack line(cfg.stations);
    const Policy policy = cfg.policy.to_policy();
    const int n = cfg.stations;

    const auto work = split_evenly(cfg.steps, cfg.replicas);
    const auto counts = fan_out<WalkCounts>(cfg.replicas, work, [&](std::uint64_t r, std::uint64_t m) {
        RngStream stream = derive_stream(Seed{cfg.seed}, r);
        WalkCounts c(n);
        WalkState state{initial_station(cfg, ChainKind::Line, stream), 0};
        for (std::uint64_t i = 0; i < cfg.burn_in; ++i)
            state = run_prediction_step(line, state, policy, stream).first;
        for (std::uint64_t i = 0; i < m; ++i) {
            auto [next, event] = run_prediction_step(line, state, policy, stream);
            c.score(event);
            state = next;
        }
        return c;
    });
    WalkCounts total(n);
    for (const auto& c : counts) total.merge(c);

    Report report;
    report.experiment = to_string(cfg.experiment);
    report.parameters = cfg;
    add_start_notes(cfg, report);

    const SuccessTable table = exact_line_table(n);
    const bool pointer_tables = policy.kind == Policy::Kind::Pointer;
    if (pointer_tables)
        report.overall = BinStat::from(total.overall, cfg.level, table.overall);
    else
        report.overall = BinStat::from(total.overall, cfg.level);
    for (int d = 0; d < n; ++d) {
        const auto it = table.per_destination.find(d);
        report.groups["per_destination"][d] =
            pointer_tables && it != table.per_destination.end()
                ? BinStat::from(total.per_destination[d], cfg.level, it->second)
                : BinStat::from(total.per_destination[d], cfg.level);
    }
    for (int s = 1; s < n - 1; ++s)
        report.groups["per_current"][s] =
            pointer_tables ? BinStat::from(total.per_current[s], cfg.level, table.per_current.at(s))
                           : BinStat::from(total.per_current[s], cfg.level);
    for (int s = 0; s < n; ++s)
        report.groups["occupancy"][s] = BinStat::from(Tally{total.occupancy[s], total.steps}, cfg.level,
                                                      table.stationary.probabilities[s]);
    report.notes.push_back("forced barrier moves (" + std::to_string(total.forced) +
                           " of " + std::to_string(total.steps) +
                           " steps) carry no coin information and are excluded from success scoring");
    return report;
}

Report run_oracle(const ExperimentConfig& cfg) {
    Report report;
    report.experiment = to_string(cfg.experiment);
    report.parameters = cfg;
    if (cfg.track == TrackKind::Circular) {
        report.oracle_table = exact_prediction_table(cfg.stations, GridPoint{cfg.light.grid});
        if (!cfg.override_set.empty()) {
            const Rational policy =
                exact_policy_success(cfg.stations, GridPoint{cfg.light.grid}, cfg.override_set);
            std::string stations;
            for (int v : cfg.override_set) stations += (stations.empty() ? "" : ",") + std::to_string(v);
            report.notes.push_back("policy_success(override=" + stations + ") = " + policy.to_string());
        }
    } else {
        report.oracle_table = exact_line_table(cfg.stations);
        for (int d : report.oracle_table->degenerate_destinations)
            report.notes.push_back("destination " + std::to_string(d) +
                                   " is reachable only by forced barrier moves; its entry scores those "
                                   "moves by the pointer rule (degenerate case)");
    }
    return report;
}

}  // namespace

Report run_replicas(const ExperimentConfig& config) {
    config.validate();
    switch (config.experiment) {
        case Subcommand::Envelope: return run_envelope(config);
        case Subcommand::Postdict: return run_postdict(config);
        case Subcommand::Predict: return run_predict(config);
        case Subcommand::Demon: return run_demon(config);
        case Subcommand::Line: return run_line(config);
        case Subcommand::Oracle: return run_oracle(config);
    }
    throw ConfigError("experiment: unknown subcommand");
}

}  // namespace demonwalk
