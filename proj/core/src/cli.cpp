#include "demonwalk/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "demonwalk/experiments.hpp"
#include "demonwalk/version.hpp"

namespace demonwalk {

namespace {

ExperimentConfig default_config(Subcommand sc) {
    ExperimentConfig cfg;
    cfg.experiment = sc;
    switch (sc) {
        case Subcommand::Postdict:
            cfg.light = LightSpec{LightSpec::Mode::Antipodal, 0};
            break;
        case Subcommand::Predict:
        case Subcommand::Demon:
        case Subcommand::Oracle:
            cfg.light = LightSpec{LightSpec::Mode::Grid, 1};
            break;
        default:
            break;
    }
    return cfg;
}

// Option storage plus "was this flag given" bookkeeping, so precedence is
// defaults < --config file < explicit flags.
struct CliState {
    std::string config_path;
    int stations = 9;
    std::uint64_t trials = 1'000'000;
    std::uint64_t steps = 1'000'000;
    std::uint64_t seed = 42;
    std::uint64_t replicas = 1;
    std::uint64_t min_samples = 1000;
    std::uint64_t burn_in = 0;
    double alpha = 1e-3;
    double level = 0.95;
    double small_amount = 1.0;
    double large_amount = 2.0;
    std::string light;
    std::string policy = "pointer";
    std::string bin = "current";
    std::string start = "stationary";
    std::string format = "json";
    std::string dist = "uniform:0,4";
    std::string track = "circular";
    std::string override_list;

    std::vector<std::pair<CLI::Option*, std::function<void(ExperimentConfig&)>>> appliers;

    void bind(CLI::Option* opt, std::function<void(ExperimentConfig&)> apply) {
        appliers.emplace_back(opt, std::move(apply));
    }
    void apply_given(ExperimentConfig& cfg) const {
        for (const auto& [opt, apply] : appliers)
            if (opt->count() > 0) apply(cfg);
    }
};

void add_common(CLI::App& cmd, CliState& st) {
    st.bind(cmd.add_option("--seed", st.seed, "RNG seed (default 42)"),
            [&st](ExperimentConfig& c) { c.seed = st.seed; });
    st.bind(cmd.add_option("--replicas", st.replicas, "independent replicas to run and merge (default 1)"),
            [&st](ExperimentConfig& c) { c.replicas = st.replicas; });
    st.bind(cmd.add_option("--format", st.format, "report format: json | csv (default json)"),
            [&st](ExperimentConfig& c) { c.format = st.format == "csv" ? OutputFormat::Csv
                                                                       : OutputFormat::Json; });
    st.bind(cmd.add_option("--level", st.level, "confidence level for interval estimates (default 0.95)"),
            [&st](ExperimentConfig& c) { c.level = st.level; });
    cmd.add_option("--config", st.config_path, "JSON config file; explicit flags override its fields");
}

void add_stations(CLI::App& cmd, CliState& st) {
    st.bind(cmd.add_option("--stations", st.stations, "number of stations N (default 9)"),
            [&st](ExperimentConfig& c) { c.stations = st.stations; });
}

void add_trials(CLI::App& cmd, CliState& st) {
    st.bind(cmd.add_option("--trials", st.trials, "independent trials (default 1000000)"),
            [&st](ExperimentConfig& c) { c.trials = st.trials; });
}

void add_steps(CLI::App& cmd, CliState& st) {
    st.bind(cmd.add_option("--steps", st.steps, "walk steps (default 1000000)"),
            [&st](ExperimentConfig& c) { c.steps = st.steps; });
}

void add_light(CLI::App& cmd, CliState& st, const std::string& desc) {
    st.bind(cmd.add_option("--light", st.light, desc),
            [&st](ExperimentConfig& c) { c.light = LightSpec::parse(st.light); });
}

void add_policy(CLI::App& cmd, CliState& st) {
    st.bind(cmd.add_option("--policy", st.policy,
                           "guessing policy: pointer | heads | mixed:<s1,s2,...> (default pointer)"),
            [&st](ExperimentConfig& c) { c.policy = PolicySpec::parse(st.policy); });
}

void add_start(CLI::App& cmd, CliState& st) {
    st.bind(cmd.add_option("--start", st.start,
                           "walk start: stationary | station:<k> (default stationary)"),
            [&st](ExperimentConfig& c) { c.start = StartSpec::parse(st.start); });
    st.bind(cmd.add_option("--burn-in", st.burn_in, "unscored steps before recording (default 0)"),
            [&st](ExperimentConfig& c) { c.burn_in = st.burn_in; });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo lab with exact-rational oracles for coin-guessing pointer strategies "
                 "on circular and reflecting-line tracks"};
    app.name("demonwalk");
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CliState st;

    CLI::App* envelope = app.add_subcommand("envelope", "threshold-rule two-envelope bet");
    add_common(*envelope, st);
    add_trials(*envelope, st);
    st.bind(envelope->add_option("--small", st.small_amount, "smaller envelope amount (default 1)"),
            [&st](ExperimentConfig& c) { c.small_amount = st.small_amount; });
    st.bind(envelope->add_option("--large", st.large_amount, "larger envelope amount (default 2)"),
            [&st](ExperimentConfig& c) { c.large_amount = st.large_amount; });
    st.bind(envelope->add_option("--dist", st.dist,
                                 "threshold law: uniform:a,b | exp:rate | normal:mu,sigma | point:x "
                                 "(default uniform:0,4)"),
            [&st](ExperimentConfig& c) { c.dist = st.dist; });

    CLI::App* postdict = app.add_subcommand(
        "postdict", "guess the already-flipped coin behind an announced destination");
    add_common(*postdict, st);
    add_stations(*postdict, st);
    add_trials(*postdict, st);
    add_light(*postdict, st, "light placement: antipodal | adjacent | grid:<g> (default antipodal)");

    CLI::App* predict = app.add_subcommand(
        "predict", "guess the not-yet-flipped coin with a fixed light on the circle");
    add_common(*predict, st);
    add_stations(*predict, st);
    add_steps(*predict, st);
    add_light(*predict, st, "fixed light position grid:<g> (default grid:1)");
    add_policy(*predict, st);
    add_start(*predict, st);

    CLI::App* demon = app.add_subcommand(
        "demon", "prediction walk with the adaptive record-keeping override policy");
    add_common(*demon, st);
    add_stations(*demon, st);
    add_steps(*demon, st);
    add_light(*demon, st, "fixed light position grid:<g> (default grid:1)");
    st.bind(demon->add_option("--alpha", st.alpha,
                              "one-sided significance level for overrides (default 0.001)"),
            [&st](ExperimentConfig& c) { c.alpha = st.alpha; });
    st.bind(demon->add_option("--min-samples", st.min_samples,
                              "minimum bin trials before testing (default 1000)"),
            [&st](ExperimentConfig& c) { c.min_samples = st.min_samples; });
    st.bind(demon->add_option("--bin", st.bin, "tally bins: current | destination (default current)"),
            [&st](ExperimentConfig& c) {
                if (st.bin == "current") c.bin = BinMode::CurrentStation;
                else if (st.bin == "destination") c.bin = BinMode::DestinationStation;
                else throw ConfigError("bin: expected current | destination, got '" + st.bin + "'");
            });
    add_start(*demon, st);

    CLI::App* line = app.add_subcommand(
        "line", "pointer-rule prediction on the reflecting-barrier line walk");
    add_common(*line, st);
    add_stations(*line, st);
    add_steps(*line, st);
    add_policy(*line, st);
    add_start(*line, st);

    CLI::App* oracle = app.add_subcommand(
        "oracle", "exact success tables by rational enumeration (no simulation)");
    add_common(*oracle, st);
    add_stations(*oracle, st);
    st.bind(oracle->add_option("--track", st.track, "track kind: circular | line (default circular)"),
            [&st](ExperimentConfig& c) {
                if (st.track == "circular") c.track = TrackKind::Circular;
                else if (st.track == "line") c.track = TrackKind::Line;
                else throw ConfigError("track: expected circular | line, got '" + st.track + "'");
            });
    add_light(*oracle, st, "fixed light position grid:<g> (default grid:1; circular only)");
    st.bind(oracle->add_option("--override", st.override_list,
                               "stations overridden to constant heads, e.g. 0,1"),
            [&st](ExperimentConfig& c) { c.override_set = parse_station_set(st.override_list, "override"); });

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("demonwalk");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return 0;
        } catch (const CLI::CallForAllHelp&) {
            out << app.help("", CLI::AppFormatMode::All);
            return 0;
        } catch (const CLI::CallForVersion&) {
            out << kVersion << "\n";
            return 0;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << "\n";
            err << app.help();
            return 2;
        }

        CLI::App* sub = app.get_subcommands().at(0);
        const Subcommand sc = subcommand_from_string(sub->get_name());
        ExperimentConfig cfg = default_config(sc);
        if (!st.config_path.empty()) {
            std::ifstream file(st.config_path);
            if (!file) throw ConfigError("config: cannot open file '" + st.config_path + "'");
            std::stringstream buffer;
            buffer << file.rdbuf();
            cfg = ExperimentConfig::from_json_string(buffer.str(), cfg);
            if (cfg.experiment != sc)
                throw ConfigError("config: experiment '" + to_string(cfg.experiment) +
                                  "' does not match subcommand '" + to_string(sc) + "'");
        }
        st.apply_given(cfg);
        cfg.experiment = sc;
        cfg.validate();

        const Report report = run_replicas(cfg);
        for (const auto& note : report.notes)
            if (note.rfind("warning:", 0) == 0) err << note << "\n";
        out << report.serialize(cfg.format);
        return 0;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace demonwalk
