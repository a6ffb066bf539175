#include "demonwalk/config.hpp"

#include <json.hpp>

#include <sstream>

#include "demonwalk/envelope.hpp"

namespace demonwalk {

namespace {

int parse_int_after(const std::string& spec, std::size_t colon, const std::string& what) {
    const std::string tail = spec.substr(colon + 1);
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tail, &pos);
        if (pos != tail.size()) throw std::invalid_argument(tail);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(what + ": bad integer in '" + spec + "'");
    }
}

std::string station_list_to_string(const std::set<int>& stations) {
    std::string out;
    for (int s : stations) {
        if (!out.empty()) out += ',';
        out += std::to_string(s);
    }
    return out;
}

}  // namespace

std::set<int> parse_station_set(const std::string& text, const std::string& field) {
    std::set<int> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.insert(v);
        } catch (const std::exception&) {
            throw ConfigError(field + ": bad station '" + item + "'");
        }
    }
    return out;
}

std::string to_string(Subcommand s) {
    switch (s) {
        case Subcommand::Envelope: return "envelope";
        case Subcommand::Postdict: return "postdict";
        case Subcommand::Predict: return "predict";
        case Subcommand::Demon: return "demon";
        case Subcommand::Line: return "line";
        case Subcommand::Oracle: return "oracle";
    }
    return "?";
}

Subcommand subcommand_from_string(const std::string& s) {
    if (s == "envelope") return Subcommand::Envelope;
    if (s == "postdict") return Subcommand::Postdict;
    if (s == "predict") return Subcommand::Predict;
    if (s == "demon") return Subcommand::Demon;
    if (s == "line") return Subcommand::Line;
    if (s == "oracle") return Subcommand::Oracle;
    throw ConfigError("experiment: unknown subcommand '" + s + "'");
}

LightSpec LightSpec::parse(const std::string& spec) {
    if (spec == "antipodal") return {Mode::Antipodal, 0};
    if (spec == "adjacent") return {Mode::Adjacent, 0};
    if (spec.rfind("grid:", 0) == 0) return {Mode::Grid, parse_int_after(spec, 4, "light")};
    throw ConfigError("light: expected antipodal | adjacent | grid:<g>, got '" + spec + "'");
}

std::string LightSpec::to_string() const {
    switch (mode) {
        case Mode::Antipodal: return "antipodal";
        case Mode::Adjacent: return "adjacent";
        case Mode::Grid: return "grid:" + std::to_string(grid);
    }
    return "?";
}

PolicySpec PolicySpec::parse(const std::string& spec) {
    if (spec == "pointer") return {Policy::Kind::Pointer, {}};
    if (spec == "heads") return {Policy::Kind::AlwaysHeads, {}};
    if (spec.rfind("mixed:", 0) == 0)
        return {Policy::Kind::Mixed, parse_station_set(spec.substr(6), "policy")};
    if (spec == "mixed") return {Policy::Kind::Mixed, {}};
    throw ConfigError("policy: expected pointer | heads | mixed:<s1,s2,...>, got '" + spec + "'");
}

std::string PolicySpec::to_string() const {
    switch (kind) {
        case Policy::Kind::Pointer: return "pointer";
        case Policy::Kind::AlwaysHeads: return "heads";
        case Policy::Kind::Mixed: return "mixed:" + station_list_to_string(overrides);
    }
    return "?";
}

StartSpec StartSpec::parse(const std::string& spec) {
    if (spec == "stationary") return {std::nullopt};
    if (spec.rfind("station:", 0) == 0) return {parse_int_after(spec, 7, "start")};
    throw ConfigError("start: expected stationary | station:<k>, got '" + spec + "'");
}

std::string StartSpec::to_string() const {
    return station ? "station:" + std::to_string(*station) : "stationary";
}

std::string to_string(BinMode m) { return m == BinMode::CurrentStation ? "current" : "destination"; }
std::string to_string(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }
std::string to_string(TrackKind t) { return t == TrackKind::Circular ? "circular" : "line"; }

namespace {

BinMode bin_from_string(const std::string& s) {
    if (s == "current") return BinMode::CurrentStation;
    if (s == "destination") return BinMode::DestinationStation;
    throw ConfigError("bin: expected current | destination, got '" + s + "'");
}

OutputFormat format_from_string(const std::string& s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    throw ConfigError("format: expected json | csv, got '" + s + "'");
}

TrackKind track_from_string(const std::string& s) {
    if (s == "circular") return TrackKind::Circular;
    if (s == "line") return TrackKind::Line;
    throw ConfigError("track: expected circular | line, got '" + s + "'");
}

}  // namespace

void ExperimentConfig::validate() const {
    if (stations < 3) throw ConfigError("stations: need at least 3, got " + std::to_string(stations));
    if (replicas < 1) throw ConfigError("replicas: need at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha: must lie in (0,1)");
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("level: must lie in (0,1)");
    if (min_samples < 1) throw ConfigError("min_samples: need at least 1");

    const auto check_grid_light = [&] {
        if (light.grid < 0 || light.grid >= 2 * stations)
            throw ConfigError("light: grid index " + std::to_string(light.grid) +
                              " out of range for N=" + std::to_string(stations));
        if (light.grid % 2 == 0)
            throw ConfigError("light: grid index " + std::to_string(light.grid) +
                              " is a station, not a light");
    };

    switch (experiment) {
        case Subcommand::Envelope:
            if (!(small_amount > 0.0)) throw ConfigError("small: amount must be positive");
            if (!(small_amount < large_amount)) throw ConfigError("large: must exceed small");
            ThresholdDistribution::parse(dist);  // throws ConfigError on a bad spec
            break;
        case Subcommand::Postdict:
            if (light.mode == LightSpec::Mode::Antipodal && stations < 5)
                throw ConfigError("stations: antipodal postdiction requires N >= 5");
            if (light.mode == LightSpec::Mode::Grid) check_grid_light();
            break;
        case Subcommand::Predict:
        case Subcommand::Demon:
            if (light.mode != LightSpec::Mode::Grid)
                throw ConfigError("light: prediction needs a fixed light (grid:<g>); the destination "
                                  "is unknown before the flip");
            check_grid_light();
            for (int s : policy.overrides)
                if (s < 0 || s >= stations)
                    throw ConfigError("policy: override station " + std::to_string(s) + " out of range");
            break;
        case Subcommand::Line:
            break;
        case Subcommand::Oracle:
            if (track == TrackKind::Circular) check_grid_light();
            for (int s : override_set)
                if (s < 0 || s >= stations)
                    throw ConfigError("override: station " + std::to_string(s) + " out of range");
            break;
    }
    if (start.station && (*start.station < 0 || *start.station >= stations))
        throw ConfigError("start: station " + std::to_string(*start.station) + " out of range");
}

std::string ExperimentConfig::to_json_string() const {
    nlohmann::json j;
    j["experiment"] = to_string(experiment);
    j["stations"] = stations;
    j["trials"] = trials;
    j["steps"] = steps;
    j["seed"] = seed;
    j["replicas"] = replicas;
    j["light"] = light.to_string();
    j["policy"] = policy.to_string();
    j["alpha"] = alpha;
    j["min_samples"] = min_samples;
    j["bin"] = to_string(bin);
    j["start"] = start.to_string();
    j["burn_in"] = burn_in;
    j["format"] = to_string(format);
    j["level"] = level;
    j["small"] = small_amount;
    j["large"] = large_amount;
    j["dist"] = dist;
    j["track"] = to_string(track);
    j["override"] = std::vector<int>(override_set.begin(), override_set.end());
    return j.dump();
}

namespace {

template <typename T>
void get_if_present(const nlohmann::json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string(key) + ": wrong type in config");
    }
}

template <typename Parse, typename T>
void parse_if_present(const nlohmann::json& j, const char* key, Parse parse, T& out) {
    std::string spec;
    bool present = j.contains(key);
    if (present) get_if_present(j, key, spec);
    if (present) out = parse(spec);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_string(const std::string& text) {
    return from_json_string(text, ExperimentConfig{});
}

ExperimentConfig ExperimentConfig::from_json_string(const std::string& text,
                                                    const ExperimentConfig& base) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    static const std::set<std::string> known = {
        "experiment", "stations", "trials", "steps",  "seed",  "replicas", "light",
        "policy",     "alpha",    "min_samples", "bin", "start", "burn_in",  "format",
        "level",      "small",    "large",  "dist",   "track", "override"};
    for (const auto& [key, value] : j.items())
        if (known.count(key) == 0) throw ConfigError("config: unknown field '" + key + "'");

    ExperimentConfig cfg = base;
    parse_if_present(j, "experiment", subcommand_from_string, cfg.experiment);
    get_if_present(j, "stations", cfg.stations);
    get_if_present(j, "trials", cfg.trials);
    get_if_present(j, "steps", cfg.steps);
    get_if_present(j, "seed", cfg.seed);
    get_if_present(j, "replicas", cfg.replicas);
    parse_if_present(j, "light", LightSpec::parse, cfg.light);
    parse_if_present(j, "policy", PolicySpec::parse, cfg.policy);
    get_if_present(j, "alpha", cfg.alpha);
    get_if_present(j, "min_samples", cfg.min_samples);
    parse_if_present(j, "bin", bin_from_string, cfg.bin);
    parse_if_present(j, "start", StartSpec::parse, cfg.start);
    get_if_present(j, "burn_in", cfg.burn_in);
    parse_if_present(j, "format", format_from_string, cfg.format);
    get_if_present(j, "level", cfg.level);
    get_if_present(j, "small", cfg.small_amount);
    get_if_present(j, "large", cfg.large_amount);
    get_if_present(j, "dist", cfg.dist);
    parse_if_present(j, "track", track_from_string, cfg.track);
    if (j.contains("override")) {
        std::vector<int> overrides;
        get_if_present(j, "override", overrides);
        cfg.override_set = std::set<int>(overrides.begin(), overrides.end());
    }
    return cfg;
}

}  // namespace demonwalk
