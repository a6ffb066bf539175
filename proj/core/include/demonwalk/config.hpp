#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "demonwalk/errors.hpp"
#include "demonwalk/geometry.hpp"
#include "demonwalk/strategies.hpp"

namespace demonwalk {

enum class Subcommand : std::uint8_t { Envelope, Postdict, Predict, Demon, Line, Oracle };

std::string to_string(Subcommand s);
Subcommand subcommand_from_string(const std::string& s);

/// Light placement: antipodal to the announced destination, immediately
/// clockwise of it, or a fixed grid index.
struct LightSpec {
    enum class Mode : std::uint8_t { Antipodal, Adjacent, Grid };
    Mode mode = Mode::Antipodal;
    int grid = 0;  // meaningful in Grid mode only; 0 keeps parse/to_string bijective

    static LightSpec parse(const std::string& spec);
    std::string to_string() const;
    friend bool operator==(const LightSpec&, const LightSpec&) = default;
};

/// Guessing policy as configured: "pointer", "heads", or "mixed:s1,s2,...".
struct PolicySpec {
    Policy::Kind kind = Policy::Kind::Pointer;
    std::set<int> overrides;

    static PolicySpec parse(const std::string& spec);
    std::string to_string() const;
    Policy to_policy() const { return Policy{kind, overrides}; }
    friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

/// Walk initialization: stationary draw (default) or a fixed station (which
/// warns and should be paired with a burn-in; the chains are periodic for
/// some N, so point starts have no per-step limiting distribution).
struct StartSpec {
    std::optional<int> station;  // nullopt = stationary draw

    static StartSpec parse(const std::string& spec);
    std::string to_string() const;
    friend bool operator==(const StartSpec&, const StartSpec&) = default;
};

enum class OutputFormat : std::uint8_t { Json, Csv };
enum class TrackKind : std::uint8_t { Circular, Line };

/// Fully resolved run configuration. Every field has a documented default;
/// a report's parameters section serializes this struct exactly, so a run
/// can be reproduced from its own report.
struct ExperimentConfig {
    Subcommand experiment = Subcommand::Postdict;
    int stations = 9;
    std::uint64_t trials = 1'000'000;      // envelope, postdict
    std::uint64_t steps = 1'000'000;       // predict, demon, line
    std::uint64_t seed = 42;
    std::uint64_t replicas = 1;
    LightSpec light;                       // default per subcommand, see parse layer
    PolicySpec policy;
    double alpha = 1e-3;
    std::uint64_t min_samples = 1000;
    BinMode bin = BinMode::CurrentStation;
    StartSpec start;
    std::uint64_t burn_in = 0;
    OutputFormat format = OutputFormat::Json;
    double level = 0.95;
    // envelope
    double small_amount = 1.0;
    double large_amount = 2.0;
    std::string dist = "uniform:0,4";
    // oracle
    TrackKind track = TrackKind::Circular;
    std::set<int> override_set;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    std::string to_json_string() const;
    /// Parses a (possibly partial) config object over `base`; unknown fields
    /// are rejected. A full report parameters section round-trips exactly.
    static ExperimentConfig from_json_string(const std::string& text, const ExperimentConfig& base);
    static ExperimentConfig from_json_string(const std::string& text);

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses "s1,s2,..." into a station set; empty string gives an empty set.
std::set<int> parse_station_set(const std::string& text, const std::string& field);

std::string to_string(BinMode m);
std::string to_string(OutputFormat f);
std::string to_string(TrackKind t);

}  // namespace demonwalk
