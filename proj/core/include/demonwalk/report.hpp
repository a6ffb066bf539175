#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "demonwalk/config.hpp"
#include "demonwalk/oracle.hpp"
#include "demonwalk/stats.hpp"
#include "demonwalk/strategies.hpp"

namespace demonwalk {

/// One reported bin: counts, the Wilson estimate (absent for zero trials,
/// flagged undefined in the serialization), and the exact value the
/// estimate is checked against, when one exists. `within_band` says whether
/// the estimate sits inside the 4-sigma binomial band around the exact
/// value.
struct BinStat {
    Tally tally;
    std::optional<IntervalEstimate> estimate;
    std::optional<Rational> oracle;
    std::optional<double> oracle_value;
    std::optional<bool> within_band;

    static BinStat from(const Tally& t, double level);
    static BinStat from(const Tally& t, double level, const Rational& oracle);
    static BinStat from(const Tally& t, double level, double oracle_value);
};

/// Per-replica summary of an adaptive-demon run.
struct DemonReplicaSummary {
    std::uint64_t replica;
    BinMode bin_mode;
    std::vector<Tally> bin_tallies;
    std::set<int> override_set;
    Rational policy_success;  // exact overall rate of the realized policy
};

/// Serializable result of one experiment run: parameters, merged tallies and
/// estimates with their exact counterparts, and run metadata. Serialization
/// is canonical (sorted JSON keys, shortest round-trip floats), so equal
/// runs produce byte-equal reports.
struct Report {
    std::string experiment;
    ExperimentConfig parameters;
    std::optional<BinStat> overall;
    // group name ("per_destination", "per_current", "occupancy") -> bin -> stat
    std::map<std::string, std::map<int, BinStat>> groups;
    std::optional<SuccessTable> oracle_table;
    std::vector<DemonReplicaSummary> demon;
    std::vector<std::string> notes;

    std::string to_json_string() const;
    /// One row per station bin (plus the overall row); identical numbers to
    /// the JSON encoding.
    std::string to_csv_string() const;
    std::string serialize(OutputFormat format) const;
};

}  // namespace demonwalk
