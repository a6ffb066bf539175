#include "demonwalk/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "demonwalk/version.hpp"

namespace demonwalk {

BinStat BinStat::from(const Tally& t, double level) {
    BinStat b;
    b.tally = t;
    if (t.trials > 0) b.estimate = wilson_interval(t, level);
    return b;
}

BinStat BinStat::from(const Tally& t, double level, const Rational& oracle) {
    BinStat b = from(t, level);
    b.oracle = oracle;
    b.oracle_value = oracle.to_double();
    if (b.estimate)
        b.within_band = std::abs(b.estimate->point - *b.oracle_value) <
                        four_sigma_band(*b.oracle_value, t.trials);
    return b;
}

BinStat BinStat::from(const Tally& t, double level, double oracle_value) {
    BinStat b = from(t, level);
    b.oracle_value = oracle_value;
    if (b.estimate)
        b.within_band = std::abs(b.estimate->point - oracle_value) <
                        four_sigma_band(oracle_value, t.trials);
    return b;
}

namespace {

using nlohmann::json;

json rational_json(const Rational& r) {
    return json{{"exact", r.to_string()}, {"value", r.to_double()}};
}

json bin_stat_json(const BinStat& b) {
    json j;
    j["successes"] = b.tally.successes;
    j["trials"] = b.tally.trials;
    if (b.estimate) {
        j["estimate"] = json{{"point", b.estimate->point},
                             {"lo", b.estimate->lo},
                             {"hi", b.estimate->hi},
                             {"level", b.estimate->level}};
    } else {
        j["estimate"] = "undefined";
    }
    if (b.oracle) j["oracle"] = b.oracle->to_string();
    if (b.oracle_value) j["oracle_value"] = *b.oracle_value;
    if (b.within_band) j["within_band"] = *b.within_band;
    return j;
}

json rational_map_json(const std::map<int, Rational>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = rational_json(v);
    return j;
}

json table_json(const SuccessTable& table) {
    json j;
    j["overall"] = rational_json(table.overall);
    j["per_destination"] = rational_map_json(table.per_destination);
    j["per_current"] = rational_map_json(table.per_current);
    j["current_law"] = rational_map_json(table.current_law);
    j["destination_law"] = rational_map_json(table.destination_law);
    json stationary = json::object();
    for (std::size_t i = 0; i < table.stationary.probabilities.size(); ++i)
        stationary[std::to_string(i)] = rational_json(table.stationary.probabilities[i]);
    j["stationary"] = stationary;
    j["degenerate_destinations"] =
        std::vector<int>(table.degenerate_destinations.begin(), table.degenerate_destinations.end());
    return j;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void csv_bin_row(std::ostream& os, const std::string& experiment, const std::string& group,
                 const std::string& bin, const BinStat& b) {
    os << experiment << ',' << group << ',' << bin << ',' << b.tally.successes << ','
       << b.tally.trials << ',';
    if (b.estimate)
        os << fmt_double(b.estimate->point) << ',' << fmt_double(b.estimate->lo) << ','
           << fmt_double(b.estimate->hi) << ',' << fmt_double(b.estimate->level);
    else
        os << ",,,";
    os << ',' << (b.oracle ? b.oracle->to_string() : "")
       << ',' << (b.oracle_value ? fmt_double(*b.oracle_value) : "")
       << ',' << (b.within_band ? (*b.within_band ? "true" : "false") : "") << '\n';
}

}  // namespace

std::string Report::to_json_string() const {
    json j;
    j["experiment"] = experiment;
    j["parameters"] = json::parse(parameters.to_json_string());
    if (overall) j["overall"] = bin_stat_json(*overall);
    json groups_json = json::object();
    for (const auto& [name, bins] : groups) {
        json g = json::object();
        for (const auto& [bin, stat] : bins) g[std::to_string(bin)] = bin_stat_json(stat);
        groups_json[name] = g;
    }
    j["groups"] = groups_json;
    if (oracle_table) j["oracle_table"] = table_json(*oracle_table);
    if (!demon.empty()) {
        json replicas = json::array();
        for (const auto& d : demon) {
            json r;
            r["replica"] = d.replica;
            r["bin"] = to_string(d.bin_mode);
            r["override_set"] = std::vector<int>(d.override_set.begin(), d.override_set.end());
            json tallies = json::object();
            for (std::size_t s = 0; s < d.bin_tallies.size(); ++s)
                tallies[std::to_string(s)] = json{{"successes", d.bin_tallies[s].successes},
                                                  {"trials", d.bin_tallies[s].trials}};
            r["tallies"] = tallies;
            r["policy_success"] = rational_json(d.policy_success);
            replicas.push_back(r);
        }
        j["demon"] = replicas;
    }
    j["notes"] = notes;
    j["meta"] = json{{"version", kVersion},
                     {"rng", "splitmix64-seeded xoshiro256**"},
                     {"stream_plan", "replica k draws from stream index k"}};
    return j.dump(2) + "\n";
}

std::string Report::to_csv_string() const {
    std::ostringstream os;
    os << "experiment,group,bin,successes,trials,point,lo,hi,level,oracle,oracle_value,within_band\n";
    if (overall) csv_bin_row(os, experiment, "overall", "overall", *overall);
    for (const auto& [name, bins] : groups)
        for (const auto& [bin, stat] : bins) csv_bin_row(os, experiment, name, std::to_string(bin), stat);
    if (oracle_table && groups.empty()) {
        // pure oracle run: emit the exact table as oracle-only rows
        const auto emit = [&](const std::string& group, const std::map<int, Rational>& m) {
            for (const auto& [bin, v] : m) {
                BinStat b;
                b.oracle = v;
                b.oracle_value = v.to_double();
                csv_bin_row(os, experiment, group, std::to_string(bin), b);
            }
        };
        BinStat b;
        b.oracle = oracle_table->overall;
        b.oracle_value = oracle_table->overall.to_double();
        csv_bin_row(os, experiment, "overall", "overall", b);
        emit("per_destination", oracle_table->per_destination);
        emit("per_current", oracle_table->per_current);
    }
    return os.str();
}

std::string Report::serialize(OutputFormat format) const {
    return format == OutputFormat::Json ? to_json_string() : to_csv_string();
}

}  // namespace demonwalk
