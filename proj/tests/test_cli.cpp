#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "demonwalk/cli.hpp"
#include "demonwalk/config.hpp"

using namespace demonwalk;
using nlohmann::json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("oracle subcommand prints the exact table") {
    const auto res = run({"oracle", "--stations", "9", "--light", "grid:1"});
    REQUIRE(res.code == 0);
    const json j = json::parse(res.out);
    CHECK(j["oracle_table"]["per_destination"]["5"]["exact"] == "11/18");
    CHECK(j["oracle_table"]["per_destination"]["0"]["exact"] == "1/9");
    CHECK(j["oracle_table"]["overall"]["exact"] == "1/2");
    CHECK(j["parameters"]["experiment"] == "oracle");
}

TEST_CASE("postdict run reports the oracle and an estimate inside the band") {
    const auto res = run({"postdict", "--stations", "9", "--trials", "200000", "--seed", "42"});
    REQUIRE(res.code == 0);
    const json j = json::parse(res.out);
    CHECK(j["overall"]["oracle"] == "11/18");
    CHECK(j["overall"]["within_band"] == true);
    CHECK(j["parameters"]["seed"] == 42);
}

TEST_CASE("identical argv and seed produce byte-identical reports") {
    const std::vector<std::string> argv = {"postdict", "--stations", "9", "--trials",
                                           "100000",   "--seed",     "42", "--replicas", "3"};
    const auto a = run(argv);
    const auto b = run(argv);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run({"postdict", "--no-such-flag"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    const auto res = run({"postdict", "--stations", "2"});
    CHECK(res.code == 2);
    CHECK(res.err.find("stations") != std::string::npos);
    CHECK(run({"predict", "--light", "antipodal"}).code == 2);
    CHECK(run({"oracle", "--light", "grid:2"}).code == 2);
    CHECK(run({"demon", "--bin", "sideways"}).code == 2);
    CHECK(run({"envelope", "--dist", "cauchy:0,1"}).code == 2);
}

TEST_CASE("--help prints usage on stdout and exits 0") {
    const auto res = run({"--help"});
    CHECK(res.code == 0);
    CHECK(res.out.find("postdict") != std::string::npos);
    CHECK(res.out.find("oracle") != std::string::npos);
}

TEST_CASE("envelope subcommand wires the distribution spec through") {
    const auto res = run({"envelope", "--small", "1", "--large", "2", "--dist", "uniform:0,4",
                          "--trials", "100000", "--seed", "5"});
    REQUIRE(res.code == 0);
    const json j = json::parse(res.out);
    CHECK(j["overall"]["oracle_value"] == 0.625);
    CHECK(j["parameters"]["dist"] == "uniform:0,4");
}

TEST_CASE("csv format emits one row per station bin with the same numbers") {
    const std::vector<std::string> base = {"predict", "--stations", "9", "--steps", "20000",
                                           "--seed", "3"};
    auto argv_csv = base;
    argv_csv.push_back("--format");
    argv_csv.push_back("csv");
    const auto res_json = run(base);
    const auto res_csv = run(argv_csv);
    REQUIRE(res_json.code == 0);
    REQUIRE(res_csv.code == 0);
    const json j = json::parse(res_json.out);
    std::istringstream csv(res_csv.out);
    std::string line;
    std::getline(csv, line);  // header
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        std::istringstream fs(line);
        std::vector<std::string> fields;
        std::string field;
        while (std::getline(fs, field, ',')) fields.push_back(field);
        const json& stat =
            fields[1] == "overall" ? j["overall"] : j["groups"][fields[1]][fields[2]];
        CHECK(std::stod(fields[5]) == stat["estimate"]["point"].get<double>());
    }
    CHECK(rows == 28);
}

TEST_CASE("config files provide defaults that flags override") {
    const std::string path = "/tmp/demonwalk_test_config.json";
    {
        std::ofstream f(path);
        f << R"({"trials": 50000, "seed": 7})";
    }
    SUBCASE("config file values are used") {
        const auto res = run({"postdict", "--config", path});
        REQUIRE(res.code == 0);
        const json j = json::parse(res.out);
        CHECK(j["parameters"]["trials"] == 50000);
        CHECK(j["parameters"]["seed"] == 7);
    }
    SUBCASE("explicit flags win") {
        const auto res = run({"postdict", "--config", path, "--seed", "9"});
        REQUIRE(res.code == 0);
        const json j = json::parse(res.out);
        CHECK(j["parameters"]["trials"] == 50000);
        CHECK(j["parameters"]["seed"] == 9);
    }
    SUBCASE("a full report parameters section reruns the experiment identically") {
        const auto first = run({"postdict", "--trials", "30000", "--seed", "21"});
        REQUIRE(first.code == 0);
        const json j = json::parse(first.out);
        {
            std::ofstream f(path);
            f << j["parameters"].dump();
        }
        const auto second = run({"postdict", "--config", path});
        REQUIRE(second.code == 0);
        CHECK(second.out == first.out);
    }
    SUBCASE("unknown config fields are rejected") {
        {
            std::ofstream f(path);
            f << R"({"trails": 50000})";
        }
        const auto res = run({"postdict", "--config", path});
        CHECK(res.code == 2);
        CHECK(res.err.find("trails") != std::string::npos);
    }
    SUBCASE("experiment mismatch is rejected") {
        {
            std::ofstream f(path);
            f << R"({"experiment": "envelope"})";
        }
        CHECK(run({"postdict", "--config", path}).code == 2);
    }
    SUBCASE("missing file is a config error") {
        CHECK(run({"postdict", "--config", "/tmp/no_such_demonwalk_config.json"}).code == 2);
    }
    std::remove(path.c_str());
}

TEST_CASE("line subcommand reports occupancy against the reflecting stationary law") {
    const auto res = run({"line", "--stations", "5", "--steps", "200000", "--seed", "2"});
    REQUIRE(res.code == 0);
    const json j = json::parse(res.out);
    CHECK(j["groups"]["occupancy"]["0"]["oracle"] == "1/8");
    CHECK(j["groups"]["occupancy"]["2"]["oracle"] == "1/4");
    CHECK(j["groups"]["per_destination"]["2"]["oracle"] == "3/4");
}

TEST_CASE("demon subcommand reports ledgers and the realized-policy oracle") {
    const auto res = run({"demon", "--stations", "9", "--steps", "100000", "--alpha", "0.001",
                          "--bin", "current", "--seed", "7"});
    REQUIRE(res.code == 0);
    const json j = json::parse(res.out);
    REQUIRE(j.contains("demon"));
    CHECK(j["demon"][0]["policy_success"]["exact"] == "1/2");
    CHECK(j["demon"][0].contains("override_set"));
    CHECK(j["overall"]["oracle"] == "1/2");
}

TEST_CASE("oracle --track line exposes the degenerate N=3 case") {
    const auto res = run({"oracle", "--track", "line", "--stations", "3"});
    REQUIRE(res.code == 0);
    const json j = json::parse(res.out);
    CHECK(j["oracle_table"]["per_destination"]["1"]["exact"] == "1");
    CHECK(j["oracle_table"]["degenerate_destinations"][0] == 1);
}
