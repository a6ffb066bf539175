// Acceptance suite: one pass/fail line per release criterion.
// Every tolerance is pinned here; a red line is a real defect.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "demonwalk/cli.hpp"
#include "demonwalk/experiments.hpp"
#include "demonwalk/oracle.hpp"

using namespace demonwalk;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ExperimentConfig make_config(Subcommand sc) {
    ExperimentConfig cfg;
    cfg.experiment = sc;
    if (sc == Subcommand::Predict || sc == Subcommand::Demon || sc == Subcommand::Oracle)
        cfg.light = LightSpec{LightSpec::Mode::Grid, 1};
    return cfg;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

// ---- criterion 1: envelope bet, S=1 L=2, uniform[0,4] ------------------
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    ExperimentConfig cfg = make_config(Subcommand::Envelope);
    cfg.trials = 1'000'000;
    cfg.seed = 42;
    const Report r = run_replicas(cfg);
    const double exact = *r.overall->oracle_value;
    const double emp = r.overall->estimate->point;
    const double elapsed = seconds_since(start);
    const bool ok = exact == 0.625 && std::abs(emp - 0.625) <= 0.002 && elapsed < 5.0;
    report("C1 envelope bet: exact 0.625, 1e6 trials within 0.002, < 5 s", ok,
           "exact=" + fmt(exact) + " empirical=" + fmt(emp) + " t=" + fmt(elapsed) + "s");
}

// ---- criterion 2: antipodal postdiction, N in {9, 5, 41} ---------------
void criterion_2() {
    struct Case {
        int n;
        Rational oracle;
    };
    const std::vector<Case> cases = {{9, Rational(11, 18)}, {5, Rational(7, 10)},
                                     {41, Rational(1, 2) + Rational(1, 41)}};
    bool ok = true;
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& c : cases) {
        Track track(c.n);
        bool enumerated = true;
        for (int w = 0; w < c.n; ++w)
            enumerated = enumerated &&
                         exact_postdiction_success(c.n, w, antipodal_light(track, w)) == c.oracle;
        ExperimentConfig cfg = make_config(Subcommand::Postdict);
        cfg.stations = c.n;
        cfg.trials = 1'000'000;
        cfg.seed = 42;
        const Report r = run_replicas(cfg);
        const double emp = r.overall->estimate->point;
        const bool case_ok = enumerated && *r.overall->oracle == c.oracle &&
                             std::abs(emp - c.oracle.to_double()) <= 0.002;
        ok = ok && case_ok;
        detail += "N=" + std::to_string(c.n) + ":" + fmt(emp) + "/" + c.oracle.to_string() + " ";
    }
    const double elapsed = seconds_since(start);
    ok = ok && elapsed < 10.0;
    report("C2 antipodal postdiction: oracle 1/2+1/N exact, 1e6 trials within 0.002, < 10 s", ok,
           detail + "t=" + fmt(elapsed) + "s");
}

// ---- criterion 3: minor-arc light adjacent to the destination ----------
void criterion_3() {
    bool enumerated = true;
    for (int w = 0; w < 9; ++w)
        enumerated = enumerated &&
                     exact_postdiction_success(9, w, GridPoint{(2 * w + 1) % 18}) == Rational(1, 9);
    ExperimentConfig cfg = make_config(Subcommand::Postdict);
    cfg.light = LightSpec{LightSpec::Mode::Adjacent, 0};
    cfg.trials = 1'000'000;
    cfg.seed = 42;
    const Report r = run_replicas(cfg);
    const double emp = r.overall->estimate->point;
    const bool ok = enumerated && *r.overall->oracle == Rational(1, 9) &&
                    std::abs(emp - 1.0 / 9.0) <= 0.002;
    report("C3 minor-arc postdiction: oracle 1/9 exact, 1e6 trials within 0.002", ok,
           "empirical=" + fmt(emp));
}

// ---- criterion 4: fixed light, destination-averaged postdiction --------
void criterion_4() {
    Rational averaged;
    for (int w = 0; w < 9; ++w)
        averaged += Rational(1, 9) * exact_postdiction_success(9, w, GridPoint{1});
    ExperimentConfig cfg = make_config(Subcommand::Postdict);
    cfg.light = LightSpec{LightSpec::Mode::Grid, 1};
    cfg.trials = 10'000'000;
    cfg.seed = 42;
    const Report r = run_replicas(cfg);
    const double emp = r.overall->estimate->point;
    const bool ok = averaged == Rational(1, 2) && std::abs(emp - 0.5) <= 0.002;
    report("C4 fixed-light postdiction: sum_D (1/N) per_destination[D] = 1/2 exact, 1e7 trials "
           "within 0.002",
           ok, "empirical=" + fmt(emp) + " oracle=" + averaged.to_string());
}

// criteria 5 and 6 share one 1e7-step prediction run
Report prediction_run() {
    ExperimentConfig cfg = make_config(Subcommand::Predict);
    cfg.stations = 9;
    cfg.steps = 10'000'000;
    cfg.seed = 42;
    return run_replicas(cfg);
}

// ---- criterion 5: per-destination prediction conditionals --------------
void criterion_5(const Report& r) {
    const SuccessTable table = exact_prediction_table(9, GridPoint{1});
    bool oracle_ok = true;
    for (int d = 0; d < 9; ++d)
        oracle_ok = oracle_ok &&
                    table.per_destination.at(d) == (d <= 1 ? Rational(1, 9) : Rational(11, 18));
    bool sim_ok = true;
    std::string detail;
    for (int d = 0; d < 9; ++d) {
        const double emp = r.groups.at("per_destination").at(d).estimate->point;
        const double target = d <= 1 ? 1.0 / 9.0 : 11.0 / 18.0;
        sim_ok = sim_ok && std::abs(emp - target) <= 0.003;
    }
    detail = "dest0=" + fmt(r.groups.at("per_destination").at(0).estimate->point) +
             " dest5=" + fmt(r.groups.at("per_destination").at(5).estimate->point);
    report("C5 prediction conditionals: strong 11/18, weak 1/9 (exact + 1e7 steps within 0.003)",
           oracle_ok && sim_ok, detail);
}

// ---- criterion 6: per-current-station null result -----------------------
void criterion_6(const Report& r) {
    const SuccessTable table = exact_prediction_table(9, GridPoint{1});
    bool oracle_ok = true;
    for (int s = 0; s < 9; ++s)
        oracle_ok = oracle_ok && table.per_current.at(s) == Rational(1, 2);
    bool sim_ok = true;
    double worst = 0.0;
    for (int s = 0; s < 9; ++s) {
        const double emp = r.groups.at("per_current").at(s).estimate->point;
        worst = std::max(worst, std::abs(emp - 0.5));
        sim_ok = sim_ok && std::abs(emp - 0.5) <= 0.003;
    }
    report("C6 per-current-station null: every station exactly 1/2 (simulated within 0.003)",
           oracle_ok && sim_ok, "max |emp - 1/2| = " + fmt(worst));
}

// ---- criterion 7: reflecting line, N = 5 --------------------------------
void criterion_7() {
    const auto stationary = stationary_distribution(ChainKind::Line, 5);
    const auto stepped = apply_transition(ChainKind::Line, 5, stationary);
    bool fixed_point = true;
    for (int i = 0; i < 5; ++i)
        fixed_point = fixed_point && stepped.probabilities[i] == stationary.probabilities[i];

    ExperimentConfig cfg = make_config(Subcommand::Line);
    cfg.stations = 5;
    cfg.steps = 10'000'000;
    cfg.seed = 42;
    const Report r = run_replicas(cfg);
    bool occupancy_ok = true;
    const double expected[] = {0.125, 0.25, 0.25, 0.25, 0.125};
    for (int s = 0; s < 5; ++s) {
        const double emp = r.groups.at("occupancy").at(s).estimate->point;
        occupancy_ok = occupancy_ok && std::abs(emp - expected[s]) <= 0.002;
    }
    const double interior = r.groups.at("per_destination").at(2).estimate->point;
    const bool interior_ok = std::abs(interior - 0.75) <= 0.003 &&
                             exact_line_table(5).per_destination.at(2) == Rational(3, 4);
    report("C7 line walk: occupancy (1/8,1/4,1/4,1/4,1/8) within 0.002, interior destination 3/4 "
           "within 0.003, stationary fixed point exact",
           fixed_point && occupancy_ok && interior_ok, "interior=" + fmt(interior));
}

// ---- criterion 8: adaptive demon end-to-end + override invariance ------
void criterion_8() {
    ExperimentConfig cfg = make_config(Subcommand::Demon);
    cfg.stations = 9;
    cfg.steps = 10'000'000;
    cfg.alpha = 1e-3;
    cfg.bin = BinMode::CurrentStation;
    cfg.seed = 7;
    const Report r = run_replicas(cfg);
    const Rational realized = r.demon.at(0).policy_success;
    const double emp = r.overall->estimate->point;
    bool ok = realized == Rational(1, 2) && std::abs(emp - 0.5) <= 0.003;

    // override invariance: exact_policy_success = 1/2 for a family of sets
    RngStream stream = derive_stream(Seed{2026}, 0);
    for (int n : {5, 9, 15, 41}) {
        std::vector<std::set<int>> sets = {{}, {0}, {0, 1}};
        std::set<int> all;
        for (int s = 0; s < n; ++s) all.insert(s);
        sets.push_back(all);
        for (int rep = 0; rep < 5; ++rep) {
            std::set<int> random_set;
            const int size = 1 + static_cast<int>(stream.next_below(n));
            while (static_cast<int>(random_set.size()) < size)
                random_set.insert(static_cast<int>(stream.next_below(n)));
            sets.push_back(random_set);
        }
        for (const auto& s : sets)
            ok = ok && exact_policy_success(n, GridPoint{1}, s) == Rational(1, 2);
    }
    std::string overrides;
    for (int s : r.demon.at(0).override_set) overrides += std::to_string(s) + " ";
    report("C8 adaptive demon: overall within 0.003 of exact_policy_success(realized) = 1/2; "
           "override invariance exact for N in {5,9,15,41}",
           ok, "empirical=" + fmt(emp) + " realized overrides=[" + overrides + "] (>1/2 claim not "
           "reproduced: per-current rates are exactly 1/2)");
}

// ---- criterion 9: determinism + merge properties ------------------------
void criterion_9() {
    bool ok = true;
    const std::vector<std::vector<std::string>> argvs = {
        {"postdict", "--stations", "9", "--trials", "100000", "--seed", "42", "--replicas", "4"},
        {"envelope", "--trials", "100000", "--seed", "1"},
        {"predict", "--stations", "9", "--steps", "100000", "--seed", "5", "--replicas", "2"},
        {"demon", "--stations", "9", "--steps", "100000", "--seed", "7"},
        {"oracle", "--stations", "9", "--light", "grid:1"},
        {"line", "--stations", "5", "--steps", "100000", "--seed", "3", "--format", "csv"},
    };
    for (const auto& argv : argvs) {
        std::ostringstream out_a, out_b, err_a, err_b;
        const int code_a = run_cli(argv, out_a, err_a);
        const int code_b = run_cli(argv, out_b, err_b);
        ok = ok && code_a == 0 && code_b == 0 && out_a.str() == out_b.str();
    }
    RngStream stream = derive_stream(Seed{99}, 0);
    for (int i = 0; i < 1000; ++i) {
        const Tally a{stream.next_below(1000), 1000 + stream.next_below(1000)};
        const Tally b{stream.next_below(1000), 1000 + stream.next_below(1000)};
        const Tally c{stream.next_below(1000), 1000 + stream.next_below(1000)};
        ok = ok && merge_tallies(merge_tallies(a, b), c) == merge_tallies(a, merge_tallies(b, c));
    }
    report("C9 determinism: byte-identical reruns for every subcommand; merge associativity on "
           "1000 random triples",
           ok, "");
}

// ---- criterion 10: oracle structural identities -------------------------
void criterion_10() {
    bool ok = true;
    for (int n : {5, 7, 9, 15, 41}) {
        const SuccessTable t = exact_prediction_table(n, GridPoint{1});
        Rational by_current, by_destination;
        for (const auto& [s, p] : t.per_current) by_current += t.current_law.at(s) * p;
        for (const auto& [d, p] : t.per_destination) by_destination += t.destination_law.at(d) * p;
        ok = ok && by_current == t.overall && by_destination == t.overall;
        const long long bound = 4LL * n * n;
        const auto divides = [bound](const Rational& r) {
            return bound % r.den().convert_to<long long>() == 0;
        };
        ok = ok && divides(t.overall);
        for (const auto& [d, p] : t.per_destination) ok = ok && divides(p);
        for (const auto& [s, p] : t.per_current) ok = ok && divides(p);
    }
    report("C10 oracle identities: overall = sum(stationary*per_current) = "
           "sum(dest_law*per_destination) exact; denominators divide 4N^2 (N in {5,7,9,15,41})",
           ok, "");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    const Report prediction = prediction_run();
    criterion_5(prediction);
    criterion_6(prediction);
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures == 0) {
        std::cout << "ACCEPTANCE: all criteria passed\n";
        return 0;
    }
    std::cout << "ACCEPTANCE: " << failures << " criterion/criteria FAILED\n";
    return 1;
}
