// cdet: deterministic 802.11 DCF simulator with RF-energy-duration collision
// detection, plus an active-antenna noise-figure calculator.
//
// Subcommands: simulate, sweep, noise-figure, validate.
// Exit codes: 0 ok, 1 usage, 2 invalid config, 3 internal invariant violation.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdet/noisefig.hpp"
#include "cdet/simulation.hpp"

namespace {

using namespace cdet;

constexpr int kExitOk = 0, kExitUsage = 1, kExitConfig = 2, kExitInternal = 3;

// Relative output paths land in $CDET_OUT_DIR when it is set.
std::string resolve_out_path(const std::string& path) {
    const char* base = std::getenv("CDET_OUT_DIR");
    if (!base || !*base || path.empty()) return path;
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(base) / p).string();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

struct SimulateArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string trace_path;
};

json load_config(const SimulateArgs& args) {
    json cfg = load_json_file(args.config_path);
    for (const auto& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ScenarioError(kv, "override must look like key=value");
        apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (args.seed) cfg["seed"] = *args.seed;
    return cfg;
}

int cmd_simulate(const SimulateArgs& args) {
    const json cfg = load_config(args);
    const Scenario scenario = Scenario::from_json(cfg);
    const auto result = run_scenario(scenario, !args.trace_path.empty());

    const std::string csv = RunMetrics::csv_header() + "\n" + result.metrics.csv_row() + "\n";
    if (args.out_path.empty()) {
        std::cout << csv;
    } else {
        const auto out = resolve_out_path(args.out_path);
        write_file(out, csv);
        // Echo the effective configuration so the run can be reproduced from
        // its outputs alone.
        write_file(out + ".config.json", scenario.to_json().dump(2) + "\n");
    }
    if (!args.trace_path.empty()) write_file(resolve_out_path(args.trace_path), result.trace);
    return kExitOk;
}

int cmd_validate(const std::string& config_path) {
    Scenario::from_json(load_json_file(config_path));
    std::cout << "ok\n";
    return kExitOk;
}

struct SweepArgs {
    std::string config_path;
    std::string param;
    std::vector<std::string> values;
    std::vector<std::uint64_t> seeds;
    std::string out_path;
};

int cmd_sweep(const SweepArgs& args) {
    const json base = load_json_file(args.config_path);
    if (args.values.empty()) throw ScenarioError("--values", "no sweep points given");
    if (args.seeds.empty()) throw ScenarioError("--seeds", "empty seed list");
    {
        const auto keys = known_scenario_keys(base);
        if (std::find(keys.begin(), keys.end(), args.param) == keys.end())
            throw ScenarioError(args.param, "unknown scenario key; did you mean '" +
                                                closest_key(args.param, keys) + "'?");
    }
    std::string csv = "point,seed," + RunMetrics::csv_header() + "\n";
    for (const auto& value : args.values) {
        for (const auto seed : args.seeds) {
            json cfg = base;
            apply_override(cfg, args.param, value);
            cfg["seed"] = seed;
            const Scenario scenario = Scenario::from_json(cfg);
            const auto result = run_scenario(scenario);
            csv += args.param + "=" + value + "," + std::to_string(seed) + "," +
                   result.metrics.csv_row() + "\n";
        }
    }
    if (args.out_path.empty()) {
        std::cout << csv;
    } else {
        write_file(resolve_out_path(args.out_path), csv);
    }
    return kExitOk;
}

struct NoiseFigureArgs {
    std::optional<double> fa_db, fant_db, fr_db, ga_db;
    std::optional<double> fa, fant, fr, ga;
    std::string table_path;
    std::optional<double> freq_mhz;
    std::string sweep_ga;    // lo:hi:step in dB
    std::string sweep_freq;  // lo:hi:step in MHz
    std::string out_path;
};

double pick(const std::optional<double>& linear, const std::optional<double>& db,
            double fallback) {
    if (linear) return *linear;
    if (db) return noisefig::linear_from_db(*db);
    return fallback;
}

std::vector<double> parse_range(const std::string& spec, const std::string& flag) {
    double lo = 0, hi = 0, step = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0 || hi < lo)
        throw ScenarioError(flag, "expected lo:hi:step with step > 0");
    std::vector<double> out;
    for (double v = lo; v <= hi + 1e-9; v += step) out.push_back(v);
    return out;
}

int cmd_noise_figure(const NoiseFigureArgs& args) {
    using namespace cdet::noisefig;
    std::optional<AmbientNoiseTable> table;
    if (!args.table_path.empty()) table = AmbientNoiseTable::from_csv_file(args.table_path);

    struct Point {
        double freq_mhz = 0;
        bool has_freq = false;
        double f_ambient = 0, g_antenna = 0;
    };
    std::vector<Point> points;
    const double ga_base = pick(args.ga, args.ga_db, 1.0);

    auto fa_at = [&](double freq) { return table->f_ambient_at(freq); };
    if (!args.sweep_freq.empty()) {
        if (!table) throw ScenarioError("--sweep-freq", "requires --fa-table");
        for (double f : parse_range(args.sweep_freq, "--sweep-freq"))
            points.push_back({f, true, fa_at(f), ga_base});
    } else if (!args.sweep_ga.empty()) {
        double fa = 0;
        bool has_freq = false;
        double freq = 0;
        if (table) {
            if (!args.freq_mhz) throw ScenarioError("--fa-table", "give --freq-mhz to pick a row");
            fa = fa_at(*args.freq_mhz);
            has_freq = true;
            freq = *args.freq_mhz;
        } else {
            if (!args.fa && !args.fa_db) throw ScenarioError("--fa", "ambient noise factor required");
            fa = pick(args.fa, args.fa_db, 0.0);
        }
        for (double ga_db : parse_range(args.sweep_ga, "--sweep-ga"))
            points.push_back({freq, has_freq, fa, linear_from_db(ga_db)});
    } else if (table && args.freq_mhz) {
        points.push_back({*args.freq_mhz, true, fa_at(*args.freq_mhz), ga_base});
    } else {
        if (!args.fa && !args.fa_db) throw ScenarioError("--fa", "ambient noise factor required");
        points.push_back({0, false, pick(args.fa, args.fa_db, 0.0), ga_base});
    }

    const double fant = pick(args.fant, args.fant_db, 1.0);
    const double fr = pick(args.fr, args.fr_db, 1.0);

    std::string out;
    out += "freq_mhz,f_ambient,f_ambient_db,f_antenna,f_antenna_db,f_receiver,f_receiver_db,"
           "g_antenna,g_antenna_db,f_s,f_s_db,f_sa,f_sa_db,rel_error,f_a_bound,f_a_bound_db,"
           "feasible\n";
    char buf[512];
    for (const auto& pt : points) {
        if (pt.f_ambient <= 1.0)
            throw ScenarioError("noise-figure",
                                "ambient noise factor must exceed 1 (got " +
                                    std::to_string(pt.f_ambient) +
                                    "); the system equations are singular at F_A = 1");
        const NoiseFigureParams p{pt.f_ambient, fant, fr, pt.g_antenna};
        const double fs = system_nf(p);
        const double fsa = approx_system_nf(pt.f_ambient, fant);
        const double bound = max_antenna_nf(pt.f_ambient, fr, pt.g_antenna);
        const bool feasible = antenna_nf_feasible(bound);
        const std::string freq = pt.has_freq ? std::to_string(pt.freq_mhz) : "";
        const std::string bound_db =
            bound > 0 ? std::to_string(db_from_linear(bound)) : std::string("na");
        std::snprintf(buf, sizeof buf,
                      "%s,%.6g,%.4f,%.6g,%.4f,%.6g,%.4f,%.6g,%.4f,%.6g,%.4f,%.6g,%.4f,%.6g,"
                      "%.6g,%s,%d\n",
                      freq.c_str(), pt.f_ambient, db_from_linear(pt.f_ambient), fant,
                      db_from_linear(fant), fr, db_from_linear(fr), pt.g_antenna,
                      db_from_linear(pt.g_antenna), fs, db_from_linear(fs), fsa,
                      db_from_linear(fsa), (fs - fsa) / fs, bound, bound_db.c_str(),
                      feasible ? 1 : 0);
        out += buf;
    }
    if (args.out_path.empty()) {
        std::cout << out;
    } else {
        write_file(resolve_out_path(args.out_path), out);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"802.11 DCF simulator with RF-energy-duration collision detection"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "run one scenario");
    simulate->add_option("--config", sim.config_path, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    simulate->add_option("--set", sim.overrides, "override a config key (key=value)");
    simulate->add_option("--seed", sim.seed, "override the scenario seed");
    simulate->add_option("--out", sim.out_path, "metrics CSV path (default stdout)");
    simulate->add_option("--trace", sim.trace_path, "write the event trace here");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("--config", validate_path, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    sweep_cmd->add_option("--config", sweep.config_path, "base scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sweep_cmd->add_option("--param", sweep.param, "dotted scenario key to sweep")->required();
    sweep_cmd->add_option("--values", sweep.values, "sweep values")->required()->delimiter(',');
    sweep_cmd->add_option("--seeds", sweep.seeds, "seeds per point")->required()->delimiter(',');
    sweep_cmd->add_option("--out", sweep.out_path, "CSV path (default stdout)");

    NoiseFigureArgs nf;
    auto* nfc = app.add_subcommand("noise-figure", "active-antenna noise-figure tables");
    nfc->add_option("--fa", nf.fa, "ambient noise factor, linear");
    nfc->add_option("--fa-db", nf.fa_db, "ambient noise figure, dB");
    nfc->add_option("--fant", nf.fant, "antenna noise factor, linear");
    nfc->add_option("--fant-db", nf.fant_db, "antenna noise figure, dB");
    nfc->add_option("--fr", nf.fr, "receiver noise factor, linear");
    nfc->add_option("--fr-db", nf.fr_db, "receiver noise figure, dB");
    nfc->add_option("--ga", nf.ga, "antenna power gain, linear");
    nfc->add_option("--ga-db", nf.ga_db, "antenna power gain, dB");
    nfc->add_option("--fa-table", nf.table_path, "ambient-noise CSV (freq_mhz, f_ambient_db)")
        ->check(CLI::ExistingFile);
    nfc->add_option("--freq-mhz", nf.freq_mhz, "frequency to read from the table");
    nfc->add_option("--sweep-ga", nf.sweep_ga, "sweep antenna gain, dB lo:hi:step");
    nfc->add_option("--sweep-freq", nf.sweep_freq, "sweep frequency, MHz lo:hi:step");
    nfc->add_option("--out", nf.out_path, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim);
        if (*validate) return cmd_validate(validate_path);
        if (*sweep_cmd) return cmd_sweep(sweep);
        if (*nfc) return cmd_noise_figure(nf);
    } catch (const ScenarioError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitUsage;
}
