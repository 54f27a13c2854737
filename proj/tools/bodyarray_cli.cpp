// SPDX-License-Identifier: Apache-2.0
//
// bodyarray command-line front end.
//
//   bodyarray simulate <config> [--out DIR] [--format csv|jsonl|gnuplot] [--jobs N] [--seed S]
//   bodyarray validate <config>
//   bodyarray presets list | presets show <name>
//   bodyarray oracle knife-edge [--nu-min A] [--nu-max B] [--count N]
//
// <config> is a scenario file path or "preset:<name>".
// Exit codes: 0 success, 1 validation error, 2 runtime/numerical error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bodyarray/bodyarray.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_runtime = 2;

bodyarray::ScenarioConfig load(const std::string& ref) {
    const std::string prefix = "preset:";
    if (ref.rfind(prefix, 0) == 0) return bodyarray::preset_scenario(ref.substr(prefix.size()));
    return bodyarray::load_scenario(ref);
}

void print_warnings(const bodyarray::ScenarioConfig& cfg) {
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
}

int simulate(const std::string& ref, const std::string& out_dir, const std::string& format_name,
             int jobs, const std::optional<std::uint64_t>& seed) {
    bodyarray::ScenarioConfig cfg;
    bodyarray::ExportFormat format;
    try {
        cfg = load(ref);
        format = bodyarray::parse_export_format(format_name);
        if (jobs < 1) throw bodyarray::validation_error({"--jobs must be >= 1"});
    } catch (const bodyarray::validation_error& e) {
        for (const auto& p : e.problems()) std::cerr << "error: " << p << "\n";
        return exit_validation;
    } catch (const bodyarray::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
    if (seed) cfg.seed = seed;
    print_warnings(cfg);

    try {
        const bodyarray::ResultTable table = bodyarray::run(cfg, {jobs});
        std::filesystem::create_directories(out_dir);
        const std::string main_file = out_dir + "/" + cfg.name + bodyarray::file_extension(format);
        bodyarray::export_table(table, format, main_file);
        std::cout << main_file << "\n";
        if (format != bodyarray::ExportFormat::jsonl) {
            const std::string curve_dir = out_dir + "/" + cfg.name + "_curves";
            std::filesystem::create_directories(curve_dir);
            for (const auto& p : bodyarray::export_curves(table, format, curve_dir)) std::cout << p << "\n";
        }
        for (const auto& r : table.rows) {
            if (!r.index_name.empty()) continue;
            std::cerr << r.quantity;
            if (r.position) std::cerr << " (" << r.position->x() << ", " << r.position->y() << ")";
            if (!r.series.empty()) std::cerr << " " << r.series;
            std::cerr << " = " << bodyarray::format_number(r.value) << " " << r.units << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_ok;
}

int validate(const std::string& ref) {
    try {
        const auto cfg = load(ref);
        print_warnings(cfg);
        std::cout << "ok " << cfg.name << " config_hash=" << bodyarray::config_hash(cfg) << "\n";
        return exit_ok;
    } catch (const bodyarray::validation_error& e) {
        for (const auto& p : e.problems()) std::cerr << "error: " << p << "\n";
        return exit_validation;
    }
}

int knife_edge(double nu_min, double nu_max, int count) {
    if (count < 1 || nu_min > nu_max) {
        std::cerr << "error: need count >= 1 and nu-min <= nu-max\n";
        return exit_validation;
    }
    std::cout << "nu,C,S,attenuation_db\n";
    for (int i = 0; i < count; ++i) {
        const double nu = count == 1 ? nu_min : nu_min + (nu_max - nu_min) * i / (count - 1);
        const auto [c, s] = bodyarray::oracles::fresnel_integrals(nu);
        std::cout << bodyarray::format_number(nu) << ',' << bodyarray::format_number(c) << ','
                  << bodyarray::format_number(s) << ','
                  << bodyarray::format_number(bodyarray::oracles::knife_edge_attenuation(nu)) << "\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bodyarray: body-induced excess attenuation of RF links seen by a linear array"};
    app.set_version_flag("--version", std::string(bodyarray::version));
    app.require_subcommand(1);

    std::string config;
    std::string out_dir = "out";
    std::string format = "csv";
    int jobs = 1;
    std::optional<std::uint64_t> seed;

    auto* sim = app.add_subcommand("simulate", "Run a scenario and export the results");
    sim->add_option("config", config, "Scenario file or preset:<name>")->required();
    sim->add_option("--out", out_dir, "Output directory");
    sim->add_option("--format", format, "csv, jsonl or gnuplot");
    sim->add_option("--jobs", jobs, "Positions evaluated in parallel");
    sim->add_option("--seed", seed, "Override the noise seed");

    auto* val = app.add_subcommand("validate", "Check a scenario file");
    val->add_option("config", config, "Scenario file or preset:<name>")->required();

    std::string preset_name;
    auto* pre = app.add_subcommand("presets", "Built-in scenarios");
    pre->require_subcommand(1);
    auto* pre_list = pre->add_subcommand("list", "List preset names");
    auto* pre_show = pre->add_subcommand("show", "Print a preset scenario document");
    pre_show->add_option("name", preset_name)->required();

    double nu_min = -3.0, nu_max = 3.0;
    int count = 13;
    auto* orc = app.add_subcommand("oracle", "Reference computations");
    orc->require_subcommand(1);
    auto* ke = orc->add_subcommand("knife-edge", "Closed-form knife-edge attenuation table");
    ke->add_option("--nu-min", nu_min);
    ke->add_option("--nu-max", nu_max);
    ke->add_option("--count", count);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    if (*sim) return simulate(config, out_dir, format, jobs, seed);
    if (*val) return validate(config);
    if (*pre_list) {
        for (const auto& [name, _] : bodyarray::presets()) std::cout << name << "\n";
        return exit_ok;
    }
    if (*pre_show) {
        const auto& table = bodyarray::presets();
        const auto it = table.find(preset_name);
        if (it == table.end()) {
            std::cerr << "error: unknown preset '" << preset_name << "'\n";
            return exit_validation;
        }
        std::cout << it->second;
        return exit_ok;
    }
    if (*ke) return knife_edge(nu_min, nu_max, count);
    return exit_validation;
}
