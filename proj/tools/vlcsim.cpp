// Monte Carlo CLI for the VLC noise-mitigation receive chain.
//
// Subcommands:
//   run       single scenario or sweep from a scenario file / flags
//   table4    SER vs acquisition length at the strong operating point
//   figure34  interference x distance x filtering grids (one report per distance)

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vlc/errors.hpp"
#include "vlc/harness.hpp"

namespace {

struct CommonOpts {
    std::string scenario_path;
    std::string modulation;
    long frames = -1;
    long acq_samples = -1;
    int order = -1;
    std::string filtering;
    std::optional<std::uint64_t> seed;
    std::string format = "csv";
    std::string out = "stdout";
    int repetitions = -1;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts, bool with_scenario) {
    if (with_scenario)
        cmd->add_option("--scenario", opts.scenario_path, "Scenario/sweep JSON file");
    cmd->add_option("--modulation", opts.modulation, "4ppm or 8ppm")
        ->check(CLI::IsMember({"4ppm", "8ppm"}));
    cmd->add_option("--frames", opts.frames, "Frames per point");
    cmd->add_option("--acq-samples", opts.acq_samples, "Noise acquisition length in samples");
    cmd->add_option("--order", opts.order, "Linear predictor order");
    cmd->add_option("--filtering", opts.filtering, "on, off or both")
        ->check(CLI::IsMember({"on", "off", "both"}));
    cmd->add_option("--seed", opts.seed, "Base seed (64-bit)");
    cmd->add_option("--format", opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out, "Output path or 'stdout'");
    cmd->add_option("--reps", opts.repetitions, "Independent seeds per sweep point");
}

void apply_overrides(vlc::ScenarioConfig& cfg, const CommonOpts& opts) {
    if (opts.modulation == "4ppm") cfg.ppm.order_M = 4;
    if (opts.modulation == "8ppm") cfg.ppm.order_M = 8;
    if (opts.frames > 0) cfg.n_frames = opts.frames;
    if (opts.acq_samples > 0) cfg.acquisition_samples = opts.acq_samples;
    if (opts.order > 0) cfg.predictor_order = opts.order;
    if (!opts.filtering.empty()) {
        if (opts.filtering == "on") cfg.filtering = vlc::FilteringMode::on;
        if (opts.filtering == "off") cfg.filtering = vlc::FilteringMode::off;
        if (opts.filtering == "both") cfg.filtering = vlc::FilteringMode::both;
    }
    if (opts.seed) cfg.seed = vlc::RngSeed{*opts.seed, 0};
}

void write_output(const std::string& text, const std::string& path) {
    if (path == "stdout" || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw vlc::ConfigError("cannot open output file: " + path);
    f << text;
}

// figure34 emits one report per distance; file outputs get a .d<N> tag
// before the extension.
std::string tagged_path(const std::string& path, const std::string& tag) {
    if (path == "stdout" || path == "-") return path;
    const std::size_t dot = path.rfind('.');
    if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
        return path + "." + tag;
    return path.substr(0, dot) + "." + tag + path.substr(dot);
}

int run_command(const CommonOpts& opts) {
    vlc::RunPlan plan;
    if (!opts.scenario_path.empty()) {
        std::ifstream f(opts.scenario_path);
        if (!f) throw vlc::ConfigError("cannot open scenario file: " + opts.scenario_path);
        std::stringstream ss;
        ss << f.rdbuf();
        plan = vlc::parse_run_plan_json(ss.str());
    } else {
        plan.scenario = vlc::default_strong_interference_scenario(4);
    }
    apply_overrides(plan.scenario, opts);

    vlc::ExperimentReport report;
    if (plan.sweep) {
        vlc::SweepSpec sweep;
        sweep.base = plan.scenario;
        sweep.axis = plan.sweep->axis;
        sweep.values = plan.sweep->values;
        sweep.repetitions = opts.repetitions > 0 ? opts.repetitions : plan.sweep->repetitions;
        report = vlc::run_sweep(sweep);
    } else {
        report.config_hash = vlc::scenario_config_hash(plan.scenario);
        report.base_seed = plan.scenario.seed.seed;
        report.rows = vlc::run_scenario(plan.scenario);
    }
    write_output(vlc::emit_report(report, vlc::parse_format(opts.format)), opts.out);
    return 0;
}

int table4_command(const CommonOpts& opts) {
    const std::uint64_t seed = opts.seed.value_or(20260811ull);
    const long frames = opts.frames > 0 ? opts.frames : 10000;
    const int reps = opts.repetitions > 0 ? opts.repetitions : 11;
    vlc::SweepSpec sweep = vlc::table4_sweep(seed, frames, reps);
    if (opts.order > 0) sweep.base.predictor_order = opts.order;
    if (opts.modulation == "8ppm") sweep.base.ppm.order_M = 8;
    const vlc::ExperimentReport report = vlc::run_sweep(sweep);
    write_output(vlc::emit_report(report, vlc::parse_format(opts.format)), opts.out);
    return 0;
}

int figure34_command(const CommonOpts& opts) {
    const std::uint64_t seed = opts.seed.value_or(20260811ull);
    const long frames = opts.frames > 0 ? opts.frames : 10000;
    const int reps = opts.repetitions > 0 ? opts.repetitions : 11;
    const int order_M = opts.modulation == "8ppm" ? 8 : 4;
    for (double distance : {2.0, 4.0, 8.0}) {
        vlc::SweepSpec sweep =
            vlc::figure34_interference_sweep(order_M, distance, seed, frames, reps);
        if (opts.order > 0) sweep.base.predictor_order = opts.order;
        const vlc::ExperimentReport report = vlc::run_sweep(sweep);
        const std::string tag = "d" + std::to_string(static_cast<int>(distance));
        write_output(vlc::emit_report(report, vlc::parse_format(opts.format)),
                     tagged_path(opts.out, tag));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"VLC noise-mitigation Monte Carlo simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts, table4_opts, fig_opts;
    CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario or sweep");
    add_common_flags(run_cmd, run_opts, true);
    CLI::App* table4_cmd =
        app.add_subcommand("table4", "SER vs acquisition length sweep");
    add_common_flags(table4_cmd, table4_opts, false);
    CLI::App* fig_cmd = app.add_subcommand(
        "figure34", "Interference sweeps at 2/4/8 m with and without filtering");
    add_common_flags(fig_cmd, fig_opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) return run_command(run_opts);
        if (table4_cmd->parsed()) return table4_command(table4_opts);
        if (fig_cmd->parsed()) return figure34_command(fig_opts);
    } catch (const vlc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const vlc::EstimationError& e) {
        std::cerr << "estimation failed: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
