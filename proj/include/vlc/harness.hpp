#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlc/channel.hpp"
#include "vlc/detection.hpp"
#include "vlc/estimation.hpp"
#include "vlc/ppm.hpp"

namespace vlc {

inline constexpr const char* kToolVersion = "vlcsim 1.0.0";

enum class FilteringMode { on, off, both };

// Full experiment description: two-phase protocol (noise acquisition, then
// data transmission) over one synthetic channel realization.
struct ScenarioConfig {
    PpmConfig ppm;
    ChannelModel channel;
    InterferenceSpec interference = WhiteOnly{};
    NoiseSpec noise;
    long acquisition_samples = 2000;
    int predictor_order = 8;
    long n_frames = 10000;
    FilteringMode filtering = FilteringMode::both;
    RngSeed seed;

    // Orchestration hook used by run_sweep: when set, the data phase
    // (symbols, transmit-side interference and noise) draws from this
    // stream instead of `seed`, pairing axis points on one realization.
    // Plain scenario runs leave it empty.
    std::optional<RngSeed> data_phase_seed;

    void validate() const;
};

enum class SweepAxis { interference_amplitude, channel_gain, acquisition_samples, order_M };

SweepAxis parse_axis(const std::string& name);  // throws ConfigError
std::string axis_name(SweepAxis axis);

struct SweepSpec {
    ScenarioConfig base;
    SweepAxis axis = SweepAxis::acquisition_samples;
    std::vector<double> values;
    int repetitions = 1;

    void validate() const;
};

// One result row per (axis value, repetition, filtering mode).
struct ExperimentRow {
    std::string axis_name = "scenario";
    double axis_value = 0.0;
    int repetition = 0;
    bool filtered = false;
    int order_M = 0;
    long n_frames = 0;
    long n_errors = 0;
    double ser = 0.0;
    double ser_ci_low = 0.0;
    double ser_ci_high = 0.0;
    double prediction_gain_db = std::nan("");  // NaN when filtering is off
    int predictor_order = 0;
    double residual_variance = std::nan("");
    std::uint64_t seed = 0;                // effective seed of the point's RNG
    std::uint64_t realization_digest = 0;  // shared by the paired on/off rows
    std::string note;                      // downgrade / failure reason, empty when clean
};

struct ExperimentReport {
    std::string tool_version = kToolVersion;
    std::string axis = "scenario";
    std::uint64_t config_hash = 0;
    std::uint64_t base_seed = 0;
    std::vector<ExperimentRow> rows;
};

// Executes the two-phase protocol: obstructed capture -> noise power;
// noise-only capture -> ACF -> interference ACF -> Yule-Walker predictor;
// random symbols -> modulate -> transmit; cancel (filtering on) or bypass;
// detect -> SER. For filtering=both the on/off pair reuses the same
// transmitted waveform and noise realization, so the comparison is paired.
// Estimation failures on real data (degenerate or ill-conditioned ACF, or
// interference power indistinguishable from the noise floor) downgrade the
// "on" leg to a bypass with an explanatory note instead of aborting.
std::vector<ExperimentRow> run_scenario(const ScenarioConfig& cfg);

// Runs every (value x repetition) point. Repetitions own derived,
// non-overlapping RNG streams; within a repetition the data-phase streams
// are shared across axis values so points along the axis are paired (common
// random numbers), mirroring the paired on/off design. Rows are emitted in
// (value, repetition, off-before-on) order regardless of execution order.
ExperimentReport run_sweep(const SweepSpec& sweep);

ScenarioConfig scenario_for_point(const SweepSpec& sweep, int value_index, int repetition);
std::uint64_t scenario_config_hash(const ScenarioConfig& cfg);

// --- Reporting -------------------------------------------------------------

enum class ReportFormat { csv, json };

ReportFormat parse_format(const std::string& name);  // throws ConfigError

// CSV columns: axis_name, axis_value, filtering, order_M, n_frames,
// n_errors, ser, ser_ci_low, ser_ci_high, prediction_gain_db,
// predictor_order, residual_variance, seed. Numbers use shortest
// round-trip decimals. JSON mirrors the rows plus metadata (tool version,
// config hash, realization digests, notes).
std::string emit_report(const ExperimentReport& report, ReportFormat format);

ExperimentReport parse_report_json(const std::string& text);

// --- Scenario files ----------------------------------------------------------

struct SweepSettings {
    SweepAxis axis = SweepAxis::acquisition_samples;
    std::vector<double> values;
    int repetitions = 1;
};

struct RunPlan {
    ScenarioConfig scenario;
    std::optional<SweepSettings> sweep;
};

RunPlan parse_run_plan_json(const std::string& text);  // throws ConfigError
std::string run_plan_to_json(const RunPlan& plan);

// --- Canned experiments ------------------------------------------------------

// Tuned desk-scale operating point: 1 ms frames at 1 MS/s, hum + AR
// composite interference strong enough that unfiltered detection degrades
// hard while the filtered chain stays in the 1e-2..1e-3 SER range.
ScenarioConfig default_strong_interference_scenario(int order_M);

// Acquisition-length sweep over {10,...,4000} samples at the strong
// operating point.
SweepSpec table4_sweep(std::uint64_t seed, long n_frames, int repetitions);

// Interference-amplitude sweep at one link distance (gain = g0 / d^2).
SweepSpec figure34_interference_sweep(int order_M, double distance_m,
                                      std::uint64_t seed, long n_frames,
                                      int repetitions);

// Channel-gain sweep (distance surrogates d = 2, 4, 8 m) at the strongest
// interference point.
SweepSpec figure34_distance_sweep(int order_M, std::uint64_t seed, long n_frames,
                                  int repetitions);

}  // namespace vlc
