#include <charconv>
#include <cmath>
#include <string>

#include <json.hpp>

#include "vlc/errors.hpp"
#include "vlc/harness.hpp"

namespace vlc {

namespace {

using nlohmann::json;

// Shortest round-trip decimal for CSV cells.
std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string hex64(std::uint64_t v) {
    char buf[19] = "0x";
    const auto res = std::to_chars(buf + 2, buf + sizeof buf, v, 16);
    return std::string(buf, res.ptr);
}

std::uint64_t parse_hex64(const std::string& s) {
    std::uint64_t v = 0;
    const char* first = s.data() + (s.rfind("0x", 0) == 0 ? 2 : 0);
    const auto res = std::from_chars(first, s.data() + s.size(), v, 16);
    if (res.ec != std::errc{}) throw ConfigError("bad hex value: " + s);
    return v;
}

json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

double json_double(const json& j) {
    if (j.is_null()) return std::nan("");
    return j.get<double>();
}

json row_to_json(const ExperimentRow& row) {
    json j;
    j["axis_name"] = row.axis_name;
    j["axis_value"] = row.axis_value;
    j["repetition"] = row.repetition;
    j["filtering"] = row.filtered ? "on" : "off";
    j["order_M"] = row.order_M;
    j["n_frames"] = row.n_frames;
    j["n_errors"] = row.n_errors;
    j["ser"] = number_or_null(row.ser);
    j["ser_ci_low"] = number_or_null(row.ser_ci_low);
    j["ser_ci_high"] = number_or_null(row.ser_ci_high);
    j["prediction_gain_db"] = number_or_null(row.prediction_gain_db);
    j["predictor_order"] = row.predictor_order;
    j["residual_variance"] = number_or_null(row.residual_variance);
    j["seed"] = row.seed;
    j["realization_digest"] = hex64(row.realization_digest);
    j["note"] = row.note;
    return j;
}

ExperimentRow row_from_json(const json& j) {
    ExperimentRow row;
    row.axis_name = j.at("axis_name").get<std::string>();
    row.axis_value = j.at("axis_value").get<double>();
    row.repetition = j.at("repetition").get<int>();
    row.filtered = j.at("filtering").get<std::string>() == "on";
    row.order_M = j.at("order_M").get<int>();
    row.n_frames = j.at("n_frames").get<long>();
    row.n_errors = j.at("n_errors").get<long>();
    row.ser = json_double(j.at("ser"));
    row.ser_ci_low = json_double(j.at("ser_ci_low"));
    row.ser_ci_high = json_double(j.at("ser_ci_high"));
    row.prediction_gain_db = json_double(j.at("prediction_gain_db"));
    row.predictor_order = j.at("predictor_order").get<int>();
    row.residual_variance = json_double(j.at("residual_variance"));
    row.seed = j.at("seed").get<std::uint64_t>();
    row.realization_digest = parse_hex64(j.at("realization_digest").get<std::string>());
    row.note = j.at("note").get<std::string>();
    return row;
}

// --- Interference spec <-> JSON ---------------------------------------------

json atomic_to_json(const AtomicInterference& atom) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            json j;
            if constexpr (std::is_same_v<T, WhiteOnly>) {
                j["type"] = "white_only";
            } else if constexpr (std::is_same_v<T, AutoRegressive>) {
                j["type"] = "autoregressive";
                j["coefficients"] = s.coefficients;
                j["driving_std"] = s.driving_std;
            } else if constexpr (std::is_same_v<T, HarmonicHum>) {
                j["type"] = "harmonic_hum";
                j["fundamental_hz"] = s.fundamental_hz;
                j["amplitudes"] = s.amplitudes;
                j["phases"] = s.phases;
            } else if constexpr (std::is_same_v<T, DcAmbient>) {
                j["type"] = "dc";
                j["level"] = s.level;
            }
            return j;
        },
        atom);
}

json interference_to_json(const InterferenceSpec& spec) {
    if (const auto* c = std::get_if<Composite>(&spec)) {
        json j;
        j["type"] = "composite";
        j["components"] = json::array();
        for (const auto& child : c->components) j["components"].push_back(atomic_to_json(child));
        return j;
    }
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Composite>) return json{};  // handled above
            else return atomic_to_json(AtomicInterference{s});
        },
        spec);
}

AtomicInterference atomic_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "white_only") return WhiteOnly{};
    if (type == "autoregressive") {
        AutoRegressive ar;
        ar.coefficients = j.value("coefficients", std::vector<double>{});
        ar.driving_std = j.value("driving_std", 1.0);
        return ar;
    }
    if (type == "harmonic_hum") {
        HarmonicHum hum;
        hum.fundamental_hz = j.value("fundamental_hz", 100.0);
        hum.amplitudes = j.value("amplitudes", std::vector<double>{});
        hum.phases = j.value("phases", std::vector<double>{});
        return hum;
    }
    if (type == "dc") return DcAmbient{j.value("level", 0.0)};
    throw ConfigError("unknown interference type: " + type);
}

InterferenceSpec interference_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "composite") {
        Composite c;
        for (const auto& child : j.at("components")) c.components.push_back(atomic_from_json(child));
        return c;
    }
    return std::visit([](auto s) -> InterferenceSpec { return s; }, atomic_from_json(j));
}

FilteringMode filtering_from_string(const std::string& s) {
    if (s == "on") return FilteringMode::on;
    if (s == "off") return FilteringMode::off;
    if (s == "both") return FilteringMode::both;
    throw ConfigError("filtering must be one of on|off|both, got " + s);
}

std::string filtering_to_string(FilteringMode mode) {
    switch (mode) {
        case FilteringMode::on: return "on";
        case FilteringMode::off: return "off";
        case FilteringMode::both: return "both";
    }
    throw ConfigError("unknown filtering mode");
}

RngSeed seed_from_json(const json& j) {
    if (j.is_number()) return RngSeed{j.get<std::uint64_t>(), 0};
    RngSeed s;
    s.seed = j.value("seed", std::uint64_t{0});
    s.stream_id = j.value("stream_id", std::uint64_t{0});
    return s;
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    throw ConfigError("unknown report format: " + name);
}

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
    if (format == ReportFormat::csv) {
        std::string out =
            "axis_name,axis_value,filtering,order_M,n_frames,n_errors,ser,ser_ci_low,"
            "ser_ci_high,prediction_gain_db,predictor_order,residual_variance,seed\n";
        for (const ExperimentRow& row : report.rows) {
            out += row.axis_name;
            out += ',';
            out += fmt(row.axis_value);
            out += ',';
            out += row.filtered ? "on" : "off";
            out += ',';
            out += std::to_string(row.order_M);
            out += ',';
            out += std::to_string(row.n_frames);
            out += ',';
            out += std::to_string(row.n_errors);
            out += ',';
            out += fmt(row.ser);
            out += ',';
            out += fmt(row.ser_ci_low);
            out += ',';
            out += fmt(row.ser_ci_high);
            out += ',';
            out += fmt(row.prediction_gain_db);
            out += ',';
            out += std::to_string(row.predictor_order);
            out += ',';
            out += fmt(row.residual_variance);
            out += ',';
            out += std::to_string(row.seed);
            out += '\n';
        }
        return out;
    }

    json j;
    j["tool_version"] = report.tool_version;
    j["axis"] = report.axis;
    j["config_hash"] = hex64(report.config_hash);
    j["base_seed"] = report.base_seed;
    j["rows"] = json::array();
    for (const ExperimentRow& row : report.rows) j["rows"].push_back(row_to_json(row));
    return j.dump(2) + "\n";
}

ExperimentReport parse_report_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad report JSON: ") + e.what());
    }
    ExperimentReport report;
    report.tool_version = j.at("tool_version").get<std::string>();
    report.axis = j.at("axis").get<std::string>();
    report.config_hash = parse_hex64(j.at("config_hash").get<std::string>());
    report.base_seed = j.at("base_seed").get<std::uint64_t>();
    for (const auto& row : j.at("rows")) report.rows.push_back(row_from_json(row));
    return report;
}

RunPlan parse_run_plan_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad scenario JSON: ") + e.what());
    }
    try {
        RunPlan plan;
        ScenarioConfig& cfg = plan.scenario;
        if (j.contains("ppm")) {
            const json& p = j["ppm"];
            cfg.ppm.order_M = p.value("order_M", cfg.ppm.order_M);
            cfg.ppm.frame_duration = p.value("frame_duration", cfg.ppm.frame_duration);
            cfg.ppm.sample_rate = p.value("sample_rate", cfg.ppm.sample_rate);
            cfg.ppm.amplitude = p.value("amplitude", cfg.ppm.amplitude);
        }
        if (j.contains("channel")) {
            const json& c = j["channel"];
            cfg.channel.gain = c.value("gain", cfg.channel.gain);
            cfg.channel.delay_samples = c.value("delay_samples", cfg.channel.delay_samples);
            cfg.channel.impulse_response =
                c.value("impulse_response", cfg.channel.impulse_response);
        }
        if (j.contains("interference")) cfg.interference = interference_from_json(j["interference"]);
        if (j.contains("noise")) cfg.noise.awgn_std = j["noise"].value("awgn_std", 0.0);
        cfg.acquisition_samples = j.value("acquisition_samples", cfg.acquisition_samples);
        cfg.predictor_order = j.value("predictor_order", cfg.predictor_order);
        cfg.n_frames = j.value("n_frames", cfg.n_frames);
        if (j.contains("filtering"))
            cfg.filtering = filtering_from_string(j["filtering"].get<std::string>());
        if (j.contains("seed")) cfg.seed = seed_from_json(j["seed"]);
        if (j.contains("sweep")) {
            const json& s = j["sweep"];
            SweepSettings sw;
            sw.axis = parse_axis(s.at("axis").get<std::string>());
            sw.values = s.at("values").get<std::vector<double>>();
            sw.repetitions = s.value("repetitions", 1);
            plan.sweep = sw;
        }
        return plan;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad scenario JSON: ") + e.what());
    }
}

std::string run_plan_to_json(const RunPlan& plan) {
    const ScenarioConfig& cfg = plan.scenario;
    json j;
    j["ppm"] = {{"order_M", cfg.ppm.order_M},
                {"frame_duration", cfg.ppm.frame_duration},
                {"sample_rate", cfg.ppm.sample_rate},
                {"amplitude", cfg.ppm.amplitude}};
    j["channel"] = {{"gain", cfg.channel.gain},
                    {"delay_samples", cfg.channel.delay_samples},
                    {"impulse_response", cfg.channel.impulse_response}};
    j["interference"] = interference_to_json(cfg.interference);
    j["noise"] = {{"awgn_std", cfg.noise.awgn_std}};
    j["acquisition_samples"] = cfg.acquisition_samples;
    j["predictor_order"] = cfg.predictor_order;
    j["n_frames"] = cfg.n_frames;
    j["filtering"] = filtering_to_string(cfg.filtering);
    j["seed"] = {{"seed", cfg.seed.seed}, {"stream_id", cfg.seed.stream_id}};
    if (plan.sweep) {
        j["sweep"] = {{"axis", axis_name(plan.sweep->axis)},
                      {"values", plan.sweep->values},
                      {"repetitions", plan.sweep->repetitions}};
    }
    return j.dump(2) + "\n";
}

}  // namespace vlc
