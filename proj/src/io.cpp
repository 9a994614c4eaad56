#include "qphase/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace qphase {

using nlohmann::json;

void to_json(json& out, const StateSpec& spec)
{
    out = json::object();
    out["kind"] = std::string(to_string(spec.kind));
    out["j_max"] = spec.j_max;
    switch (spec.kind) {
    case StateKind::Noon:
        break;
    case StateKind::SubState:
        out["r1"] = spec.r1;
        break;
    case StateKind::NoonVac:
        out["n"] = spec.n;
        break;
    case StateKind::GeneralEq1:
        out["r1"] = spec.r1;
        out["r2"] = spec.r2;
        break;
    }
}

void from_json(const json& in, StateSpec& spec)
{
    const StateKind kind = parse_state_kind(in.at("kind").get<std::string>());
    const int j_max = in.at("j_max").get<int>();
    switch (kind) {
    case StateKind::Noon:
        spec = StateSpec::noon(j_max);
        break;
    case StateKind::SubState:
        spec = StateSpec::substate(j_max, in.at("r1").get<double>());
        break;
    case StateKind::NoonVac:
        spec = StateSpec::noon_vac(j_max, in.at("n").get<double>());
        break;
    case StateKind::GeneralEq1:
        spec = StateSpec::general(j_max, in.at("r1").get<double>(), in.at("r2").get<double>());
        break;
    }
}

void to_json(json& out, const MeasurementDistribution& dist)
{
    json probs = json::object();
    for (const auto& [twice_m, p] : dist.probs) probs[std::to_string(twice_m)] = p;
    out = json{{"phi", dist.phi}, {"probs", std::move(probs)}};
}

void from_json(const json& in, MeasurementDistribution& dist)
{
    dist.phi = in.at("phi").get<double>();
    dist.probs.clear();
    for (const auto& [key, value] : in.at("probs").items()) {
        dist.probs.emplace(std::stoi(key), value.get<double>());
    }
}

void to_json(json& out, const EstimationResult& result)
{
    out = json{{"estimate", result.estimate},
               {"residual", result.residual},
               {"evaluations", result.evaluations}};
}

void from_json(const json& in, EstimationResult& result)
{
    result.estimate = in.at("estimate").get<double>();
    result.residual = in.at("residual").get<double>();
    result.evaluations = in.at("evaluations").get<int>();
}

void to_json(json& out, const SweepRow& row)
{
    out = json{{"sigma2", row.sigma2},
               {"mean_error", row.mean_error},
               {"mean_abs_error", row.mean_abs_error},
               {"std_error", row.std_error},
               {"trials", row.trials},
               {"abs_std_error", row.abs_std_error},
               {"abs_trials", row.abs_trials}};
}

namespace {

json optional_number(const std::optional<double>& value)
{
    return value ? json(*value) : json("undefined");
}

json twin_json(const MetricTwin& twin, double coefficient_scale)
{
    json out = json::object();
    out["numerical"] = optional_number(twin.numerical);
    if (twin.numerical && coefficient_scale != 1.0) {
        out["numerical_coefficient"] = *twin.numerical * coefficient_scale;
    }
    if (twin.closed_form_available) {
        out["closed_form"] = optional_number(twin.closed_form);
        if (twin.closed_form && coefficient_scale != 1.0) {
            out["closed_form_coefficient"] = *twin.closed_form * coefficient_scale;
        }
        out["agree"] = twin.agrees();
    } else {
        out["closed_form"] = nullptr;
    }
    return out;
}

}  // namespace

void to_json(json& out, const MetricReport& report)
{
    const double N = report.photon_cost;
    out = json::object();
    out["spec"] = report.spec;
    out["photon_cost"] = N;
    out["bin_count"] = report.bin_count;
    out["bin_width"] = report.bin_width;
    out["hwhm"] = twin_json(report.hwhm, N);
    out["bin_variance"] = twin_json(report.bin_variance, N * N);
    out["visibility"] = twin_json(report.visibility, 1.0);
    if (report.p_drop) out["p_drop"] = twin_json(*report.p_drop, 1.0);
    out["notes"] = report.notes;
}

namespace io {

std::string format_double(double value)
{
    char buffer[64];
    const auto result =
        std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
    return std::string(buffer, result.ptr);
}

std::string pdf_csv(const PhaseDistribution& dist, int samples)
{
    if (samples < 2) throw InvalidSpecError("pdf needs at least 2 samples");
    std::string out = "phi,pdf\n";
    for (int k = 0; k < samples; ++k) {
        const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * k / samples;
        out += format_double(phi);
        out += ',';
        out += format_double(dist(phi));
        out += '\n';
    }
    return out;
}

std::string sweep_csv(std::span<const SweepRow> rows)
{
    std::string out = "sigma2,mean_error,mean_abs_error,std_error,trials\n";
    for (const auto& row : rows) {
        out += format_double(row.sigma2) + ',' + format_double(row.mean_error) + ',' +
               format_double(row.mean_abs_error) + ',' + format_double(row.std_error) + ',' +
               std::to_string(row.trials) + '\n';
    }
    return out;
}

std::string objective_csv(std::span<const ObjectiveSample> samples)
{
    std::string out = "x,objective\n";
    for (const auto& s : samples) {
        out += format_double(s.x) + ',' + format_double(s.objective) + '\n';
    }
    return out;
}

std::string fnv1a64_hex(std::string_view bytes)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

void to_json(json& out, const RunManifest& manifest)
{
    out = json{{"command", manifest.command},
               {"params", manifest.params},
               {"seed", manifest.seed},
               {"tool_version", manifest.tool_version},
               {"output_checksum", manifest.output_checksum}};
}

void from_json(const json& in, RunManifest& manifest)
{
    manifest.command = in.at("command").get<std::string>();
    manifest.params = in.at("params");
    manifest.seed = in.at("seed").get<std::uint64_t>();
    manifest.tool_version = in.at("tool_version").get<std::string>();
    manifest.output_checksum = in.at("output_checksum").get<std::string>();
}

}  // namespace io
}  // namespace qphase
