#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qphase/noise.hpp"
#include "qphase/pffa.hpp"
#include "qphase/phase_rep.hpp"
#include "qphase/rotation.hpp"
#include "qphase/states.hpp"

namespace qphase {

// JSON forms. StateSpec omits fields its kind does not use; measurement
// keys are 2m as decimal strings.
void to_json(nlohmann::json& out, const StateSpec& spec);
void from_json(const nlohmann::json& in, StateSpec& spec);
void to_json(nlohmann::json& out, const MeasurementDistribution& dist);
void from_json(const nlohmann::json& in, MeasurementDistribution& dist);
void to_json(nlohmann::json& out, const EstimationResult& result);
void from_json(const nlohmann::json& in, EstimationResult& result);
void to_json(nlohmann::json& out, const SweepRow& row);
void to_json(nlohmann::json& out, const MetricReport& report);

namespace io {

inline constexpr std::string_view tool_version = "1.0.0";

/// Locale-independent rendering with 17 significant digits.
std::string format_double(double value);

/// `samples` rows phi,pdf with phi = -pi + 2 pi k / samples.
std::string pdf_csv(const PhaseDistribution& dist, int samples);

/// Header sigma2,mean_error,mean_abs_error,std_error,trials.
std::string sweep_csv(std::span<const SweepRow> rows);

std::string objective_csv(std::span<const ObjectiveSample> samples);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

/// Record of one CLI run: enough to re-run it and check the output.
struct RunManifest {
    std::string command;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::string tool_version;
    std::string output_checksum;

    friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

void to_json(nlohmann::json& out, const RunManifest& manifest);
void from_json(const nlohmann::json& in, RunManifest& manifest);

}  // namespace io
}  // namespace qphase
