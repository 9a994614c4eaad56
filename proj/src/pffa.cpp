#include "qphase/pffa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qphase/numerics.hpp"

namespace qphase {

void EstimationConfig::validate() const
{
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidSpecError("estimation domain must satisfy lo < hi");
    }
    if (coarse_grid < 64) throw InvalidSpecError("coarse grid needs at least 64 points");
    if (!(refine_tol >= 1e-14)) throw InvalidSpecError("refine tolerance must be >= 1e-14");
}

PhaseEstimator::PhaseEstimator(const StateSpec& spec)
    : spec_(spec), interferometer_(build_state(spec))
{
}

MeasurementDistribution PhaseEstimator::templates(double x) const
{
    return interferometer_.distribution(x);
}

PhaseEstimator::Aligned PhaseEstimator::align(const MeasurementDistribution& measured) const
{
    const auto& support = interferometer_.support();
    Aligned aligned{std::vector<double>(support.size(), 0.0), 0.0};
    for (const auto& [twice_m, p] : measured.probs) {
        const auto it = std::lower_bound(support.begin(), support.end(), twice_m);
        if (it != support.end() && *it == twice_m) {
            aligned.values[static_cast<std::size_t>(it - support.begin())] = p;
        } else {
            aligned.outside += p * p;
        }
    }
    return aligned;
}

double PhaseEstimator::objective(const Aligned& aligned, double x,
                                 std::vector<double>& scratch) const
{
    scratch.resize(aligned.values.size());
    interferometer_.probabilities(x, scratch);
    double sum = aligned.outside;
    for (std::size_t i = 0; i < scratch.size(); ++i) {
        const double diff = aligned.values[i] - scratch[i];
        sum += diff * diff;
    }
    return sum;
}

double PhaseEstimator::objective(const MeasurementDistribution& measured, double x) const
{
    std::vector<double> scratch;
    return objective(align(measured), x, scratch);
}

EstimationResult PhaseEstimator::estimate(const MeasurementDistribution& measured,
                                          const EstimationConfig& config) const
{
    config.validate();
    const Aligned aligned = align(measured);
    std::vector<double> scratch;
    auto f = [&](double x) { return objective(aligned, x, scratch); };

    const int n = config.coarse_grid;
    const double step = (config.hi - config.lo) / (n - 1);
    auto node = [&](int i) { return i + 1 == n ? config.hi : config.lo + i * step; };

    int best_i = -1;
    double best_v = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = node(i);
        const double v = f(x);
        if (!std::isfinite(v)) {
            throw EstimationFailure("objective is not finite at x = " + std::to_string(x), x);
        }
        if (best_i < 0 || v < best_v) {
            best_i = i;
            best_v = v;
        }
    }

    int evaluations = n;
    const double a = node(std::max(best_i - 1, 0));
    const double b = node(std::min(best_i + 1, n - 1));
    numerics::Extremum refined = numerics::golden_section_minimize(f, a, b, config.refine_tol,
                                                                   &evaluations);
    if (!std::isfinite(refined.value)) {
        throw EstimationFailure("objective is not finite at x = " + std::to_string(refined.x),
                                refined.x);
    }
    const double coarse_x = node(best_i);
    if (best_v < refined.value || (best_v == refined.value && coarse_x < refined.x)) {
        refined = {coarse_x, best_v};
    }
    return {refined.x, refined.value, evaluations};
}

std::vector<ObjectiveSample> PhaseEstimator::ambiguity_scan(const MeasurementDistribution& measured,
                                                            int samples) const
{
    if (samples < 1) throw InvalidSpecError("ambiguity scan needs at least one sample");
    const Aligned aligned = align(measured);
    std::vector<double> scratch;
    std::vector<ObjectiveSample> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double x = 2.0 * std::numbers::pi * i / samples;
        out.push_back({x, objective(aligned, x, scratch)});
    }
    return out;
}

MeasurementDistribution template_probs(const StateSpec& spec, double x)
{
    return interferometer_probs(build_state(spec), x);
}

double lms_objective(const MeasurementDistribution& measured, const StateSpec& spec, double x)
{
    return PhaseEstimator(spec).objective(measured, x);
}

EstimationResult estimate_phase(const MeasurementDistribution& measured, const StateSpec& spec,
                                const EstimationConfig& config)
{
    return PhaseEstimator(spec).estimate(measured, config);
}

}  // namespace qphase
