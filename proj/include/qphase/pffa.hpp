#pragma once

#include <numbers>
#include <vector>

#include "qphase/rotation.hpp"
#include "qphase/states.hpp"

namespace qphase {

/// Search settings for the phase fit. The coarse grid includes both ends.
struct EstimationConfig {
    double lo = 0.0;
    double hi = std::numbers::pi / 4.0;
    int coarse_grid = 4097;
    double refine_tol = 1e-13;

    void validate() const;
};

struct EstimationResult {
    double estimate = 0.0;
    /// Least-squares objective at the estimate.
    double residual = 0.0;
    int evaluations = 0;
};

/// The objective was NaN or infinite at `x`.
class EstimationFailure : public Error {
public:
    EstimationFailure(const std::string& what, double x) : Error(what), x_(x) {}
    double x() const { return x_; }

private:
    double x_;
};

struct ObjectiveSample {
    double x;
    double objective;
};

/**
 * Least-squares fit of measured interferometer statistics to the
 * statistics f_m(x) the input state would produce at a trial phase x.
 *
 * Holds the diagonalized rotation blocks for one state, so a single
 * estimator may serve many measurements, concurrently.
 */
class PhaseEstimator {
public:
    explicit PhaseEstimator(const StateSpec& spec);

    const StateSpec& spec() const { return spec_; }
    const Interferometer& interferometer() const { return interferometer_; }

    /// f_m(x).
    MeasurementDistribution templates(double x) const;

    /// sum_m (P_m - f_m(x))^2 over the union of measured and template m;
    /// missing entries count as 0. Noisy inputs (negative, not summing to
    /// one) are fine.
    double objective(const MeasurementDistribution& measured, double x) const;

    /// Coarse scan, then golden-section refinement around the best node.
    /// Equal coarse minima resolve toward smaller x.
    EstimationResult estimate(const MeasurementDistribution& measured,
                              const EstimationConfig& config) const;

    /// Objective on `samples` evenly spaced points of [0, 2 pi), for
    /// inspecting where the fit is ambiguous.
    std::vector<ObjectiveSample> ambiguity_scan(const MeasurementDistribution& measured,
                                                int samples) const;

private:
    struct Aligned {
        std::vector<double> values;  // measured P_m on the template support
        double outside = 0.0;        // sum of squares of P_m off the support
    };

    Aligned align(const MeasurementDistribution& measured) const;
    double objective(const Aligned& aligned, double x, std::vector<double>& scratch) const;

    StateSpec spec_;
    Interferometer interferometer_;
};

MeasurementDistribution template_probs(const StateSpec& spec, double x);

double lms_objective(const MeasurementDistribution& measured, const StateSpec& spec, double x);

EstimationResult estimate_phase(const MeasurementDistribution& measured, const StateSpec& spec,
                                const EstimationConfig& config);

}  // namespace qphase
