#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qphase/pffa.hpp"
#include "qphase/rotation.hpp"
#include "qphase/states.hpp"

namespace qphase {

/// Settings for one AWGN robustness experiment at a single noise power.
struct NoiseConfig {
    double sigma2 = 0.0;
    /// Trials averaged for the signed mean error.
    int trials_mean = 40000;
    /// Trials averaged, independently, for the mean absolute error.
    int trials_abs = 2000;
    /// Centre of the default estimation domain [0, pi/4].
    double phi_true = 0.39269908169872414;
    std::uint64_t seed = 1;
    /// Clip perturbed probabilities to [0, 1]. Off: noise is purely additive.
    bool clamp = false;
    /// Worker threads; results do not depend on this.
    int threads = 1;

    void validate() const;
};

struct SweepRow {
    double sigma2 = 0.0;
    double mean_error = 0.0;
    double mean_abs_error = 0.0;
    /// Sample standard deviation of the signed error over `trials`.
    double std_error = 0.0;
    int trials = 0;
    /// Sample standard deviation of |error| over the absolute-error trials.
    double abs_std_error = 0.0;
    int abs_trials = 0;
};

/// Sub-experiments draw from disjoint stream families.
enum class NoiseExperiment : std::uint64_t { Mean = 1, Absolute = 2, Single = 3 };

/**
 * Gaussian stream keyed by (seed, experiment, index).
 *
 * The key is hashed with splitmix64 into the seed of a private
 * mt19937_64, so any trial's noise can be regenerated without replaying the
 * trials before it.
 */
class NoiseStream {
public:
    NoiseStream(std::uint64_t seed, NoiseExperiment experiment, std::uint64_t index);

    /// One N(0, 1) draw.
    double standard_normal();

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Adds i.i.d. N(0, sigma2) to each P_m, in ascending m order.
MeasurementDistribution perturb(const MeasurementDistribution& measured, double sigma2,
                                NoiseStream& stream, bool clamp = false);

/// A trial's estimation failed.
class TrialFailure : public Error {
public:
    TrialFailure(const std::string& what, std::size_t trial) : Error(what), trial_(trial) {}
    std::size_t trial() const { return trial_; }

private:
    std::size_t trial_;
};

/// Runs the signed-error and absolute-error sub-experiments at one noise
/// power. Trial t of each uses its own NoiseStream(seed, experiment, t), and
/// sums are taken in trial order, so the row is a pure function of the
/// inputs.
SweepRow run_trials(const StateSpec& spec, const NoiseConfig& config,
                    const EstimationConfig& estimation);

/// As above, reusing a prepared estimator.
SweepRow run_trials(const PhaseEstimator& estimator, const NoiseConfig& config,
                    const EstimationConfig& estimation);

/// One row per entry of `sigma2_list`, in input order. Every row uses the
/// same noise streams, scaled by its own sigma.
std::vector<SweepRow> sweep(const StateSpec& spec, std::span<const double> sigma2_list,
                            const NoiseConfig& base, const EstimationConfig& estimation);

}  // namespace qphase
