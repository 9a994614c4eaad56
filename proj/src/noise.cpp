#include "qphase/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

namespace qphase {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct TrialErrors {
    std::vector<double> errors;
    std::size_t first_failure = std::numeric_limits<std::size_t>::max();
    std::string failure_message;
};

// Trial t writes only errors[t]; failures keep the lowest index so the
// reported trial does not depend on scheduling.
TrialErrors run_experiment(const PhaseEstimator& estimator, const MeasurementDistribution& clean,
                           const NoiseConfig& config, const EstimationConfig& estimation,
                           NoiseExperiment experiment, int trials)
{
    TrialErrors out;
    out.errors.assign(static_cast<std::size_t>(trials), 0.0);
    std::mutex failure_mutex;

    auto work = [&](int worker, int stride) {
        for (int t = worker; t < trials; t += stride) {
            try {
                NoiseStream stream(config.seed, experiment, static_cast<std::uint64_t>(t));
                const auto noisy = perturb(clean, config.sigma2, stream, config.clamp);
                const auto result = estimator.estimate(noisy, estimation);
                out.errors[static_cast<std::size_t>(t)] = result.estimate - config.phi_true;
            } catch (const std::exception& e) {
                std::lock_guard lock(failure_mutex);
                if (static_cast<std::size_t>(t) < out.first_failure) {
                    out.first_failure = static_cast<std::size_t>(t);
                    out.failure_message = e.what();
                }
                return;
            }
        }
    };

    const int workers = std::clamp(config.threads, 1, std::max(trials, 1));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    }
    if (out.first_failure != std::numeric_limits<std::size_t>::max()) {
        throw TrialFailure("trial " + std::to_string(out.first_failure) +
                               " failed: " + out.failure_message,
                           out.first_failure);
    }
    return out;
}

struct Moments {
    double mean = 0.0;
    double stddev = 0.0;
};

// Two-pass mean and sample standard deviation, summed in index order.
template <typename Transform>
Moments moments(const std::vector<double>& values, Transform transform)
{
    Moments m;
    if (values.empty()) return m;
    double sum = 0.0;
    for (double v : values) sum += transform(v);
    m.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            const double d = transform(v) - m.mean;
            ss += d * d;
        }
        m.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return m;
}

}  // namespace

void NoiseConfig::validate() const
{
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
        throw InvalidSpecError("noise power sigma2 must be finite and >= 0");
    }
    if (trials_mean < 1 || trials_abs < 1) throw InvalidSpecError("trial counts must be >= 1");
    if (threads < 1) throw InvalidSpecError("thread count must be >= 1");
}

NoiseStream::NoiseStream(std::uint64_t seed, NoiseExperiment experiment, std::uint64_t index)
{
    std::uint64_t key = splitmix64(seed);
    key = splitmix64(key ^ static_cast<std::uint64_t>(experiment));
    key = splitmix64(key ^ index);
    engine_.seed(key);
}

double NoiseStream::standard_normal() { return normal_(engine_); }

MeasurementDistribution perturb(const MeasurementDistribution& measured, double sigma2,
                                NoiseStream& stream, bool clamp)
{
    if (!(sigma2 >= 0.0)) throw InvalidSpecError("noise power sigma2 must be >= 0");
    const double sigma = std::sqrt(sigma2);
    MeasurementDistribution out = measured;
    for (auto& [twice_m, p] : out.probs) {
        p += sigma * stream.standard_normal();
        if (clamp) p = std::clamp(p, 0.0, 1.0);
    }
    return out;
}

SweepRow run_trials(const PhaseEstimator& estimator, const NoiseConfig& config,
                    const EstimationConfig& estimation)
{
    config.validate();
    estimation.validate();
    const MeasurementDistribution clean = estimator.interferometer().distribution(config.phi_true);

    const TrialErrors signed_run = run_experiment(estimator, clean, config, estimation,
                                                  NoiseExperiment::Mean, config.trials_mean);
    const TrialErrors abs_run = run_experiment(estimator, clean, config, estimation,
                                               NoiseExperiment::Absolute, config.trials_abs);

    const Moments signed_m = moments(signed_run.errors, [](double e) { return e; });
    const Moments abs_m = moments(abs_run.errors, [](double e) { return std::abs(e); });

    SweepRow row;
    row.sigma2 = config.sigma2;
    row.mean_error = signed_m.mean;
    row.std_error = signed_m.stddev;
    row.trials = config.trials_mean;
    row.mean_abs_error = abs_m.mean;
    row.abs_std_error = abs_m.stddev;
    row.abs_trials = config.trials_abs;
    return row;
}

SweepRow run_trials(const StateSpec& spec, const NoiseConfig& config,
                    const EstimationConfig& estimation)
{
    return run_trials(PhaseEstimator(spec), config, estimation);
}

std::vector<SweepRow> sweep(const StateSpec& spec, std::span<const double> sigma2_list,
                            const NoiseConfig& base, const EstimationConfig& estimation)
{
    if (sigma2_list.empty()) throw InvalidSpecError("sweep needs at least one noise power");
    const PhaseEstimator estimator(spec);
    std::vector<SweepRow> rows;
    rows.reserve(sigma2_list.size());
    for (double sigma2 : sigma2_list) {
        NoiseConfig config = base;
        config.sigma2 = sigma2;
        rows.push_back(run_trials(estimator, config, estimation));
    }
    return rows;
}

}  // namespace qphase
