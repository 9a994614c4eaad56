#include <doctest.h>

#include <cmath>
#include <vector>

#include "qphase/noise.hpp"

using namespace qphase;

namespace {

// Cheap estimator settings: the tests here are about the noise plumbing.
EstimationConfig quick_config() { return {0.0, 0.7853981633974483, 257, 1e-12}; }

NoiseConfig small_run(double sigma2)
{
    NoiseConfig c;
    c.sigma2 = sigma2;
    c.trials_mean = 200;
    c.trials_abs = 100;
    c.seed = 17;
    return c;
}

}  // namespace

TEST_SUITE("noise") {

TEST_CASE("zero noise power leaves the distribution unchanged")
{
    const auto clean = interferometer_probs(build_state(StateSpec::noon(2)), 0.1);
    NoiseStream stream(1, NoiseExperiment::Single, 0);
    const auto out = perturb(clean, 0.0, stream);
    CHECK(out.probs == clean.probs);
    CHECK(out.phi == clean.phi);
}

TEST_CASE("seeded perturbation is reproducible")
{
    const auto clean = interferometer_probs(build_state(StateSpec::noon(2)), 0.1);
    NoiseStream stream(42, NoiseExperiment::Single, 0);
    const auto out = perturb(clean, 1e-4, stream);
    CHECK(out.probs.at(-4) == doctest::Approx(0.49035117507821041).epsilon(1e-13));
    CHECK(out.probs.at(-2) == doctest::Approx(-0.0059133570196866336).epsilon(1e-12));
    CHECK(out.probs.at(0) == doctest::Approx(0.016992434938582626).epsilon(1e-12));
    CHECK(out.probs.at(2) == doctest::Approx(-0.0017391305833719655).epsilon(1e-12));
    CHECK(out.probs.at(4) == doctest::Approx(0.50072698479361566).epsilon(1e-13));

    NoiseStream again(42, NoiseExperiment::Single, 0);
    CHECK(perturb(clean, 1e-4, again).probs == out.probs);
}

TEST_CASE("clamping keeps perturbed values in [0, 1]")
{
    const auto clean = interferometer_probs(build_state(StateSpec::noon(2)), 0.1);
    NoiseStream stream(42, NoiseExperiment::Single, 0);
    const auto out = perturb(clean, 1e-2, stream, true);
    for (const auto& [tm, p] : out.probs) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
    CHECK_THROWS_AS(perturb(clean, -1.0, stream), InvalidSpecError);
}

TEST_CASE("streams are keyed by seed, experiment and index")
{
    NoiseStream a(5, NoiseExperiment::Mean, 3);
    NoiseStream b(5, NoiseExperiment::Mean, 3);
    NoiseStream c(5, NoiseExperiment::Absolute, 3);
    NoiseStream d(5, NoiseExperiment::Mean, 4);
    NoiseStream e(6, NoiseExperiment::Mean, 3);
    const double x = a.standard_normal();
    CHECK(x == b.standard_normal());
    CHECK(x != c.standard_normal());
    CHECK(x != d.standard_normal());
    CHECK(x != e.standard_normal());
}

TEST_CASE("property: draws have zero mean and unit variance")
{
    NoiseStream stream(123, NoiseExperiment::Single, 0);
    constexpr int draws = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double z = stream.standard_normal();
        sum += z;
        sum2 += z * z;
    }
    const double mean = sum / draws;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(double(draws)));
    CHECK(std::abs(sum2 / draws - 1.0) < 4.0 * std::sqrt(2.0 / draws));
}

TEST_CASE("noiseless trials recover the phase")
{
    const auto row = run_trials(StateSpec::noon(2), small_run(0.0), quick_config());
    CHECK(row.mean_abs_error < 1e-9);
    CHECK(std::abs(row.mean_error) < 1e-9);
    CHECK(row.trials == 200);
    CHECK(row.abs_trials == 100);
}

TEST_CASE("property: the estimator is unbiased at low noise")
{
    auto config = small_run(1e-6);
    config.trials_mean = 2000;
    const auto row = run_trials(StateSpec::noon(2), config, quick_config());
    CHECK(std::abs(row.mean_error) < 4.0 * row.std_error / std::sqrt(double(row.trials)));
    CHECK(row.mean_abs_error > 0.0);
    CHECK(row.mean_abs_error < 1e-2);
}

TEST_CASE("property: results do not depend on the thread count")
{
    auto config = small_run(1e-5);
    const PhaseEstimator estimator(StateSpec::noon_vac(3, 2.0));
    const auto one = run_trials(estimator, config, quick_config());
    for (int threads : {2, 3, 8}) {
        config.threads = threads;
        const auto many = run_trials(estimator, config, quick_config());
        CHECK(many.mean_error == one.mean_error);
        CHECK(many.mean_abs_error == one.mean_abs_error);
        CHECK(many.std_error == one.std_error);
        CHECK(many.abs_std_error == one.abs_std_error);
    }
}

TEST_CASE("sweep rows match single runs and keep input order")
{
    const auto spec = StateSpec::noon(2);
    const std::vector<double> powers{1e-4, 1e-8, 1e-6};
    const auto base = small_run(0.0);
    const auto rows = sweep(spec, powers, base, quick_config());
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].sigma2 == powers[i]);
        auto config = base;
        config.sigma2 = powers[i];
        const auto single = run_trials(spec, config, quick_config());
        CHECK(single.mean_error == rows[i].mean_error);
        CHECK(single.mean_abs_error == rows[i].mean_abs_error);
    }
    // Common noise draws: the error grows with the noise power.
    CHECK(rows[1].mean_abs_error < rows[2].mean_abs_error);
    CHECK(rows[2].mean_abs_error < rows[0].mean_abs_error);
    CHECK_THROWS_AS(sweep(spec, std::vector<double>{}, base, quick_config()), InvalidSpecError);
}

TEST_CASE("different seeds give different but comparable rows")
{
    std::vector<double> means;
    for (std::uint64_t seed : {1, 2, 3, 4}) {
        auto config = small_run(1e-5);
        config.seed = seed;
        means.push_back(run_trials(StateSpec::noon(2), config, quick_config()).mean_abs_error);
    }
    for (std::size_t i = 1; i < means.size(); ++i) {
        CHECK(means[i] != means[0]);
        CHECK(means[i] / means[0] > 0.5);
        CHECK(means[i] / means[0] < 2.0);
    }
}

TEST_CASE("a failing trial is reported by its lowest index")
{
    auto config = small_run(1e308);
    config.trials_mean = 64;
    std::size_t first = 0;
    try {
        run_trials(StateSpec::noon(2), config, quick_config());
        FAIL("expected TrialFailure");
    } catch (const TrialFailure& e) {
        first = e.trial();
    }
    config.threads = 4;
    try {
        run_trials(StateSpec::noon(2), config, quick_config());
        FAIL("expected TrialFailure");
    } catch (const TrialFailure& e) {
        CHECK(e.trial() == first);
    }
}

TEST_CASE("config validation")
{
    NoiseConfig c;
    CHECK_NOTHROW(c.validate());
    c.sigma2 = -1e-9;
    CHECK_THROWS_AS(c.validate(), InvalidSpecError);
    c = NoiseConfig{};
    c.trials_mean = 0;
    CHECK_THROWS_AS(c.validate(), InvalidSpecError);
    c = NoiseConfig{};
    c.threads = 0;
    CHECK_THROWS_AS(c.validate(), InvalidSpecError);
}

}  // TEST_SUITE
