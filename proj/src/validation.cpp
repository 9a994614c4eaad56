#include "qphase/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qphase/pffa.hpp"
#include "qphase/phase_rep.hpp"
#include "qphase/rotation.hpp"
#include "qphase/states.hpp"

namespace qphase {

namespace {

constexpr double pi = std::numbers::pi;

double rel_dev(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<StateSpec> sample_specs()
{
    return {StateSpec::noon(1),         StateSpec::noon(2),          StateSpec::noon(8),
            StateSpec::substate(4, 0.0), StateSpec::substate(8, 1.0), StateSpec::substate(8, 4.0),
            StateSpec::noon_vac(3, 1.0), StateSpec::noon_vac(8, 3.0), StateSpec::noon_vac(8, 67.9411),
            StateSpec::general(5, 0.3, 2.0)};
}

}  // namespace

std::vector<CheckResult> run_validation(double tolerance_scale)
{
    std::vector<CheckResult> out;
    auto record = [&out, tolerance_scale](std::string name, double observed, double tolerance) {
        const double tol = tolerance * tolerance_scale;
        out.push_back({std::move(name), observed, tol, observed <= tol});
    };

    {
        double worst = 0.0;
        for (const auto& spec : sample_specs()) {
            double norm = 0.0;
            const auto state = build_state(spec);
            for (const auto& e : state.entries()) norm += std::norm(e.amp);
            worst = std::max(worst, std::abs(norm - 1.0));
        }
        record("state normalization", worst, 1e-12);
    }

    {
        double unitarity = 0.0;
        double composition = 0.0;
        for (int tj = 1; tj <= 16; ++tj) {
            const HalfInt j = HalfInt::from_twice(tj);
            for (int k = 0; k < 32; ++k) {
                const double phi = 2.0 * pi * k / 32.0;
                const Eigen::MatrixXcd u = rotation_block(j, phi).matrix;
                const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
                unitarity = std::max(unitarity, (u * u.adjoint() - id).cwiseAbs().maxCoeff());
                const double phi2 = 0.37 + 0.11 * k;
                const Eigen::MatrixXcd lhs = u * rotation_block(j, phi2).matrix;
                const Eigen::MatrixXcd rhs = rotation_block(j, phi + phi2).matrix;
                composition = std::max(composition, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        }
        record("rotation unitarity", unitarity, 1e-12);
        record("rotation composition", composition, 1e-11);
    }

    {
        double worst = 0.0;
        for (const auto& spec : sample_specs()) {
            const Interferometer interferometer(build_state(spec));
            for (int k = 0; k < 16; ++k) {
                const double phi = -3.0 + 0.41 * k;
                worst = std::max(worst, std::abs(interferometer.distribution(phi).total() - 1.0));
            }
        }
        record("probability conservation", worst, 1e-12);
    }

    {
        double worst = 0.0;
        for (int N : {2, 4, 8, 16}) {
            const auto report = compute_metrics(StateSpec::noon(N / 2));
            worst = std::max(worst, rel_dev(*report.hwhm.numerical, *report.hwhm.closed_form));
            worst = std::max(worst, rel_dev(*report.bin_variance.numerical,
                                            *report.bin_variance.closed_form));
        }
        record("N00N closed-form agreement (relative)", worst, 1e-8);
    }

    {
        double worst = 0.0;
        for (double n : {3.0, 8.0, 20.0, 67.0}) {
            const int j_max = static_cast<int>(4 * (n + 1));
            const auto report = compute_metrics(StateSpec::noon_vac(j_max, n));
            worst = std::max(worst, rel_dev(*report.hwhm.numerical, *report.hwhm.closed_form));
            worst = std::max(worst, rel_dev(*report.bin_variance.numerical,
                                            *report.bin_variance.closed_form));
            worst = std::max(worst, rel_dev(*report.visibility.numerical,
                                            *report.visibility.closed_form));
        }
        record("N00N-vac closed-form agreement (relative)", worst, 1e-8);
    }

    {
        double worst = 0.0;
        for (double r1 : {0.0, 0.25, 1.0, 4.0}) {
            const auto report = compute_metrics(StateSpec::substate(8, r1));
            const double N = report.photon_cost;
            worst = std::max(worst, rel_dev(*report.hwhm.numerical * N,
                                            closed_form::substate_hwhm_coefficient(r1)));
            worst = std::max(worst, std::abs(*report.p_drop->numerical - *report.p_drop->closed_form));
        }
        record("sub-state HWHM and P(drop) agreement", worst, 1e-8);
    }

    {
        const auto at0 = compute_metrics(StateSpec::substate(8, 0.0));
        const auto at1 = compute_metrics(StateSpec::substate(8, 1.0));
        const double N2 = 64.0;
        const double dev = std::max(std::abs(*at0.bin_variance.numerical * N2 - 0.711441),
                                    std::abs(*at1.bin_variance.numerical * N2 - 0.869983));
        record("sub-state kept-bin variance endpoints", dev, 1e-5);
    }

    {
        const PhaseEstimator estimator(StateSpec::noon(2));
        EstimationConfig config;
        double worst = 0.0;
        for (int k = 1; k <= 21; ++k) {
            const double phi = (pi / 4.0) * k / 22.0;
            const auto measured = estimator.templates(phi);
            worst = std::max(worst, std::abs(estimator.estimate(measured, config).estimate - phi));
        }
        record("noiseless estimator consistency", worst, 1e-9);
    }

    return out;
}

}  // namespace qphase
