#include "qphase/phase_rep.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "qphase/numerics.hpp"

namespace qphase {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;

// Points per period (or per bin) for locating extrema and crossings before
// refinement.
constexpr int scan_points = 4096;
constexpr double x_tol = 1e-12;
constexpr double quad_tol = 1e-12;

const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * pi);

void require_unique_j(const QuantumState& state)
{
    std::map<int, int> j_of_m;
    for (const auto& e : state.entries()) {
        auto [it, inserted] = j_of_m.emplace(e.m.twice(), e.j.twice());
        if (!inserted && it->second != e.j.twice()) {
            throw UnsupportedStateError(
                "m = " + std::to_string(e.m.value()) +
                " occurs with more than one j; only unique-j states have a Fourier phase "
                "representation");
        }
    }
}

bool is_substate(const QuantumState& state)
{
    return state.origin() && state.origin()->kind == StateKind::SubState;
}

}  // namespace

std::complex<double> phase_wavefunction(const QuantumState& state, double phi)
{
    require_unique_j(state);
    std::complex<double> sum = 0.0;
    for (const auto& e : state.entries()) sum += e.amp * std::polar(1.0, e.m.value() * phi);
    return inv_sqrt_2pi * sum;
}

double phase_pdf(const QuantumState& state, double phi)
{
    return std::norm(phase_wavefunction(state, phi));
}

PhaseDistribution::PhaseDistribution(QuantumState state) : state_(std::move(state))
{
    require_unique_j(state_);
    const HalfInt gap = require_m_gap(state_);
    period_ = 2.0 * pi / gap.value();
    for (const auto& e : state_.entries()) terms_.push_back({e.m.value(), e.amp});
}

std::complex<double> PhaseDistribution::wavefunction(double phi) const
{
    std::complex<double> sum = 0.0;
    for (const auto& t : terms_) sum += t.coefficient * std::polar(1.0, t.m * phi);
    return inv_sqrt_2pi * sum;
}

double PhaseDistribution::operator()(double phi) const { return std::norm(wavefunction(phi)); }

BinLayout bin_layout(const QuantumState& state)
{
    const HalfInt gap = require_m_gap(state);
    BinLayout layout;
    if (is_substate(state)) {
        // One period 2 pi / (j_max/2) = one kept + one dropped sub-bin.
        layout.bin_count = state.origin()->j_max;
    } else {
        if (!gap.is_integer()) {
            throw UnsupportedStateError("m-spacing " + std::to_string(gap.value()) +
                                        " does not tile [-pi, pi) with whole bins");
        }
        layout.bin_count = gap.twice() / 2;
    }
    const int count = layout.bin_count;
    layout.bin_width = 2.0 * pi / count;
    const int first = -(count / 2);
    for (int k = first; k < first + count; ++k) {
        layout.centers.push_back(k * layout.bin_width);
        if (is_substate(state)) layout.kept_mask.push_back(k % 2 == 0);
    }
    return layout;
}

double visibility(const PhaseDistribution& dist)
{
    const double half = 0.5 * dist.period();
    auto f = [&dist](double phi) { return dist(phi); };
    const double hi = numerics::scan_maximize(f, -half, half, scan_points, x_tol).value;
    const double lo = std::max(0.0, numerics::scan_minimize(f, -half, half, scan_points, x_tol).value);
    return (hi - lo) / (hi + lo);
}

std::optional<double> hwhm(const PhaseDistribution& dist, const BinLayout& layout)
{
    const double w = layout.bin_width;
    auto f = [&dist](double phi) { return dist(phi); };
    const double peak = numerics::scan_maximize(f, -0.5 * w, 0.5 * w, scan_points, x_tol).value;
    const double floor = numerics::scan_minimize(f, -0.5 * w, 0.5 * w, scan_points, x_tol).value;
    const double level = 0.5 * peak;
    if (floor > level) return std::nullopt;

    auto excess = [&dist, level](double offset) { return dist(offset) - level; };
    const double step = 0.5 * w / scan_points;
    for (int k = 1; k <= scan_points; ++k) {
        const double x = (k == scan_points) ? 0.5 * w : k * step;
        if (excess(x) <= 0.0) return numerics::bisect_root(excess, (k - 1) * step, x, 1e-15);
    }
    return std::nullopt;
}

double bin_variance(const PhaseDistribution& dist, const BinLayout& layout)
{
    const double w = layout.bin_width;
    // Integrate in bin-relative units u = phi / w on [-1/2, 1/2].
    auto density = [&dist, w](double u) { return dist(w * u); };
    auto moment = [&dist, w](double u) { return u * u * dist(w * u); };
    const double mass = numerics::adaptive_simpson(density, -0.5, 0.5, quad_tol);
    if (!(mass > 0.0)) throw Error("bin centered at 0 carries no probability mass");
    const double second = numerics::adaptive_simpson(moment, -0.5, 0.5, quad_tol);
    return w * w * second / mass;
}

double p_drop(const QuantumState& state)
{
    if (!is_substate(state)) throw InvalidSpecError("p_drop is defined for sub-states only");
    const PhaseDistribution dist(state);
    const BinLayout layout = bin_layout(state);
    auto f = [&dist](double phi) { return dist(phi); };
    double dropped = 0.0;
    for (std::size_t i = 0; i < layout.centers.size(); ++i) {
        if (layout.is_kept(i)) continue;
        const double c = layout.centers[i];
        dropped += numerics::adaptive_simpson(f, c - 0.5 * layout.bin_width,
                                              c + 0.5 * layout.bin_width, quad_tol);
    }
    return dropped;
}

namespace closed_form {

double noon_hwhm_coefficient() { return pi / 2.0; }

double noon_bin_variance_coefficient() { return pi * pi / 3.0 - 2.0; }

double substate_hwhm_coefficient(double r1)
{
    return 2.0 * std::acos((std::sqrt(6.0 + 4.0 * r1 + r1 * r1) - r1) / (2.0 * sqrt2));
}

double substate_hwhm_coefficient_literal(double r1)
{
    return 2.0 * std::acos((4.0 * r1 - 4.0 * std::sqrt(6.0 + 4.0 * r1 + r1 * r1)) / (8.0 * sqrt2));
}

double substate_bin_variance_coefficient_literal(double r1)
{
    const double r1sq = r1 * r1;
    const double num = 128.0 * (27.0 + 13.0 * sqrt2) * r1 + 144.0 * (3.0 + sqrt2) * pi * pi * r1 +
                       36.0 * pi * pi * pi * (1.0 + r1sq) -
                       27.0 * pi * (8.0 * sqrt2 - 1.0 + 8.0 * r1sq);
    const double den = 36.0 * (4.0 * (3.0 + sqrt2) * r1 + 3.0 * pi * (1.0 + r1sq));
    return num / den;
}

double substate_p_drop(double r1)
{
    return (3.0 - 4.0 * (3.0 + sqrt2) * r1 / (pi * (1.0 + r1 * r1))) / 6.0;
}

double noonvac_visibility(double n)
{
    return 2.0 * sqrt2 * std::sqrt(n) / (2.0 + n);
}

std::optional<double> noonvac_hwhm_coefficient(double n)
{
    const double rn = std::sqrt(n);
    const double arg = 0.5 * (-sqrt2 * rn + std::sqrt(2.0 + 2.0 * sqrt2 * rn + n));
    if (arg < -1.0 || arg > 1.0) return std::nullopt;
    return 2.0 / (n + 1.0) * std::acos(arg);
}

double noonvac_bin_variance_coefficient(double n)
{
    const double num = 2.0 * (3.0 - 24.0 * sqrt2 * std::sqrt(n) + 2.0 * pi * pi + 2.0 * n * pi * pi);
    return num / (3.0 * std::pow(n + 1.0, 3));
}

}  // namespace closed_form

bool MetricTwin::agrees() const
{
    if (!closed_form_available) return true;
    if (!numerical || !closed_form) return numerical.has_value() == closed_form.has_value();
    const double a = *numerical;
    const double b = *closed_form;
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= rel_tol * scale;
}

namespace {

MetricTwin twin_from(std::optional<double> closed)
{
    MetricTwin t;
    t.closed_form_available = true;
    t.closed_form = closed;
    return t;
}

}  // namespace

MetricReport closed_form_metrics(const StateSpec& spec)
{
    const QuantumState state = build_state(spec);
    const double N = photon_cost(state);
    const BinLayout layout = bin_layout(state);

    MetricReport report;
    report.spec = spec;
    report.photon_cost = N;
    report.bin_count = layout.bin_count;
    report.bin_width = layout.bin_width;

    switch (spec.kind) {
    case StateKind::Noon:
        report.hwhm = twin_from(closed_form::noon_hwhm_coefficient() / N);
        report.bin_variance = twin_from(closed_form::noon_bin_variance_coefficient() / (N * N));
        report.visibility = twin_from(1.0);
        break;
    case StateKind::SubState:
        report.hwhm = twin_from(closed_form::substate_hwhm_coefficient(spec.r1) / N);
        report.bin_variance =
            twin_from(closed_form::substate_bin_variance_coefficient_literal(spec.r1) / (N * N));
        report.p_drop = twin_from(closed_form::substate_p_drop(spec.r1));
        break;
    case StateKind::NoonVac: {
        const auto coefficient = closed_form::noonvac_hwhm_coefficient(spec.n);
        report.hwhm = twin_from(coefficient ? std::optional(*coefficient / N) : std::nullopt);
        report.bin_variance =
            twin_from(closed_form::noonvac_bin_variance_coefficient(spec.n) / (N * N));
        report.visibility = twin_from(closed_form::noonvac_visibility(spec.n));
        break;
    }
    case StateKind::GeneralEq1:
        break;
    }
    return report;
}

MetricReport compute_metrics(const StateSpec& spec)
{
    MetricReport report = closed_form_metrics(spec);
    const QuantumState state = build_state(spec);
    const PhaseDistribution dist(state);
    const BinLayout layout = bin_layout(state);
    const double N = report.photon_cost;

    report.hwhm.numerical = hwhm(dist, layout);
    report.bin_variance.numerical = bin_variance(dist, layout);
    report.visibility.numerical = visibility(dist);
    if (report.p_drop) report.p_drop->numerical = p_drop(state);

    if (spec.kind == StateKind::SubState && !report.bin_variance.agrees()) {
        report.notes.push_back(
            "printed kept-bin variance expression gives coefficient " +
            std::to_string(*report.bin_variance.closed_form * N * N) + " but quadrature gives " +
            std::to_string(*report.bin_variance.numerical * N * N) +
            "; the quadrature value is authoritative");
    }
    if (spec.kind == StateKind::NoonVac && spec.n < 2.0 && !report.visibility.agrees()) {
        report.notes.push_back(
            "for n < 2 the PDF reaches zero inside each bin, so the closed-form visibility does "
            "not apply; the numerical visibility is 1");
    }
    if (!report.hwhm.numerical) {
        report.notes.push_back("bin minimum exceeds half the peak; HWHM is undefined");
    }
    return report;
}

}  // namespace qphase
