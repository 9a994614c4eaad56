#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qphase/states.hpp"

namespace qphase {

/// Raised for states where some m value occurs with more than one j; the
/// phase representation then is not a plain Fourier series.
class UnsupportedStateError : public Error {
public:
    using Error::Error;
};

/// Psi(phi) = (2 pi)^(-1/2) sum_m c_m exp(i m phi).
std::complex<double> phase_wavefunction(const QuantumState& state, double phi);

/// |Psi(phi)|^2, a density on [-pi, pi) in 1/radian.
double phase_pdf(const QuantumState& state, double phi);

/// Evaluator for the phase PDF of a periodic, unique-j-per-m state.
class PhaseDistribution {
public:
    explicit PhaseDistribution(QuantumState state);

    double operator()(double phi) const;
    std::complex<double> wavefunction(double phi) const;

    /// 2 pi / m_gap.
    double period() const { return period_; }
    const QuantumState& state() const { return state_; }

private:
    struct Term {
        double m;
        std::complex<double> coefficient;
    };

    QuantumState state_;
    std::vector<Term> terms_;
    double period_ = 0.0;
};

/// Partition of [-pi, pi) into identical bins, one of them centered at 0.
///
/// For sub-states each period holds a kept bin (centered on the enhanced
/// peak) and a dropped bin; `kept_mask[i]` tells which. For other states the
/// mask is empty and every bin is kept.
struct BinLayout {
    int bin_count = 0;
    double bin_width = 0.0;
    std::vector<double> centers;
    std::vector<bool> kept_mask;

    bool is_kept(std::size_t i) const { return kept_mask.empty() || kept_mask[i]; }
};

BinLayout bin_layout(const QuantumState& state);

/// (max - min) / (max + min) over one period.
double visibility(const PhaseDistribution& dist);

/// Half-width at half-maximum of the peak in the bin centered at 0, with
/// the half-max level measured from zero. nullopt when the bin minimum
/// exceeds half the peak.
std::optional<double> hwhm(const PhaseDistribution& dist, const BinLayout& layout);

/// Variance about the center of the bin at 0, with the PDF renormalized to
/// that bin.
double bin_variance(const PhaseDistribution& dist, const BinLayout& layout);

/// Probability mass on the dropped sub-bins of a sub-state.
double p_drop(const QuantumState& state);

/// Closed-form expressions. Coefficients multiply 1/N (HWHM) or 1/N^2
/// (bin-variance).
namespace closed_form {

double noon_hwhm_coefficient();
double noon_bin_variance_coefficient();

/// Branch that runs from pi/3 at r1 = 0 to pi/2 as r1 -> infinity.
double substate_hwhm_coefficient(double r1);
/// The reference closed form on its other arccos branch (yields 5 pi/3 at r1 = 0).
double substate_hwhm_coefficient_literal(double r1);
/// Reference closed form for the kept-bin variance coefficient. Exact at r1 = 0
/// and in the large-r1 limit only; quadrature is authoritative elsewhere.
double substate_bin_variance_coefficient_literal(double r1);
double substate_p_drop(double r1);

/// (2 sqrt2 sqrt n) / (2 + n). Assumes the PDF has no interior null, which
/// holds for n >= 2.
double noonvac_visibility(double n);
/// nullopt past n = 2 (17 + 12 sqrt2), where the bin minimum exceeds half
/// the peak.
std::optional<double> noonvac_hwhm_coefficient(double n);
double noonvac_bin_variance_coefficient(double n);

}  // namespace closed_form

/// One metric computed two ways. `numerical` is nullopt when the metric is
/// undefined for the state; `closed_form` is nullopt when there is no closed
/// form or it is undefined (see `closed_form_available`).
struct MetricTwin {
    std::optional<double> numerical;
    bool closed_form_available = false;
    std::optional<double> closed_form;
    /// Relative tolerance used for `agrees()`.
    double rel_tol = 1e-8;

    bool agrees() const;
};

struct MetricReport {
    StateSpec spec;
    double photon_cost = 0.0;
    int bin_count = 0;
    double bin_width = 0.0;
    /// Raw metrics in radians (HWHM) and radians^2 (bin-variance).
    MetricTwin hwhm;
    MetricTwin bin_variance;
    MetricTwin visibility;
    std::optional<MetricTwin> p_drop;
    /// Discrepancies between closed forms and quadrature worth surfacing.
    std::vector<std::string> notes;
};

/// Closed-form twins only; numerical fields are left empty.
MetricReport closed_form_metrics(const StateSpec& spec);

/// Numerical metrics by quadrature and root-finding, paired with the closed
/// forms where they exist.
MetricReport compute_metrics(const StateSpec& spec);

}  // namespace qphase
