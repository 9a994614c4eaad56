#pragma once

#include <functional>

namespace qphase::numerics {

using ScalarFn = std::function<double(double)>;

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance
/// `abs_tol`. Recursion stops at `max_depth` levels.
double adaptive_simpson(const ScalarFn& f, double a, double b, double abs_tol = 1e-12,
                        int max_depth = 50);

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section minimization of a unimodal f on [lo, hi]; stops once the
/// bracket is narrower than `x_tol`. The returned point is the best value
/// seen, including both endpoints.
Extremum golden_section_minimize(const ScalarFn& f, double lo, double hi, double x_tol,
                                 int* evaluations = nullptr);

/// Global minimum on [lo, hi] by an inclusive `samples`-point scan followed by
/// golden-section refinement around the best sample.
Extremum scan_minimize(const ScalarFn& f, double lo, double hi, int samples, double x_tol);

/// Same, for the maximum.
Extremum scan_maximize(const ScalarFn& f, double lo, double hi, int samples, double x_tol);

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
double bisect_root(const ScalarFn& f, double lo, double hi, double x_tol = 1e-14);

}  // namespace qphase::numerics
