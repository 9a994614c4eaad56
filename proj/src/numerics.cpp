#include "qphase/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace qphase::numerics {

namespace {

struct SimpsonCell {
    double a, m, b;
    double fa, fm, fb;
    double whole;
};

double simpson_recurse(const ScalarFn& f, const SimpsonCell& c, double tol, int depth)
{
    const double lm = 0.5 * (c.a + c.m);
    const double rm = 0.5 * (c.m + c.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (c.m - c.a) / 6.0 * (c.fa + 4.0 * flm + c.fm);
    const double right = (c.b - c.m) / 6.0 * (c.fm + 4.0 * frm + c.fb);
    const double delta = left + right - c.whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_recurse(f, {c.a, lm, c.m, c.fa, flm, c.fm, left}, 0.5 * tol, depth - 1) +
           simpson_recurse(f, {c.m, rm, c.b, c.fm, frm, c.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const ScalarFn& f, double a, double b, double abs_tol, int max_depth)
{
    if (a == b) return 0.0;
    // Start from four panels so that a symmetric integrand cannot fool the
    // first error estimate.
    constexpr int panels = 4;
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * h;
        const double hi = (i + 1 == panels) ? b : a + (i + 1) * h;
        const double mid = 0.5 * (lo + hi);
        const double flo = f(lo), fmid = f(mid), fhi = f(hi);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += simpson_recurse(f, {lo, mid, hi, flo, fmid, fhi, whole}, abs_tol / panels,
                                 max_depth);
    }
    return total;
}

Extremum golden_section_minimize(const ScalarFn& f, double lo, double hi, double x_tol,
                                 int* evaluations)
{
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    int evals = 0;
    auto eval = [&](double x) {
        ++evals;
        return f(x);
    };

    Extremum best{lo, eval(lo)};
    auto consider = [&best](double x, double v) {
        if (v < best.value || (v == best.value && x < best.x)) best = {x, v};
    };
    consider(hi, eval(hi));

    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = eval(c), fd = eval(d);
    consider(c, fc);
    consider(d, fd);
    // The bracket shrinks by 1/phi per step; 200 steps is far past any
    // representable width.
    for (int iter = 0; iter < 200 && (b - a) > x_tol; ++iter) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
            consider(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
            consider(d, fd);
        }
    }
    const double mid = 0.5 * (a + b);
    consider(mid, eval(mid));
    if (evaluations) *evaluations += evals;
    return best;
}

Extremum scan_minimize(const ScalarFn& f, double lo, double hi, int samples, double x_tol)
{
    if (samples < 2) throw std::invalid_argument("scan_minimize needs at least 2 samples");
    const double step = (hi - lo) / (samples - 1);
    int best_i = 0;
    double best_v = f(lo);
    for (int i = 1; i < samples; ++i) {
        const double x = (i + 1 == samples) ? hi : lo + i * step;
        const double v = f(x);
        if (v < best_v) {
            best_v = v;
            best_i = i;
        }
    }
    const double a = best_i == 0 ? lo : lo + (best_i - 1) * step;
    const double b = best_i + 1 >= samples ? hi : lo + (best_i + 1) * step;
    return golden_section_minimize(f, a, b, x_tol);
}

Extremum scan_maximize(const ScalarFn& f, double lo, double hi, int samples, double x_tol)
{
    auto neg = [&f](double x) { return -f(x); };
    Extremum e = scan_minimize(neg, lo, hi, samples, x_tol);
    e.value = -e.value;
    return e;
}

double bisect_root(const ScalarFn& f, double lo, double hi, double x_tol)
{
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
    }
    for (int iter = 0; iter < 200 && (hi - lo) > x_tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace qphase::numerics
