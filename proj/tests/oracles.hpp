#pragma once

// Test-side numerical oracles, deliberately independent of the library's
// implementation choices: adaptive Simpson quadrature (the library uses
// fixed Gauss-Legendre panels), plain grid scans with parabolic refinement
// (the library uses golden section + Newton), central finite differences,
// and small statistics helpers.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracle {

namespace detail {

template <class F>
double simpson(F&& f, double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_step(F&& f, double a, double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    return detail::adaptive_step(f, a, b, fa, fm, fb, detail::simpson(f, a, b, fa, fm, fb), tol,
                                 48);
}

template <class F>
double fd_first(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <class F>
double fd_second(F&& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

struct ScanMax {
    double arg = 0.0;
    double value = 0.0;
};

/// n-point scan over (lo, hi) with one parabolic refinement through the best
/// bracket. Does not share any code path with the library solver.
template <class F>
ScanMax grid_scan_max(F&& f, double lo, double hi, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    std::vector<double> ys(static_cast<std::size_t>(n));
    int best = 0;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * (i + 1.0) / (n + 1.0);
        xs[static_cast<std::size_t>(i)] = x;
        ys[static_cast<std::size_t>(i)] = f(x);
        if (ys[static_cast<std::size_t>(i)] > ys[static_cast<std::size_t>(best)]) best = i;
    }
    ScanMax out{xs[static_cast<std::size_t>(best)], ys[static_cast<std::size_t>(best)]};
    if (best > 0 && best < n - 1) {
        const double x0 = xs[best - 1], x1 = xs[best], x2 = xs[best + 1];
        const double y0 = ys[best - 1], y1 = ys[best], y2 = ys[best + 1];
        const double denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
        if (denom != 0.0) {
            const double xv = x1 - 0.5 *
                                       ((x1 - x0) * (x1 - x0) * (y1 - y2) -
                                        (x1 - x2) * (x1 - x2) * (y1 - y0)) /
                                       denom;
            if (xv > x0 && xv < x2) {
                const double yv = f(xv);
                if (yv > out.value) out = {xv, yv};
            }
        }
    }
    return out;
}

inline double mean(std::span<const double> v) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_sd(std::span<const double> v) {
    const double m = mean(v);
    double s = 0.0;
    for (const double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

/// Two-sample Kolmogorov-Smirnov distance.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) {
            ++i;
        } else {
            ++j;
        }
        const double fa = static_cast<double>(i) / static_cast<double>(a.size());
        const double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
};

inline LineFit least_squares(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 3) {
        throw std::invalid_argument("least_squares: need >= 3 points");
    }
    const double n = static_cast<double>(xs.size());
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        sse += r * r;
    }
    fit.slope_se = std::sqrt(sse / (n - 2.0) / sxx);
    return fit;
}

}  // namespace oracle
