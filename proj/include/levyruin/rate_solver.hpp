#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "levyruin/errors.hpp"
#include "levyruin/risk_model.hpp"

namespace levyruin {

/// Result of maximizing Phi over (0, lambda_0].
struct RateResult {
    double lambda_star = 0.0;  // maximizer
    double k = 0.0;            // Phi(lambda_star), per-unit-time rate
    double residual = 0.0;     // |Phi'(lambda_star)|; +inf when boundary_max
    double lambda0 = 0.0;
    bool concavity_ok = false;  // Phi'' < 0 sampled across the search interval
    bool boundary_max = false;  // maximum attained at lambda_0
};

namespace detail {

/// Golden-section maximization of f on [lo, hi], terminating when the
/// bracket is shorter than tol (absolute in lambda).
template <class F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

/// Variant-specific first-order expression whose root is lambda_star;
/// identical to Phi'(lambda) but written out per family:
///   compound Poisson:  p - sigma^2 lambda - beta B'(lambda)
///   gamma process:     p - sigma^2 lambda - alpha / (beta - lambda)
///   inverse Gaussian:  p - sigma^2 lambda - 1 / sqrt(gamma^2 - 2 lambda)
inline double stationarity_residual(const RiskModel& m, double lambda) {
    if (!(lambda >= 0.0) || lambda >= m.jumps.exponent_abscissa()) {
        throw DomainError("stationarity_residual: lambda outside [0, lambda_0)");
    }
    const double p0 = m.premium.base();
    const double s2 = m.volatility.value() * m.volatility.value();
    return std::visit(
        [&](const auto& jm) -> double {
            using T = std::decay_t<decltype(jm)>;
            if constexpr (std::is_same_v<T, CompoundPoisson>) {
                const double bprime =
                    jm.intensity == 0.0 ? 0.0 : jm.intensity * jm.claims.mgf(lambda, 1);
                return p0 - s2 * lambda - bprime;
            } else if constexpr (std::is_same_v<T, GammaProcess>) {
                return p0 - s2 * lambda - jm.alpha / (jm.beta - lambda);
            } else {
                return p0 - s2 * lambda - 1.0 / std::sqrt(jm.gamma * jm.gamma - 2.0 * lambda);
            }
        },
        m.jumps.variant());
}

/// Maximize Phi by golden-section bracketing plus safeguarded Newton on Phi'.
///
/// Bracketing policy: kappa blows up at lambda_0 for the pole-type families
/// (claims with exponential tails, gamma process), so the search stays inside
/// [1e-8, lambda_0 - 1e-8]. The inverse Gaussian exponent is finite at
/// lambda_0, so there the closed interval is scanned and the endpoint is
/// compared explicitly. Bounded-support (truncated) models have
/// lambda_0 = +inf; the bracket is grown by doubling until Phi' < 0.
inline RateResult solve_rate(const RiskModel& m) {
    if (!net_profit_check(m)) {
        throw NoPositiveRate("net benefit condition fails: p(0) <= m(mu)");
    }
    const double lam0 = m.jumps.exponent_abscissa();
    const bool ig = std::holds_alternative<InverseGaussianProcess>(m.jumps.variant());

    double lo = 1e-8;
    double hi;
    if (std::isinf(lam0)) {
        hi = 1.0;
        int iter = 0;
        while (iter < 200 && big_phi(m, hi, 1) > 0.0) {
            hi *= 2.0;
            ++iter;
        }
        if (big_phi(m, hi, 1) > 0.0) {
            throw NumericalError("solve_rate: could not bracket the maximizer");
        }
    } else if (ig) {
        lo = 0.0;
        hi = lam0;
    } else {
        hi = lam0 - 1e-8;
    }

    const double lambda_gs =
        detail::golden_section_max([&](double lam) { return big_phi(m, lam, 0); }, lo, hi, 1e-12);

    // Endpoint comparison for the inverse Gaussian closed interval.
    if (ig && big_phi(m, lam0, 0) >= big_phi(m, lambda_gs, 0)) {
        RateResult r;
        r.lambda_star = lam0;
        r.k = big_phi(m, lam0, 0);
        r.residual = std::numeric_limits<double>::infinity();
        r.lambda0 = lam0;
        r.boundary_max = true;
        r.concavity_ok = true;
        return r;
    }

    // Newton polish on Phi' (Phi'' < 0 on the interior).
    double lambda = lambda_gs;
    for (int i = 0; i < 100; ++i) {
        const double d1 = big_phi(m, lambda, 1);
        if (std::abs(d1) < 1e-14) break;
        const double d2 = big_phi(m, lambda, 2);
        if (!(d2 < 0.0)) break;
        double next = lambda - d1 / d2;
        if (next <= lo) next = 0.5 * (lambda + lo);
        if (next >= hi) next = 0.5 * (lambda + hi);
        if (std::abs(next - lambda) < 1e-17 * std::max(1.0, lambda)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    if (std::abs(lambda - lambda_gs) > 1e-8) {
        throw NumericalError("solve_rate: Newton and golden-section maximizers disagree");
    }

    RateResult r;
    r.lambda_star = lambda;
    r.k = big_phi(m, lambda, 0);
    r.residual = std::abs(big_phi(m, lambda, 1));
    r.lambda0 = lam0;
    r.boundary_max = false;

    r.concavity_ok = true;
    const double cp_hi = std::isinf(lam0) ? hi : lam0;
    for (int i = 0; i < 64; ++i) {
        const double lam = lo + (cp_hi - lo) * (i + 0.5) / 64.0;
        if (lam <= 0.0 || lam >= lam0) continue;
        if (!(big_phi(m, lam, 2) < 0.0)) {
            r.concavity_ok = false;
            break;
        }
    }
    return r;
}

/// One point of an epsilon-truncation sweep.
struct SweepPoint {
    double eps;
    double k_eps;   // rate of the truncated model with sigma_eps = sigma + eps
    double abs_err; // |k_eps - k|
};

/// Rates of the truncated models mu(. intersect [eps, 1/eps]) with volatility
/// sigma + eps, against the untruncated rate.
inline std::vector<SweepPoint> truncation_sweep(const RiskModel& m,
                                                std::span<const double> eps_list) {
    if (m.jumps.finite_activity()) {
        throw DomainError("truncation_sweep: model is already finite activity");
    }
    if (eps_list.empty()) throw ConfigError("truncation_sweep: empty eps list");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw ConfigError("truncation_sweep: eps must be > 0");
        if (i > 0 && eps_list[i] > eps_list[i - 1]) {
            throw ConfigError("truncation_sweep: eps list must be decreasing");
        }
    }
    const double k_ref = solve_rate(m).k;
    std::vector<SweepPoint> out;
    out.reserve(eps_list.size());
    for (const double eps : eps_list) {
        const RiskModel trunc{m.premium, VolatilityRule::constant(m.volatility.value() + eps),
                              m.jumps.truncate(eps)};
        const double k_eps = solve_rate(trunc).k;
        out.push_back({eps, k_eps, std::abs(k_eps - k_ref)});
    }
    return out;
}

}  // namespace levyruin
