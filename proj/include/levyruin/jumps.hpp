#pragma once

#include <cmath>
#include <limits>
#include <variant>

#include "levyruin/claims.hpp"
#include "levyruin/errors.hpp"
#include "levyruin/rng.hpp"

namespace levyruin {

/// Compound Poisson subordinator: Levy measure beta * B(dx).
/// beta == 0 is the degenerate no-jump model L == 0.
struct CompoundPoisson {
    double intensity;  // beta
    ClaimDistribution claims;
};

/// Gamma subordinator with Levy density alpha * exp(-beta x) / x.
struct GammaProcess {
    double alpha;
    double beta;
};

/// Inverse Gaussian subordinator with Levy density
/// x^{-3/2} exp(-x gamma^2 / 2) / sqrt(2 pi).
struct InverseGaussianProcess {
    double gamma;
};

/// Pure-jump subordinator model: Levy exponent kappa and derivatives, mean
/// jump rate m(mu) = kappa'(0), abscissa of finiteness lambda_0, exact
/// increment sampling, and restriction of the Levy measure to [eps, 1/eps].
class JumpModel {
public:
    using Variant = std::variant<CompoundPoisson, GammaProcess, InverseGaussianProcess>;

    static JumpModel compound_poisson(double intensity, ClaimDistribution claims) {
        if (!(intensity >= 0.0)) throw ConfigError("compound poisson: intensity must be >= 0");
        return JumpModel(CompoundPoisson{intensity, std::move(claims)});
    }

    static JumpModel gamma_process(double alpha, double beta) {
        if (!(alpha > 0.0) || !(beta > 0.0)) {
            throw ConfigError("gamma process: alpha and beta must be > 0");
        }
        return JumpModel(GammaProcess{alpha, beta});
    }

    static JumpModel inverse_gaussian(double gamma) {
        if (!(gamma > 0.0)) throw ConfigError("inverse gaussian process: gamma must be > 0");
        return JumpModel(InverseGaussianProcess{gamma});
    }

    /// lambda_0: kappa(lambda) < infinity exactly on [0, lambda_0).
    double exponent_abscissa() const {
        return std::visit(
            [](const auto& m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, CompoundPoisson>) {
                    return m.claims.mgf_abscissa();
                } else if constexpr (std::is_same_v<T, GammaProcess>) {
                    return m.beta;
                } else {
                    return 0.5 * m.gamma * m.gamma;
                }
            },
            v_);
    }

    /// kappa(lambda) and derivatives (order 0|1|2).
    ///
    /// Order 0 is additionally defined at lambda == lambda_0 for the inverse
    /// Gaussian model, where kappa(gamma^2/2) = gamma is finite.
    double levy_exponent(double lambda, int order = 0) const {
        if (order < 0 || order > 2) throw ConfigError("levy_exponent: order must be 0, 1 or 2");
        const double lam0 = exponent_abscissa();
        const bool boundary_ok =
            order == 0 && std::holds_alternative<InverseGaussianProcess>(v_) && lambda == lam0;
        if (!(lambda >= 0.0) || (lambda >= lam0 && !boundary_ok)) {
            throw DomainError("levy_exponent: lambda outside [0, lambda_0)");
        }
        return std::visit(
            [&](const auto& m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, CompoundPoisson>) {
                    if (m.intensity == 0.0) return 0.0;
                    if (const auto* tab = m.claims.tabulated_or_null()) {
                        // Direct restricted integral: conditioned on kappa
                        // itself instead of on intensity * (B - 1).
                        return tab->table->kappa_restricted(lambda, order);
                    }
                    if (order == 0) return m.intensity * (m.claims.mgf(lambda, 0) - 1.0);
                    return m.intensity * m.claims.mgf(lambda, order);
                } else if constexpr (std::is_same_v<T, GammaProcess>) {
                    const double d = m.beta - lambda;
                    if (order == 0) return m.alpha * std::log(m.beta / d);
                    if (order == 1) return m.alpha / d;
                    return m.alpha / (d * d);
                } else {
                    const double g2 = m.gamma * m.gamma;
                    const double root = std::sqrt(g2 - 2.0 * lambda);
                    if (order == 0) return m.gamma - root;
                    if (order == 1) return 1.0 / root;
                    return 1.0 / (root * root * root);
                }
            },
            v_);
    }

    /// m(mu) = integral of x over the Levy measure; equals kappa'(0).
    double mean_jump_rate() const {
        return std::visit(
            [](const auto& m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, CompoundPoisson>) {
                    return m.intensity == 0.0 ? 0.0 : m.intensity * m.claims.mean();
                } else if constexpr (std::is_same_v<T, GammaProcess>) {
                    return m.alpha / m.beta;
                } else {
                    return 1.0 / m.gamma;
                }
            },
            v_);
    }

    bool finite_activity() const { return std::holds_alternative<CompoundPoisson>(v_); }

    /// Density of the Levy measure (infinite-activity variants only).
    double levy_density(double x) const {
        return std::visit(
            [&](const auto& m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, CompoundPoisson>) {
                    return m.intensity * m.claims.density(x);
                } else if constexpr (std::is_same_v<T, GammaProcess>) {
                    return x > 0.0 ? m.alpha * std::exp(-m.beta * x) / x : 0.0;
                } else {
                    if (x <= 0.0) return 0.0;
                    constexpr double inv_sqrt_2pi = 0.3989422804014327;
                    return inv_sqrt_2pi * std::exp(-0.5 * m.gamma * m.gamma * x) /
                           (x * std::sqrt(x));
                }
            },
            v_);
    }

    /// One exact draw of L(t + dt) - L(t).
    double sample_increment(double dt, RandomStream& rng) const {
        if (!(dt > 0.0)) throw ConfigError("sample_increment: dt must be > 0");
        return std::visit(
            [&](const auto& m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, CompoundPoisson>) {
                    const std::uint64_t n = rng.poisson(m.intensity * dt);
                    double total = 0.0;
                    for (std::uint64_t i = 0; i < n; ++i) total += m.claims.sample(rng);
                    return total;
                } else if constexpr (std::is_same_v<T, GammaProcess>) {
                    return rng.gamma(m.alpha * dt, m.beta);
                } else {
                    return rng.inverse_gaussian(dt / m.gamma, dt * dt);
                }
            },
            v_);
    }

    /// Restrict the Levy measure to [eps, 1/eps]: a finite-activity compound
    /// Poisson model with intensity mu([eps, 1/eps]) and the normalized
    /// restricted density as claim law. eps == 0 is a no-op for models that
    /// are already finite activity.
    JumpModel truncate(double eps) const {
        if (const auto* cp = std::get_if<CompoundPoisson>(&v_)) {
            if (eps == 0.0) return *this;
            if (!(eps > 0.0)) throw DomainError("truncate: eps must be >= 0");
            if (cp->claims.is_tabulated()) {
                const auto* tab = cp->claims.tabulated_or_null();
                if (tab->table->lo >= eps && tab->table->hi <= 1.0 / eps) return *this;
                throw DomainError("truncate: cannot re-truncate a tabulated model further");
            }
            if (cp->intensity == 0.0) return *this;
        } else if (!(eps > 0.0)) {
            throw DomainError("truncate: eps must be > 0 for infinite-activity models");
        }
        const double hi = 1.0 / eps;
        if (!(hi > eps)) throw DomainError("truncate: eps must be < 1");
        auto table = RestrictionTable::build([this](double x) { return levy_density(x); },
                                             eps, hi);
        const double intensity = table->total_mass;
        return compound_poisson(intensity, ClaimDistribution::tabulated(std::move(table)));
    }

    const Variant& variant() const { return v_; }

    const CompoundPoisson* compound_poisson_or_null() const {
        return std::get_if<CompoundPoisson>(&v_);
    }

private:
    explicit JumpModel(Variant v) : v_(std::move(v)) {}

    Variant v_;
};

}  // namespace levyruin
