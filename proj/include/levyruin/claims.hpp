#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "levyruin/errors.hpp"
#include "levyruin/quadrature.hpp"
#include "levyruin/rng.hpp"

namespace levyruin {

struct ExponentialClaims {
    double rate;  // delta
};

struct GammaClaims {
    double shape;  // alpha
    double rate;   // delta
};

struct MixedExponentialClaims {
    double weight;  // p, weight on the first component
    double rate1;   // delta_1
    double rate2;   // delta_2
};

/// Normalized restriction of a Levy density to [lo, hi], tabulated on a
/// log-spaced grid: per-panel Gauss-Legendre nodes for moment/MGF integrals
/// and a cumulative table for inverse-CDF sampling.
struct RestrictionTable {
    double lo = 0.0;
    double hi = 0.0;
    double total_mass = 0.0;          // integral of the density over [lo, hi]
    double mean = 0.0;                // first moment of the *normalized* law
    std::vector<double> log_breaks;   // log-spaced panel edges (size n+1)
    std::vector<double> cdf;          // normalized CDF at panel edges
    std::vector<double> quad_x;       // flattened quadrature nodes
    std::vector<double> quad_w;       // density * GL weight * panel half-width
    std::vector<double> quad_logw;    // log of quad_w, for overflow-safe e^{lambda x} terms

    static constexpr int kTablePoints = 1000;  // panel edges

    static std::shared_ptr<const RestrictionTable> build(
        const std::function<double(double)>& density, double lo, double hi) {
        auto t = std::make_shared<RestrictionTable>();
        t->lo = lo;
        t->hi = hi;
        const int n_panels = kTablePoints - 1;
        t->log_breaks.resize(kTablePoints);
        const double llo = std::log(lo);
        const double lhi = std::log(hi);
        for (int i = 0; i < kTablePoints; ++i) {
            t->log_breaks[i] = llo + (lhi - llo) * static_cast<double>(i) / n_panels;
        }
        t->cdf.assign(kTablePoints, 0.0);
        t->quad_x.reserve(static_cast<std::size_t>(n_panels) * 7);
        t->quad_w.reserve(static_cast<std::size_t>(n_panels) * 7);
        t->quad_logw.reserve(static_cast<std::size_t>(n_panels) * 7);
        double mass = 0.0;
        double first_moment = 0.0;
        for (int i = 0; i < n_panels; ++i) {
            const double a = std::exp(t->log_breaks[i]);
            const double b = std::exp(t->log_breaks[i + 1]);
            const double mid = 0.5 * (a + b);
            const double half = 0.5 * (b - a);
            double panel_mass = 0.0;
            for (std::size_t q = 0; q < GaussLegendre7::nodes.size(); ++q) {
                const double x = mid + half * GaussLegendre7::nodes[q];
                const double w = half * GaussLegendre7::weights[q] * density(x);
                t->quad_x.push_back(x);
                t->quad_w.push_back(w);
                t->quad_logw.push_back(w > 0.0 ? std::log(w)
                                               : -std::numeric_limits<double>::infinity());
                panel_mass += w;
                first_moment += w * x;
            }
            mass += panel_mass;
            t->cdf[i + 1] = mass;
        }
        if (!(mass > 0.0) || !std::isfinite(mass)) {
            throw NumericalError("restriction table: nonpositive or non-finite mass");
        }
        t->total_mass = mass;
        t->mean = first_moment / mass;
        for (auto& c : t->cdf) c /= mass;
        t->cdf.back() = 1.0;
        return t;
    }

    /// Raw (unnormalized) integral of x^order * e^{lambda x} over [lo, hi].
    /// Terms are formed as exp(log w + lambda x) so that underflowed weights
    /// in far-tail panels cannot produce inf * 0.
    double exp_moment(double lambda, int order) const {
        double s = 0.0;
        double comp = 0.0;
        for (std::size_t i = 0; i < quad_x.size(); ++i) {
            const double e = quad_logw[i] + lambda * quad_x[i];
            if (e > 709.0) return std::numeric_limits<double>::infinity();
            double xk = 1.0;
            for (int k = 0; k < order; ++k) xk *= quad_x[i];
            const double term = xk * std::exp(e) - comp;
            const double next = s + term;
            comp = (next - s) - term;
            s = next;
        }
        return s;
    }

    /// Integral of (e^{lambda x} - 1) x^0 over the restriction (order 0, the
    /// truncated Levy exponent itself) or of x^order e^{lambda x} (orders 1,
    /// 2, its derivatives). Order 0 goes through expm1 so the result is
    /// conditioned on kappa rather than on the much larger total mass;
    /// Kahan-compensated so the rate solver can resolve the maximizer of Phi
    /// to well below 1e-8 on tabulated exponents.
    double kappa_restricted(double lambda, int order) const {
        if (order != 0) return exp_moment(lambda, order);
        double s = 0.0;
        double comp = 0.0;
        for (std::size_t i = 0; i < quad_x.size(); ++i) {
            const double lx = lambda * quad_x[i];
            double term;
            if (lx <= 1.0) {
                term = quad_w[i] * std::expm1(lx);
            } else {
                const double e = quad_logw[i] + lx;
                if (e > 709.0) return std::numeric_limits<double>::infinity();
                term = std::exp(e) - quad_w[i];
            }
            term -= comp;
            const double next = s + term;
            comp = (next - s) - term;
            s = next;
        }
        return s;
    }

    /// Inverse-CDF draw; monotone interpolation, linear in log x per panel.
    double sample(double u) const {
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t j = static_cast<std::size_t>(it - cdf.begin());
        if (j == 0) j = 1;
        if (j >= cdf.size()) j = cdf.size() - 1;
        const double f0 = cdf[j - 1];
        const double f1 = cdf[j];
        const double frac = (f1 > f0) ? (u - f0) / (f1 - f0) : 0.5;
        return std::exp(log_breaks[j - 1] + frac * (log_breaks[j] - log_breaks[j - 1]));
    }
};

struct TabulatedClaims {
    std::shared_ptr<const RestrictionTable> table;
};

/// Claim-size law with closed-form moment generating function.
///
/// The MGF abscissa is the supremum of lambda with finite B(lambda):
/// delta for the exponential and gamma laws, min(delta_1, delta_2) for the
/// exponential mixture, infinity for a tabulated (bounded-support) law.
class ClaimDistribution {
public:
    using Variant = std::variant<ExponentialClaims, GammaClaims, MixedExponentialClaims,
                                 TabulatedClaims>;

    static ClaimDistribution exponential(double rate) {
        if (!(rate > 0.0)) throw ConfigError("exponential claims: rate must be > 0");
        return ClaimDistribution(ExponentialClaims{rate});
    }

    static ClaimDistribution gamma(double shape, double rate) {
        if (!(shape > 0.0) || !(rate > 0.0)) {
            throw ConfigError("gamma claims: shape and rate must be > 0");
        }
        return ClaimDistribution(GammaClaims{shape, rate});
    }

    static ClaimDistribution mixed_exponential(double weight, double rate1, double rate2) {
        if (!(weight > 0.0) || !(weight < 1.0)) {
            throw ConfigError("mixed exponential claims: weight must be in (0,1)");
        }
        if (!(rate1 > 0.0) || !(rate2 > 0.0)) {
            throw ConfigError("mixed exponential claims: rates must be > 0");
        }
        return ClaimDistribution(MixedExponentialClaims{weight, rate1, rate2});
    }

    static ClaimDistribution tabulated(std::shared_ptr<const RestrictionTable> table) {
        if (!table) throw ConfigError("tabulated claims: null table");
        return ClaimDistribution(TabulatedClaims{std::move(table)});
    }

    double mgf_abscissa() const {
        return std::visit(
            [](const auto& c) -> double {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, ExponentialClaims>) {
                    return c.rate;
                } else if constexpr (std::is_same_v<T, GammaClaims>) {
                    return c.rate;
                } else if constexpr (std::is_same_v<T, MixedExponentialClaims>) {
                    return std::min(c.rate1, c.rate2);
                } else {
                    return std::numeric_limits<double>::infinity();
                }
            },
            v_);
    }

    /// B(lambda), B'(lambda) or B''(lambda) depending on order (0|1|2).
    double mgf(double lambda, int order = 0) const {
        if (order < 0 || order > 2) throw ConfigError("mgf: order must be 0, 1 or 2");
        if (!(lambda >= 0.0) || lambda >= mgf_abscissa()) {
            throw DomainError("mgf: lambda outside [0, lambda_max)");
        }
        return std::visit(
            [&](const auto& c) -> double {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, ExponentialClaims>) {
                    return exp_component(c.rate, lambda, order);
                } else if constexpr (std::is_same_v<T, GammaClaims>) {
                    const double d = c.rate - lambda;
                    const double base = std::pow(c.rate / d, c.shape);
                    if (order == 0) return base;
                    if (order == 1) return base * c.shape / d;
                    return base * c.shape * (c.shape + 1.0) / (d * d);
                } else if constexpr (std::is_same_v<T, MixedExponentialClaims>) {
                    return c.weight * exp_component(c.rate1, lambda, order) +
                           (1.0 - c.weight) * exp_component(c.rate2, lambda, order);
                } else {
                    return c.table->exp_moment(lambda, order) / c.table->total_mass;
                }
            },
            v_);
    }

    double mean() const {
        return std::visit(
            [](const auto& c) -> double {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, ExponentialClaims>) {
                    return 1.0 / c.rate;
                } else if constexpr (std::is_same_v<T, GammaClaims>) {
                    return c.shape / c.rate;
                } else if constexpr (std::is_same_v<T, MixedExponentialClaims>) {
                    return c.weight / c.rate1 + (1.0 - c.weight) / c.rate2;
                } else {
                    return c.table->mean;
                }
            },
            v_);
    }

    double sample(RandomStream& rng) const {
        return std::visit(
            [&](const auto& c) -> double {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, ExponentialClaims>) {
                    return rng.exponential(c.rate);
                } else if constexpr (std::is_same_v<T, GammaClaims>) {
                    return rng.gamma(c.shape, c.rate);
                } else if constexpr (std::is_same_v<T, MixedExponentialClaims>) {
                    const double r = rng.uniform01() < c.weight ? c.rate1 : c.rate2;
                    return rng.exponential(r);
                } else {
                    return c.table->sample(rng.uniform01());
                }
            },
            v_);
    }

    /// Probability density, needed when restricting a compound-Poisson
    /// Levy measure. Not defined for already-tabulated laws.
    double density(double x) const {
        return std::visit(
            [&](const auto& c) -> double {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, ExponentialClaims>) {
                    return x > 0.0 ? c.rate * std::exp(-c.rate * x) : 0.0;
                } else if constexpr (std::is_same_v<T, GammaClaims>) {
                    if (x <= 0.0) return 0.0;
                    return std::exp(c.shape * std::log(c.rate) + (c.shape - 1.0) * std::log(x) -
                                    c.rate * x - std::lgamma(c.shape));
                } else if constexpr (std::is_same_v<T, MixedExponentialClaims>) {
                    if (x <= 0.0) return 0.0;
                    return c.weight * c.rate1 * std::exp(-c.rate1 * x) +
                           (1.0 - c.weight) * c.rate2 * std::exp(-c.rate2 * x);
                } else {
                    throw DomainError("density: not available for tabulated claims");
                }
            },
            v_);
    }

    bool is_tabulated() const { return std::holds_alternative<TabulatedClaims>(v_); }

    const TabulatedClaims* tabulated_or_null() const {
        return std::get_if<TabulatedClaims>(&v_);
    }

    const Variant& variant() const { return v_; }

private:
    explicit ClaimDistribution(Variant v) : v_(std::move(v)) {}

    static double exp_component(double rate, double lambda, int order) {
        const double d = rate - lambda;
        if (order == 0) return rate / d;
        if (order == 1) return rate / (d * d);
        return 2.0 * rate / (d * d * d);
    }

    Variant v_;
};

}  // namespace levyruin
