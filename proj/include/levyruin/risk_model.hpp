#pragma once

#include <cmath>
#include <variant>

#include "levyruin/errors.hpp"
#include "levyruin/jumps.hpp"

namespace levyruin {

/// Level-dependent premium rate p(x), restricted to rules that are
/// nondecreasing in the surplus level, so inf_x p(x) = p(0).
class PremiumRule {
public:
    static PremiumRule constant(double p) {
        if (!(p > 0.0)) throw ConfigError("premium: p must be > 0");
        return PremiumRule(p, 0.0);
    }

    /// p(x) = p + i x with interest force i >= 0.
    static PremiumRule affine(double p, double interest) {
        if (!(p > 0.0)) throw ConfigError("premium: p must be > 0");
        if (!(interest >= 0.0)) throw ConfigError("premium: interest must be >= 0");
        return PremiumRule(p, interest);
    }

    double operator()(double x) const { return base_ + interest_ * x; }
    double base() const { return base_; }           // p(0), also inf_x p(x)
    double interest() const { return interest_; }
    double lipschitz() const { return interest_; }  // C(p)

private:
    PremiumRule(double base, double interest) : base_(base), interest_(interest) {}
    double base_;
    double interest_;
};

/// Volatility rule; constant in this version. Carries its derivative and
/// Lipschitz constant so smooth bounded rules can be added without touching
/// the call sites.
class VolatilityRule {
public:
    static VolatilityRule constant(double sigma) {
        if (!(sigma >= 0.0)) throw ConfigError("volatility: sigma must be >= 0");
        return VolatilityRule(sigma);
    }

    double operator()(double) const { return sigma_; }
    double derivative(double) const { return 0.0; }
    double bound() const { return sigma_; }      // sup_x sigma(x)
    double lipschitz() const { return 0.0; }     // C(sigma)
    double value() const { return sigma_; }

private:
    explicit VolatilityRule(double sigma) : sigma_(sigma) {}
    double sigma_;
};

/// Surplus dynamics dX = p(X) dt + sigma(X) dW - dL.
struct RiskModel {
    PremiumRule premium;
    VolatilityRule volatility;
    JumpModel jumps;
};

/// Drift of the Siegmund-dual reflected process: p*(x) = -p(x) - sigma sigma'.
inline double dual_drift(const RiskModel& m, double x) {
    if (!(x >= 0.0)) throw DomainError("dual_drift: x must be >= 0");
    return -m.premium(x) - m.volatility(x) * m.volatility.derivative(x);
}

/// phi(lambda, x) = p*(x) lambda + sigma(x)^2 lambda^2 / 2 + kappa(lambda).
inline double phi_eval(const RiskModel& m, double lambda, double x) {
    if (!(x >= 0.0)) throw DomainError("phi_eval: x must be >= 0");
    const double sig = m.volatility(x);
    return dual_drift(m, x) * lambda + 0.5 * sig * sig * lambda * lambda +
           m.jumps.levy_exponent(lambda, 0);
}

/// Phi(lambda) = -sup_{x>=0} phi(lambda, x) and its first two derivatives.
///
/// For nondecreasing premium rules the supremum is attained at x = 0, so
/// Phi(lambda) = p(0) lambda - sigma^2 lambda^2 / 2 - kappa(lambda); an
/// affine rule therefore yields the same Phi as the constant rule p(0).
inline double big_phi(const RiskModel& m, double lambda, int order = 0) {
    const double p0 = m.premium.base();
    const double sig = m.volatility.value();
    if (order == 0) {
        return p0 * lambda - 0.5 * sig * sig * lambda * lambda -
               m.jumps.levy_exponent(lambda, 0);
    }
    if (order == 1) return p0 - sig * sig * lambda - m.jumps.levy_exponent(lambda, 1);
    if (order == 2) return -sig * sig - m.jumps.levy_exponent(lambda, 2);
    throw ConfigError("big_phi: order must be 0, 1 or 2");
}

/// Net benefit condition: inf_x p(x) > m(mu), strictly. Equivalent to
/// Phi'(0) > 0 and hence to the existence of a positive rate.
inline bool net_profit_check(const RiskModel& m) {
    return m.premium.base() > m.jumps.mean_jump_rate();
}

}  // namespace levyruin
