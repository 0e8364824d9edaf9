#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace levyruin {

/// 7-point Gauss-Legendre rule on [-1,1]; exact for polynomials up to
/// degree 13, which on the short log-spaced panels used for Levy-measure
/// restrictions gives close to machine precision.
struct GaussLegendre7 {
    static constexpr std::array<double, 7> nodes = {
        -0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
        0.0,
        0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
    static constexpr std::array<double, 7> weights = {
        0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
        0.4179591836734694,
        0.3818300505051189, 0.2797053914892766, 0.1294849661688697};
};

/// Integrate f over consecutive panels [breaks[i], breaks[i+1]].
template <class F>
double integrate_panels(F&& f, const std::vector<double>& breaks) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
        const double half = 0.5 * (breaks[i + 1] - breaks[i]);
        double panel = 0.0;
        for (std::size_t q = 0; q < GaussLegendre7::nodes.size(); ++q) {
            panel += GaussLegendre7::weights[q] * f(mid + half * GaussLegendre7::nodes[q]);
        }
        total += half * panel;
    }
    return total;
}

}  // namespace levyruin
