#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "levyruin/errors.hpp"
#include "levyruin/risk_model.hpp"
#include "levyruin/rng.hpp"

namespace levyruin {

struct SimConfig {
    double step = 0.01;           // Euler grid width h
    double horizon = 1.0;         // T; must be an integer multiple of step
    std::int64_t n_paths = 1;
    std::uint64_t seed = 0;
    double eps = 1e-3;            // truncation level for infinite-activity jumps
    bool absorb_at_ruin = true;   // surplus paths freeze once the level drops to 0
};

/// One simulated trajectory. `times` carries the grid nodes plus, for
/// finite-activity jump models, the exact jump epochs; `values` is the level
/// immediately after each node. Dual paths also carry the cumulative
/// reflection compensator R(t), aligned with `times`.
struct PathSample {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> reflection;
    std::optional<double> ruin_time;

    /// Level at the last recorded node with time <= t.
    double value_at(double t) const {
        auto it = std::upper_bound(times.begin(), times.end(), t);
        if (it == times.begin()) return values.front();
        return values[static_cast<std::size_t>(it - times.begin()) - 1];
    }
};

/// Discrete Skorohod map: y_i = z_i + max(0, max_{j<=i}(-z_j)), together with
/// the nondecreasing compensator r. r increases only at indices where y = 0,
/// and y - r reproduces the input.
inline std::pair<std::vector<double>, std::vector<double>> skorohod_map(
    std::span<const double> z) {
    if (z.empty()) throw ConfigError("skorohod_map: empty input");
    std::vector<double> y(z.size());
    std::vector<double> r(z.size());
    double running = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        running = std::max(running, -z[i]);
        r[i] = running;
        y[i] = z[i] + running;
    }
    return {std::move(y), std::move(r)};
}

namespace detail {

/// Largest T with C(p*) T + 2 C(sigma) sqrt(T) < 1.
inline double contraction_horizon_from(double cp, double cs) {
    if (cp == 0.0 && cs == 0.0) return std::numeric_limits<double>::infinity();
    if (cs == 0.0) return 1.0 / cp;
    if (cp == 0.0) {
        const double s = 1.0 / (2.0 * cs);
        return s * s;
    }
    // cp s^2 + 2 cs s - 1 = 0 in s = sqrt(T)
    const double s = (-2.0 * cs + std::sqrt(4.0 * cs * cs + 4.0 * cp)) / (2.0 * cp);
    return s * s;
}

}  // namespace detail

/// Largest horizon T with C_T = C(p*) T + 2 C(sigma) sqrt(T) < 1, the window
/// on which the pathwise fixed-point construction is contractive. +inf when
/// both Lipschitz constants vanish.
inline double contraction_horizon(const RiskModel& m) {
    // C(p*) = C(p) for constant sigma
    return detail::contraction_horizon_from(m.premium.lipschitz(), m.volatility.lipschitz());
}

namespace detail {

inline std::int64_t n_cells(const SimConfig& cfg) {
    if (!(cfg.step > 0.0)) throw ConfigError("sim config: step must be > 0");
    if (!(cfg.horizon >= cfg.step)) throw ConfigError("sim config: horizon must be >= step");
    if (cfg.n_paths < 1) throw ConfigError("sim config: n_paths must be >= 1");
    if (!(cfg.eps >= 0.0)) throw ConfigError("sim config: eps must be >= 0");
    const double ratio = cfg.horizon / cfg.step;
    const auto n = static_cast<std::int64_t>(std::llround(ratio));
    if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio)) {
        throw ConfigError("sim config: horizon must be an integer multiple of step");
    }
    return n;
}

/// Model as actually simulated. Infinite-activity jumps with eps > 0 are
/// replaced by their restriction to [eps, 1/eps] with volatility sigma + eps,
/// for the surplus and the dual alike, so the simulated pair stays exactly
/// Siegmund-dual. With eps == 0 the surplus uses exact per-cell increments;
/// the dual requires eps > 0.
struct ResolvedSim {
    PremiumRule premium;
    double sigma;
    JumpModel jumps;
    bool cp;  // finite-activity driving: exact jump epochs within cells
};

inline ResolvedSim resolve_model(const RiskModel& m, const SimConfig& cfg, bool dual) {
    if (m.jumps.finite_activity()) {
        return {m.premium, m.volatility.value(), m.jumps, true};
    }
    if (cfg.eps > 0.0) {
        return {m.premium, m.volatility.value() + cfg.eps, m.jumps.truncate(cfg.eps), true};
    }
    if (dual) {
        throw ConfigError("simulate_dual: infinite-activity jumps require eps > 0");
    }
    return {m.premium, m.volatility.value(), m.jumps, false};
}

struct NullSurplusSink {
    static constexpr bool keeps_frozen_points = false;
    void grid_point(std::int64_t, double, double) {}
    void event_point(double, double) {}
};

struct NullDualSink {
    void grid_point(std::int64_t, double, double, double) {}
    void event_point(double, double, double) {}
};

struct SurplusOutcome {
    double final_value = 0.0;
    double ruin_time = std::numeric_limits<double>::quiet_NaN();
    bool ruined = false;
};

/// Euler scheme X <- X + p(X) dt + sigma sqrt(dt) Z - dL per grid cell; for
/// finite-activity models the jump epochs inside a cell are simulated exactly
/// and ruin is tested immediately after every jump.
template <class Sink>
SurplusOutcome run_surplus(const ResolvedSim& rs, double u, const SimConfig& cfg,
                           RandomStream& rng, Sink&& sink) {
    const std::int64_t n = n_cells(cfg);
    const double h = cfg.step;
    const double sigma = rs.sigma;
    const CompoundPoisson* cp = rs.cp ? rs.jumps.compound_poisson_or_null() : nullptr;
    const double intensity = cp ? cp->intensity : 0.0;

    double x = u;
    bool ruined = false;
    bool frozen = false;
    double ruin_time = std::numeric_limits<double>::quiet_NaN();
    sink.grid_point(0, 0.0, x);
    if (x <= 0.0) {
        ruined = true;
        ruin_time = 0.0;
        frozen = cfg.absorb_at_ruin;
    }

    auto advance = [&](double dt) {
        if (dt <= 0.0) return;
        double dx = rs.premium(x) * dt;
        if (sigma > 0.0) dx += sigma * std::sqrt(dt) * rng.normal();
        x += dx;
    };

    double next_jump = (cp && intensity > 0.0) ? rng.exponential(intensity)
                                               : std::numeric_limits<double>::infinity();
    for (std::int64_t i = 1; i <= n; ++i) {
        const double t1 = (i == n) ? cfg.horizon : static_cast<double>(i) * h;
        if (!frozen) {
            double tc = static_cast<double>(i - 1) * h;
            if (rs.cp) {
                while (next_jump <= t1 && !frozen) {
                    advance(next_jump - tc);
                    tc = next_jump;
                    x -= cp->claims.sample(rng);
                    sink.event_point(tc, x);
                    if (!ruined && x <= 0.0) {
                        ruined = true;
                        ruin_time = tc;
                        frozen = cfg.absorb_at_ruin;
                    }
                    next_jump = tc + rng.exponential(intensity);
                }
                if (!frozen) advance(t1 - tc);
            } else {
                advance(h);
                x -= rs.jumps.sample_increment(h, rng);
            }
            if (!frozen && !ruined && x <= 0.0) {
                ruined = true;
                ruin_time = t1;
                frozen = cfg.absorb_at_ruin;
            }
        } else if constexpr (!std::decay_t<Sink>::keeps_frozen_points) {
            break;
        }
        sink.grid_point(i, t1, x);
    }
    return {x, ruin_time, ruined};
}

/// Dual reflected path: drift p*, upward jumps, incremental Skorohod
/// recursion y <- max(0, y + increment) with the compensator accumulated.
template <class Sink>
double run_dual(const ResolvedSim& rs, double y0, const SimConfig& cfg, RandomStream& rng,
                Sink&& sink) {
    const std::int64_t n = n_cells(cfg);
    const double h = cfg.step;
    const double sigma = rs.sigma;
    const CompoundPoisson* cp = rs.jumps.compound_poisson_or_null();
    const double intensity = cp ? cp->intensity : 0.0;

    double y = y0;
    double refl = 0.0;
    sink.grid_point(0, 0.0, y, refl);

    auto advance = [&](double dt) {
        if (dt <= 0.0) return;
        double dy = -rs.premium(y) * dt;  // p*(y) = -p(y) for constant sigma
        if (sigma > 0.0) dy += sigma * std::sqrt(dt) * rng.normal();
        const double next = y + dy;
        if (next < 0.0) {
            refl += -next;
            y = 0.0;
        } else {
            y = next;
        }
    };

    double next_jump = (intensity > 0.0) ? rng.exponential(intensity)
                                         : std::numeric_limits<double>::infinity();
    for (std::int64_t i = 1; i <= n; ++i) {
        const double t1 = (i == n) ? cfg.horizon : static_cast<double>(i) * h;
        double tc = static_cast<double>(i - 1) * h;
        while (next_jump <= t1) {
            advance(next_jump - tc);
            tc = next_jump;
            y += cp->claims.sample(rng);
            sink.event_point(tc, y, refl);
            next_jump = tc + rng.exponential(intensity);
        }
        advance(t1 - tc);
        sink.grid_point(i, t1, y, refl);
    }
    return y;
}

struct SurplusRecorder {
    static constexpr bool keeps_frozen_points = true;
    PathSample* out;
    void grid_point(std::int64_t, double t, double x) {
        out->times.push_back(t);
        out->values.push_back(x);
    }
    void event_point(double t, double x) { grid_point(0, t, x); }
};

struct DualRecorder {
    PathSample* out;
    void grid_point(std::int64_t, double t, double y, double r) {
        out->times.push_back(t);
        out->values.push_back(y);
        out->reflection.push_back(r);
    }
    void event_point(double t, double y, double r) { grid_point(0, t, y, r); }
};

}  // namespace detail

inline PathSample simulate_surplus(const RiskModel& m, double u, const SimConfig& cfg,
                                   RandomStream& rng) {
    if (!(u >= 0.0)) throw ConfigError("simulate_surplus: u must be >= 0");
    const auto rs = detail::resolve_model(m, cfg, false);
    PathSample path;
    const std::int64_t n = detail::n_cells(cfg);
    path.times.reserve(static_cast<std::size_t>(n) + 1);
    path.values.reserve(static_cast<std::size_t>(n) + 1);
    const auto outcome = detail::run_surplus(rs, u, cfg, rng, detail::SurplusRecorder{&path});
    if (outcome.ruined) path.ruin_time = outcome.ruin_time;
    return path;
}

inline PathSample simulate_dual(const RiskModel& m, double y0, const SimConfig& cfg,
                                RandomStream& rng) {
    if (!(y0 >= 0.0)) throw ConfigError("simulate_dual: y0 must be >= 0");
    const auto rs = detail::resolve_model(m, cfg, true);
    PathSample path;
    const std::int64_t n = detail::n_cells(cfg);
    path.times.reserve(static_cast<std::size_t>(n) + 1);
    path.values.reserve(static_cast<std::size_t>(n) + 1);
    path.reflection.reserve(static_cast<std::size_t>(n) + 1);
    detail::run_dual(rs, y0, cfg, rng, detail::DualRecorder{&path});
    return path;
}

/// Two surplus paths driven by the identical Brownian increments and the
/// identical jump stream. For nondecreasing premium rules and constant sigma
/// the discrete order x1 >= x2 is preserved exactly at every node until the
/// lower path is absorbed.
inline std::pair<PathSample, PathSample> simulate_coupled(const RiskModel& m, double x1,
                                                          double x2, const SimConfig& cfg,
                                                          RandomStream& rng) {
    if (!(x1 >= x2) || !(x2 >= 0.0)) {
        throw ConfigError("simulate_coupled: require x1 >= x2 >= 0");
    }
    const auto rs = detail::resolve_model(m, cfg, false);
    const std::int64_t n = detail::n_cells(cfg);
    const double h = cfg.step;
    const double sigma = rs.sigma;
    const CompoundPoisson* cp = rs.cp ? rs.jumps.compound_poisson_or_null() : nullptr;
    const double intensity = cp ? cp->intensity : 0.0;

    PathSample a;
    PathSample b;
    struct State {
        double x;
        bool frozen = false;
        bool ruined = false;
        double ruin_time = std::numeric_limits<double>::quiet_NaN();
    };
    State s1{x1};
    State s2{x2};

    auto record = [&](PathSample& p, double t, double x) {
        p.times.push_back(t);
        p.values.push_back(x);
    };
    auto mark = [&](State& s, double t) {
        if (!s.ruined && s.x <= 0.0) {
            s.ruined = true;
            s.ruin_time = t;
            s.frozen = cfg.absorb_at_ruin;
        }
    };
    record(a, 0.0, s1.x);
    record(b, 0.0, s2.x);
    mark(s1, 0.0);
    mark(s2, 0.0);

    auto advance_both = [&](double dt) {
        if (dt <= 0.0) return;
        const double z = sigma > 0.0 ? sigma * std::sqrt(dt) * rng.normal() : 0.0;
        if (!s1.frozen) s1.x += rs.premium(s1.x) * dt + z;
        if (!s2.frozen) s2.x += rs.premium(s2.x) * dt + z;
    };

    double next_jump = (cp && intensity > 0.0) ? rng.exponential(intensity)
                                               : std::numeric_limits<double>::infinity();
    for (std::int64_t i = 1; i <= n; ++i) {
        const double t1 = (i == n) ? cfg.horizon : static_cast<double>(i) * h;
        double tc = static_cast<double>(i - 1) * h;
        if (rs.cp) {
            while (next_jump <= t1) {
                advance_both(next_jump - tc);
                tc = next_jump;
                const double claim = cp->claims.sample(rng);
                if (!s1.frozen) {
                    s1.x -= claim;
                    record(a, tc, s1.x);
                    mark(s1, tc);
                }
                if (!s2.frozen) {
                    s2.x -= claim;
                    record(b, tc, s2.x);
                    mark(s2, tc);
                }
                next_jump = tc + rng.exponential(intensity);
            }
            advance_both(t1 - tc);
        } else {
            const double inc = rs.jumps.sample_increment(h, rng);
            const double z = sigma > 0.0 ? sigma * std::sqrt(h) * rng.normal() : 0.0;
            if (!s1.frozen) s1.x += rs.premium(s1.x) * h + z - inc;
            if (!s2.frozen) s2.x += rs.premium(s2.x) * h + z - inc;
        }
        mark(s1, t1);
        mark(s2, t1);
        record(a, t1, s1.x);
        record(b, t1, s2.x);
    }
    if (s1.ruined) a.ruin_time = s1.ruin_time;
    if (s2.ruined) b.ruin_time = s2.ruin_time;
    return {std::move(a), std::move(b)};
}

}  // namespace levyruin
