#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "levyruin/errors.hpp"
#include "levyruin/rate_solver.hpp"
#include "levyruin/simulate.hpp"

namespace levyruin {

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_paths = 0;
    double ci_lo = 0.0;  // mean - 1.96 se
    double ci_hi = 0.0;
};

namespace detail {

inline MCEstimate make_estimate(double mean, double se, std::int64_t n) {
    return {mean, se, n, mean - 1.96 * se, mean + 1.96 * se};
}

inline MCEstimate binomial_estimate(double count, std::int64_t n) {
    const double p = count / static_cast<double>(n);
    const double se = std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
    return make_estimate(p, se, n);
}

// Disjoint stream families per estimator purpose, so estimates drawn from the
// same seed are mutually independent yet individually reproducible.
constexpr std::uint64_t kStreamSurplus = 0x01ull << 56;
constexpr std::uint64_t kStreamDual = 0x02ull << 56;
constexpr std::uint64_t kStreamStationary = 0x03ull << 56;

inline std::int64_t grid_index(double t, const SimConfig& cfg) {
    const auto i = static_cast<std::int64_t>(std::llround(t / cfg.step));
    if (std::abs(t - static_cast<double>(i) * cfg.step) > 1e-9 * std::max(1.0, t) || i < 0) {
        throw ConfigError("estimator: evaluation time must lie on the simulation grid");
    }
    return i;
}

struct GridCapture {
    std::span<const std::int64_t> idx;  // sorted capture indices
    double* out;
    std::size_t pos = 0;
    void grid_point(std::int64_t i, double, double y, double) {
        if (pos < idx.size() && i == idx[pos]) {
            out[pos] = y;
            ++pos;
        }
    }
    void event_point(double, double, double) {}
};

struct StationaryAccum {
    double burn_start;
    std::span<const double> levels;
    std::span<const double> lambdas;
    std::vector<double>* tail_sums;
    std::vector<double>* exp_sums;
    std::int64_t count = 0;
    void grid_point(std::int64_t, double t, double y, double) {
        if (t < burn_start) return;
        ++count;
        for (std::size_t j = 0; j < levels.size(); ++j) {
            (*tail_sums)[j] += (y >= levels[j]) ? 1.0 : 0.0;
        }
        for (std::size_t j = 0; j < lambdas.size(); ++j) {
            (*exp_sums)[j] += std::exp(lambdas[j] * y);
        }
    }
    void event_point(double, double, double) {}
};

}  // namespace detail

/// psi_hat(u, T) on a whole grid of horizons from one batch of paths
/// (common random numbers across T).
inline std::vector<MCEstimate> ruin_prob_curve(const RiskModel& m, double u,
                                               std::span<const double> T_grid,
                                               const SimConfig& cfg) {
    if (!(u >= 0.0)) throw ConfigError("ruin_prob_curve: u must be >= 0");
    if (T_grid.empty()) throw ConfigError("ruin_prob_curve: empty horizon grid");
    double t_max = 0.0;
    for (const double t : T_grid) {
        if (!(t > 0.0)) throw ConfigError("ruin_prob_curve: horizons must be > 0");
        t_max = std::max(t_max, t);
    }
    SimConfig run_cfg = cfg;
    run_cfg.horizon = t_max;
    run_cfg.absorb_at_ruin = true;
    const auto rs = detail::resolve_model(m, run_cfg, false);
    detail::n_cells(run_cfg);

    std::vector<double> ruin_times(static_cast<std::size_t>(cfg.n_paths));
    for (std::int64_t i = 0; i < cfg.n_paths; ++i) {
        RandomStream rng(cfg.seed, detail::kStreamSurplus | static_cast<std::uint64_t>(i));
        const auto out = detail::run_surplus(rs, u, run_cfg, rng, detail::NullSurplusSink{});
        ruin_times[static_cast<std::size_t>(i)] =
            out.ruined ? out.ruin_time : std::numeric_limits<double>::infinity();
    }
    std::vector<MCEstimate> est;
    est.reserve(T_grid.size());
    for (const double t : T_grid) {
        const double tol = t + 1e-9 * std::max(1.0, t);
        double count = 0.0;
        for (const double rt : ruin_times) count += (rt <= tol) ? 1.0 : 0.0;
        est.push_back(detail::binomial_estimate(count, cfg.n_paths));
    }
    return est;
}

/// Fraction of surplus paths ruined by time T, with binomial standard error.
inline MCEstimate ruin_prob_finite(const RiskModel& m, double u, double T,
                                   const SimConfig& cfg) {
    const double grid[1] = {T};
    return ruin_prob_curve(m, u, grid, cfg)[0];
}

/// P(Y(T) >= u_j) for every level and horizon from one batch of dual paths
/// started at Y(0) = 0. Result is indexed [horizon][level].
inline std::vector<std::vector<MCEstimate>> dual_tail_table(const RiskModel& m,
                                                            std::span<const double> levels,
                                                            std::span<const double> T_grid,
                                                            const SimConfig& cfg) {
    if (levels.empty() || T_grid.empty()) throw ConfigError("dual_tail_table: empty grid");
    for (const double u : levels) {
        if (!(u >= 0.0)) throw ConfigError("dual_tail_table: levels must be >= 0");
    }
    SimConfig run_cfg = cfg;
    run_cfg.horizon = *std::max_element(T_grid.begin(), T_grid.end());
    const auto rs = detail::resolve_model(m, run_cfg, true);
    detail::n_cells(run_cfg);

    std::vector<std::int64_t> idx;
    idx.reserve(T_grid.size());
    for (const double t : T_grid) idx.push_back(detail::grid_index(t, run_cfg));
    std::vector<std::size_t> order(idx.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return idx[a] < idx[b];
    });
    std::vector<std::int64_t> sorted_idx(idx.size());
    for (std::size_t j = 0; j < order.size(); ++j) sorted_idx[j] = idx[order[j]];

    std::vector<std::vector<double>> counts(T_grid.size(),
                                            std::vector<double>(levels.size(), 0.0));
    std::vector<double> snapshot(sorted_idx.size());
    for (std::int64_t i = 0; i < cfg.n_paths; ++i) {
        RandomStream rng(cfg.seed, detail::kStreamDual | static_cast<std::uint64_t>(i));
        detail::GridCapture cap{sorted_idx, snapshot.data()};
        detail::run_dual(rs, 0.0, run_cfg, rng, cap);
        for (std::size_t j = 0; j < order.size(); ++j) {
            const double y = snapshot[j];
            auto& row = counts[order[j]];
            for (std::size_t l = 0; l < levels.size(); ++l) {
                row[l] += (y >= levels[l]) ? 1.0 : 0.0;
            }
        }
    }
    std::vector<std::vector<MCEstimate>> est(T_grid.size());
    for (std::size_t j = 0; j < T_grid.size(); ++j) {
        est[j].reserve(levels.size());
        for (std::size_t l = 0; l < levels.size(); ++l) {
            est[j].push_back(detail::binomial_estimate(counts[j][l], cfg.n_paths));
        }
    }
    return est;
}

/// P(Y(T) >= u) for the dual started at 0; equals psi(u, T) by duality.
inline MCEstimate dual_tail_prob(const RiskModel& m, double u, double T, const SimConfig& cfg) {
    const double levels[1] = {u};
    const double grid[1] = {T};
    return dual_tail_table(m, levels, grid, cfg)[0][0];
}

/// Joint long-run estimates from the stationary regime of the dual path:
/// tail probabilities P(Y >= u) and exponential moments (pi, V_lambda).
/// Time averages over [burn_in, horizon], replicated for honest error bars.
struct StationaryEstimates {
    std::vector<MCEstimate> tail_probs;
    std::vector<MCEstimate> exp_moments;
};

inline StationaryEstimates stationary_dual_estimates(const RiskModel& m,
                                                     std::span<const double> levels,
                                                     std::span<const double> lambdas,
                                                     const SimConfig& cfg, double burn_in,
                                                     int replicates = 10) {
    if (!net_profit_check(m)) {
        throw NonErgodic("stationary estimate: net benefit condition fails, dual is not ergodic");
    }
    if (!(burn_in > 0.0)) throw ConfigError("stationary estimate: burn_in must be > 0");
    if (!(burn_in < cfg.horizon)) {
        throw ConfigError("stationary estimate: burn_in must be < horizon");
    }
    if (replicates < 2) throw ConfigError("stationary estimate: need at least 2 replicates");
    for (const double lam : lambdas) {
        if (lam < 0.0) throw DomainError("stationary estimate: lambda must be >= 0");
        if (lam > 0.0 && !(big_phi(m, lam, 0) > 0.0)) {
            throw DomainError("stationary estimate: Phi(lambda) must be positive");
        }
    }
    const auto rs = detail::resolve_model(m, cfg, true);
    SimConfig run_cfg = cfg;

    const auto n_lev = levels.size();
    const auto n_lam = lambdas.size();
    std::vector<std::vector<double>> rep_tails(n_lev);
    std::vector<std::vector<double>> rep_moments(n_lam);
    for (int r = 0; r < replicates; ++r) {
        RandomStream rng(cfg.seed, detail::kStreamStationary | static_cast<std::uint64_t>(r));
        std::vector<double> tail_sums(n_lev, 0.0);
        std::vector<double> exp_sums(n_lam, 0.0);
        detail::StationaryAccum acc{burn_in, levels, lambdas, &tail_sums, &exp_sums};
        detail::run_dual(rs, 0.0, run_cfg, rng, acc);
        if (acc.count == 0) throw ConfigError("stationary estimate: empty averaging window");
        for (std::size_t j = 0; j < n_lev; ++j) {
            rep_tails[j].push_back(tail_sums[j] / static_cast<double>(acc.count));
        }
        for (std::size_t j = 0; j < n_lam; ++j) {
            rep_moments[j].push_back(exp_sums[j] / static_cast<double>(acc.count));
        }
    }
    auto combine = [&](const std::vector<double>& reps) {
        double mean = 0.0;
        for (const double v : reps) mean += v;
        mean /= static_cast<double>(reps.size());
        double var = 0.0;
        for (const double v : reps) var += (v - mean) * (v - mean);
        var /= static_cast<double>(reps.size() - 1);
        const double se = std::sqrt(var / static_cast<double>(reps.size()));
        return detail::make_estimate(mean, se, static_cast<std::int64_t>(reps.size()));
    };
    StationaryEstimates out;
    out.tail_probs.reserve(n_lev);
    out.exp_moments.reserve(n_lam);
    for (std::size_t j = 0; j < n_lev; ++j) out.tail_probs.push_back(combine(rep_tails[j]));
    for (std::size_t j = 0; j < n_lam; ++j) out.exp_moments.push_back(combine(rep_moments[j]));
    return out;
}

/// (pi, V_lambda): long-run average of e^{lambda Y(t)}.
inline MCEstimate stationary_exp_moment(const RiskModel& m, double lambda, const SimConfig& cfg,
                                        double burn_in, int replicates = 10) {
    const double lams[1] = {lambda};
    return stationary_dual_estimates(m, {}, lams, cfg, burn_in, replicates).exp_moments[0];
}

/// psi(u) estimated as the stationary dual tail P(Y(inf) >= u).
inline MCEstimate ultimate_ruin_prob(const RiskModel& m, double u, const SimConfig& cfg,
                                     double burn_in, int replicates = 10) {
    if (!(u >= 0.0)) throw ConfigError("ultimate_ruin_prob: u must be >= 0");
    const double levels[1] = {u};
    return stationary_dual_estimates(m, levels, {}, cfg, burn_in, replicates).tail_probs[0];
}

/// One horizon row of the exponential-bound check
/// 0 <= psi(u) - psi(u,T) <= (1 + (pi, V_lambda)) e^{-kT}.
struct BoundRow {
    double T = 0.0;
    double psi_T = 0.0;     // psi_hat(u, T)
    double psi_T_se = 0.0;
    double gap = 0.0;       // psi_hat(u) - psi_hat(u, T)
    double bound = 0.0;     // (1 + c_hat) e^{-kT}
    double slack = 0.0;     // 3 * combined standard error for the upper check
    bool pass_upper = false;
    bool pass_lower = false;
    bool pass() const { return pass_upper && pass_lower; }
};

struct BoundReport {
    double u = 0.0;
    double lambda = 0.0;  // Lyapunov exponent used for V_lambda
    double k = 0.0;
    MCEstimate psi_inf;   // psi_hat(u)
    MCEstimate c_hat;     // (pi, V_lambda)
    std::vector<BoundRow> rows;
    bool all_pass = false;
};

struct VerifyOptions {
    double burn_in = 0.0;   // 0: default 10/k time units
    double window = 0.0;    // averaging window after burn-in; 0: default 40/k
    int replicates = 10;
    double lambda = 0.0;    // 0: evaluate V_lambda at lambda_star
};

/// Monte Carlo check of the exponential bound at every horizon in T_grid.
/// Pass/fail uses 3-sigma slack on the combined standard errors.
inline BoundReport verify_bound(const RiskModel& m, double u, std::span<const double> T_grid,
                                const SimConfig& cfg, const VerifyOptions& opts = {}) {
    const RateResult rate = solve_rate(m);
    const double lambda = opts.lambda > 0.0 ? opts.lambda : rate.lambda_star;
    const double k = opts.lambda > 0.0 ? big_phi(m, opts.lambda, 0) : rate.k;
    if (!(k > 0.0)) throw DomainError("verify_bound: Phi(lambda) must be positive");

    const double burn_in = opts.burn_in > 0.0 ? opts.burn_in : 10.0 / k;
    const double window = opts.window > 0.0 ? opts.window : 40.0 / k;
    SimConfig stat_cfg = cfg;
    stat_cfg.horizon = cfg.step * std::ceil((burn_in + window) / cfg.step);
    const double levels[1] = {u};
    const double lams[1] = {lambda};
    const auto stat =
        stationary_dual_estimates(m, levels, lams, stat_cfg, burn_in, opts.replicates);

    const auto psi_T = ruin_prob_curve(m, u, T_grid, cfg);

    BoundReport report;
    report.u = u;
    report.lambda = lambda;
    report.k = k;
    report.psi_inf = stat.tail_probs[0];
    report.c_hat = stat.exp_moments[0];
    report.rows.reserve(T_grid.size());
    report.all_pass = true;
    for (std::size_t j = 0; j < T_grid.size(); ++j) {
        BoundRow row;
        row.T = T_grid[j];
        row.psi_T = psi_T[j].mean;
        row.psi_T_se = psi_T[j].std_error;
        row.gap = report.psi_inf.mean - row.psi_T;
        const double decay = std::exp(-k * row.T);
        row.bound = (1.0 + report.c_hat.mean) * decay;
        const double se_comb =
            report.psi_inf.std_error + row.psi_T_se + report.c_hat.std_error * decay;
        row.slack = 3.0 * se_comb;
        row.pass_upper = row.gap <= row.bound + row.slack;
        row.pass_lower = row.gap >= -3.0 * (report.psi_inf.std_error + row.psi_T_se);
        report.all_pass = report.all_pass && row.pass();
        report.rows.push_back(row);
    }
    return report;
}

/// One cell of the duality cross-check |psi_hat(u,T) - P_hat(Y(T) >= u)|.
struct DualityRow {
    double u = 0.0;
    double T = 0.0;
    double psi_T = 0.0;
    double psi_T_se = 0.0;
    double dual_tail = 0.0;
    double dual_se = 0.0;
    double diff = 0.0;
    double slack = 0.0;  // 3 * (se1 + se2)
    bool pass = false;
};

struct DualityReport {
    std::vector<DualityRow> rows;
    bool all_pass = false;
};

/// Siegmund-duality cross-check: finite-horizon ruin frequencies against
/// dual tail frequencies on a (u, T) grid.
inline DualityReport duality_check(const RiskModel& m, std::span<const double> levels,
                                   std::span<const double> T_grid, const SimConfig& cfg) {
    const auto tails = dual_tail_table(m, levels, T_grid, cfg);
    DualityReport report;
    report.all_pass = true;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const auto psi = ruin_prob_curve(m, levels[l], T_grid, cfg);
        for (std::size_t j = 0; j < T_grid.size(); ++j) {
            DualityRow row;
            row.u = levels[l];
            row.T = T_grid[j];
            row.psi_T = psi[j].mean;
            row.psi_T_se = psi[j].std_error;
            row.dual_tail = tails[j][l].mean;
            row.dual_se = tails[j][l].std_error;
            row.diff = std::abs(row.psi_T - row.dual_tail);
            row.slack = 3.0 * (row.psi_T_se + row.dual_se);
            row.pass = row.diff <= row.slack;
            report.all_pass = report.all_pass && row.pass;
            report.rows.push_back(row);
        }
    }
    return report;
}

}  // namespace levyruin
