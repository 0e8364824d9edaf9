// Acceptance suite: one criterion per function, one PASS/FAIL line each,
// run at the stated tolerances and scales. Exit code is the number of
// failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "levyruin/estimators.hpp"
#include "levyruin/rate_solver.hpp"
#include "levyruin/report_io.hpp"
#include "levyruin/simulate.hpp"
#include "levyruin/tables.hpp"
#include "oracles.hpp"
#include "paper_tables.hpp"

using namespace levyruin;
using tables::ClaimFamily;

namespace {

struct Check {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// 1. Table 1 reproduction: all 66 entries to 1e-5 absolute.
Check criterion1() {
    Check c;
    double worst = 0.0;
    for (std::size_t si = 0; si < tables::kSigmas.size(); ++si) {
        for (std::size_t ei = 0; ei < tables::kTable1Etas.size(); ++ei) {
            const auto r = solve_rate(tables::compound_poisson_scenario(
                ClaimFamily::Gamma, tables::kTable1Etas[ei], tables::kSigmas[si]));
            worst = std::max(worst, std::abs(r.k - paper_tables::kTable1[si][ei]));
        }
    }
    c.note("66 entries, max |dk| = " + fmt(worst));
    if (worst >= 1e-5) c.fail("exceeds 1e-5");
    return c;
}

// 2. Table 2 reproduction across the three claim laws.
Check criterion2() {
    Check c;
    const ClaimFamily families[] = {ClaimFamily::Exponential, ClaimFamily::Gamma,
                                    ClaimFamily::MixedExponential};
    double worst = 0.0;
    for (std::size_t si = 0; si < tables::kSigmas.size(); ++si) {
        for (std::size_t ei = 0; ei < tables::kLevyEtas.size(); ++ei) {
            for (std::size_t fi = 0; fi < 3; ++fi) {
                const auto r = solve_rate(tables::compound_poisson_scenario(
                    families[fi], tables::kLevyEtas[ei], tables::kSigmas[si]));
                worst = std::max(worst, std::abs(r.k - paper_tables::kTable2[si][ei][fi]));
            }
        }
    }
    c.note("99 entries, max |dk| = " + fmt(worst));
    if (worst >= 1e-5) c.fail("exceeds 1e-5");
    return c;
}

// 3. Subordinator-driven models: stationarity residual at lambda* below
// 1e-10 on the whole grid, closed-form reductions at sigma = 0 to 1e-10.
Check criterion3() {
    Check c;
    double worst_resid = 0.0;
    for (const double sigma : tables::kSigmas) {
        for (const double eta : tables::kLevyEtas) {
            for (int proc = 0; proc < 2; ++proc) {
                const RiskModel m = proc == 0 ? tables::gamma_process_scenario(eta, sigma)
                                              : tables::inverse_gaussian_scenario(eta, sigma);
                const auto r = solve_rate(m);
                worst_resid =
                    std::max(worst_resid, std::abs(stationarity_residual(m, r.lambda_star)));
            }
        }
    }
    c.note("max residual = " + fmt(worst_resid));
    if (worst_resid > 1e-10) c.fail("stationarity residual exceeds 1e-10");

    double worst_cf = 0.0;
    for (const double eta : tables::kLevyEtas) {
        const double p = 1.0 + eta;
        const auto gp = solve_rate(tables::gamma_process_scenario(eta, 0.0));
        worst_cf = std::max(worst_cf, std::abs(gp.lambda_star - (0.5 - 0.5 / p)));
        const auto ig = solve_rate(tables::inverse_gaussian_scenario(eta, 0.0));
        worst_cf = std::max(worst_cf, std::abs(ig.lambda_star - 0.5 * (1.0 - 1.0 / (p * p))));
        worst_cf = std::max(worst_cf, std::abs(ig.k - (p - 1.0) * (p - 1.0) / (2.0 * p)));
    }
    c.note("max closed-form gap = " + fmt(worst_cf));
    if (worst_cf > 1e-10) c.fail("closed-form reduction exceeds 1e-10");
    return c;
}

// 4. Golden-section + Newton solver vs an independent 2000-point grid scan.
Check criterion4() {
    Check c;
    std::vector<RiskModel> battery;
    for (const auto family :
         {ClaimFamily::Exponential, ClaimFamily::Gamma, ClaimFamily::MixedExponential}) {
        for (const double eta : {0.1, 0.2, 0.3}) {
            for (const double sigma : {0.0, 2.0, 7.0}) {
                battery.push_back(tables::compound_poisson_scenario(family, eta, sigma));
            }
        }
    }
    battery.push_back(tables::gamma_process_scenario(0.1, 0.0));
    battery.push_back(tables::gamma_process_scenario(0.3, 5.0));
    battery.push_back(tables::inverse_gaussian_scenario(0.2, 1.0));

    double worst = 0.0;
    for (const auto& m : battery) {
        const auto r = solve_rate(m);
        const double lam0 = m.jumps.exponent_abscissa();
        const auto scan = oracle::grid_scan_max(
            [&](double l) { return big_phi(m, l, 0); }, 1e-8, lam0 - 1e-8, 2000);
        worst = std::max(worst, std::abs(r.k - scan.value));
    }
    c.note("30 scenarios, max |dk| = " + fmt(worst));
    if (worst >= 1e-8) c.fail("grid-scan disagreement exceeds 1e-8");
    return c;
}

// 5. Duality suite: one scenario per jump family, u in {1,3,5}, T in {1,5},
// 2e5 paths per side, h = 0.01, eps = 1e-3.
Check criterion5() {
    Check c;
    struct Scenario {
        const char* name;
        RiskModel model;
    };
    const Scenario scenarios[] = {
        {"compound_poisson",
         tables::compound_poisson_scenario(ClaimFamily::Exponential, 0.1, 0.0)},
        {"gamma_process", tables::gamma_process_scenario(0.1, 0.0)},
        {"inverse_gaussian", tables::inverse_gaussian_scenario(0.1, 0.0)},
    };
    const double levels[] = {1.0, 3.0, 5.0};
    const double horizons[] = {1.0, 5.0};
    std::uint64_t seed = 1001;
    double worst_ratio = 0.0;
    for (const auto& sc : scenarios) {
        SimConfig cfg;
        cfg.n_paths = 200000;
        cfg.step = 0.01;
        cfg.eps = 1e-3;
        cfg.seed = seed++;
        const auto report = duality_check(sc.model, levels, horizons, cfg);
        for (const auto& row : report.rows) {
            worst_ratio = std::max(worst_ratio, row.slack > 0 ? row.diff / row.slack : 1e9);
            if (!row.pass) {
                std::ostringstream os;
                os << sc.name << " u=" << row.u << " T=" << row.T << " diff=" << row.diff
                   << " slack=" << row.slack;
                c.fail(os.str());
            }
        }
    }
    c.note("18 cells, max diff/slack = " + fmt(worst_ratio));
    return c;
}

// 6. Classical oracle: stationary dual tail vs the exponential-claims
// closed form (beta/(p delta)) e^{-(delta - beta/p) u}.
Check criterion6() {
    Check c;
    const auto model = tables::compound_poisson_scenario(ClaimFamily::Exponential, 0.1, 0.0);
    const double k = solve_rate(model).k;
    SimConfig cfg;
    cfg.step = 0.01;
    cfg.seed = 2001;
    const double burn_in = 10.0 / k;
    cfg.horizon = cfg.step * std::ceil((burn_in + 800.0 / k) / cfg.step);
    const double levels[] = {1.0, 3.0, 5.0};
    const auto est = stationary_dual_estimates(model, levels, {}, cfg, burn_in, 10);
    for (int i = 0; i < 3; ++i) {
        const double u = levels[i];
        const double want = (1.0 / 1.1) * std::exp(-(0.5 - 1.0 / 2.2) * u);
        const double diff = std::abs(est.tail_probs[i].mean - want);
        std::ostringstream os;
        os << "u=" << u << " |d|=" << fmt(diff) << " 3se=" << fmt(3.0 * est.tail_probs[i].std_error);
        c.note(os.str());
        if (diff >= 3.0 * est.tail_probs[i].std_error) c.fail("outside 3 stderr");
    }
    return c;
}

// 7. Bound suite on the Table-1 (eta = 0.1, sigma = 0) scenario at u = 5,
// T in {1,2,5,10,20}, plus the least-squares decay-rate floor.
Check criterion7() {
    Check c;
    const auto model = tables::compound_poisson_scenario(ClaimFamily::Gamma, 0.1, 0.0);
    SimConfig cfg;
    cfg.n_paths = 200000;
    cfg.step = 0.01;
    cfg.seed = 3001;
    const double horizons[] = {1.0, 2.0, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0};
    VerifyOptions opts;
    opts.window = 800.0 / 0.00319;
    const auto report = verify_bound(model, 5.0, horizons, cfg, opts);
    const double checked[] = {1.0, 2.0, 5.0, 10.0, 20.0};
    for (const auto& row : report.rows) {
        bool is_checked = false;
        for (const double t : checked) is_checked = is_checked || (t == row.T);
        if (!is_checked) continue;
        if (!row.pass_upper) c.fail("upper bound fails at T=" + fmt(row.T));
        if (!row.pass_lower) c.fail("gap negative beyond slack at T=" + fmt(row.T));
    }
    c.note("k=" + fmt(report.k) + " C_hat=" + fmt(1.0 + report.c_hat.mean));

    // empirical decay rate of the gap over T in [5, 20] is at least k
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& row : report.rows) {
        if (row.T >= 5.0 && row.gap > 0.0) {
            xs.push_back(row.T);
            ys.push_back(std::log(row.gap));
        }
    }
    if (xs.size() >= 3) {
        const auto fit = oracle::least_squares(xs, ys);
        const double rate = -fit.slope;
        c.note("lsq decay rate = " + fmt(rate) + " (se " + fmt(fit.slope_se) + ")");
        if (rate < report.k - 2.0 * fit.slope_se) c.fail("fitted decay below k - 2 se");
    } else {
        c.fail("too few positive gap points for the decay fit");
    }
    return c;
}

// 8. Property suites at the stated scales.
Check criterion8() {
    Check c;

    // kappa convexity and derivative consistency; m = kappa'(0); Phi(0) = 0
    // and concavity.
    const JumpModel jump_models[] = {
        JumpModel::compound_poisson(1.0, ClaimDistribution::gamma(2.0, 1.0)),
        JumpModel::compound_poisson(1.0, ClaimDistribution::exponential(0.5)),
        JumpModel::compound_poisson(1.0, ClaimDistribution::mixed_exponential(0.75, 0.75, 0.25)),
        JumpModel::gamma_process(0.5, 0.5),
        JumpModel::inverse_gaussian(1.0),
    };
    for (const auto& jm : jump_models) {
        const double lam0 = jm.exponent_abscissa();
        if (jm.levy_exponent(0.0, 0) != 0.0) c.fail("kappa(0) != 0");
        if (std::abs(jm.mean_jump_rate() - jm.levy_exponent(0.0, 1)) >
            1e-12 * std::max(1.0, jm.mean_jump_rate())) {
            c.fail("m(mu) != kappa'(0)");
        }
        const auto f = [&](double l) { return jm.levy_exponent(l, 0); };
        for (int i = 1; i <= 8; ++i) {
            const double lam = lam0 * i / 10.0;
            const double h = 3e-4 * (lam0 - lam);
            if (jm.levy_exponent(lam, 2) <= 0.0) c.fail("kappa'' not positive");
            if (std::abs(jm.levy_exponent(lam, 1) - oracle::fd_first(f, lam, h)) >
                1e-6 * std::abs(jm.levy_exponent(lam, 1))) {
                c.fail("kappa' finite-difference mismatch");
            }
            if (std::abs(jm.levy_exponent(lam, 2) - oracle::fd_second(f, lam, h)) >
                1e-6 * std::abs(jm.levy_exponent(lam, 2))) {
                c.fail("kappa'' finite-difference mismatch");
            }
        }
    }
    for (const double sigma : {0.0, 1.0, 4.0}) {
        const auto m = tables::compound_poisson_scenario(ClaimFamily::Gamma, 0.1, sigma);
        if (big_phi(m, 0.0, 0) != 0.0) c.fail("Phi(0) != 0");
        for (int i = 0; i < 100; ++i) {
            const double lam = (i + 0.5) / 101.0;
            if (big_phi(m, lam, 2) >= 0.0) c.fail("Phi not strictly concave");
        }
    }

    // Skorohod invariants on 1e5 random sequences.
    {
        RandomStream rng(4001, 0);
        bool ok = true;
        for (int trial = 0; trial < 100000 && ok; ++trial) {
            const int n = 2 + static_cast<int>(rng.next_u64() % 31);
            std::vector<double> z(static_cast<std::size_t>(n));
            for (auto& v : z) v = 4.0 * rng.uniform01() - 2.0;
            const auto [y, r] = skorohod_map(z);
            double prev = 0.0;
            for (int i = 0; i < n; ++i) {
                ok = ok && y[i] >= 0.0 && r[i] >= prev &&
                     (r[i] == prev || y[i] == 0.0) && std::abs(y[i] - r[i] - z[i]) <= 4e-15;
                prev = r[i];
            }
        }
        if (!ok) c.fail("skorohod invariant violated");
    }

    // Coupled-path order preservation, 1e4 paths, constant sigma.
    {
        const RiskModel m{PremiumRule::affine(2.2, 0.05), VolatilityRule::constant(1.0),
                          JumpModel::compound_poisson(1.0, ClaimDistribution::exponential(0.5))};
        SimConfig cfg;
        cfg.step = 0.01;
        cfg.horizon = 2.0;
        std::int64_t violations = 0;
        for (std::uint64_t s = 0; s < 10000; ++s) {
            RandomStream rng(4002, s);
            const auto [a, b] = simulate_coupled(m, 3.0, 1.0, cfg, rng);
            const double stop = std::min(a.ruin_time.value_or(cfg.horizon),
                                         b.ruin_time.value_or(cfg.horizon));
            for (std::size_t i = 0; i < a.times.size() && a.times[i] <= stop; ++i) {
                if (a.values[i] < b.value_at(a.times[i])) ++violations;
            }
        }
        if (violations != 0) c.fail("coupled order violated on " + fmt(double(violations)) + " nodes");
    }

    // Truncation sweep target at eps = 1e-4 for both infinite-activity models.
    {
        const double eps_list[] = {1e-4};
        const auto gp = truncation_sweep(tables::gamma_process_scenario(0.1, 0.0), eps_list);
        const auto ig = truncation_sweep(tables::inverse_gaussian_scenario(0.1, 0.0), eps_list);
        c.note("sweep |k_eps - k|: gp=" + fmt(gp[0].abs_err) + " ig=" + fmt(ig[0].abs_err));
        if (gp[0].abs_err >= 1e-3) c.fail("gamma-process sweep error exceeds 1e-3");
        if (ig[0].abs_err >= 1e-3) c.fail("inverse-gaussian sweep error exceeds 1e-3");
    }

    // Seed determinism: identical seeds give byte-identical reports.
    {
        const auto model = tables::compound_poisson_scenario(ClaimFamily::Exponential, 0.1, 0.0);
        SimConfig cfg;
        cfg.n_paths = 2000;
        cfg.step = 0.05;
        cfg.seed = 4003;
        const double levels[] = {1.0, 3.0};
        const double horizons[] = {1.0, 5.0};
        std::ostringstream a;
        std::ostringstream b;
        duality_report_to_csv(duality_check(model, levels, horizons, cfg), a);
        duality_report_to_csv(duality_check(model, levels, horizons, cfg), b);
        if (a.str() != b.str()) c.fail("repeated run not byte-identical");
        RandomStream r1(4003, 77);
        RandomStream r2(4003, 77);
        const auto p1 = simulate_surplus(model, 5.0, cfg, r1);
        const auto p2 = simulate_surplus(model, 5.0, cfg, r2);
        if (p1.values != p2.values) c.fail("paths not bit-identical");
    }
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* label;
        Check (*run)();
        double budget_seconds;
    };
    const Criterion criteria[] = {
        {1, "table-1 reproduction (66 entries, 1e-5)", criterion1, 1.0},
        {2, "table-2 reproduction (99 entries, 1e-5)", criterion2, 1.0},
        {3, "subordinator stationarity + closed forms (1e-10)", criterion3, 1.0},
        {4, "solver vs 2000-point grid scan (1e-8, 30 scenarios)", criterion4, 5.0},
        {5, "duality suite (3 families, 2e5 paths/side)", criterion5, 600.0},
        {6, "classical ultimate-ruin oracle (3 levels)", criterion6, 300.0},
        {7, "exponential bound suite (u=5, 5 horizons)", criterion7, 600.0},
        {8, "property suites", criterion8, 120.0},
    };
    int failures = 0;
    for (const auto& cr : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Check result;
        try {
            result = cr.run();
        } catch (const std::exception& e) {
            result.fail(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > cr.budget_seconds) {
            result.fail("runtime " + fmt(secs) + "s exceeds budget " + fmt(cr.budget_seconds) +
                        "s");
        }
        std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", result.pass ? "PASS" : "FAIL",
                    cr.id, cr.label, secs, result.detail.empty() ? "" : " -- ",
                    result.detail.c_str());
        std::fflush(stdout);
        if (!result.pass) ++failures;
    }
    return failures;
}
