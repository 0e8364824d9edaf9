#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "levyruin/estimators.hpp"
#include "levyruin/rate_solver.hpp"

namespace levyruin {

/// Shortest representation that round-trips a double (17 significant digits).
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline nlohmann::json rate_result_to_json(const RateResult& r) {
    return nlohmann::json{{"lambda_star", r.lambda_star}, {"k", r.k},
                          {"residual", r.residual},       {"lambda0", r.lambda0},
                          {"concavity_ok", r.concavity_ok}, {"boundary_max", r.boundary_max}};
}

inline nlohmann::json estimate_to_json(const MCEstimate& e) {
    return nlohmann::json{{"mean", e.mean},
                          {"stderr", e.std_error},
                          {"n_paths", e.n_paths},
                          {"ci95", {e.ci_lo, e.ci_hi}}};
}

// Column schemas are documented in schemas.md and pinned by tests.

inline void bound_report_to_csv(const BoundReport& r, std::ostream& os) {
    os << "u,T,psi_hat,psi_T_hat,gap,bound,stderr,pass\n";
    for (const auto& row : r.rows) {
        os << fmt17(r.u) << ',' << fmt17(row.T) << ',' << fmt17(r.psi_inf.mean) << ','
           << fmt17(row.psi_T) << ',' << fmt17(row.gap) << ',' << fmt17(row.bound) << ','
           << fmt17(row.slack / 3.0) << ',' << (row.pass() ? "true" : "false") << '\n';
    }
}

inline void duality_report_to_csv(const DualityReport& r, std::ostream& os) {
    os << "u,T,psi_T_hat,psi_T_stderr,dual_tail_hat,dual_tail_stderr,diff,slack,pass\n";
    for (const auto& row : r.rows) {
        os << fmt17(row.u) << ',' << fmt17(row.T) << ',' << fmt17(row.psi_T) << ','
           << fmt17(row.psi_T_se) << ',' << fmt17(row.dual_tail) << ',' << fmt17(row.dual_se)
           << ',' << fmt17(row.diff) << ',' << fmt17(row.slack) << ','
           << (row.pass ? "true" : "false") << '\n';
    }
}

inline nlohmann::json bound_report_to_json(const BoundReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"T", row.T},
                        {"psi_T_hat", row.psi_T},
                        {"gap", row.gap},
                        {"bound", row.bound},
                        {"slack", row.slack},
                        {"pass", row.pass()}});
    }
    return nlohmann::json{{"u", r.u},
                          {"lambda", r.lambda},
                          {"k", r.k},
                          {"psi_hat", estimate_to_json(r.psi_inf)},
                          {"c_hat", estimate_to_json(r.c_hat)},
                          {"rows", rows},
                          {"all_pass", r.all_pass}};
}

inline nlohmann::json duality_report_to_json(const DualityReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    double worst = 0.0;
    for (const auto& row : r.rows) {
        rows.push_back({{"u", row.u},
                        {"T", row.T},
                        {"psi_T_hat", row.psi_T},
                        {"dual_tail_hat", row.dual_tail},
                        {"diff", row.diff},
                        {"slack", row.slack},
                        {"pass", row.pass}});
        worst = std::max(worst, row.slack > 0.0 ? row.diff / row.slack : 0.0);
    }
    return nlohmann::json{{"rows", rows}, {"max_diff_over_slack", worst},
                          {"all_pass", r.all_pass}};
}

}  // namespace levyruin
