#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "levyruin/model_json.hpp"
#include "levyruin/rate_solver.hpp"
#include "levyruin/report_io.hpp"

using namespace levyruin;
using nlohmann::json;

TEST_CASE("parse compound poisson model") {
    const auto doc = json::parse(R"({
        "premium": {"type": "constant", "p": 2.2},
        "sigma": 0.0,
        "jump": {"type": "compound_poisson", "beta": 1.0,
                 "claims": {"type": "gamma", "alpha": 2.0, "delta": 1.0}}
    })");
    const auto model = parse_risk_model(doc);
    CHECK(model.premium.base() == 2.2);
    CHECK(model.volatility.value() == 0.0);
    CHECK(model.jumps.mean_jump_rate() == 2.0);
    CHECK(solve_rate(model).k == Catch::Approx(0.00319).margin(1e-5));
}

TEST_CASE("parse gamma process and inverse gaussian models") {
    const auto gp = parse_risk_model(json::parse(R"({
        "premium": {"type": "constant", "p": 1.1},
        "sigma": 0.5,
        "jump": {"type": "gamma_process", "alpha": 0.5, "beta": 0.5}
    })"));
    CHECK(gp.jumps.exponent_abscissa() == 0.5);
    CHECK(gp.volatility.value() == 0.5);

    const auto ig = parse_risk_model(json::parse(R"({
        "premium": {"type": "affine", "p": 1.1, "i": 0.05},
        "jump": {"type": "inverse_gaussian", "gamma": 1.0}
    })"));
    CHECK(ig.premium(2.0) == Catch::Approx(1.2).margin(1e-15));
    CHECK(ig.volatility.value() == 0.0);  // sigma defaults to 0
    CHECK(ig.jumps.mean_jump_rate() == 1.0);
}

TEST_CASE("parse mixed exponential claims") {
    const auto model = parse_risk_model(json::parse(R"({
        "premium": {"type": "constant", "p": 2.2},
        "jump": {"type": "compound_poisson", "beta": 1.0,
                 "claims": {"type": "mixed_exponential",
                            "p": 0.75, "delta1": 0.75, "delta2": 0.25}}
    })"));
    CHECK(model.jumps.mean_jump_rate() == Catch::Approx(2.0).margin(1e-14));
}

TEST_CASE("malformed documents raise ConfigError") {
    CHECK_THROWS_AS(parse_risk_model(json::parse("{}")), ConfigError);
    CHECK_THROWS_AS(parse_risk_model(json::parse(R"({"premium": 3, "jump": {}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_risk_model(json::parse(R"({
        "premium": {"type": "constant", "p": 2.2},
        "jump": {"type": "warp_drive"}
    })")),
                    ConfigError);
    CHECK_THROWS_AS(parse_risk_model(json::parse(R"({
        "premium": {"type": "constant", "p": 2.2},
        "jump": {"type": "compound_poisson", "beta": 1.0,
                 "claims": {"type": "exponential"}}
    })")),
                    ConfigError);
    CHECK_THROWS_AS(parse_risk_model(json::parse(R"({
        "premium": {"type": "constant", "p": -2.0},
        "jump": {"type": "inverse_gaussian", "gamma": 1.0}
    })")),
                    ConfigError);
    CHECK_THROWS_AS(load_model_file("/nonexistent/model.json"), ConfigError);
}

TEST_CASE("rate result JSON round-trips at full precision") {
    const auto model = parse_risk_model(json::parse(R"({
        "premium": {"type": "constant", "p": 1.1},
        "jump": {"type": "gamma_process", "alpha": 0.5, "beta": 0.5}
    })"));
    const auto r = solve_rate(model);
    const auto doc = rate_result_to_json(r);
    const auto round = json::parse(doc.dump());
    CHECK(round.at("k").get<double>() == r.k);
    CHECK(round.at("lambda_star").get<double>() == r.lambda_star);
    CHECK(round.at("boundary_max").get<bool>() == r.boundary_max);
}

TEST_CASE("fmt17 round-trips doubles") {
    for (const double v : {0.1, 1.0 / 3.0, 2.0944954e-3, 123456.789, 5e-324}) {
        CHECK(std::stod(fmt17(v)) == v);
    }
}
