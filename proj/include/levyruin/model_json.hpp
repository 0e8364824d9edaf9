#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "levyruin/errors.hpp"
#include "levyruin/risk_model.hpp"

namespace levyruin {

/// Model document schema:
///   {"premium": {"type": "constant", "p": 2.2}
///               | {"type": "affine", "p": 2.2, "i": 0.05},
///    "sigma": 0.0,
///    "jump": {"type": "compound_poisson", "beta": 1.0,
///             "claims": {"type": "exponential", "delta": 0.5}
///                     | {"type": "gamma", "alpha": 2.0, "delta": 1.0}
///                     | {"type": "mixed_exponential",
///                        "p": 0.75, "delta1": 0.75, "delta2": 0.25}}
///          | {"type": "gamma_process", "alpha": 0.5, "beta": 0.5}
///          | {"type": "inverse_gaussian", "gamma": 1.0}}
inline RiskModel parse_risk_model(const nlohmann::json& doc) {
    auto number = [](const nlohmann::json& node, const char* key) -> double {
        if (!node.contains(key) || !node.at(key).is_number()) {
            throw ConfigError(std::string("model document: missing numeric field '") + key +
                              "'");
        }
        return node.at(key).get<double>();
    };
    auto text = [](const nlohmann::json& node, const char* key) -> std::string {
        if (!node.contains(key) || !node.at(key).is_string()) {
            throw ConfigError(std::string("model document: missing string field '") + key +
                              "'");
        }
        return node.at(key).get<std::string>();
    };

    if (!doc.is_object() || !doc.contains("premium") || !doc.contains("jump")) {
        throw ConfigError("model document: expected object with 'premium' and 'jump'");
    }

    const auto& prem = doc.at("premium");
    const std::string prem_type = text(prem, "type");
    PremiumRule premium = PremiumRule::constant(1.0);
    if (prem_type == "constant") {
        premium = PremiumRule::constant(number(prem, "p"));
    } else if (prem_type == "affine") {
        premium = PremiumRule::affine(number(prem, "p"), number(prem, "i"));
    } else {
        throw ConfigError("model document: unknown premium type '" + prem_type + "'");
    }

    const double sigma = doc.contains("sigma") ? number(doc, "sigma") : 0.0;

    const auto& jump = doc.at("jump");
    const std::string jump_type = text(jump, "type");
    if (jump_type == "compound_poisson") {
        const auto& claims = jump.contains("claims") ? jump.at("claims") : nlohmann::json();
        if (!claims.is_object()) {
            throw ConfigError("model document: compound_poisson requires 'claims'");
        }
        const std::string claim_type = text(claims, "type");
        ClaimDistribution law = ClaimDistribution::exponential(1.0);
        if (claim_type == "exponential") {
            law = ClaimDistribution::exponential(number(claims, "delta"));
        } else if (claim_type == "gamma") {
            law = ClaimDistribution::gamma(number(claims, "alpha"), number(claims, "delta"));
        } else if (claim_type == "mixed_exponential") {
            law = ClaimDistribution::mixed_exponential(number(claims, "p"),
                                                       number(claims, "delta1"),
                                                       number(claims, "delta2"));
        } else {
            throw ConfigError("model document: unknown claim type '" + claim_type + "'");
        }
        return RiskModel{premium, VolatilityRule::constant(sigma),
                         JumpModel::compound_poisson(number(jump, "beta"), std::move(law))};
    }
    if (jump_type == "gamma_process") {
        return RiskModel{premium, VolatilityRule::constant(sigma),
                         JumpModel::gamma_process(number(jump, "alpha"), number(jump, "beta"))};
    }
    if (jump_type == "inverse_gaussian") {
        return RiskModel{premium, VolatilityRule::constant(sigma),
                         JumpModel::inverse_gaussian(number(jump, "gamma"))};
    }
    throw ConfigError("model document: unknown jump type '" + jump_type + "'");
}

inline RiskModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open model file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("model file is not valid JSON: ") + e.what());
    }
    return parse_risk_model(doc);
}

}  // namespace levyruin
