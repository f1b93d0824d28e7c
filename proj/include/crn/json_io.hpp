#pragma once

#include "json.hpp"

#include "crn/certificates.hpp"
#include "crn/numerics.hpp"
#include "crn/structure.hpp"
#include "crn/witness.hpp"

namespace crn {

nlohmann::json to_json(const StructuralReport& rep);
nlohmann::json to_json(const SteadyStateRecord& rec);
nlohmann::json to_json(const Certificate& cert);
nlohmann::json to_json(const AcrReport& rep);
nlohmann::json to_json(const RateAssignment& rates);
nlohmann::json to_json(const Eigen::VectorXd& v);

SteadyStateRecord record_from_json(const nlohmann::json& j);
Certificate certificate_from_json(const nlohmann::json& j);
RateAssignment rates_from_json(const nlohmann::json& j);
Eigen::VectorXd vector_from_json(const nlohmann::json& j);

/// A state is a JSON object keyed by species name or an array in network order.
Eigen::VectorXd state_from_json(const ReactionNetwork& net, const nlohmann::json& j);
nlohmann::json state_to_json(const ReactionNetwork& net, const Eigen::VectorXd& x);

/// Witness fixture: {network, rates, totals, states:[[...], ...]}.
nlohmann::json witness_to_json(const ReactionNetwork& net, const Witness& w, const WitnessSearchConfig& cfg);

}  // namespace crn
