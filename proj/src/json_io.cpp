#include "crn/json_io.hpp"

#include <cmath>

namespace crn {

using nlohmann::json;

json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j.at(i).get<double>();
  return v;
}

json to_json(const StructuralReport& rep) {
  json laws = json::array();
  const RationalMatrix& W = rep.conservation.W;
  for (std::size_t i = 0; i < W.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < W.cols(); ++k) row.push_back(to_string(W(i, k)));
    laws.push_back(row);
  }
  return {{"complexes", rep.num_complexes},
          {"linkage_classes", rep.num_linkage_classes},
          {"stoich_dim", rep.stoich_dimension},
          {"deficiency", rep.deficiency},
          {"weakly_reversible", rep.weakly_reversible},
          {"monomolecular", rep.monomolecular},
          {"conservation_laws", laws}};
}

json to_json(const SteadyStateRecord& rec) {
  return {{"x", to_json(rec.x)},
          {"residual", rec.residual},
          {"totals", to_json(rec.totals)},
          {"nondegenerate", rec.nondegenerate},
          {"rank_gap", rec.rank_gap}};
}

SteadyStateRecord record_from_json(const json& j) {
  SteadyStateRecord rec;
  rec.x = vector_from_json(j.at("x"));
  rec.residual = j.value("residual", 0.0);
  rec.totals = j.contains("totals") ? vector_from_json(j.at("totals")) : Eigen::VectorXd();
  rec.nondegenerate = j.value("nondegenerate", false);
  rec.rank_gap = j.value("rank_gap", std::size_t{0});
  return rec;
}

json to_json(const RateAssignment& rates) {
  json out = json::object();
  for (const auto& [label, v] : rates.values()) out[label] = v;
  return out;
}

RateAssignment rates_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("rates must be a JSON object {label: value}");
  RateAssignment rates;
  for (const auto& [label, v] : j.items()) {
    if (!v.is_number()) throw std::invalid_argument("rate for '" + label + "' is not a number");
    rates.set(label, v.get<double>());
  }
  return rates;
}

json to_json(const Certificate& cert) {
  json trace = json::array();
  for (const auto& step : cert.trace) {
    trace.push_back({{"rule", to_string(step.rule)}, {"inputs", step.inputs}, {"outputs", step.outputs}});
  }
  json out = {{"verdict", to_string(cert.verdict)}, {"subject", cert.subject}, {"trace", trace}};
  if (!cert.reason.empty()) out["reason"] = cert.reason;
  if (cert.rates) out["rates"] = to_json(*cert.rates);
  if (cert.witness) out["witness"] = json::array({to_json(cert.witness->first), to_json(cert.witness->second)});
  return out;
}

Certificate certificate_from_json(const json& j) {
  Certificate cert;
  cert.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  cert.subject = j.at("subject").get<std::string>();
  for (const auto& step : j.at("trace")) {
    cert.trace.push_back({rule_from_string(step.at("rule").get<std::string>()), step.at("inputs"), step.at("outputs")});
  }
  cert.reason = j.value("reason", "");
  if (j.contains("rates")) cert.rates = rates_from_json(j.at("rates"));
  if (j.contains("witness")) {
    const json& w = j.at("witness");
    if (!w.is_array() || w.size() != 2) throw std::invalid_argument("witness must hold two records");
    cert.witness = std::make_pair(record_from_json(w.at(0)), record_from_json(w.at(1)));
  }
  return cert;
}

json to_json(const AcrReport& rep) {
  json entries = json::array();
  for (const auto& e : rep.entries) {
    json item = {{"species", e.species}, {"status", to_string(e.status)}};
    item["value"] = e.value ? json(*e.value) : json(nullptr);
    entries.push_back(item);
  }
  return {{"entries", entries}, {"no_steady_states", rep.no_steady_states}};
}

Eigen::VectorXd state_from_json(const ReactionNetwork& net, const json& j) {
  if (j.is_array()) {
    if (j.size() != net.num_species()) {
      throw std::invalid_argument("state array has " + std::to_string(j.size()) + " entries, expected " +
                                  std::to_string(net.num_species()));
    }
    return vector_from_json(j);
  }
  if (!j.is_object()) throw std::invalid_argument("state must be a JSON object or array");
  std::vector<std::pair<std::string, double>> values;
  for (const auto& [name, v] : j.items()) values.emplace_back(name, v.get<double>());
  if (values.size() != net.num_species()) throw std::invalid_argument("state must list every species exactly once");
  return state_from_names(net, values);
}

json state_to_json(const ReactionNetwork& net, const Eigen::VectorXd& x) {
  json out = json::object();
  for (std::size_t s = 0; s < net.num_species(); ++s) out[net.species()[s]] = x(static_cast<Eigen::Index>(s));
  return out;
}

json witness_to_json(const ReactionNetwork& net, const Witness& w, const WitnessSearchConfig& cfg) {
  json states = json::array();
  for (const auto& rec : w.states) states.push_back(to_json(rec.x));
  return {{"network", canonical_serialize(net)},
          {"seed", cfg.seed},
          {"draw", w.draw},
          {"rates", to_json(w.rates)},
          {"totals", to_json(w.totals)},
          {"states", states}};
}

}  // namespace crn
