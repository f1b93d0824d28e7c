#include "crn/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "crn/structure.hpp"

namespace crn {

using nlohmann::json;

namespace {

const std::vector<std::pair<Verdict, const char*>> kVerdictNames = {
    {Verdict::monostationary, "monostationary"},
    {Verdict::unique_positive_ss_per_class, "unique_positive_ss_per_class"},
    {Verdict::no_positive_ss, "no_positive_ss"},
    {Verdict::multistationary_witness, "multistationary_witness"},
    {Verdict::undecided, "undecided"},
};

const std::vector<std::pair<Rule, const char*>> kRuleNames = {
    {Rule::def_zero, "def_zero"},           {Rule::weak_rev, "weak_rev"},
    {Rule::indep_conserved, "indep_conserved"}, {Rule::projection, "projection"},
    {Rule::acr_emergence, "acr_emergence"}, {Rule::rate_transfer, "rate_transfer"},
    {Rule::monomolecular, "monomolecular"},
};

json counts(const StructuralReport& rep) {
  return {{"complexes", rep.num_complexes},
          {"linkage_classes", rep.num_linkage_classes},
          {"stoich_dim", rep.stoich_dimension},
          {"deficiency", rep.deficiency}};
}

json laws_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

StructuralReport simple_report(const ReactionNetwork& net) { return deficiency(collapse_parallel(net).network); }

// Appends def_zero / weak_rev / monomolecular steps for a named network.
StructuralReport structural_steps(Certificate& cert, const ReactionNetwork& net, const std::string& name) {
  StructuralReport rep = simple_report(net);
  cert.trace.push_back({Rule::def_zero, {{"network", name}}, counts(rep)});
  cert.trace.push_back({Rule::weak_rev, {{"network", name}}, {{"weakly_reversible", rep.weakly_reversible}}});
  if (rep.monomolecular) {
    cert.trace.push_back({Rule::monomolecular,
                          {{"network", name}},
                          {{"monomolecular", true}, {"note", "monomolecular networks have deficiency zero"}}});
  }
  return rep;
}

void require_closed(const ReactionNetwork& net, const std::vector<std::string>& E) {
  std::set<std::string> seen;
  for (const auto& X : E) {
    if (!seen.insert(X).second) throw NetworkError("species '" + X + "' listed twice");
    if (!flow_reactions(net, net.require_species(X)).closed()) {
      throw NetworkError("species '" + X + "' already has a flow reaction");
    }
  }
}

// ACR emergence plus deficiency-zero projection for G = core, opening E.
Certificate enzyme_pipeline(const ReactionNetwork& core, const std::vector<std::string>& E) {
  if (E.empty()) throw NetworkError("enzyme set must be nonempty");
  require_closed(core, E);
  Certificate cert;
  cert.subject = canonical_serialize(open_species(core, E));

  auto laws = independently_conserved(core, E);
  cert.trace.push_back({Rule::indep_conserved,
                        {{"core", canonical_serialize(core)}, {"species", E}},
                        {{"independent", laws.has_value()}, {"laws", laws ? laws_json(*laws) : json::array()}}});
  if (!laws) {
    cert.reason = "not independently conserved";
    return cert;
  }
  json values = json::object();
  for (const auto& X : E) values[X] = "kappa(in_" + X + ")/kappa(out_" + X + ")";
  cert.trace.push_back({Rule::acr_emergence, {{"species", E}}, {{"acr_species", E}, {"values", values}}});

  ProjectedNetwork proj = project_complement(core, E);
  CollapsedNetwork simple = collapse_parallel(proj.network);
  std::size_t merged = proj.network.num_reactions() - simple.network.num_reactions();
  cert.trace.push_back({Rule::projection,
                        {{"species", E}},
                        {{"network", canonical_serialize(simple.network)},
                         {"species", simple.network.num_species()},
                         {"complexes", simple.network.num_complexes()},
                         {"reactions", simple.network.num_reactions()},
                         {"self_loops_removed", proj.dropped_self_loops},
                         {"parallel_edges_merged", merged}}});

  StructuralReport rep = structural_steps(cert, simple.network, "projection");
  if (rep.deficiency == 0) {
    cert.verdict = Verdict::monostationary;
  } else {
    cert.reason = "projection has deficiency " + std::to_string(rep.deficiency);
  }
  return cert;
}

}  // namespace

std::string to_string(Verdict v) {
  for (const auto& [k, name] : kVerdictNames) {
    if (k == v) return name;
  }
  return "undecided";
}

std::string to_string(Rule r) {
  for (const auto& [k, name] : kRuleNames) {
    if (k == r) return name;
  }
  return "";
}

Verdict verdict_from_string(const std::string& s) {
  for (const auto& [k, name] : kVerdictNames) {
    if (s == name) return k;
  }
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

Rule rule_from_string(const std::string& s) {
  for (const auto& [k, name] : kRuleNames) {
    if (s == name) return k;
  }
  throw std::invalid_argument("unknown trace rule '" + s + "'");
}

Certificate certify_deficiency_zero(const ReactionNetwork& net) {
  Certificate cert;
  cert.subject = canonical_serialize(net);
  StructuralReport rep = structural_steps(cert, net, "subject");
  if (rep.deficiency != 0) {
    cert.reason = "deficiency " + std::to_string(rep.deficiency);
  } else {
    cert.verdict = rep.weakly_reversible ? Verdict::unique_positive_ss_per_class : Verdict::no_positive_ss;
  }
  return cert;
}

Certificate certify_enzyme_open(const ReactionNetwork& net, const std::vector<std::string>& E) {
  return enzyme_pipeline(net, E);
}

Certificate certify_enzyme_substrate_open(const ReactionNetwork& net, const std::vector<std::string>& E) {
  std::set<std::string> members(E.begin(), E.end());
  if (!members.count("E") || !members.count("F")) throw NetworkError("open set must contain both E and F");
  require_closed(net, E);
  std::vector<std::string> substrates;
  for (const auto& X : E) {
    if (X != "E" && X != "F") substrates.push_back(X);
  }
  ReactionNetwork core = substrates.empty() ? net : open_species(net, substrates);
  return enzyme_pipeline(core, {"E", "F"});
}

Certificate certify_open(const ReactionNetwork& net, const std::vector<std::string>& E) {
  Certificate full = enzyme_pipeline(net, E);
  if (full.verdict == Verdict::monostationary) return full;
  const std::size_t k = E.size();
  if (k < 2 || k > 16) return full;
  for (std::size_t size = k - 1; size >= 1; --size) {
    // Subsets of the given size, lexicographic in the order of E.
    std::vector<bool> pick(k, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<std::string> enzymes, rest;
      for (std::size_t t = 0; t < k; ++t) (pick[t] ? enzymes : rest).push_back(E[t]);
      Certificate c = enzyme_pipeline(open_species(net, rest), enzymes);
      if (c.verdict == Verdict::monostationary) return c;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return full;
}

Certificate multistationarity_certificate(const ReactionNetwork& net, const RateAssignment& rates,
                                          const Eigen::VectorXd& x1, const Eigen::VectorXd& x2,
                                          double residual_tol, double totals_tol) {
  MassActionSystem sys(net, rates);
  for (const auto* x : {&x1, &x2}) {
    if (!(x->array() > 0.0).all()) throw NumericError("witness state is not positive");
  }
  SteadyStateRecord r1 = make_record(sys, x1), r2 = make_record(sys, x2);
  if (!(r1.residual <= residual_tol) || !(r2.residual <= residual_tol)) {
    throw NumericError("witness state is not a steady state");
  }
  if (!r1.nondegenerate || !r2.nondegenerate) throw NumericError("witness state is degenerate");
  if (relative_distance(x1, x2) <= 1e-6) throw NumericError("witness states coincide");
  if (r1.totals.size() > 0) {
    double gap = (r1.totals - r2.totals).cwiseAbs().maxCoeff() / (1.0 + r1.totals.cwiseAbs().maxCoeff());
    if (gap > totals_tol) throw NumericError("witness states lie in different compatibility classes");
  }
  Certificate cert;
  cert.verdict = Verdict::multistationary_witness;
  cert.subject = canonical_serialize(net);
  cert.rates = rates;
  cert.witness = std::make_pair(r1, r2);
  return cert;
}

ReplayResult replay(const Certificate& cert) {
  auto fail = [](const std::string& msg) { return ReplayResult{false, msg}; };
  ReactionNetwork subject;
  try {
    subject = parse_network(cert.subject);
  } catch (const std::exception& e) {
    return fail(std::string("subject does not parse: ") + e.what());
  }

  if (cert.verdict == Verdict::multistationary_witness) {
    if (!cert.rates || !cert.witness) return fail("witness certificate without rates or states");
    try {
      multistationarity_certificate(subject, *cert.rates, cert.witness->first.x, cert.witness->second.x);
    } catch (const std::exception& e) {
      return fail(std::string("witness does not verify: ") + e.what());
    }
    return {};
  }

  std::map<std::string, ReactionNetwork> nets{{"subject", subject}};
  std::vector<std::string> E;
  std::optional<bool> independent;
  bool saw_acr = false, saw_projection = false;
  std::map<std::string, StructuralReport> reports;
  std::map<std::string, std::set<Rule>> seen;

  for (std::size_t s = 0; s < cert.trace.size(); ++s) {
    const TraceStep& step = cert.trace[s];
    const std::string where = "step " + std::to_string(s) + " (" + to_string(step.rule) + "): ";
    try {
      switch (step.rule) {
        case Rule::indep_conserved: {
          ReactionNetwork core = parse_network(step.inputs.at("core").get<std::string>());
          E = step.inputs.at("species").get<std::vector<std::string>>();
          if (!isomorphic(open_species(core, E), subject, true)) return fail(where + "subject is not the opened core");
          auto laws = independently_conserved(core, E);
          if (laws.has_value() != step.outputs.at("independent").get<bool>()) return fail(where + "verdict differs");
          if (laws && laws_json(*laws) != step.outputs.at("laws")) return fail(where + "witness laws differ");
          independent = laws.has_value();
          nets["core"] = core;
          break;
        }
        case Rule::acr_emergence: {
          if (!independent.value_or(false)) return fail(where + "requires independently conserved species");
          if (step.inputs.at("species").get<std::vector<std::string>>() != E) return fail(where + "species differ");
          for (const auto& X : E) {
            if (!flow_reactions(subject, subject.require_species(X)).open()) return fail(where + X + " is not open");
          }
          saw_acr = true;
          break;
        }
        case Rule::projection: {
          if (!nets.count("core")) return fail(where + "no core network");
          ReactionNetwork simple = collapse_parallel(project_complement(nets.at("core"), E).network).network;
          if (canonical_serialize(simple) != step.outputs.at("network").get<std::string>()) {
            return fail(where + "projected network differs");
          }
          nets["projection"] = simple;
          saw_projection = true;
          break;
        }
        case Rule::def_zero:
        case Rule::weak_rev:
        case Rule::monomolecular: {
          const std::string name = step.inputs.at("network").get<std::string>();
          if (!nets.count(name)) return fail(where + "unknown network '" + name + "'");
          if (!reports.count(name)) reports[name] = simple_report(nets.at(name));
          const StructuralReport& rep = reports.at(name);
          if (step.rule == Rule::def_zero && counts(rep) != step.outputs) return fail(where + "counts differ");
          if (step.rule == Rule::weak_rev &&
              rep.weakly_reversible != step.outputs.at("weakly_reversible").get<bool>()) {
            return fail(where + "weak reversibility differs");
          }
          if (step.rule == Rule::monomolecular && !rep.monomolecular) return fail(where + "network is not monomolecular");
          seen[name].insert(step.rule);
          break;
        }
        case Rule::rate_transfer:
          return fail(where + "rate transfer steps are not part of structural certificates");
      }
    } catch (const std::exception& e) {
      return fail(where + e.what());
    }
  }

  // Every network that was examined must carry the full set of structural steps.
  for (const auto& [name, rep] : reports) {
    const auto& rules = seen[name];
    if (!rules.count(Rule::def_zero) || !rules.count(Rule::weak_rev) ||
        rules.count(Rule::monomolecular) != (rep.monomolecular ? 1u : 0u)) {
      return fail("incomplete structural steps for '" + name + "'");
    }
  }

  Verdict expected = Verdict::undecided;
  if (independent.has_value()) {
    if (*independent && saw_acr && saw_projection && reports.count("projection") &&
        reports.at("projection").deficiency == 0) {
      expected = Verdict::monostationary;
    }
  } else if (reports.count("subject")) {
    const StructuralReport& rep = reports.at("subject");
    if (rep.deficiency == 0) {
      expected = rep.weakly_reversible ? Verdict::unique_positive_ss_per_class : Verdict::no_positive_ss;
    }
  } else {
    return fail("trace is empty");
  }
  if (expected != cert.verdict) {
    return fail("trace supports '" + to_string(expected) + "', certificate says '" + to_string(cert.verdict) + "'");
  }
  return {};
}

// ------------------------------------------------------------------- ACR

std::string to_string(AcrStatus s) {
  switch (s) {
    case AcrStatus::acr:
      return "acr";
    case AcrStatus::no_steady_states:
      return "no_steady_states";
    case AcrStatus::boundary_only:
      return "boundary_only";
  }
  return "";
}

ReactionNetwork strip_flows(const ReactionNetwork& net, const std::vector<std::string>& E) {
  std::set<std::size_t> drop;
  for (const auto& X : E) {
    FlowReactions f = flow_reactions(net, net.require_species(X));
    drop.insert(f.inflow.begin(), f.inflow.end());
    drop.insert(f.outflow.begin(), f.outflow.end());
  }
  NetworkBuilder b;
  for (const auto& s : net.species()) b.add_species(s);
  for (std::size_t j = 0; j < net.num_reactions(); ++j) {
    if (drop.count(j)) continue;
    const Reaction& r = net.reactions()[j];
    b.add_reaction(net.source(r), net.product(r), r.label);
  }
  return b.build();
}

AcrReport acr_report(const ReactionNetwork& net, const std::vector<std::string>& E, const RateAssignment& rates) {
  ReactionNetwork core = strip_flows(net, E);
  if (!independently_conserved(core, E)) {
    throw NetworkError("species set is not independently conserved in the closed network");
  }
  AcrReport report;
  for (const auto& X : E) {
    FlowReactions f = flow_reactions(net, net.require_species(X));
    AcrEntry entry;
    entry.species = X;
    if (f.closed()) throw NetworkError("species '" + X + "' has no flow reaction");
    double in = 0.0, out = 0.0;
    for (auto j : f.inflow) in += rates.at(net.reactions()[j].label);
    for (auto j : f.outflow) out += rates.at(net.reactions()[j].label);
    if (f.open()) {
      entry.status = AcrStatus::acr;
      entry.value = in / out;
    } else if (!f.inflow.empty()) {
      entry.status = AcrStatus::no_steady_states;
      report.no_steady_states = true;
    } else {
      entry.status = AcrStatus::boundary_only;
    }
    report.entries.push_back(entry);
  }
  return report;
}

TransferredRates transfer_rates(const ReactionNetwork& net, const std::vector<std::string>& E,
                                const RateAssignment& rates, const std::map<std::string, double>& acr_values) {
  std::vector<std::pair<std::size_t, double>> a;
  for (const auto& X : E) {
    auto it = acr_values.find(X);
    if (it == acr_values.end() || !(it->second > 0.0)) {
      throw std::invalid_argument("missing or nonpositive ACR value for '" + X + "'");
    }
    a.emplace_back(net.require_species(X), it->second);
  }
  TransferredRates out;
  out.projected = collapse_parallel(project_complement(net, E).network);
  for (std::size_t k = 0; k < out.projected.network.num_reactions(); ++k) {
    double total = 0.0;
    for (const auto& label : out.projected.origins[k]) {
      const Reaction& r = net.reactions()[*net.reaction_index(label)];
      double term = rates.at(label);
      for (auto [s, value] : a) term *= std::pow(value, static_cast<double>(net.source(r).coefficient(s)));
      total += term;
    }
    out.rates.set(out.projected.network.reactions()[k].label, total);
  }
  return out;
}

std::vector<double> project_steady_state(const ReactionNetwork& net, const Eigen::VectorXd& z,
                                         const std::vector<std::string>& E) {
  if (static_cast<std::size_t>(z.size()) != net.num_species()) throw std::invalid_argument("state dimension mismatch");
  std::vector<double> out;
  for (const auto& X : E) out.push_back(z(static_cast<Eigen::Index>(net.require_species(X))));
  return out;
}

}  // namespace crn
