#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "crn/modifications.hpp"
#include "crn/network.hpp"
#include "crn/numerics.hpp"

namespace crn {

enum class Verdict { monostationary, unique_positive_ss_per_class, no_positive_ss, multistationary_witness, undecided };

enum class Rule { def_zero, weak_rev, indep_conserved, projection, acr_emergence, rate_transfer, monomolecular };

std::string to_string(Verdict v);
std::string to_string(Rule r);
Verdict verdict_from_string(const std::string& s);
Rule rule_from_string(const std::string& s);

struct TraceStep {
  Rule rule;
  nlohmann::json inputs;
  nlohmann::json outputs;
};

struct Certificate {
  Verdict verdict = Verdict::undecided;
  std::string subject;  // canonical DSL of the network the verdict is about
  std::vector<TraceStep> trace;
  std::string reason;   // set when undecided
  // Multistationarity witnesses carry their rates and two states.
  std::optional<RateAssignment> rates;
  std::optional<std::pair<SteadyStateRecord, SteadyStateRecord>> witness;
};

/// Deficiency Zero Theorem on `net` itself.
Certificate certify_deficiency_zero(const ReactionNetwork& net);

/// Opens E in `net` and certifies the result through ACR emergence and the
/// projection G_{-E}. `net` must be closed in every member of E.
Certificate certify_enzyme_open(const ReactionNetwork& net, const std::vector<std::string>& E);

/// For a phosphorylation cycle: opens the substrates in E first, then runs
/// the enzyme pipeline with {E, F} on that core.
Certificate certify_enzyme_substrate_open(const ReactionNetwork& net, const std::vector<std::string>& E);

/// certify_enzyme_open on E; when that is undecided, retries with a subset
/// E' of E as the enzyme set and E \ E' opened into the core (largest
/// subsets first). Returns the first monostationary certificate, otherwise
/// the undecided certificate of the full set.
Certificate certify_open(const ReactionNetwork& net, const std::vector<std::string>& E);

/// Checks two states (same class, steady, nondegenerate) and wraps them.
/// Throws NumericError when the pair does not qualify.
Certificate multistationarity_certificate(const ReactionNetwork& net, const RateAssignment& rates,
                                          const Eigen::VectorXd& x1, const Eigen::VectorXd& x2,
                                          double residual_tol = 1e-9, double totals_tol = 1e-8);

struct ReplayResult {
  bool ok = true;
  std::string message;
};

/// Re-runs every step of the trace from its recorded inputs and checks the
/// outputs and the verdict.
ReplayResult replay(const Certificate& cert);

// ------------------------------------------------------------------- ACR

enum class AcrStatus { acr, no_steady_states, boundary_only };
std::string to_string(AcrStatus s);

struct AcrEntry {
  std::string species;
  AcrStatus status = AcrStatus::acr;
  std::optional<double> value;
};

struct AcrReport {
  std::vector<AcrEntry> entries;
  bool no_steady_states = false;  // some member has inflow only
};

/// `net` is the network with flows on E; the closed core (flows removed)
/// must have E independently conserved.
AcrReport acr_report(const ReactionNetwork& net, const std::vector<std::string>& E, const RateAssignment& rates);

/// Removes every 0 -> X and X -> 0 reaction for X in E.
ReactionNetwork strip_flows(const ReactionNetwork& net, const std::vector<std::string>& E);

struct TransferredRates {
  CollapsedNetwork projected;  // simple graph with origin labels
  RateAssignment rates;
};

/// Rates on the collapsed projection: sum over origins of kappa * prod a_i^{y_Ei}.
TransferredRates transfer_rates(const ReactionNetwork& net, const std::vector<std::string>& E,
                                const RateAssignment& rates, const std::map<std::string, double>& acr_values);

/// Coordinates of z on E (in the order of E).
std::vector<double> project_steady_state(const ReactionNetwork& net, const Eigen::VectorXd& z,
                                         const std::vector<std::string>& E);

}  // namespace crn
