#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crn/modifications.hpp"
#include "crn/network.hpp"

namespace crn {

/// Raised when a numeric precondition fails (e.g. a state is not steady).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mass-action vector field of a network with fixed rates.
class MassActionSystem {
 public:
  MassActionSystem(const ReactionNetwork& net, const RateAssignment& rates);

  std::size_t num_species() const { return n_; }
  std::size_t num_reactions() const { return kappa_.size(); }
  std::size_t num_laws() const { return static_cast<std::size_t>(W_.rows()); }

  /// Per-reaction fluxes kappa_j * x^{y_j}.
  Eigen::VectorXd fluxes(const Eigen::VectorXd& x) const;
  Eigen::VectorXd rhs(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

  /// max_i |f_i| / (1 + max_i sum_j |Gamma_ij| kappa_j x^{y_j}).
  double scaled_residual(const Eigen::VectorXd& x) const;

  /// Conservation rows (reduced row-echelon form, as doubles).
  const Eigen::MatrixXd& W() const { return W_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const Eigen::MatrixXd& gamma() const { return gamma_; }
  Eigen::VectorXd totals(const Eigen::VectorXd& x) const { return W_ * x; }

  /// f with each pivot-species row replaced by (W x - T); square n x n.
  Eigen::VectorXd augmented_rhs(const Eigen::VectorXd& x, const Eigen::VectorXd& T) const;
  Eigen::MatrixXd augmented_jacobian(const Eigen::VectorXd& x) const;

 private:
  void check_dim(const Eigen::VectorXd& x) const;

  std::size_t n_ = 0;
  Eigen::VectorXd kappa_;
  Eigen::MatrixXd gamma_;
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> sources_;
  Eigen::MatrixXd W_;
  std::vector<std::size_t> pivots_;
};

Eigen::VectorXd rhs(const ReactionNetwork& net, const RateAssignment& rates, const Eigen::VectorXd& x);
Eigen::MatrixXd jacobian(const ReactionNetwork& net, const RateAssignment& rates, const Eigen::VectorXd& x);

struct Nondegeneracy {
  bool nondegenerate = false;
  std::size_t rank_gap = 0;
  double sigma_ratio = 0.0;  // sigma_min / sigma_max of the augmented matrix
};

constexpr double kRankTolerance = 1e-9;

/// Rank test on the augmented Jacobian. Throws NumericError when the scaled
/// residual at x exceeds `steady_tol`.
Nondegeneracy is_nondegenerate(const MassActionSystem& sys, const Eigen::VectorXd& x, double steady_tol = 5e-3);
Nondegeneracy is_nondegenerate(const ReactionNetwork& net, const RateAssignment& rates, const Eigen::VectorXd& x,
                               double steady_tol = 5e-3);

struct SteadyStateRecord {
  Eigen::VectorXd x;
  double residual = 0.0;
  Eigen::VectorXd totals;
  bool nondegenerate = false;
  std::size_t rank_gap = 0;
};

SteadyStateRecord make_record(const MassActionSystem& sys, const Eigen::VectorXd& x);

struct SearchConfig {
  std::size_t num_starts = 200;
  std::uint64_t seed = 0;
  double log_lo = -3.0;  // base-10 exponents
  double log_hi = 3.0;
  double newton_tol = 1e-12;
  std::size_t max_iters = 200;
  double dedup_tol = 1e-6;
  std::size_t threads = 0;  // 0: hardware concurrency

  void validate() const;
};

struct NewtonResult {
  Eigen::VectorXd x;
  double residual = 0.0;
  double class_error = 0.0;  // ||W x - T||_inf / (1 + ||T||_inf)
  std::size_t iterations = 0;
  bool converged = false;
};

/// Damped Newton on {f = 0, W x = T} from x0 (x0 > 0).
NewtonResult newton_in_class(const MassActionSystem& sys, const Eigen::VectorXd& x0, const Eigen::VectorXd& T,
                             double tol = 1e-12, std::size_t max_iters = 200);

/// Minimum-norm Gauss-Newton on f = 0 alone; the compatibility class may drift.
NewtonResult refine_free(const MassActionSystem& sys, const Eigen::VectorXd& x0, double tol = 1e-12,
                         std::size_t max_iters = 100);

/// Refines approximate states into one shared class: the first by
/// refine_free, the others by newton_in_class at the first one's totals.
std::vector<NewtonResult> refine_shared_class(const MassActionSystem& sys, const std::vector<Eigen::VectorXd>& states,
                                              double tol = 1e-12);

/// Deterministic per-start substream seed.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);
/// Uniform double in [0,1) from 53 random bits.
double uniform01(std::uint64_t bits);

struct SearchResult {
  std::vector<SteadyStateRecord> states;
  std::size_t converged_starts = 0;
  bool feasible = true;  // false: no start could be placed in the class and none converged
};

SearchResult search_steady_states(const MassActionSystem& sys, const Eigen::VectorXd& T, const SearchConfig& cfg);

/// Relative infinity-norm distance used for deduplication.
double relative_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Log-uniform rates in [lo, hi] for every reaction, deterministic in seed.
RateAssignment random_rates(const ReactionNetwork& net, std::uint64_t seed, double lo = 1e-2, double hi = 1e2);

/// Reorders a state given by species name into network order.
Eigen::VectorXd state_from_names(const ReactionNetwork& net, const std::vector<std::pair<std::string, double>>& values);

// ------------------------------------------------------------ lifting

struct LiftResult {
  std::size_t n = 0;          // sites of the base cycle
  std::size_t open_site = 0;  // i in P^n_{S_i <-> 0}
  ReactionNetwork extended_net;
  RateAssignment extended_rates;
  Eigen::VectorXd lifted_state;
  double a = 0.0;
  double residual = 0.0;
  bool totals_preserved = false;
  bool nondegenerate = false;
  bool base_nondegenerate = false;
};

/// The cycle with S_i open plus S_n + E -> S_{n+1} + E and
/// S_{n+1} + F -> S_n + F (labels `liftE<n>`, `liftF<n+1>`).
ReactionNetwork lifted_network(std::size_t n, std::size_t i);

/// Extends a steady state x of P^n_{S_i <-> 0} with x_{S_{n+1}} = x_{S_n} x_E / x_F.
LiftResult lift_steady_state(std::size_t n, std::size_t i, const RateAssignment& rates, const Eigen::VectorXd& x,
                             double a, double steady_tol = 1e-9);

struct ContinuationResult {
  ReactionNetwork net;  // P^{n+1}_{S_i <-> 0}
  RateAssignment rates;
  Eigen::VectorXd totals;
  std::vector<SteadyStateRecord> states;
  std::string diagnostics;
};

/// Rates for the added binding chains: kappa_on, kappa_off and
/// kappa_cat = a kappa_off / (kappa_on - a), which keeps the effective
/// catalytic rate at a. Requires kappa_on > a.
double catalytic_rate_for(double a, double kappa_on, double kappa_off);

/// Replaces the two lifted reactions by intermediate chains and solves
/// P^{n+1}_{S_i <-> 0} from quasi-steady-state seeds, all in the class of
/// the first seed.
ContinuationResult continue_to_next_cycle(const std::vector<LiftResult>& lifts, double kappa_on, double kappa_off,
                                          const SearchConfig& cfg);

struct ChainLevel {
  std::size_t n = 0;
  ContinuationResult result;
};

/// Repeated lift + continuation starting from states of P^n_{S_i <-> 0}.
std::vector<ChainLevel> lift_chain(std::size_t n, std::size_t i, const RateAssignment& rates,
                                   const std::vector<Eigen::VectorXd>& states, double a, std::size_t levels,
                                   const SearchConfig& cfg, double on_factor = 2.0, double off_factor = 2000.0);

// ------------------------------------------------------------ symbolic

/// Mass-action right-hand side as polynomials over species names:
/// species -> (monomial -> coefficient).
using Monomial = std::vector<std::pair<std::string, std::uint32_t>>;
using Polynomial = std::map<Monomial, double>;
std::map<std::string, Polynomial> symbolic_rhs(const ReactionNetwork& net, const RateAssignment& rates);

/// Compares RHS polynomials after renaming A's species by `relabel`.
/// Coefficients must agree to `rel_tol` relative.
bool symbolic_rhs_equal(const ReactionNetwork& netA, const RateAssignment& ratesA, const ReactionNetwork& netB,
                        const RateAssignment& ratesB, const SpeciesRelabeling& relabel, double rel_tol = 1e-12);

}  // namespace crn
