#include <cmath>
#include <limits>
#include <random>

#include "crn/numerics.hpp"
#include "crn/structure.hpp"

namespace crn {

namespace {

double ipow(double base, std::uint32_t e) {
  double out = 1.0;
  while (e > 0) {
    if (e & 1U) out *= base;
    base *= base;
    e >>= 1U;
  }
  return out;
}

}  // namespace

MassActionSystem::MassActionSystem(const ReactionNetwork& net, const RateAssignment& rates)
    : n_(net.num_species()) {
  rates.validate_for(net);
  const std::size_t r = net.num_reactions();
  kappa_.resize(static_cast<Eigen::Index>(r));
  gamma_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(r));
  sources_.resize(r);
  for (std::size_t j = 0; j < r; ++j) {
    const Reaction& rx = net.reactions()[j];
    kappa_(static_cast<Eigen::Index>(j)) = rates.at(rx.label);
    auto v = net.reaction_vector(j);
    for (std::size_t i = 0; i < n_; ++i) gamma_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = double(v[i]);
    for (auto [s, c] : net.source(rx).coefficients()) sources_[j].emplace_back(s, c);
  }
  ConservationBasis basis = conservation_laws(net);
  W_.resize(static_cast<Eigen::Index>(basis.d()), static_cast<Eigen::Index>(n_));
  for (std::size_t k = 0; k < basis.d(); ++k) {
    bool found = false;
    for (std::size_t s = 0; s < n_; ++s) {
      const Rational& q = basis.W(k, s);
      W_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(s)) = q.get_d();
      if (!found && q != 0) {
        pivots_.push_back(s);
        found = true;
      }
    }
  }
}

void MassActionSystem::check_dim(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != n_) {
    throw std::invalid_argument("state has " + std::to_string(x.size()) + " entries, expected " + std::to_string(n_));
  }
}

Eigen::VectorXd MassActionSystem::fluxes(const Eigen::VectorXd& x) const {
  check_dim(x);
  Eigen::VectorXd v(kappa_.size());
  for (Eigen::Index j = 0; j < kappa_.size(); ++j) {
    double m = kappa_(j);
    for (auto [s, c] : sources_[static_cast<std::size_t>(j)]) m *= ipow(x(static_cast<Eigen::Index>(s)), c);
    v(j) = m;
  }
  return v;
}

Eigen::VectorXd MassActionSystem::rhs(const Eigen::VectorXd& x) const { return gamma_ * fluxes(x); }

Eigen::MatrixXd MassActionSystem::jacobian(const Eigen::VectorXd& x) const {
  check_dim(x);
  // dv_j/dx_s, evaluated without dividing by x so boundary points work.
  Eigen::MatrixXd dv = Eigen::MatrixXd::Zero(kappa_.size(), static_cast<Eigen::Index>(n_));
  for (Eigen::Index j = 0; j < kappa_.size(); ++j) {
    const auto& src = sources_[static_cast<std::size_t>(j)];
    for (std::size_t a = 0; a < src.size(); ++a) {
      double d = kappa_(j) * src[a].second * ipow(x(static_cast<Eigen::Index>(src[a].first)), src[a].second - 1);
      for (std::size_t b = 0; b < src.size(); ++b) {
        if (b != a) d *= ipow(x(static_cast<Eigen::Index>(src[b].first)), src[b].second);
      }
      dv(j, static_cast<Eigen::Index>(src[a].first)) = d;
    }
  }
  return gamma_ * dv;
}

double MassActionSystem::scaled_residual(const Eigen::VectorXd& x) const {
  Eigen::VectorXd v = fluxes(x);
  Eigen::VectorXd f = gamma_ * v;
  double scale = (gamma_.cwiseAbs() * v).maxCoeff();
  return f.cwiseAbs().maxCoeff() / (1.0 + scale);
}

Eigen::VectorXd MassActionSystem::augmented_rhs(const Eigen::VectorXd& x, const Eigen::VectorXd& T) const {
  Eigen::VectorXd F = rhs(x);
  Eigen::VectorXd c = W_ * x - T;
  for (std::size_t k = 0; k < pivots_.size(); ++k) F(static_cast<Eigen::Index>(pivots_[k])) = c(static_cast<Eigen::Index>(k));
  return F;
}

Eigen::MatrixXd MassActionSystem::augmented_jacobian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd J = jacobian(x);
  for (std::size_t k = 0; k < pivots_.size(); ++k) J.row(static_cast<Eigen::Index>(pivots_[k])) = W_.row(static_cast<Eigen::Index>(k));
  return J;
}

Eigen::VectorXd rhs(const ReactionNetwork& net, const RateAssignment& rates, const Eigen::VectorXd& x) {
  return MassActionSystem(net, rates).rhs(x);
}

Eigen::MatrixXd jacobian(const ReactionNetwork& net, const RateAssignment& rates, const Eigen::VectorXd& x) {
  return MassActionSystem(net, rates).jacobian(x);
}

Nondegeneracy is_nondegenerate(const MassActionSystem& sys, const Eigen::VectorXd& x, double steady_tol) {
  double res = sys.scaled_residual(x);
  if (!(res <= steady_tol)) {
    throw NumericError("state is not a steady state (scaled residual " + std::to_string(res) + ")");
  }
  // Column scaling by x and row scaling to unit max-norm leave the exact
  // rank unchanged but keep states spanning many decades well conditioned.
  Eigen::MatrixXd A = sys.augmented_jacobian(x) * x.asDiagonal();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double m = A.row(i).cwiseAbs().maxCoeff();
    if (m > 0.0) A.row(i) /= m;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const Eigen::VectorXd& sigma = svd.singularValues();
  Nondegeneracy out;
  double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  std::size_t numerical_rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > kRankTolerance * smax) ++numerical_rank;
  }
  out.rank_gap = sys.num_species() - numerical_rank;
  out.nondegenerate = out.rank_gap == 0;
  out.sigma_ratio = smax > 0 ? sigma(sigma.size() - 1) / smax : 0.0;
  return out;
}

Nondegeneracy is_nondegenerate(const ReactionNetwork& net, const RateAssignment& rates, const Eigen::VectorXd& x,
                               double steady_tol) {
  return is_nondegenerate(MassActionSystem(net, rates), x, steady_tol);
}

SteadyStateRecord make_record(const MassActionSystem& sys, const Eigen::VectorXd& x) {
  SteadyStateRecord rec;
  rec.x = x;
  rec.residual = sys.scaled_residual(x);
  rec.totals = sys.totals(x);
  Nondegeneracy nd = is_nondegenerate(sys, x, std::numeric_limits<double>::infinity());
  rec.nondegenerate = nd.nondegenerate;
  rec.rank_gap = nd.rank_gap;
  return rec;
}

RateAssignment random_rates(const ReactionNetwork& net, std::uint64_t seed, double lo, double hi) {
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("rate range must satisfy 0 < lo < hi");
  std::mt19937_64 rng(substream_seed(seed, 0x7261746573ULL));
  RateAssignment rates;
  const double llo = std::log(lo), lhi = std::log(hi);
  for (const auto& r : net.reactions()) rates.set(r.label, std::exp(llo + (lhi - llo) * uniform01(rng())));
  return rates;
}

Eigen::VectorXd state_from_names(const ReactionNetwork& net, const std::vector<std::pair<std::string, double>>& values) {
  Eigen::VectorXd x = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(net.num_species()), std::nan(""));
  for (const auto& [name, v] : values) x(static_cast<Eigen::Index>(net.require_species(name))) = v;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::isnan(x(i))) throw NetworkError("no value for species '" + net.species()[static_cast<std::size_t>(i)] + "'");
  }
  return x;
}

}  // namespace crn
