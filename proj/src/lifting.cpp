#include <cmath>
#include <sstream>

#include "crn/families.hpp"
#include "crn/numerics.hpp"

namespace crn {

namespace {

std::string S(std::size_t k) { return "S" + std::to_string(k); }

ReactionNetwork open_cycle(std::size_t n, std::size_t i) {
  if (i > n) throw NetworkError("open site index out of range");
  return open_species(phosphorylation_cycle(n), {S(i)});
}

double value_of(const ReactionNetwork& net, const Eigen::VectorXd& x, const std::string& name) {
  return x(static_cast<Eigen::Index>(net.require_species(name)));
}

}  // namespace

ReactionNetwork lifted_network(std::size_t n, std::size_t i) {
  NetworkBuilder b(open_cycle(n, i));
  const std::size_t sn = b.add_species(S(n));
  const std::size_t e = b.add_species("E");
  const std::size_t f = b.add_species("F");
  const std::size_t next = b.add_species(S(n + 1));
  b.add_reaction(Complex({{sn, 1}, {e, 1}}), Complex({{next, 1}, {e, 1}}), "liftE" + std::to_string(n));
  b.add_reaction(Complex({{next, 1}, {f, 1}}), Complex({{sn, 1}, {f, 1}}), "liftF" + std::to_string(n + 1));
  return b.build();
}

LiftResult lift_steady_state(std::size_t n, std::size_t i, const RateAssignment& rates, const Eigen::VectorXd& x,
                             double a, double steady_tol) {
  if (!(a > 0.0)) throw std::invalid_argument("lifting rate a must be positive");
  ReactionNetwork base = open_cycle(n, i);
  MassActionSystem sys(base, rates);
  if (static_cast<std::size_t>(x.size()) != base.num_species() || !(x.array() > 0.0).all()) {
    throw NumericError("state must be a positive vector over the cycle's species");
  }
  const double base_residual = sys.scaled_residual(x);
  if (!(base_residual <= steady_tol)) {
    throw NumericError("state is not a steady state (scaled residual " + std::to_string(base_residual) + ")");
  }

  LiftResult out;
  out.n = n;
  out.open_site = i;
  out.a = a;
  out.extended_net = lifted_network(n, i);
  out.extended_rates = rates;
  out.extended_rates.set("liftE" + std::to_string(n), a);
  out.extended_rates.set("liftF" + std::to_string(n + 1), a);

  // Old coordinates keep their order; S_{n+1} is appended last.
  out.lifted_state.resize(x.size() + 1);
  out.lifted_state.head(x.size()) = x;
  out.lifted_state(x.size()) = value_of(base, x, S(n)) * value_of(base, x, "E") / value_of(base, x, "F");

  MassActionSystem ext(out.extended_net, out.extended_rates);
  out.residual = ext.scaled_residual(out.lifted_state);
  Eigen::VectorXd before = sys.totals(x);
  Eigen::VectorXd after = ext.totals(out.lifted_state);
  out.totals_preserved = before.size() == after.size() &&
                         (before.size() == 0 ||
                          (before - after).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + before.cwiseAbs().maxCoeff()));
  out.base_nondegenerate = is_nondegenerate(sys, x, steady_tol).nondegenerate;
  out.nondegenerate = is_nondegenerate(ext, out.lifted_state, std::max(steady_tol, out.residual)).nondegenerate;
  return out;
}

double catalytic_rate_for(double a, double kappa_on, double kappa_off) {
  if (!(a > 0.0 && kappa_off > 0.0 && kappa_on > a)) {
    throw std::invalid_argument("intermediate rates need kappa_off > 0 and kappa_on > a > 0");
  }
  return a * kappa_off / (kappa_on - a);
}

ContinuationResult continue_to_next_cycle(const std::vector<LiftResult>& lifts, double kappa_on, double kappa_off,
                                          const SearchConfig& cfg) {
  if (lifts.empty()) throw std::invalid_argument("continuation needs at least one lifted state");
  const LiftResult& first = lifts.front();
  for (const auto& l : lifts) {
    if (l.n != first.n || l.open_site != first.open_site || l.a != first.a) {
      throw std::invalid_argument("lifted states come from different extensions");
    }
  }
  const std::size_t n = first.n;
  const double kcat = catalytic_rate_for(first.a, kappa_on, kappa_off);
  const std::string es = "ES" + std::to_string(n);
  const std::string fs = "FS" + std::to_string(n + 1);

  ContinuationResult out;
  out.net = open_cycle(n + 1, first.open_site);
  for (const auto& r : out.net.reactions()) {
    if (first.extended_rates.contains(r.label)) out.rates.set(r.label, first.extended_rates.at(r.label));
  }
  out.rates.set("bindE" + std::to_string(n), kappa_on);
  out.rates.set("unbindE" + std::to_string(n), kappa_off);
  out.rates.set("catE" + std::to_string(n), kcat);
  out.rates.set("bindF" + std::to_string(n + 1), kappa_on);
  out.rates.set("unbindF" + std::to_string(n + 1), kappa_off);
  out.rates.set("catF" + std::to_string(n + 1), kcat);
  MassActionSystem sys(out.net, out.rates);

  std::vector<Eigen::VectorXd> seeds;
  for (const auto& l : lifts) {
    std::vector<std::pair<std::string, double>> values;
    for (std::size_t s = 0; s < l.extended_net.num_species(); ++s) {
      values.emplace_back(l.extended_net.species()[s], l.lifted_state(static_cast<Eigen::Index>(s)));
    }
    const double xe = value_of(l.extended_net, l.lifted_state, "E");
    const double xf = value_of(l.extended_net, l.lifted_state, "F");
    values.emplace_back(es, kappa_on * value_of(l.extended_net, l.lifted_state, S(n)) * xe / (kappa_off + kcat));
    values.emplace_back(fs, kappa_on * value_of(l.extended_net, l.lifted_state, S(n + 1)) * xf / (kappa_off + kcat));
    seeds.push_back(state_from_names(out.net, values));
  }
  out.totals = sys.totals(seeds.front());

  std::ostringstream diag;
  std::vector<Eigen::VectorXd> converged;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    NewtonResult nr = newton_in_class(sys, seeds[k], out.totals, cfg.newton_tol, cfg.max_iters);
    if (!nr.converged || !(nr.x.array() > 0.0).all()) {
      diag << "seed " << k << " did not converge (residual " << nr.residual << "); ";
      continue;
    }
    bool dup = false;
    for (const auto& c : converged) dup = dup || relative_distance(c, nr.x) <= cfg.dedup_tol;
    if (dup) {
      diag << "seed " << k << " converged onto an earlier state; ";
      continue;
    }
    converged.push_back(nr.x);
  }
  for (const auto& x : converged) out.states.push_back(make_record(sys, x));
  diag << out.states.size() << " distinct state(s) at n=" << n + 1;
  out.diagnostics = diag.str();
  return out;
}

std::vector<ChainLevel> lift_chain(std::size_t n, std::size_t i, const RateAssignment& rates,
                                   const std::vector<Eigen::VectorXd>& states, double a, std::size_t levels,
                                   const SearchConfig& cfg, double on_factor, double off_factor) {
  std::vector<ChainLevel> out;
  RateAssignment current_rates = rates;
  std::vector<Eigen::VectorXd> current = states;
  for (std::size_t level = 0; level < levels && !current.empty(); ++level) {
    std::vector<LiftResult> lifts;
    for (const auto& x : current) lifts.push_back(lift_steady_state(n, i, current_rates, x, a));
    ChainLevel cl;
    cl.n = n + 1;
    cl.result = continue_to_next_cycle(lifts, on_factor * a, off_factor * a, cfg);
    current.clear();
    for (const auto& rec : cl.result.states) current.push_back(rec.x);
    current_rates = cl.result.rates;
    out.push_back(std::move(cl));
    ++n;
  }
  return out;
}

}  // namespace crn
