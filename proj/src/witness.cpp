#include "crn/witness.hpp"

#include <cmath>
#include <random>

namespace crn {

std::pair<RateAssignment, Eigen::VectorXd> witness_draw(const ReactionNetwork& net, const WitnessSearchConfig& cfg,
                                                        std::size_t draw) {
  RateAssignment rates = random_rates(net, substream_seed(cfg.seed, 2 * draw), cfg.rate_lo, cfg.rate_hi);
  std::mt19937_64 rng(substream_seed(cfg.seed, 2 * draw + 1));
  Eigen::VectorXd point(static_cast<Eigen::Index>(net.num_species()));
  for (Eigen::Index k = 0; k < point.size(); ++k) {
    point(k) = std::pow(10.0, cfg.point_log_lo + (cfg.point_log_hi - cfg.point_log_lo) * uniform01(rng()));
  }
  MassActionSystem sys(net, rates);
  return {rates, sys.totals(point)};
}

std::optional<Witness> find_witness(const ReactionNetwork& net, const WitnessSearchConfig& cfg) {
  for (std::size_t d = 0; d < cfg.draws; ++d) {
    auto [rates, T] = witness_draw(net, cfg, d);
    MassActionSystem sys(net, rates);
    SearchConfig sc;
    sc.num_starts = cfg.starts;
    sc.seed = substream_seed(cfg.seed, 0xABCDEF00ULL + d);
    SearchResult res = search_steady_states(sys, T, sc);
    Witness w;
    for (const auto& rec : res.states) {
      if (rec.nondegenerate) w.states.push_back(rec);
    }
    if (w.states.size() >= 2) {
      w.draw = d;
      w.rates = rates;
      w.totals = T;
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace crn
