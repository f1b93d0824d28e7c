#pragma once

#include <cstdint>
#include <optional>

#include "crn/numerics.hpp"

namespace crn {

/// Randomized hunt for two nondegenerate steady states in one class:
/// log-uniform rates, totals of a log-uniform random point, multistart
/// Newton per draw.
struct WitnessSearchConfig {
  std::uint64_t seed = 0;
  std::size_t draws = 150;
  std::size_t starts = 20;
  double rate_lo = 1e-2;
  double rate_hi = 1e2;
  double point_log_lo = -1.0;
  double point_log_hi = 1.0;
};

struct Witness {
  std::size_t draw = 0;
  RateAssignment rates;
  Eigen::VectorXd totals;
  std::vector<SteadyStateRecord> states;  // nondegenerate only, at least two
};

/// Rates and totals of one draw; reproducible from (seed, draw).
std::pair<RateAssignment, Eigen::VectorXd> witness_draw(const ReactionNetwork& net, const WitnessSearchConfig& cfg,
                                                        std::size_t draw);

std::optional<Witness> find_witness(const ReactionNetwork& net, const WitnessSearchConfig& cfg);

}  // namespace crn
