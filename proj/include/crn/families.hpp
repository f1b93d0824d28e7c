#pragma once

#include <string>
#include <utility>
#include <vector>

#include "crn/modifications.hpp"
#include "crn/network.hpp"

namespace crn {

/// P^n with species S0..Sn, E, F, ES0..ES{n-1}, FS1..FSn and labels
/// bindE<i>/unbindE<i>/catE<i> (i < n), bindF<i>/unbindF<i>/catF<i> (i >= 1).
ReactionNetwork phosphorylation_cycle(std::size_t n);

/// Two-layer cascade: W activated by E1 and deactivated by E2; W* activates
/// Z, which E3 deactivates.
ReactionNetwork small_cascade();

/// Three-tier MAPK cascade (Z = MKKK, Y = MKK, X = MAPK).
ReactionNetwork mapk_cascade();

/// Enzyme sets used with the cascades.
std::vector<std::string> small_cascade_enzymes();
std::vector<std::string> mapk_enzymes();

struct FamilySpec {
  enum class Kind { phospho_cycle, small_cascade, mapk };
  Kind kind = Kind::phospho_cycle;
  std::size_t n = 1;
  std::vector<std::string> opened;
  std::vector<std::pair<std::string, FlowDirection>> partial;
};

/// Builds the base family network and applies the openings.
ReactionNetwork build_family(const FamilySpec& spec);

}  // namespace crn
