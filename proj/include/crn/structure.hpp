#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crn/network.hpp"
#include "crn/rational.hpp"

namespace crn {

/// Rows of W span the left kernel of the stoichiometric matrix.
struct ConservationBasis {
  RationalMatrix W;  // d x |species|, reduced row-echelon form
  std::size_t d() const { return W.rows(); }
};

ConservationBasis conservation_laws(const ReactionNetwork& net);

/// Exact rank of the stoichiometric matrix.
std::size_t stoichiometric_rank(const ReactionNetwork& net);

struct LinkageClasses {
  std::vector<std::size_t> class_of;               // per complex
  std::vector<std::vector<std::size_t>> members;   // complexes per class, ascending
  std::size_t count() const { return members.size(); }
};

LinkageClasses linkage_classes(const ReactionNetwork& net);

/// Strongly connected components of the directed complex graph (Tarjan).
std::vector<std::size_t> strong_components(const ReactionNetwork& net);

bool is_weakly_reversible(const ReactionNetwork& net);

struct StructuralReport {
  std::size_t num_complexes = 0;
  std::size_t num_linkage_classes = 0;
  std::size_t stoich_dimension = 0;
  std::size_t deficiency = 0;
  bool weakly_reversible = false;
  bool monomolecular = false;
  ConservationBasis conservation;
};

StructuralReport deficiency(const ReactionNetwork& net);

/// Deficiency zero via affine independence of each linkage class and linear
/// independence of the per-class stoichiometric subspaces.
bool deficiency_zero_geometric(const ReactionNetwork& net);

/// Witness laws L_1..L_k for E (one row per member of E, in the given
/// order): L_i has a nonzero entry at E_i and zeros at every other E_j.
/// Returns nullopt when no such laws exist.
std::optional<RationalMatrix> independently_conserved(const ReactionNetwork& net,
                                                      const std::vector<std::string>& E);

}  // namespace crn
