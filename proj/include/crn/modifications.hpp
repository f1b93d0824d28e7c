#pragma once

#include <map>
#include <string>
#include <vector>

#include "crn/network.hpp"

namespace crn {

enum class FlowDirection { inflow, outflow };

/// Appends X <-> 0 (labels `in_<X>`, `out_<X>`) for every X in E.
ReactionNetwork open_species(const ReactionNetwork& net, const std::vector<std::string>& E);

/// Appends only 0 -> X (inflow) or X -> 0 (outflow).
ReactionNetwork open_partial(const ReactionNetwork& net, const std::string& X, FlowDirection direction);

/// G_{-E}. Parallel edges are kept: each projected reaction keeps the label
/// of the reaction it came from.
struct ProjectedNetwork {
  ReactionNetwork network;
  std::vector<std::string> removed_species;
  std::vector<std::string> dropped_self_loops;  // origin labels
};

ProjectedNetwork project_complement(const ReactionNetwork& net, const std::vector<std::string>& E);

/// Simple-graph view: one reaction per (source, product) pair. The merged
/// reaction takes the first label; `origins` lists every merged label.
struct CollapsedNetwork {
  ReactionNetwork network;
  std::vector<std::vector<std::string>> origins;  // per reaction of `network`
};

CollapsedNetwork collapse_parallel(const ReactionNetwork& net);

/// G ∪ H. H may only use species of G; labels of H that collide with G get a
/// numeric suffix (`_2`, `_3`, ...).
ReactionNetwork network_union(const ReactionNetwork& net, const ReactionNetwork& h);

struct SpeciesRelabeling {
  std::map<std::string, std::string> species;
  std::map<std::string, std::string> labels;  // optional reaction-label map

  std::string map_species(const std::string& name) const;
  /// Labels in `labels` are mapped directly; flow labels `in_X`/`out_X`
  /// follow their species; others are unchanged.
  std::string map_label(const std::string& label) const;
};

/// S_j <-> S_{n-j}, E <-> F, ES_j <-> FS_{n-j}, with matching reaction labels.
SpeciesRelabeling symmetry_relabel(std::size_t n, std::size_t i);

ReactionNetwork apply_relabeling(const ReactionNetwork& net, const SpeciesRelabeling& rel);
RateAssignment apply_relabeling(const RateAssignment& rates, const SpeciesRelabeling& rel);

/// Checks `rel.species` is a bijection on the species of `net`.
void validate_relabeling(const ReactionNetwork& net, const SpeciesRelabeling& rel);

}  // namespace crn
