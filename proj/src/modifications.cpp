#include "crn/modifications.hpp"

#include <algorithm>
#include <set>

namespace crn {

namespace {

void require_closed(const ReactionNetwork& net, const std::string& X) {
  std::size_t idx = net.require_species(X);
  FlowReactions flows = flow_reactions(net, idx);
  if (!flows.closed()) {
    throw NetworkError("species '" + X + "' already has a flow reaction");
  }
}

}  // namespace

ReactionNetwork open_species(const ReactionNetwork& net, const std::vector<std::string>& E) {
  std::set<std::string> seen;
  for (const auto& X : E) {
    if (!seen.insert(X).second) throw NetworkError("species '" + X + "' listed twice");
    require_closed(net, X);
  }
  NetworkBuilder b(net);
  for (const auto& X : E) {
    std::size_t idx = net.require_species(X);
    b.add_reaction(Complex::zero(), Complex::single(idx), "in_" + X);
    b.add_reaction(Complex::single(idx), Complex::zero(), "out_" + X);
  }
  return b.build();
}

ReactionNetwork open_partial(const ReactionNetwork& net, const std::string& X, FlowDirection direction) {
  std::size_t idx = net.require_species(X);
  FlowReactions flows = flow_reactions(net, idx);
  // Adding the missing direction to a half-open species is allowed.
  const auto& same = direction == FlowDirection::inflow ? flows.inflow : flows.outflow;
  if (!same.empty()) throw NetworkError("species '" + X + "' already has that flow reaction");
  NetworkBuilder b(net);
  if (direction == FlowDirection::inflow) {
    b.add_reaction(Complex::zero(), Complex::single(idx), "in_" + X);
  } else {
    b.add_reaction(Complex::single(idx), Complex::zero(), "out_" + X);
  }
  return b.build();
}

ProjectedNetwork project_complement(const ReactionNetwork& net, const std::vector<std::string>& E) {
  if (E.empty()) throw NetworkError("projection set must be nonempty");
  std::vector<bool> drop(net.num_species(), false);
  for (const auto& X : E) drop[net.require_species(X)] = true;
  if (std::all_of(drop.begin(), drop.end(), [](bool d) { return d; })) {
    throw NetworkError("projection removes every species");
  }

  ProjectedNetwork out;
  NetworkBuilder b;
  std::vector<std::size_t> new_index(net.num_species(), 0);
  for (std::size_t s = 0; s < net.num_species(); ++s) {
    if (drop[s]) {
      out.removed_species.push_back(net.species()[s]);
    } else {
      new_index[s] = b.add_species(net.species()[s]);
    }
  }
  auto project = [&](const Complex& c) {
    std::map<std::size_t, std::uint32_t> coeffs;
    for (auto [s, k] : c.coefficients()) {
      if (!drop[s]) coeffs[new_index[s]] = k;
    }
    return Complex(std::move(coeffs));
  };
  for (const auto& r : net.reactions()) {
    Complex src = project(net.source(r));
    Complex prod = project(net.product(r));
    if (src == prod) {
      out.dropped_self_loops.push_back(r.label);
      continue;
    }
    b.add_reaction(src, prod, r.label);
  }
  out.network = b.build();
  return out;
}

CollapsedNetwork collapse_parallel(const ReactionNetwork& net) {
  CollapsedNetwork out;
  NetworkBuilder b;
  for (const auto& s : net.species()) b.add_species(s);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
  for (const auto& r : net.reactions()) {
    auto key = std::make_pair(r.source, r.product);
    auto it = slot.find(key);
    if (it != slot.end()) {
      out.origins[it->second].push_back(r.label);
      continue;
    }
    slot.emplace(key, out.origins.size());
    out.origins.push_back({r.label});
    b.add_reaction(net.source(r), net.product(r), r.label);
  }
  out.network = b.build();
  return out;
}

ReactionNetwork network_union(const ReactionNetwork& net, const ReactionNetwork& h) {
  std::vector<std::size_t> map(h.num_species());
  for (std::size_t s = 0; s < h.num_species(); ++s) {
    auto idx = net.species_index(h.species()[s]);
    if (!idx) throw NetworkError("species '" + h.species()[s] + "' is not in the base network");
    map[s] = *idx;
  }
  NetworkBuilder b(net);
  for (const auto& r : h.reactions()) {
    auto translate = [&](const Complex& c) {
      std::map<std::size_t, std::uint32_t> coeffs;
      for (auto [s, k] : c.coefficients()) coeffs[map[s]] = k;
      return Complex(std::move(coeffs));
    };
    std::string label = r.label;
    for (int k = 2; b.has_label(label); ++k) label = r.label + "_" + std::to_string(k);
    b.add_reaction(translate(h.source(r)), translate(h.product(r)), label);
  }
  return b.build();
}

std::string SpeciesRelabeling::map_species(const std::string& name) const {
  auto it = species.find(name);
  return it == species.end() ? name : it->second;
}

std::string SpeciesRelabeling::map_label(const std::string& label) const {
  if (auto it = labels.find(label); it != labels.end()) return it->second;
  for (std::string prefix : {"in_", "out_"}) {
    if (label.rfind(prefix, 0) == 0) return prefix + map_species(label.substr(prefix.size()));
  }
  return label;
}

SpeciesRelabeling symmetry_relabel(std::size_t n, std::size_t i) {
  if (n == 0) throw NetworkError("n must be at least 1");
  if (i > n) throw NetworkError("site index out of range");
  SpeciesRelabeling rel;
  auto idx = [](const char* base, std::size_t k) { return std::string(base) + std::to_string(k); };
  for (std::size_t j = 0; j <= n; ++j) rel.species[idx("S", j)] = idx("S", n - j);
  rel.species["E"] = "F";
  rel.species["F"] = "E";
  for (std::size_t j = 0; j < n; ++j) {
    rel.species[idx("ES", j)] = idx("FS", n - j);
    rel.species[idx("FS", n - j)] = idx("ES", j);
  }
  for (const char* step : {"bind", "unbind", "cat"}) {
    std::string s(step);
    for (std::size_t j = 0; j < n; ++j) {
      rel.labels[s + "E" + std::to_string(j)] = s + "F" + std::to_string(n - j);
      rel.labels[s + "F" + std::to_string(n - j)] = s + "E" + std::to_string(j);
    }
  }
  return rel;
}

void validate_relabeling(const ReactionNetwork& net, const SpeciesRelabeling& rel) {
  std::set<std::string> image;
  for (const auto& s : net.species()) {
    std::string t = rel.map_species(s);
    if (!net.species_index(t)) throw NetworkError("relabeling maps '" + s + "' outside the species set");
    if (!image.insert(t).second) throw NetworkError("relabeling is not injective at '" + t + "'");
  }
}

ReactionNetwork apply_relabeling(const ReactionNetwork& net, const SpeciesRelabeling& rel) {
  validate_relabeling(net, rel);
  NetworkBuilder b;
  std::vector<std::size_t> map(net.num_species());
  for (std::size_t s = 0; s < net.num_species(); ++s) map[s] = b.add_species(rel.map_species(net.species()[s]));
  auto translate = [&](const Complex& c) {
    std::map<std::size_t, std::uint32_t> coeffs;
    for (auto [s, k] : c.coefficients()) coeffs[map[s]] = k;
    return Complex(std::move(coeffs));
  };
  for (const auto& r : net.reactions()) {
    b.add_reaction(translate(net.source(r)), translate(net.product(r)), rel.map_label(r.label));
  }
  return b.build();
}

RateAssignment apply_relabeling(const RateAssignment& rates, const SpeciesRelabeling& rel) {
  RateAssignment out;
  for (const auto& [label, v] : rates.values()) out.set(rel.map_label(label), v);
  return out;
}

}  // namespace crn
