#include <algorithm>
#include <cmath>
#include <set>

#include "crn/numerics.hpp"

namespace crn {

std::map<std::string, Polynomial> symbolic_rhs(const ReactionNetwork& net, const RateAssignment& rates) {
  rates.validate_for(net);
  std::map<std::string, Polynomial> out;
  for (const auto& s : net.species()) out[s];
  for (std::size_t j = 0; j < net.num_reactions(); ++j) {
    const Reaction& r = net.reactions()[j];
    Monomial m;
    for (auto [s, c] : net.source(r).coefficients()) m.emplace_back(net.species()[s], c);
    std::sort(m.begin(), m.end());
    const double k = rates.at(r.label);
    auto v = net.reaction_vector(j);
    for (std::size_t s = 0; s < v.size(); ++s) {
      if (v[s] != 0) out[net.species()[s]][m] += k * static_cast<double>(v[s]);
    }
  }
  return out;
}

bool symbolic_rhs_equal(const ReactionNetwork& netA, const RateAssignment& ratesA, const ReactionNetwork& netB,
                        const RateAssignment& ratesB, const SpeciesRelabeling& relabel, double rel_tol) {
  std::set<std::string> mapped, target(netB.species().begin(), netB.species().end());
  for (const auto& s : netA.species()) mapped.insert(relabel.map_species(s));
  if (mapped.size() != netA.num_species() || mapped != target) {
    throw NetworkError("relabeling does not map the species of A onto the species of B");
  }
  auto polyA = symbolic_rhs(netA, ratesA);
  auto polyB = symbolic_rhs(netB, ratesB);
  for (const auto& [species, p] : polyA) {
    Polynomial renamed;
    for (const auto& [mono, c] : p) {
      Monomial m;
      for (const auto& [name, e] : mono) m.emplace_back(relabel.map_species(name), e);
      std::sort(m.begin(), m.end());
      renamed[m] += c;
    }
    const Polynomial& q = polyB.at(relabel.map_species(species));
    std::set<Monomial> keys;
    for (const auto& [m, _] : renamed) keys.insert(m);
    for (const auto& [m, _] : q) keys.insert(m);
    for (const auto& m : keys) {
      double ca = renamed.count(m) ? renamed.at(m) : 0.0;
      double cb = q.count(m) ? q.at(m) : 0.0;
      if (std::abs(ca - cb) > rel_tol * std::max(std::abs(ca), std::abs(cb))) return false;
    }
  }
  return true;
}

}  // namespace crn
