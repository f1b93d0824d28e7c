#include "crn/structure.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace crn {

ConservationBasis conservation_laws(const ReactionNetwork& net) {
  // Left kernel of Gamma = right kernel of Gamma^T.
  RationalMatrix gamma_t = RationalMatrix::from_int(stoichiometric_matrix(net)).transpose();
  ConservationBasis basis;
  basis.W = right_kernel(gamma_t);
  if (basis.W.cols() != net.num_species()) basis.W = RationalMatrix(0, net.num_species());
  return basis;
}

std::size_t stoichiometric_rank(const ReactionNetwork& net) {
  return rank(RationalMatrix::from_int(stoichiometric_matrix(net)));
}

LinkageClasses linkage_classes(const ReactionNetwork& net) {
  const std::size_t m = net.num_complexes();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& r : net.reactions()) {
    std::size_t a = find(r.source), b = find(r.product);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  LinkageClasses out;
  out.class_of.assign(m, 0);
  std::vector<std::size_t> id_of_root(m, m);
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t root = find(c);
    if (id_of_root[root] == m) {
      id_of_root[root] = out.members.size();
      out.members.emplace_back();
    }
    out.class_of[c] = id_of_root[root];
    out.members[id_of_root[root]].push_back(c);
  }
  return out;
}

std::vector<std::size_t> strong_components(const ReactionNetwork& net) {
  const std::size_t m = net.num_complexes();
  std::vector<std::vector<std::size_t>> adj(m);
  for (const auto& r : net.reactions()) adj[r.source].push_back(r.product);

  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(m, unvisited), low(m, 0), comp(m, unvisited);
  std::vector<bool> on_stack(m, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, components = 0;

  // Iterative Tarjan; frames hold (vertex, next edge position).
  for (std::size_t root = 0; root < m; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < adj[v].size()) {
        std::size_t w = adj[v][pos++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      std::size_t finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

bool is_weakly_reversible(const ReactionNetwork& net) {
  auto comp = strong_components(net);
  return std::all_of(net.reactions().begin(), net.reactions().end(),
                     [&](const Reaction& r) { return comp[r.source] == comp[r.product]; });
}

StructuralReport deficiency(const ReactionNetwork& net) {
  StructuralReport rep;
  rep.num_complexes = net.num_complexes();
  rep.num_linkage_classes = linkage_classes(net).count();
  rep.conservation = conservation_laws(net);
  rep.stoich_dimension = net.num_species() - rep.conservation.d();
  rep.deficiency = rep.num_complexes - rep.num_linkage_classes - rep.stoich_dimension;
  rep.weakly_reversible = is_weakly_reversible(net);
  rep.monomolecular = std::all_of(net.complexes().begin(), net.complexes().end(),
                                  [](const Complex& c) { return c.molecularity() <= 1; });
  return rep;
}

namespace {

std::vector<Rational> complex_vector(const ReactionNetwork& net, const Complex& c) {
  std::vector<Rational> v(net.num_species());
  for (auto [s, coeff] : c.coefficients()) v[s] = coeff;
  return v;
}

}  // namespace

bool deficiency_zero_geometric(const ReactionNetwork& net) {
  const LinkageClasses lc = linkage_classes(net);
  // (a) affine independence: differences to the first complex of each class.
  for (const auto& members : lc.members) {
    if (members.size() < 2) continue;
    RationalMatrix diffs;
    auto base = complex_vector(net, net.complexes()[members.front()]);
    for (std::size_t k = 1; k < members.size(); ++k) {
      auto v = complex_vector(net, net.complexes()[members[k]]);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= base[i];
      diffs.append_row(v);
    }
    if (rank(diffs) != members.size() - 1) return false;
  }
  // (b) the per-class subspaces, spanned by their reaction vectors, form a
  // direct sum.
  std::vector<RationalMatrix> per_class(lc.count());
  for (std::size_t j = 0; j < net.num_reactions(); ++j) {
    auto rv = net.reaction_vector(j);
    std::vector<Rational> row(rv.begin(), rv.end());
    per_class[lc.class_of[net.reactions()[j].source]].append_row(row);
  }
  RationalMatrix all;
  std::size_t dim_sum = 0;
  for (const auto& block : per_class) {
    if (block.rows() == 0) continue;
    dim_sum += rank(block);
    for (std::size_t i = 0; i < block.rows(); ++i) all.append_row(block.row(i));
  }
  std::size_t total = all.rows() == 0 ? 0 : rank(all);
  return total == dim_sum;
}

std::optional<RationalMatrix> independently_conserved(const ReactionNetwork& net,
                                                      const std::vector<std::string>& E) {
  if (E.empty()) throw NetworkError("species set must be nonempty");
  std::vector<std::size_t> cols;
  std::set<std::size_t> seen;
  for (const auto& name : E) {
    std::size_t idx = net.require_species(name);
    if (!seen.insert(idx).second) throw NetworkError("species '" + name + "' listed twice");
    cols.push_back(idx);
  }
  ConservationBasis basis = conservation_laws(net);
  if (basis.d() < cols.size()) return std::nullopt;

  // Pivot greedily on the E columns first; the set is independently
  // conserved iff every E column becomes a pivot.
  std::vector<std::size_t> order = cols;
  for (std::size_t j = 0; j < net.num_species(); ++j) {
    if (!seen.count(j)) order.push_back(j);
  }
  EchelonForm e = rref(basis.W, order);
  if (e.pivots.size() < cols.size()) return std::nullopt;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (e.pivots[i] != cols[i]) return std::nullopt;
  }
  RationalMatrix witnesses;
  for (std::size_t i = 0; i < cols.size(); ++i) witnesses.append_row(e.reduced.row(i));
  return witnesses;
}

}  // namespace crn
