#include "crn/network.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace crn {

ParseError::ParseError(std::string message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

bool is_valid_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '*';
  });
}

// ---------------------------------------------------------------- Complex

Complex::Complex(std::map<std::size_t, std::uint32_t> coefficients) {
  for (auto [species, c] : coefficients) {
    if (c > 0) coefficients_.emplace(species, c);
  }
}

Complex Complex::single(std::size_t species, std::uint32_t coefficient) {
  return Complex({{species, coefficient}});
}

std::uint32_t Complex::coefficient(std::size_t species) const {
  auto it = coefficients_.find(species);
  return it == coefficients_.end() ? 0 : it->second;
}

std::uint32_t Complex::molecularity() const {
  std::uint32_t total = 0;
  for (auto [_, c] : coefficients_) total += c;
  return total;
}

// -------------------------------------------------------- ReactionNetwork

std::optional<std::size_t> ReactionNetwork::species_index(std::string_view name) const {
  auto it = std::find(species_.begin(), species_.end(), name);
  if (it == species_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - species_.begin());
}

std::size_t ReactionNetwork::require_species(std::string_view name) const {
  auto idx = species_index(name);
  if (!idx) throw NetworkError("unknown species '" + std::string(name) + "'");
  return *idx;
}

std::optional<std::size_t> ReactionNetwork::reaction_index(std::string_view label) const {
  for (std::size_t j = 0; j < reactions_.size(); ++j) {
    if (reactions_[j].label == label) return j;
  }
  return std::nullopt;
}

std::optional<std::size_t> ReactionNetwork::complex_index(const Complex& c) const {
  auto it = std::find(complexes_.begin(), complexes_.end(), c);
  if (it == complexes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - complexes_.begin());
}

std::vector<std::int64_t> ReactionNetwork::reaction_vector(std::size_t reaction) const {
  std::vector<std::int64_t> v(species_.size(), 0);
  const Reaction& r = reactions_.at(reaction);
  for (auto [s, c] : complexes_[r.source].coefficients()) v[s] -= c;
  for (auto [s, c] : complexes_[r.product].coefficients()) v[s] += c;
  return v;
}

std::string ReactionNetwork::format_complex(const Complex& c) const {
  if (c.is_zero()) return "0";
  std::string out;
  for (auto [s, coeff] : c.coefficients()) {
    if (!out.empty()) out += " + ";
    if (coeff != 1) out += std::to_string(coeff);
    out += species_[s];
  }
  return out;
}

std::string ReactionNetwork::format_reaction(std::size_t reaction) const {
  const Reaction& r = reactions_.at(reaction);
  return format_complex(complexes_[r.source]) + " -> " + format_complex(complexes_[r.product]);
}

std::vector<std::string> ReactionNetwork::labels() const {
  std::vector<std::string> out;
  out.reserve(reactions_.size());
  for (const auto& r : reactions_) out.push_back(r.label);
  return out;
}

// --------------------------------------------------------- NetworkBuilder

NetworkBuilder::NetworkBuilder(const ReactionNetwork& base) : net_(base) {}

std::size_t NetworkBuilder::add_species(const std::string& name) {
  if (auto idx = net_.species_index(name)) return *idx;
  if (!is_valid_identifier(name)) throw NetworkError("invalid species name '" + name + "'");
  net_.species_.push_back(name);
  return net_.species_.size() - 1;
}

std::size_t NetworkBuilder::intern_complex(const Complex& c) {
  if (auto idx = net_.complex_index(c)) return *idx;
  net_.complexes_.push_back(c);
  return net_.complexes_.size() - 1;
}

bool NetworkBuilder::has_label(std::string_view label) const {
  return net_.reaction_index(label).has_value();
}

void NetworkBuilder::add_reaction(const std::map<std::string, std::uint32_t>& source,
                                  const std::map<std::string, std::uint32_t>& product,
                                  const std::string& label) {
  auto to_complex = [this](const std::map<std::string, std::uint32_t>& terms) {
    std::map<std::size_t, std::uint32_t> coeffs;
    for (const auto& [name, c] : terms) {
      if (c == 0) continue;
      coeffs[add_species(name)] += c;
    }
    return Complex(std::move(coeffs));
  };
  Complex src = to_complex(source);
  Complex prod = to_complex(product);
  add_reaction(src, prod, label);
}

void NetworkBuilder::add_reaction(const Complex& source, const Complex& product,
                                  const std::string& label) {
  if (source == product) throw NetworkError("self-loop reaction '" + label + "'");
  if (!is_valid_identifier(label)) throw NetworkError("invalid reaction label '" + label + "'");
  if (has_label(label)) throw NetworkError("duplicate reaction label '" + label + "'");
  for (const auto* c : {&source, &product}) {
    for (auto [s, _] : c->coefficients()) {
      if (s >= net_.species_.size()) throw NetworkError("complex references unknown species index");
    }
  }
  Reaction r;
  r.source = intern_complex(source);
  r.product = intern_complex(product);
  r.label = label;
  net_.reactions_.push_back(std::move(r));
}

ReactionNetwork NetworkBuilder::build() const { return net_; }

// ------------------------------------------------------------------ misc

IntMatrix stoichiometric_matrix(const ReactionNetwork& net) {
  IntMatrix m;
  m.rows = net.num_species();
  m.cols = net.num_reactions();
  m.data.assign(m.rows * m.cols, 0);
  for (std::size_t j = 0; j < m.cols; ++j) {
    auto v = net.reaction_vector(j);
    for (std::size_t i = 0; i < m.rows; ++i) m(i, j) = v[i];
  }
  return m;
}

RateAssignment::RateAssignment(std::map<std::string, double> rates) : rates_(std::move(rates)) {}

void RateAssignment::set(const std::string& label, double value) { rates_[label] = value; }

double RateAssignment::at(const std::string& label) const {
  auto it = rates_.find(label);
  if (it == rates_.end()) throw NetworkError("no rate for reaction '" + label + "'");
  return it->second;
}

void RateAssignment::validate_for(const ReactionNetwork& net) const {
  for (const auto& r : net.reactions()) {
    auto it = rates_.find(r.label);
    if (it == rates_.end()) throw NetworkError("missing rate for reaction '" + r.label + "'");
    if (!(it->second > 0.0)) throw NetworkError("rate for '" + r.label + "' must be positive");
  }
  for (const auto& [label, _] : rates_) {
    if (!net.reaction_index(label)) throw NetworkError("rate given for unknown reaction '" + label + "'");
  }
}

std::vector<double> RateAssignment::ordered(const ReactionNetwork& net) const {
  std::vector<double> out;
  out.reserve(net.num_reactions());
  for (const auto& r : net.reactions()) out.push_back(at(r.label));
  return out;
}

std::vector<std::string> reaction_signature(const ReactionNetwork& net, bool with_labels) {
  auto named = [&](const Complex& c) {
    std::vector<std::pair<std::string, std::uint32_t>> terms;
    for (auto [s, coeff] : c.coefficients()) terms.emplace_back(net.species()[s], coeff);
    std::sort(terms.begin(), terms.end());
    std::string out = "{";
    for (const auto& [name, coeff] : terms) out += name + ":" + std::to_string(coeff) + ",";
    return out + "}";
  };
  std::vector<std::string> sig;
  for (const auto& r : net.reactions()) {
    std::string entry = named(net.source(r)) + "->" + named(net.product(r));
    if (with_labels) entry += "@" + r.label;
    sig.push_back(std::move(entry));
  }
  std::sort(sig.begin(), sig.end());
  std::vector<std::string> species = net.species();
  std::sort(species.begin(), species.end());
  for (auto& s : species) sig.push_back("#" + s);
  return sig;
}

bool isomorphic(const ReactionNetwork& a, const ReactionNetwork& b, bool with_labels) {
  return reaction_signature(a, with_labels) == reaction_signature(b, with_labels);
}

FlowReactions flow_reactions(const ReactionNetwork& net, std::size_t species) {
  FlowReactions flows;
  const Complex single = Complex::single(species);
  for (std::size_t j = 0; j < net.num_reactions(); ++j) {
    const auto& src = net.source(net.reactions()[j]);
    const auto& prod = net.product(net.reactions()[j]);
    if (src.is_zero() && prod == single) flows.inflow.push_back(j);
    if (src == single && prod.is_zero()) flows.outflow.push_back(j);
  }
  return flows;
}

}  // namespace crn
