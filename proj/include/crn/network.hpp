#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace crn {

/// Raised for malformed reaction-DSL input. Carries a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Raised when an operation's precondition on a network is violated.
class NetworkError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_valid_identifier(std::string_view name);

/// A complex: sparse nonnegative integer combination of species indices.
/// Only strictly positive coefficients are stored; the empty map is the
/// zero complex.
class Complex {
 public:
  Complex() = default;
  explicit Complex(std::map<std::size_t, std::uint32_t> coefficients);

  static Complex zero() { return Complex(); }
  static Complex single(std::size_t species, std::uint32_t coefficient = 1);

  const std::map<std::size_t, std::uint32_t>& coefficients() const { return coefficients_; }
  std::uint32_t coefficient(std::size_t species) const;
  bool is_zero() const { return coefficients_.empty(); }
  std::uint32_t molecularity() const;
  bool contains(std::size_t species) const { return coefficients_.count(species) != 0; }

  auto operator<=>(const Complex&) const = default;

 private:
  std::map<std::size_t, std::uint32_t> coefficients_;
};

struct Reaction {
  std::size_t source = 0;   // index into ReactionNetwork::complexes()
  std::size_t product = 0;
  std::string label;
};

/// Reaction network (E-graph): species, deduplicated complexes, and labeled
/// directed reactions between complexes. Immutable once built; use
/// NetworkBuilder to construct one.
class ReactionNetwork {
 public:
  ReactionNetwork() = default;

  const std::vector<std::string>& species() const { return species_; }
  const std::vector<Complex>& complexes() const { return complexes_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }

  std::size_t num_species() const { return species_.size(); }
  std::size_t num_complexes() const { return complexes_.size(); }
  std::size_t num_reactions() const { return reactions_.size(); }

  std::optional<std::size_t> species_index(std::string_view name) const;
  std::size_t require_species(std::string_view name) const;
  std::optional<std::size_t> reaction_index(std::string_view label) const;
  std::optional<std::size_t> complex_index(const Complex& c) const;

  const Complex& source(const Reaction& r) const { return complexes_[r.source]; }
  const Complex& product(const Reaction& r) const { return complexes_[r.product]; }

  /// Reaction vector product - source in canonical species order.
  std::vector<std::int64_t> reaction_vector(std::size_t reaction) const;

  /// Human-readable complex, e.g. "S0 + E", "2A", or "0".
  std::string format_complex(const Complex& c) const;
  std::string format_reaction(std::size_t reaction) const;

  std::vector<std::string> labels() const;

 private:
  friend class NetworkBuilder;

  std::vector<std::string> species_;
  std::vector<Complex> complexes_;
  std::vector<Reaction> reactions_;
};

/// Incremental construction with validation. Complexes are deduplicated
/// structurally; species appear in insertion order.
class NetworkBuilder {
 public:
  NetworkBuilder() = default;
  explicit NetworkBuilder(const ReactionNetwork& base);

  std::size_t add_species(const std::string& name);
  /// Adds a reaction between complexes given as name -> coefficient maps.
  /// Throws NetworkError on self-loops or duplicate labels.
  void add_reaction(const std::map<std::string, std::uint32_t>& source,
                    const std::map<std::string, std::uint32_t>& product, const std::string& label);
  void add_reaction(const Complex& source, const Complex& product, const std::string& label);

  bool has_label(std::string_view label) const;
  const std::vector<std::string>& species() const { return net_.species_; }

  ReactionNetwork build() const;

 private:
  std::size_t intern_complex(const Complex& c);

  ReactionNetwork net_;
};

/// Integer stoichiometric matrix, |species| x |reactions|, row-major.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  std::int64_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
};

IntMatrix stoichiometric_matrix(const ReactionNetwork& net);

/// Positive rate constant per reaction label.
class RateAssignment {
 public:
  RateAssignment() = default;
  explicit RateAssignment(std::map<std::string, double> rates);

  void set(const std::string& label, double value);
  double at(const std::string& label) const;
  bool contains(const std::string& label) const { return rates_.count(label) != 0; }
  const std::map<std::string, double>& values() const { return rates_; }

  /// Checks the domain matches the network's labels and every value is > 0.
  void validate_for(const ReactionNetwork& net) const;
  /// Rates in the network's reaction order.
  std::vector<double> ordered(const ReactionNetwork& net) const;

 private:
  std::map<std::string, double> rates_;
};

struct ParsedNetwork {
  ReactionNetwork network;
  RateAssignment rates;  // inline `@ label = value` annotations, possibly partial
};

/// Parses the line-oriented reaction DSL. Throws ParseError.
ReactionNetwork parse_network(std::string_view text);
ParsedNetwork parse_network_with_rates(std::string_view text);

/// Deterministic DSL text. Every reaction is written with an explicit
/// label, and a leading `# species:` comment pins the species order.
std::string canonical_serialize(const ReactionNetwork& net);

/// Canonical, order-independent description of the reaction multiset in
/// terms of species names. Two networks are isomorphic under their names iff
/// their signatures match.
std::vector<std::string> reaction_signature(const ReactionNetwork& net, bool with_labels = false);
bool isomorphic(const ReactionNetwork& a, const ReactionNetwork& b, bool with_labels = false);

/// Flow reactions for a species X: indices of 0 -> X and X -> 0.
struct FlowReactions {
  std::vector<std::size_t> inflow;
  std::vector<std::size_t> outflow;
  bool closed() const { return inflow.empty() && outflow.empty(); }
  bool open() const { return !inflow.empty() && !outflow.empty(); }
};
FlowReactions flow_reactions(const ReactionNetwork& net, std::size_t species);

}  // namespace crn
