#include <cctype>
#include <charconv>
#include <sstream>

#include "crn/network.hpp"

namespace crn {
namespace {

constexpr std::string_view kSpeciesPragma = "species:";

struct Term {
  std::uint32_t coefficient;
  std::string species;
};

// Cursor over one line of input; columns are 1-based.
class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_number)
      : line_(line), line_number_(line_number) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_number_, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= line_.size();
  }

  bool consume(std::string_view token) {
    skip_ws();
    if (line_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < line_.size() ? line_[pos_] : '\0';
  }

  std::size_t column() const { return pos_ + 1; }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= line_.size() || !std::isalpha(static_cast<unsigned char>(line_[pos_]))) {
      fail("expected identifier");
    }
    while (pos_ < line_.size()) {
      char ch = line_[pos_];
      if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '*') {
        ++pos_;
      } else {
        break;
      }
    }
    return std::string(line_.substr(start, pos_ - start));
  }

  std::optional<std::uint64_t> integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    if (start == pos_) return std::nullopt;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(line_.data() + start, line_.data() + pos_, value);
    if (ec != std::errc()) {
      pos_ = start;
      fail("integer out of range");
    }
    return value;
  }

  double number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_])) &&
           line_[pos_] != ',') {
      ++pos_;
    }
    std::string token(line_.substr(start, pos_ - start));
    try {
      std::size_t used = 0;
      double value = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      return value;
    } catch (const std::exception&) {
      pos_ = start;
      fail("expected a number");
    }
  }

  // complex := "0" | term ("+" term)*
  std::vector<Term> complex() {
    skip_ws();
    std::vector<Term> terms;
    std::size_t start = pos_;
    if (auto n = integer()) {
      skip_ws();
      bool followed_by_identifier =
          pos_ < line_.size() && std::isalpha(static_cast<unsigned char>(line_[pos_]));
      if (!followed_by_identifier) {
        if (*n != 0) {
          pos_ = start;
          fail("a bare integer other than 0 is not a complex");
        }
        return terms;  // zero complex
      }
      if (*n == 0) {
        pos_ = start;
        fail("stoichiometric coefficient must be positive");
      }
      if (*n > 1000000) {
        pos_ = start;
        fail("stoichiometric coefficient too large");
      }
      terms.push_back({static_cast<std::uint32_t>(*n), identifier()});
    } else {
      terms.push_back({1, identifier()});
    }
    while (peek() == '+') {
      consume("+");
      std::size_t term_start = pos_;
      std::uint32_t coeff = 1;
      if (auto n = integer()) {
        if (*n == 0 || *n > 1000000) {
          pos_ = term_start;
          fail("stoichiometric coefficient must be a positive integer");
        }
        coeff = static_cast<std::uint32_t>(*n);
      }
      terms.push_back({coeff, identifier()});
    }
    return terms;
  }

 private:
  std::string_view line_;
  std::size_t line_number_;
  std::size_t pos_ = 0;
};

std::map<std::string, std::uint32_t> to_map(const std::vector<Term>& terms) {
  std::map<std::string, std::uint32_t> out;
  for (const auto& t : terms) out[t.species] += t.coefficient;
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

ParsedNetwork parse_network_with_rates(std::string_view text) {
  NetworkBuilder builder;
  RateAssignment rates;
  std::size_t line_number = 0;
  std::size_t declared = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    std::string_view body = raw;
    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) {
      std::string_view comment = trim(raw.substr(hash + 1));
      if (trim(raw.substr(0, hash)).empty() && comment.substr(0, kSpeciesPragma.size()) == kSpeciesPragma) {
        // `# species: A B C` fixes the canonical species order.
        std::istringstream names{std::string(comment.substr(kSpeciesPragma.size()))};
        std::string name;
        while (names >> name) {
          if (!is_valid_identifier(name)) {
            throw ParseError("invalid species name '" + name + "' in species comment", line_number, hash + 1);
          }
          builder.add_species(name);
        }
      }
      body = raw.substr(0, hash);
    }

    LineParser p(body, line_number);
    if (p.at_end()) {
      if (end == text.size()) break;
      continue;
    }

    ++declared;
    auto source = p.complex();
    bool reversible = false;
    std::size_t arrow_column = p.column();
    if (p.consume("<->")) {
      reversible = true;
    } else if (!p.consume("->")) {
      p.fail("expected '->' or '<->'");
    }
    auto product = p.complex();

    std::string base = "r" + std::to_string(declared);
    std::vector<double> annotated;
    if (p.consume("@")) {
      if (p.peek() != '=') base = p.identifier();
      if (p.consume("=")) {
        annotated.push_back(p.number());
        if (p.consume(",")) annotated.push_back(p.number());
      }
    }
    if (!p.at_end()) p.fail("unexpected trailing input");

    for (const auto* side : {&source, &product}) {
      for (const auto& t : *side) builder.add_species(t.species);
    }
    auto src = to_map(source);
    auto prod = to_map(product);
    if (src == prod) throw ParseError("self-loop: source equals product", line_number, arrow_column);

    std::vector<std::pair<std::string, bool>> emitted;  // label, reversed
    if (reversible) {
      emitted = {{base + "_fwd", false}, {base + "_rev", true}};
      if (annotated.size() == 1) {
        throw ParseError("reversible reaction needs two rates 'kf, kr'", line_number, arrow_column);
      }
    } else {
      emitted = {{base, false}};
      if (annotated.size() > 1) {
        throw ParseError("irreversible reaction takes a single rate", line_number, arrow_column);
      }
    }
    for (std::size_t k = 0; k < emitted.size(); ++k) {
      const auto& [label, reversed] = emitted[k];
      if (builder.has_label(label)) {
        throw ParseError("duplicate reaction label '" + label + "'", line_number, 1);
      }
      try {
        if (reversed) {
          builder.add_reaction(prod, src, label);
        } else {
          builder.add_reaction(src, prod, label);
        }
      } catch (const NetworkError& e) {
        throw ParseError(e.what(), line_number, 1);
      }
      if (!annotated.empty()) {
        double value = annotated[k];
        if (!(value > 0.0)) throw ParseError("rate for '" + label + "' must be positive", line_number, 1);
        rates.set(label, value);
      }
    }
    if (end == text.size()) break;
  }
  ReactionNetwork net = builder.build();
  if (net.num_reactions() == 0) throw ParseError("network has no reactions", line_number, 1);
  return {std::move(net), std::move(rates)};
}

ReactionNetwork parse_network(std::string_view text) { return parse_network_with_rates(text).network; }

std::string canonical_serialize(const ReactionNetwork& net) {
  std::ostringstream out;
  out << "# species:";
  for (const auto& s : net.species()) out << ' ' << s;
  out << '\n';
  for (std::size_t j = 0; j < net.num_reactions(); ++j) {
    out << net.format_reaction(j) << " @ " << net.reactions()[j].label << '\n';
  }
  return out.str();
}

}  // namespace crn
