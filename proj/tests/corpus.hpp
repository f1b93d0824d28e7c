#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "crn/families.hpp"
#include "crn/modifications.hpp"
#include "crn/network.hpp"

#ifndef CRN_TEST_DIR
#error "CRN_TEST_DIR must point at the tests directory"
#endif

namespace corpus {

inline std::string test_path(const std::string& rel) { return std::string(CRN_TEST_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Entry {
  std::string name;
  crn::ReactionNetwork net;
};

// Hand-written networks from tests/corpus plus the generated families and
// their modifications.
inline std::vector<Entry> all() {
  std::vector<Entry> out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(test_path("corpus"))) {
    if (e.path().extension() == ".crn") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& p : files) out.push_back({p.stem().string(), crn::parse_network(read_file(p.string()))});

  using crn::open_species;
  using crn::phosphorylation_cycle;
  for (std::size_t n = 1; n <= 4; ++n) out.push_back({"P" + std::to_string(n), phosphorylation_cycle(n)});
  auto p2 = phosphorylation_cycle(2);
  out.push_back({"P2_open_S0", open_species(p2, {"S0"})});
  out.push_back({"P2_open_S1", open_species(p2, {"S1"})});
  out.push_back({"P2_open_E", open_species(p2, {"E"})});
  out.push_back({"P2_open_EF", open_species(p2, {"E", "F"})});
  out.push_back({"P2_open_EFS0", open_species(p2, {"E", "F", "S0"})});
  out.push_back({"P2_minus_EF", crn::collapse_parallel(crn::project_complement(p2, {"E", "F"}).network).network});
  out.push_back({"cascade", crn::small_cascade()});
  out.push_back({"cascade_minus_E",
                 crn::collapse_parallel(crn::project_complement(crn::small_cascade(), crn::small_cascade_enzymes()).network)
                     .network});
  out.push_back({"mapk", crn::mapk_cascade()});
  return out;
}

}  // namespace corpus
