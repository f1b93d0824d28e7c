#include "crn/families.hpp"

#include <set>

namespace crn {

namespace {

using Terms = std::map<std::string, std::uint32_t>;

Terms pair_of(const std::string& a, const std::string& b) { return {{a, 1}, {b, 1}}; }
Terms one(const std::string& a) { return {{a, 1}}; }

// enzyme + substrate <-> complex -> enzyme + product
void add_michaelis_menten(NetworkBuilder& b, const std::string& enzyme, const std::string& substrate,
                          const std::string& complex, const std::string& product) {
  b.add_reaction(pair_of(enzyme, substrate), one(complex), "bind_" + complex);
  b.add_reaction(one(complex), pair_of(enzyme, substrate), "unbind_" + complex);
  b.add_reaction(one(complex), pair_of(enzyme, product), "cat_" + complex);
}

}  // namespace

ReactionNetwork phosphorylation_cycle(std::size_t n) {
  if (n == 0) throw NetworkError("phosphorylation cycle needs n >= 1");
  auto S = [](std::size_t i) { return "S" + std::to_string(i); };
  NetworkBuilder b;
  for (std::size_t i = 0; i <= n; ++i) b.add_species(S(i));
  b.add_species("E");
  b.add_species("F");
  for (std::size_t i = 0; i < n; ++i) b.add_species("ES" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) b.add_species("FS" + std::to_string(i));

  for (std::size_t i = 0; i < n; ++i) {
    std::string k = std::to_string(i);
    b.add_reaction(pair_of(S(i), "E"), one("ES" + k), "bindE" + k);
    b.add_reaction(one("ES" + k), pair_of(S(i), "E"), "unbindE" + k);
    b.add_reaction(one("ES" + k), pair_of(S(i + 1), "E"), "catE" + k);
  }
  for (std::size_t i = n; i >= 1; --i) {
    std::string k = std::to_string(i);
    b.add_reaction(pair_of(S(i), "F"), one("FS" + k), "bindF" + k);
    b.add_reaction(one("FS" + k), pair_of(S(i), "F"), "unbindF" + k);
    b.add_reaction(one("FS" + k), pair_of(S(i - 1), "F"), "catF" + k);
  }
  return b.build();
}

ReactionNetwork small_cascade() {
  NetworkBuilder b;
  for (const char* s : {"W", "E1", "WE1", "W*", "E2", "W*E2", "Z", "ZW*", "Z*", "E3", "Z*E3"}) b.add_species(s);
  add_michaelis_menten(b, "E1", "W", "WE1", "W*");
  add_michaelis_menten(b, "E2", "W*", "W*E2", "W");
  add_michaelis_menten(b, "W*", "Z", "ZW*", "Z*");
  add_michaelis_menten(b, "E3", "Z*", "Z*E3", "Z");
  return b.build();
}

std::vector<std::string> small_cascade_enzymes() { return {"E1", "E2", "E3", "W*"}; }

ReactionNetwork mapk_cascade() {
  NetworkBuilder b;
  for (const char* s : {"E1", "Z", "E1Z", "Zp", "F1", "F1Zp", "Y", "ZpY", "Yp", "ZpYp", "Ypp",
                        "F2", "F2Ypp", "F2Yp", "X", "YppX", "Xp", "YppXp", "Xpp", "F3", "F3Xpp", "F3Xp"}) {
    b.add_species(s);
  }
  add_michaelis_menten(b, "E1", "Z", "E1Z", "Zp");
  add_michaelis_menten(b, "F1", "Zp", "F1Zp", "Z");
  add_michaelis_menten(b, "Zp", "Y", "ZpY", "Yp");
  add_michaelis_menten(b, "Zp", "Yp", "ZpYp", "Ypp");
  add_michaelis_menten(b, "F2", "Ypp", "F2Ypp", "Yp");
  add_michaelis_menten(b, "F2", "Yp", "F2Yp", "Y");
  add_michaelis_menten(b, "Ypp", "X", "YppX", "Xp");
  add_michaelis_menten(b, "Ypp", "Xp", "YppXp", "Xpp");
  add_michaelis_menten(b, "F3", "Xpp", "F3Xpp", "Xp");
  add_michaelis_menten(b, "F3", "Xp", "F3Xp", "X");
  return b.build();
}

std::vector<std::string> mapk_enzymes() { return {"F1", "F2", "F3", "E1", "Zp", "Ypp"}; }

ReactionNetwork build_family(const FamilySpec& spec) {
  ReactionNetwork net;
  switch (spec.kind) {
    case FamilySpec::Kind::phospho_cycle:
      net = phosphorylation_cycle(spec.n);
      break;
    case FamilySpec::Kind::small_cascade:
      net = small_cascade();
      break;
    case FamilySpec::Kind::mapk:
      net = mapk_cascade();
      break;
  }
  std::set<std::string> opened(spec.opened.begin(), spec.opened.end());
  for (const auto& [X, _] : spec.partial) {
    if (opened.count(X)) throw NetworkError("species '" + X + "' is both opened and partially opened");
  }
  if (!spec.opened.empty()) net = open_species(net, spec.opened);
  for (const auto& [X, dir] : spec.partial) net = open_partial(net, X, dir);
  return net;
}

}  // namespace crn
