#include "doctest.h"

#include <set>

#include "checks.hpp"
#include "corpus.hpp"
#include "crn/certificates.hpp"
#include "crn/families.hpp"
#include "crn/modifications.hpp"
#include "crn/numerics.hpp"
#include "crn/structure.hpp"
#include "oracles.hpp"
#include "reference_data.hpp"

using namespace crn;

namespace {

const std::vector<corpus::Entry>& nets() {
  static const std::vector<corpus::Entry> all = corpus::all();
  return all;
}

RationalMatrix gamma_q(const ReactionNetwork& net) { return RationalMatrix::from_int(stoichiometric_matrix(net)); }

// Projection sets tried per network: each closed species alone, and the
// first two closed species together.
std::vector<std::vector<std::string>> projection_sets(const ReactionNetwork& net) {
  std::vector<std::string> closed;
  for (std::size_t s = 0; s < net.num_species(); ++s) {
    if (flow_reactions(net, s).closed()) closed.push_back(net.species()[s]);
  }
  std::vector<std::vector<std::string>> out;
  if (net.num_species() < 2) return out;
  for (const auto& X : closed) out.push_back({X});
  if (closed.size() >= 2 && net.num_species() > 2) out.push_back({closed[0], closed[1]});
  return out;
}

}  // namespace

TEST_CASE("corpus size") { CHECK(nets().size() >= 25); }

TEST_CASE("serialization round trip") {
  std::vector<corpus::Entry> all = nets();
  for (std::size_t n = 1; n <= 10; ++n) all.push_back({"P" + std::to_string(n), phosphorylation_cycle(n)});
  for (const auto& [name, net] : all) {
    CAPTURE(name);
    std::string text = canonical_serialize(net);
    auto back = parse_network(text);
    CHECK(back.species() == net.species());
    CHECK(isomorphic(back, net, true));
    CHECK(canonical_serialize(back) == text);
  }
}

TEST_CASE("cycle generator sizes") {
  for (std::size_t n = 1; n <= 10; ++n) {
    auto p = phosphorylation_cycle(n);
    CHECK(p.num_species() == 3 * n + 3);
    CHECK(p.num_reactions() == 6 * n);
  }
}

TEST_CASE("no zero columns in the stoichiometric matrix") {
  for (const auto& [name, net] : nets()) {
    CAPTURE(name);
    Eigen::MatrixXd G = oracle::gamma(net);
    for (Eigen::Index j = 0; j < G.cols(); ++j) CHECK(G.col(j).cwiseAbs().maxCoeff() > 0.0);
  }
}

TEST_CASE("conservation laws annihilate the stoichiometric matrix exactly") {
  for (const auto& [name, net] : nets()) {
    CAPTURE(name);
    auto W = conservation_laws(net).W;
    CHECK((W * gamma_q(net)).is_zero());
    CHECK(rank(W) == W.rows());
    CHECK(stoichiometric_rank(net) == net.num_species() - W.rows());
    CHECK(stoichiometric_rank(net) == oracle::float_rank(oracle::gamma(net)));
  }
}

TEST_CASE("deficiency formula agrees with the geometric test") {
  for (const auto& [name, net] : nets()) {
    if (net.num_complexes() > 20) continue;
    CAPTURE(name);
    auto rep = deficiency(net);
    CHECK(rep.num_complexes == net.num_complexes());
    CHECK(rep.deficiency == rep.num_complexes - rep.num_linkage_classes - rep.stoich_dimension);
    CHECK((rep.deficiency == 0) == deficiency_zero_geometric(net));
  }
}

TEST_CASE("linkage classes and weak reversibility match the oracles") {
  for (const auto& [name, net] : nets()) {
    CAPTURE(name);
    CHECK(linkage_classes(net).count() == oracle::linkage_count(net));
    CHECK(is_weakly_reversible(net) == oracle::weakly_reversible(net));
    CHECK(deficiency(net).weakly_reversible == oracle::weakly_reversible(net));
  }
}

TEST_CASE("cycle conservation laws") {
  for (std::size_t n = 1; n <= 10; ++n) {
    CAPTURE(n);
    auto W = conservation_laws(phosphorylation_cycle(n)).W;
    CHECK(W.rows() == 3);
    CHECK(W == rref(oracle::to_rational(oracle::cycle_laws(n))).reduced);
  }
}

TEST_CASE("opening substrates of the cycle keeps only the enzyme laws") {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto p = phosphorylation_cycle(n);
    auto L = oracle::cycle_laws(n);
    auto LEF = oracle::to_rational({L[0], L[1]});
    for (std::size_t i = 0; i <= n; ++i) {
      CAPTURE(n);
      CAPTURE(i);
      auto one = open_species(p, {"S" + std::to_string(i)});
      auto W = conservation_laws(one).W;
      CHECK(W.rows() == 2);
      CHECK(oracle::same_row_space(W, LEF));
      if (n >= 1) {
        std::size_t j = (i + 1) % (n + 1);
        auto two = open_species(one, {"S" + std::to_string(j)});
        CHECK(conservation_laws(two).W == W);
      }
    }
  }
}

TEST_CASE("projection invariants") {
  for (const auto& [name, net] : nets()) {
    for (const auto& E : projection_sets(net)) {
      CAPTURE(name);
      CAPTURE(E.size());
      CAPTURE(E[0]);
      auto proj = project_complement(net, E);
      auto opened = open_species(net, E);
      CHECK(opened.num_species() == net.num_species());
      CHECK(proj.network.num_species() == net.num_species() - E.size());

      auto from_open = project_complement(opened, E);
      CHECK(oracle::signature(from_open.network, true) == oracle::signature(proj.network, true));

      // Stoichiometric subspace of G_{-E} versus the coordinate projection of im Gamma.
      std::set<std::string> drop(E.begin(), E.end());
      std::vector<std::size_t> keep;
      for (std::size_t s = 0; s < net.num_species(); ++s) {
        if (!drop.count(net.species()[s])) keep.push_back(s);
      }
      auto projected_image = gamma_q(net).transpose().select_columns(keep);
      auto image = gamma_q(proj.network).transpose();
      CHECK(oracle::same_row_space(image, projected_image));
    }
  }
}

TEST_CASE("independent conservation is monotone in the species set") {
  for (const auto& [name, net] : nets()) {
    CAPTURE(name);
    const auto& sp = net.species();
    std::vector<std::vector<std::string>> sets;
    for (std::size_t a = 0; a < sp.size(); ++a) {
      sets.push_back({sp[a]});
      for (std::size_t b = a + 1; b < sp.size(); ++b) sets.push_back({sp[a], sp[b]});
    }
    for (const auto& E : sets) {
      if (independently_conserved(net, E)) continue;
      for (const auto& extra : sp) {
        if (std::find(E.begin(), E.end(), extra) != E.end()) continue;
        auto bigger = E;
        bigger.push_back(extra);
        CAPTURE(extra);
        CHECK_FALSE(independently_conserved(net, bigger));
      }
    }
  }
}

TEST_CASE("witness laws separate the chosen species") {
  for (const auto& [name, net] : nets()) {
    for (const auto& s : net.species()) {
      auto L = independently_conserved(net, {s});
      if (!L) continue;
      CAPTURE(name);
      CHECK((*L * gamma_q(net)).is_zero());
      CHECK((*L)(0, net.require_species(s)) != 0);
    }
  }
}

TEST_CASE("conservation rows annihilate f on the corpus") {
  std::mt19937_64 rng(11);
  for (const auto& [name, net] : nets()) {
    CAPTURE(name);
    auto k = random_rates(net, 21);
    MassActionSystem sys(net, k);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      auto x = checks::random_point(rng, net.num_species());
      double scale = 1.0 + (sys.gamma().cwiseAbs() * sys.fluxes(x)).maxCoeff();
      if (sys.num_laws() == 0) break;
      worst = std::max(worst, (sys.W() * sys.rhs(x)).cwiseAbs().maxCoeff() / scale);
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("rhs and jacobian agree with the explicit oracle") {
  std::mt19937_64 rng(12);
  for (const auto& [name, net] : nets()) {
    CAPTURE(name);
    auto k = random_rates(net, 22);
    double worst_f = 0.0, worst_j = 0.0;
    for (int t = 0; t < 100; ++t) {
      auto x = checks::random_point(rng, net.num_species());
      Eigen::VectorXd f = rhs(net, k, x), g = oracle::rhs(net, k, x);
      worst_f = std::max(worst_f, (f - g).cwiseAbs().maxCoeff() / (1.0 + g.cwiseAbs().maxCoeff()));
      worst_j = std::max(worst_j, oracle::max_rel_error(jacobian(net, k, x), oracle::fd_jacobian(net, k, x)));
    }
    CHECK(worst_f <= 1e-13);
    CHECK(worst_j <= 1e-6);
  }
}

TEST_CASE("search records are converged and in class") {
  std::mt19937_64 rng(13);
  for (const auto& net : {phosphorylation_cycle(1), refdata::open_cycle("S0"), small_cascade(),
                          open_species(phosphorylation_cycle(3), {"E", "F"})}) {
    auto k = random_rates(net, 31);
    MassActionSystem sys(net, k);
    Eigen::VectorXd T = sys.totals(checks::random_point(rng, net.num_species()));
    SearchConfig cfg;
    cfg.num_starts = 60;
    cfg.seed = 4;
    auto res = search_steady_states(sys, T, cfg);
    for (const auto& rec : res.states) {
      CHECK(rec.residual <= cfg.newton_tol);
      CHECK(checks::rel_totals_gap(rec.totals, T) <= 1e-8);
      CHECK(rec.nondegenerate == (rec.rank_gap == 0));
    }
    auto again = search_steady_states(sys, T, cfg);
    REQUIRE(again.states.size() == res.states.size());
    for (std::size_t s = 0; s < res.states.size(); ++s) CHECK(again.states[s].x == res.states[s].x);
  }
}

TEST_CASE("ACR values of the enzyme-opened cycle") {
  for (std::size_t n = 1; n <= 4; ++n) {
    CAPTURE(n);
    auto run = checks::acr_suite(n, 5, 60, 100 + n);
    CHECK(run.states >= 5);
    CHECK(run.worst_error <= 1e-8);
  }
}

TEST_CASE("transferred rates make projected states steady") {
  std::mt19937_64 rng(14);
  for (std::size_t n = 1; n <= 4; ++n) {
    auto net = open_species(phosphorylation_cycle(n), {"E", "F"});
    for (std::uint64_t d = 0; d < 3; ++d) {
      auto k = random_rates(net, 500 + 10 * n + d);
      MassActionSystem sys(net, k);
      SearchConfig cfg;
      cfg.num_starts = 30;
      auto res = search_steady_states(sys, sys.totals(checks::random_point(rng, net.num_species())), cfg);
      REQUIRE_FALSE(res.states.empty());
      CHECK(checks::transfer_consistency(net, {"E", "F"}, k, res.states) <= 1e-8);
    }
  }
  auto cascade = open_species(small_cascade(), small_cascade_enzymes());
  auto k = random_rates(cascade, 77);
  MassActionSystem sys(cascade, k);
  SearchConfig cfg;
  cfg.num_starts = 30;
  auto res = search_steady_states(sys, sys.totals(checks::random_point(rng, cascade.num_species())), cfg);
  REQUIRE_FALSE(res.states.empty());
  CHECK(checks::transfer_consistency(cascade, small_cascade_enzymes(), k, res.states) <= 1e-8);
}

TEST_CASE("projection maps one class into one class") {
  std::mt19937_64 rng(15);
  for (const auto& [name, net] : nets()) {
    for (const auto& E : projection_sets(net)) {
      CAPTURE(name);
      auto proj = project_complement(net, E).network;
      MassActionSystem big(net, random_rates(net, 1));
      MassActionSystem small(proj, random_rates(proj, 1));
      if (small.num_laws() == 0) continue;
      auto x = checks::random_point(rng, net.num_species());
      Eigen::VectorXd v = checks::random_point(rng, net.num_reactions(), -2.0, -1.0);
      Eigen::VectorXd y = x + big.gamma() * v;
      auto restrict = [&](const Eigen::VectorXd& z) {
        Eigen::VectorXd out(static_cast<Eigen::Index>(proj.num_species()));
        for (std::size_t s = 0; s < proj.num_species(); ++s) {
          out(static_cast<Eigen::Index>(s)) = z(static_cast<Eigen::Index>(net.require_species(proj.species()[s])));
        }
        return out;
      };
      CHECK(checks::rel_totals_gap(small.totals(restrict(y)), small.totals(restrict(x))) <= 1e-12);
    }
  }
}

TEST_CASE("certified networks show at most one state per class") {
  std::vector<Certificate> certs;
  for (std::size_t n = 2; n <= 4; ++n) certs.push_back(certify_enzyme_open(phosphorylation_cycle(n), {"E", "F"}));
  certs.push_back(certify_enzyme_open(small_cascade(), small_cascade_enzymes()));
  certs.push_back(certify_open(phosphorylation_cycle(2), {"E", "F", "S0"}));
  certs.push_back(certify_enzyme_open(mapk_cascade(), mapk_enzymes()));
  std::mt19937_64 rng(16);
  for (const auto& c : certs) {
    REQUIRE(c.verdict == Verdict::monostationary);
    REQUIRE(replay(c).ok);
    auto net = parse_network(c.subject);
    for (std::uint64_t d = 0; d < 5; ++d) {
      auto k = random_rates(net, 900 + d);
      MassActionSystem sys(net, k);
      SearchConfig cfg;
      cfg.num_starts = 200;
      cfg.seed = d;
      auto res = search_steady_states(sys, sys.totals(checks::random_point(rng, net.num_species())), cfg);
      CAPTURE(net.num_species());
      CAPTURE(d);
      CHECK(res.states.size() <= 1);
    }
  }
}

TEST_CASE("the cycle symmetry is an automorphism") {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto p = phosphorylation_cycle(n);
    for (std::size_t i = 0; i <= n; ++i) {
      CAPTURE(n);
      CAPTURE(i);
      auto rel = symmetry_relabel(n, i);
      validate_relabeling(p, rel);
      CHECK(isomorphic(apply_relabeling(p, rel), p, true));
      auto open = open_species(p, {"S" + std::to_string(i)});
      CHECK(isomorphic(apply_relabeling(open, rel), open_species(p, {"S" + std::to_string(n - i)}), true));
    }
  }
}

TEST_CASE("lifting preserves residual and nondegeneracy") {
  for (std::string site : {"S0", "S1"}) {
    auto net = refdata::open_cycle(site);
    auto k = site == "S0" ? refdata::open_s0_rates() : refdata::open_s1_rates();
    auto states = site == "S0" ? refdata::open_s0_states() : refdata::open_s1_states();
    MassActionSystem sys(net, k);
    for (const auto& s : states) {
      auto r = refine_free(sys, s);
      REQUIRE(r.converged);
      bool base = is_nondegenerate(sys, r.x, 1e-9).nondegenerate;
      for (double a : {0.1, 1.0, 10.0}) {
        auto lift = lift_steady_state(2, site == "S0" ? 0 : 1, k, r.x, a);
        CHECK(lift.residual <= sys.scaled_residual(r.x) + 1e-12);
        CHECK(lift.totals_preserved);
        if (base) CHECK(lift.nondegenerate);
      }
    }
  }
}

TEST_CASE("stored witnesses re-verify") {
  for (const auto& file : checks::fixture_files()) {
    auto c = checks::verify_fixture(file);
    CAPTURE(file);
    CHECK(c.states >= 2);
    CHECK(c.worst_residual <= 1e-9);
    CHECK(c.worst_totals_gap <= 1e-8);
    CHECK(c.all_nondegenerate);
  }
}

TEST_CASE("structural reports are stable") {
  for (const auto& net : {small_cascade(), mapk_cascade()}) {
    auto a = deficiency(net), b = deficiency(net);
    CHECK(a.deficiency == b.deficiency);
    CHECK(a.conservation.W == b.conservation.W);
    CHECK(canonical_serialize(net) == canonical_serialize(net.num_species() == 11 ? small_cascade() : mapk_cascade()));
  }
}
