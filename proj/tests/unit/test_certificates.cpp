#include "doctest.h"

#include "crn/certificates.hpp"
#include "crn/families.hpp"
#include "crn/json_io.hpp"
#include "crn/structure.hpp"
#include "oracles.hpp"
#include "reference_data.hpp"

using namespace crn;
using nlohmann::json;

namespace {

const TraceStep* find_step(const Certificate& c, Rule rule, std::size_t skip = 0) {
  for (const auto& s : c.trace) {
    if (s.rule == rule && skip-- == 0) return &s;
  }
  return nullptr;
}

bool replays(const Certificate& c) {
  auto direct = replay(c);
  auto round = replay(certificate_from_json(json::parse(to_json(c).dump())));
  return direct.ok && round.ok;
}

}  // namespace

TEST_CASE("deficiency zero verdicts") {
  auto ladder = collapse_parallel(project_complement(phosphorylation_cycle(3), {"E", "F"}).network).network;
  auto c = certify_deficiency_zero(ladder);
  CHECK(c.verdict == Verdict::unique_positive_ss_per_class);
  CHECK(find_step(c, Rule::monomolecular));
  CHECK(replays(c));

  auto gz = parse_network("Y -> X\nX -> 0\n0 -> Y");
  auto cz = certify_deficiency_zero(gz);
  CHECK(cz.verdict == Verdict::unique_positive_ss_per_class);
  CHECK(deficiency(gz).conservation.d() == 0);

  auto ab = certify_deficiency_zero(parse_network("A -> B"));
  CHECK(ab.verdict == Verdict::no_positive_ss);
  REQUIRE(find_step(ab, Rule::def_zero));
  CHECK(find_step(ab, Rule::def_zero)->outputs.at("deficiency") == 0);

  auto p2 = certify_deficiency_zero(phosphorylation_cycle(2));
  CHECK(p2.verdict == Verdict::undecided);
  CHECK(p2.reason == "deficiency 2");
  CHECK(replays(p2));
}

TEST_CASE("enzyme opening of the cycle") {
  for (std::size_t n = 2; n <= 10; ++n) {
    CAPTURE(n);
    auto c = certify_enzyme_open(phosphorylation_cycle(n), {"E", "F"});
    CHECK(c.verdict == Verdict::monostationary);
    const TraceStep* dz = find_step(c, Rule::def_zero);
    REQUIRE(dz);
    CHECK(dz->outputs.at("deficiency") == 0);
    CHECK(dz->outputs.at("linkage_classes") == 1);
    CHECK(dz->outputs.at("complexes") == 3 * n + 1);
    const TraceStep* wr = find_step(c, Rule::weak_rev);
    REQUIRE(wr);
    CHECK(wr->outputs.at("weakly_reversible") == true);
    CHECK(find_step(c, Rule::indep_conserved));
    CHECK(find_step(c, Rule::acr_emergence));
    CHECK(find_step(c, Rule::projection));
    CHECK(replays(c));
    CHECK(isomorphic(parse_network(c.subject), open_species(phosphorylation_cycle(n), {"E", "F"})));
  }
}

TEST_CASE("enzyme opening of the cascades") {
  auto sc = certify_enzyme_open(small_cascade(), small_cascade_enzymes());
  CHECK(sc.verdict == Verdict::monostationary);
  auto dz = find_step(sc, Rule::def_zero);
  REQUIRE(dz);
  CHECK(dz->outputs.at("complexes") == 8);
  CHECK(dz->outputs.at("linkage_classes") == 2);
  CHECK(dz->outputs.at("stoich_dim") == 6);
  CHECK(replays(sc));

  auto mk = certify_enzyme_open(mapk_cascade(), mapk_enzymes());
  CHECK(mk.verdict == Verdict::monostationary);
  dz = find_step(mk, Rule::def_zero);
  REQUIRE(dz);
  CHECK(dz->outputs.at("complexes") == 17);
  CHECK(dz->outputs.at("linkage_classes") == 2);
  CHECK(dz->outputs.at("stoich_dim") == 15);
  CHECK(replays(mk));
}

TEST_CASE("enzymes plus substrates") {
  auto p2 = phosphorylation_cycle(2);
  auto row6 = certify_enzyme_substrate_open(p2, {"E", "F", "S0"});
  CHECK(row6.verdict == Verdict::monostationary);
  CHECK(isomorphic(parse_network(row6.subject), open_species(p2, {"E", "F", "S0"})));
  CHECK(replays(row6));
  CHECK(certify_enzyme_substrate_open(p2, {"E", "F"}).verdict == Verdict::monostationary);

  auto p3 = certify_enzyme_substrate_open(phosphorylation_cycle(3), {"E", "F", "S1", "S2"});
  CHECK(p3.verdict == Verdict::monostationary);
  auto dz = find_step(p3, Rule::def_zero);
  REQUIRE(dz);
  CHECK(dz->outputs.at("deficiency") == 0);

  CHECK_THROWS(certify_enzyme_substrate_open(p2, {"E", "S0"}));
}

TEST_CASE("undecided cases stay undecided") {
  auto p2 = phosphorylation_cycle(2);
  auto es1 = certify_open(p2, {"E", "S1"});
  CHECK(es1.verdict == Verdict::undecided);
  CHECK(replays(es1));
  auto s0 = certify_enzyme_open(p2, {"S0", "S1"});
  CHECK(s0.verdict == Verdict::undecided);
  CHECK(s0.reason == "not independently conserved");
  CHECK(replays(s0));
  CHECK(certify_open(p2, {"E", "F", "S0"}).verdict == Verdict::monostationary);
  CHECK_THROWS_AS(certify_enzyme_open(open_species(p2, {"E"}), {"E"}), NetworkError);
}

TEST_CASE("tampered certificates fail replay") {
  auto c = certify_enzyme_open(phosphorylation_cycle(2), {"E", "F"});
  REQUIRE(replay(c).ok);

  auto flipped = certify_deficiency_zero(phosphorylation_cycle(2));
  flipped.verdict = Verdict::monostationary;
  CHECK_FALSE(replay(flipped).ok);

  auto edited = c;
  for (auto& s : edited.trace) {
    if (s.rule == Rule::def_zero) s.outputs["deficiency"] = 1;
  }
  CHECK_FALSE(replay(edited).ok);

  auto truncated = c;
  truncated.trace.pop_back();
  CHECK_FALSE(replay(truncated).ok);

  auto swapped = c;
  swapped.subject = canonical_serialize(phosphorylation_cycle(2));
  CHECK_FALSE(replay(swapped).ok);
}

TEST_CASE("multistationarity witnesses") {
  auto net = refdata::open_cycle("S0");
  auto k = refdata::open_s0_rates();
  MassActionSystem sys(net, k);
  auto refined = refine_shared_class(sys, refdata::open_s0_states());
  auto c = multistationarity_certificate(net, k, refined[0].x, refined[1].x);
  CHECK(c.verdict == Verdict::multistationary_witness);
  CHECK(replays(c));
  CHECK_THROWS_AS(multistationarity_certificate(net, k, refined[0].x, refined[0].x), NumericError);
  CHECK_THROWS_AS(multistationarity_certificate(net, k, refdata::open_s0_states()[0], refined[1].x), NumericError);
}

TEST_CASE("ACR values") {
  auto gz = parse_network("Y -> X\nX -> Z\n2Z -> Y + Z\nZ <-> 0 @ f\n");
  RateAssignment k({{"r1", 1.0}, {"r2", 1.0}, {"r3", 3.0}, {"f_fwd", 4.0}, {"f_rev", 2.0}});
  auto open = open_species(parse_network("Y -> X\nX -> Z\n2Z -> Y + Z\n"), {"Z"});
  RateAssignment ko({{"r1", 1.0}, {"r2", 1.0}, {"r3", 3.0}, {"in_Z", 2.0}, {"out_Z", 4.0}});
  auto rep = acr_report(open, {"Z"}, ko);
  REQUIRE(rep.entries.size() == 1);
  CHECK(rep.entries[0].status == AcrStatus::acr);
  CHECK(*rep.entries[0].value == doctest::Approx(0.5));
  CHECK_FALSE(rep.no_steady_states);
  // Flow reactions are recognized by shape, not by label.
  auto rep2 = acr_report(gz, {"Z"}, k);
  CHECK(*rep2.entries[0].value == doctest::Approx(0.5));

  auto p2 = phosphorylation_cycle(2);
  auto ef = open_species(p2, {"E", "F"});
  RateAssignment kef = random_rates(ef, 3);
  for (auto l : {"in_E", "out_E", "in_F", "out_F"}) kef.set(l, 1.0);
  auto r = acr_report(ef, {"E", "F"}, kef);
  CHECK(*r.entries[0].value == 1.0);
  CHECK(*r.entries[1].value == 1.0);

  auto inflow = open_partial(p2, "E", FlowDirection::inflow);
  RateAssignment kin = random_rates(inflow, 4);
  CHECK(acr_report(inflow, {"E"}, kin).no_steady_states);
  CHECK(acr_report(inflow, {"E"}, kin).entries[0].status == AcrStatus::no_steady_states);

  auto outflow = open_partial(p2, "E", FlowDirection::outflow);
  auto ro = acr_report(outflow, {"E"}, random_rates(outflow, 5));
  CHECK(ro.entries[0].status == AcrStatus::boundary_only);
  CHECK_FALSE(ro.entries[0].value);

  auto s = open_species(p2, {"S0", "S1"});
  CHECK_THROWS(acr_report(s, {"S0", "S1"}, random_rates(s, 6)));
}

TEST_CASE("rate transfer") {
  auto open = open_species(parse_network("Y -> X\nX -> Z\n2Z -> Y + Z\n"), {"Z"});
  RateAssignment k({{"r1", 1.5}, {"r2", 0.7}, {"r3", 3.0}, {"in_Z", 2.0}, {"out_Z", 4.0}});
  double a = 2.0 / 4.0;
  auto t = transfer_rates(open, {"Z"}, k, {{"Z", a}});
  CHECK(t.projected.network.num_reactions() == 3);
  CHECK(t.rates.at("r3") == doctest::Approx(3.0 * a * a));
  CHECK(t.rates.at("r1") == 1.5);
  CHECK(t.rates.at("r2") == 0.7);

  auto two = parse_network("X + E -> Y @ p\nX + 2E -> Y @ q\nY -> X @ s\n");
  RateAssignment k2({{"p", 2.0}, {"q", 5.0}, {"s", 1.0}});
  auto t2 = transfer_rates(two, {"E"}, k2, {{"E", 3.0}});
  CHECK(t2.projected.network.num_reactions() == 2);
  CHECK(t2.rates.at("p") == doctest::Approx(2.0 * 3.0 + 5.0 * 9.0));
  CHECK(t2.projected.origins[0] == std::vector<std::string>{"p", "q"});

  CHECK_THROWS(transfer_rates(two, {"E"}, k2, {{"E", -1.0}}));
}

TEST_CASE("projected steady states") {
  auto net = open_species(phosphorylation_cycle(2), {"E", "F"});
  RateAssignment k = random_rates(net, 12);
  for (auto l : {"in_E", "out_E", "in_F", "out_F"}) k.set(l, 1.0);
  MassActionSystem sys(net, k);
  SearchConfig cfg;
  cfg.num_starts = 40;
  Eigen::VectorXd T = sys.totals(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(net.num_species())));
  auto res = search_steady_states(sys, T, cfg);
  REQUIRE_FALSE(res.states.empty());
  for (const auto& rec : res.states) {
    auto z = project_steady_state(net, rec.x, {"E", "F"});
    CHECK(z[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(z[1] == doctest::Approx(1.0).epsilon(1e-10));
    // f of G u H minus f of G, on E, equals the flow part at z.
    auto core = strip_flows(net, {"E", "F"});
    RateAssignment kcore;
    for (const auto& l : core.labels()) kcore.set(l, k.at(l));
    Eigen::VectorXd full = rhs(net, k, rec.x), part = rhs(core, kcore, rec.x);
    auto e = static_cast<Eigen::Index>(net.require_species("E"));
    CHECK((full(e) - part(e)) == doctest::Approx(1.0 - rec.x(e)).epsilon(1e-12));
  }
}
