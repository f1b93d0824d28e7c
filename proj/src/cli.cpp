#include "crn/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "crn/certificates.hpp"
#include "crn/families.hpp"
#include "crn/json_io.hpp"
#include "crn/structure.hpp"
#include "crn/witness.hpp"

namespace crn {

using nlohmann::json;

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InputFile {
  std::string path;
  std::string text;
};

std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string command;
  std::uint64_t seed = 0;
  bool verbose = false;
  std::vector<std::pair<std::string, std::string>> input_hashes;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  InputFile read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    InputFile f{path, buf.str()};
    input_hashes.emplace_back(path, fnv1a64(f.text));
    return f;
  }

  json manifest(const std::string& output_text) const {
    json inputs = json::array();
    for (const auto& [path, hash] : input_hashes) inputs.push_back({{"path", path}, {"fnv1a64", hash}});
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return {{"command", command},
            {"tool_version", kToolVersion},
            {"seed", seed},
            {"inputs", inputs},
            {"outputs", {{"result_fnv1a64", fnv1a64(output_text)}}},
            {"wall_clock_ms", ms}};
  }

  void emit(const json& result) {
    std::string body = result.dump();
    json doc = {{"manifest", manifest(body)}, {"result", result}};
    out << doc.dump(2) << '\n';
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty entry in list '" + text + "'");
    items.push_back(item.substr(b, e - b + 1));
  }
  if (items.empty()) throw InputError("empty list");
  return items;
}

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> values;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InputError("'" + item + "' is not a number");
    values.push_back(v);
  }
  return values;
}

json parse_json_text(const InputFile& f) {
  try {
    return json::parse(f.text);
  } catch (const json::parse_error& e) {
    throw InputError(f.path + ": " + e.what());
  }
}

std::vector<std::string> display_order(const ReactionNetwork& net) {
  // The two-site cycle is printed as S0 S1 S2 ES0 ES1 FS1 FS2 E F.
  static const std::vector<std::string> p2 = {"S0", "S1", "S2", "ES0", "ES1", "FS1", "FS2", "E", "F"};
  std::set<std::string> have(net.species().begin(), net.species().end());
  if (have == std::set<std::string>(p2.begin(), p2.end())) return p2;
  return net.species();
}

void print_state_table(std::ostream& err, const ReactionNetwork& net, const std::vector<SteadyStateRecord>& states) {
  err << std::left << std::setw(10) << "species";
  for (std::size_t k = 0; k < states.size(); ++k) err << std::setw(14) << ("x" + std::to_string(k + 1));
  err << '\n';
  for (const auto& name : display_order(net)) {
    err << std::setw(10) << name;
    auto idx = static_cast<Eigen::Index>(net.require_species(name));
    for (const auto& rec : states) err << std::setw(14) << std::setprecision(6) << rec.x(idx);
    err << '\n';
  }
  err << std::setw(10) << "residual";
  for (const auto& rec : states) err << std::setw(14) << std::setprecision(3) << rec.residual;
  err << '\n' << std::setw(10) << "nondeg";
  for (const auto& rec : states) err << std::setw(14) << (rec.nondegenerate ? "yes" : "no");
  err << '\n';
}

RateAssignment load_rates(Context& ctx, const ParsedNetwork& parsed, const std::string& rates_path) {
  RateAssignment rates = parsed.rates;
  if (!rates_path.empty()) {
    RateAssignment file = rates_from_json(parse_json_text(ctx.read(rates_path)));
    for (const auto& [label, v] : file.values()) rates.set(label, v);
  }
  rates.validate_for(parsed.network);
  return rates;
}

// ---------------------------------------------------------------- commands

struct AnalyzeArgs {
  std::string file;
  std::string project;
};

int cmd_analyze(Context& ctx, const AnalyzeArgs& a) {
  ReactionNetwork net = parse_network(ctx.read(a.file).text);
  json result;
  if (!a.project.empty()) {
    net = collapse_parallel(project_complement(net, split_list(a.project)).network).network;
    result["projected_network"] = canonical_serialize(net);
  }
  result["species"] = net.species();
  result["reactions"] = net.num_reactions();
  result["report"] = to_json(deficiency(net));
  if (ctx.verbose) {
    const auto& r = result["report"];
    ctx.err << "complexes " << r["complexes"] << ", linkage classes " << r["linkage_classes"] << ", rank "
            << r["stoich_dim"] << ", deficiency " << r["deficiency"] << '\n';
  }
  ctx.emit(result);
  return kExitOk;
}

struct CertifyArgs {
  std::string file;
  std::string open;
  bool strict = false;
};

int cmd_certify(Context& ctx, const CertifyArgs& a) {
  ReactionNetwork net = parse_network(ctx.read(a.file).text);
  Certificate cert = a.open.empty() ? certify_deficiency_zero(net) : certify_open(net, split_list(a.open));
  ReplayResult check = replay(certificate_from_json(to_json(cert)));
  if (!check.ok) {
    ctx.err << "internal error: certificate does not replay: " << check.message << '\n';
    return kExitInternal;
  }
  if (ctx.verbose) {
    ctx.err << "verdict: " << to_string(cert.verdict) << '\n';
    for (const auto& step : cert.trace) ctx.err << "  " << to_string(step.rule) << ' ' << step.outputs.dump() << '\n';
  }
  ctx.emit(to_json(cert));
  return (a.strict && cert.verdict == Verdict::undecided) ? kExitUndecided : kExitOk;
}

struct SearchArgs {
  std::string file;
  std::string rates;
  std::string totals;
  std::string from_state;
  std::size_t starts = 200;
};

int cmd_search(Context& ctx, const SearchArgs& a) {
  ParsedNetwork parsed = parse_network_with_rates(ctx.read(a.file).text);
  RateAssignment rates = load_rates(ctx, parsed, a.rates);
  const ReactionNetwork& net = parsed.network;
  MassActionSystem sys(net, rates);
  Eigen::VectorXd T;
  if (!a.totals.empty() == !a.from_state.empty()) throw InputError("give exactly one of --totals or --from-state");
  if (!a.totals.empty()) {
    auto values = split_numbers(a.totals);
    if (values.size() != sys.num_laws()) {
      throw InputError("network has " + std::to_string(sys.num_laws()) + " conservation laws, got " +
                       std::to_string(values.size()) + " totals");
    }
    T = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  } else {
    T = sys.totals(state_from_json(net, parse_json_text(ctx.read(a.from_state))));
  }
  SearchConfig cfg;
  cfg.num_starts = a.starts;
  cfg.seed = ctx.seed;
  SearchResult res = search_steady_states(sys, T, cfg);
  if (!res.feasible) {
    ctx.err << "no positive point found in the requested compatibility class\n";
    return kExitNumeric;
  }
  std::size_t nondeg = 0;
  json states = json::array();
  for (const auto& rec : res.states) {
    nondeg += rec.nondegenerate ? 1 : 0;
    states.push_back(to_json(rec));
  }
  std::string summary = "found " + std::to_string(res.states.size()) + " distinct states (" + std::to_string(nondeg) +
                        " nondegenerate)";
  if (ctx.verbose) {
    ctx.err << summary << '\n';
    if (!res.states.empty()) print_state_table(ctx.err, net, res.states);
  }
  ctx.emit({{"species", net.species()},
            {"totals", to_json(T)},
            {"starts", a.starts},
            {"converged_starts", res.converged_starts},
            {"states", states},
            {"summary", summary}});
  return kExitOk;
}

struct LiftArgs {
  std::size_t n = 0;
  std::size_t site = 0;
  std::string rates;
  std::vector<std::string> states;
  double a = 1.0;
  std::size_t chain = 0;
  bool refine = false;
  double on_factor = 2.0;
  double off_factor = 2000.0;
};

// States typed in with three decimals verify only to this scaled residual.
constexpr double kPrintedTolerance = 5e-3;

int cmd_lift(Context& ctx, const LiftArgs& a) {
  if (!(a.a > 0.0)) throw InputError("--a must be positive");
  if (a.n == 0) throw InputError("n must be at least 1");
  if (a.site > a.n) throw InputError("--site must lie in 0..n");
  ReactionNetwork net = open_species(phosphorylation_cycle(a.n), {"S" + std::to_string(a.site)});
  RateAssignment rates = rates_from_json(parse_json_text(ctx.read(a.rates)));
  rates.validate_for(net);
  MassActionSystem sys(net, rates);

  std::vector<Eigen::VectorXd> states;
  for (const auto& path : a.states) {
    states.push_back(state_from_json(net, parse_json_text(ctx.read(path))));
    double r = sys.scaled_residual(states.back());
    if (!(r <= kPrintedTolerance)) {
      throw NumericError("state in '" + path + "' is not steady (scaled residual " + std::to_string(r) + ")");
    }
  }
  if (a.refine) {
    auto refined = refine_shared_class(sys, states);
    for (std::size_t k = 0; k < refined.size(); ++k) {
      if (!refined[k].converged) throw NumericError("refinement of state " + std::to_string(k + 1) + " failed");
      states[k] = refined[k].x;
    }
  }

  json lifted = json::array();
  ReactionNetwork extended;
  RateAssignment extended_rates;
  for (const auto& x : states) {
    LiftResult lr = lift_steady_state(a.n, a.site, rates, x, a.a, a.refine ? 1e-9 : kPrintedTolerance);
    extended = lr.extended_net;
    extended_rates = lr.extended_rates;
    lifted.push_back({{"state", state_to_json(lr.extended_net, lr.lifted_state)},
                      {"residual", lr.residual},
                      {"nondegenerate", lr.nondegenerate},
                      {"base_nondegenerate", lr.base_nondegenerate},
                      {"totals_preserved", lr.totals_preserved}});
  }
  json result = {{"extended_network", canonical_serialize(extended)},
                 {"extended_rates", to_json(extended_rates)},
                 {"a", a.a},
                 {"lifted", lifted}};

  if (a.chain > 0) {
    SearchConfig cfg;
    cfg.seed = ctx.seed;
    auto levels = lift_chain(a.n, a.site, rates, states, a.a, a.chain, cfg, a.on_factor, a.off_factor);
    json chain = json::array();
    for (const auto& level : levels) {
      std::size_t nondeg = 0;
      json recs = json::array();
      for (const auto& rec : level.result.states) {
        nondeg += rec.nondegenerate ? 1 : 0;
        recs.push_back(to_json(rec));
      }
      if (ctx.verbose) {
        ctx.err << "n=" << level.n << ": " << level.result.states.size() << " distinct states (" << nondeg
                << " nondegenerate)\n";
      }
      chain.push_back({{"n", level.n},
                       {"species", level.result.net.species()},
                       {"totals", to_json(level.result.totals)},
                       {"distinct", level.result.states.size()},
                       {"nondegenerate", nondeg},
                       {"states", recs},
                       {"diagnostics", level.result.diagnostics}});
    }
    result["chain"] = chain;
  }
  ctx.emit(result);
  return kExitOk;
}

struct FamilyArgs {
  std::string kind;
  std::size_t n = 1;
  std::string open;
  std::vector<std::string> inflow;
  std::vector<std::string> outflow;
};

int cmd_family(Context& ctx, const FamilyArgs& a) {
  FamilySpec spec;
  if (a.kind == "phospho") {
    spec.kind = FamilySpec::Kind::phospho_cycle;
    if (a.n == 0) throw InputError("n must be at least 1");
    spec.n = a.n;
  } else if (a.kind == "cascade") {
    spec.kind = FamilySpec::Kind::small_cascade;
  } else if (a.kind == "mapk") {
    spec.kind = FamilySpec::Kind::mapk;
  } else {
    throw InputError("unknown family '" + a.kind + "' (expected phospho, cascade or mapk)");
  }
  if (!a.open.empty()) spec.opened = split_list(a.open);
  for (const auto& X : a.inflow) spec.partial.emplace_back(X, FlowDirection::inflow);
  for (const auto& X : a.outflow) spec.partial.emplace_back(X, FlowDirection::outflow);
  std::string text = canonical_serialize(build_family(spec));
  // The manifest rides along as a comment so the output stays valid DSL.
  ctx.out << "# manifest: " << ctx.manifest(text).dump() << '\n' << text;
  return kExitOk;
}

struct WitnessArgs {
  std::string file;
  std::size_t draws = 150;
  std::size_t starts = 20;
};

int cmd_witness(Context& ctx, const WitnessArgs& a) {
  ReactionNetwork net = parse_network(ctx.read(a.file).text);
  WitnessSearchConfig cfg;
  cfg.seed = ctx.seed;
  cfg.draws = a.draws;
  cfg.starts = a.starts;
  auto w = find_witness(net, cfg);
  if (!w) {
    ctx.err << "no witness found in " << a.draws << " draws\n";
    return kExitNumeric;
  }
  if (ctx.verbose) print_state_table(ctx.err, net, w->states);
  ctx.emit(witness_to_json(net, *w, cfg));
  return kExitOk;
}

struct AcrArgs {
  std::string file;
  std::string species;
  std::string rates;
};

int cmd_acr(Context& ctx, const AcrArgs& a) {
  ParsedNetwork parsed = parse_network_with_rates(ctx.read(a.file).text);
  RateAssignment rates = load_rates(ctx, parsed, a.rates);
  ctx.emit(to_json(acr_report(parsed.network, split_list(a.species), rates)));
  return kExitOk;
}

std::optional<std::uint64_t> parse_seed(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chemical reaction network analysis", "crn"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string seed_text;
  bool verbose = false;
  app.add_option("--seed", seed_text, "random seed (overrides CRN_SEED)");
  app.add_flag("-v,--verbose", verbose, "human-readable tables on stderr");
  app.set_version_flag("--version", kToolVersion);

  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "structural report");
  c_analyze->add_option("file", analyze.file, "network file")->required();
  c_analyze->add_option("--project", analyze.project, "species to project out, comma separated");

  CertifyArgs certify;
  auto* c_certify = app.add_subcommand("certify", "monostationarity certificate");
  c_certify->add_option("file", certify.file, "network file")->required();
  c_certify->add_option("--open", certify.open, "species to open, comma separated");
  c_certify->add_flag("--strict", certify.strict, "exit 3 when undecided");

  SearchArgs search;
  auto* c_search = app.add_subcommand("search", "multistart steady-state search");
  c_search->add_option("file", search.file, "network file")->required();
  c_search->add_option("--rates", search.rates, "rates JSON file");
  c_search->add_option("--totals", search.totals, "conserved totals, comma separated");
  c_search->add_option("--from-state", search.from_state, "state JSON whose totals define the class");
  c_search->add_option("--starts", search.starts, "number of starts")->check(CLI::PositiveNumber);

  LiftArgs lift;
  auto* c_lift = app.add_subcommand("lift", "lift steady states of the cycle with one open substrate");
  c_lift->add_option("n", lift.n, "number of sites")->required();
  c_lift->add_option("--site", lift.site, "index i of the open substrate S_i");
  c_lift->add_option("--rates", lift.rates, "rates JSON file")->required();
  c_lift->add_option("--state", lift.states, "state JSON file (repeatable)")->required();
  c_lift->add_option("--a", lift.a, "rate of the two added reactions");
  c_lift->add_option("--chain", lift.chain, "continue to n+1, ..., n+m");
  c_lift->add_flag("--refine", lift.refine, "Newton-refine the states into one class first");
  c_lift->add_option("--kon-factor", lift.on_factor, "binding rate of the added chains, in units of a");
  c_lift->add_option("--koff-factor", lift.off_factor, "unbinding rate of the added chains, in units of a");

  FamilyArgs family;
  auto* c_family = app.add_subcommand("family", "emit a named network as DSL");
  c_family->add_option("kind", family.kind, "phospho | cascade | mapk")->required();
  c_family->add_option("n", family.n, "sites (phospho only)");
  c_family->add_option("--open", family.open, "species to open, comma separated");
  c_family->add_option("--inflow", family.inflow, "add only 0 -> X");
  c_family->add_option("--outflow", family.outflow, "add only X -> 0");

  WitnessArgs witness;
  auto* c_witness = app.add_subcommand("witness", "randomized search for a multistationarity witness");
  c_witness->add_option("file", witness.file, "network file")->required();
  c_witness->add_option("--draws", witness.draws, "rate draws");
  c_witness->add_option("--starts", witness.starts, "starts per draw");

  AcrArgs acr;
  auto* c_acr = app.add_subcommand("acr", "absolute concentration robustness report");
  c_acr->add_option("file", acr.file, "network file")->required();
  c_acr->add_option("--species", acr.species, "species with flows, comma separated")->required();
  c_acr->add_option("--rates", acr.rates, "rates JSON file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  std::ostringstream joined;
  for (std::size_t k = 0; k < args.size(); ++k) joined << (k ? " " : "") << args[k];
  Context ctx{out, err, joined.str(), 0, verbose, {}, std::chrono::steady_clock::now()};
  ctx.verbose = verbose;
  try {
    if (!seed_text.empty()) {
      auto s = parse_seed(seed_text);
      if (!s) throw InputError("--seed must be a nonnegative integer");
      ctx.seed = *s;
    } else if (const char* env = std::getenv("CRN_SEED")) {
      auto s = parse_seed(env);
      if (!s) throw InputError("CRN_SEED must be a nonnegative integer");
      ctx.seed = *s;
    }
    if (c_analyze->parsed()) return cmd_analyze(ctx, analyze);
    if (c_certify->parsed()) return cmd_certify(ctx, certify);
    if (c_search->parsed()) return cmd_search(ctx, search);
    if (c_lift->parsed()) return cmd_lift(ctx, lift);
    if (c_family->parsed()) return cmd_family(ctx, family);
    if (c_witness->parsed()) return cmd_witness(ctx, witness);
    if (c_acr->parsed()) return cmd_acr(ctx, acr);
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInternal;
}

}  // namespace crn
