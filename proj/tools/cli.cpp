#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "twc/families.hpp"

namespace twc::cli {

namespace {

using json = nlohmann::json;
using cubic::LineClassTag;
using families::Elem;

constexpr std::uint32_t kCensusMaxQ = 64;
constexpr std::uint32_t kOrbitMaxQ = 169;

std::string census_string(const std::map<std::uint64_t, std::uint64_t>& lengths) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto it = lengths.rbegin(); it != lengths.rend(); ++it) {
    os << (first ? "" : ", ") << it->first << ':' << it->second;
    first = false;
  }
  os << '}';
  return os.str();
}

bool in_census_range(std::uint32_t q) {
  if (q % 2 == 1) return q >= 5 && q <= 37;
  return q == 8 || q == 16 || q == 32 || q == 64;
}

Verdict verdict_of(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

// Lazily computed results shared by several claims.
class Checker {
 public:
  Checker(const Context& ctx, unsigned workers) : ctx_(ctx), workers_(workers) {}

  const orbits::OrbitCensus& eng() {
    if (!eng_) {
      orbits::PartitionOptions opt;
      opt.workers = workers_;
      opt.verify_stabilizers = true;
      eng_ = ctx_.engine.partition(opt);
    }
    return *eng_;
  }
  const orbits::OrbitCensus& all_lines() {
    if (!all_) {
      orbits::PartitionOptions opt;
      opt.filter = std::nullopt;
      opt.workers = workers_;
      all_ = ctx_.engine.partition(opt);
    }
    return *all_;
  }
  const cubic::ClassCensus& classes() {
    if (!classes_) classes_ = cubic::class_census(ctx_.cubic, workers_);
    return *classes_;
  }

 private:
  const Context& ctx_;
  unsigned workers_;
  std::optional<orbits::OrbitCensus> eng_, all_;
  std::optional<cubic::ClassCensus> classes_;
};

struct ClaimDef {
  std::string id;
  std::string claim;
  std::function<bool(const Context&)> applies;
  std::function<std::pair<Verdict, std::string>(const Context&, Checker&)> run;
};

bool odd(const Context& c) { return !c.field().even(); }
bool not_char3(const Context& c) { return c.field().xi() != 0; }
bool char3(const Context& c) { return c.field().p() == 3; }

std::vector<ClaimDef> build_claims() {
  std::vector<ClaimDef> defs;

  defs.push_back({"eng-class-size", "#EnG = (q^2-q)(q^2-1) and the classes partition all lines",
                  [](const Context&) { return true; },
                  [](const Context& ctx, Checker& ch) {
                    const auto& cc = ch.classes();
                    std::uint64_t total = 0;
                    for (const auto& [tag, n] : cc) total += n;
                    const std::uint64_t eng = cc.at(LineClassTag::EnG);
                    const bool ok = eng == cubic::expected_eng_count(ctx.q()) && total == ctx.space.line_count();
                    return std::pair{verdict_of(ok), "EnG=" + std::to_string(eng) + " lines=" + std::to_string(total)};
                  }});

  defs.push_back({"eng-orbit-census", "EnG orbit lengths with multiplicities",
                  [](const Context& c) { return in_census_range(c.q()); },
                  [](const Context& ctx, Checker& ch) {
                    const auto& got = ch.eng().lengths;
                    const auto want = families::expected_eng_census(ctx.q());
                    return std::pair{verdict_of(got == want),
                                     census_string(got) + " expected " + census_string(want)};
                  }});

  defs.push_back({"eng-orbit-count", "number of EnG orbits is 2q-3+xi (odd q) or 2q-2+xi (even q)",
                  [](const Context& c) { return in_census_range(c.q()); },
                  [](const Context& ctx, Checker& ch) {
                    const std::uint64_t got = ch.eng().orbit_count();
                    const std::uint64_t want = families::expected_eng_orbit_count(ctx.q());
                    return std::pair{verdict_of(got == want),
                                     std::to_string(got) + " expected " + std::to_string(want)};
                  }});

  defs.push_back({"total-line-orbits", "number of G_q-orbits on all lines is 2q+7+xi",
                  [](const Context& c) { return in_census_range(c.q()); },
                  [](const Context& ctx, Checker& ch) {
                    const std::uint64_t got = ch.all_lines().orbit_count();
                    const std::uint64_t want = families::expected_total_line_orbits(ctx.q());
                    return std::pair{verdict_of(got == want),
                                     std::to_string(got) + " expected " + std::to_string(want)};
                  }});

  defs.push_back({"orbit-stabilizer", "|orbit| x |stabilizer| = q^3-q for every EnG orbit",
                  [](const Context&) { return true; },
                  [](const Context& ctx, Checker& ch) {
                    const auto& census = ch.eng();
                    bool ok = census.covered == cubic::expected_eng_count(ctx.q());
                    for (const auto& rec : census.orbits) ok = ok && rec.length * rec.stabilizer_order == ctx.group.order();
                    return std::pair{verdict_of(ok), std::to_string(census.orbit_count()) + " orbits checked"};
                  }});

  defs.push_back({"null-polarity-eng-invariant", "the null polarity is an involution mapping EnG onto EnG",
                  not_char3, [](const Context& ctx, Checker&) {
                    std::uint64_t eng = 0, bad = 0;
                    for (pg3::LineKey k = 0; k < ctx.space.line_count(); ++k) {
                      const pg3::Line l = ctx.space.line_from_key(k);
                      const pg3::Line image = ctx.cubic.null_polarity_line(l);
                      if (ctx.cubic.null_polarity_line(image) != l) ++bad;
                      if (!ctx.cubic.is_eng(l)) continue;
                      ++eng;
                      if (!ctx.cubic.is_eng(image)) ++bad;
                    }
                    return std::pair{verdict_of(bad == 0),
                                     std::to_string(eng) + " EnG lines, " + std::to_string(bad) + " violations"};
                  }});

  defs.push_back({"chord-axis-interchange", "the null polarity sends real/imaginary chords and tangents to real/imaginary axes and tangents",
                  not_char3, [](const Context& ctx, Checker&) {
                    const gf::Field& F = ctx.field();
                    std::uint64_t bad = 0, n = 0;
                    for (std::uint32_t a1 = 0; a1 < F.q(); ++a1) {
                      for (std::uint32_t a2 = 0; a2 < F.q(); ++a2) {
                        const pg3::Line chord = ctx.cubic.chord_vector(Elem{a1}, Elem{a2});
                        const auto from = ctx.cubic.classify(chord).tag;
                        const auto to = ctx.cubic.classify(ctx.cubic.null_polarity_line(chord)).tag;
                        const bool ok = (from == LineClassTag::RealChord && to == LineClassTag::RealAxis) ||
                                        (from == LineClassTag::ImaginaryChord && to == LineClassTag::ImaginaryAxis) ||
                                        (from == LineClassTag::Tangent && to == LineClassTag::Tangent);
                        bad += ok ? 0 : 1;
                        ++n;
                      }
                    }
                    return std::pair{verdict_of(bad == 0), std::to_string(n) + " chords, " + std::to_string(bad) + " mismatches"};
                  }});

  defs.push_back({"qinf-stabilizer",
                  "the stabilizer of (0,0,1,0) is {diag(1,d,d^2,d^3)}; in characteristic 3 it is {lift(1,0,c,d)}",
                  [](const Context& c) { return c.q() <= 64; },
                  [](const Context& ctx, Checker&) {
                    const auto stab = ctx.group.stabilizer_of_point(ctx.space.point_from_ints({0, 0, 1, 0}));
                    const auto& F = ctx.field();
                    std::set<group::Projectivity> want;
                    for (const Elem c : not_char3(ctx) ? std::vector<Elem>{F.zero()} : F.elements()) {
                      for (const Elem d : F.units()) want.insert(ctx.group.lift({F.one(), F.zero(), c, d}));
                    }
                    const std::set<group::Projectivity> got(stab.begin(), stab.end());
                    return std::pair{verdict_of(got == want), "order " + std::to_string(got.size())};
                  }});

  defs.push_back({"lambda-eng", "Λ is an EnG-line iff q is prime to 3, otherwise in an osculating plane",
                  [](const Context&) { return true; },
                  [](const Context& ctx, Checker&) {
                    const auto tag = ctx.cubic.classify(families::lambda_line(ctx.space)).tag;
                    const auto want = not_char3(ctx) ? LineClassTag::EnG : LineClassTag::ExternalInOscPlane;
                    return std::pair{verdict_of(tag == want), std::string(cubic::to_string(tag))};
                  }});

  defs.push_back({"lambda-stabilizer", "stabilizer order, structure and orbit length of Λ",
                  not_char3, [](const Context& ctx, Checker&) {
                    const auto spec = families::lambda_expected(ctx.field());
                    const pg3::Line l = families::lambda_line(ctx.space);
                    const auto stab = ctx.engine.stabilizer_of_line(l);
                    const auto id = ctx.group.identify(stab);
                    const std::uint64_t len = ctx.engine.orbit_size(l);
                    const bool ok = stab.size() == spec.stab_order && id.kind == spec.stab_id && len == spec.orbit_len;
                    return std::pair{verdict_of(ok), "(" + std::to_string(stab.size()) + ", " + group::to_string(id) + ", " +
                                                         std::to_string(len) + ") expected (" +
                                                         std::to_string(spec.stab_order) + ", " +
                                                         group::to_string(spec.stab_id) + ", " +
                                                         std::to_string(spec.orbit_len) + ")"};
                  }});

  defs.push_back({"mu-small-lines", "ℓ_0 is a unisecant off the osculating planes; ℓ_1 a tangent (even q) or real chord (odd q)",
                  [](const Context&) { return true; },
                  [](const Context& ctx, Checker&) {
                    const auto t0 = ctx.cubic.classify(families::mu_line(ctx.space, ctx.field().zero())).tag;
                    const auto t1 = ctx.cubic.classify(families::mu_line(ctx.space, ctx.field().one())).tag;
                    const auto want1 = ctx.field().even() ? LineClassTag::Tangent : LineClassTag::RealChord;
                    return std::pair{verdict_of(t0 == LineClassTag::UnisecantNonOsc && t1 == want1),
                                     std::string(cubic::to_string(t0)) + ", " + std::string(cubic::to_string(t1))};
                  }});

  defs.push_back({"mu-eng", "ℓ_μ is EnG for every μ ∉ {0,1}, except μ = 1/9 when q is odd and prime to 3",
                  [](const Context&) { return true; },
                  [](const Context& ctx, Checker&) {
                    std::uint64_t eng = 0, bad = 0;
                    for (std::uint32_t c = 2; c < ctx.q(); ++c) {
                      const bool is = ctx.cubic.is_eng(families::mu_line(ctx.space, Elem{c}));
                      eng += is ? 1 : 0;
                      bad += is == families::mu_is_eng(ctx.field(), Elem{c}) ? 0 : 1;
                    }
                    return std::pair{verdict_of(bad == 0), std::to_string(eng) + " EnG of " + std::to_string(ctx.q() - 2)};
                  }});

  defs.push_back({"mu-axis", "ℓ_{1/9} is an imaginary axis (q ≡ -1 mod 3) or real axis (q ≡ 1 mod 3)",
                  [](const Context& c) { return odd(c) && not_char3(c); },
                  [](const Context& ctx, Checker&) {
                    const auto tag = ctx.cubic.classify(families::mu_line(ctx.space, families::parse_mu(ctx.field(), "1/9"))).tag;
                    const auto want = ctx.field().xi() == 1 ? LineClassTag::RealAxis : LineClassTag::ImaginaryAxis;
                    return std::pair{verdict_of(tag == want), std::string(cubic::to_string(tag))};
                  }});

  defs.push_back({"mu-stabilizer", "stabilizer of every EnG ℓ_μ: order, structure, orbit length and explicit matrices",
                  [](const Context&) { return true; },
                  [](const Context& ctx, Checker&) {
                    std::uint64_t n = 0, bad = 0;
                    std::map<std::string, std::uint64_t> ids;
                    for (std::uint32_t c = 2; c < ctx.q(); ++c) {
                      const Elem mu{c};
                      if (!families::mu_is_eng(ctx.field(), mu)) continue;
                      ++n;
                      const auto spec = families::mu_expected(ctx.field(), mu);
                      const pg3::Line l = families::mu_line(ctx.space, mu);
                      auto stab = ctx.engine.stabilizer_of_line(l);
                      std::sort(stab.begin(), stab.end());
                      const auto id = ctx.group.identify(stab);
                      ++ids[group::to_string(id)];
                      const bool ok = stab.size() == spec.stab_order && id.kind == spec.stab_id &&
                                      ctx.engine.orbit_size(l) == spec.orbit_len &&
                                      families::mu_stabilizer_matrices(ctx.group, mu) == stab;
                      bad += ok ? 0 : 1;
                    }
                    std::string m = std::to_string(n) + " lines, " + std::to_string(bad) + " mismatches;";
                    for (const auto& [name, count] : ids) m += " " + name + ":" + std::to_string(count);
                    return std::pair{verdict_of(bad == 0), m};
                  }});

  defs.push_back({"mu-even-distinct", "for even q the q-2 lines ℓ_μ lie in distinct orbits, none in the orbit of Λ",
                  [](const Context& c) { return c.field().even(); },
                  [](const Context& ctx, Checker&) {
                    std::set<pg3::LineKey> reps;
                    for (std::uint32_t c = 2; c < ctx.q(); ++c) {
                      reps.insert(ctx.engine.orbit_members(families::mu_line(ctx.space, Elem{c})).front());
                    }
                    const pg3::LineKey lambda_rep = ctx.engine.orbit_members(families::lambda_line(ctx.space)).front();
                    const bool ok = reps.size() == ctx.q() - 2 && !reps.contains(lambda_rep);
                    return std::pair{verdict_of(ok), std::to_string(reps.size()) + " distinct orbits"};
                  }});

  defs.push_back({"char3-equivalent-pairs", "pairs ℓ_μ ~ ℓ_μ' are exactly μ = d^4, μ' = (d^2-1)^2; (q-3)/8 or (q-9)/8 of them",
                  char3, [](const Context& ctx, Checker&) {
                    const auto oracle = families::char3_equivalent_pairs(ctx.field());
                    const auto census = families::char3_census(ctx, ctx.q());
                    const bool ok = oracle.size() == families::char3_expected_pair_count(ctx.q()) && census.pairs == oracle;
                    return std::pair{verdict_of(ok), std::to_string(census.pair_count) + " measured, " +
                                                         std::to_string(oracle.size()) + " predicted"};
                  }});

  defs.push_back({"char3-orbit-count", "orbit count n_q and coverage S_q of the ℓ_μ family",
                  char3, [](const Context& ctx, Checker&) {
                    const auto census = families::char3_census(ctx, ctx.q());
                    const auto b = families::char3_expected_bounds(ctx.q());
                    const bool ok = census.n >= b.n_min && census.n <= b.n_max && census.S >= b.S_min &&
                                    census.S <= b.S_max && census.nonsquare_orbits == (ctx.q() - 1) / 2;
                    return std::pair{verdict_of(ok), "n=" + std::to_string(census.n) + " in [" + std::to_string(b.n_min) +
                                                         "," + std::to_string(b.n_max) + "], S=" +
                                                         std::to_string(census.S)};
                  }});

  defs.push_back({"char3-triples", "number t_q of orbits holding three ℓ_μ, 0 ≤ t_q ≤ (q-9)/24",
                  char3, [](const Context& ctx, Checker&) {
                    const auto census = families::char3_census(ctx, ctx.q());
                    const auto b = families::char3_expected_bounds(ctx.q());
                    std::string m = "t=" + std::to_string(census.t);
                    if (const auto f = families::char3_triple_formula(ctx.q())) {
                      m += "; closed form (q-(-1)^m sqrt(q)-15)/48 = " + std::to_string(f->first) + "/48";
                    }
                    return std::pair{verdict_of(census.t <= b.t_max), m};
                  }});

  defs.push_back({"lambda-mu-coincidence", "Λ and ℓ_{-1/3} share an orbit exactly in the predicted cases",
                  [](const Context& c) { return odd(c) && not_char3(c); },
                  [](const Context& ctx, Checker&) {
                    const gf::Field& F = ctx.field();
                    const auto predicted = families::lambda_mu_coincidence(F);
                    const Elem m13 = families::parse_mu(F, "-1/3");
                    if (!families::mu_is_eng(F, m13)) return std::pair{Verdict::NotApplicable, std::string("ℓ_{-1/3} not EnG")};
                    const bool measured =
                        ctx.engine.same_orbit(families::lambda_line(ctx.space), families::mu_line(ctx.space, m13));
                    return std::pair{verdict_of(measured == predicted.has_value()),
                                     std::string(measured ? "same orbit" : "different orbits") +
                                         (F.is_square(m13) ? ", -1/3 square" : ", -1/3 non-square")};
                  }});

  defs.push_back({"cube-predicates-agree", "1/2 is a cube iff -1/2 is a cube",
                  odd, [](const Context& ctx, Checker&) {
                    const gf::Field& F = ctx.field();
                    const bool a = F.is_cube(families::parse_mu(F, "1/2"));
                    const bool b = F.is_cube(families::parse_mu(F, "-1/2"));
                    return std::pair{verdict_of(a == b), std::string(a ? "both cubes" : b ? "differ" : "neither")};
                  }});

  defs.push_back({"minus3-square", "-3 is a square iff q ≡ 1 (mod 3), q odd",
                  [](const Context& c) { return odd(c) && not_char3(c); },
                  [](const Context& ctx, Checker&) {
                    const gf::Field& F = ctx.field();
                    bool brute = false;
                    for (const Elem y : F.elements()) brute = brute || F.sq(y) == F.from_int(-3);
                    const bool fact = F.residue_facts().minus3_is_square;
                    return std::pair{verdict_of(brute == fact && fact == (F.xi() == 1)),
                                     std::string(fact ? "square" : "non-square")};
                  }});
  return defs;
}

const std::vector<ClaimDef>& claims() {
  static const std::vector<ClaimDef> defs = build_claims();
  return defs;
}

unsigned default_workers() {
  if (const char* env = std::getenv("TWC_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void check_guardrail(std::uint32_t q, std::uint32_t max_q) {
  if (q > max_q) {
    throw Error(ErrorCode::GuardrailExceeded,
                "q = " + std::to_string(q) + " exceeds --max-q " + std::to_string(max_q));
  }
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::GuardrailExceeded: return kGuardrail;
    case ErrorCode::NotClosed: return kVerifyFailed;
    default: return kUsage;
  }
}

std::vector<long long> parse_ints(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorCode::BadArgument, "cannot parse '" + text + "'");
    out.push_back(v);
  }
  return out;
}

json census_json(const orbits::OrbitCensus& census, const std::string& cls) {
  json j;
  j["q"] = census.q;
  j["class"] = cls;
  j["orbit_count"] = census.orbit_count();
  j["covered"] = census.covered;
  json lengths = json::array();
  for (auto it = census.lengths.rbegin(); it != census.lengths.rend(); ++it) {
    lengths.push_back({{"length", it->first}, {"multiplicity", it->second}});
  }
  j["lengths"] = lengths;
  json orbs = json::array();
  for (const auto& rec : census.orbits) {
    json o{{"representative", rec.representative}, {"length", rec.length}};
    if (rec.stabilizer_order) o["stabilizer_order"] = rec.stabilizer_order;
    orbs.push_back(o);
  }
  j["orbits"] = orbs;
  return j;
}

struct Common {
  std::uint32_t q = 0;
  std::optional<unsigned> workers;
  std::string format = "text";
  std::optional<std::uint32_t> max_q;
};

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not-applicable";
    case Verdict::Info: return "info";
  }
  return "?";
}

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& c : claims()) out.push_back(c.id);
    return out;
  }();
  return ids;
}

std::vector<ClaimReport> run_verify(const Context& ctx, const std::set<std::string>& only, unsigned workers) {
  for (const auto& id : only) {
    if (std::find(claim_ids().begin(), claim_ids().end(), id) == claim_ids().end()) {
      throw Error(ErrorCode::BadArgument, "unknown claim id '" + id + "'");
    }
  }
  Checker checker(ctx, workers);
  std::vector<ClaimReport> out;
  for (const ClaimDef& def : claims()) {
    if (!only.empty() && !only.contains(def.id)) continue;
    ClaimReport r;
    r.q = ctx.q();
    r.id = def.id;
    r.claim = def.claim;
    const auto start = std::chrono::steady_clock::now();
    if (!def.applies(ctx)) {
      r.verdict = Verdict::NotApplicable;
    } else {
      auto [verdict, measured] = def.run(ctx, checker);
      r.verdict = verdict;
      r.measured = std::move(measured);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orbits of lines under the stabilizer of the twisted cubic in PG(3,q)", "twc"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--q", common.q, "field order (prime power)")->required();
    sub->add_option("--workers", common.workers, "worker threads (default: TWC_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--max-q", common.max_q, "largest q allowed for this command");
  };

  auto* classify = app.add_subcommand("classify", "count lines in every class");
  add_common(classify);

  auto* orbit = app.add_subcommand("orbit", "orbit and stabilizer of one line");
  add_common(orbit);
  std::vector<std::string> points;
  std::string line_spec, mu_spec;
  auto* opt_points = orbit->add_option("--points", points, "two points x0,x1,x2,x3")->expected(2);
  auto* opt_line = orbit->add_option("--line", line_spec, "Plücker coordinates p01,p02,p03,p12,p31,p23");
  auto* opt_mu = orbit->add_option("--mu", mu_spec, "ℓ_μ by element code or -1/3, 1/9, ...");
  opt_points->excludes(opt_line)->excludes(opt_mu);
  opt_line->excludes(opt_mu);

  auto* census = app.add_subcommand("census", "partition a line class into orbits");
  add_common(census);
  std::string class_name = "EnG";
  bool with_stabilizers = false;
  census->add_option("--class", class_name, "class name or 'all'");
  census->add_flag("--stabilizers", with_stabilizers, "also compute every orbit's stabilizer order");

  auto* verify = app.add_subcommand("verify", "check every claim that applies to q");
  add_common(verify);
  std::vector<std::string> only;
  verify->add_option("--theorem", only, "restrict to these claim ids");
  bool list_claims = false;
  verify->add_flag("--list", list_claims, "print claim ids and exit");

  auto* explore = app.add_subcommand("explore", "EnG census for any q, compared with the tabulated pattern");
  add_common(explore);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  const bool json_out = common.format == "json";
  const bool csv_out = common.format == "csv";
  const unsigned workers = common.workers.value_or(default_workers());

  try {
    if (verify->parsed() && list_claims) {
      for (const auto& def : claims()) out << def.id << "  " << def.claim << "\n";
      return kPass;
    }
    const bool single = orbit->parsed();
    check_guardrail(common.q, common.max_q.value_or(single ? kOrbitMaxQ : kCensusMaxQ));
    const auto ctx = make_context(common.q);
    const gf::Field& F = ctx->field();

    if (classify->parsed()) {
      const auto cc = cubic::class_census(ctx->cubic, workers);
      if (json_out) {
        json j{{"q", common.q}, {"line_count", ctx->space.line_count()}};
        for (const auto& [tag, n] : cc) j["classes"][std::string(cubic::to_string(tag))] = n;
        out << j.dump(2) << "\n";
      } else if (csv_out) {
        out << "q,class_or_theorem,value,multiplicity_or_verdict\n";
        for (const auto& [tag, n] : cc) out << common.q << "," << cubic::to_string(tag) << "," << n << ",1\n";
      } else {
        out << "q=" << common.q << "  lines=" << ctx->space.line_count() << "\n";
        for (const auto& [tag, n] : cc) out << "  " << cubic::to_string(tag) << "=" << n << "\n";
      }
      return kPass;
    }

    if (orbit->parsed()) {
      pg3::Line l;
      if (!points.empty()) {
        std::array<pg3::Point, 2> pts;
        for (int i = 0; i < 2; ++i) {
          const auto v = parse_ints(points[i]);
          if (v.size() != 4) throw Error(ErrorCode::BadArgument, "a point needs 4 coordinates");
          pts[i] = ctx->space.point_from_ints({v[0], v[1], v[2], v[3]});
        }
        l = ctx->space.line_through(pts[0], pts[1]);
      } else if (!line_spec.empty()) {
        const auto v = parse_ints(line_spec);
        if (v.size() != 6) throw Error(ErrorCode::BadArgument, "a line needs 6 Plücker coordinates");
        std::array<Elem, 6> p;
        for (int i = 0; i < 6; ++i) p[i] = F.from_int(v[i]);
        l = ctx->space.line(p);
      } else if (!mu_spec.empty()) {
        l = families::mu_line(ctx->space, families::parse_mu(F, mu_spec));
      } else {
        throw Error(ErrorCode::BadArgument, "give --points, --line or --mu");
      }
      const auto res = ctx->engine.orbit_of_line(l);
      const auto id = ctx->group.identify(res.stabilizer);
      const auto cls = ctx->cubic.classify(l).tag;
      if (json_out) {
        json j{{"q", common.q},
               {"line", ctx->space.format(l)},
               {"class", std::string(cubic::to_string(cls))},
               {"seed", res.seed},
               {"representative", res.representative},
               {"orbit_size", res.size},
               {"stabilizer_order", res.stabilizer.size()},
               {"stabilizer_id", group::to_string(id)}};
        out << j.dump(2) << "\n";
      } else if (csv_out) {
        out << "q,class_or_theorem,value,multiplicity_or_verdict\n";
        out << common.q << ",orbit_size," << res.size << ",1\n";
        out << common.q << ",stabilizer_order," << res.stabilizer.size() << "," << group::to_string(id) << "\n";
      } else {
        out << ctx->space.format(l) << "  " << cubic::to_string(cls) << "\n"
            << "  orbit size " << res.size << ", stabilizer order " << res.stabilizer.size() << " ("
            << group::to_string(id) << "), representative key " << res.representative << "\n";
      }
      return kPass;
    }

    if (census->parsed() || explore->parsed()) {
      orbits::PartitionOptions opt;
      opt.workers = workers;
      opt.verify_stabilizers = with_stabilizers;
      if (class_name == "all") {
        opt.filter = std::nullopt;
      } else if (const auto tag = cubic::class_from_string(class_name)) {
        opt.filter = *tag;
      } else {
        throw Error(ErrorCode::BadArgument, "unknown class '" + class_name + "'");
      }
      const auto result = ctx->engine.partition(opt);
      if (explore->parsed()) {
        const auto predicted = families::expected_eng_census(common.q);
        json j{{"q", common.q},
               {"xi", F.xi()},
               {"parity", F.even() ? "even" : "odd"},
               {"tabulated", in_census_range(common.q)},
               {"orbit_count", result.orbit_count()},
               {"predicted_orbit_count", families::expected_eng_orbit_count(common.q)},
               {"census", census_string(result.lengths)},
               {"predicted_census", census_string(predicted)},
               {"matches_pattern", result.lengths == predicted}};
        if (json_out) {
          out << j.dump(2) << "\n";
        } else if (csv_out) {
          out << "q,class_or_theorem,value,multiplicity_or_verdict\n";
          for (auto it = result.lengths.rbegin(); it != result.lengths.rend(); ++it) {
            out << common.q << ",EnG," << it->first << "," << it->second << "\n";
          }
          out << common.q << ",pattern," << result.orbit_count() << ","
              << (result.lengths == predicted ? "match" : "differs") << "\n";
        } else {
          out << "q=" << common.q << "  EnG orbits " << result.orbit_count() << " " << census_string(result.lengths)
              << "\n  pattern " << census_string(predicted) << (result.lengths == predicted ? "  match" : "  differs")
              << "\n";
        }
        return kPass;
      }
      if (json_out) {
        out << census_json(result, opt.filter ? std::string(cubic::to_string(*opt.filter)) : "all").dump(2) << "\n";
      } else if (csv_out) {
        out << "q,class_or_theorem,value,multiplicity_or_verdict\n";
        for (auto it = result.lengths.rbegin(); it != result.lengths.rend(); ++it) {
          out << common.q << "," << class_name << "," << it->first << "," << it->second << "\n";
        }
      } else {
        out << "q=" << common.q << "  " << class_name << " orbits " << result.orbit_count() << "  covered "
            << result.covered << "\n  " << census_string(result.lengths) << "\n";
      }
      return kPass;
    }

    if (verify->parsed()) {
      const std::set<std::string> filter(only.begin(), only.end());
      const auto reports = run_verify(*ctx, filter, workers);
      bool failed = false;
      for (const auto& r : reports) failed = failed || r.verdict == Verdict::Fail;
      if (json_out) {
        json arr = json::array();
        for (const auto& r : reports) {
          arr.push_back({{"q", r.q},
                         {"theorem_id", r.id},
                         {"claim", r.claim},
                         {"measured", r.measured},
                         {"verdict", to_string(r.verdict)},
                         {"seconds", r.seconds}});
        }
        out << json{{"q", common.q}, {"reports", arr}, {"all_pass", !failed}}.dump(2) << "\n";
      } else if (csv_out) {
        out << "q,class_or_theorem,value,multiplicity_or_verdict\n";
        for (const auto& r : reports) {
          std::string value = r.measured;
          for (char& ch : value) {
            if (ch == ',' || ch == '"') ch = ';';
          }
          out << r.q << "," << r.id << ",\"" << value << "\"," << to_string(r.verdict) << "\n";
        }
      } else {
        for (const auto& r : reports) {
          out << "[" << to_string(r.verdict) << "] " << r.id << ": " << r.measured << "\n";
        }
      }
      return failed ? kVerifyFailed : kPass;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace twc::cli
