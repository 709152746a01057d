// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "twc/families.hpp"

using namespace twc;
using gf::Elem;
using gf::Field;
using group::GroupKind;
using Census = std::map<std::uint64_t, std::uint64_t>;

namespace {

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string show(const Census& c) {
  std::ostringstream os;
  os << '{';
  for (auto it = c.rbegin(); it != c.rend(); ++it) os << (it == c.rbegin() ? "" : ", ") << it->first << ':' << it->second;
  os << '}';
  return os.str();
}

bool brute_power(const Field& F, Elem x, std::uint32_t k) {
  for (const Elem y : F.elements())
    if (F.pow(y, k) == x) return true;
  return false;
}

Elem frac(const Field& F, long long a, long long b) { return F.div(F.from_int(a), F.from_int(b)); }

orbits::OrbitCensus eng_census(const Context& c, bool stabilizers = false) {
  orbits::PartitionOptions opt;
  opt.workers = workers();
  opt.verify_stabilizers = stabilizers;
  return c.engine.partition(opt);
}

struct Result {
  bool ok = true;
  std::ostringstream detail;
  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

// 1. EnG class sizes.
void class_sizes(Result& r) {
  for (std::uint64_t q : {5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u, 32u}) {
    const auto c = make_context(static_cast<std::uint32_t>(q));
    const auto cc = cubic::class_census(c->cubic, workers());
    const std::uint64_t eng = cc.at(cubic::LineClassTag::EnG);
    r.detail << " q=" << q << ":" << eng;
    r.check(eng == (q * q - q) * (q * q - 1), "q=" + std::to_string(q));
  }
}

// 2. EnG orbit censuses at q = 5..13, against the tabulated multisets.
void orbit_censuses(Result& r) {
  const std::map<std::uint32_t, Census> table{
      {5, {{120, 2}, {60, 4}}},
      {7, {{336, 2}, {168, 6}, {112, 2}, {84, 1}, {28, 1}}},
      {8, {{504, 1}, {252, 12}}},
      {9, {{720, 3}, {360, 8}, {180, 4}}},
      {11, {{1320, 4}, {660, 10}, {330, 4}}},
      {13, {{2184, 4}, {1092, 12}, {728, 2}, {546, 5}, {182, 1}}},
  };
  for (const auto& [q, want] : table) {
    std::uint64_t sum = 0;
    for (const auto& [len, mult] : want) sum += len * mult;
    const std::uint64_t Q = q;
    r.check(sum == (Q * Q - Q) * (Q * Q - 1), "table q=" + std::to_string(q));
    r.check(families::expected_eng_census(q) == want, "formula q=" + std::to_string(q));
    const auto c = make_context(q);
    const auto got = eng_census(*c).lengths;
    r.detail << " q=" << q << ":" << show(got);
    r.check(got == want, "measured q=" + std::to_string(q));
  }
}

// 3. Orbit counts.
void orbit_counts(Result& r) {
  for (std::uint32_t q : {5u, 7u, 8u, 9u, 11u, 13u, 16u, 17u, 19u}) {
    const auto c = make_context(q);
    const int xi = c->field().xi();
    const long long want = 2LL * q - (q % 2 == 0 ? 2 : 3) + xi;
    const auto got = static_cast<long long>(eng_census(*c).orbit_count());
    r.detail << " q=" << q << ":" << got;
    r.check(got == want, "EnG q=" + std::to_string(q));
    if (q <= 9) {
      orbits::PartitionOptions opt;
      opt.filter = std::nullopt;
      opt.workers = workers();
      const auto all = static_cast<long long>(c->engine.partition(opt).orbit_count());
      r.detail << "/" << all;
      r.check(all == 2LL * q + 7 + xi, "all lines q=" + std::to_string(q));
    }
  }
}

// 4. Λ stabilizer and orbit.
void lambda_line(Result& r) {
  const std::map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>> want{
      {7, {3, 112}}, {11, {2, 660}}, {8, {1, 504}}, {13, {3, 728}}};
  for (const auto& [q, sw] : want) {
    const auto c = make_context(q);
    const auto res = c->engine.orbit_of_line(families::lambda_line(c->space));
    r.detail << " q=" << q << ":(" << res.stabilizer.size() << "," << res.size << ")";
    r.check(res.stabilizer.size() == sw.first && res.size == sw.second, "q=" + std::to_string(q));
  }
  // First odd q ≡ 1 (mod 3) with -1/2 a cube.
  for (std::uint32_t q = 5; q <= 169; ++q) {
    if (!gf::is_prime_power(q) || q % 2 == 0 || q % 3 != 1) continue;
    const Field F(q);
    if (!brute_power(F, frac(F, -1, 2), 3)) continue;
    const auto c = make_context(q);
    const auto res = c->engine.orbit_of_line(families::lambda_line(c->space));
    const auto id = c->group.identify(res.stabilizer);
    r.detail << " first-A4 q=" << q << ":" << group::to_string(id) << "," << res.size;
    r.check(id.kind == GroupKind::A4 && res.size == c->group.order() / 12, "A4 q=" + std::to_string(q));
    break;
  }
}

// 5. ℓ_μ for even q.
void mu_even(Result& r) {
  for (std::uint32_t q : {8u, 16u}) {
    const auto c = make_context(q);
    const Field& F = c->field();
    std::set<pg3::LineKey> reps;
    bool ok = true;
    for (std::uint32_t m = 2; m < q; ++m) {
      const Elem mu{m};
      const auto l = families::mu_line(c->space, mu);
      const auto res = c->engine.orbit_of_line(l);
      reps.insert(res.representative);
      ok = ok && res.size == c->group.order() / 2 && res.stabilizer.size() == 2;
      // The non-identity element is antidiagonal (1, √μ, μ, √μ^3) up to scaling.
      for (const auto& g : res.stabilizer) {
        if (c->group.is_identity(g)) continue;
        const Elem root = F.square_roots(mu).front();
        const Elem s = F.inv(g.mat[0][3]);
        ok = ok && F.mul(g.mat[1][2], s) == root && F.mul(g.mat[2][1], s) == mu && F.mul(g.mat[3][0], s) == F.pow(root, 3);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) ok = ok && (i + j == 3 || g.mat[i][j].code == 0);
      }
    }
    const auto lambda_rep = c->engine.orbit_of_line(families::lambda_line(c->space)).representative;
    r.detail << " q=" << q << ":" << reps.size() << " distinct orbits";
    r.check(ok, "stabilizers q=" + std::to_string(q));
    r.check(reps.size() == q - 2 && !reps.contains(lambda_rep), "distinct q=" + std::to_string(q));
  }
}

// 6. ℓ_μ in characteristic 3.
void mu_char3(Result& r) {
  {
    const auto c = make_context(9);
    const auto census = families::char3_census(*c);
    r.detail << " q=9: n=" << census.n << " " << show(census.lengths) << " pairs=" << census.pair_count;
    r.check(census.n == 7 && census.pair_count == 0, "q=9 counts");
    r.check(census.nonsquare_orbits == 4 && census.square_orbits == 3, "q=9 square split");
    r.check(census.lengths == Census{{360, 4}, {180, 3}}, "q=9 lengths");
  }
  {
    const auto c = make_context(27);
    const Field& F = c->field();
    const auto census = families::char3_census(*c);
    const std::uint64_t S = (27ull * 27 * 27 - 27) * (11 * 27 - 17) / 32;
    r.detail << " q=27: n=" << census.n << " S=" << census.S << " pairs=" << census.pair_count;
    r.check(census.n == (7 * 27 - 13) / 8, "q=27 n");
    r.check(census.S == S, "q=27 S");
    r.check(census.pairs.size() == 3, "q=27 pair count");
    for (const auto& [a, b] : census.pairs) {
      bool realized = false;
      for (const Elem d : F.units()) {
        const Elem d2 = F.sq(d), d4 = F.sq(d2);
        realized = realized || std::pair<Elem, Elem>(std::minmax(d4, F.add(F.add(d4, d2), F.one()))) == std::pair{a, b};
      }
      r.check(realized, "q=27 pair form");
    }
  }
}

// 7. ℓ_μ for odd q prime to 3.
void mu_odd(Result& r) {
  for (std::uint32_t q : {5u, 7u, 11u, 13u}) {
    const auto c = make_context(q);
    const Field& F = c->field();
    std::size_t checked = 0;
    for (std::uint32_t m = 2; m < q; ++m) {
      const Elem mu{m};
      if (mu == frac(F, 1, 9)) continue;
      const auto stab = c->engine.stabilizer_of_line(families::mu_line(c->space, mu));
      const auto kind = c->group.identify(stab).kind;
      const GroupKind want = brute_power(F, mu, 2) ? GroupKind::C2xC2 : GroupKind::C2;
      r.check(kind == want, "q=" + std::to_string(q) + " mu=" + std::to_string(m));
      ++checked;
    }
    r.detail << " q=" << q << ":" << checked << " lines";
  }
  const auto c = make_context(37);
  r.check(frac(c->field(), -1, 3) == Elem{12}, "-1/3 = 12 in F37");
  const auto res = c->engine.orbit_of_line(families::mu_line(c->space, Elem{12}));
  const auto id = c->group.identify(res.stabilizer);
  r.detail << " q=37 mu=12: " << group::to_string(id) << " orbit " << res.size;
  r.check(id.kind == GroupKind::A4 && res.size == 4218, "q=37");
}

// 8. Λ / ℓ_{-1/3} coincidence.
void coincidence(Result& r) {
  for (const auto& [q, want] : std::vector<std::pair<std::uint32_t, bool>>{{11, true}, {23, true}, {5, false}, {7, false}, {13, false}}) {
    const auto c = make_context(q);
    const Field& F = c->field();
    const Elem m = frac(F, -1, 3);
    if (q % 12 == 11) r.check(!brute_power(F, m, 2), "-1/3 non-square q=" + std::to_string(q));
    const bool same = c->engine.same_orbit(families::lambda_line(c->space), families::mu_line(c->space, m));
    r.detail << " q=" << q << ":" << (same ? "same" : "different");
    r.check(same == want, "q=" + std::to_string(q));
    r.check(families::lambda_mu_coincidence(F).has_value() == want, "prediction q=" + std::to_string(q));
  }
}

// 9. Property suites.
void properties(Result& r) {
  std::uint64_t orbits_checked = 0, lines_checked = 0;
  for (std::uint32_t q : {5u, 7u, 8u, 9u, 11u, 13u}) {
    const auto c = make_context(q);
    for (const auto& rec : eng_census(*c, true).orbits) {
      r.check(rec.length * rec.stabilizer_order == c->group.order(), "orbit-stabilizer q=" + std::to_string(q));
      ++orbits_checked;
    }
  }
  for (std::uint32_t q : {5u, 7u, 8u, 9u}) {
    const auto c = make_context(q);
    for (pg3::LineKey k = 0; k < c->space.line_count(); ++k) {
      const auto pts = c->space.points_on_line(c->space.line_from_key(k));
      const auto l = c->space.line_through(pts[0], pts.back());
      r.check(c->space.satisfies_quadric(l) && c->space.key(l) == k, "quadric q=" + std::to_string(q));
      ++lines_checked;
    }
  }
  for (std::uint32_t q : {5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u, 32u}) {
    const auto c = make_context(q);
    std::mt19937_64 rng(q);
    const auto all = c->group.enumerate();
    for (int i = 0; i < 200; ++i) {
      const auto& g = all[rng() % all.size()];
      const auto& h = all[rng() % all.size()];
      r.check(c->group.lift(c->group.multiply(g.source, h.source)) == c->group.compose(g, h), "homomorphism q=" + std::to_string(q));
    }
  }
  {
    const auto c8 = make_context(8);
    for (const auto& g : c8->group.enumerate()) {
      const auto& [a, b, cc, d] = g.source;
      const Field& F = c8->field();
      const auto m = c8->group.lift_matrix(g.source);
      r.check(m[1][0] == F.mul(F.sq(a), b) && m[1][1] == F.mul(F.sq(a), d) && m[1][2] == F.mul(b, F.sq(cc)) &&
                  m[2][1] == F.mul(F.sq(b), cc) && m[2][2] == F.mul(a, F.sq(d)) && m[2][3] == F.mul(cc, F.sq(d)),
              "even specialization");
    }
    const auto c9 = make_context(9);
    for (const auto& g : c9->group.enumerate()) {
      const auto m = c9->group.lift_matrix(g.source);
      r.check(m[1][0].code == 0 && m[1][3].code == 0 && m[2][0].code == 0 && m[2][3].code == 0, "char-3 zero pattern");
    }
  }
  {
    const auto c = make_context(7);
    const Field& F = c->field();
    for (pg3::LineKey k = 0; k < c->space.line_count(); ++k) {
      const auto l = c->space.line_from_key(k);
      r.check(c->cubic.null_polarity_line(c->cubic.null_polarity_line(l)) == l, "polarity involution");
    }
    std::set<pg3::Line> axes;
    for (const Elem b1 : F.elements())
      for (const Elem b2 : F.elements()) axes.insert(c->cubic.axis_vector(b1, b2));
    for (const Elem a1 : F.elements())
      for (const Elem a2 : F.elements())
        r.check(axes.contains(c->cubic.null_polarity_line(c->cubic.chord_vector(a1, a2))), "chord to axis");
  }
  {
    auto census_json = [](const char* w) {
      std::vector<const char*> argv{"twc", "census", "--q", "11", "--format", "json", "--stabilizers", "--workers", w};
      std::ostringstream out, err;
      const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
      return std::pair{code, out.str()};
    };
    const auto a = census_json("1"), b = census_json("3"), d = census_json("8");
    r.check(a.first == 0 && a.second == b.second && a.second == d.second, "byte-identical census JSON");
  }
  r.detail << " " << orbits_checked << " orbits, " << lines_checked << " lines, 2000 lift pairs";
}

// 10. Triple count in characteristic 3.
void triples(Result& r) {
  const auto c9 = make_context(9);
  const auto t9 = families::char3_census(*c9).t;
  const auto f9 = *families::char3_triple_formula(9);
  r.detail << " t9=" << t9 << " (closed form " << f9.first << "/" << f9.second << ")";
  r.check(t9 == 0, "t9");
  const auto c81 = make_context(81);
  const auto census = families::char3_census(*c81, 81);
  const auto f81 = *families::char3_triple_formula(81);
  const auto b = families::char3_expected_bounds(81);
  r.detail << "; t81=" << census.t << " (closed form " << f81.first << "/" << f81.second
           << ", not an integer: documented discrepancy), n81=" << census.n << " in [" << b.n_min << "," << b.n_max << "]";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Result&)>>> criteria{
      {"class-sizes", class_sizes},         {"orbit-censuses", orbit_censuses}, {"orbit-counts", orbit_counts},
      {"lambda-line", lambda_line},         {"mu-even", mu_even},               {"mu-char3", mu_char3},
      {"mu-odd", mu_odd},                   {"lambda-mu-coincidence", coincidence}, {"property-suites", properties},
      {"char3-triples", triples},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (r.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " (" << std::fixed
              << std::setprecision(1) << secs << "s):" << r.detail.str() << std::endl;
    failed += r.ok ? 0 : 1;
  }
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
