#include "twc/families.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_map>

namespace twc::families {

namespace {

std::uint64_t group_order(std::uint64_t q) { return q * q * q - q; }

// -1/3 and friends, only ever evaluated in odd characteristic prime to 3.
Elem ratio(const gf::Field& F, long long num, long long den) { return F.div(F.from_int(num), F.from_int(den)); }

bool is_odd_prime_to_3(const gf::Field& F) { return !F.even() && F.p() != 3; }

bool odd_a4_case(const gf::Field& F, Elem mu) {
  if (!is_odd_prime_to_3(F) || F.q() % 12 != 1) return false;
  const Elem m13 = ratio(F, -1, 3);
  return mu == m13 && F.is_kth_power(m13, 4);
}

}  // namespace

std::string to_string(LambdaCase c) {
  switch (c) {
    case LambdaCase::Xi1NonCube: return "xi1_noncube";
    case LambdaCase::Xi1CubeA4: return "xi1_cube_A4";
    case LambdaCase::XiM1Even: return "xim1_even";
    case LambdaCase::XiM1Odd: return "xim1_odd";
  }
  return "?";
}

std::string to_string(MuCase c) {
  switch (c) {
    case MuCase::Even: return "even";
    case MuCase::Char3NonSquare: return "char3_nonsquare";
    case MuCase::Char3Square: return "char3_square";
    case MuCase::OddNonSquare: return "odd_nonsquare";
    case MuCase::OddSquare: return "odd_square";
    case MuCase::OddA4: return "odd_A4";
  }
  return "?";
}

Line lambda_line(const pg3::Space& space) {
  return space.line_through(space.point_from_ints({1, 0, 0, 1}), space.point_from_ints({0, 0, 1, 0}));
}

LambdaSpec lambda_expected(const gf::Field& F) {
  if (F.xi() == 0) throw Error(ErrorCode::Char3NotApplicable, "Λ is not an EnG-line when 3 | q");
  LambdaSpec s;
  s.q = F.q();
  if (F.xi() == 1) {
    if (!F.even() && F.is_cube(ratio(F, -1, 2))) {
      s.tag = LambdaCase::Xi1CubeA4;
      s.stab_order = 12;
      s.stab_id = GroupKind::A4;
    } else {
      s.tag = LambdaCase::Xi1NonCube;
      s.stab_order = 3;
      s.stab_id = GroupKind::C3;
    }
  } else if (F.even()) {
    s.tag = LambdaCase::XiM1Even;
    s.stab_order = 1;
    s.stab_id = GroupKind::Trivial;
  } else {
    s.tag = LambdaCase::XiM1Odd;
    s.stab_order = 2;
    s.stab_id = GroupKind::C2;
  }
  s.orbit_len = group_order(F.q()) / s.stab_order;
  return s;
}

Line mu_line(const pg3::Space& space, Elem mu) {
  const gf::Field& F = space.field();
  return space.line_through(pg3::Point{{F.zero(), mu, F.zero(), F.one()}}, space.point_from_ints({1, 0, 1, 0}));
}

bool mu_is_eng(const gf::Field& F, Elem mu) {
  if (mu.code == 0 || mu == F.one()) throw Error(ErrorCode::BadMu, "μ must avoid 0 and 1");
  if (F.even() || F.p() == 3) return true;
  return mu != ratio(F, 1, 9);
}

MuSpec mu_expected(const gf::Field& F, Elem mu) {
  MuSpec s;
  s.q = F.q();
  s.mu = mu;
  s.is_eng = mu_is_eng(F, mu);
  if (!s.is_eng) throw Error(ErrorCode::NotEnG, "ℓ_μ with μ = 1/9 is an axis");
  const bool square = F.is_square(mu);
  if (F.even()) {
    s.tag = MuCase::Even;
  } else if (F.p() == 3) {
    s.tag = square ? MuCase::Char3Square : MuCase::Char3NonSquare;
  } else if (!square) {
    s.tag = MuCase::OddNonSquare;
  } else {
    s.tag = odd_a4_case(F, mu) ? MuCase::OddA4 : MuCase::OddSquare;
  }
  switch (s.tag) {
    case MuCase::Even:
    case MuCase::Char3NonSquare:
    case MuCase::OddNonSquare:
      s.stab_order = 2;
      s.stab_id = GroupKind::C2;
      break;
    case MuCase::Char3Square:
    case MuCase::OddSquare:
      s.stab_order = 4;
      s.stab_id = GroupKind::C2xC2;
      break;
    case MuCase::OddA4:
      s.stab_order = 12;
      s.stab_id = GroupKind::A4;
      break;
  }
  s.orbit_len = group_order(F.q()) / s.stab_order;
  return s;
}

std::vector<Projectivity> mu_stabilizer_matrices(const group::Gq& G, Elem mu) {
  const gf::Field& F = G.field();
  const MuSpec spec = mu_expected(F, mu);
  std::vector<Projectivity> out;
  auto add = [&](Elem a, Elem b, Elem c, Elem d) { out.push_back(G.lift(group::GL2Rep{a, b, c, d})); };
  const Elem O = F.zero(), I = F.one();
  add(I, O, O, I);
  if (spec.tag == MuCase::Even) {
    add(O, F.square_roots(mu).front(), I, O);
    std::sort(out.begin(), out.end());
    return out;
  }
  add(I, O, O, F.neg(I));
  if (spec.stab_order >= 4) {
    for (const Elem b : F.square_roots(mu)) add(O, b, I, O);
  }
  if (spec.tag == MuCase::OddA4) {
    for (const Elem b : F.square_roots(ratio(F, 1, 3))) {
      for (const Elem d : F.fourth_roots(ratio(F, -1, 3))) add(F.neg(F.div(b, d)), b, I, d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Elem, Elem>> char3_equivalent_pairs(const gf::Field& F) {
  if (F.p() != 3) throw Error(ErrorCode::NotChar3, "q = " + std::to_string(F.q()) + " is not a power of 3");
  std::set<std::pair<Elem, Elem>> pairs;
  const Elem I = F.one();
  for (const Elem d : F.units()) {
    if (d == I || d == F.neg(I)) continue;
    const Elem d2 = F.sq(d);
    if (d2 == F.neg(I)) continue;
    if (!F.is_square(F.sub(I, d2))) continue;
    const Elem mu = F.sq(d2);
    const Elem mu2 = F.sq(F.sub(d2, I));
    pairs.insert(std::minmax(mu, mu2));
  }
  return {pairs.begin(), pairs.end()};
}

std::uint64_t char3_expected_pair_count(std::uint32_t q) {
  if (gf::prime_power(q).first != 3) throw Error(ErrorCode::NotChar3, "q = " + std::to_string(q));
  return q % 4 == 3 ? (q - 3) / 8 : (q - 9) / 8;
}

Char3Bounds char3_expected_bounds(std::uint32_t q) {
  if (gf::prime_power(q).first != 3) throw Error(ErrorCode::NotChar3, "q = " + std::to_string(q));
  const std::uint64_t G = group_order(q);
  Char3Bounds b;
  if (q % 4 == 3) {
    b.exact = true;
    b.n_min = b.n_max = (7 * std::uint64_t{q} - 13) / 8;
    b.S_min = b.S_max = G * (11 * std::uint64_t{q} - 17) / 32;
    b.t_max = 0;
  } else {
    b.n_min = (7 * std::uint64_t{q} - 7) / 8;
    b.n_max = (23 * std::uint64_t{q} - 39) / 24;
    // (q-1)/2 orbits of length G/2 plus (3q-3)/8 of length G/4; the printed 11q-7 exceeds this at q = 9
    b.S_min = G * (11 * std::uint64_t{q} - 11) / 32;
    b.S_max = G * (35 * std::uint64_t{q} - 45) / 96;
    b.t_max = (q - 9) / 24;
  }
  return b;
}

std::optional<std::pair<long long, long long>> char3_triple_formula(std::uint32_t q) {
  const auto [p, n] = gf::prime_power(q);
  if (p != 3 || n % 2 != 0) return std::nullopt;
  const long long m = n / 2;
  long long root = 1;
  for (long long i = 0; i < m; ++i) root *= 3;
  const long long sign = m % 2 == 0 ? 1 : -1;
  return std::make_pair(static_cast<long long>(q) - sign * root - 15, 48LL);
}

Char3Census char3_census(const Context& ctx, std::uint32_t max_q) {
  const gf::Field& F = ctx.field();
  if (F.p() != 3) throw Error(ErrorCode::NotChar3, "q = " + std::to_string(F.q()) + " is not a power of 3");
  if (F.q() > max_q) {
    throw Error(ErrorCode::GuardrailExceeded, "q = " + std::to_string(F.q()) + " exceeds " + std::to_string(max_q));
  }
  Char3Census out;
  out.q = F.q();
  // Key of every ℓ_μ, μ ∈ F* \ {1}, in code order.
  std::vector<Elem> mus;
  for (std::uint32_t c = 2; c < F.q(); ++c) mus.push_back(Elem{c});
  std::unordered_map<pg3::LineKey, std::size_t> index;
  for (std::size_t i = 0; i < mus.size(); ++i) index.emplace(ctx.space.key(mu_line(ctx.space, mus[i])), i);

  std::vector<int> orbit_of(mus.size(), -1);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    if (orbit_of[i] >= 0) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    const auto keys = ctx.engine.orbit_members(mu_line(ctx.space, mus[i]));
    for (const pg3::LineKey k : keys) {
      const auto it = index.find(k);
      if (it == index.end()) continue;
      orbit_of[it->second] = id;
      members.back().push_back(it->second);
    }
    ++out.lengths[keys.size()];
    out.S += keys.size();
    if (F.is_square(mus[i])) {
      ++out.square_orbits;
    } else {
      ++out.nonsquare_orbits;
    }
  }
  out.n = members.size();
  for (const auto& group : members) {
    if (group.size() == 3) ++out.t;
    out.pair_count += group.size() * (group.size() - 1) / 2;
    for (std::size_t x = 0; x < group.size(); ++x) {
      for (std::size_t y = x + 1; y < group.size(); ++y) out.pairs.push_back(std::minmax(mus[group[x]], mus[group[y]]));
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

std::optional<Elem> lambda_mu_coincidence(const gf::Field& F) {
  if (!is_odd_prime_to_3(F)) return std::nullopt;
  const Elem m13 = ratio(F, -1, 3);
  const std::uint32_t r = F.q() % 12;
  if (r == 11 && !F.is_square(m13)) return m13;
  if (r == 1 && F.is_square(m13) && F.is_cube(ratio(F, 1, 2)) && F.is_kth_power(m13, 4)) return m13;
  return std::nullopt;
}

std::map<std::uint64_t, std::uint64_t> expected_eng_census(std::uint32_t q) {
  const std::uint64_t G = group_order(q);
  const int xi = q % 3 == 2 ? -1 : static_cast<int>(q % 3);
  std::map<std::uint64_t, std::uint64_t> census;
  auto add = [&](std::uint64_t count, std::uint64_t divisor) {
    if (count > 0) census[G / divisor] += count;
  };
  if (q % 2 == 0) {
    add(static_cast<std::uint64_t>(2 + xi), static_cast<std::uint64_t>(2 + xi));
    add(2 * std::uint64_t{q} - 4, 2);
    return census;
  }
  add((q - xi) / 3, 1);
  add(q - 1, 2);
  const std::uint64_t nq = xi == 1 ? (2 * q - 11) / 3 : xi == -1 ? (2 * q - 10) / 3 : (2 * q - 6) / 3;
  add(nq, 4);
  if (xi == 1) {
    add(1, 12);
    add(2, 3);
  }
  return census;
}

std::uint64_t expected_eng_orbit_count(std::uint32_t q) {
  const int xi = q % 3 == 2 ? -1 : static_cast<int>(q % 3);
  return static_cast<std::uint64_t>(2 * static_cast<long long>(q) - (q % 2 == 0 ? 2 : 3) + xi);
}

std::uint64_t expected_total_line_orbits(std::uint32_t q) {
  const int xi = q % 3 == 2 ? -1 : static_cast<int>(q % 3);
  return static_cast<std::uint64_t>(2 * static_cast<long long>(q) + 7 + xi);
}

Elem parse_mu(const gf::Field& F, const std::string& text) {
  static const std::map<std::string, std::pair<long long, long long>> kTokens{
      {"-1/3", {-1, 3}}, {"1/9", {1, 9}}, {"-1/2", {-1, 2}}, {"1/2", {1, 2}}, {"1/3", {1, 3}}};
  if (const auto it = kTokens.find(text); it != kTokens.end()) {
    const Elem den = F.from_int(it->second.second);
    if (den.code == 0) throw Error(ErrorCode::BadMu, text + " is undefined in characteristic " + std::to_string(F.p()));
    return F.div(F.from_int(it->second.first), den);
  }
  std::uint32_t code = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), code);
  if (ec != std::errc{} || ptr != text.data() + text.size()) throw Error(ErrorCode::BadMu, "cannot parse μ = '" + text + "'");
  if (code >= F.q()) throw Error(ErrorCode::BadMu, "μ code " + text + " is not below q");
  return Elem{code};
}

}  // namespace twc::families
