#pragma once

// The two explicit families of EnG-lines,
//     Λ   = line through (1,0,0,1) and (0,0,1,0),
//     ℓ_μ = line through (0,μ,0,1) and (1,0,1,0),
// together with predictions of their stabilizers and orbits.
//
// Every *_expected / *_pairs / *_coincidence function is a pure function of
// the field and μ: none of them touches the orbit engine. Measurements come
// from char3_census and from the engine itself, so predictions and measurements
// meet only in the tests and the verify report.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twc/context.hpp"

namespace twc::families {

using gf::Elem;
using group::GroupKind;
using group::Projectivity;
using pg3::Line;

enum class LambdaCase { Xi1NonCube, Xi1CubeA4, XiM1Even, XiM1Odd };
std::string to_string(LambdaCase c);

struct LambdaSpec {
  std::uint32_t q = 0;
  std::uint64_t stab_order = 0;
  GroupKind stab_id = GroupKind::Trivial;
  std::uint64_t orbit_len = 0;
  LambdaCase tag = LambdaCase::Xi1NonCube;
};

enum class MuCase {
  Even,             // stabilizer C2
  Char3NonSquare,   // C2
  Char3Square,      // C2 x C2
  OddNonSquare,     // C2
  OddSquare,        // C2 x C2
  OddA4,            // μ = -1/3, q ≡ 1 (mod 12), -1/3 a fourth power
};
std::string to_string(MuCase c);

struct MuSpec {
  std::uint32_t q = 0;
  Elem mu;
  bool is_eng = true;
  std::uint64_t stab_order = 0;
  GroupKind stab_id = GroupKind::Trivial;
  std::uint64_t orbit_len = 0;
  MuCase tag = MuCase::Even;
};

struct Char3Census {
  std::uint32_t q = 0;
  std::uint64_t n = 0;  // distinct orbits among the ℓ_μ
  std::uint64_t S = 0;  // lines covered by those orbits
  std::uint64_t t = 0;  // orbits holding three ℓ_μ
  std::uint64_t pair_count = 0;  // unordered pairs of ℓ_μ sharing an orbit
  /// Equivalent (μ, μ') found by the engine, μ < μ' by code.
  std::vector<std::pair<Elem, Elem>> pairs;
  std::map<std::uint64_t, std::uint64_t> lengths;  // orbit length -> how many
  std::uint64_t nonsquare_orbits = 0;
  std::uint64_t square_orbits = 0;
};

Line lambda_line(const pg3::Space& space);
/// Throws Char3NotApplicable when q ≡ 0 (mod 3).
LambdaSpec lambda_expected(const gf::Field& F);

/// Any μ is accepted; ℓ_0 and ℓ_1 are lines too, just not EnG.
Line mu_line(const pg3::Space& space, Elem mu);
/// Throws BadMu for μ ∈ {0, 1}.
bool mu_is_eng(const gf::Field& F, Elem mu);
/// Throws BadMu or NotEnG.
MuSpec mu_expected(const gf::Field& F, Elem mu);
/// Stabilizer of ℓ_μ assembled from the explicit matrix templates.
std::vector<Projectivity> mu_stabilizer_matrices(const group::Gq& G, Elem mu);

/// {d^4, (d^2-1)^2} over admissible d; throws NotChar3.
std::vector<std::pair<Elem, Elem>> char3_equivalent_pairs(const gf::Field& F);
/// (q-3)/8 or (q-9)/8 by q mod 4; throws NotChar3.
std::uint64_t char3_expected_pair_count(std::uint32_t q);

struct Char3Bounds {
  std::uint64_t n_min = 0, n_max = 0;
  std::uint64_t S_min = 0, S_max = 0;
  std::uint64_t t_max = 0;
  bool exact = false;  // q ≡ 3 (mod 4): n and S are determined
};
Char3Bounds char3_expected_bounds(std::uint32_t q);
/// (q - (-1)^m sqrt(q) - 15) / 48 for q = 3^(2m), as a rational (numerator, 48).
std::optional<std::pair<long long, long long>> char3_triple_formula(std::uint32_t q);

/// Orbit structure of all ℓ_μ, μ ∈ F_q* \ {1}; throws NotChar3 or GuardrailExceeded.
Char3Census char3_census(const Context& ctx, std::uint32_t max_q = 81);

/// -1/3 when Λ and ℓ_{-1/3} are predicted to share an orbit.
std::optional<Elem> lambda_mu_coincidence(const gf::Field& F);

/// Census of EnG orbit lengths predicted for q (odd or even), keyed by length.
std::map<std::uint64_t, std::uint64_t> expected_eng_census(std::uint32_t q);
/// 2q - 3 + ξ (odd q) or 2q - 2 + ξ (even q).
std::uint64_t expected_eng_orbit_count(std::uint32_t q);
/// 2q + 7 + ξ.
std::uint64_t expected_total_line_orbits(std::uint32_t q);

/// Resolve a μ spec: a decimal element code, or one of "-1/3", "1/9", "-1/2", "1/2", "1/3".
Elem parse_mu(const gf::Field& F, const std::string& text);

}  // namespace twc::families
