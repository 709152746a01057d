#pragma once

// The stabilizer G_q ≅ PGL(2,q) of the twisted cubic, realised through the 4x4
// lift of a 2x2 matrix. Points are row vectors and a projectivity acts by
// right multiplication, x -> x M. The 2x2 source (a, b, c, d) acts on binary
// forms as (s, u) -> (a s + b u, c s + d u), so on cubic parameters it is the
// Möbius map t -> (a t + b) / (c t + d), and the lift sends P(t) to P(that).

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twc/pg3.hpp"

namespace twc::group {

using gf::Elem;
using pg3::Line;
using pg3::Point;

struct GL2Rep {
  Elem a{}, b{}, c{}, d{};
  friend constexpr bool operator==(const GL2Rep&, const GL2Rep&) = default;
  friend constexpr auto operator<=>(const GL2Rep&, const GL2Rep&) = default;
};

using Mat4 = std::array<std::array<Elem, 4>, 4>;

struct Projectivity {
  GL2Rep source;
  Mat4 mat{};
  friend bool operator==(const Projectivity& x, const Projectivity& y) { return x.mat == y.mat; }
  friend bool operator<(const Projectivity& x, const Projectivity& y) { return x.mat < y.mat; }
};

enum class GroupKind { Trivial, C2, C3, C2xC2, C4, A4, OrderCensus };

struct GroupId {
  GroupKind kind = GroupKind::Trivial;
  std::size_t order = 1;
  /// element order -> number of elements of that order
  std::map<int, int> order_census;

  friend bool operator==(const GroupId&, const GroupId&) = default;
};

std::string to_string(GroupKind kind);
std::string to_string(const GroupId& id);

class Gq {
 public:
  explicit Gq(const pg3::Space& space);

  const pg3::Space& space() const noexcept { return *space_; }
  const gf::Field& field() const noexcept { return space_->field(); }
  std::uint64_t order() const noexcept;

  /// Scale so the first nonzero of (a, b, c, d) is one; throws Singular if ad = bc.
  GL2Rep canonical(GL2Rep r) const;
  GL2Rep gl2(long long a, long long b, long long c, long long d) const;
  /// Product "r then s" under the row action.
  GL2Rep multiply(const GL2Rep& r, const GL2Rep& s) const;
  GL2Rep inverse(const GL2Rep& r) const;

  /// The lift matrix, entries exactly as the general formula gives them (unscaled).
  Mat4 lift_matrix(const GL2Rep& r) const noexcept;
  /// Throws Singular if ad = bc.
  Projectivity lift(const GL2Rep& r) const;
  Projectivity identity() const;

  /// All q^3 - q elements, ordered by canonical (a, b, c, d) codes.
  std::vector<Projectivity> enumerate() const;
  /// x -> x + 1, x -> λx for the field's primitive λ, x -> 1/x.
  std::vector<Projectivity> generators() const;

  Point act_point(const Projectivity& g, const Point& pt) const;
  Line act_line(const Projectivity& g, const Line& l) const;
  std::array<Elem, 4> apply(const Mat4& m, const std::array<Elem, 4>& x) const noexcept;
  /// Image of a line under a matrix; the fast path used by the orbit engine.
  Line act_line(const Mat4& m, const Line& l) const noexcept;

  /// "g then h".
  Projectivity compose(const Projectivity& g, const Projectivity& h) const;
  Projectivity inverse(const Projectivity& g) const;
  int element_order(const Projectivity& g) const;
  bool is_identity(const Projectivity& g) const noexcept;

  /// Elements fixing l (full group scan).
  std::vector<Projectivity> stabilizer_of_line(const Line& l) const;
  std::vector<Projectivity> stabilizer_of_point(const Point& pt) const;

  /// Throws NotClosed if elems is not closed under composition.
  GroupId identify(const std::vector<Projectivity>& elems) const;

  Mat4 mat_multiply(const Mat4& x, const Mat4& y) const noexcept;
  bool canonicalize(Mat4& m) const noexcept;
  std::string format(const Projectivity& g) const;

 private:
  const pg3::Space* space_;
};

}  // namespace twc::group
