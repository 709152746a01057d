#pragma once

// Points, planes and lines of PG(3,q).
//
// Lines carry Plücker coordinates in the order (p01, p02, p03, p12, p31, p23),
// where for a line spanned by x and y
//     p_ij = x_i y_j - x_j y_i   and   p31 = x3 y1 - x1 y3.
// With this order the chord through P(t1), P(t2) of the twisted cubic has
// coordinate vector (a2^2, a1 a2, a1^2 - a2, a2, -a1, 1), a1 = t1 + t2, a2 = t1 t2.
// Every stored vector is scaled so that its first nonzero entry is 1.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twc/gf.hpp"

namespace twc::pg3 {

using gf::Elem;

struct Point {
  std::array<Elem, 4> x{};
  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

struct Plane {
  std::array<Elem, 4> c{};
  friend constexpr bool operator==(const Plane&, const Plane&) = default;
  friend constexpr auto operator<=>(const Plane&, const Plane&) = default;
};

/// Plücker coordinates (p01, p02, p03, p12, p31, p23).
struct Line {
  std::array<Elem, 6> p{};
  friend constexpr bool operator==(const Line&, const Line&) = default;
  friend constexpr auto operator<=>(const Line&, const Line&) = default;
};

/// Dense index of a line in [0, (q^2+1)(q^2+q+1)).
using LineKey = std::uint64_t;

/// Row-reduced basis of a line: u has pivot i, v has pivot j > i,
/// u_j = v_i = 0 and u_i = v_j = 1.
struct LineBasis {
  std::array<Elem, 4> u{};
  std::array<Elem, 4> v{};
  int i = 0;
  int j = 1;
};

class Space {
 public:
  explicit Space(gf::Field field);

  const gf::Field& field() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_.q(); }

  /// Throws ZeroVector for the all-zero vector.
  Point point(std::array<Elem, 4> x) const;
  Plane plane(std::array<Elem, 4> c) const;
  /// Normalizes a Plücker vector; throws ZeroVector or NotALine.
  Line line(std::array<Elem, 6> p) const;
  Point point_from_ints(std::array<long long, 4> x) const;
  Plane plane_from_ints(std::array<long long, 4> c) const;

  /// Throws IdenticalPoints when P = Q.
  Line line_through(const Point& a, const Point& b) const;
  /// Line spanned by two raw (unnormalized) vectors; returns false if dependent.
  bool span(const std::array<Elem, 4>& x, const std::array<Elem, 4>& y, Line& out) const noexcept;
  /// Intersection of two distinct planes.
  Line meet(const Plane& a, const Plane& b) const;

  bool satisfies_quadric(const Line& l) const noexcept;
  LineBasis basis(const Line& l) const noexcept;
  /// Two planes spanning the pencil of planes through l.
  std::pair<Plane, Plane> planes_through(const Line& l) const noexcept;
  /// The q + 1 points of l; throws NotALine if the quadric fails.
  std::vector<Point> points_on_line(const Line& l) const;

  Elem dot(const std::array<Elem, 4>& a, const std::array<Elem, 4>& b) const noexcept;
  bool plane_contains_point(const Plane& h, const Point& pt) const noexcept {
    return dot(h.c, pt.x).code == 0;
  }
  bool line_in_plane(const Line& l, const Plane& h) const noexcept;
  bool point_on_line(const Point& pt, const Line& l) const noexcept;

  std::uint64_t line_count() const noexcept { return line_count_; }
  LineKey key(const Line& l) const noexcept;
  LineKey key(const LineBasis& b) const noexcept;
  /// Key of the line spanned by two independent vectors.
  LineKey key_of_span(const std::array<Elem, 4>& x, const std::array<Elem, 4>& y) const noexcept;
  Line line_from_key(LineKey k) const;
  LineBasis basis_from_key(LineKey k) const;

  /// Scale so the first nonzero entry is one; returns false for the zero vector.
  template <std::size_t N>
  bool normalize(std::array<Elem, N>& v) const noexcept {
    for (std::size_t i = 0; i < N; ++i) {
      if (v[i].code != 0) {
        if (v[i].code == 1) return true;
        const Elem s = field_.inv(v[i]);
        v[i] = gf::Field::one();
        for (std::size_t k = i + 1; k < N; ++k) v[k] = field_.mul(v[k], s);
        return true;
      }
    }
    return false;
  }

  std::string format(const Point& pt) const;
  std::string format(const Plane& h) const;
  std::string format(const Line& l) const;

 private:
  gf::Field field_;
  std::uint64_t line_count_ = 0;
  std::array<std::uint64_t, 7> offsets_{};
};

}  // namespace twc::pg3
