#pragma once

// The twisted cubic C = {P(t) = (t^3, t^2, t, 1)} ∪ {P(inf) = (1,0,0,0)}, its
// osculating developable, chords, axes, the null polarity, and the line
// classification that singles out the external lines that are neither chords,
// axes, nor contained in an osculating plane (the "EnG" lines).

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "twc/pg3.hpp"

namespace twc::cubic {

using gf::Elem;
using pg3::Line;
using pg3::Plane;
using pg3::Point;

/// A parameter t in F_q ∪ {∞}.
struct Param {
  Elem t{};
  bool infinite = false;

  static Param at(Elem t) { return Param{t, false}; }
  static Param inf() { return Param{Elem{}, true}; }
  friend constexpr bool operator==(const Param&, const Param&) = default;
};

enum class LineClassTag {
  RealChord,
  Tangent,
  ImaginaryChord,
  RealAxis,
  Generator,
  ImaginaryAxis,
  UnisecantOsc,
  UnisecantNonOsc,
  ExternalInOscPlane,
  EnG,
  Char3PencilAxis,
};

inline constexpr std::array<LineClassTag, 11> kAllClasses{
    LineClassTag::RealChord,       LineClassTag::Tangent,         LineClassTag::ImaginaryChord,
    LineClassTag::RealAxis,        LineClassTag::Generator,       LineClassTag::ImaginaryAxis,
    LineClassTag::UnisecantOsc,    LineClassTag::UnisecantNonOsc, LineClassTag::ExternalInOscPlane,
    LineClassTag::EnG,             LineClassTag::Char3PencilAxis,
};

std::string_view to_string(LineClassTag tag) noexcept;
std::optional<LineClassTag> class_from_string(std::string_view name) noexcept;

struct LineClass {
  LineClassTag tag = LineClassTag::EnG;
  /// (a1, a2) for chords, (b1, b2) for axes given by the parametric form.
  std::optional<std::pair<Elem, Elem>> witness;
};

/// Number of roots in F_q of x^2 - s x + p.
int quadratic_root_count(const gf::Field& F, Elem s, Elem p);

class TwistedCubic {
 public:
  explicit TwistedCubic(const pg3::Space& space);

  const pg3::Space& space() const noexcept { return *space_; }
  const gf::Field& field() const noexcept { return space_->field(); }

  Point point(Param t) const noexcept;
  Plane osculating_plane(Param t) const noexcept;
  /// All q + 1 points, finite parameters in field enumeration order followed by P(∞).
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<Param>& params() const noexcept { return params_; }
  const std::vector<Plane>& osculating_planes() const noexcept { return osc_planes_; }
  bool on_cubic(const Point& pt) const noexcept;

  Line chord_vector(Elem a1, Elem a2) const;
  /// Throws Char3Axis in characteristic 3.
  Line axis_vector(Elem b1, Elem b2) const;
  Line tangent(Param t) const;

  /// Throws Char3Polarity in characteristic 3.
  Plane null_polarity_point(const Point& pt) const;
  Line null_polarity_line(const Line& l) const;

  /// The common line x0 = x3 = 0 of all osculating planes when q ≡ 0 (mod 3).
  std::optional<Line> char3_pencil_axis() const noexcept { return pencil_axis_; }

  LineClass classify(const Line& l) const;
  bool is_eng(const Line& l) const { return classify(l).tag == LineClassTag::EnG; }

  /// Parameters t with P(t) on l.
  std::vector<Param> meeting_params(const Line& l) const;
  int osculating_planes_containing(const Line& l) const noexcept;

 private:
  const pg3::Space* space_;
  bool char3_ = false;
  std::vector<Param> params_;
  std::vector<Point> points_;
  std::vector<Plane> osc_planes_;
  std::optional<Line> pencil_axis_;
};

using ClassCensus = std::map<LineClassTag, std::uint64_t>;

/// Classification counts over every line of PG(3,q); shards over `workers` threads.
ClassCensus class_census(const TwistedCubic& cubic, unsigned workers = 1);

/// (q^2 - q)(q^2 - 1).
std::uint64_t expected_eng_count(std::uint64_t q) noexcept;

}  // namespace twc::cubic
