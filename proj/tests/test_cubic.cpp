#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "twc/cubic.hpp"

using twc::Error;
using twc::ErrorCode;
using twc::cubic::class_census;
using twc::cubic::LineClassTag;
using twc::cubic::Param;
using twc::cubic::TwistedCubic;
using twc::gf::Elem;
using twc::gf::Field;
using twc::pg3::Line;
using twc::pg3::LineKey;
using twc::pg3::Plane;
using twc::pg3::Point;
using twc::pg3::Space;

namespace {

struct Geom {
  Space space;
  TwistedCubic cubic;
  explicit Geom(std::uint32_t q) : space(Field(q)), cubic(space) {}
  const Field& F() const { return space.field(); }
};

int brute_quadratic_roots(const Field& F, Elem s, Elem p) {
  int n = 0;
  for (const Elem x : F.elements()) n += F.add(F.sub(F.sq(x), F.mul(s, x)), p).code == 0 ? 1 : 0;
  return n;
}

// Classification from first principles: incidence counts, chord and axis families
// generated by their parametrizations, osculating-plane containment.
class BruteClassifier {
 public:
  explicit BruteClassifier(const Geom& s) : s_(s) {
    const Field& F = s.F();
    const auto& pts = s.cubic.points();
    cubic_pts_.insert(pts.begin(), pts.end());
    for (const Param t : s.cubic.params()) tangents_.insert(s.cubic.tangent(t));
    for (const Elem a1 : F.elements()) {
      for (const Elem a2 : F.elements()) {
        if (brute_quadratic_roots(F, a1, a2) == 0) imag_chords_.insert(s.cubic.chord_vector(a1, a2));
      }
    }
    if (F.p() != 3) {
      const auto& osc = s.cubic.osculating_planes();
      for (std::size_t i = 0; i < osc.size(); ++i)
        for (std::size_t j = i + 1; j < osc.size(); ++j) real_axes_.insert(s.space.meet(osc[i], osc[j]));
      for (const Elem b1 : F.elements()) {
        for (const Elem b2 : F.elements()) {
          if (brute_quadratic_roots(F, b1, b2) == 0) imag_axes_.insert(s.cubic.axis_vector(b1, b2));
        }
      }
    } else {
      pencil_axis_ = s.space.meet(s.space.plane_from_ints({1, 0, 0, 0}), s.space.plane_from_ints({0, 0, 0, 1}));
    }
  }

  LineClassTag classify(const Line& l) const {
    int meets = 0;
    for (const Point& pt : s_.space.points_on_line(l)) meets += cubic_pts_.contains(pt) ? 1 : 0;
    bool in_osc = false;
    for (const Plane& h : s_.cubic.osculating_planes()) in_osc = in_osc || s_.space.line_in_plane(l, h);
    if (meets == 2) return LineClassTag::RealChord;
    if (meets == 1) {
      if (tangents_.contains(l)) return LineClassTag::Tangent;
      return in_osc ? LineClassTag::UnisecantOsc : LineClassTag::UnisecantNonOsc;
    }
    if (imag_chords_.contains(l)) return LineClassTag::ImaginaryChord;
    if (real_axes_.contains(l)) return LineClassTag::RealAxis;
    if (imag_axes_.contains(l)) return LineClassTag::ImaginaryAxis;
    if (pencil_axis_ && *pencil_axis_ == l) return LineClassTag::Char3PencilAxis;
    return in_osc ? LineClassTag::ExternalInOscPlane : LineClassTag::EnG;
  }

 private:
  const Geom& s_;
  std::set<Point> cubic_pts_;
  std::set<Line> tangents_, imag_chords_, real_axes_, imag_axes_;
  std::optional<Line> pencil_axis_;
};

}  // namespace

TEST(Cubic, PointExamples) {
  const Geom s(5);
  EXPECT_EQ(s.cubic.point(Param::at(Elem{0})), s.space.point_from_ints({0, 0, 0, 1}));
  EXPECT_EQ(s.cubic.point(Param::inf()), s.space.point_from_ints({1, 0, 0, 0}));
  EXPECT_EQ(s.cubic.point(Param::at(Elem{2})), s.space.point_from_ints({3, 4, 2, 1}));
}

TEST(Cubic, OsculatingPlaneExamples) {
  const Geom s(7);
  EXPECT_EQ(s.cubic.osculating_plane(Param::inf()), s.space.plane_from_ints({0, 0, 0, 1}));
  EXPECT_EQ(s.cubic.osculating_plane(Param::at(Elem{0})), s.space.plane_from_ints({1, 0, 0, 0}));
  EXPECT_EQ(s.cubic.osculating_plane(Param::at(Elem{1})), s.space.plane_from_ints({1, 4, 3, 6}));
  for (const Param t : s.cubic.params()) {
    EXPECT_TRUE(s.space.plane_contains_point(s.cubic.osculating_plane(t), s.cubic.point(t)));
  }
}

TEST(Cubic, ChordVectorExamples) {
  const Geom s(5);
  const Line l = s.cubic.chord_vector(Elem{0}, Elem{0});
  EXPECT_EQ(l, s.space.line(std::array<Elem, 6>{Elem{0}, Elem{0}, Elem{0}, Elem{0}, Elem{0}, Elem{1}}));
  EXPECT_EQ(s.cubic.classify(l).tag, LineClassTag::Tangent);
  EXPECT_EQ(s.cubic.chord_vector(Elem{1}, Elem{0}),
            s.space.line_through(s.cubic.point(Param::at(Elem{0})), s.cubic.point(Param::at(Elem{1}))));
}

TEST(Cubic, AxisVectorGivesMuLine) {
  for (std::uint32_t q : {5u, 7u, 11u, 13u}) {
    const Geom s(q);
    const Field& F = s.F();
    const Elem ninth = F.inv(F.from_int(9));
    const Line axis = s.cubic.axis_vector(F.zero(), F.inv(F.from_int(3)));
    EXPECT_EQ(axis, s.space.line({ninth, F.zero(), F.one(), F.neg(ninth), F.zero(), F.one()})) << q;
  }
}

TEST(Cubic, AxisAndPolarityRejectedInCharacteristicThree) {
  const Geom s(9);
  try {
    s.cubic.axis_vector(Elem{0}, Elem{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Char3Axis);
  }
  try {
    s.cubic.null_polarity_point(s.space.point_from_ints({1, 0, 0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Char3Polarity);
  }
}

TEST(Cubic, ChordsMeetTwiceExactlyForTwoRoots) {
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u}) {
    const Geom s(q);
    const Field& F = s.F();
    std::set<Line> from_chords, meeting_twice;
    for (const Elem a1 : F.elements())
      for (const Elem a2 : F.elements())
        if (brute_quadratic_roots(F, a1, a2) == 2) from_chords.insert(s.cubic.chord_vector(a1, a2));
    const auto& pts = s.cubic.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) meeting_twice.insert(s.space.line_through(pts[i], pts[j]));
    // Chords through P(∞) have no (a1, a2) vector.
    std::set<Line> finite;
    for (const Line& l : meeting_twice) {
      bool through_inf = false;
      for (const Point& pt : s.space.points_on_line(l)) through_inf = through_inf || pt == s.cubic.point(Param::inf());
      if (!through_inf) finite.insert(l);
    }
    EXPECT_EQ(from_chords, finite) << q;
    EXPECT_EQ(meeting_twice.size(), q * (q + 1) / 2);
  }
}

TEST(Cubic, NullPolarityOfInfinity) {
  const Geom s(7);
  EXPECT_EQ(s.cubic.null_polarity_point(s.space.point_from_ints({1, 0, 0, 0})), s.cubic.osculating_plane(Param::inf()));
  for (const Param t : s.cubic.params()) {
    EXPECT_EQ(s.cubic.null_polarity_point(s.cubic.point(t)), s.cubic.osculating_plane(t));
  }
}

TEST(Cubic, NullPolarityIsInvolutionOnLines) {
  const Geom s(7);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<LineKey> pick(0, s.space.line_count() - 1);
  for (int i = 0; i < 100; ++i) {
    const Line l = s.space.line_from_key(pick(rng));
    EXPECT_EQ(s.cubic.null_polarity_line(s.cubic.null_polarity_line(l)), l);
  }
}

TEST(Cubic, NullPolaritySendsChordsToAxes) {
  const Geom s(7);
  const Field& F = s.F();
  std::set<Line> axes;
  for (const Elem b1 : F.elements())
    for (const Elem b2 : F.elements()) axes.insert(s.cubic.axis_vector(b1, b2));
  for (const Elem a1 : F.elements()) {
    for (const Elem a2 : F.elements()) {
      const Line chord = s.cubic.chord_vector(a1, a2);
      const Line image = s.cubic.null_polarity_line(chord);
      EXPECT_TRUE(axes.contains(image));
      const int roots = brute_quadratic_roots(F, a1, a2);
      const auto tag = s.cubic.classify(image).tag;
      if (roots == 2) EXPECT_EQ(tag, LineClassTag::RealAxis);
      if (roots == 1) EXPECT_EQ(tag, LineClassTag::Tangent);
      if (roots == 0) EXPECT_EQ(tag, LineClassTag::ImaginaryAxis);
    }
  }
}

TEST(Cubic, NullPolarityPreservesEnG) {
  for (std::uint32_t q : {5u, 7u}) {
    const Geom s(q);
    std::set<Line> eng, images;
    for (LineKey k = 0; k < s.space.line_count(); ++k) {
      const Line l = s.space.line_from_key(k);
      if (!s.cubic.is_eng(l)) continue;
      eng.insert(l);
      images.insert(s.cubic.null_polarity_line(l));
    }
    EXPECT_EQ(eng, images) << q;
  }
}

TEST(Cubic, NoFourPointsCoplanar) {
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
    const Geom s(q);
    const auto& pts = s.cubic.points();
    ASSERT_EQ(pts.size(), q + 1);
    const std::set<Point> on_cubic(pts.begin(), pts.end());
    // A plane through three cubic points meets the cubic in no fourth point.
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const Line l = s.space.line_through(pts[i], pts[j]);
        for (std::size_t k = j + 1; k < pts.size(); ++k) {
          int incident = 0;
          const auto [h1, h2] = s.space.planes_through(l);
          // The plane spanned by l and pts[k].
          Plane h = s.space.plane_contains_point(h1, pts[k]) ? h1 : h2;
          if (!s.space.plane_contains_point(h, pts[k])) {
            const twc::gf::Field& F = s.F();
            const Elem a = s.space.dot(h2.c, pts[k].x), b = s.space.dot(h1.c, pts[k].x);
            std::array<Elem, 4> c;
            for (int m = 0; m < 4; ++m) c[m] = F.sub(F.mul(a, h1.c[m]), F.mul(b, h2.c[m]));
            h = s.space.plane(c);
          }
          for (const Point& pt : pts) incident += s.space.plane_contains_point(h, pt) ? 1 : 0;
          ASSERT_EQ(incident, 3) << q;
        }
      }
    }
  }
}

TEST(Cubic, Char3OsculatingPlanesShareAxis) {
  for (std::uint32_t q : {9u, 27u}) {
    const Geom s(q);
    const auto axis = s.cubic.char3_pencil_axis();
    ASSERT_TRUE(axis.has_value());
    EXPECT_EQ(*axis, s.space.meet(s.space.plane_from_ints({1, 0, 0, 0}), s.space.plane_from_ints({0, 0, 0, 1})));
    const auto& osc = s.cubic.osculating_planes();
    for (std::size_t i = 0; i < osc.size(); ++i)
      for (std::size_t j = i + 1; j < osc.size(); ++j) ASSERT_EQ(s.space.meet(osc[i], osc[j]), *axis);
  }
  EXPECT_FALSE(Geom(7).cubic.char3_pencil_axis().has_value());
}

TEST(Cubic, ClassifyExamples) {
  {
    const Geom s(7);
    const Line lambda = s.space.line_through(s.space.point_from_ints({1, 0, 0, 1}), s.space.point_from_ints({0, 0, 1, 0}));
    EXPECT_EQ(s.cubic.classify(lambda).tag, LineClassTag::EnG);
    const Line l0 = s.space.line_through(s.space.point_from_ints({0, 0, 0, 1}), s.space.point_from_ints({1, 0, 1, 0}));
    EXPECT_EQ(s.cubic.classify(l0).tag, LineClassTag::UnisecantNonOsc);
    const Line l1 = s.space.line_through(s.space.point_from_ints({0, 1, 0, 1}), s.space.point_from_ints({1, 0, 1, 0}));
    EXPECT_EQ(s.cubic.classify(l1).tag, LineClassTag::RealChord);
  }
  {
    const Geom s(8);
    const Line l1 = s.space.line_through(s.space.point_from_ints({0, 1, 0, 1}), s.space.point_from_ints({1, 0, 1, 0}));
    EXPECT_EQ(s.cubic.classify(l1).tag, LineClassTag::Tangent);
  }
  {
    const Geom s(9);
    const Line lambda = s.space.line_through(s.space.point_from_ints({1, 0, 0, 1}), s.space.point_from_ints({0, 0, 1, 0}));
    EXPECT_EQ(s.cubic.classify(lambda).tag, LineClassTag::ExternalInOscPlane);
  }
  {
    const Geom s(11);
    const Field& F = s.F();
    const Elem ninth = F.inv(F.from_int(9));
    ASSERT_EQ(ninth, Elem{5});
    const Line l = s.space.line_through(s.space.point({F.zero(), ninth, F.zero(), F.one()}), s.space.point_from_ints({1, 0, 1, 0}));
    EXPECT_EQ(s.cubic.classify(l).tag, LineClassTag::ImaginaryAxis);
  }
}

TEST(Cubic, ClassifyMatchesFirstPrinciples) {
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u}) {
    const Geom s(q);
    const BruteClassifier brute(s);
    for (LineKey k = 0; k < s.space.line_count(); ++k) {
      const Line l = s.space.line_from_key(k);
      ASSERT_EQ(s.cubic.classify(l).tag, brute.classify(l)) << "q=" << q << " " << s.space.format(l);
    }
  }
}

TEST(Cubic, EnGClassSize) {
  EXPECT_EQ(class_census(Geom(5).cubic).at(LineClassTag::EnG), 480u);
  EXPECT_EQ(class_census(Geom(8).cubic, 2).at(LineClassTag::EnG), 3528u);
  EXPECT_EQ(class_census(Geom(9).cubic, 3).at(LineClassTag::EnG), 5760u);
  for (std::uint64_t q : {5u, 7u, 8u, 9u, 11u, 13u}) {
    const Geom s(static_cast<std::uint32_t>(q));
    const auto census = class_census(s.cubic, 2);
    std::uint64_t total = 0;
    for (const auto& [tag, n] : census) total += n;
    EXPECT_EQ(total, s.space.line_count());
    EXPECT_EQ(census.at(LineClassTag::EnG), (q * q - q) * (q * q - 1));
    EXPECT_EQ(twc::cubic::expected_eng_count(q), (q * q - q) * (q * q - 1));
  }
}

TEST(Cubic, CensusIndependentOfWorkers) {
  const Geom s(9);
  EXPECT_EQ(class_census(s.cubic, 1), class_census(s.cubic, 4));
  EXPECT_EQ(class_census(s.cubic, 1).at(LineClassTag::Char3PencilAxis), 1u);
}

TEST(Cubic, ClassNamesRoundTrip) {
  for (const auto tag : twc::cubic::kAllClasses) {
    EXPECT_EQ(twc::cubic::class_from_string(twc::cubic::to_string(tag)), tag);
  }
  EXPECT_FALSE(twc::cubic::class_from_string("O7").has_value());
}

TEST(Cubic, QuadraticRootCountMatchesBruteForce) {
  for (std::uint32_t q : {4u, 5u, 8u, 9u, 25u}) {
    const Field F(q);
    for (const Elem s : F.elements())
      for (const Elem p : F.elements())
        ASSERT_EQ(twc::cubic::quadratic_root_count(F, s, p), brute_quadratic_roots(F, s, p));
  }
}
