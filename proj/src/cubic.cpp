#include "twc/cubic.hpp"

#include <thread>

namespace twc::cubic {

std::string_view to_string(LineClassTag tag) noexcept {
  switch (tag) {
    case LineClassTag::RealChord: return "RealChord";
    case LineClassTag::Tangent: return "Tangent";
    case LineClassTag::ImaginaryChord: return "ImaginaryChord";
    case LineClassTag::RealAxis: return "RealAxis";
    case LineClassTag::Generator: return "Generator";
    case LineClassTag::ImaginaryAxis: return "ImaginaryAxis";
    case LineClassTag::UnisecantOsc: return "UnisecantOsc";
    case LineClassTag::UnisecantNonOsc: return "UnisecantNonOsc";
    case LineClassTag::ExternalInOscPlane: return "ExternalInOscPlane";
    case LineClassTag::EnG: return "EnG";
    case LineClassTag::Char3PencilAxis: return "Char3PencilAxis";
  }
  return "?";
}

std::optional<LineClassTag> class_from_string(std::string_view name) noexcept {
  for (const LineClassTag tag : kAllClasses) {
    if (to_string(tag) == name) return tag;
  }
  return std::nullopt;
}

int quadratic_root_count(const gf::Field& F, Elem s, Elem p) {
  if (!F.even()) {
    const Elem disc = F.sub(F.sq(s), F.mul(F.from_int(4), p));
    if (disc.code == 0) return 1;
    return F.is_square(disc) ? 2 : 0;
  }
  if (s.code == 0) return 1;  // x^2 = p has the single root sqrt(p)
  // x^2 + s x + p = 0  <=>  y^2 + y = p / s^2 with x = s y; solvable iff Tr(p / s^2) = 0.
  const Elem c = F.div(p, F.sq(s));
  Elem trace = c;
  Elem power = c;
  for (std::uint32_t k = 1; k < F.n(); ++k) {
    power = F.sq(power);
    trace = F.add(trace, power);
  }
  return trace.code == 0 ? 2 : 0;
}

TwistedCubic::TwistedCubic(const pg3::Space& space) : space_(&space) {
  const gf::Field& F = field();
  char3_ = F.p() == 3;
  for (const Elem t : F.elements()) params_.push_back(Param::at(t));
  params_.push_back(Param::inf());
  for (const Param& t : params_) {
    points_.push_back(point(t));
    osc_planes_.push_back(osculating_plane(t));
  }
  if (char3_) {
    pencil_axis_ = space.line_through(space.point_from_ints({0, 1, 0, 0}), space.point_from_ints({0, 0, 1, 0}));
  }
}

Point TwistedCubic::point(Param t) const noexcept {
  const gf::Field& F = field();
  if (t.infinite) return Point{{F.one(), F.zero(), F.zero(), F.zero()}};
  std::array<Elem, 4> x{F.mul(F.sq(t.t), t.t), F.sq(t.t), t.t, F.one()};
  space_->normalize(x);
  return Point{x};
}

Plane TwistedCubic::osculating_plane(Param t) const noexcept {
  const gf::Field& F = field();
  if (t.infinite) return Plane{{F.zero(), F.zero(), F.zero(), F.one()}};
  const Elem three = F.from_int(3);
  const Elem t2 = F.sq(t.t);
  std::array<Elem, 4> c{F.one(), F.neg(F.mul(three, t.t)), F.mul(three, t2), F.neg(F.mul(t2, t.t))};
  return Plane{c};
}

bool TwistedCubic::on_cubic(const Point& pt) const noexcept {
  const gf::Field& F = field();
  const auto& x = pt.x;
  if (x[3].code == 0) return x[1].code == 0 && x[2].code == 0 && x[0].code != 0;
  const Elem s = F.inv(x[3]);
  const Elem t = F.mul(x[2], s);
  return F.mul(x[1], s) == F.sq(t) && F.mul(x[0], s) == F.mul(F.sq(t), t);
}

Line TwistedCubic::chord_vector(Elem a1, Elem a2) const {
  const gf::Field& F = field();
  return space_->line({F.sq(a2), F.mul(a1, a2), F.sub(F.sq(a1), a2), a2, F.neg(a1), F.one()});
}

Line TwistedCubic::axis_vector(Elem b1, Elem b2) const {
  const gf::Field& F = field();
  if (char3_) throw Error(ErrorCode::Char3Axis, "axis vector needs q not divisible by 3");
  const Elem three = F.from_int(3);
  return space_->line(
      {F.sq(b2), F.mul(b1, b2), F.mul(three, b2), F.div(F.sub(F.sq(b1), b2), three), F.neg(b1), F.one()});
}

Line TwistedCubic::tangent(Param t) const {
  const gf::Field& F = field();
  if (t.infinite) {
    return space_->line_through(space_->point_from_ints({1, 0, 0, 0}), space_->point_from_ints({0, 1, 0, 0}));
  }
  return chord_vector(F.add(t.t, t.t), F.sq(t.t));
}

Plane TwistedCubic::null_polarity_point(const Point& pt) const {
  const gf::Field& F = field();
  if (char3_) throw Error(ErrorCode::Char3Polarity, "null polarity needs q not divisible by 3");
  const Elem three = F.from_int(3);
  const auto& x = pt.x;
  return space_->plane({x[3], F.neg(F.mul(three, x[2])), F.mul(three, x[1]), F.neg(x[0])});
}

Line TwistedCubic::null_polarity_line(const Line& l) const {
  const pg3::LineBasis b = space_->basis(l);
  return space_->meet(null_polarity_point(Point{b.u}), null_polarity_point(Point{b.v}));
}

std::vector<Param> TwistedCubic::meeting_params(const Line& l) const {
  const auto [h1, h2] = space_->planes_through(l);
  std::vector<Param> out;
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (space_->plane_contains_point(h1, points_[k]) && space_->plane_contains_point(h2, points_[k])) {
      out.push_back(params_[k]);
    }
  }
  return out;
}

int TwistedCubic::osculating_planes_containing(const Line& l) const noexcept {
  const pg3::LineBasis b = space_->basis(l);
  int count = 0;
  for (const Plane& h : osc_planes_) {
    if (space_->dot(h.c, b.u).code == 0 && space_->dot(h.c, b.v).code == 0) ++count;
  }
  return count;
}

LineClass TwistedCubic::classify(const Line& l) const {
  const gf::Field& F = field();
  const std::vector<Param> meet = meeting_params(l);

  if (meet.size() >= 2) {
    LineClass c{LineClassTag::RealChord, std::nullopt};
    if (!meet[0].infinite && !meet[1].infinite) {
      c.witness = std::pair{F.add(meet[0].t, meet[1].t), F.mul(meet[0].t, meet[1].t)};
    }
    return c;
  }
  if (meet.size() == 1) {
    if (l == tangent(meet[0])) return {LineClassTag::Tangent, std::nullopt};
    return {osculating_planes_containing(l) > 0 ? LineClassTag::UnisecantOsc : LineClassTag::UnisecantNonOsc,
            std::nullopt};
  }

  // External line. Chords and axes built from two finite parameters have p23 != 0,
  // so the parametric forms can be solved for after scaling p23 to one.
  const auto& p = l.p;
  const bool finite_form = p[5].code != 0;
  Elem s{};
  if (finite_form) s = F.inv(p[5]);
  if (finite_form) {
    const Elem a1 = F.neg(F.mul(p[4], s));
    const Elem a2 = F.mul(p[3], s);
    if (chord_vector(a1, a2) == l && quadratic_root_count(F, a1, a2) == 0) {
      return {LineClassTag::ImaginaryChord, std::pair{a1, a2}};
    }
  }

  const int in_osc = osculating_planes_containing(l);
  if (char3_) {
    if (l == *pencil_axis_) return {LineClassTag::Char3PencilAxis, std::nullopt};
    return {in_osc > 0 ? LineClassTag::ExternalInOscPlane : LineClassTag::EnG, std::nullopt};
  }

  if (finite_form) {
    const Elem b1 = F.neg(F.mul(p[4], s));
    const Elem b2 = F.div(F.mul(p[2], s), F.from_int(3));
    if (axis_vector(b1, b2) == l) {
      switch (quadratic_root_count(F, b1, b2)) {
        case 2: return {LineClassTag::RealAxis, std::pair{b1, b2}};
        case 1: return {LineClassTag::Generator, std::pair{b1, b2}};
        default: return {LineClassTag::ImaginaryAxis, std::pair{b1, b2}};
      }
    }
  }
  // Axes through π_osc(∞) have no finite parametric form but lie in two osculating planes.
  if (in_osc >= 2) return {LineClassTag::RealAxis, std::nullopt};
  if (in_osc == 1) return {LineClassTag::ExternalInOscPlane, std::nullopt};
  return {LineClassTag::EnG, std::nullopt};
}

ClassCensus class_census(const TwistedCubic& cubic, unsigned workers) {
  const pg3::Space& space = cubic.space();
  const std::uint64_t total = space.line_count();
  workers = std::max(1u, workers);
  std::vector<std::array<std::uint64_t, kAllClasses.size()>> partial(workers);
  auto run = [&](unsigned w) {
    auto& counts = partial[w];
    counts.fill(0);
    const std::uint64_t lo = total * w / workers;
    const std::uint64_t hi = total * (w + 1) / workers;
    for (std::uint64_t k = lo; k < hi; ++k) {
      ++counts[static_cast<std::size_t>(cubic.classify(space.line_from_key(k)).tag)];
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  ClassCensus census;
  for (const LineClassTag tag : kAllClasses) {
    std::uint64_t sum = 0;
    for (const auto& counts : partial) sum += counts[static_cast<std::size_t>(tag)];
    census[tag] = sum;
  }
  return census;
}

std::uint64_t expected_eng_count(std::uint64_t q) noexcept { return (q * q - q) * (q * q - 1); }

}  // namespace twc::cubic
