#include "twc/pg3.hpp"

#include <algorithm>
#include <sstream>

namespace twc::pg3 {

namespace {

// Pivot pairs in lexicographic order; the line key space is laid out in this order.
constexpr std::array<std::pair<int, int>, 6> kPivots{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

int pivot_index(int i, int j) {
  for (int k = 0; k < 6; ++k) {
    if (kPivots[k].first == i && kPivots[k].second == j) return k;
  }
  return -1;
}

// Free (non-pivot) coordinates of the row-reduced basis for a pivot pair.
struct FreeSlots {
  std::array<int, 2> u{};
  int nu = 0;
  std::array<int, 2> v{};
  int nv = 0;
};

FreeSlots free_slots(int i, int j) {
  FreeSlots s;
  for (int k = i + 1; k < 4; ++k) {
    if (k != j) s.u[s.nu++] = k;
  }
  for (int k = j + 1; k < 4; ++k) s.v[s.nv++] = k;
  return s;
}

template <std::size_t N>
std::string join(const std::array<Elem, N>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < N; ++i) os << (i ? "," : "") << v[i].code;
  os << ')';
  return os.str();
}

}  // namespace

Space::Space(gf::Field field) : field_(std::move(field)) {
  const std::uint64_t q = field_.q();
  std::uint64_t acc = 0;
  for (int k = 0; k < 6; ++k) {
    offsets_[k] = acc;
    const FreeSlots s = free_slots(kPivots[k].first, kPivots[k].second);
    std::uint64_t size = 1;
    for (int f = 0; f < s.nu + s.nv; ++f) size *= q;
    acc += size;
  }
  offsets_[6] = acc;
  line_count_ = acc;
}

Point Space::point(std::array<Elem, 4> x) const {
  if (!normalize(x)) throw Error(ErrorCode::ZeroVector, "point with all-zero coordinates");
  return Point{x};
}

Plane Space::plane(std::array<Elem, 4> c) const {
  if (!normalize(c)) throw Error(ErrorCode::ZeroVector, "plane with all-zero coordinates");
  return Plane{c};
}

Point Space::point_from_ints(std::array<long long, 4> x) const {
  std::array<Elem, 4> e;
  for (int i = 0; i < 4; ++i) e[i] = field_.from_int(x[i]);
  return point(e);
}

Plane Space::plane_from_ints(std::array<long long, 4> c) const {
  std::array<Elem, 4> e;
  for (int i = 0; i < 4; ++i) e[i] = field_.from_int(c[i]);
  return plane(e);
}

Line Space::line(std::array<Elem, 6> p) const {
  if (!normalize(p)) throw Error(ErrorCode::ZeroVector, "line with all-zero coordinates");
  Line l{p};
  if (!satisfies_quadric(l)) throw Error(ErrorCode::NotALine, format(l) + " violates the Plücker relation");
  return l;
}

bool Space::span(const std::array<Elem, 4>& x, const std::array<Elem, 4>& y, Line& out) const noexcept {
  const gf::Field& F = field_;
  auto m = [&](int i, int j) { return F.sub(F.mul(x[i], y[j]), F.mul(x[j], y[i])); };
  out.p = {m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(3, 1), m(2, 3)};
  return normalize(out.p);
}

Line Space::line_through(const Point& a, const Point& b) const {
  Line l;
  if (!span(a.x, b.x, l)) throw Error(ErrorCode::IdenticalPoints, format(a) + " twice");
  return l;
}

Line Space::meet(const Plane& a, const Plane& b) const {
  Line dual;
  if (!span(a.c, b.c, dual)) throw Error(ErrorCode::BadArgument, "meet of identical planes " + format(a));
  std::array<Elem, 6> p = dual.p;
  std::reverse(p.begin(), p.end());
  normalize(p);
  return Line{p};
}

bool Space::satisfies_quadric(const Line& l) const noexcept {
  const gf::Field& F = field_;
  const auto& p = l.p;
  const Elem s = F.add(F.add(F.mul(p[0], p[5]), F.mul(p[1], p[4])), F.mul(p[2], p[3]));
  return s.code == 0;
}

namespace {

LineBasis basis_of(const gf::Field& F, const std::array<Elem, 6>& p) {
  // Full antisymmetric matrix P(k, l) from the tuple; P(1,3) = -p31.
  std::array<std::array<Elem, 4>, 4> P{};
  auto set = [&](int k, int l, Elem e) {
    P[k][l] = e;
    P[l][k] = F.neg(e);
  };
  set(0, 1, p[0]);
  set(0, 2, p[1]);
  set(0, 3, p[2]);
  set(1, 2, p[3]);
  set(1, 3, F.neg(p[4]));
  set(2, 3, p[5]);
  LineBasis b;
  for (const auto& [i, j] : kPivots) {
    if (P[i][j].code == 0) continue;
    const Elem s = F.inv(P[i][j]);
    b.i = i;
    b.j = j;
    for (int k = 0; k < 4; ++k) {
      b.u[k] = F.mul(P[k][j], s);
      b.v[k] = F.mul(P[i][k], s);
    }
    return b;
  }
  return b;
}

}  // namespace

LineBasis Space::basis(const Line& l) const noexcept { return basis_of(field_, l.p); }

std::pair<Plane, Plane> Space::planes_through(const Line& l) const noexcept {
  std::array<Elem, 6> dual = l.p;
  std::reverse(dual.begin(), dual.end());
  const LineBasis b = basis_of(field_, dual);
  return {Plane{b.u}, Plane{b.v}};
}

std::vector<Point> Space::points_on_line(const Line& l) const {
  if (!satisfies_quadric(l)) throw Error(ErrorCode::NotALine, format(l) + " violates the Plücker relation");
  const LineBasis b = basis(l);
  std::vector<Point> pts;
  pts.reserve(q() + 1);
  for (const Elem lambda : field_.elements()) {
    Point pt;
    for (int k = 0; k < 4; ++k) pt.x[k] = field_.add(b.u[k], field_.mul(lambda, b.v[k]));
    pts.push_back(pt);
  }
  pts.push_back(Point{b.v});
  return pts;
}

Elem Space::dot(const std::array<Elem, 4>& a, const std::array<Elem, 4>& b) const noexcept {
  const gf::Field& F = field_;
  return F.add(F.add(F.mul(a[0], b[0]), F.mul(a[1], b[1])), F.add(F.mul(a[2], b[2]), F.mul(a[3], b[3])));
}

bool Space::line_in_plane(const Line& l, const Plane& h) const noexcept {
  const LineBasis b = basis(l);
  return dot(h.c, b.u).code == 0 && dot(h.c, b.v).code == 0;
}

bool Space::point_on_line(const Point& pt, const Line& l) const noexcept {
  const auto [h1, h2] = planes_through(l);
  return plane_contains_point(h1, pt) && plane_contains_point(h2, pt);
}

LineKey Space::key(const Line& l) const noexcept { return key(basis(l)); }

LineKey Space::key(const LineBasis& b) const noexcept {
  const FreeSlots s = free_slots(b.i, b.j);
  const std::uint64_t q = field_.q();
  std::uint64_t k = 0;
  for (int f = 0; f < s.nu; ++f) k = k * q + b.u[s.u[f]].code;
  for (int f = 0; f < s.nv; ++f) k = k * q + b.v[s.v[f]].code;
  return offsets_[pivot_index(b.i, b.j)] + k;
}

LineKey Space::key_of_span(const std::array<Elem, 4>& x, const std::array<Elem, 4>& y) const noexcept {
  const gf::Field& F = field_;
  auto m = [&](int i, int j) { return F.sub(F.mul(x[i], y[j]), F.mul(x[j], y[i])); };
  return key(basis_of(F, {m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(3, 1), m(2, 3)}));
}

LineBasis Space::basis_from_key(LineKey key) const {
  if (key >= line_count_) throw Error(ErrorCode::BadArgument, "line key " + std::to_string(key) + " out of range");
  int type = 5;
  while (offsets_[type] > key) --type;
  std::uint64_t rest = key - offsets_[type];
  const auto [i, j] = kPivots[type];
  const FreeSlots s = free_slots(i, j);
  const std::uint64_t q = field_.q();
  LineBasis b;
  b.i = i;
  b.j = j;
  b.u[i] = gf::Field::one();
  b.v[j] = gf::Field::one();
  for (int f = s.nv; f-- > 0;) {
    b.v[s.v[f]] = Elem{static_cast<std::uint32_t>(rest % q)};
    rest /= q;
  }
  for (int f = s.nu; f-- > 0;) {
    b.u[s.u[f]] = Elem{static_cast<std::uint32_t>(rest % q)};
    rest /= q;
  }
  return b;
}

Line Space::line_from_key(LineKey key) const {
  const LineBasis b = basis_from_key(key);
  Line l;
  span(b.u, b.v, l);
  return l;
}

std::string Space::format(const Point& pt) const { return "P" + join(pt.x); }
std::string Space::format(const Plane& h) const { return "pi" + join(h.c); }
std::string Space::format(const Line& l) const { return "L" + join(l.p); }

}  // namespace twc::pg3
