#include "twc/group.hpp"

#include <set>
#include <sstream>

namespace twc::group {

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Trivial: return "Trivial";
    case GroupKind::C2: return "C2";
    case GroupKind::C3: return "C3";
    case GroupKind::C2xC2: return "C2xC2";
    case GroupKind::C4: return "C4";
    case GroupKind::A4: return "A4";
    case GroupKind::OrderCensus: return "OrderCensus";
  }
  return "?";
}

std::string to_string(const GroupId& id) {
  if (id.kind != GroupKind::OrderCensus) return to_string(id.kind);
  std::ostringstream os;
  os << "OrderCensus(order=" << id.order;
  for (const auto& [ord, count] : id.order_census) os << ", " << ord << ":" << count;
  os << ")";
  return os.str();
}

Gq::Gq(const pg3::Space& space) : space_(&space) {}

std::uint64_t Gq::order() const noexcept {
  const std::uint64_t q = field().q();
  return q * q * q - q;
}

GL2Rep Gq::canonical(GL2Rep r) const {
  const gf::Field& F = field();
  if (F.sub(F.mul(r.a, r.d), F.mul(r.b, r.c)).code == 0) throw Error(ErrorCode::Singular, "ad - bc = 0");
  std::array<Elem, 4> v{r.a, r.b, r.c, r.d};
  space_->normalize(v);
  return GL2Rep{v[0], v[1], v[2], v[3]};
}

GL2Rep Gq::gl2(long long a, long long b, long long c, long long d) const {
  const gf::Field& F = field();
  return canonical(GL2Rep{F.from_int(a), F.from_int(b), F.from_int(c), F.from_int(d)});
}

GL2Rep Gq::multiply(const GL2Rep& r, const GL2Rep& s) const {
  // [[a, c], [b, d]] matrices multiplied left to right.
  const gf::Field& F = field();
  auto mac = [&](Elem x, Elem y, Elem z, Elem w) { return F.add(F.mul(x, y), F.mul(z, w)); };
  return canonical(GL2Rep{mac(r.a, s.a, r.c, s.b), mac(r.b, s.a, r.d, s.b), mac(r.a, s.c, r.c, s.d),
                          mac(r.b, s.c, r.d, s.d)});
}

GL2Rep Gq::inverse(const GL2Rep& r) const {
  const gf::Field& F = field();
  return canonical(GL2Rep{r.d, F.neg(r.b), F.neg(r.c), r.a});
}

Mat4 Gq::lift_matrix(const GL2Rep& r) const noexcept {
  const gf::Field& F = field();
  const Elem a = r.a, b = r.b, c = r.c, d = r.d;
  const Elem two = F.from_int(2), three = F.from_int(3);
  auto m = [&](Elem x, Elem y) { return F.mul(x, y); };
  auto m3 = [&](Elem x, Elem y, Elem z) { return F.mul(F.mul(x, y), z); };
  const Elem a2 = F.sq(a), b2 = F.sq(b), c2 = F.sq(c), d2 = F.sq(d);
  Mat4 M;
  M[0] = {m(a2, a), m(a2, c), m(a, c2), m(c2, c)};
  M[1] = {m3(three, a2, b), F.add(m(a2, d), m3(two, m(a, b), c)), F.add(m(b, c2), m3(two, m(a, c), d)),
          m3(three, c2, d)};
  M[2] = {m3(three, a, b2), F.add(m(b2, c), m3(two, m(a, b), d)), F.add(m(a, d2), m3(two, m(b, c), d)),
          m3(three, c, d2)};
  M[3] = {m(b2, b), m(b2, d), m(b, d2), m(d2, d)};
  return M;
}

bool Gq::canonicalize(Mat4& m) const noexcept {
  const gf::Field& F = field();
  for (int i = 0; i < 16; ++i) {
    const Elem e = m[i / 4][i % 4];
    if (e.code == 0) continue;
    if (e.code != 1) {
      const Elem s = F.inv(e);
      for (int k = i; k < 16; ++k) m[k / 4][k % 4] = F.mul(m[k / 4][k % 4], s);
    }
    return true;
  }
  return false;
}

Projectivity Gq::lift(const GL2Rep& r) const {
  Projectivity g;
  g.source = canonical(r);
  g.mat = lift_matrix(g.source);
  canonicalize(g.mat);
  return g;
}

Projectivity Gq::identity() const { return lift(gl2(1, 0, 0, 1)); }

std::vector<Projectivity> Gq::enumerate() const {
  const gf::Field& F = field();
  const std::uint32_t q = F.q();
  std::vector<Projectivity> out;
  out.reserve(order());
  auto emit = [&](Elem a, Elem b, Elem c, Elem d) {
    if (F.sub(F.mul(a, d), F.mul(b, c)).code == 0) return;
    out.push_back(lift(GL2Rep{a, b, c, d}));
  };
  // First nonzero of (a, b, c, d) is one.
  for (std::uint32_t b = 0; b < q; ++b)
    for (std::uint32_t c = 0; c < q; ++c)
      for (std::uint32_t d = 0; d < q; ++d) emit(F.one(), Elem{b}, Elem{c}, Elem{d});
  for (std::uint32_t c = 0; c < q; ++c)
    for (std::uint32_t d = 0; d < q; ++d) emit(F.zero(), F.one(), Elem{c}, Elem{d});
  return out;
}

std::vector<Projectivity> Gq::generators() const {
  const gf::Field& F = field();
  return {lift(gl2(1, 1, 0, 1)), lift(GL2Rep{F.primitive(), F.zero(), F.zero(), F.one()}), lift(gl2(0, 1, 1, 0))};
}

std::array<Elem, 4> Gq::apply(const Mat4& m, const std::array<Elem, 4>& x) const noexcept {
  const gf::Field& F = field();
  std::array<Elem, 4> y{};
  for (int j = 0; j < 4; ++j) {
    Elem s{};
    for (int i = 0; i < 4; ++i) s = F.add(s, F.mul(x[i], m[i][j]));
    y[j] = s;
  }
  return y;
}

Point Gq::act_point(const Projectivity& g, const Point& pt) const { return space_->point(apply(g.mat, pt.x)); }

Line Gq::act_line(const Mat4& m, const Line& l) const noexcept {
  const pg3::LineBasis b = space_->basis(l);
  Line out;
  space_->span(apply(m, b.u), apply(m, b.v), out);
  return out;
}

Line Gq::act_line(const Projectivity& g, const Line& l) const { return act_line(g.mat, l); }

Mat4 Gq::mat_multiply(const Mat4& x, const Mat4& y) const noexcept {
  Mat4 out{};
  for (int i = 0; i < 4; ++i) out[i] = apply(y, x[i]);
  return out;
}

Projectivity Gq::compose(const Projectivity& g, const Projectivity& h) const {
  Projectivity out;
  out.source = multiply(g.source, h.source);
  out.mat = mat_multiply(g.mat, h.mat);
  canonicalize(out.mat);
  return out;
}

Projectivity Gq::inverse(const Projectivity& g) const { return lift(inverse(g.source)); }

bool Gq::is_identity(const Projectivity& g) const noexcept {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (g.mat[i][j].code != (i == j ? 1u : 0u)) return false;
    }
  return true;
}

int Gq::element_order(const Projectivity& g) const {
  Mat4 power = g.mat;
  int k = 1;
  for (;;) {
    Mat4 probe = power;
    canonicalize(probe);
    if (is_identity(Projectivity{{}, probe})) return k;
    power = mat_multiply(power, g.mat);
    ++k;
    if (static_cast<std::uint64_t>(k) > order()) throw Error(ErrorCode::BadArgument, "element order overflow");
  }
}

std::vector<Projectivity> Gq::stabilizer_of_line(const Line& l) const {
  std::vector<Projectivity> out;
  for (const Projectivity& g : enumerate()) {
    if (act_line(g.mat, l) == l) out.push_back(g);
  }
  return out;
}

std::vector<Projectivity> Gq::stabilizer_of_point(const Point& pt) const {
  std::vector<Projectivity> out;
  for (const Projectivity& g : enumerate()) {
    if (act_point(g, pt) == pt) out.push_back(g);
  }
  return out;
}

GroupId Gq::identify(const std::vector<Projectivity>& elems) const {
  const std::set<Mat4> members = [&] {
    std::set<Mat4> s;
    for (const auto& g : elems) s.insert(g.mat);
    return s;
  }();
  if (members.size() != elems.size()) throw Error(ErrorCode::NotClosed, "duplicate elements");
  for (const auto& g : elems) {
    for (const auto& h : elems) {
      Mat4 m = mat_multiply(g.mat, h.mat);
      canonicalize(m);
      if (!members.contains(m)) throw Error(ErrorCode::NotClosed, "product leaves the set");
    }
  }
  GroupId id;
  id.order = elems.size();
  for (const auto& g : elems) ++id.order_census[element_order(g)];
  const auto count = [&](int ord) {
    const auto it = id.order_census.find(ord);
    return it == id.order_census.end() ? 0 : it->second;
  };
  switch (id.order) {
    case 1: id.kind = GroupKind::Trivial; break;
    case 2: id.kind = GroupKind::C2; break;
    case 3: id.kind = GroupKind::C3; break;
    case 4: id.kind = count(2) == 3 ? GroupKind::C2xC2 : GroupKind::C4; break;
    case 12:
      id.kind = (count(1) == 1 && count(2) == 3 && count(3) == 8) ? GroupKind::A4 : GroupKind::OrderCensus;
      break;
    default: id.kind = GroupKind::OrderCensus; break;
  }
  return id;
}

std::string Gq::format(const Projectivity& g) const {
  std::ostringstream os;
  os << "(a,b,c,d)=(" << g.source.a.code << "," << g.source.b.code << "," << g.source.c.code << ","
     << g.source.d.code << ")";
  return os.str();
}

}  // namespace twc::group
