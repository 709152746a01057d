#include "twc/gf.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace twc {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::IdenticalPoints: return "IdenticalPoints";
    case ErrorCode::NotALine: return "NotALine";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::Char3Axis: return "Char3Axis";
    case ErrorCode::Char3Polarity: return "Char3Polarity";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::GuardrailExceeded: return "GuardrailExceeded";
    case ErrorCode::Char3NotApplicable: return "Char3NotApplicable";
    case ErrorCode::BadMu: return "BadMu";
    case ErrorCode::NotEnG: return "NotEnG";
    case ErrorCode::NotChar3: return "NotChar3";
    case ErrorCode::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

}  // namespace twc

namespace twc::gf {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients, low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1;
  std::uint64_t base = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) r = static_cast<std::uint32_t>(r * base % p);
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

// Remainder of a modulo b over GF(p); b must be nonzero.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod_p(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint32_t f = static_cast<std::uint32_t>(std::uint64_t(a.back()) * lead_inv % p);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t t = std::uint64_t(f) * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - t) % p);
    }
    trim(a);
  }
  return a;
}

Poly digits(std::uint32_t code, std::uint32_t p, std::uint32_t len) {
  Poly d(len, 0);
  for (std::uint32_t i = 0; i < len; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

std::uint32_t undigits(const Poly& d, std::uint32_t p, std::uint32_t len) {
  std::uint32_t code = 0;
  for (std::uint32_t i = len; i-- > 0;) code = code * p + (i < d.size() ? d[i] : 0);
  return code;
}

Poly monic_from_code(std::uint32_t code, std::uint32_t p, std::uint32_t degree) {
  Poly m = digits(code, p, degree);
  m.push_back(1);
  return m;
}

bool is_irreducible(const Poly& m, std::uint32_t p) {
  const std::uint32_t degree = static_cast<std::uint32_t>(m.size() - 1);
  for (std::uint32_t d = 1; 2 * d <= degree; ++d) {
    std::uint32_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint32_t c = 0; c < count; ++c) {
      if (poly_mod(m, monic_from_code(c, p, d), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) noexcept {
  if (q < 2) return {0, 0};
  std::uint64_t p = 0;
  for (std::uint64_t f = 2; f * f <= q; ++f) {
    if (q % f == 0) {
      p = f;
      break;
    }
  }
  if (p == 0) return {static_cast<std::uint32_t>(q), 1};
  std::uint32_t n = 0;
  while (q % p == 0) {
    q /= p;
    ++n;
  }
  if (q != 1) return {0, 0};
  return {static_cast<std::uint32_t>(p), n};
}

bool is_prime_power(std::uint64_t q) noexcept { return prime_power(q).first != 0; }

Field::Field(std::uint32_t q, FieldOptions options) {
  const auto [p, n] = prime_power(q);
  if (p == 0) throw Error(ErrorCode::NotPrimePower, "q = " + std::to_string(q) + " is not a prime power");
  if (q < 4) throw Error(ErrorCode::BadArgument, "field order must be at least 4, got " + std::to_string(q));
  if (q > options.max_order) {
    throw Error(ErrorCode::TooLarge, "q = " + std::to_string(q) + " exceeds " + std::to_string(options.max_order));
  }
  p_ = p;
  n_ = n;
  q_ = q;
  order_ = q - 1;

  // Monic irreducible modulus of degree n, ranked by code of its lower coefficients.
  {
    std::uint32_t seen = 0;
    bool found = false;
    for (std::uint32_t c = 0; c < q; ++c) {
      Poly m = monic_from_code(c, p, n);
      if (!is_irreducible(m, p)) continue;
      if (seen++ == options.modulus_rank) {
        modulus_ = std::move(m);
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorCode::BadArgument, "modulus_rank out of range");
  }

  auto mulmod = [&](std::uint32_t a, std::uint32_t b) {
    const Poly da = digits(a, p, n);
    const Poly db = digits(b, p, n);
    Poly prod(2 * n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j) {
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(da[i]) * db[j]) % p);
      }
    }
    return undigits(poly_mod(std::move(prod), modulus_, p), p, n);
  };

  std::uint32_t generator = 0;
  {
    std::uint32_t seen = 0;
    for (std::uint32_t c = 2; c < q && generator == 0; ++c) {
      std::uint32_t x = c;
      std::uint32_t ord = 1;
      while (x != 1) {
        x = mulmod(x, c);
        ++ord;
        if (ord > order_) break;
      }
      if (ord == order_ && seen++ == options.primitive_rank) generator = c;
    }
    if (generator == 0) throw Error(ErrorCode::BadArgument, "primitive_rank out of range");
  }

  exp_.assign(2 * static_cast<std::size_t>(order_), 0);
  log_.assign(q, kNoLog);
  std::uint32_t x = 1;
  for (std::uint32_t k = 0; k < order_; ++k) {
    exp_[k] = x;
    exp_[k + order_] = x;
    log_[x] = k;
    x = mulmod(x, generator);
  }

  auto digit_add = [&](std::uint32_t a, std::uint32_t b) {
    std::uint32_t r = 0;
    std::uint32_t scale = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      r += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return r;
  };

  neg_.assign(q, 0);
  for (std::uint32_t c = 0; c < q; ++c) {
    std::uint32_t r = 0;
    std::uint32_t scale = 1;
    std::uint32_t a = c;
    for (std::uint32_t i = 0; i < n; ++i) {
      r += ((p - a % p) % p) * scale;
      a /= p;
      scale *= p;
    }
    neg_[c] = r;
  }

  zech_.assign(order_, kNoLog);
  for (std::uint32_t k = 0; k < order_; ++k) {
    const std::uint32_t s = digit_add(1, exp_[k]);
    zech_[k] = s == 0 ? kNoLog : log_[s];
  }
}

Elem Field::from_int(long long value) const noexcept {
  long long r = value % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::from_code(std::uint32_t code) const {
  if (code >= q_) throw Error(ErrorCode::BadArgument, "element code " + std::to_string(code) + " out of range");
  return Elem{code};
}

Elem Field::inv(Elem x) const {
  if (x.code == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const std::uint32_t l = log_[x.code];
  return Elem{exp_[l == 0 ? 0 : order_ - l]};
}

Elem Field::div(Elem x, Elem y) const { return mul(x, inv(y)); }

Elem Field::pow(Elem x, long long k) const {
  if (x.code == 0) {
    if (k == 0) return one();
    if (k < 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    return zero();
  }
  return exp(static_cast<long long>(log_[x.code]) * (k % static_cast<long long>(order_)));
}

std::uint32_t Field::log(Elem x) const {
  if (x.code == 0) throw Error(ErrorCode::DivisionByZero, "logarithm of zero");
  return log_[x.code];
}

Elem Field::exp(long long k) const noexcept {
  long long r = k % static_cast<long long>(order_);
  if (r < 0) r += order_;
  return Elem{exp_[static_cast<std::size_t>(r)]};
}

bool Field::is_kth_power(Elem x, std::uint32_t k) const noexcept {
  if (x.code == 0) return true;
  return log_[x.code] % std::gcd(k, order_) == 0;
}

bool Field::is_square(Elem x) const noexcept { return is_kth_power(x, 2); }
bool Field::is_cube(Elem x) const noexcept { return is_kth_power(x, 3); }

std::vector<Elem> Field::kth_roots(Elem x, std::uint32_t k) const {
  if (k == 0) throw Error(ErrorCode::BadArgument, "0th root");
  if (x.code == 0) return {zero()};
  const std::uint32_t l = log_[x.code];
  const std::uint32_t g = std::gcd(k, order_);
  if (l % g != 0) return {};
  // Solve (k/g) y = l/g (mod m), m = (q-1)/g; the g roots differ by multiples of m.
  const std::uint64_t m = order_ / g;
  std::uint64_t y0 = 0;
  if (m > 1) {
    const std::uint64_t kk = (k / g) % m;
    std::uint64_t kinv = 1;
    for (std::uint64_t t = 1; t < m; ++t) {
      if (kk * t % m == 1) {
        kinv = t;
        break;
      }
    }
    y0 = (l / g) % m * kinv % m;
  }
  std::vector<Elem> roots;
  roots.reserve(g);
  for (std::uint32_t j = 0; j < g; ++j) roots.push_back(Elem{exp_[y0 + j * m]});
  std::sort(roots.begin(), roots.end());
  return roots;
}

ResidueFacts Field::residue_facts() const {
  ResidueFacts r;
  r.xi = xi();
  r.q_mod_4 = static_cast<int>(q_ % 4);
  r.q_mod_12 = static_cast<int>(q_ % 12);
  const Elem minus3 = from_int(-3);
  r.minus3_is_square = p_ != 2 && minus3.code != 0 && is_square(minus3);
  r.minus1_is_square = is_square(from_int(-1));
  return r;
}

std::vector<Elem> Field::elements() const {
  std::vector<Elem> out;
  out.reserve(q_);
  out.push_back(zero());
  for (std::uint32_t k = 0; k < order_; ++k) out.push_back(Elem{exp_[k]});
  return out;
}

std::vector<Elem> Field::units() const {
  std::vector<Elem> out;
  out.reserve(order_);
  for (std::uint32_t k = 0; k < order_; ++k) out.push_back(Elem{exp_[k]});
  return out;
}

}  // namespace twc::gf
