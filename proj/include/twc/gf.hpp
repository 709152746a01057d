#pragma once

// Exact arithmetic over GF(q), q = p^n, via discrete exp/log and Zech tables.
//
// An element is identified by its code: the base-p integer whose digits are the
// coefficients of the element as a polynomial in the root x of the field modulus
// (code = c0 + c1*p + ... + c_{n-1}*p^{n-1}). Consequently code 0 is zero, code 1
// is one, and in a prime field the code is the residue itself.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "twc/error.hpp"

namespace twc::gf {

struct Elem {
  std::uint32_t code = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

inline constexpr std::uint32_t kDefaultMaxOrder = 1u << 14;

struct FieldOptions {
  std::uint32_t max_order = kDefaultMaxOrder;
  /// Which monic irreducible modulus to use, counted in increasing code order.
  std::uint32_t modulus_rank = 0;
  /// Which primitive element to use, counted in increasing code order.
  std::uint32_t primitive_rank = 0;
};

struct ResidueFacts {
  int xi = 0;  // q mod 3 mapped to {-1, 0, 1}
  int q_mod_4 = 0;
  int q_mod_12 = 0;
  /// Only meaningful in odd characteristic: -3 is a nonzero square.
  bool minus3_is_square = false;
  bool minus1_is_square = false;
};

class Field {
 public:
  explicit Field(std::uint32_t q, FieldOptions options = {});

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return q_; }
  bool even() const noexcept { return p_ == 2; }
  int xi() const noexcept { return static_cast<int>(q_ % 3) == 2 ? -1 : static_cast<int>(q_ % 3); }

  /// Coefficients c0..cn of the monic modulus (size n + 1).
  std::span<const std::uint32_t> modulus() const noexcept { return modulus_; }
  Elem primitive() const noexcept { return Elem{exp_[1]}; }

  static constexpr Elem zero() noexcept { return Elem{0}; }
  static constexpr Elem one() noexcept { return Elem{1}; }

  /// Integer n as an element of the prime subfield.
  Elem from_int(long long value) const noexcept;
  Elem from_code(std::uint32_t code) const;

  Elem add(Elem x, Elem y) const noexcept {
    if (x.code == 0) return y;
    if (y.code == 0) return x;
    const std::uint32_t lx = log_[x.code];
    std::uint32_t d = log_[y.code] + order_ - lx;
    if (d >= order_) d -= order_;
    const std::uint32_t z = zech_[d];
    if (z == kNoLog) return zero();
    return Elem{exp_[lx + z]};
  }
  Elem neg(Elem x) const noexcept { return Elem{neg_[x.code]}; }
  Elem sub(Elem x, Elem y) const noexcept { return add(x, neg(y)); }
  Elem mul(Elem x, Elem y) const noexcept {
    if (x.code == 0 || y.code == 0) return zero();
    return Elem{exp_[log_[x.code] + log_[y.code]]};
  }
  Elem sq(Elem x) const noexcept { return mul(x, x); }
  /// Throws DivisionByZero for x = 0.
  Elem inv(Elem x) const;
  Elem div(Elem x, Elem y) const;
  /// Negative exponents are allowed for x != 0; 0^0 = 1.
  Elem pow(Elem x, long long k) const;

  /// Discrete logarithm to the base primitive(); x must be nonzero.
  std::uint32_t log(Elem x) const;
  Elem exp(long long k) const noexcept;

  bool is_square(Elem x) const noexcept;
  bool is_cube(Elem x) const noexcept;
  bool is_kth_power(Elem x, std::uint32_t k) const noexcept;

  /// All y with y^k = x, in increasing code order.
  std::vector<Elem> kth_roots(Elem x, std::uint32_t k) const;
  std::vector<Elem> square_roots(Elem x) const { return kth_roots(x, 2); }
  std::vector<Elem> cube_roots(Elem x) const { return kth_roots(x, 3); }
  std::vector<Elem> fourth_roots(Elem x) const { return kth_roots(x, 4); }

  ResidueFacts residue_facts() const;

  /// 0 followed by the powers primitive()^0, primitive()^1, ..., primitive()^(q-2).
  std::vector<Elem> elements() const;
  /// The nonzero elements in power order.
  std::vector<Elem> units() const;

 private:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  std::uint32_t p_ = 0;
  std::uint32_t n_ = 0;
  std::uint32_t q_ = 0;
  std::uint32_t order_ = 0;  // q - 1
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;   // length 2(q-1); exp_[k] = code of g^k
  std::vector<std::uint32_t> log_;   // log_[code]; log_[0] unused
  std::vector<std::uint32_t> zech_;  // zech_[k] = log(1 + g^k) or kNoLog
  std::vector<std::uint32_t> neg_;
};

/// Decompose q as p^n; returns {0, 0} if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) noexcept;
bool is_prime_power(std::uint64_t q) noexcept;

}  // namespace twc::gf
