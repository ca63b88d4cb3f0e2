#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ffbasis/errors.hpp"

namespace ffbasis {

/// Element of F_q, stored as its table index: the base-p digits of the index
/// are the coordinates in the polynomial basis 1, u, u^2, ... of the modulus.
struct Elem {
  std::uint8_t v = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
};

/// q^n with overflow detection; throws ResourceError past `limit`.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp,
                                 std::uint64_t limit = std::numeric_limits<std::uint64_t>::max()) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base) {
      throw ResourceError(std::to_string(base) + "^" + std::to_string(exp) + " exceeds budget " +
                              std::to_string(limit),
                          std::numeric_limits<std::uint64_t>::max());
    }
    r *= base;
  }
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// C(a, b) mod p by Lucas' theorem: the product of digitwise binomials in
/// base p, zero as soon as a digit of b exceeds the digit of a.
inline unsigned lucas_binom(std::uint64_t a, std::uint64_t b, unsigned p) {
  if (b > a) return 0;
  std::uint64_t r = 1;
  while (b > 0 || a > 0) {
    const unsigned ai = static_cast<unsigned>(a % p);
    const unsigned bi = static_cast<unsigned>(b % p);
    if (bi > ai) return 0;
    // C(ai, bi) mod p with ai < p: numerator and denominator are units.
    std::uint64_t num = 1, den = 1;
    for (unsigned k = 0; k < bi; ++k) {
      num = num * (ai - k) % p;
      den = den * (k + 1) % p;
    }
    std::uint64_t inv = 1, base = den, e = p - 2;
    while (e > 0) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    r = r * (num * inv % p) % p;
    a /= p;
    b /= p;
  }
  return static_cast<unsigned>(r % p);
}

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The coefficient field F_q, q = p^e <= 256, with full addition,
/// multiplication, negation and inverse tables.
class Field {
 public:
  static constexpr unsigned kMaxOrder = 256;

  /// `modulus` lists the coefficients (low to high) of a monic degree-e
  /// polynomial over F_p; empty selects the library default. Ignored for e = 1.
  static FieldPtr make(unsigned p, unsigned e = 1, std::vector<unsigned> modulus = {}) {
    return FieldPtr(new Field(p, e, std::move(modulus)));
  }

  /// Field of order q, with q factored as p^e.
  static FieldPtr of_order(unsigned q, std::vector<unsigned> modulus = {}) {
    if (q < 2) throw DomainError("field order must be at least 2");
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned e = 0;
    unsigned r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) throw DomainError("field order " + std::to_string(q) + " is not a prime power");
    return make(p, e, std::move(modulus));
  }

  /// Conway polynomial for the shipped orders, else the first irreducible
  /// monic polynomial in lexicographic order (constant term fastest).
  static std::vector<unsigned> default_modulus(unsigned p, unsigned e) {
    const unsigned q = static_cast<unsigned>(checked_pow(p, e));
    switch (q) {
      case 4: return {1, 1, 1};
      case 8: return {1, 1, 0, 1};
      case 9: return {2, 2, 1};
      case 16: return {1, 1, 0, 0, 1};
      case 25: return {2, 4, 1};
      case 27: return {1, 2, 0, 1};
      default: break;
    }
    std::vector<unsigned> m(e + 1, 0);
    m[e] = 1;
    const std::uint64_t count = checked_pow(p, e);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t t = idx;
      for (unsigned i = 0; i < e; ++i) {
        m[i] = static_cast<unsigned>(t % p);
        t /= p;
      }
      if (is_irreducible(m, p)) return m;
    }
    throw ConsistencyError("no irreducible polynomial found");
  }

  /// Exhaustive trial division by every monic polynomial of degree <= e/2.
  static bool is_irreducible(std::span<const unsigned> m, unsigned p) {
    const std::size_t e = m.size() - 1;
    if (e == 0) return false;
    for (std::size_t d = 1; d <= e / 2; ++d) {
      const std::uint64_t count = checked_pow(p, d);
      std::vector<unsigned> div(d + 1, 0);
      div[d] = 1;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t t = idx;
        for (std::size_t i = 0; i < d; ++i) {
          div[i] = static_cast<unsigned>(t % p);
          t /= p;
        }
        std::vector<unsigned> rem(m.begin(), m.end());
        for (std::size_t top = e; top >= d; --top) {
          const unsigned c = rem[top];
          if (c != 0)
            for (std::size_t i = 0; i <= d; ++i)
              rem[top - d + i] = (rem[top - d + i] + p * p - c * div[i]) % p;
          if (top == d) break;
        }
        bool zero = true;
        for (std::size_t i = 0; i < d; ++i) zero = zero && rem[i] == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  unsigned p() const noexcept { return p_; }
  unsigned e() const noexcept { return e_; }
  unsigned q() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return e_ == 1; }
  /// Monic modulus coefficients, low to high; empty for prime fields.
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return Elem{0}; }
  Elem one() const noexcept { return Elem{1}; }

  Elem element(unsigned index) const {
    if (index >= q_) throw DomainError("element index " + std::to_string(index) + " >= q");
    return Elem{static_cast<std::uint8_t>(index)};
  }

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Elem{static_cast<std::uint8_t>(r)};
  }

  std::vector<unsigned> digits(Elem a) const {
    std::vector<unsigned> d(e_);
    unsigned v = a.v;
    for (unsigned i = 0; i < e_; ++i) {
      d[i] = v % p_;
      v /= p_;
    }
    return d;
  }

  Elem add(Elem a, Elem b) const noexcept { return Elem{add_[a.v * q_ + b.v]}; }
  Elem neg(Elem a) const noexcept { return Elem{neg_[a.v]}; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept { return Elem{mul_[a.v * q_ + b.v]}; }

  Elem inv(Elem a) const {
    if (a.v == 0) throw DomainError("inverse of zero in F_q");
    return Elem{inv_[a.v]};
  }

  Elem pow(Elem a, std::uint64_t k) const noexcept {
    Elem r = one();
    Elem b = a;
    while (k > 0) {
      if (k & 1) r = mul(r, b);
      b = mul(b, b);
      k >>= 1;
    }
    return r;
  }

  /// (-1)^k as a field element.
  Elem sign(std::uint64_t k) const noexcept { return (k % 2 == 0) ? one() : neg(one()); }

  /// C(a, b) reduced into the prime subfield.
  Elem binom(std::uint64_t a, std::uint64_t b) const {
    return Elem{static_cast<std::uint8_t>(lucas_binom(a, b, p_))};
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.modulus_ == b.modulus_;
  }

 private:
  Field(unsigned p, unsigned e, std::vector<unsigned> modulus) : p_(p), e_(e) {
    if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
    if (e < 1) throw DomainError("extension degree must be >= 1");
    const std::uint64_t q = checked_pow(p, e, kMaxOrder);
    q_ = static_cast<unsigned>(q);
    if (e > 1) {
      if (modulus.empty()) modulus = default_modulus(p, e);
      if (modulus.size() != e + 1 || modulus[e] != 1)
        throw DomainError("modulus must be monic of degree " + std::to_string(e));
      for (unsigned c : modulus)
        if (c >= p) throw DomainError("modulus coefficient out of range");
      if (!is_irreducible(modulus, p)) throw DomainError("modulus is reducible over F_p");
      modulus_ = std::move(modulus);
    }
    build_tables();
  }

  void build_tables() {
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    std::vector<std::vector<unsigned>> dig(q_);
    for (unsigned a = 0; a < q_; ++a) dig[a] = digits(Elem{static_cast<std::uint8_t>(a)});
    auto pack = [&](const std::vector<unsigned>& d) {
      unsigned v = 0;
      for (unsigned i = e_; i-- > 0;) v = v * p_ + d[i];
      return static_cast<std::uint8_t>(v);
    };
    for (unsigned a = 0; a < q_; ++a) {
      std::vector<unsigned> n(e_);
      for (unsigned i = 0; i < e_; ++i) n[i] = (p_ - dig[a][i]) % p_;
      neg_[a] = pack(n);
      for (unsigned b = 0; b < q_; ++b) {
        std::vector<unsigned> s(e_);
        for (unsigned i = 0; i < e_; ++i) s[i] = (dig[a][i] + dig[b][i]) % p_;
        add_[a * q_ + b] = pack(s);
        // Schoolbook product, then reduce by the monic modulus.
        std::vector<unsigned> prod(2 * e_ - 1, 0);
        for (unsigned i = 0; i < e_; ++i)
          for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + dig[a][i] * dig[b][j]) % p_;
        for (std::size_t top = prod.size(); top-- > e_;) {
          const unsigned c = prod[top];
          if (c == 0) continue;
          for (unsigned i = 0; i <= e_; ++i)
            prod[top - e_ + i] = (prod[top - e_ + i] + p_ * p_ - c * modulus_at(i)) % p_;
        }
        prod.resize(e_);
        mul_[a * q_ + b] = pack(prod);
      }
    }
    for (unsigned a = 1; a < q_; ++a)
      for (unsigned b = 1; b < q_; ++b)
        if (mul_[a * q_ + b] == 1) {
          inv_[a] = static_cast<std::uint8_t>(b);
          break;
        }
  }

  unsigned modulus_at(unsigned i) const { return e_ == 1 ? (i == 1 ? 1u : 0u) : modulus_[i]; }

  unsigned p_;
  unsigned e_;
  unsigned q_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

}  // namespace ffbasis
