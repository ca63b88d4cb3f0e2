#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ffbasis/errors.hpp"
#include "ffbasis/field.hpp"

namespace ffbasis {

/// Largest polynomial degree any operation will materialize.
inline constexpr std::int64_t kMaxDegree = std::int64_t{1} << 24;

/// Dense element of F_q[T]; coefficient i multiplies T^i. The coefficient
/// store is normalized: empty, or its last entry is nonzero.
class Poly {
 public:
  static constexpr std::int64_t kZeroDegree = -1;

  explicit Poly(FieldPtr F) : F_(std::move(F)) {}
  Poly(FieldPtr F, std::vector<Elem> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) { normalize(); }

  static Poly constant(const FieldPtr& F, Elem c) { return Poly(F, {c}); }
  static Poly one(const FieldPtr& F) { return constant(F, F->one()); }

  static Poly monomial(const FieldPtr& F, std::int64_t k, Elem c) {
    if (k < 0) throw DomainError("negative exponent in F_q[T]");
    check_degree(k);
    std::vector<Elem> v(static_cast<std::size_t>(k) + 1, F->zero());
    v.back() = c;
    return Poly(F, std::move(v));
  }
  static Poly monomial(const FieldPtr& F, std::int64_t k) { return monomial(F, k, F->one()); }
  static Poly T(const FieldPtr& F) { return monomial(F, 1); }

  const FieldPtr& field_ptr() const noexcept { return F_; }
  const Field& field() const noexcept { return *F_; }

  /// kZeroDegree for the zero polynomial.
  std::int64_t degree() const noexcept { return static_cast<std::int64_t>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }

  Elem coeff(std::int64_t i) const noexcept {
    return (i < 0 || i >= static_cast<std::int64_t>(c_.size())) ? F_->zero() : c_[static_cast<std::size_t>(i)];
  }
  Elem lead() const noexcept { return c_.empty() ? F_->zero() : c_.back(); }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == F_->one(); }

  /// Exponent of the lowest nonzero term; kZeroDegree for zero.
  std::int64_t valuation() const noexcept {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == F_->zero())) return static_cast<std::int64_t>(i);
    return kZeroDegree;
  }

  Poly& operator+=(const Poly& o) {
    const Field& F = *F_;
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = F.add(c_[i], o.c_[i]);
    normalize();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    const Field& F = *F_;
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = F.sub(c_[i], o.c_[i]);
    normalize();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const { return scaled(F_->neg(F_->one())); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.F_);
    check_degree(a.degree() + b.degree());
    const Field& F = *a.F_;
    std::vector<Elem> r(a.c_.size() + b.c_.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      const Elem ai = a.c_[i];
      if (ai.v == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(ai, b.c_[j]));
    }
    return Poly(a.F_, std::move(r));
  }

  Poly scaled(Elem s) const {
    std::vector<Elem> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = F_->mul(c_[i], s);
    return Poly(F_, std::move(r));
  }

  /// Multiplication by T^k, k >= 0.
  Poly shifted(std::int64_t k) const {
    if (k < 0) throw DomainError("negative shift in F_q[T]");
    if (is_zero()) return *this;
    check_degree(degree() + k);
    std::vector<Elem> r(static_cast<std::size_t>(k), F_->zero());
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(F_, std::move(r));
  }

  /// Reduction mod T^n.
  Poly truncated(std::int64_t n) const {
    if (n >= static_cast<std::int64_t>(c_.size())) return *this;
    return Poly(F_, std::vector<Elem>(c_.begin(), c_.begin() + std::max<std::int64_t>(n, 0)));
  }

  /// The q^m-th power: coefficients lie in F_q so only exponents scale.
  Poly frobenius(unsigned m) const {
    if (is_zero() || m == 0) return *this;
    const std::uint64_t Q = checked_pow(F_->q(), m, static_cast<std::uint64_t>(kMaxDegree));
    check_degree(degree() * static_cast<std::int64_t>(Q));
    std::vector<Elem> r(static_cast<std::size_t>(degree()) * Q + 1, F_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * Q] = c_[i];
    return Poly(F_, std::move(r));
  }

  Poly pow(std::uint64_t k) const {
    Poly r = one(F_);
    Poly b = *this;
    while (k > 0) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k > 0) b *= b;
    }
    return r;
  }

  /// Euclidean division; throws DomainError on division by zero.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw DomainError("division by the zero polynomial");
    if (degree() < d.degree()) return {Poly(F_), *this};
    const Field& F = *F_;
    std::vector<Elem> rem = c_;
    const std::size_t dd = static_cast<std::size_t>(d.degree());
    std::vector<Elem> quo(rem.size() - dd, F.zero());
    const Elem inv_lead = F.inv(d.lead());
    for (std::size_t top = rem.size(); top-- > dd;) {
      const Elem c = F.mul(rem[top], inv_lead);
      if (c.v == 0) continue;
      quo[top - dd] = c;
      const Elem nc = F.neg(c);
      for (std::size_t i = 0; i <= dd; ++i) rem[top - dd + i] = F.add(rem[top - dd + i], F.mul(nc, d.c_[i]));
    }
    return {Poly(F_, std::move(quo)), Poly(F_, std::move(rem))};
  }

  /// Quotient of a division known to be exact; a remainder is an internal
  /// consistency failure.
  Poly exact_div(const Poly& d) const {
    auto [quo, rem] = divmod(d);
    if (!rem.is_zero()) throw ConsistencyError("inexact division in F_q[T]");
    return quo;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.c_ == b.c_ && (a.F_ == b.F_ || *a.F_ == *b.F_);
  }

  static void check_degree(std::int64_t d) {
    if (d > kMaxDegree)
      throw ResourceError("polynomial degree " + std::to_string(d) + " exceeds budget", static_cast<std::uint64_t>(d));
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back().v == 0) c_.pop_back();
  }

  FieldPtr F_;
  std::vector<Elem> c_;
};

enum class PolySet {
  DegreeBelow,    ///< all m with deg(m) < n, including 0
  MonicOfDegree,  ///< all monic m with deg(m) = n
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 256;

/// Exactly q^n polynomials. Index k maps to coefficients given by the base-q
/// digits of k, constant term fastest-varying.
inline std::vector<Poly> enumerate_polys(const FieldPtr& F, unsigned n, PolySet which,
                                         std::uint64_t budget = kDefaultEnumerationBudget) {
  std::uint64_t count = 0;
  try {
    count = checked_pow(F->q(), n, budget);
  } catch (const ResourceError&) {
    std::uint64_t need = 1;
    for (unsigned i = 0; i < n; ++i) {
      if (need > std::numeric_limits<std::uint64_t>::max() / F->q()) {
        need = std::numeric_limits<std::uint64_t>::max();
        break;
      }
      need *= F->q();
    }
    throw ResourceError("enumerating q^" + std::to_string(n) + " polynomials exceeds budget " +
                            std::to_string(budget),
                        need);
  }
  std::vector<Poly> out;
  out.reserve(count);
  const std::size_t len = which == PolySet::MonicOfDegree ? n + 1 : n;
  for (std::uint64_t k = 0; k < count; ++k) {
    std::vector<Elem> c(len, F->zero());
    std::uint64_t t = k;
    for (unsigned i = 0; i < n; ++i) {
      c[i] = F->element(static_cast<unsigned>(t % F->q()));
      t /= F->q();
    }
    if (which == PolySet::MonicOfDegree) c[n] = F->one();
    out.emplace_back(F, std::move(c));
  }
  return out;
}

}  // namespace ffbasis
