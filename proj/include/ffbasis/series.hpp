#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffbasis/errors.hpp"
#include "ffbasis/field.hpp"
#include "ffbasis/poly.hpp"

namespace ffbasis {

/// How much of a Laurent series is known: either everything (exact) or all
/// coefficients of T^i for i < N.
class Precision {
 public:
  static constexpr Precision exact() noexcept { return Precision(true, 0); }
  static constexpr Precision upto(std::int64_t n) noexcept { return Precision(false, n); }

  constexpr bool is_exact() const noexcept { return exact_; }
  /// N for inexact values; the largest int64 for exact ones.
  constexpr std::int64_t digits() const noexcept {
    return exact_ ? std::numeric_limits<std::int64_t>::max() : n_;
  }
  constexpr bool covers(std::int64_t exponent) const noexcept { return exact_ || exponent < n_; }

  friend constexpr Precision min(Precision a, Precision b) noexcept {
    if (a.exact_) return b;
    if (b.exact_) return a;
    return upto(std::min(a.n_, b.n_));
  }
  constexpr Precision operator+(std::int64_t k) const noexcept { return exact_ ? *this : upto(n_ + k); }
  constexpr Precision operator-(std::int64_t k) const noexcept { return exact_ ? *this : upto(n_ - k); }
  constexpr Precision scaled(std::int64_t f) const noexcept { return exact_ ? *this : upto(n_ * f); }

  friend constexpr bool operator==(Precision, Precision) = default;

  std::string to_string() const { return exact_ ? "exact" : std::to_string(n_); }

 private:
  constexpr Precision(bool exact, std::int64_t n) noexcept : exact_(exact), n_(n) {}
  bool exact_;
  std::int64_t n_;
};

/// |x| = q^{-v}. Zero-to-precision values only give the bound |x| <= q^{-N}.
struct AbsValue {
  enum class Kind { Zero, Exact, Bound };
  Kind kind = Kind::Zero;
  std::int64_t v = 0;

  static AbsValue zero() { return {Kind::Zero, 0}; }
  static AbsValue of_valuation(std::int64_t v) { return {Kind::Exact, v}; }
  static AbsValue bound(std::int64_t v) { return {Kind::Bound, v}; }

  /// Valuation-like key: smaller means larger absolute value; zero is +inf.
  std::int64_t key() const noexcept { return kind == Kind::Zero ? std::numeric_limits<std::int64_t>::max() : v; }

  /// True when the value is certainly at most q^{-w}.
  bool at_most(std::int64_t w) const noexcept { return key() >= w; }

  static AbsValue max(const AbsValue& a, const AbsValue& b) {
    if (a.key() != b.key()) return a.key() < b.key() ? a : b;
    return a.kind == Kind::Exact ? a : b;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Zero: return "0";
      case Kind::Exact: return "q^" + std::to_string(-v);
      case Kind::Bound: return "<=q^" + std::to_string(-v);
    }
    return "?";
  }

  friend bool operator==(const AbsValue&, const AbsValue&) = default;
};

/// Element of K = F_q((T)) known to a stated precision.
///
/// Storage: coefficient i of the store multiplies T^(start + i). A nonzero
/// value always has a nonzero first stored digit, so `start` is the valuation.
/// Inexact values store every digit up to the precision; exact values trim
/// trailing zeros. Zero is an empty store (start = N for zero-to-precision N).
class TruncSeries {
 public:
  TruncSeries(FieldPtr F, std::int64_t start, std::vector<Elem> digits, Precision prec)
      : F_(std::move(F)), start_(start), c_(std::move(digits)), prec_(prec) {
    normalize();
  }

  static TruncSeries zero(const FieldPtr& F, Precision prec = Precision::exact()) {
    return TruncSeries(F, 0, {}, prec);
  }

  /// p * T^shift, truncated to `prec`.
  static TruncSeries from_poly(const Poly& p, Precision prec = Precision::exact(), std::int64_t shift = 0) {
    return TruncSeries(p.field_ptr(), shift, p.coeffs(), prec);
  }

  static TruncSeries monomial(const FieldPtr& F, std::int64_t k, Precision prec = Precision::exact()) {
    return TruncSeries(F, k, {F->one()}, prec);
  }

  static TruncSeries constant(const FieldPtr& F, Elem c, Precision prec = Precision::exact()) {
    return TruncSeries(F, 0, {c}, prec);
  }

  const FieldPtr& field_ptr() const noexcept { return F_; }
  const Field& field() const noexcept { return *F_; }
  Precision precision() const noexcept { return prec_; }
  bool is_exact() const noexcept { return prec_.is_exact(); }

  /// No nonzero digit is known (exact zero or zero to precision).
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_exact_zero() const noexcept { return c_.empty() && prec_.is_exact(); }

  std::optional<std::int64_t> valuation() const noexcept {
    if (c_.empty()) return std::nullopt;
    return start_;
  }

  /// Lowest exponent that could carry a nonzero digit.
  std::int64_t low() const noexcept { return c_.empty() ? (prec_.is_exact() ? 0 : prec_.digits()) : start_; }

  /// In O: nonnegative valuation (zero counts).
  bool is_integral() const noexcept { return c_.empty() || start_ >= 0; }

  const std::vector<Elem>& digits() const noexcept { return c_; }
  std::int64_t start() const noexcept { return start_; }

  Elem coeff(std::int64_t i) const {
    if (!prec_.covers(i))
      throw PrecisionError("coefficient of T^" + std::to_string(i) + " is beyond precision " + prec_.to_string(), i + 1);
    if (c_.empty() || i < start_ || i - start_ >= static_cast<std::int64_t>(c_.size())) return F_->zero();
    return c_[static_cast<std::size_t>(i - start_)];
  }

  /// The polynomial, when the value is exact and lies in F_q[T].
  std::optional<Poly> to_poly() const {
    if (!prec_.is_exact() || !is_integral()) return std::nullopt;
    if (c_.empty()) return Poly(F_);
    std::vector<Elem> v(static_cast<std::size_t>(start_), F_->zero());
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(F_, std::move(v));
  }

  /// The reduction mod T of an integral value.
  Elem reduce_mod_T() const {
    if (!is_integral()) throw DomainError("reduction mod T of a value outside O");
    return coeff(0);
  }

  TruncSeries truncated(Precision p) const {
    return TruncSeries(F_, start_, c_, min(prec_, p));
  }

  /// Multiplication by T^k (any sign).
  TruncSeries shifted(std::int64_t k) const {
    if (c_.empty()) return zero(F_, prec_ + k);
    return TruncSeries(F_, start_ + k, c_, prec_ + k);
  }

  TruncSeries scaled(Elem s) const {
    if (s.v == 0) return zero(F_, prec_.is_exact() ? prec_ : Precision::exact());
    std::vector<Elem> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = F_->mul(c_[i], s);
    return TruncSeries(F_, start_, std::move(r), prec_);
  }

  /// x^(q^m): exponents scale by q^m, coefficients are fixed.
  TruncSeries frobenius(unsigned m) const {
    if (m == 0) return *this;
    const std::int64_t Q = static_cast<std::int64_t>(checked_pow(F_->q(), m, static_cast<std::uint64_t>(kMaxDegree)));
    const Precision p = prec_.scaled(Q);
    if (c_.empty()) return zero(F_, p);
    const std::int64_t span = p.is_exact() ? static_cast<std::int64_t>(c_.size() - 1) * Q + 1
                                           : p.digits() - start_ * Q;
    Poly::check_degree(span);
    std::vector<Elem> r(static_cast<std::size_t>(span), F_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * static_cast<std::size_t>(Q)] = c_[i];
    return TruncSeries(F_, start_ * Q, std::move(r), p);
  }

  TruncSeries pow(std::uint64_t k) const {
    TruncSeries r = constant(F_, F_->one());
    TruncSeries b = *this;
    while (k > 0) {
      if (k & 1) r = r * b;
      k >>= 1;
      if (k > 0) b = b * b;
    }
    return r;
  }

  friend TruncSeries operator+(const TruncSeries& x, const TruncSeries& y) { return combine(x, y, false); }
  friend TruncSeries operator-(const TruncSeries& x, const TruncSeries& y) { return combine(x, y, true); }
  TruncSeries operator-() const { return scaled(F_->neg(F_->one())); }

  /// Product precision is min(N_x + v_y, N_y + v_x); exact factors
  /// contribute no precision bound of their own.
  friend TruncSeries operator*(const TruncSeries& x, const TruncSeries& y) {
    const FieldPtr& F = x.F_;
    if (x.is_exact_zero() || y.is_exact_zero()) return zero(F);
    const std::int64_t vx = x.low(), vy = y.low();
    Precision p = Precision::exact();
    if (!x.prec_.is_exact()) p = min(p, x.prec_ + vy);
    if (!y.prec_.is_exact()) p = min(p, y.prec_ + vx);
    if (x.c_.empty() || y.c_.empty()) return zero(F, p);
    const std::int64_t start = vx + vy;
    const std::int64_t full = static_cast<std::int64_t>(x.c_.size() + y.c_.size()) - 1;
    const std::int64_t limit = p.is_exact() ? full : std::min(full, p.digits() - start);
    if (limit <= 0) return zero(F, p);
    Poly::check_degree(limit);
    const Field& f = *F;
    std::vector<Elem> r(static_cast<std::size_t>(limit), f.zero());
    for (std::size_t i = 0; i < x.c_.size() && static_cast<std::int64_t>(i) < limit; ++i) {
      const Elem a = x.c_[i];
      if (a.v == 0) continue;
      const std::size_t jmax = std::min(y.c_.size(), static_cast<std::size_t>(limit) - i);
      for (std::size_t j = 0; j < jmax; ++j) r[i + j] = f.add(r[i + j], f.mul(a, y.c_[j]));
    }
    return TruncSeries(F, start, std::move(r), p);
  }

  friend TruncSeries operator*(const Poly& a, const TruncSeries& y) { return from_poly(a) * y; }
  friend TruncSeries operator*(const TruncSeries& x, const Poly& b) { return x * from_poly(b); }

  /// Equal on every digit both sides know.
  bool agrees_with(const TruncSeries& o) const { return (*this - o).is_zero(); }

  /// Structural equality: same precision and the same known digits.
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.prec_ == b.prec_ && a.c_ == b.c_ && (a.c_.empty() || a.start_ == b.start_) &&
           (a.F_ == b.F_ || *a.F_ == *b.F_);
  }

 private:
  static TruncSeries combine(const TruncSeries& x, const TruncSeries& y, bool subtract) {
    const Field& f = *x.F_;
    const Precision p = min(x.prec_, y.prec_);
    if (x.c_.empty() && y.c_.empty()) return zero(x.F_, p);
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (const TruncSeries* s : {&x, &y}) {
      if (s->c_.empty()) continue;
      lo = std::min(lo, s->start_);
      hi = std::max(hi, s->start_ + static_cast<std::int64_t>(s->c_.size()));
    }
    if (!p.is_exact()) hi = std::min(hi, p.digits());
    if (hi <= lo) return zero(x.F_, p);
    std::vector<Elem> r(static_cast<std::size_t>(hi - lo), f.zero());
    auto accumulate = [&](const TruncSeries& s, bool neg) {
      for (std::size_t i = 0; i < s.c_.size(); ++i) {
        const std::int64_t e = s.start_ + static_cast<std::int64_t>(i);
        if (e >= hi) break;
        Elem& slot = r[static_cast<std::size_t>(e - lo)];
        slot = neg ? f.sub(slot, s.c_[i]) : f.add(slot, s.c_[i]);
      }
    };
    accumulate(x, false);
    accumulate(y, subtract);
    return TruncSeries(x.F_, lo, std::move(r), p);
  }

  void normalize() {
    if (!prec_.is_exact()) {
      const std::int64_t N = prec_.digits();
      const std::int64_t keep = std::max<std::int64_t>(0, std::min<std::int64_t>(N - start_, static_cast<std::int64_t>(c_.size())));
      c_.resize(static_cast<std::size_t>(keep));
    }
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].v == 0) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      start_ = prec_.is_exact() ? 0 : prec_.digits();
      return;
    }
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
      start_ += static_cast<std::int64_t>(lead);
    }
    if (prec_.is_exact()) {
      while (c_.back().v == 0) c_.pop_back();
    } else {
      // Known-zero digits up to the precision are stored explicitly.
      c_.resize(static_cast<std::size_t>(prec_.digits() - start_), F_->zero());
    }
  }

  FieldPtr F_;
  std::int64_t start_;
  std::vector<Elem> c_;
  Precision prec_;
};

/// x^{-1}. An inexact x with valuation v and precision N gives N - 2v known
/// digits; an exact non-monomial x needs the target precision `cap`.
inline TruncSeries invert_unit(const TruncSeries& x, Precision cap = Precision::exact()) {
  const FieldPtr& F = x.field_ptr();
  if (x.is_zero()) throw DomainError("inverting a value that is zero to precision " + x.precision().to_string());
  const std::int64_t v = x.start();
  const std::vector<Elem>& u = x.digits();
  const Elem inv0 = F->inv(u[0]);
  Precision target = x.is_exact() ? cap : min(cap, Precision::upto(x.precision().digits() - 2 * v));
  if (x.is_exact() && u.size() == 1) return TruncSeries(F, -v, {inv0}, Precision::exact()).truncated(cap);
  if (target.is_exact()) throw DomainError("inverse of a non-monomial exact value needs a target precision");
  const std::int64_t rel = target.digits() + v;
  if (rel <= 0) return TruncSeries::zero(F, target);
  Poly::check_degree(rel);
  std::vector<Elem> w(static_cast<std::size_t>(rel), F->zero());
  w[0] = inv0;
  const Elem ninv0 = F->neg(inv0);
  for (std::size_t k = 1; k < w.size(); ++k) {
    Elem acc = F->zero();
    const std::size_t imax = std::min(k, u.size() - 1);
    for (std::size_t i = 1; i <= imax; ++i) acc = F->add(acc, F->mul(u[i], w[k - i]));
    w[k] = F->mul(ninv0, acc);
  }
  return TruncSeries(F, -v, std::move(w), target);
}

/// x / d. Exact x stays exact when d's unit part divides it; otherwise `cap`
/// must bound the precision of the (infinite) quotient. Inexact x loses v(d)
/// digits.
inline TruncSeries divide(const TruncSeries& x, const Poly& d, Precision cap = Precision::exact()) {
  if (d.is_zero()) throw DomainError("division by the zero polynomial");
  const FieldPtr& F = x.field_ptr();
  const std::int64_t vd = d.valuation();
  const Poly unit(F, std::vector<Elem>(d.coeffs().begin() + vd, d.coeffs().end()));
  if (x.is_exact()) {
    if (x.is_zero()) return x;
    const Poly num(F, x.digits());
    auto [quo, rem] = num.divmod(unit);
    if (rem.is_zero()) return TruncSeries::from_poly(quo, Precision::exact(), x.start() - vd);
    if (cap.is_exact()) throw DomainError("quotient is not a Laurent polynomial; a precision is required");
    const TruncSeries inv = invert_unit(TruncSeries::from_poly(unit), cap + vd - x.start());
    return (x * inv).shifted(-vd).truncated(cap);
  }
  const std::int64_t N = x.precision().digits();
  if (x.is_zero()) return TruncSeries::zero(F, Precision::upto(N - vd));
  const TruncSeries inv = invert_unit(TruncSeries::from_poly(unit), Precision::upto(N - x.start()));
  return (x * inv).shifted(-vd).truncated(cap);
}

inline AbsValue valuation_norm(const TruncSeries& x) {
  if (auto v = x.valuation()) return AbsValue::of_valuation(*v);
  if (x.is_exact()) return AbsValue::zero();
  return AbsValue::bound(x.precision().digits());
}

/// 1/[i] = -T^{-1} / (1 - T^{q^i - 1}) expanded as a geometric series to
/// absolute precision `prec`.
inline TruncSeries bracket_reciprocal(const FieldPtr& F, unsigned i, std::int64_t prec) {
  if (i == 0) throw DomainError("[0] = 0 has no reciprocal");
  const std::int64_t step = static_cast<std::int64_t>(checked_pow(F->q(), i, static_cast<std::uint64_t>(kMaxDegree))) - 1;
  const std::int64_t len = prec + 1;
  if (len <= 0) return TruncSeries::zero(F, Precision::upto(prec));
  std::vector<Elem> c(static_cast<std::size_t>(len), F->zero());
  const Elem m1 = F->neg(F->one());
  for (std::int64_t k = 0; k < len; k += step) c[static_cast<std::size_t>(k)] = m1;
  return TruncSeries(F, -1, std::move(c), Precision::upto(prec));
}

}  // namespace ffbasis
