#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ffbasis/digits.hpp"
#include "ffbasis/errors.hpp"
#include "ffbasis/field.hpp"
#include "ffbasis/poly.hpp"
#include "ffbasis/series.hpp"

namespace ffbasis {

/// sum_i c_i x^{q^i}, exponent indices strictly increasing.
template <class Coeff>
struct LinearPolynomial {
  struct Term {
    unsigned index;
    Coeff coeff;
  };
  std::vector<Term> terms;
};

/// [n] = T^{q^n} - T, n >= 1.
inline Poly bracket(const FieldPtr& F, unsigned n) {
  if (n == 0) throw DomainError("[0] is not defined");
  const std::uint64_t Q = checked_pow(F->q(), n, static_cast<std::uint64_t>(kMaxDegree));
  return Poly::monomial(F, static_cast<std::int64_t>(Q)) - Poly::T(F);
}

/// The Carlitz tower over one field: brackets, the factorials F_n and L_n,
/// the vanishing polynomials e_n, the normalized linear polynomials
/// E_n = e_n / F_n, and their digit products G_j, G'_j.
///
/// F_n, L_n and e_n are memoized on first use. Copies share the memo tables;
/// filling them is serialized, reading is safe from any thread.
class Carlitz {
 public:
  explicit Carlitz(FieldPtr F) : F_(std::move(F)), cache_(std::make_shared<Cache>()) {}

  const FieldPtr& field_ptr() const noexcept { return F_; }
  const Field& field() const noexcept { return *F_; }
  unsigned q() const noexcept { return F_->q(); }

  Poly bracket(unsigned n) const { return ffbasis::bracket(F_, n); }

  /// F_n = [n] [n-1]^q ... [1]^{q^{n-1}} = [n] F_{n-1}^q; F_0 = 1.
  const Poly& factorial(unsigned n) const {
    std::lock_guard lock(cache_->mu);
    auto& tab = cache_->F;
    if (tab.empty()) tab.push_back(Poly::one(F_));
    while (tab.size() <= n) {
      const unsigned k = static_cast<unsigned>(tab.size());
      tab.push_back(bracket(k) * tab.back().frobenius(1));
    }
    return tab[n];
  }

  /// L_n = [n] [n-1] ... [1]; L_0 = 1.
  const Poly& bracket_product(unsigned n) const {
    std::lock_guard lock(cache_->mu);
    auto& tab = cache_->L;
    if (tab.empty()) tab.push_back(Poly::one(F_));
    while (tab.size() <= n) {
      const unsigned k = static_cast<unsigned>(tab.size());
      tab.push_back(bracket(k) * tab.back());
    }
    return tab[n];
  }

  /// g_j = prod_n F_n^{a_n} over the base-q digits of j.
  Poly digit_factorial(const DigitIndex& j) const {
    Poly g = Poly::one(F_);
    for (std::size_t n = 0; n < j.positions(); ++n)
      if (j.digits[n] != 0) g *= factorial(static_cast<unsigned>(n)).pow(j.digits[n]);
    return g;
  }

  /// v(F_n) = (q^n - 1)/(q - 1): digits lost when dividing by F_n.
  std::int64_t loss(unsigned n) const {
    const std::uint64_t Q = checked_pow(q(), n, static_cast<std::uint64_t>(kMaxDegree));
    return static_cast<std::int64_t>((Q - 1) / (q() - 1));
  }

  /// e_n(x) = sum_i (-1)^{n-i} F_n / (F_i L_{n-i}^{q^i}) x^{q^i}; each division
  /// is verified exact.
  const LinearPolynomial<Poly>& vanishing_poly(unsigned n) const {
    std::lock_guard lock(cache_->mu);
    auto& tab = cache_->e;
    while (tab.size() <= n) {
      const unsigned k = static_cast<unsigned>(tab.size());
      LinearPolynomial<Poly> e;
      for (unsigned i = 0; i <= k; ++i) {
        const Poly den = factorial(i) * bracket_product(k - i).frobenius(i);
        const Poly c = factorial(k).exact_div(den).scaled(F_->sign(k - i));
        e.terms.push_back({i, c});
      }
      tab.push_back(std::move(e));
    }
    return tab[n];
  }

  /// Coefficients of E_n as Laurent values c_i / F_n, known to `prec`.
  LinearPolynomial<TruncSeries> linear_poly(unsigned n, std::int64_t prec) const {
    LinearPolynomial<TruncSeries> out;
    for (const auto& t : vanishing_poly(n).terms)
      out.terms.push_back({t.index, divide(TruncSeries::from_poly(t.coeff), factorial(n), Precision::upto(prec))});
    return out;
  }

  /// e_n(x) on F_q[T].
  Poly vanishing(unsigned n, const Poly& x) const {
    if (n == 0) return x;
    Poly r(F_);
    for (const auto& t : vanishing_poly(n).terms) r += t.coeff * x.frobenius(t.index);
    return r;
  }

  /// e_n(x) on O. With x known mod T^N the result is known to
  /// min_i (N q^i + v(c_i)).
  TruncSeries vanishing(unsigned n, const TruncSeries& x) const {
    require_integral(x, "e_n");
    if (x.is_exact()) return TruncSeries::from_poly(vanishing(n, *x.to_poly()));
    if (n == 0) return x;
    const std::int64_t N = x.precision().digits();
    const auto& terms = vanishing_poly(n).terms;
    std::int64_t P = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> Q(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      Q[i] = static_cast<std::int64_t>(checked_pow(q(), terms[i].index));
      P = std::min(P, N * Q[i] + terms[i].coeff.valuation());
    }
    TruncSeries sum = TruncSeries::zero(F_, Precision::upto(P));
    for (std::size_t i = 0; i < terms.size(); ++i) {
      // Only the digits of x that can reach below P matter.
      const std::int64_t need = (P - terms[i].coeff.valuation() + Q[i] - 1) / Q[i];
      const TruncSeries xi = x.truncated(Precision::upto(need)).frobenius(terms[i].index);
      sum = sum + terms[i].coeff * xi;
    }
    return sum.truncated(Precision::upto(P));
  }

  /// E_n(x) = e_n(x)/F_n exactly; integral-valued, so the division is exact.
  Poly linear(unsigned n, const Poly& x) const {
    if (n == 0) return x;
    return vanishing(n, x).exact_div(factorial(n));
  }

  /// E_n(x) for x in O known mod T^N: computed as e_n(x) / F_n, losing
  /// v(F_n) digits from the precision of e_n(x). Requires N > v(F_n).
  TruncSeries linear(unsigned n, const TruncSeries& x) const {
    require_integral(x, "E_n");
    if (x.is_exact()) return TruncSeries::from_poly(linear(n, *x.to_poly()));
    if (n == 0) return x;
    const std::int64_t lost = loss(n);
    if (x.precision().digits() <= lost)
      throw PrecisionError("E_" + std::to_string(n) + " needs more than " + std::to_string(lost) +
                               " input digits, got " + x.precision().to_string(),
                           lost + 1);
    return divide(vanishing(n, x), factorial(n));
  }

  /// E_0(x), ..., E_{count-1}(x).
  template <class V>
  std::vector<V> linear_values(std::size_t count, const V& x) const {
    std::vector<V> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) out.push_back(linear(static_cast<unsigned>(n), x));
    return out;
  }

  /// G_j(x) = prod E_n(x)^{a_n}; primed: a digit q-1 contributes E_n^{q-1}(x) - 1.
  Poly polynomial(const DigitIndex& j, const Poly& x, bool primed = false) const {
    DigitPowers<Poly> pw(linear_values(j.positions(), x), q(), Poly::one(F_));
    return pw.product(j, primed);
  }

  TruncSeries polynomial(const DigitIndex& j, const TruncSeries& x, bool primed = false) const {
    require_integral(x, "G_j");
    if (x.is_exact()) return TruncSeries::from_poly(polynomial(j, *x.to_poly(), primed));
    DigitPowers<TruncSeries> pw(linear_values(j.positions(), x), q(), TruncSeries::constant(F_, F_->one()));
    return pw.product(j, primed);
  }

  Poly polynomial(std::uint64_t j, const Poly& x, bool primed = false) const {
    return polynomial(DigitIndex::of(j, q()), x, primed);
  }
  TruncSeries polynomial(std::uint64_t j, const TruncSeries& x, bool primed = false) const {
    return polynomial(DigitIndex::of(j, q()), x, primed);
  }

 private:
  struct Cache {
    std::recursive_mutex mu;
    std::deque<Poly> F, L;
    std::deque<LinearPolynomial<Poly>> e;
  };

  static void require_integral(const TruncSeries& x, const char* what) {
    if (!x.is_integral())
      throw DomainError(std::string(what) + " is evaluated on O only; input has valuation " +
                        std::to_string(x.start()));
  }

  FieldPtr F_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace ffbasis
