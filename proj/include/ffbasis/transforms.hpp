#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffbasis/carlitz.hpp"
#include "ffbasis/digits.hpp"
#include "ffbasis/errors.hpp"
#include "ffbasis/hasse.hpp"
#include "ffbasis/poly.hpp"
#include "ffbasis/series.hpp"

namespace ffbasis {

/// A continuous function O -> K given by an evaluator. Exact inputs must
/// produce exact outputs; an input known mod T^N produces an output known to
/// at least N - loss digits (whenever the evaluator does not throw).
struct Func {
  std::string name;
  std::function<TruncSeries(const TruncSeries&)> eval;
  std::int64_t loss = 0;
  bool linear = false;

  TruncSeries operator()(const TruncSeries& x) const { return eval(x); }
  TruncSeries operator()(const Poly& x) const { return eval(TruncSeries::from_poly(x)); }
};

inline Func operator+(const Func& f, const Func& g) {
  return {f.name + "+" + g.name, [f, g](const TruncSeries& x) { return f(x) + g(x); }, std::max(f.loss, g.loss),
          f.linear && g.linear};
}

inline Func operator-(const Func& f, const Func& g) {
  return {f.name + "-(" + g.name + ")", [f, g](const TruncSeries& x) { return f(x) - g(x); },
          std::max(f.loss, g.loss), f.linear && g.linear};
}

/// c * f for a constant c in K; a negative valuation of c costs that many digits.
inline Func scale(const TruncSeries& c, const Func& f, const std::string& cname) {
  const std::int64_t extra = c.is_zero() ? 0 : std::max<std::int64_t>(0, -c.start());
  return {cname + "*" + f.name, [c, f](const TruncSeries& x) { return c * f(x); }, f.loss + extra, f.linear};
}

/// Built-in functions. All of them map O into O.
namespace funcs {

inline Func identity() {
  return {"identity", [](const TruncSeries& x) { return x; }, 0, true};
}

inline Func one(const FieldPtr& F) {
  return {"one", [F](const TruncSeries&) { return TruncSeries::constant(F, F->one()); }, 0, false};
}

inline Func monomial(std::uint64_t k, unsigned q) {
  return {"x^" + std::to_string(k),
          [k, q](const TruncSeries& x) {
            if (k == 0) return TruncSeries::constant(x.field_ptr(), x.field().one());
            return x.pow(k);
          },
          0, is_power_of(k, q)};
}

inline Func frobenius(unsigned m) {
  return {"frobenius:" + std::to_string(m), [m](const TruncSeries& x) { return x.frobenius(m); }, 0, true};
}

inline Func carlitz_E(const Carlitz& C, unsigned n) {
  return {"E:" + std::to_string(n), [C, n](const TruncSeries& x) { return C.linear(n, x); },
          static_cast<std::int64_t>(n), true};
}

inline Func carlitz_G(const Carlitz& C, std::uint64_t j, bool primed = false) {
  const auto d = DigitIndex::of(j, C.q());
  const std::int64_t loss = d.positions() == 0 ? 0 : static_cast<std::int64_t>(d.positions() - 1);
  return {std::string(primed ? "G'" : "G") + ":" + std::to_string(j),
          [C, d, primed](const TruncSeries& x) { return C.polynomial(d, x, primed); }, loss,
          !primed && is_power_of(j, C.q())};
}

inline Func hasse_D(unsigned n) {
  return {"D:" + std::to_string(n), [n](const TruncSeries& x) { return hasse(n, x); }, static_cast<std::int64_t>(n),
          true};
}

/// D_n^{q^m}.
inline Func powered_D(unsigned n, unsigned m) {
  return {"Dpow:" + std::to_string(n) + ":" + std::to_string(m),
          [n, m](const TruncSeries& x) { return powered_hasse(n, m, x); }, static_cast<std::int64_t>(n), true};
}

inline Func digit_D(std::uint64_t j, unsigned q, bool primed = false) {
  const auto d = DigitIndex::of(j, q);
  const std::int64_t loss = d.positions() == 0 ? 0 : static_cast<std::int64_t>(d.positions() - 1);
  return {std::string(primed ? "Dj'" : "Dj") + ":" + std::to_string(j),
          [d, primed](const TruncSeries& x) { return digit_derivative(d, x, primed); }, loss,
          !primed && is_power_of(j, q)};
}

}  // namespace funcs

// ---------------------------------------------------------------------------
// Difference operators

namespace detail {
inline void require_linear(const Func& f, const char* op) {
  if (!f.linear) throw ContractError(std::string(op) + " is defined for F_q-linear functions; '" + f.name + "' is not");
}
inline TruncSeries times_T(const TruncSeries& x) { return x.shifted(1); }
}  // namespace detail

/// (Delta f)(x) = f(Tx) - T f(x).
inline Func delta(const Func& f) {
  detail::require_linear(f, "delta");
  return {"delta(" + f.name + ")",
          [f](const TruncSeries& x) { return f(detail::times_T(x)) - detail::times_T(f(x)); }, f.loss, true};
}

/// Delta^(n): Delta^(0) = id, Delta^(n) f(x) = Delta^(n-1) f(Tx) - T^{q^{n-1}} Delta^(n-1) f(x).
/// This is not the n-fold iterate of delta.
inline Func delta_upper(unsigned n, const Func& f) {
  detail::require_linear(f, "delta_upper");
  Func g = f;
  for (unsigned k = 1; k <= n; ++k) {
    g = Func{"delta^(" + std::to_string(k) + ")(" + f.name + ")",
             [g, k](const TruncSeries& x) {
               const std::int64_t Q = static_cast<std::int64_t>(
                   checked_pow(x.field().q(), k - 1, static_cast<std::uint64_t>(kMaxDegree)));
               return g(detail::times_T(x)) - g(x).shifted(Q);
             },
             f.loss, true};
  }
  return g;
}

/// (Delta - [m] I) f, with [0] taken as 0.
inline Func delta_minus(const Func& f, unsigned m) {
  detail::require_linear(f, "delta_minus");
  return {"(delta-[" + std::to_string(m) + "])(" + f.name + ")",
          [f, m](const TruncSeries& x) {
            TruncSeries d = f(detail::times_T(x)) - detail::times_T(f(x));
            if (m == 0) return d;
            return d - bracket(x.field_ptr(), m) * f(x);
          },
          f.loss, true};
}

// ---------------------------------------------------------------------------
// Expansions

enum class Basis { CarlitzG, CarlitzE, DigitD, LinearD, PoweredD };

inline const char* basis_name(Basis b) {
  switch (b) {
    case Basis::CarlitzG: return "G";
    case Basis::CarlitzE: return "E";
    case Basis::DigitD: return "D";
    case Basis::LinearD: return "linear-D";
    case Basis::PoweredD: return "powered-D";
  }
  return "?";
}

/// f = sum_j coeffs[j] * b_j over the retained terms. `tail_bound` bounds
/// |coeff_j| for every dropped index; empty means no bound is known.
struct BasisExpansion {
  Basis basis = Basis::CarlitzG;
  unsigned power = 0;                 // m for the D_n^{q^m} basis
  std::optional<unsigned> level;      // enumeration level of G/D coefficient sums
  std::vector<TruncSeries> coeffs;
  std::optional<AbsValue> tail_bound;
};

/// max_j |coeff_j| over the retained terms.
inline AbsValue expansion_norm(const BasisExpansion& e) {
  AbsValue r = AbsValue::zero();
  for (const auto& c : e.coeffs) r = AbsValue::max(r, valuation_norm(c));
  return r;
}

namespace detail {

inline std::vector<TruncSeries> values_at_T_powers(const Func& f, const FieldPtr& F, std::size_t count) {
  std::vector<TruncSeries> v;
  v.reserve(count);
  for (std::size_t k = 0; k < count; ++k) v.push_back(f(TruncSeries::monomial(F, static_cast<std::int64_t>(k))));
  return v;
}

inline void check_known(const TruncSeries& c, const char* what, std::size_t n) {
  if (!c.is_exact() && c.precision().digits() <= 0)
    throw PrecisionError(std::string(what) + ": coefficient " + std::to_string(n) +
                             " has no known digits; evaluate f to higher precision",
                         1 - c.precision().digits());
}

// Table recursion h_n(k) = h_{n-1}(k+1) - c_n * h_{n-1}(k), returning h_n(0).
template <class Step>
std::vector<TruncSeries> difference_table(std::vector<TruncSeries> h, std::size_t N, Step step, const char* what) {
  std::vector<TruncSeries> out;
  out.reserve(N);
  for (std::size_t n = 0; n < N; ++n) {
    check_known(h[0], what, n);
    out.push_back(h[0]);
    for (std::size_t k = 0; k + 1 < h.size(); ++k) h[k] = step(n + 1, h[k + 1], h[k]);
    if (!h.empty()) h.pop_back();
  }
  return out;
}

}  // namespace detail

/// Coefficients a_n = (Delta^(n) f)(1) of f in the E_n basis, n < N.
inline BasisExpansion wagner_coeffs(const Func& f, const FieldPtr& F, std::size_t N) {
  detail::require_linear(f, "wagner_coeffs");
  BasisExpansion out{Basis::CarlitzE, 0, std::nullopt, {}, std::nullopt};
  out.coeffs = detail::difference_table(
      detail::values_at_T_powers(f, F, N), N,
      [&](std::size_t n, const TruncSeries& next, const TruncSeries& cur) {
        const std::int64_t Q = static_cast<std::int64_t>(checked_pow(F->q(), static_cast<std::uint64_t>(n - 1),
                                                                     static_cast<std::uint64_t>(kMaxDegree)));
        return next - cur.shifted(Q);
      },
      "wagner_coeffs");
  return out;
}

/// Same coefficients through the literal operator Delta^(n) evaluated at 1.
inline BasisExpansion wagner_coeffs_iterated(const Func& f, const FieldPtr& F, std::size_t N) {
  BasisExpansion out{Basis::CarlitzE, 0, std::nullopt, {}, std::nullopt};
  const auto one = TruncSeries::constant(F, F->one());
  for (std::size_t n = 0; n < N; ++n) out.coeffs.push_back(delta_upper(static_cast<unsigned>(n), f)(one));
  return out;
}

/// b_n = sum_{i<=n} (-1)^{n-i} f(T^i) D_i(T^n), the coefficients of f in the
/// D_n basis, n < N.
inline BasisExpansion digit_coeffs_linear(const Func& f, const FieldPtr& F, std::size_t N) {
  detail::require_linear(f, "digit_coeffs_linear");
  BasisExpansion out{Basis::LinearD, 0, std::nullopt, {}, std::nullopt};
  const auto vals = detail::values_at_T_powers(f, F, N);
  for (std::size_t n = 0; n < N; ++n) {
    TruncSeries b = TruncSeries::zero(F);
    for (std::size_t i = 0; i <= n; ++i) {
      const Elem c = F->mul(F->sign(n - i), F->binom(n, i));  // D_i(T^n) = C(n,i) T^{n-i}
      if (c.v == 0) continue;
      b = b + vals[i].shifted(static_cast<std::int64_t>(n - i)).scaled(c);
    }
    detail::check_known(b, "digit_coeffs_linear", n);
    out.coeffs.push_back(std::move(b));
  }
  return out;
}

/// b_n as (Delta^n f)(1) by n-fold iteration of Delta.
inline BasisExpansion digit_coeffs_linear_iterated(const Func& f, const FieldPtr& F, std::size_t N) {
  detail::require_linear(f, "digit_coeffs_linear");
  BasisExpansion out{Basis::LinearD, 0, std::nullopt, {}, std::nullopt};
  out.coeffs = detail::difference_table(
      detail::values_at_T_powers(f, F, N), N,
      [](std::size_t, const TruncSeries& next, const TruncSeries& cur) { return next - cur.shifted(1); },
      "digit_coeffs_linear");
  return out;
}

/// beta_n^(m) = sum_{i<=n} sum_{i<=j<=n} (-1)^{n-i} C(n,j) [m]^{n-j} f(T^i) D_i(T^j),
/// the coefficients of f in the D_n^{q^m} basis; [0] = 0.
inline BasisExpansion powered_digit_coeffs(const Func& f, const FieldPtr& F, unsigned m, std::size_t N) {
  detail::require_linear(f, "powered_digit_coeffs");
  BasisExpansion out{Basis::PoweredD, m, std::nullopt, {}, std::nullopt};
  const auto vals = detail::values_at_T_powers(f, F, N);
  std::vector<Poly> brpow{Poly::one(F)};
  const Poly br = m == 0 ? Poly(F) : bracket(F, m);
  for (std::size_t k = 1; k < N; ++k) brpow.push_back(brpow.back() * br);
  for (std::size_t n = 0; n < N; ++n) {
    TruncSeries b = TruncSeries::zero(F);
    for (std::size_t i = 0; i <= n; ++i) {
      // sum_j C(n,j) [m]^{n-j} D_i(T^j) as one polynomial weight for f(T^i).
      Poly w(F);
      for (std::size_t j = i; j <= n; ++j) {
        const Elem c = F->mul(F->binom(n, j), F->binom(j, i));
        if (c.v == 0 || brpow[n - j].is_zero()) continue;
        w += brpow[n - j].shifted(static_cast<std::int64_t>(j - i)).scaled(c);
      }
      if (w.is_zero()) continue;
      b = b + (w * vals[i]).scaled(F->sign(n - i));
    }
    detail::check_known(b, "powered_digit_coeffs", n);
    out.coeffs.push_back(std::move(b));
  }
  return out;
}

/// beta_n^(m) as ((Delta - [m] I)^n f)(1) by iteration.
inline BasisExpansion powered_digit_coeffs_iterated(const Func& f, const FieldPtr& F, unsigned m, std::size_t N) {
  detail::require_linear(f, "powered_digit_coeffs");
  BasisExpansion out{Basis::PoweredD, m, std::nullopt, {}, std::nullopt};
  const Poly br = m == 0 ? Poly(F) : bracket(F, m);
  out.coeffs = detail::difference_table(
      detail::values_at_T_powers(f, F, N), N,
      [&](std::size_t, const TruncSeries& next, const TruncSeries& cur) {
        return next - cur.shifted(1) - br * cur;
      },
      "powered_digit_coeffs");
  return out;
}

/// ((Delta - [m] I)^n f)(x) from the closed double sum
///   sum_{i<=n} sum_{i<=j<=n} (-1)^{n-i} C(n,j) [m]^{n-j} f(T^i x) D_i(T^j).
inline TruncSeries difference_power_closed(const Func& f, unsigned m, unsigned n, const TruncSeries& x) {
  detail::require_linear(f, "difference_power_closed");
  const FieldPtr& F = x.field_ptr();
  const Poly br = m == 0 ? Poly(F) : bracket(F, m);
  TruncSeries sum = TruncSeries::zero(F);
  for (unsigned i = 0; i <= n; ++i) {
    Poly w(F);
    for (unsigned j = i; j <= n; ++j) {
      const Elem c = F->mul(F->binom(n, j), F->binom(j, i));
      if (c.v == 0) continue;
      const Poly bp = (n - j == 0) ? Poly::one(F) : br.pow(n - j);
      w += bp.shifted(j - i).scaled(c);
    }
    if (w.is_zero()) continue;
    sum = sum + (w * f(x.shifted(i))).scaled(F->sign(n - i));
  }
  return sum;
}

/// ((Delta - [m] I)^n f)(x) by composing the operator n times.
inline TruncSeries difference_power_iterated(const Func& f, unsigned m, unsigned n, const TruncSeries& x) {
  Func g = f;
  for (unsigned k = 0; k < n; ++k) g = delta_minus(g, m);
  return g(x);
}

// ---------------------------------------------------------------------------
// Coefficients of continuous functions by enumeration

namespace detail {

inline unsigned resolve_level(unsigned q, std::size_t J, std::optional<unsigned> level) {
  if (level) {
    const std::uint64_t Q = checked_pow(q, *level, std::uint64_t{1} << 40);
    if (Q < J)
      throw DomainError("level " + std::to_string(*level) + " covers indices below " + std::to_string(Q) +
                        ", fewer than the " + std::to_string(J) + " requested");
    return *level;
  }
  unsigned n = 0;
  for (std::uint64_t Q = 1; Q < J; Q *= q) ++n;
  return n;
}

// A_j = (-1)^n sum_{deg m < n} P'_{q^n-1-j}(m) f(m), where P' is the primed
// digit product of the linear values `linear_at(m)`.
template <class LinearAt>
BasisExpansion enumerated_coeffs(Basis basis, const Func& f, const FieldPtr& F, std::size_t J,
                                 std::optional<unsigned> level, std::uint64_t budget, LinearAt linear_at) {
  const unsigned q = F->q();
  const unsigned n = resolve_level(q, J, level);
  const auto ms = enumerate_polys(F, n, PolySet::DegreeBelow, budget);
  const std::uint64_t top = checked_pow(q, n) - 1;
  std::vector<TruncSeries> acc(J, TruncSeries::zero(F));
  for (const Poly& m : ms) {
    const TruncSeries fm = f(m);
    if (fm.is_exact_zero()) continue;
    DigitPowers<Poly> pw(linear_at(n, m), q, Poly::one(F));
    for (std::size_t j = 0; j < J; ++j) {
      const Poly w = pw.product(DigitIndex::of(top - j, q), true);
      if (!w.is_zero()) acc[j] = acc[j] + w * fm;
    }
  }
  BasisExpansion out{basis, 0, n, {}, std::nullopt};
  const Elem s = F->sign(n);
  for (auto& a : acc) out.coeffs.push_back(a.scaled(s));
  return out;
}

}  // namespace detail

/// Coefficients A_j, j < J, of f in the G_j basis, summed over all
/// polynomials of degree below `level` (default: the least level with
/// q^level >= J).
inline BasisExpansion carlitz_coeffs(const Carlitz& C, const Func& f, std::size_t J,
                                     std::optional<unsigned> level = std::nullopt,
                                     std::uint64_t budget = kDefaultEnumerationBudget) {
  return detail::enumerated_coeffs(Basis::CarlitzG, f, C.field_ptr(), J, level, budget,
                                   [&C](unsigned n, const Poly& m) { return C.linear_values(n, m); });
}

/// Coefficients B_j, j < J, of f in the D_j basis.
inline BasisExpansion digit_coeffs(const FieldPtr& F, const Func& f, std::size_t J,
                                   std::optional<unsigned> level = std::nullopt,
                                   std::uint64_t budget = kDefaultEnumerationBudget) {
  return detail::enumerated_coeffs(Basis::DigitD, f, F, J, level, budget,
                                   [](unsigned n, const Poly& m) { return hasse_values(n, m); });
}

// ---------------------------------------------------------------------------
// Basis-change matrices

/// entries[n][m]; `prec` is the digit count used for the Laurent expansions
/// (the Voloch matrix) or exact (the inverse matrix).
struct BasisMatrix {
  enum class Kind { Voloch, Inverse };
  Kind kind = Kind::Voloch;
  Precision prec = Precision::exact();
  std::vector<std::vector<TruncSeries>> entries;

  std::size_t size() const noexcept { return entries.size(); }
};

/// A_{n,m}, the coefficient of E_n in D_m:
///   A_{n,m} = (-1)^{n+m} L_{n-1} sum_{0<i_1<...<i_{m-1}<n} 1/([i_1]...[i_{m-1}])
/// for 1 <= m <= n, A_{0,0} = 1, A_{n,0} = 0 for n >= 1, zero above the
/// diagonal. Each 1/[i] is expanded to `prec` digits.
inline BasisMatrix voloch_matrix(const Carlitz& C, std::size_t N, std::int64_t prec) {
  const FieldPtr& F = C.field_ptr();
  BasisMatrix out{BasisMatrix::Kind::Voloch, Precision::upto(prec), {}};
  out.entries.assign(N, std::vector<TruncSeries>(N, TruncSeries::zero(F)));
  if (N == 0) return out;
  out.entries[0][0] = TruncSeries::constant(F, F->one());
  // sym[k] = k-th elementary symmetric sum of 1/[1], ..., 1/[n-1].
  std::vector<TruncSeries> sym{TruncSeries::constant(F, F->one())};
  for (std::size_t n = 1; n < N; ++n) {
    if (n >= 2) {
      const TruncSeries r = bracket_reciprocal(F, static_cast<unsigned>(n - 1), prec);
      sym.push_back(TruncSeries::zero(F));
      for (std::size_t k = sym.size() - 1; k >= 1; --k) sym[k] = sym[k] + r * sym[k - 1];
    }
    const Poly& L = C.bracket_product(static_cast<unsigned>(n - 1));
    for (std::size_t m = 1; m <= n; ++m)
      out.entries[n][m] = (L * sym[m - 1]).scaled(F->sign(n + m));
  }
  return out;
}

/// B_{m,n} = sum_{i<=m} (-1)^{m-i} D_i(T^m) E_n(T^i), the coefficient of D_m in
/// E_n; exact.
inline BasisMatrix inverse_matrix(const Carlitz& C, std::size_t N) {
  const FieldPtr& F = C.field_ptr();
  BasisMatrix out{BasisMatrix::Kind::Inverse, Precision::exact(), {}};
  out.entries.assign(N, std::vector<TruncSeries>(N, TruncSeries::zero(F)));
  // E_n(T^i) for i, n < N.
  std::vector<std::vector<Poly>> Ev(N);
  for (std::size_t i = 0; i < N; ++i) Ev[i] = C.linear_values(N, Poly::monomial(F, static_cast<std::int64_t>(i)));
  for (std::size_t m = 0; m < N; ++m)
    for (std::size_t n = 0; n < N; ++n) {
      Poly b(F);
      for (std::size_t i = 0; i <= m; ++i) {
        const Elem c = F->mul(F->sign(m - i), F->binom(m, i));
        if (c.v == 0) continue;
        b += Ev[i][n].shifted(static_cast<std::int64_t>(m - i)).scaled(c);
      }
      out.entries[m][n] = TruncSeries::from_poly(b);
    }
  return out;
}

/// Row-by-column product of two square matrices.
inline std::vector<std::vector<TruncSeries>> matrix_product(const std::vector<std::vector<TruncSeries>>& a,
                                                            const std::vector<std::vector<TruncSeries>>& b) {
  const std::size_t N = a.size();
  if (N == 0) return {};
  const FieldPtr& F = a[0][0].field_ptr();
  std::vector<std::vector<TruncSeries>> r(N, std::vector<TruncSeries>(N, TruncSeries::zero(F)));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k)
        if (!a[i][k].is_exact_zero() && !b[k][j].is_exact_zero()) r[i][j] = r[i][j] + a[i][k] * b[k][j];
  return r;
}

/// Conversion between D_n^{q^m} and the D basis:
///   to_plain:   D_n^{q^m} = sum_i [m]^i C(i+n, n) D_{i+n}
///   to_powered: D_n = sum_i (-[m])^i C(i+n, n) D_{i+n}^{q^m}
/// Returns the coefficients for i < I.
enum class PoweredDirection { ToPlain, ToPowered };

inline std::vector<Poly> convert_powered(const FieldPtr& F, unsigned n, unsigned m, std::size_t I,
                                         PoweredDirection dir) {
  if (m == 0) throw DomainError("convert_powered needs m >= 1");
  Poly br = bracket(F, m);
  if (dir == PoweredDirection::ToPowered) br = -br;
  std::vector<Poly> out;
  Poly p = Poly::one(F);
  for (std::size_t i = 0; i < I; ++i) {
    out.push_back(p.scaled(F->binom(i + n, n)));
    p *= br;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Synthesis

struct Synthesis {
  TruncSeries value;
  std::optional<AbsValue> tail_bound;  // error bound from the dropped terms
};

/// Partial sum of the expansion at x. By the ultrametric inequality the
/// omitted terms are bounded by the expansion's tail bound.
inline Synthesis synthesize(const Carlitz& C, const BasisExpansion& exp, const TruncSeries& x) {
  const FieldPtr& F = C.field_ptr();
  if (!x.is_integral()) throw DomainError("expansions are evaluated on O only");
  // Trailing exact zeros need no basis values.
  std::size_t J = exp.coeffs.size();
  while (J > 0 && exp.coeffs[J - 1].is_exact_zero()) --J;
  std::vector<TruncSeries> basis_vals;
  basis_vals.reserve(J);
  if (exp.basis == Basis::CarlitzG || exp.basis == Basis::DigitD) {
    const auto top = J == 0 ? DigitIndex::of(0, C.q()) : DigitIndex::of(J - 1, C.q());
    const std::size_t pos = top.positions();
    const auto lin = exp.basis == Basis::CarlitzG ? C.linear_values(pos, x) : hasse_values(pos, x);
    DigitPowers<TruncSeries> pw(lin, C.q(), TruncSeries::constant(F, F->one()));
    for (std::size_t j = 0; j < J; ++j) basis_vals.push_back(pw.product(DigitIndex::of(j, C.q()), false));
  } else {
    for (std::size_t n = 0; n < J; ++n) {
      const auto k = static_cast<unsigned>(n);
      if (exp.coeffs[n].is_exact_zero()) {
        basis_vals.push_back(TruncSeries::zero(F));
        continue;
      }
      switch (exp.basis) {
        case Basis::CarlitzE: basis_vals.push_back(C.linear(k, x)); break;
        case Basis::LinearD: basis_vals.push_back(hasse(k, x)); break;
        default: basis_vals.push_back(powered_hasse(k, exp.power, x)); break;
      }
    }
  }
  TruncSeries sum = TruncSeries::zero(F);
  for (std::size_t j = 0; j < J; ++j)
    if (!exp.coeffs[j].is_exact_zero()) sum = sum + exp.coeffs[j] * basis_vals[j];
  return {sum, exp.tail_bound};
}

/// The function represented by an expansion (its retained terms).
inline Func as_function(const Carlitz& C, const BasisExpansion& exp) {
  const std::size_t J = exp.coeffs.size();
  const bool digit = exp.basis == Basis::CarlitzG || exp.basis == Basis::DigitD;
  bool linear = true;
  std::int64_t loss = 0;
  if (digit) {
    for (std::size_t j = 0; j < J; ++j)
      if (!is_power_of(j, C.q()) && !exp.coeffs[j].is_exact_zero()) linear = false;
    if (J > 1) loss = static_cast<std::int64_t>(DigitIndex::of(J - 1, C.q()).positions()) - 1;
  } else if (J > 0) {
    loss = static_cast<std::int64_t>(J) - 1;
  }
  for (const auto& c : exp.coeffs)
    if (!c.is_zero()) loss += std::max<std::int64_t>(0, -c.start());
  return {std::string("expansion[") + basis_name(exp.basis) + "]",
          [C, exp](const TruncSeries& x) { return synthesize(C, exp, x).value; }, loss, linear};
}

}  // namespace ffbasis
