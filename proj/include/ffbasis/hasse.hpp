#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffbasis/digits.hpp"
#include "ffbasis/errors.hpp"
#include "ffbasis/poly.hpp"
#include "ffbasis/series.hpp"

namespace ffbasis {

/// Hasse derivative D_n(sum a_i T^i) = sum C(i, n) a_i T^{i-n} on F_q[T].
inline Poly hasse(unsigned n, const Poly& x) {
  if (n == 0) return x;
  const Field& F = x.field();
  if (x.degree() < static_cast<std::int64_t>(n)) return Poly(x.field_ptr());
  std::vector<Elem> out(static_cast<std::size_t>(x.degree()) - n + 1, F.zero());
  for (std::size_t i = n; i < x.coeffs().size(); ++i) {
    const Elem a = x.coeffs()[i];
    if (a.v != 0) out[i - n] = F.mul(F.binom(i, n), a);
  }
  return Poly(x.field_ptr(), std::move(out));
}

/// D_n on O. Loses exactly n digits: input known mod T^N gives N - n.
inline TruncSeries hasse(unsigned n, const TruncSeries& x) {
  if (!x.is_integral())
    throw DomainError("Hasse derivatives are evaluated on O only; input has valuation " + std::to_string(x.start()));
  if (x.is_exact()) return TruncSeries::from_poly(hasse(n, *x.to_poly()));
  const std::int64_t N = x.precision().digits();
  if (N <= static_cast<std::int64_t>(n))
    throw PrecisionError("D_" + std::to_string(n) + " needs more than " + std::to_string(n) + " input digits, got " +
                             std::to_string(N),
                         static_cast<std::int64_t>(n) + 1);
  if (n == 0) return x;
  const Field& F = x.field();
  const Precision out_prec = Precision::upto(N - n);
  if (x.is_zero()) return TruncSeries::zero(x.field_ptr(), out_prec);
  // Output exponents start at max(v, n) - n.
  const std::int64_t lo = std::max<std::int64_t>(x.start(), n);
  std::vector<Elem> out(static_cast<std::size_t>(N - lo), F.zero());
  for (std::int64_t i = lo; i < N; ++i) {
    const Elem a = x.coeff(i);
    if (a.v != 0) out[static_cast<std::size_t>(i - lo)] = F.mul(F.binom(static_cast<std::uint64_t>(i), n), a);
  }
  return TruncSeries(x.field_ptr(), lo - n, std::move(out), out_prec);
}

/// D_n(x)^{q^m}.
inline Poly powered_hasse(unsigned n, unsigned m, const Poly& x) { return hasse(n, x).frobenius(m); }

/// D_n(x)^{q^m}; the N - n known digits become (N - n) q^m.
inline TruncSeries powered_hasse(unsigned n, unsigned m, const TruncSeries& x) { return hasse(n, x).frobenius(m); }

/// D_0(x), ..., D_{count-1}(x).
template <class V>
std::vector<V> hasse_values(std::size_t count, const V& x) {
  std::vector<V> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) out.push_back(hasse(static_cast<unsigned>(n), x));
  return out;
}

/// Digit derivative D_j(x) = prod_n D_n(x)^{a_n}; primed: a digit q-1
/// contributes D_n(x)^{q-1} - 1.
inline Poly digit_derivative(const DigitIndex& j, const Poly& x, bool primed = false) {
  DigitPowers<Poly> pw(hasse_values(j.positions(), x), x.field().q(), Poly::one(x.field_ptr()));
  return pw.product(j, primed);
}

inline TruncSeries digit_derivative(const DigitIndex& j, const TruncSeries& x, bool primed = false) {
  if (!x.is_integral()) throw DomainError("digit derivatives are evaluated on O only");
  if (x.is_exact()) return TruncSeries::from_poly(digit_derivative(j, *x.to_poly(), primed));
  DigitPowers<TruncSeries> pw(hasse_values(j.positions(), x), x.field().q(),
                              TruncSeries::constant(x.field_ptr(), x.field().one()));
  return pw.product(j, primed);
}

inline Poly digit_derivative(std::uint64_t j, const Poly& x, bool primed = false) {
  return digit_derivative(DigitIndex::of(j, x.field().q()), x, primed);
}
inline TruncSeries digit_derivative(std::uint64_t j, const TruncSeries& x, bool primed = false) {
  return digit_derivative(DigitIndex::of(j, x.field().q()), x, primed);
}

}  // namespace ffbasis
