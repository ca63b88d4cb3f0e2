#pragma once

// Test-only helpers: seeded generators and brute-force oracles that do not
// share code paths with the library routines they check.

#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

#include "ffbasis/field.hpp"
#include "ffbasis/poly.hpp"
#include "ffbasis/series.hpp"
#include "ffbasis/text.hpp"

namespace ffbasis {

// gtest value printers.
inline void PrintTo(const TruncSeries& x, std::ostream* os) { *os << to_string(x); }
inline void PrintTo(const Poly& x, std::ostream* os) { *os << to_string(x); }
inline void PrintTo(const Precision& x, std::ostream* os) { *os << x.to_string(); }
inline void PrintTo(const AbsValue& x, std::ostream* os) { *os << x.to_string(); }

}  // namespace ffbasis

namespace ffbasis::testing {

inline Elem random_elem(const Field& F, std::mt19937_64& rng) { return Elem{static_cast<std::uint8_t>(rng() % F.q())}; }

/// Uniform over polynomials of degree < len.
inline Poly random_poly(const FieldPtr& F, std::size_t len, std::mt19937_64& rng) {
  std::vector<Elem> c(len);
  for (auto& e : c) e = random_elem(*F, rng);
  return Poly(F, std::move(c));
}

/// Random element of O known mod T^prec (digits from exponent 0).
inline TruncSeries random_series(const FieldPtr& F, std::int64_t prec, std::mt19937_64& rng) {
  std::vector<Elem> c(static_cast<std::size_t>(prec));
  for (auto& e : c) e = random_elem(*F, rng);
  return TruncSeries(F, 0, std::move(c), Precision::upto(prec));
}

/// Exact Laurent polynomial with exponents in [lo, hi].
inline TruncSeries random_laurent(const FieldPtr& F, std::int64_t lo, std::int64_t hi, std::mt19937_64& rng) {
  std::vector<Elem> c(static_cast<std::size_t>(hi - lo + 1));
  for (auto& e : c) e = random_elem(*F, rng);
  return TruncSeries(F, lo, std::move(c), Precision::exact());
}

/// Polynomial in x with coefficients in F_q[T]; entry k multiplies x^k.
using BiPoly = std::vector<Poly>;

inline BiPoly bipoly_mul(const BiPoly& a, const BiPoly& b) {
  BiPoly r(a.size() + b.size() - 1, Poly(a[0].field_ptr()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

/// prod over deg(m) < n of (x - m), by direct multiplication of q^n linear
/// factors; constant-term-fastest enumeration written out independently.
inline BiPoly brute_force_vanishing(const FieldPtr& F, unsigned n) {
  const std::uint64_t count = [&] {
    std::uint64_t c = 1;
    for (unsigned i = 0; i < n; ++i) c *= F->q();
    return c;
  }();
  BiPoly prod{Poly::one(F)};
  for (std::uint64_t k = 0; k < count; ++k) {
    std::vector<Elem> mc(n);
    std::uint64_t t = k;
    for (unsigned i = 0; i < n; ++i, t /= F->q()) mc[i] = Elem{static_cast<std::uint8_t>(t % F->q())};
    const Poly m(F, mc);
    prod = bipoly_mul(prod, BiPoly{-m, Poly::one(F)});
  }
  return prod;
}

/// Horner evaluation of a BiPoly at a polynomial point.
inline Poly bipoly_eval(const BiPoly& a, const Poly& x) {
  Poly r(x.field_ptr());
  for (std::size_t k = a.size(); k-- > 0;) r = r * x + a[k];
  return r;
}

/// Exact binomial table (row < 68 fits in uint64).
inline std::vector<std::vector<std::uint64_t>> pascal(std::size_t rows) {
  std::vector<std::vector<std::uint64_t>> t(rows);
  for (std::size_t n = 0; n < rows; ++n) {
    t[n].assign(n + 1, 1);
    for (std::size_t k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
  }
  return t;
}

}  // namespace ffbasis::testing
