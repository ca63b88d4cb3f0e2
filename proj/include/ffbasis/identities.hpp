#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ffbasis/carlitz.hpp"
#include "ffbasis/digits.hpp"
#include "ffbasis/errors.hpp"
#include "ffbasis/hasse.hpp"
#include "ffbasis/poly.hpp"
#include "ffbasis/series.hpp"
#include "ffbasis/text.hpp"
#include "ffbasis/transforms.hpp"

namespace ffbasis {

enum class Status { Verified, Falsified, BudgetExhausted };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Verified: return "verified";
    case Status::Falsified: return "falsified";
    case Status::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

/// Result of one identity check. A falsified report carries the inputs that
/// reproduce the failure in `witness`; `trace` lists what was checked up to
/// and including the failing instance.
struct VerdictReport {
  using Entries = std::vector<std::pair<std::string, std::string>>;

  std::string id;
  Entries config;
  Status status = Status::Verified;
  std::string outcome;
  Entries witness;
  std::vector<std::string> trace;
  std::string caveat;
  std::uint64_t checked = 0;

  bool verified() const noexcept { return status == Status::Verified; }

  /// Records one instance; returns false (and marks the report falsified)
  /// when it fails.
  bool expect(bool ok, std::string line, Entries w = {}) {
    ++checked;
    if (trace.size() < kTraceLimit) trace.push_back((ok ? "ok   " : "FAIL ") + line);
    if (!ok) {
      status = Status::Falsified;
      witness = std::move(w);
    }
    return ok;
  }

  static constexpr std::size_t kTraceLimit = 4096;
};

namespace detail {

inline VerdictReport start_report(std::string id, VerdictReport::Entries config) {
  VerdictReport r;
  r.id = std::move(id);
  r.config = std::move(config);
  return r;
}

inline VerdictReport budget_report(VerdictReport r, const ResourceError& e) {
  r.status = Status::BudgetExhausted;
  r.outcome = e.what();
  r.witness = {{"required", std::to_string(e.required())}};
  return r;
}

inline std::string str(const Poly& p) { return to_string(p); }
inline std::string str(const TruncSeries& x) { return to_string(x); }

inline Poly random_poly(const FieldPtr& F, std::size_t len, std::mt19937_64& rng) {
  std::vector<Elem> c(len);
  for (auto& e : c) e = Elem{static_cast<std::uint8_t>(rng() % F->q())};
  return Poly(F, std::move(c));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Digit-product tables

enum class Family { Carlitz, Digit };

inline const char* family_name(Family f) { return f == Family::Carlitz ? "G" : "D"; }

/// Values of the linear basis (E_n or D_n) at a point, raised to digit
/// powers, so any G_j / G'_j (or D_j / D'_j) is a product lookup.
template <class V>
DigitPowers<V> digit_table(const Carlitz& C, Family fam, const V& x, std::size_t positions) {
  V one = [&] {
    if constexpr (std::is_same_v<V, Poly>)
      return Poly::one(C.field_ptr());
    else
      return TruncSeries::constant(C.field_ptr(), C.field().one());
  }();
  if (fam == Family::Carlitz) return DigitPowers<V>(C.linear_values(positions, x), C.q(), one);
  return DigitPowers<V>(hasse_values(positions, x), C.q(), one);
}

// ---------------------------------------------------------------------------
// Orthogonality

namespace detail {

// sum_m P_k(m) P'_l(m) for all k < K, l < Lc over the enumerated m, where P is
// the digit product family; expects (-1)^n iff k + l = q^n - 1.
inline VerdictReport orthogonality_sums(const Carlitz& C, Family fam, PolySet variant, unsigned n,
                                        std::uint64_t kmin, std::uint64_t kmax, std::uint64_t lmin,
                                        std::uint64_t lmax, std::uint64_t budget) {
  const unsigned q = C.q();
  const FieldPtr& F = C.field_ptr();
  VerdictReport r = start_report(
      std::string("orthogonality.") + family_name(fam) + (variant == PolySet::DegreeBelow ? ".deg_lt" : ".monic"),
      {{"q", std::to_string(q)},
       {"n", std::to_string(n)},
       {"k", std::to_string(kmin) + ".." + std::to_string(kmax - 1)},
       {"l", std::to_string(lmin) + ".." + std::to_string(lmax - 1)}});
  std::vector<Poly> ms;
  try {
    ms = enumerate_polys(F, n, variant, budget);
  } catch (const ResourceError& e) {
    return budget_report(std::move(r), e);
  }
  const std::uint64_t top = checked_pow(q, n) - 1;
  const std::uint64_t largest = std::max<std::uint64_t>(kmax, lmax) - 1;
  const std::size_t positions = std::max<std::size_t>(DigitIndex::of(largest, q).positions(), 1);

  std::vector<std::vector<Poly>> Pk(ms.size()), Pl(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const auto tab = digit_table(C, fam, ms[i], positions);
    for (std::uint64_t k = kmin; k < kmax; ++k) Pk[i].push_back(tab.product(DigitIndex::of(k, q), false));
    for (std::uint64_t l = lmin; l < lmax; ++l) Pl[i].push_back(tab.product(DigitIndex::of(l, q), true));
  }
  const Poly sign = Poly::constant(F, F->sign(n));
  for (std::uint64_t k = kmin; k < kmax; ++k)
    for (std::uint64_t l = lmin; l < lmax; ++l) {
      Poly s(F);
      for (std::size_t i = 0; i < ms.size(); ++i) s += Pk[i][k - kmin] * Pl[i][l - lmin];
      const Poly expect = (k + l == top) ? sign : Poly(F);
      if (!r.expect(s == expect,
                    "k=" + std::to_string(k) + " l=" + std::to_string(l) + " sum=" + str(s),
                    {{"k", std::to_string(k)}, {"l", std::to_string(l)}, {"sum", str(s)}, {"expected", str(expect)}}))
        return r;
    }
  r.outcome = "all sums equal 0 or (-1)^n";
  return r;
}

}  // namespace detail

/// One orthogonality sum over deg(m) < n (l < q^n, any k) or over monic m of
/// degree n (k, l < q^n).
inline VerdictReport check_orthogonality(const Carlitz& C, Family fam, PolySet variant, unsigned n, std::uint64_t k,
                                         std::uint64_t l, std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::uint64_t Q = checked_pow(C.q(), n, std::uint64_t{1} << 40);
  if (l >= Q) throw DomainError("orthogonality needs l < q^n");
  if (variant == PolySet::MonicOfDegree && k >= Q) throw DomainError("monic orthogonality needs k < q^n");
  return detail::orthogonality_sums(C, fam, variant, n, k, k + 1, l, l + 1, budget);
}

/// Every admissible (k, l): l < q^n, and k < q^n (monic) or k < q^{n+1}
/// (degree below n, where k is unrestricted).
inline VerdictReport check_orthogonality_all(const Carlitz& C, Family fam, PolySet variant, unsigned n,
                                             std::uint64_t budget = kDefaultEnumerationBudget) {
  // Enumeration enforces the budget before any sum is formed.
  const std::uint64_t Q = checked_pow(C.q(), n, std::uint64_t{1} << 40);
  const std::uint64_t K = variant == PolySet::MonicOfDegree ? Q : Q * C.q();
  return detail::orthogonality_sums(C, fam, variant, n, 0, K, 0, Q, budget);
}

// ---------------------------------------------------------------------------
// Addition laws

/// P_j(x+u) = sum_{e+f=j} C(j,e) P_e(x) P^(')_f(u) and P^(')_j(a x) = a^j P^(')_j(x)
/// for all a in F_q^*, where the primed variant puts the prime on the u side.
/// For j = q^m - 1 also the sign forms with (-1)^e for x+u and without signs
/// for x-u.
inline VerdictReport check_addition_law(const Carlitz& C, Family fam, bool primed, std::uint64_t j,
                                        const TruncSeries& x, const TruncSeries& u) {
  const unsigned q = C.q();
  const Field& F = C.field();
  VerdictReport r = detail::start_report(
      std::string("addition.") + family_name(fam) + (primed ? "'" : ""),
      {{"q", std::to_string(q)}, {"j", std::to_string(j)}, {"x", detail::str(x)}, {"u", detail::str(u)}});
  const auto jd = DigitIndex::of(j, q);
  const std::size_t pos = std::max<std::size_t>(jd.positions(), 1);
  const auto tx = digit_table(C, fam, x, pos);
  const auto tu = digit_table(C, fam, u, pos);
  const auto tsum = digit_table(C, fam, x + u, pos);
  const auto tdiff = digit_table(C, fam, x - u, pos);
  const VerdictReport::Entries w = {{"j", std::to_string(j)}, {"x", detail::str(x)}, {"u", detail::str(u)}};

  TruncSeries rhs = TruncSeries::zero(C.field_ptr());
  TruncSeries signed_sum = rhs, plain_sum = rhs;
  for (std::uint64_t e = 0; e <= j; ++e) {
    const auto de = DigitIndex::of(e, q), df = DigitIndex::of(j - e, q);
    const TruncSeries term = tx.product(de, false) * tu.product(df, primed);
    const Elem c = F.binom(j, e);
    if (c.v != 0) rhs = rhs + term.scaled(c);
    signed_sum = signed_sum + term.scaled(F.sign(e));
    plain_sum = plain_sum + term;
  }
  const TruncSeries lhs = tsum.product(jd, primed);
  if (!r.expect(lhs.agrees_with(rhs), "binomial law", w)) return r;

  const TruncSeries base = tx.product(jd, primed);
  for (unsigned a = 1; a < q; ++a) {
    const Elem al{static_cast<std::uint8_t>(a)};
    const auto ta = digit_table(C, fam, x.scaled(al), pos);
    const TruncSeries scaled_val = ta.product(jd, primed);
    auto wa = w;
    wa.emplace_back("alpha", to_string(F, al));
    if (!r.expect(scaled_val.agrees_with(base.scaled(F.pow(al, j))), "scaling alpha=" + to_string(F, al), wa))
      return r;
  }
  if (is_power_of(j + 1, q)) {
    if (!r.expect(lhs.agrees_with(signed_sum), "sign form x+u", w)) return r;
    if (!r.expect(tdiff.product(jd, primed).agrees_with(plain_sum), "sign form x-u", w)) return r;
  }
  r.outcome = "holds";
  return r;
}

/// The addition and scaling laws for every j < J at `pairs` seeded random
/// polynomial pairs (x, u) of degree < `degree`.
inline VerdictReport check_addition_laws(const Carlitz& C, Family fam, bool primed, std::uint64_t J,
                                         unsigned pairs, std::uint64_t seed, unsigned degree = 6) {
  VerdictReport r = detail::start_report(std::string("addition.") + family_name(fam) + (primed ? "'" : ""),
                                         {{"q", std::to_string(C.q())},
                                          {"j", "0.." + std::to_string(J - 1)},
                                          {"pairs", std::to_string(pairs)},
                                          {"seed", std::to_string(seed)}});
  std::mt19937_64 rng(seed);
  for (unsigned p = 0; p < pairs; ++p) {
    const auto x = TruncSeries::from_poly(detail::random_poly(C.field_ptr(), degree, rng));
    const auto u = TruncSeries::from_poly(detail::random_poly(C.field_ptr(), degree, rng));
    for (std::uint64_t j = 0; j < J; ++j) {
      VerdictReport one = check_addition_law(C, fam, primed, j, x, u);
      r.checked += one.checked;
      if (!one.verified()) {
        r.status = one.status;
        r.witness = one.witness;
        r.trace.push_back("FAIL j=" + std::to_string(j) + " pair=" + std::to_string(p));
        return r;
      }
    }
    if (r.trace.size() < VerdictReport::kTraceLimit)
      r.trace.push_back("ok   pair " + std::to_string(p) + ": x=" + detail::str(x) + " u=" + detail::str(u));
  }
  r.outcome = "holds";
  return r;
}

// ---------------------------------------------------------------------------
// Linearity

/// Classifies an expansion in the G or D basis as linear iff every retained
/// coefficient at an index that is not a power of q is zero. With an
/// evaluator, the classification is compared with direct sampling of
/// f(x+y) - f(x) - f(y) and f(a x) - a f(x).
inline VerdictReport classify_linearity(const BasisExpansion& exp, const FieldPtr& F,
                                        const std::optional<Func>& f = std::nullopt, unsigned samples = 10,
                                        std::uint64_t seed = 1) {
  if (exp.basis != Basis::CarlitzG && exp.basis != Basis::DigitD)
    throw DomainError("linearity classification needs an expansion in the G or D basis");
  const unsigned q = F->q();
  VerdictReport r = detail::start_report("linearity", {{"q", std::to_string(q)},
                                                       {"basis", basis_name(exp.basis)},
                                                       {"terms", std::to_string(exp.coeffs.size())}});
  if (f) r.config.emplace_back("function", f->name);
  r.caveat = "classified from the retained coefficients only";
  bool linear = true;
  for (std::size_t j = 0; j < exp.coeffs.size(); ++j)
    if (!is_power_of(j, q) && !exp.coeffs[j].is_zero()) {
      linear = false;
      r.witness = {{"index", std::to_string(j)}, {"coefficient", detail::str(exp.coeffs[j])}};
      break;
    }
  r.outcome = linear ? "linear" : "nonlinear";
  if (!f) return r;

  std::mt19937_64 rng(seed);
  bool sampled_linear = true;
  VerdictReport::Entries sample_witness;
  for (unsigned s = 0; s < samples && sampled_linear; ++s) {
    const auto x = TruncSeries::from_poly(detail::random_poly(F, 6, rng));
    const auto y = TruncSeries::from_poly(detail::random_poly(F, 6, rng));
    const Elem a{static_cast<std::uint8_t>(1 + rng() % (q - 1))};
    const bool add_ok = ((*f)(x + y) - (*f)(x) - (*f)(y)).is_zero();
    const bool scale_ok = ((*f)(x.scaled(a)) - (*f)(x).scaled(a)).is_zero();
    if (!add_ok || !scale_ok) {
      sampled_linear = false;
      sample_witness = {{"x", detail::str(x)}, {"y", detail::str(y)}, {"alpha", to_string(*F, a)}};
    }
  }
  const std::string line = std::string("expansion says ") + (linear ? "linear" : "nonlinear") + ", sampling says " +
                           (sampled_linear ? "linear" : "nonlinear");
  VerdictReport::Entries w = r.witness;
  for (auto& e : sample_witness) w.push_back(e);
  r.expect(linear == sampled_linear, line, w);
  if (r.verified() && !linear) r.witness.insert(r.witness.end(), sample_witness.begin(), sample_witness.end());
  return r;
}

// ---------------------------------------------------------------------------
// Distances between bases

enum class DistancePair { EvsD, DqVsD, EqVsE };

inline const char* pair_name(DistancePair p) {
  switch (p) {
    case DistancePair::EvsD: return "E_vs_D";
    case DistancePair::DqVsD: return "Dq_vs_D";
    case DistancePair::EqVsE: return "Eq_vs_E";
  }
  return "?";
}

inline constexpr unsigned kDefaultDistanceRange = 50;

/// ||f - g|| for a pair of linear functions, computed as max_{i <= I_max}
/// |f(T^i) - g(T^i)|. For linear f - g this is the sup over the T-power
/// basis, which equals the sup over O; only i <= I_max is examined. Checks
/// that the distance is at most 1/q, that f and g agree mod T on every T^i,
/// and that both vanish at T^i for i < n and equal 1 at T^n.
inline VerdictReport basis_distance(const Carlitz& C, DistancePair pair, unsigned n, unsigned m = 1,
                                    unsigned I_max = kDefaultDistanceRange) {
  const FieldPtr& F = C.field_ptr();
  VerdictReport r = detail::start_report(std::string("distance.") + pair_name(pair),
                                         {{"q", std::to_string(C.q())},
                                          {"n", std::to_string(n)},
                                          {"I_max", std::to_string(I_max)}});
  if (pair == DistancePair::DqVsD) r.config.emplace_back("m", std::to_string(m));
  r.caveat = "sup certified over T^i for i <= " + std::to_string(I_max) + " only";
  auto f = [&](const Poly& x) -> Poly {
    switch (pair) {
      case DistancePair::EvsD: return C.linear(n, x);
      case DistancePair::DqVsD: return powered_hasse(n, m, x);
      case DistancePair::EqVsE: return C.linear(n, x).frobenius(1);
    }
    return x;
  };
  auto g = [&](const Poly& x) -> Poly {
    return pair == DistancePair::EqVsE ? C.linear(n, x) : hasse(n, x);
  };
  std::optional<std::int64_t> min_v;
  unsigned argmin = 0;
  for (unsigned i = 0; i <= I_max; ++i) {
    const Poly Ti = Poly::monomial(F, i);
    const Poly fv = f(Ti), gv = g(Ti);
    const Poly d = fv - gv;
    const VerdictReport::Entries w = {{"i", std::to_string(i)}, {"f", detail::str(fv)}, {"g", detail::str(gv)}};
    if (i <= n) {
      const Poly expect = i == n ? Poly::one(F) : Poly(F);
      if (!r.expect(fv == expect && gv == expect, "delta pattern at T^" + std::to_string(i), w)) return r;
    }
    const std::string vtext = d.is_zero() ? "inf" : std::to_string(d.valuation());
    if (!r.expect(d.is_zero() || d.valuation() >= 1, "T^" + std::to_string(i) + " v(f-g)=" + vtext, w)) return r;
    if (!d.is_zero() && (!min_v || d.valuation() < *min_v)) {
      min_v = d.valuation();
      argmin = i;
    }
  }
  if (min_v) {
    r.outcome = "sup=" + AbsValue::of_valuation(*min_v).to_string();
    r.witness = {{"attained_at", "T^" + std::to_string(argmin)}};
  } else {
    r.outcome = "sup=0";
  }
  return r;
}

/// E_n^q(T^i) = [n+1] E_{n+1}(T^i) + E_n(T^i) exactly for i <= I_max.
inline VerdictReport check_step_identity(const Carlitz& C, unsigned n, unsigned I_max = kDefaultDistanceRange) {
  const FieldPtr& F = C.field_ptr();
  VerdictReport r = detail::start_report(
      "step_identity", {{"q", std::to_string(C.q())}, {"n", std::to_string(n)}, {"I_max", std::to_string(I_max)}});
  const Poly br = C.bracket(n + 1);
  for (unsigned i = 0; i <= I_max; ++i) {
    const Poly Ti = Poly::monomial(F, i);
    const Poly lhs = C.linear(n, Ti).frobenius(1);
    const Poly rhs = br * C.linear(n + 1, Ti) + C.linear(n, Ti);
    if (!r.expect(lhs == rhs, "T^" + std::to_string(i), {{"i", std::to_string(i)}, {"difference", detail::str(lhs - rhs)}}))
      return r;
  }
  r.outcome = "exact";
  return r;
}

// ---------------------------------------------------------------------------
// Power criterion and reduced functions

/// |f(x)^{q^m} - f(x)| <= 1/q at seeded random polynomial inputs; falsified
/// with a witness if f leaves O.
inline VerdictReport check_power_criterion(const Func& f, const FieldPtr& F, unsigned m, unsigned samples,
                                           std::uint64_t seed = 1, unsigned degree = 8) {
  VerdictReport r = detail::start_report("power_criterion", {{"q", std::to_string(F->q())},
                                                             {"function", f.name},
                                                             {"m", std::to_string(m)},
                                                             {"samples", std::to_string(samples)},
                                                             {"seed", std::to_string(seed)}});
  std::mt19937_64 rng(seed);
  for (unsigned s = 0; s < samples; ++s) {
    const auto x = TruncSeries::from_poly(detail::random_poly(F, degree, rng));
    const TruncSeries y = f(x);
    const VerdictReport::Entries w = {{"x", detail::str(x)}, {"f(x)", detail::str(y)}};
    if (!r.expect(y.is_integral(), "f(" + detail::str(x) + ") in O", w)) return r;
    const TruncSeries d = y.frobenius(m) - y;
    if (!r.expect(d.is_zero() || d.low() >= 1, "|f^(q^m) - f| <= 1/q at " + detail::str(x), w)) return r;
  }
  r.outcome = "holds";
  return r;
}

/// [b_i(T^j) mod T] for i, j < n_max is unitriangular for b = E and b = D,
/// and the two matrices coincide.
inline VerdictReport check_reduced_basis(const Carlitz& C, unsigned n_max) {
  const FieldPtr& F = C.field_ptr();
  VerdictReport r =
      detail::start_report("reduced_basis", {{"q", std::to_string(C.q())}, {"n_max", std::to_string(n_max)}});
  std::vector<std::vector<unsigned>> ME(n_max, std::vector<unsigned>(n_max)), MD = ME;
  for (unsigned j = 0; j < n_max; ++j) {
    const Poly Tj = Poly::monomial(F, j);
    for (unsigned i = 0; i < n_max; ++i) {
      ME[i][j] = C.linear(i, Tj).coeff(0).v;
      MD[i][j] = hasse(i, Tj).coeff(0).v;
    }
  }
  for (unsigned i = 0; i < n_max; ++i) {
    std::string row;
    for (unsigned j = 0; j < n_max; ++j) row += (j ? " " : "") + std::to_string(ME[i][j]);
    r.trace.push_back("E row " + std::to_string(i) + ": " + row);
  }
  for (unsigned i = 0; i < n_max; ++i)
    for (unsigned j = 0; j < n_max; ++j) {
      const VerdictReport::Entries w = {{"i", std::to_string(i)},
                                        {"j", std::to_string(j)},
                                        {"E", std::to_string(ME[i][j])},
                                        {"D", std::to_string(MD[i][j])}};
      const unsigned expect_diag = 1;
      if (j < i && !r.expect(ME[i][j] == 0 && MD[i][j] == 0, "zero below", w)) return r;
      if (j == i && !r.expect(ME[i][j] == expect_diag && MD[i][j] == expect_diag, "unit diagonal", w)) return r;
      if (!r.expect(ME[i][j] == MD[i][j], "E and D agree mod T", w)) return r;
    }
  r.outcome = "unitriangular, E and D coincide mod T";
  return r;
}

// ---------------------------------------------------------------------------
// Tower and operator identities

/// e_{n+1}(x) = e_n(x)^q - F_n^{q-1} e_n(x), coefficientwise, for n < n_max.
inline VerdictReport check_vanishing_recursion(const Carlitz& C, unsigned n_max) {
  VerdictReport r = detail::start_report("vanishing_recursion",
                                         {{"q", std::to_string(C.q())}, {"n_max", std::to_string(n_max)}});
  for (unsigned n = 0; n < n_max; ++n) {
    const auto& en = C.vanishing_poly(n).terms;
    const auto& next = C.vanishing_poly(n + 1).terms;
    const Poly Fp = C.factorial(n).pow(C.q() - 1);
    bool ok = next.size() == en.size() + 1;
    for (std::size_t i = 0; ok && i < next.size(); ++i) {
      Poly expect(C.field_ptr());
      if (i >= 1) expect += en[i - 1].coeff.frobenius(1);
      if (i < en.size()) expect -= Fp * en[i].coeff;
      ok = next[i].coeff == expect;
    }
    if (!r.expect(ok, "n=" + std::to_string(n), {{"n", std::to_string(n)}})) return r;
  }
  r.outcome = "exact";
  return r;
}

/// E_n(T^{m+1}) = T E_n(T^m) + E_{n-1}(T^m)^q for 1 <= n <= n_max, m <= m_max.
inline VerdictReport check_shift_identity(const Carlitz& C, unsigned n_max, unsigned m_max) {
  const FieldPtr& F = C.field_ptr();
  VerdictReport r = detail::start_report("shift_identity", {{"q", std::to_string(C.q())},
                                                            {"n_max", std::to_string(n_max)},
                                                            {"m_max", std::to_string(m_max)}});
  for (unsigned n = 1; n <= n_max; ++n)
    for (unsigned m = 0; m <= m_max; ++m) {
      const Poly lhs = C.linear(n, Poly::monomial(F, m + 1));
      const Poly rhs = Poly::T(F) * C.linear(n, Poly::monomial(F, m)) +
                       C.linear(n - 1, Poly::monomial(F, m)).frobenius(1);
      if (!r.expect(lhs == rhs, "n=" + std::to_string(n) + " m=" + std::to_string(m),
                    {{"n", std::to_string(n)}, {"m", std::to_string(m)}}))
        return r;
    }
  r.outcome = "exact";
  return r;
}

/// E_n^q(x) = [n+1] E_{n+1}(x) + E_n(x) at seeded random polynomials, n <= n_max.
inline VerdictReport check_step_identity_sampled(const Carlitz& C, unsigned n_max, unsigned samples,
                                                 std::uint64_t seed = 1) {
  VerdictReport r = detail::start_report("step_identity.sampled", {{"q", std::to_string(C.q())},
                                                                   {"n_max", std::to_string(n_max)},
                                                                   {"samples", std::to_string(samples)},
                                                                   {"seed", std::to_string(seed)}});
  std::mt19937_64 rng(seed);
  for (unsigned s = 0; s < samples; ++s) {
    const Poly x = detail::random_poly(C.field_ptr(), 8, rng);
    for (unsigned n = 0; n <= n_max; ++n) {
      const Poly lhs = C.linear(n, x).frobenius(1);
      const Poly rhs = C.bracket(n + 1) * C.linear(n + 1, x) + C.linear(n, x);
      if (!r.expect(lhs == rhs, "n=" + std::to_string(n) + " x=" + detail::str(x),
                    {{"n", std::to_string(n)}, {"x", detail::str(x)}}))
        return r;
    }
  }
  r.outcome = "exact";
  return r;
}

/// Product rule D_n(xy) = sum D_i(x) D_{n-i}(y) and composition rule
/// D_n D_m = C(n+m, m) D_{n+m}, for n + m <= total, on seeded polynomials.
inline VerdictReport check_hasse_rules(const FieldPtr& F, unsigned total, unsigned samples, std::uint64_t seed = 1) {
  VerdictReport r = detail::start_report("hasse_rules", {{"q", std::to_string(F->q())},
                                                         {"total", std::to_string(total)},
                                                         {"samples", std::to_string(samples)},
                                                         {"seed", std::to_string(seed)}});
  std::mt19937_64 rng(seed);
  for (unsigned s = 0; s < samples; ++s) {
    const Poly x = detail::random_poly(F, 12, rng), y = detail::random_poly(F, 12, rng);
    const VerdictReport::Entries w = {{"x", detail::str(x)}, {"y", detail::str(y)}};
    const Poly xy = x * y;
    for (unsigned n = 0; n <= total; ++n) {
      Poly sum(F);
      for (unsigned i = 0; i <= n; ++i) sum += hasse(i, x) * hasse(n - i, y);
      if (!r.expect(hasse(n, xy) == sum, "product n=" + std::to_string(n), w)) return r;
      for (unsigned m = 0; n + m <= total; ++m)
        if (!r.expect(hasse(n, hasse(m, x)) == hasse(n + m, x).scaled(F->binom(n + m, m)),
                      "composition n=" + std::to_string(n) + " m=" + std::to_string(m), w))
          return r;
    }
  }
  r.outcome = "exact";
  return r;
}

/// x^{q^m} = sum_i [m]^i D_i(x) for 1 <= m <= m_max on seeded polynomials of
/// degree <= degree (the sum is finite).
inline VerdictReport check_voloch_identity(const Carlitz& C, unsigned m_max, unsigned degree, unsigned samples,
                                           std::uint64_t seed = 1) {
  const FieldPtr& F = C.field_ptr();
  VerdictReport r = detail::start_report("voloch_identity", {{"q", std::to_string(C.q())},
                                                             {"m_max", std::to_string(m_max)},
                                                             {"degree", std::to_string(degree)},
                                                             {"samples", std::to_string(samples)},
                                                             {"seed", std::to_string(seed)}});
  std::mt19937_64 rng(seed);
  for (unsigned s = 0; s < samples; ++s) {
    const Poly x = detail::random_poly(F, degree + 1, rng);
    for (unsigned m = 1; m <= m_max; ++m) {
      const Poly br = C.bracket(m);
      Poly sum(F), bp = Poly::one(F);
      for (unsigned i = 0; i <= degree; ++i, bp *= br) sum += bp * hasse(i, x);
      if (!r.expect(sum == x.frobenius(m), "m=" + std::to_string(m) + " x=" + detail::str(x),
                    {{"m", std::to_string(m)}, {"x", detail::str(x)}}))
        return r;
    }
  }
  r.outcome = "exact";
  return r;
}

/// The closed double sum for ((Delta - [m] I)^n f)(x) equals literal
/// iteration, for n <= n_max, m <= m_max at seeded polynomials x.
inline VerdictReport check_difference_formula(const Func& f, const FieldPtr& F, unsigned n_max, unsigned m_max,
                                              unsigned samples, std::uint64_t seed = 1) {
  VerdictReport r = detail::start_report("difference_formula", {{"q", std::to_string(F->q())},
                                                                {"function", f.name},
                                                                {"n_max", std::to_string(n_max)},
                                                                {"m_max", std::to_string(m_max)},
                                                                {"samples", std::to_string(samples)},
                                                                {"seed", std::to_string(seed)}});
  std::mt19937_64 rng(seed);
  for (unsigned s = 0; s < samples; ++s) {
    const auto x = TruncSeries::from_poly(detail::random_poly(F, 6, rng));
    for (unsigned m = 0; m <= m_max; ++m)
      for (unsigned n = 0; n <= n_max; ++n) {
        const auto a = difference_power_closed(f, m, n, x);
        const auto b = difference_power_iterated(f, m, n, x);
        if (!r.expect(a == b, "n=" + std::to_string(n) + " m=" + std::to_string(m) + " x=" + detail::str(x),
                      {{"n", std::to_string(n)}, {"m", std::to_string(m)}, {"x", detail::str(x)}}))
          return r;
      }
  }
  r.outcome = "exact";
  return r;
}

/// G- and D-coefficients of f at the least admissible level and the next
/// one agree for every j < J.
inline VerdictReport check_level_independence(const Carlitz& C, const Func& f, std::size_t J,
                                              std::uint64_t budget = kDefaultEnumerationBudget) {
  VerdictReport r = detail::start_report(
      "level_independence", {{"q", std::to_string(C.q())}, {"function", f.name}, {"J", std::to_string(J)}});
  r.caveat = "exact inputs only";
  try {
    const unsigned n = *carlitz_coeffs(C, f, std::max<std::size_t>(J, 1), std::nullopt, budget).level;
    r.config.emplace_back("levels", std::to_string(n) + "," + std::to_string(n + 1));
    const auto a0 = carlitz_coeffs(C, f, J, n, budget), a1 = carlitz_coeffs(C, f, J, n + 1, budget);
    const auto b0 = digit_coeffs(C.field_ptr(), f, J, n, budget);
    const auto b1 = digit_coeffs(C.field_ptr(), f, J, n + 1, budget);
    for (std::size_t j = 0; j < J; ++j) {
      if (!r.expect(a0.coeffs[j] == a1.coeffs[j], "G j=" + std::to_string(j),
                    {{"basis", "G"}, {"j", std::to_string(j)}, {"low", detail::str(a0.coeffs[j])},
                     {"high", detail::str(a1.coeffs[j])}}))
        return r;
      if (!r.expect(b0.coeffs[j] == b1.coeffs[j], "D j=" + std::to_string(j),
                    {{"basis", "D"}, {"j", std::to_string(j)}, {"low", detail::str(b0.coeffs[j])},
                     {"high", detail::str(b1.coeffs[j])}}))
        return r;
    }
  } catch (const ResourceError& e) {
    return detail::budget_report(std::move(r), e);
  }
  r.outcome = "independent of level";
  return r;
}

}  // namespace ffbasis
