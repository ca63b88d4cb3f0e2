// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ffbasis/ffbasis.hpp"

namespace {

using namespace ffbasis;

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

void require_verified(const VerdictReport& r) {
  if (r.verified()) return;
  std::string w;
  for (const auto& [k, v] : r.witness) w += " " + k + "=" + v;
  throw Failure{r.id + " " + status_name(r.status) + w};
}

Poly random_poly(const FieldPtr& F, std::size_t len, std::mt19937_64& rng) {
  std::vector<Elem> c(len);
  for (auto& e : c) e = Elem{static_cast<std::uint8_t>(rng() % F->q())};
  return Poly(F, std::move(c));
}

bool is_delta(const BasisExpansion& e, std::size_t k) {
  for (std::size_t j = 0; j < e.coeffs.size(); ++j) {
    const auto& c = e.coeffs[j];
    if (j == k ? !(c.is_exact() && c == TruncSeries::constant(c.field_ptr(), c.field().one())) : !c.is_exact_zero())
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::string criterion1() {
  std::uint64_t sums = 0;
  for (auto [q, nmax] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 2}, {4, 2}}) {
    Carlitz C(Field::of_order(q));
    for (unsigned n = 1; n <= nmax; ++n)
      for (Family fam : {Family::Carlitz, Family::Digit})
        for (PolySet v : {PolySet::DegreeBelow, PolySet::MonicOfDegree}) {
          const auto r = check_orthogonality_all(C, fam, v, n);
          require_verified(r);
          sums += r.checked;
        }
  }
  return std::to_string(sums) + " sums, all exactly 0 or (-1)^n";
}

std::string criterion2() {
  std::mt19937_64 rng(2024);
  std::uint64_t points = 0;
  for (unsigned q : {2u, 3u}) {
    Carlitz C(Field::of_order(q));
    const FieldPtr& F = C.field_ptr();
    const std::size_t JE = 5;                    // E_4 needs fewer than 64 input digits for q <= 3
    const std::size_t JG = checked_pow(q, 2);  // G/D coefficients at level 2

    // Basis functions expand to delta sequences.
    for (std::size_t k = 0; k < JE; ++k) {
      const unsigned n = static_cast<unsigned>(k);
      require(is_delta(wagner_coeffs(funcs::carlitz_E(C, n), F, JE), k), "E basis delta at " + std::to_string(k));
      require(is_delta(digit_coeffs_linear(funcs::hasse_D(n), F, JE), k), "linear-D delta at " + std::to_string(k));
      for (unsigned m : {0u, 1u, 2u})
        require(is_delta(powered_digit_coeffs(funcs::powered_D(n, m), F, m, JE), k),
                "powered-D delta at " + std::to_string(k) + " m=" + std::to_string(m));
    }
    for (std::size_t k = 0; k < JG; ++k) {
      require(is_delta(carlitz_coeffs(C, funcs::carlitz_G(C, k), JG), k), "G delta at " + std::to_string(k));
      require(is_delta(digit_coeffs(F, funcs::digit_D(k, q), JG), k), "D delta at " + std::to_string(k));
    }

    struct Case {
      Basis basis;
      unsigned m;
      std::size_t J;
      std::function<Func(std::size_t)> element;
      std::function<BasisExpansion(const Func&)> analyze;
    };
    const std::vector<Case> cases{
        {Basis::CarlitzE, 0, JE, [&](std::size_t j) { return funcs::carlitz_E(C, unsigned(j)); },
         [&](const Func& f) { return wagner_coeffs(f, F, JE); }},
        {Basis::LinearD, 0, JE, [&](std::size_t j) { return funcs::hasse_D(unsigned(j)); },
         [&](const Func& f) { return digit_coeffs_linear(f, F, JE); }},
        {Basis::CarlitzG, 0, JG, [&](std::size_t j) { return funcs::carlitz_G(C, j); },
         [&](const Func& f) { return carlitz_coeffs(C, f, JG); }},
        {Basis::DigitD, 0, JG, [&](std::size_t j) { return funcs::digit_D(j, q); },
         [&](const Func& f) { return digit_coeffs(F, f, JG); }},
        {Basis::PoweredD, 0, JE, [&](std::size_t j) { return funcs::powered_D(unsigned(j), 0); },
         [&](const Func& f) { return powered_digit_coeffs(f, F, 0, JE); }},
        {Basis::PoweredD, 1, JE, [&](std::size_t j) { return funcs::powered_D(unsigned(j), 1); },
         [&](const Func& f) { return powered_digit_coeffs(f, F, 1, JE); }},
        {Basis::PoweredD, 2, JE, [&](std::size_t j) { return funcs::powered_D(unsigned(j), 2); },
         [&](const Func& f) { return powered_digit_coeffs(f, F, 2, JE); }},
    };
    for (const Case& cs : cases)
      for (int it = 0; it < 20; ++it) {
        BasisExpansion e{cs.basis, cs.m, std::nullopt, {}, AbsValue::zero()};
        std::vector<Func> elems;
        for (std::size_t j = 0; j < cs.J; ++j) {
          e.coeffs.push_back(TruncSeries::from_poly(random_poly(F, 4, rng)));
          elems.push_back(cs.element(j));
        }
        // Reference values: the finite sum evaluated term by term.
        auto direct = [&](const TruncSeries& x) {
          TruncSeries s = TruncSeries::zero(F);
          for (std::size_t j = 0; j < cs.J; ++j)
            if (!e.coeffs[j].is_zero()) s = s + e.coeffs[j] * elems[j](x);
          return s;
        };
        const Func f{"sample", direct, 0, cs.basis != Basis::CarlitzG && cs.basis != Basis::DigitD};
        const BasisExpansion back = cs.analyze(f);
        for (std::size_t j = 0; j < cs.J; ++j)
          require(back.coeffs[j] == e.coeffs[j],
                  std::string(basis_name(cs.basis)) + " coefficient " + std::to_string(j) + " not recovered");
        for (int s = 0; s < 20; ++s) {
          const auto x = TruncSeries::from_poly(random_poly(F, 8, rng));
          require(synthesize(C, back, x).value == direct(x), std::string(basis_name(cs.basis)) + " exact point");
          const auto xt = TruncSeries::from_poly(random_poly(F, 64, rng), Precision::upto(64));
          const auto got = synthesize(C, back, xt).value;
          require(!got.is_exact() && got.agrees_with(direct(xt)),
                  std::string(basis_name(cs.basis)) + " truncated point");
          points += 2;
        }
      }
  }
  return "delta sequences for all bases; " + std::to_string(points) + " synthesized points match";
}

std::string criterion3() {
  for (unsigned q : {2u, 3u}) {
    Carlitz C(Field::of_order(q));
    const auto A = voloch_matrix(C, 6, 24);
    const auto B = inverse_matrix(C, 6);
    const auto P = matrix_product(A.entries, B.entries);
    for (std::size_t n = 0; n < 6; ++n)
      for (std::size_t m = 0; m < 6; ++m) {
        const auto& x = P[n][m];
        if (n == m)
          require(x.agrees_with(TruncSeries::constant(C.field_ptr(), C.field().one())), "diagonal of A*B");
        else
          require(x.is_zero() && (x.is_exact() || x.precision().digits() >= 12),
                  "A*B off-diagonal (" + std::to_string(n) + "," + std::to_string(m) + ") = " + to_string(x));
        const auto& b = B.entries[n][m];
        if (n < m) require(b.is_exact_zero(), "B above the diagonal");
        if (n == m) require(b == TruncSeries::constant(C.field_ptr(), C.field().one()), "B diagonal");
        const auto& a = A.entries[n][m];
        if (!a.is_zero()) require(*a.valuation() >= std::int64_t(n) - std::int64_t(m), "v(A_{n,m}) >= n - m");
      }
    // Column m of A is the E-expansion of D_m.
    for (std::size_t m = 0; m < 6; ++m) {
      const auto w = wagner_coeffs(funcs::hasse_D(unsigned(m)), C.field_ptr(), 6);
      for (std::size_t n = 0; n < 6; ++n) require(A.entries[n][m].agrees_with(w.coeffs[n]), "A column vs Wagner");
    }
  }
  return "A*B = I (off-diagonal zero to >= 12 digits), B unitriangular, v(A_{n,m}) >= n-m";
}

std::string criterion4() {
  unsigned reports = 0;
  for (unsigned q : {2u, 3u, 4u}) {
    Carlitz C(Field::of_order(q));
    for (Family fam : {Family::Carlitz, Family::Digit})
      for (bool primed : {false, true}) {
        require_verified(check_addition_laws(C, fam, primed, checked_pow(q, 3), 10, 100 + q));
        ++reports;
      }
    for (const auto& r : {check_hasse_rules(C.field_ptr(), 8, 10, 200 + q), check_voloch_identity(C, 2, 10, 10, 300 + q),
                          check_vanishing_recursion(C, 3), check_step_identity_sampled(C, 3, 10, 400 + q),
                          check_shift_identity(C, 4, 12)}) {
      require_verified(r);
      ++reports;
    }
    for (unsigned n = 0; n <= 3; ++n) require_verified(check_step_identity(C, n, 50));
  }
  return std::to_string(reports) + " identity families verified for q in {2,3,4}";
}

std::string criterion5() {
  std::string sup;
  for (unsigned q : {2u, 3u}) {
    Carlitz C(Field::of_order(q));
    for (unsigned n = 0; n <= 4; ++n) {
      const auto ed = basis_distance(C, DistancePair::EvsD, n, 1, 50);
      require_verified(ed);
      if (n == 1) sup += (sup.empty() ? "" : ", ") + std::string("q=") + std::to_string(q) + " ||E_1-D_1|| " + ed.outcome;
      for (unsigned m : {1u, 2u}) require_verified(basis_distance(C, DistancePair::DqVsD, n, m, 50));
      require_verified(basis_distance(C, DistancePair::EqVsE, n, 1, 50));
      require_verified(check_step_identity(C, n, 50));
    }
    require_verified(check_reduced_basis(C, 6));
  }
  return "all differences have valuation >= 1 for i <= 50 (" + sup + "); reduced matrices unitriangular";
}

std::string criterion6() {
  unsigned agree = 0;
  for (unsigned q : {2u, 3u}) {
    Carlitz C(Field::of_order(q));
    const std::size_t J = checked_pow(q, 3);
    for (const auto& e : linearity_corpus(C))
      for (Basis b : {Basis::CarlitzG, Basis::DigitD}) {
        const auto exp = b == Basis::CarlitzG ? carlitz_coeffs(C, e.f, J) : digit_coeffs(C.field_ptr(), e.f, J);
        const auto r = classify_linearity(exp, C.field_ptr(), e.f, 10, 600 + q);
        require_verified(r);
        require(r.outcome == (e.linear ? "linear" : "nonlinear"), e.f.name + " misclassified");
        ++agree;
      }
  }
  return std::to_string(agree) + " classifications (20 functions x 2 bases x q in {2,3}) agree with sampling";
}

std::string criterion7() {
  for (unsigned q : {2u, 3u}) {
    Carlitz C(Field::of_order(q));
    for (const Func& f : {funcs::carlitz_E(C, 2), funcs::frobenius(1) + funcs::hasse_D(3), funcs::powered_D(1, 1),
                          scale(TruncSeries::monomial(C.field_ptr(), 1), funcs::carlitz_E(C, 1), "T")})
      require_verified(check_difference_formula(f, C.field_ptr(), 5, 2, 10, 700 + q));
  }
  return "closed double sum equals iteration for n <= 5, m <= 2 at 10 points";
}

std::string criterion8() {
  for (unsigned q : {2u, 3u}) {
    Carlitz C(Field::of_order(q));
    const std::size_t J = checked_pow(q, 3) - 1;
    for (const Func& f : {funcs::carlitz_G(C, q + 1), funcs::digit_D(q * q + 1, q), funcs::monomial(2 * q + 1, q),
                          funcs::carlitz_E(C, 2), funcs::one(C.field_ptr())})
      for (std::size_t j = 1; j <= J; j = j * q + 1) require_verified(check_level_independence(C, f, j));
  }
  return "G and D coefficients agree at levels n and n+1 for J < q^3";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::string (*)()>> criteria{
      {"orthogonality", criterion1},       {"coefficient recovery round trips", criterion2},
      {"matrix inversion", criterion3},    {"identity families", criterion4},
      {"norm and distance bounds", criterion5}, {"linearity characterization", criterion6},
      {"difference double sum", criterion7}, {"level independence", criterion8},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = criteria[i].second();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %zu %s: %s (%.2fs)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first, detail.c_str(), secs);
    failed += !ok;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%zu criteria passed in %.2fs\n", int(criteria.size()) - failed, criteria.size(), total);
  return failed == 0 ? 0 : 1;
}
