#include <gtest/gtest.h>

#include <random>

#include "ffbasis/carlitz.hpp"
#include "ffbasis/text.hpp"
#include "support.hpp"

namespace ffbasis {
namespace {

using testing::BiPoly;
using testing::random_poly;
using testing::random_series;

Poly P(const FieldPtr& F, const char* s) { return parse_poly(F, s); }

TEST(Bracket, Examples) {
  auto F2 = Field::make(2);
  auto F3 = Field::make(3);
  EXPECT_EQ(to_string(bracket(F2, 1)), "T^2+T");
  EXPECT_EQ(to_string(bracket(F2, 2)), "T^4+T");
  EXPECT_EQ(to_string(bracket(F3, 1)), "T^3+2*T");
  EXPECT_THROW(bracket(F2, 0), DomainError);
}

TEST(Factorials, Examples) {
  Carlitz C(Field::make(2));
  const auto& F = C.field_ptr();
  EXPECT_EQ(C.factorial(0), Poly::one(F));
  EXPECT_EQ(C.bracket_product(0), Poly::one(F));
  EXPECT_EQ(C.factorial(1), P(F, "T^2+T"));
  EXPECT_EQ(C.bracket_product(1), P(F, "T^2+T"));
  EXPECT_EQ(C.bracket_product(2), P(F, "T^4+T") * P(F, "T^2+T"));
  EXPECT_EQ(C.factorial(2), P(F, "T^4+T") * P(F, "T^2+T").pow(2));
  // g_j for j = 5 = 1 + 0*2 + 1*4.
  EXPECT_EQ(C.digit_factorial(DigitIndex::of(5, 2)), C.factorial(2));
  for (unsigned n = 0; n <= 4; ++n) EXPECT_EQ(C.factorial(n).valuation(), C.loss(n));
}

TEST(Vanishing, ClosedFormMatchesBruteForceProduct) {
  for (auto [q, nmax] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 2}, {4, 2}, {5, 1}, {9, 1}}) {
    Carlitz C(Field::of_order(q));
    for (unsigned n = 0; n <= nmax; ++n) {
      const BiPoly brute = testing::brute_force_vanishing(C.field_ptr(), n);
      const auto& e = C.vanishing_poly(n);
      BiPoly closed(brute.size(), Poly(C.field_ptr()));
      for (const auto& t : e.terms) closed[checked_pow(q, t.index)] = t.coeff;
      ASSERT_EQ(closed.size(), brute.size());
      for (std::size_t k = 0; k < brute.size(); ++k) EXPECT_EQ(closed[k], brute[k]) << "q=" << q << " n=" << n << " k=" << k;
    }
  }
}

TEST(Vanishing, Examples) {
  Carlitz C(Field::make(2));
  const auto& e2 = C.vanishing_poly(2).terms;
  ASSERT_EQ(e2.size(), 3u);
  EXPECT_EQ(to_string(e2[0].coeff), "T^2+T");
  EXPECT_EQ(to_string(e2[1].coeff), "T^2+T+1");
  EXPECT_EQ(to_string(e2[2].coeff), "1");
  for (unsigned q : {2u, 3u, 4u, 7u}) {
    Carlitz Cq(Field::of_order(q));
    const auto& e1 = Cq.vanishing_poly(1).terms;
    ASSERT_EQ(e1.size(), 2u);
    EXPECT_EQ(e1[0].coeff, Poly::constant(Cq.field_ptr(), Cq.field().neg(Cq.field().one())));
    EXPECT_EQ(e1[1].coeff, Poly::one(Cq.field_ptr()));
    EXPECT_EQ(Cq.vanishing_poly(0).terms.size(), 1u);
  }
}

TEST(Vanishing, EvaluationAgreesWithProductAtRandomPoints) {
  std::mt19937_64 rng(21);
  for (auto [q, nmax] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 2}, {4, 2}}) {
    Carlitz C(Field::of_order(q));
    for (unsigned n = 0; n <= nmax; ++n) {
      const BiPoly brute = testing::brute_force_vanishing(C.field_ptr(), n);
      for (int it = 0; it < 40; ++it) {
        const Poly x = random_poly(C.field_ptr(), 1 + rng() % 8, rng);
        ASSERT_EQ(C.vanishing(n, x), testing::bipoly_eval(brute, x));
      }
    }
  }
}

TEST(Vanishing, VanishesOnLowDegreePolynomials) {
  for (unsigned q : {2u, 3u}) {
    Carlitz C(Field::of_order(q));
    for (unsigned n = 1; n <= 3; ++n)
      for (const Poly& m : enumerate_polys(C.field_ptr(), n, PolySet::DegreeBelow, 1000))
        ASSERT_TRUE(C.vanishing(n, m).is_zero());
  }
}

TEST(Vanishing, Recursion) {
  for (unsigned q : {2u, 3u, 4u}) {
    Carlitz C(Field::of_order(q));
    for (unsigned n = 0; n + 1 <= (q == 2 ? 4u : 3u); ++n) {
      const auto& en = C.vanishing_poly(n).terms;
      const auto& next = C.vanishing_poly(n + 1).terms;
      const Poly Fpow = C.factorial(n).pow(q - 1);
      ASSERT_EQ(next.size(), en.size() + 1);
      for (std::size_t i = 0; i < next.size(); ++i) {
        Poly expect(C.field_ptr());
        if (i >= 1) expect += en[i - 1].coeff.frobenius(1);
        if (i < en.size()) expect -= Fpow * en[i].coeff;
        EXPECT_EQ(next[i].coeff, expect) << "q=" << q << " n=" << n << " i=" << i;
      }
    }
  }
}

TEST(LinearE, Examples) {
  Carlitz C2(Field::make(2));
  const auto& F = C2.field_ptr();
  EXPECT_EQ(to_string(C2.linear(1, P(F, "T^2"))), "T^2+T");
  EXPECT_EQ(C2.linear(0, P(F, "T^3")), P(F, "T^3"));
  for (unsigned q : {2u, 3u, 4u}) {
    Carlitz C(Field::of_order(q));
    for (unsigned n = 0; n <= 4; ++n)
      EXPECT_EQ(C.linear(n, Poly::monomial(C.field_ptr(), n)), Poly::one(C.field_ptr())) << q << " " << n;
  }
  // E_1(T^2) = T E_1(T) + E_0(T)^2.
  EXPECT_EQ(C2.linear(1, P(F, "T^2")), P(F, "T") * C2.linear(1, P(F, "T")) + P(F, "T").pow(2));
}

TEST(LinearE, CarlitzShiftIdentity) {
  for (unsigned q : {2u, 3u}) {
    Carlitz C(Field::of_order(q));
    const auto& F = C.field_ptr();
    const Poly T = Poly::T(F);
    for (unsigned n = 1; n <= 4; ++n)
      for (unsigned m = 0; m <= 12; ++m) {
        const Poly lhs = C.linear(n, Poly::monomial(F, m + 1));
        const Poly rhs = T * C.linear(n, Poly::monomial(F, m)) + C.linear(n - 1, Poly::monomial(F, m)).frobenius(1);
        ASSERT_EQ(lhs, rhs) << "q=" << q << " n=" << n << " m=" << m;
      }
  }
}

TEST(LinearE, StepIdentity) {
  std::mt19937_64 rng(31);
  for (unsigned q : {2u, 3u, 4u}) {
    Carlitz C(Field::of_order(q));
    for (unsigned n = 0; n <= 2; ++n)
      for (int it = 0; it < 20; ++it) {
        const Poly x = random_poly(C.field_ptr(), 1 + rng() % 10, rng);
        ASSERT_EQ(C.linear(n, x).frobenius(1), C.bracket(n + 1) * C.linear(n + 1, x) + C.linear(n, x));
        // Same identity on a truncated copy, up to the common precision.
        const auto xs = TruncSeries::from_poly(x, Precision::upto(40));
        const auto lhs = C.linear(n, xs).frobenius(1);
        const auto rhs = C.bracket(n + 1) * C.linear(n + 1, xs) + C.linear(n, xs);
        ASSERT_TRUE(lhs.agrees_with(rhs));
      }
  }
}

TEST(LinearE, Linearity) {
  std::mt19937_64 rng(41);
  for (unsigned q : {2u, 3u, 5u}) {
    Carlitz C(Field::of_order(q));
    for (unsigned n = 0; n <= 2; ++n)
      for (int it = 0; it < 20; ++it) {
        const auto x = random_series(C.field_ptr(), 30, rng);
        const auto y = random_series(C.field_ptr(), 25, rng);
        const Elem a = testing::random_elem(C.field(), rng);
        ASSERT_TRUE(C.linear(n, x + y).agrees_with(C.linear(n, x) + C.linear(n, y)));
        ASSERT_TRUE(C.linear(n, x.scaled(a)).agrees_with(C.linear(n, x).scaled(a)));
      }
  }
}

TEST(LinearE, PrecisionContract) {
  std::mt19937_64 rng(51);
  for (unsigned q : {2u, 3u}) {
    Carlitz C(Field::of_order(q));
    for (unsigned n = 1; n <= 3; ++n)
      for (int it = 0; it < 15; ++it) {
        const Poly X = random_poly(C.field_ptr(), 20, rng);
        const std::int64_t N = C.loss(n) + 1 + static_cast<std::int64_t>(rng() % 12);
        const auto x = TruncSeries::from_poly(X).truncated(Precision::upto(N));
        const auto got = C.linear(n, x);
        ASSERT_GE(got.precision().digits(), N - C.loss(n));
        ASSERT_EQ(got, TruncSeries::from_poly(C.linear(n, X)).truncated(got.precision()));
      }
    const auto shallow = TruncSeries::from_poly(Poly::T(C.field_ptr()), Precision::upto(C.loss(2)));
    try {
      C.linear(2, shallow);
      FAIL() << "expected PrecisionError";
    } catch (const PrecisionError& e) {
      EXPECT_EQ(e.required(), C.loss(2) + 1);
    }
    EXPECT_THROW(C.linear(1, parse_series(C.field_ptr(), "T^-1+1")), DomainError);
  }
}

TEST(DigitProducts, Examples) {
  Carlitz C(Field::make(2));
  const auto& F = C.field_ptr();
  const Poly T = Poly::T(F);
  EXPECT_EQ(C.polynomial(0, T), Poly::one(F));
  EXPECT_EQ(C.polynomial(0, T, true), Poly::one(F));
  EXPECT_EQ(C.polynomial(3, T), T);
  EXPECT_EQ(C.polynomial(1, Poly(F), true), Poly::one(F));
  EXPECT_TRUE(C.polynomial(1, Poly::one(F), true).is_zero());
}

TEST(DigitProducts, IntegralValuedOnPolynomials) {
  // E_n(m) computed from the Laurent coefficients of E_n lands in F_q[T] and
  // matches the exact path; G_j and G'_j follow as products.
  for (unsigned q : {2u, 3u}) {
    Carlitz C(Field::of_order(q));
    const auto& F = C.field_ptr();
    const unsigned levels = 4;
    const auto ms = enumerate_polys(F, levels, PolySet::DegreeBelow, 1000);
    std::vector<LinearPolynomial<TruncSeries>> laurent;
    for (unsigned n = 0; n < levels; ++n) laurent.push_back(C.linear_poly(n, 200));
    for (const Poly& m : ms) {
      const auto xm = TruncSeries::from_poly(m);
      for (unsigned n = 0; n < levels; ++n) {
        TruncSeries s = TruncSeries::zero(F, Precision::upto(200));
        for (const auto& t : laurent[n].terms) s = s + t.coeff * xm.frobenius(t.index);
        ASSERT_TRUE(s.is_integral());
        const Poly exact = C.linear(n, m);
        ASSERT_TRUE(s.agrees_with(TruncSeries::from_poly(exact)));
        ASSERT_LE(exact.degree(), 200);
      }
      const std::uint64_t J = checked_pow(q, levels);
      for (std::uint64_t j = 0; j < J; ++j) {
        const Poly g = C.polynomial(j, m);
        const Poly gp = C.polynomial(j, m, true);
        const auto gs = C.polynomial(j, xm);
        ASSERT_TRUE(gs.is_exact());
        ASSERT_EQ(*gs.to_poly(), g);
        // Integral: a polynomial value, consistent with its own digit factors.
        Poly prod = Poly::one(F);
        Poly prodp = Poly::one(F);
        const auto d = DigitIndex::of(j, q);
        for (std::size_t k = 0; k < d.positions(); ++k) {
          const Poly e = C.linear(static_cast<unsigned>(k), m).pow(d.digits[k]);
          prod *= e;
          prodp *= d.digits[k] == q - 1 ? e - Poly::one(F) : e;
        }
        ASSERT_EQ(g, prod);
        ASSERT_EQ(gp, prodp);
      }
    }
  }
}

TEST(DigitIndex, ReconstructsValue) {
  for (unsigned q : {2u, 3u, 4u, 16u})
    for (std::uint64_t j = 0; j < 2000; ++j) {
      const auto d = DigitIndex::of(j, q);
      ASSERT_EQ(d.reconstruct(), j);
      if (j > 0) {
        ASSERT_NE(d.digits.back(), 0u);
      }
      for (unsigned a : d.digits) ASSERT_LT(a, q);
    }
}

}  // namespace
}  // namespace ffbasis
