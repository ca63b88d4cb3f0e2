// Expands x -> x^{q^m} in the D_n basis and checks the partial sums at a point.

#include <cstdio>

#include "ffbasis/ffbasis.hpp"

int main() {
  using namespace ffbasis;
  Carlitz C(Field::make(3));
  const auto& F = C.field_ptr();
  const unsigned m = 1;
  const auto exp = digit_coeffs_linear(funcs::frobenius(m), F, 6);
  std::printf("x^(q^%u) over F_3 in the D basis:\n", m);
  for (std::size_t i = 0; i < exp.coeffs.size(); ++i) std::printf("  b_%zu = %s\n", i, to_string(exp.coeffs[i]).c_str());

  const Poly x = parse_poly(F, "T^3+2*T+1");
  const auto value = synthesize(C, exp, TruncSeries::from_poly(x)).value;
  std::printf("sum at x = %s: %s\n", to_string(x).c_str(), to_string(value).c_str());
  std::printf("x^3 directly:        %s\n", to_string(x.frobenius(m)).c_str());
  return 0;
}
