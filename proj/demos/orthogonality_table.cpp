// Prints the matrix of sums  sum_{deg m < n} G_k(m) G'_l(m)  for q = 2, n = 2.

#include <cstdio>

#include "ffbasis/ffbasis.hpp"

int main() {
  using namespace ffbasis;
  Carlitz C(Field::make(2));
  const unsigned n = 2;
  const auto ms = enumerate_polys(C.field_ptr(), n, PolySet::DegreeBelow);
  std::printf("k\\l");
  for (unsigned l = 0; l < 4; ++l) std::printf("%6u", l);
  std::printf("\n");
  for (unsigned k = 0; k < 4; ++k) {
    std::printf("%3u", k);
    for (unsigned l = 0; l < 4; ++l) {
      Poly s(C.field_ptr());
      for (const Poly& m : ms) s += C.polynomial(k, m) * C.polynomial(l, m, true);
      std::printf("%6s", to_string(s).c_str());
    }
    std::printf("\n");
  }
  return 0;
}
