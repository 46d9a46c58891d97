// Extends a small boundary sequence to Z x {0..4}, prints U and V on a strip
// and the largest Laplacian and Cauchy-Riemann residuals.

#include <cstdio>

#include "dhilbert/dhilbert.hpp"

int main() {
  using namespace dhilbert;
  const BoundarySequence a = BoundarySequence::from_values(-2, {0.5, -1.0, 2.0, 0.25, -0.75});
  ExtensionOptions opt;
  opt.k_max = 5;
  opt.margin = 12;
  const LatticeField u = extend_poisson(a, opt);
  const LatticeField v = extend_conjugate(a, opt);

  std::printf("%4s", "k\\n");
  for (long n = -4; n <= 4; ++n) std::printf("%11ld", n);
  std::printf("\n");
  for (int k = 0; k <= 4; ++k) {
    std::printf("U %2d", k);
    for (long n = -4; n <= 4; ++n) std::printf("%11.6f", u.at(n, k));
    std::printf("\nV %2d", k);
    for (long n = -4; n <= 4; ++n) std::printf("%11.6f", v.at(n, k));
    std::printf("\n");
  }

  const CrResiduals cr = cr_residuals(u, v);
  const Box strip = Box::cube(1, -10, 10);
  std::printf("\nmax |Laplacian U| = %.3e\n", max_abs(laplacian_residual(u), strip, 1, 4));
  std::printf("max |Laplacian V| = %.3e\n", max_abs(laplacian_residual(v), strip, 1, 4));
  std::printf("max |R1|, |R2|    = %.3e, %.3e\n", max_abs(cr.r1, strip, 1, 4), max_abs(cr.r2, strip, 1, 4));
  return 0;
}
