// Prints K_d(n), 1/(pi(n+1/2)) and their difference D(n) for a few n, then the
// scaled gap (n+1/2)^2 |D(n)| against the constant C0 that bounds it.

#include <cstdio>

#include "dhilbert/dhilbert.hpp"

int main() {
  using namespace dhilbert;
  const long radius = 1000;
  const KernelTable kd = build_table(KernelKind::Hilbert, {}, radius);
  const KernelTable d = build_table(KernelKind::Difference, {}, radius);

  std::printf("%6s %22s %22s %22s\n", "n", "K_d(n)", "K_H+(n)", "D(n)");
  for (long n : {-3L, -2L, -1L, 0L, 1L, 2L, 10L, 100L, 1000L})
    std::printf("%6ld %22.15e %22.15e %22.15e\n", n, kd.at(n), riesz_titchmarsh_kernel(n), d.at(n));

  const double c0 = curvature_constant(0);
  double worst = 0.0;
  for (long n = 0; n <= radius; ++n) {
    const double m = n + 0.5;
    worst = std::max(worst, m * m * std::abs(d.at(n)));
  }
  std::printf("\nsup (n+1/2)^2 |D(n)| over 0..%ld = %.6f, C0 = %.6f\n", radius, worst, c0);
  return 0;
}
