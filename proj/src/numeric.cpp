#include "kentropy/numeric.hpp"

#include <stdexcept>

namespace kentropy {

// Gauss-Legendre nodes by Newton iteration on P_q. Nodes are the roots of the
// Legendre polynomial, seeded with the Chebyshev-angle approximation; weights
// 2/((1-x^2) P'(x)^2), all mapped from [-1,1] to (0,1) with weights summing to 1.
QuadRule gauss_legendre_unit(int q) {
  if (q < 1) throw std::invalid_argument("gauss_legendre_unit: q must be >= 1");
  QuadRule r;
  r.node.resize(static_cast<std::size_t>(q));
  r.weight.resize(static_cast<std::size_t>(q));
  for (int k = 0; k < q; ++k) {
    double x = std::cos(3.14159265358979323846 * (k + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // recurrence for P_q(x) and P_q'(x)
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= q; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one more polish step, then stop
        p0 = 1.0;
        p1 = x;
        for (int j = 2; j <= q; ++j) {
          double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = q * (x * p1 - p0) / (x * x - 1.0);
        x -= p1 / dp;
        break;
      }
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map to (0,1); nodes emitted in ascending order
    r.node[static_cast<std::size_t>(q - 1 - k)] = 0.5 * (x + 1.0);
    r.weight[static_cast<std::size_t>(q - 1 - k)] = 0.5 * w;
  }
  if (q == 1) {
    r.node[0] = 0.5;
    r.weight[0] = 1.0;
  }
  return r;
}

}  // namespace kentropy
