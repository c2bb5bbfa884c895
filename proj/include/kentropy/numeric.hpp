#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace kentropy {

// Neumaier-compensated accumulator. All entropy-grade reductions in this
// library run through a fixed-order compensated sum so that parallel
// implementations (which only parallelize independent term computation)
// stay bit-identical to the serial reference.
struct NeumaierAcc {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }

  double total() const { return s + c; }
};

inline double neumaier_sum(const std::vector<double>& v) {
  NeumaierAcc acc;
  for (double x : v) acc.add(x);
  return acc.total();
}

// Runs f(i) for i in [0,n), in parallel when OpenMP is enabled. Each index
// must touch disjoint state; reductions belong outside.
template <class F>
void parallel_for(int n, F&& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) f(i);
#else
  for (int i = 0; i < n; ++i) f(i);
#endif
}

// Gauss-Legendre rule with q nodes mapped to (0,1); weights sum to 1.
struct QuadRule {
  std::vector<double> node;
  std::vector<double> weight;
};
QuadRule gauss_legendre_unit(int q);

}  // namespace kentropy
