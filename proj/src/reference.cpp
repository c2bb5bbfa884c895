#include "kentropy/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "kentropy/errors.hpp"
#include "kentropy/numeric.hpp"
#include "kentropy/rng.hpp"

// Straight serial loops. Arithmetic order matches the parallel versions
// (per-unit Neumaier accumulators, fixed-order outer reductions) so results
// must agree exactly, not just within tolerance.
namespace kentropy::ref {

std::vector<double> typicality(const SimilarityMatrix& K, const Pmf& p) {
  if (K.size() != p.size()) throw DimensionError("typicality: kernel and pmf sizes differ");
  const int n = K.size();
  std::vector<double> tau(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    NeumaierAcc acc;
    for (int y = 0; y < n; ++y) acc.add(K(x, y) * p[y]);
    tau[static_cast<std::size_t>(x)] = acc.total();
  }
  return tau;
}

double entropy_discrete(const SimilarityMatrix& K, const Pmf& p) {
  std::vector<double> tau = typicality(K, p);
  NeumaierAcc acc;
  for (int x = 0; x < p.size(); ++x) {
    if (p[x] <= 0.0) continue;
    acc.add(-p[x] * std::log(tau[static_cast<std::size_t>(x)]));
  }
  return acc.total();
}

SimilarityMatrix induce_kernel_max(const SimilarityMatrix& K_X, const FiberMap& f) {
  if (K_X.size() != f.domain_size())
    throw DimensionError("induce_kernel_max: kernel and map sizes differ");
  auto fib = f.fibers();
  const int m = f.classes();
  std::vector<double> e(static_cast<std::size_t>(m) * m, 0.0);
  for (int a = 0; a < m; ++a) {
    e[static_cast<std::size_t>(a) * m + a] = 1.0;
    for (int b = a + 1; b < m; ++b) {
      double hi = 0.0;
      for (int x : fib[static_cast<std::size_t>(a)])
        for (int y : fib[static_cast<std::size_t>(b)]) hi = std::max(hi, K_X(x, y));
      e[static_cast<std::size_t>(a) * m + b] = hi;
      e[static_cast<std::size_t>(b) * m + a] = hi;
    }
  }
  return SimilarityMatrix(m, std::move(e));
}

StepKernel block_average(const KernelFunction& K, int n, int q) {
  if (n < 1 || q < 1) throw std::invalid_argument("block_average: n and q must be >= 1");
  QuadRule rule = gauss_legendre_unit(q);
  std::vector<double> b(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      NeumaierAcc acc;
      for (int a = 0; a < q; ++a) {
        double ua = (i + rule.node[static_cast<std::size_t>(a)]) / n;
        double wa = rule.weight[static_cast<std::size_t>(a)];
        for (int c = 0; c < q; ++c) {
          double vc = (j + rule.node[static_cast<std::size_t>(c)]) / n;
          acc.add(wa * rule.weight[static_cast<std::size_t>(c)] * K(ua, vc));
        }
      }
      double v = acc.total();
      b[static_cast<std::size_t>(i) * n + j] = v;
      b[static_cast<std::size_t>(j) * n + i] = v;
    }
  return StepKernel(n, std::move(b));
}

double entropy_from_samples(const SampleSet& s, const EstimatorOptions& opt) {
  const int m = s.count();
  if (!(opt.ridge >= 0.0)) throw std::invalid_argument("entropy_from_samples: negative ridge");
  const bool subsample = opt.max_columns > 0 && m > opt.max_columns;
  std::vector<double> tau(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    NeumaierAcc acc;
    if (subsample) {
      SubRng rng(opt.subsample_seed, static_cast<std::uint64_t>(i));
      for (int c = 0; c < opt.max_columns; ++c) acc.add(s.kernel(i, rng.next_index(m)));
      tau[static_cast<std::size_t>(i)] = acc.total() / opt.max_columns;
    } else {
      for (int j = 0; j < m; ++j) acc.add(s.kernel(i, j));
      tau[static_cast<std::size_t>(i)] = acc.total() / m;
    }
  }
  NeumaierAcc acc;
  for (int i = 0; i < m; ++i) {
    double v = opt.ridge + tau[static_cast<std::size_t>(i)];
    if (!(v > 0.0))
      throw std::invalid_argument("entropy_from_samples: nonpositive smoothed typicality");
    acc.add(-std::log(v) / m);
  }
  return acc.total();
}

}  // namespace kentropy::ref
