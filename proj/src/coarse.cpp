#include "kentropy/coarse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kentropy/entropy.hpp"
#include "kentropy/errors.hpp"
#include "kentropy/numeric.hpp"

namespace kentropy {

namespace {

// Shared by the full-fiber and support-restricted rules: fiber index lists are
// prefiltered by the caller, so an empty list means "no admissible points".
SimilarityMatrix induce_from_fibers(const SimilarityMatrix& K_X,
                                    const std::vector<std::vector<int>>& fib) {
  const int m = static_cast<int>(fib.size());
  std::vector<double> e(static_cast<std::size_t>(m) * m, 0.0);
  std::vector<std::pair<int, int>> pairs;
  for (int y = 0; y < m; ++y)
    for (int y2 = y + 1; y2 < m; ++y2) pairs.emplace_back(y, y2);
  parallel_for(static_cast<int>(pairs.size()), [&](int k) {
    auto [y, y2] = pairs[static_cast<std::size_t>(k)];
    double best = 0.0;
    for (int x : fib[static_cast<std::size_t>(y)])
      for (int x2 : fib[static_cast<std::size_t>(y2)]) best = std::max(best, K_X(x, x2));
    e[static_cast<std::size_t>(y) * m + y2] = best;
    e[static_cast<std::size_t>(y2) * m + y] = best;
  });
  for (int y = 0; y < m; ++y) e[static_cast<std::size_t>(y) * m + y] = 1.0;
  return SimilarityMatrix(m, std::move(e));
}

}  // namespace

SimilarityMatrix induce_kernel_max(const SimilarityMatrix& K_X, const FiberMap& f) {
  if (K_X.size() != f.domain_size())
    throw DimensionError("induce_kernel_max: kernel and map sizes differ");
  return induce_from_fibers(K_X, f.fibers());
}

SimilarityMatrix pullback(const SimilarityMatrix& K_Y, const FiberMap& f) {
  if (K_Y.size() != f.classes())
    throw DimensionError("pullback: kernel size differs from class count");
  const int n = f.domain_size();
  std::vector<double> e(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int x2 = 0; x2 < n; ++x2) e[static_cast<std::size_t>(x) * n + x2] = K_Y(f(x), f(x2));
  return SimilarityMatrix(n, std::move(e));
}

Pmf pushforward_pmf(const FiberMap& f, const Pmf& p) {
  if (f.domain_size() != p.size())
    throw DimensionError("pushforward_pmf: map and pmf sizes differ");
  std::vector<NeumaierAcc> acc(static_cast<std::size_t>(f.classes()));
  for (int x = 0; x < p.size(); ++x) acc[static_cast<std::size_t>(f(x))].add(p[x]);
  std::vector<double> w(acc.size());
  for (std::size_t j = 0; j < acc.size(); ++j) w[j] = acc[j].total();
  return Pmf(std::move(w));
}

DpiReport dpi_report(const SimilarityMatrix& K_X, const Pmf& p, const FiberMap& f,
                     bool use_supported) {
  DpiReport r;
  r.k_y = use_supported ? induce_kernel_supported(K_X, p, f) : induce_kernel_max(K_X, f);
  r.h_x = entropy_discrete(K_X, p);
  r.h_f = entropy_discrete(pullback(r.k_y, f), p);
  r.h_y = entropy_discrete(r.k_y, pushforward_pmf(f, p));
  r.dpi_holds = r.h_x >= r.h_f - 1e-12;
  r.backcomp_equal = std::abs(r.h_f - r.h_y) <= 1e-12;
  return r;
}

double two_point_entropy(double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("two_point_entropy: m outside [0,1]");
  return std::log(2.0 / (1.0 + m));
}

std::optional<AdversaryWitness> minimality_adversary(const SimilarityMatrix& K_X,
                                                     const FiberMap& f,
                                                     const SimilarityMatrix& K_Y_candidate) {
  if (K_X.size() != f.domain_size() || K_Y_candidate.size() != f.classes())
    throw DimensionError("minimality_adversary: inconsistent sizes");
  const int n = K_X.size();
  for (int x = 0; x < n; ++x) {
    for (int x2 = 0; x2 < n; ++x2) {
      if (K_Y_candidate(f(x), f(x2)) < K_X(x, x2)) {
        std::vector<double> w(static_cast<std::size_t>(n), 0.0);
        w[static_cast<std::size_t>(x)] = 0.5;
        w[static_cast<std::size_t>(x2)] = 0.5;
        return AdversaryWitness{x, x2, Pmf(std::move(w))};
      }
    }
  }
  return std::nullopt;
}

SimilarityMatrix induce_kernel_supported(const SimilarityMatrix& K_X, const Pmf& p,
                                         const FiberMap& f) {
  if (K_X.size() != f.domain_size() || p.size() != f.domain_size())
    throw DimensionError("induce_kernel_supported: inconsistent sizes");
  auto fib = f.fibers();
  for (auto& list : fib) {
    std::vector<int> kept;
    for (int x : list)
      if (p[x] > 0.0) kept.push_back(x);
    list = std::move(kept);
  }
  return induce_from_fibers(K_X, fib);
}

SimilarityMatrix induce_kernel_from_samples(const std::vector<std::pair<int, int>>& samples,
                                            const std::function<double(int, int)>& kernel_eval,
                                            int classes) {
  if (samples.empty()) throw std::invalid_argument("induce_kernel_from_samples: no samples");
  int m = classes;
  if (m < 0) {
    m = 0;
    for (const auto& [c, id] : samples) m = std::max(m, c + 1);
  }
  std::vector<std::vector<int>> points(static_cast<std::size_t>(m));
  for (const auto& [c, id] : samples) {
    if (c < 0 || c >= m) throw std::invalid_argument("induce_kernel_from_samples: label out of range");
    points[static_cast<std::size_t>(c)].push_back(id);
  }
  for (const auto& list : points)
    if (list.empty()) throw std::invalid_argument("induce_kernel_from_samples: class with zero samples");

  std::vector<double> e(static_cast<std::size_t>(m) * m, 0.0);
  std::vector<std::pair<int, int>> pairs;
  for (int y = 0; y < m; ++y)
    for (int y2 = y + 1; y2 < m; ++y2) pairs.emplace_back(y, y2);
  parallel_for(static_cast<int>(pairs.size()), [&](int k) {
    auto [y, y2] = pairs[static_cast<std::size_t>(k)];
    double best = 0.0;
    for (int i : points[static_cast<std::size_t>(y)])
      for (int j : points[static_cast<std::size_t>(y2)]) best = std::max(best, kernel_eval(i, j));
    e[static_cast<std::size_t>(y) * m + y2] = best;
    e[static_cast<std::size_t>(y2) * m + y] = best;
  });
  for (int y = 0; y < m; ++y) e[static_cast<std::size_t>(y) * m + y] = 1.0;
  return SimilarityMatrix(m, std::move(e));
}

}  // namespace kentropy
