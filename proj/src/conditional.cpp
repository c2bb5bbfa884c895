#include "kentropy/conditional.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kentropy/coarse.hpp"
#include "kentropy/entropy.hpp"
#include "kentropy/errors.hpp"
#include "kentropy/numeric.hpp"
#include "kentropy/rng.hpp"

namespace kentropy {

std::pair<Pmf, Pmf> marginals(const JointPmf& j) {
  std::vector<NeumaierAcc> ax(static_cast<std::size_t>(j.nx()));
  std::vector<NeumaierAcc> ay(static_cast<std::size_t>(j.ny()));
  for (int x = 0; x < j.nx(); ++x)
    for (int y = 0; y < j.ny(); ++y) {
      ax[static_cast<std::size_t>(x)].add(j(x, y));
      ay[static_cast<std::size_t>(y)].add(j(x, y));
    }
  std::vector<double> px(ax.size()), py(ay.size());
  for (std::size_t i = 0; i < ax.size(); ++i) px[i] = ax[i].total();
  for (std::size_t i = 0; i < ay.size(); ++i) py[i] = ay[i].total();
  return {Pmf(std::move(px)), Pmf(std::move(py))};
}

std::vector<std::pair<double, double>> conditional_entropy_by_y(const SimilarityMatrix& K_X,
                                                                const JointPmf& j) {
  if (K_X.size() != j.nx())
    throw DimensionError("conditional_entropy: kernel size differs from joint rows");
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(j.ny()), {0.0, 0.0});
  for (int y = 0; y < j.ny(); ++y) {
    NeumaierAcc col;
    for (int x = 0; x < j.nx(); ++x) col.add(j(x, y));
    double py = col.total();
    out[static_cast<std::size_t>(y)].first = py;
    if (py <= 0.0) continue;
    std::vector<double> cond(static_cast<std::size_t>(j.nx()));
    for (int x = 0; x < j.nx(); ++x) cond[static_cast<std::size_t>(x)] = j(x, y) / py;
    out[static_cast<std::size_t>(y)].second = entropy_discrete(K_X, Pmf(std::move(cond)));
  }
  return out;
}

double conditional_entropy(const SimilarityMatrix& K_X, const JointPmf& j) {
  NeumaierAcc acc;
  for (const auto& [py, h] : conditional_entropy_by_y(K_X, j))
    if (py > 0.0) acc.add(py * h);
  return acc.total();
}

double mutual_information(const SimilarityMatrix& K_X, const JointPmf& j) {
  auto [px, py] = marginals(j);
  (void)py;
  return entropy_discrete(K_X, px) - conditional_entropy(K_X, j);
}

std::pair<SimilarityMatrix, JointPmf> counterexample_instance() {
  SimilarityMatrix K(3, {1.0, 0.0, 0.5,
                         0.0, 1.0, 1.0,
                         0.5, 1.0, 1.0});
  JointPmf j(3, 2, {0.0, 0.25,
                    0.0, 0.25,
                    0.25, 0.25});
  return {std::move(K), std::move(j)};
}

ConditionalCoarseReport conditional_coarse_check(const SimilarityMatrix& K_X, const JointPmf& j,
                                                 const FiberMap& f) {
  if (f.domain_size() != j.nx())
    throw DimensionError("conditional_coarse_check: map size differs from joint rows");
  ConditionalCoarseReport r;
  r.h_fine = conditional_entropy(K_X, j);
  SimilarityMatrix K_W = induce_kernel_max(K_X, f);
  std::vector<double> wmass(static_cast<std::size_t>(f.classes()) * j.ny(), 0.0);
  for (int x = 0; x < j.nx(); ++x)
    for (int y = 0; y < j.ny(); ++y)
      wmass[static_cast<std::size_t>(f(x)) * j.ny() + y] += j(x, y);
  r.h_coarse = conditional_entropy(K_W, JointPmf(f.classes(), j.ny(), std::move(wmass)));
  r.holds = r.h_fine >= r.h_coarse - 1e-12;
  return r;
}

double binary_entropy(double k, double p) {
  if (!(k >= 0.0 && k <= 1.0)) throw std::invalid_argument("binary_entropy: k outside [0,1]");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p outside [0,1]");
  double t1 = p > 0.0 ? p * std::log(k + (1.0 - k) * p) : 0.0;
  double t2 = p < 1.0 ? (1.0 - p) * std::log(1.0 - (1.0 - k) * p) : 0.0;
  return -(t1 + t2);
}

double binary_second_derivative(double k, double p) {
  if (!(k >= 0.0 && k <= 1.0)) throw std::invalid_argument("binary_second_derivative: k outside [0,1]");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_second_derivative: p outside [0,1]");
  const double a = 1.0 - k;
  const double num = a * ((a * a * a) * p * p - (a * a * a) * p + a * a * a - 4.0 * a * a + 7.0 * a - 4.0);
  const double d1 = 1.0 - a * p;
  const double d2 = 1.0 - a * (1.0 - p);
  const double den = d1 * d1 * d2 * d2;
  // den = 0 only for the Shannon kernel at a degenerate pmf; the curvature
  // limit there is -infinity.
  if (den == 0.0) return -std::numeric_limits<double>::infinity();
  return num / den;
}

ConcavityReport concavity_probe(const SimilarityMatrix& K, std::int64_t trials,
                                std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("concavity_probe: trials must be >= 1");
  if (trials > std::numeric_limits<int>::max())
    throw std::invalid_argument("concavity_probe: trial count too large");
  const int n = K.size();
  std::vector<char> hit(static_cast<std::size_t>(trials), 0);
  parallel_for(static_cast<int>(trials), [&](int t) {
    SubRng rng(seed, static_cast<std::uint64_t>(t));
    Pmf p1(rng.dirichlet(n));
    Pmf p2(rng.dirichlet(n));
    double lam = rng.next_double();
    std::vector<double> mixw(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) mixw[static_cast<std::size_t>(x)] = lam * p1[x] + (1.0 - lam) * p2[x];
    double gap = entropy_discrete(K, Pmf(std::move(mixw))) -
                 (lam * entropy_discrete(K, p1) + (1.0 - lam) * entropy_discrete(K, p2));
    if (gap < -1e-10) hit[static_cast<std::size_t>(t)] = 1;
  });
  ConcavityReport rep;
  rep.trials = trials;
  for (std::int64_t t = 0; t < trials; ++t) {
    if (!hit[static_cast<std::size_t>(t)]) continue;
    // re-derive the trial from its substream for the report
    SubRng rng(seed, static_cast<std::uint64_t>(t));
    ConcavityViolation v;
    v.trial = t;
    Pmf p1(rng.dirichlet(n));
    Pmf p2(rng.dirichlet(n));
    v.lambda = rng.next_double();
    std::vector<double> mixw(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
      mixw[static_cast<std::size_t>(x)] = v.lambda * p1[x] + (1.0 - v.lambda) * p2[x];
    v.gap = entropy_discrete(K, Pmf(std::move(mixw))) -
            (v.lambda * entropy_discrete(K, p1) + (1.0 - v.lambda) * entropy_discrete(K, p2));
    v.p1 = p1.weights();
    v.p2 = p2.weights();
    rep.violations.push_back(std::move(v));
  }
  return rep;
}

double symmetric_mutual_information(const SimilarityMatrix& K_X, const SimilarityMatrix& K_Y,
                                    const JointPmf& j) {
  if (K_X.size() != j.nx() || K_Y.size() != j.ny())
    throw DimensionError("symmetric_mutual_information: inconsistent sizes");
  auto [px, py] = marginals(j);
  const int nx = j.nx(), ny = j.ny();
  const int nn = nx * ny;
  std::vector<double> prod(static_cast<std::size_t>(nn) * nn);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int x2 = 0; x2 < nx; ++x2)
        for (int y2 = 0; y2 < ny; ++y2)
          prod[static_cast<std::size_t>(x * ny + y) * nn + (x2 * ny + y2)] = K_X(x, x2) * K_Y(y, y2);
  SimilarityMatrix Kp(nn, std::move(prod));
  Pmf flat(std::vector<double>(j.mass()));
  return entropy_discrete(K_X, px) + entropy_discrete(K_Y, py) - entropy_discrete(Kp, flat);
}

}  // namespace kentropy
