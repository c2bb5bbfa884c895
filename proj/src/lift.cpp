#include "kentropy/lift.hpp"

#include <cmath>
#include <stdexcept>

#include "kentropy/coarse.hpp"
#include "kentropy/entropy.hpp"
#include "kentropy/errors.hpp"
#include "kentropy/numeric.hpp"

namespace kentropy {

JointPmf joint_from_channel(const Pmf& p, const MarkovChannel& P) {
  if (p.size() != P.nx()) throw DimensionError("joint_from_channel: pmf size differs from channel rows");
  std::vector<double> mass(static_cast<std::size_t>(P.nx()) * P.ny());
  for (int x = 0; x < P.nx(); ++x)
    for (int y = 0; y < P.ny(); ++y) mass[static_cast<std::size_t>(x) * P.ny() + y] = p[x] * P(x, y);
  return JointPmf(P.nx(), P.ny(), std::move(mass));
}

Pmf output_marginal(const Pmf& p, const MarkovChannel& P) {
  if (p.size() != P.nx()) throw DimensionError("output_marginal: pmf size differs from channel rows");
  std::vector<NeumaierAcc> acc(static_cast<std::size_t>(P.ny()));
  for (int x = 0; x < P.nx(); ++x)
    for (int y = 0; y < P.ny(); ++y) acc[static_cast<std::size_t>(y)].add(p[x] * P(x, y));
  std::vector<double> nu(acc.size());
  for (std::size_t y = 0; y < acc.size(); ++y) nu[y] = acc[y].total();
  return Pmf(std::move(nu));
}

Pmf posterior(const Pmf& p, const MarkovChannel& P, int y) {
  if (p.size() != P.nx()) throw DimensionError("posterior: pmf size differs from channel rows");
  if (y < 0 || y >= P.ny()) throw std::invalid_argument("posterior: output index out of range");
  NeumaierAcc acc;
  for (int x = 0; x < P.nx(); ++x) acc.add(p[x] * P(x, y));
  double nu = acc.total();
  if (nu <= 0.0) throw std::invalid_argument("posterior: observation has zero probability");
  std::vector<double> w(static_cast<std::size_t>(P.nx()));
  for (int x = 0; x < P.nx(); ++x) w[static_cast<std::size_t>(x)] = p[x] * P(x, y) / nu;
  return Pmf(std::move(w));
}

SimilarityMatrix induced_output_kernel(const SimilarityMatrix& K, const Pmf& p,
                                       const MarkovChannel& P) {
  if (K.size() != p.size() || p.size() != P.nx())
    throw DimensionError("induced_output_kernel: inconsistent sizes");
  const int ny = P.ny();
  // posterior supports: x contributes to output y iff p[x] P[x][y] > 0
  std::vector<std::vector<int>> supp(static_cast<std::size_t>(ny));
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < P.nx(); ++x)
      if (p[x] * P(x, y) > 0.0) supp[static_cast<std::size_t>(y)].push_back(x);
  std::vector<double> e(static_cast<std::size_t>(ny) * ny, 0.0);
  for (int y = 0; y < ny; ++y) {
    e[static_cast<std::size_t>(y) * ny + y] = 1.0;
    for (int y2 = y + 1; y2 < ny; ++y2) {
      double best = 0.0;
      for (int x : supp[static_cast<std::size_t>(y)])
        for (int x2 : supp[static_cast<std::size_t>(y2)]) best = std::max(best, K(x, x2));
      e[static_cast<std::size_t>(y) * ny + y2] = best;
      e[static_cast<std::size_t>(y2) * ny + y] = best;
    }
  }
  return SimilarityMatrix(ny, std::move(e));
}

MarkovDpiReport markov_dpi_report(const SimilarityMatrix& K, const Pmf& p,
                                  const MarkovChannel& P) {
  MarkovDpiReport r;
  r.k_out = induced_output_kernel(K, p, P);
  r.nu = output_marginal(p, P);
  r.h_in = entropy_discrete(K, p);
  r.h_out = entropy_discrete(r.k_out, r.nu);
  r.holds = r.h_out <= r.h_in + 1e-12;
  return r;
}

SimilarityMatrix lift_kernel(const SimilarityMatrix& K, int r) {
  if (r < 1) throw std::invalid_argument("lift_kernel: r must be >= 1");
  const int n = K.size();
  const int nr = n * r;
  std::vector<double> e(static_cast<std::size_t>(nr) * nr);
  for (int x = 0; x < n; ++x)
    for (int i = 0; i < r; ++i)
      for (int x2 = 0; x2 < n; ++x2)
        for (int i2 = 0; i2 < r; ++i2)
          e[static_cast<std::size_t>(x * r + i) * nr + (x2 * r + i2)] = K(x, x2);
  return SimilarityMatrix(nr, std::move(e));
}

Pmf lift_pmf(const Pmf& p, int r) {
  if (r < 1) throw std::invalid_argument("lift_pmf: r must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(p.size()) * r);
  for (int x = 0; x < p.size(); ++x)
    for (int i = 0; i < r; ++i) w[static_cast<std::size_t>(x * r + i)] = p[x] / r;
  return Pmf(std::move(w));
}

FiberMap realize_channel(const MarkovChannel& P, int r) {
  if (r < 1) throw std::invalid_argument("realize_channel: r must be >= 1");
  const int nx = P.nx(), ny = P.ny();
  std::vector<int> labels(static_cast<std::size_t>(nx) * r);
  for (int x = 0; x < nx; ++x) {
    long long assigned = 0;
    for (int y = 0; y < ny; ++y) {
      double scaled = P(x, y) * r;
      long long c = std::llround(scaled);
      if (std::abs(scaled - static_cast<double>(c)) > 1e-9 * r || c < 0)
        throw ChannelError("realize_channel: entry (" + std::to_string(x) + "," + std::to_string(y) +
                           ") is not a multiple of 1/" + std::to_string(r));
      for (long long i = 0; i < c; ++i) {
        if (assigned + i >= r) throw ChannelError("realize_channel: row copy count exceeds r");
        labels[static_cast<std::size_t>(x) * r + assigned + i] = y;
      }
      assigned += c;
    }
    if (assigned != r)
      throw ChannelError("realize_channel: row " + std::to_string(x) + " resolves to " +
                         std::to_string(assigned) + "/" + std::to_string(r) + " copies");
  }
  return FiberMap(ny, std::move(labels));
}

}  // namespace kentropy
