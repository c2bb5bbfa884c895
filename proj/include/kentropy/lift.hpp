#pragma once

#include "kentropy/types.hpp"

namespace kentropy {

// mass[x][y] = p[x] * P[x][y].
JointPmf joint_from_channel(const Pmf& p, const MarkovChannel& P);

// Bayes rule: posterior over inputs given output y. Throws on nu(y) = 0.
Pmf posterior(const Pmf& p, const MarkovChannel& P, int y);

// Output marginal nu[y] = sum_x p[x] P[x][y].
Pmf output_marginal(const Pmf& p, const MarkovChannel& P);

// Law-induced kernel on outputs: for y != y' with positive marginals, the max
// of K over support(posterior_y) x support(posterior_y'). Diagonal 1;
// zero-marginal outputs get 0 off-diagonal.
SimilarityMatrix induced_output_kernel(const SimilarityMatrix& K, const Pmf& p,
                                       const MarkovChannel& P);

struct MarkovDpiReport {
  SimilarityMatrix k_out;
  Pmf nu;
  double h_in = 0.0;
  double h_out = 0.0;
  bool holds = false;  // h_out <= h_in + 1e-12
};

MarkovDpiReport markov_dpi_report(const SimilarityMatrix& K, const Pmf& p,
                                  const MarkovChannel& P);

// Kernel on n*r states ignoring the copy index: lifted[(x,i)][(x',i')] = K[x][x'].
// Flattened index is x*r + i. Entropy at p (x) uniform(r) equals entropy at p.
SimilarityMatrix lift_kernel(const SimilarityMatrix& K, int r);

// p (x) uniform(r) on the lifted index space.
Pmf lift_pmf(const Pmf& p, int r);

// Deterministic realization of a channel whose probabilities are multiples of
// 1/r (within 1e-9): state (x,i) maps to the output owning copy i, copies
// assigned in increasing output order. Throws ChannelError otherwise.
FiberMap realize_channel(const MarkovChannel& P, int r);

}  // namespace kentropy
