#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "kentropy/types.hpp"

namespace kentropy {

// Fiberwise maximum rule: K_Y[y][y'] = max K_X over f^-1(y) x f^-1(y').
// Diagonal is always 1; a pair involving an empty fiber gets 0 off-diagonal.
SimilarityMatrix induce_kernel_max(const SimilarityMatrix& K_X, const FiberMap& f);

// Back-composition: K_f[x][x'] = K_Y[f(x)][f(x')].
SimilarityMatrix pullback(const SimilarityMatrix& K_Y, const FiberMap& f);

// q[y] = sum_{f(x)=y} p[x].
Pmf pushforward_pmf(const FiberMap& f, const Pmf& p);

struct DpiReport {
  SimilarityMatrix k_y;
  double h_x = 0.0;
  double h_f = 0.0;
  double h_y = 0.0;
  bool dpi_holds = false;        // h_x >= h_f - 1e-12
  bool backcomp_equal = false;   // |h_f - h_y| <= 1e-12
};

// Computes H_X, H under the back-composed kernel, and H of the pushforward
// under the induced kernel. use_supported switches the induction rule to the
// support-restricted maximum.
DpiReport dpi_report(const SimilarityMatrix& K_X, const Pmf& p, const FiberMap& f,
                     bool use_supported = false);

// Entropy of the two-state kernel with off-diagonal m at the uniform pmf:
// log(2/(1+m)), strictly decreasing in m.
double two_point_entropy(double m);

struct AdversaryWitness {
  int x1 = 0, x2 = 0;
  Pmf pmf;  // mass 1/2 on each of x1, x2
};

// Searches (row-major) for a pair where the candidate's back-composition drops
// strictly below K_X. The returned two-point pmf then has
// H_{K_X} < H under the candidate pullback, certifying that any entry below
// the fiber maximum breaks the inequality. Empty result means the candidate's
// pullback dominates K_X everywhere.
std::optional<AdversaryWitness> minimality_adversary(const SimilarityMatrix& K_X,
                                                     const FiberMap& f,
                                                     const SimilarityMatrix& K_Y_candidate);

// Fiberwise maximum restricted to the support of p. Classes with zero mass get
// 0 off-diagonal; the diagonal is 1 by convention.
SimilarityMatrix induce_kernel_supported(const SimilarityMatrix& K_X, const Pmf& p,
                                         const FiberMap& f);

// Empirical fiberwise maximum from labeled samples: K_Y[y][y'] is the max of
// kernel_eval over observed cross pairs. A downward-biased estimate of the
// support maximum. samples holds (class_label, point_id); classes = max label + 1
// unless given explicitly, and every class must have at least one sample.
SimilarityMatrix induce_kernel_from_samples(const std::vector<std::pair<int, int>>& samples,
                                            const std::function<double(int, int)>& kernel_eval,
                                            int classes = -1);

}  // namespace kentropy
