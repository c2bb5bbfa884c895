#pragma once

#include <utility>
#include <vector>

#include "kentropy/types.hpp"

namespace kentropy {

// tau[x] = sum_x' K[x][x'] p[x']; the expected similarity of x to a random
// draw from p. Satisfies tau[x] >= p[x] (unit diagonal) and tau[x] <= 1.
std::vector<double> typicality(const SimilarityMatrix& K, const Pmf& p);

// Similarity-sensitive entropy -sum_{p[x]>0} p[x] log tau[x], natural log.
// Reduces to Shannon entropy for the identity kernel and never exceeds it.
double entropy_discrete(const SimilarityMatrix& K, const Pmf& p);

// -sum p log p with 0 log 0 = 0.
double shannon_entropy(const Pmf& p);

// 0/1 kernel: K[x][x'] = 1 iff labels agree.
SimilarityMatrix partition_kernel(const PartitionLabels& labels);

// Block masses alpha[j] = sum_{labels[x]=j} p[x].
Pmf coarse_pmf(const PartitionLabels& labels, const Pmf& p);

// Relabels states by sigma: K'[sigma(x)][sigma(x')] = K[x][x'], p'[sigma(x)] = p[x].
// Entropy is invariant under this relabeling.
std::pair<SimilarityMatrix, Pmf> permute(const SimilarityMatrix& K, const Pmf& p,
                                         const std::vector<int>& sigma);

// Law of the typicality value under p: pairs (tau(x), p[x]) over the support,
// sorted ascending and greedily merged when values lie within merge_tol of the
// cluster anchor. Atom value is the mass-weighted mean of its cluster.
std::vector<TypicalityAtom> typicality_distribution(const SimilarityMatrix& K, const Pmf& p,
                                                    double merge_tol = 1e-9);

struct PartitionCheck {
  bool holds = false;
  std::vector<TypicalityAtom> atoms;
  std::vector<int> violating;  // indices into atoms where |mass - value| > tol
};

// Necessary condition for (K,p) to behave like a finite-class partition
// kernel: each typicality atom a must carry mass a. Fuzzy kernels fail this.
PartitionCheck partition_necessary_condition(const SimilarityMatrix& K, const Pmf& p,
                                             double tol = 1e-9);

}  // namespace kentropy
