#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kentropy/types.hpp"

namespace kentropy {

// (p_X, p_Y): row and column sums of the joint mass.
std::pair<Pmf, Pmf> marginals(const JointPmf& j);

// Sum over y with p_Y(y) > 0 of p_Y(y) * H_{K_X}(X | Y=y), each term computed
// from the conditional pmf of that column.
double conditional_entropy(const SimilarityMatrix& K_X, const JointPmf& j);

// Per-column detail: (p_Y(y), H_{K_X}(X|Y=y)) for every y; zero columns get H = 0.
std::vector<std::pair<double, double>> conditional_entropy_by_y(const SimilarityMatrix& K_X,
                                                                const JointPmf& j);

// H_{K_X}(X) - H_{K_X}(X|Y). Deliberately signed: fuzzy kernels can make this
// negative, which the bundled counterexample instance exhibits.
double mutual_information(const SimilarityMatrix& K_X, const JointPmf& j);

// The 3-state kernel and 3x2 joint for which conditioning increases entropy.
std::pair<SimilarityMatrix, JointPmf> counterexample_instance();

struct ConditionalCoarseReport {
  double h_fine = 0.0;    // H_{K_X}(X|Y)
  double h_coarse = 0.0;  // H_{K_W}(W|Y) for W = f(X)
  bool holds = false;     // h_fine >= h_coarse - 1e-12
};

// Conditional coarse-graining: merging X-states by f (with the fiberwise-max
// kernel on classes) cannot increase conditional entropy.
ConditionalCoarseReport conditional_coarse_check(const SimilarityMatrix& K_X, const JointPmf& j,
                                                 const FiberMap& f);

// Closed-form two-state entropy at off-diagonal k and pmf (p, 1-p).
double binary_entropy(double k, double p);

// Second derivative in p of binary_entropy; always <= 0 (concavity). At the
// removable corner k=0, p in {0,1} the denominator vanishes and the directional
// limit -infinity is returned.
double binary_second_derivative(double k, double p);

struct ConcavityViolation {
  std::int64_t trial = 0;
  std::vector<double> p1, p2;
  double lambda = 0.0;
  double gap = 0.0;  // H(mix) - lambda H(p1) - (1-lambda) H(p2), below -1e-10
};

struct ConcavityReport {
  std::int64_t trials = 0;
  std::vector<ConcavityViolation> violations;
};

// Randomized concavity search: Dirichlet(1,..,1) pairs and uniform lambda,
// per-trial counter-based substreams so results are seed-deterministic under
// any thread count.
ConcavityReport concavity_probe(const SimilarityMatrix& K, std::int64_t trials,
                                std::uint64_t seed);

// H_{K_X}(p_X) + H_{K_Y}(p_Y) - H_{K_X (x) K_Y}(joint), with the product kernel
// on the row-major flattened space (x major, y minor).
double symmetric_mutual_information(const SimilarityMatrix& K_X, const SimilarityMatrix& K_Y,
                                    const JointPmf& j);

}  // namespace kentropy
