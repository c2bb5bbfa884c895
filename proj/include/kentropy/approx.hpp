#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kentropy/types.hpp"

namespace kentropy {

// Similarity kernel on [0,1]^2 given by an evaluator. Symmetry and unit
// diagonal are spot-checked on a 32-point grid at construction. breakpoints
// lists interior discontinuity locations (used to split reference-integral
// panels); smooth kernels leave it empty.
class KernelFunction {
 public:
  KernelFunction(std::string name, std::function<double(double, double)> eval,
                 std::vector<double> breakpoints = {});

  double operator()(double u, double v) const { return eval_(u, v); }
  const std::string& name() const { return name_; }
  const std::vector<double>& breakpoints() const { return breaks_; }

 private:
  std::string name_;
  std::function<double(double, double)> eval_;
  std::vector<double> breaks_;
};

// Grammar: "gauss:<ell>" | "exp:<delta>,<alpha>" | "partition:<b1>,<b2>,..." | "ones".
KernelFunction parse_kernel_spec(const std::string& spec);

// Block-constant kernel on the uniform n-grid of [0,1]^2.
class StepKernel {
 public:
  StepKernel() = default;
  StepKernel(int n, std::vector<double> block);  // symmetric within 1e-12, averaged

  int size() const { return n_; }
  double operator()(int i, int j) const { return b_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<double>& block() const { return b_; }

 private:
  int n_ = 0;
  std::vector<double> b_;
};

// block[i][j] = n^2 * integral of K over I_i x I_j, via tensor Gauss-Legendre
// with q nodes per axis. Upper triangle computed, mirrored (exact symmetry).
StepKernel block_average(const KernelFunction& K, int n, int q);

// Copies blocks and forces the diagonal to 1.
SimilarityMatrix diagonal_repair(const StepKernel& S);

// Entropy of the block matrix at the uniform pmf over n cells. +infinity when
// some row mean is 0.
double step_entropy(const StepKernel& S);

// Nested Gauss-Legendre estimate of -integral log tau. Panels are split at the
// kernel's breakpoints. Throws TypicalityFloorError when the typicality at any
// outer node is <= 1e-6 (entropy may be infinite; quadrature cannot certify).
double continuous_entropy_reference(const KernelFunction& K, int q_outer = 128,
                                    int q_inner = 128);

struct ConvergenceRow {
  int n = 0;
  double h_block = 0.0;
  double h_repaired = 0.0;
  double repair_gap = 0.0;    // h_block - h_repaired, in [0, repair_bound]
  double repair_bound = 0.0;  // 1/(eps*n), eps = min block-row mean
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double reference = 0.0;  // continuous_entropy_reference at q=128
};

ConvergenceTable convergence_table(const KernelFunction& K, const std::vector<int>& ns, int q);

// (1/n^2) sum |S1 - S2| / eps; eps must lower-bound both row-mean typicality
// vectors (verified). The entropy difference is checked against the bound and
// a logic_error signals the (impossible) violation.
double l1_entropy_bound(const StepKernel& S1, const StepKernel& S2, double eps);

// Uniform representation of a discrete space: lays out state x over an
// interval of length p[x] (in index order) on the smallest grid N <= 10^6
// resolving all weights, then copies K blockwise. step_entropy of the result
// equals entropy_discrete(K, p).
StepKernel embed_discrete(const SimilarityMatrix& K, const Pmf& p);

}  // namespace kentropy
