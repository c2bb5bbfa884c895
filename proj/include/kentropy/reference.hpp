#pragma once

#include <vector>

#include "kentropy/approx.hpp"
#include "kentropy/taskgain.hpp"
#include "kentropy/types.hpp"

// Serial reference implementations of the parallelized kernels. Kept plain on
// purpose: tests assert the OpenMP paths reproduce these bit for bit, and the
// bench target reports the speedup against them.
namespace kentropy::ref {

std::vector<double> typicality(const SimilarityMatrix& K, const Pmf& p);
double entropy_discrete(const SimilarityMatrix& K, const Pmf& p);
SimilarityMatrix induce_kernel_max(const SimilarityMatrix& K_X, const FiberMap& f);
StepKernel block_average(const KernelFunction& K, int n, int q);
double entropy_from_samples(const SampleSet& s, const EstimatorOptions& opt = {});

}  // namespace kentropy::ref
