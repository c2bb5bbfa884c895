#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <vector>

#include "kentropy/coarse.hpp"
#include "kentropy/conditional.hpp"
#include "kentropy/entropy.hpp"
#include "kentropy/reference.hpp"
#include "kentropy/rng.hpp"
#include "kentropy/taskgain.hpp"

using namespace kentropy;

namespace {

SimilarityMatrix random_kernel(SubRng& rng, int n) {
  std::vector<double> e(static_cast<std::size_t>(n) * n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = rng.next_double();
      e[static_cast<std::size_t>(i) * n + j] = v;
      e[static_cast<std::size_t>(j) * n + i] = v;
    }
  return SimilarityMatrix(n, std::move(e));
}

#ifdef _OPENMP
const int kDefaultThreads = omp_get_max_threads();
#else
const int kDefaultThreads = 1;
#endif

void set_threads(int t) {
#ifdef _OPENMP
  omp_set_num_threads(t > 0 ? t : kDefaultThreads);
#else
  (void)t;
#endif
}

const std::vector<int> kThreadCounts{1, 2, 3, 8};

}  // namespace

TEST_CASE("typicality and entropy match the serial reference bit for bit") {
  SubRng rng(61, 0);
  auto K = random_kernel(rng, 257);
  Pmf p(rng.dirichlet(257));
  auto tau_ref = ref::typicality(K, p);
  double h_ref = ref::entropy_discrete(K, p);
  for (int t : kThreadCounts) {
    set_threads(t);
    auto tau = typicality(K, p);
    REQUIRE(tau.size() == tau_ref.size());
    for (std::size_t i = 0; i < tau.size(); ++i) CHECK(tau[i] == tau_ref[i]);
    CHECK(entropy_discrete(K, p) == h_ref);
  }
  set_threads(0);
}

TEST_CASE("induced kernels match the serial reference bit for bit") {
  SubRng rng(62, 0);
  auto K = random_kernel(rng, 200);
  std::vector<int> labels(200);
  for (int x = 0; x < 17; ++x) labels[static_cast<std::size_t>(x)] = x;
  for (int x = 17; x < 200; ++x) labels[static_cast<std::size_t>(x)] = rng.next_index(17);
  FiberMap f(17, labels);
  auto expected = ref::induce_kernel_max(K, f);
  for (int t : kThreadCounts) {
    set_threads(t);
    auto got = induce_kernel_max(K, f);
    for (int a = 0; a < 17; ++a)
      for (int b = 0; b < 17; ++b) CHECK(got(a, b) == expected(a, b));
  }
  set_threads(0);
}

TEST_CASE("block averaging matches the serial reference bit for bit") {
  auto K = parse_kernel_spec("gauss:0.3");
  auto expected = ref::block_average(K, 24, 8);
  for (int t : kThreadCounts) {
    set_threads(t);
    auto got = block_average(K, 24, 8);
    REQUIRE(got.size() == expected.size());
    for (int i = 0; i < 24; ++i)
      for (int j = 0; j < 24; ++j) CHECK(got(i, j) == expected(i, j));
  }
  set_threads(0);
}

TEST_CASE("sample-set entropy matches the serial reference bit for bit") {
  SubRng rng(63, 0);
  std::vector<double> pts;
  for (int i = 0; i < 400; ++i) pts.push_back(rng.next_gauss());
  auto s = SampleSet::gauss_points(pts, 0.8);
  double expected = ref::entropy_from_samples(s);
  EstimatorOptions sub;
  sub.max_columns = 100;
  sub.subsample_seed = 3;
  double expected_sub = ref::entropy_from_samples(s, sub);
  for (int t : kThreadCounts) {
    set_threads(t);
    CHECK(entropy_from_samples(s) == expected);
    CHECK(entropy_from_samples(s, sub) == expected_sub);
  }
  set_threads(0);
}

TEST_CASE("design evaluation is identical under every thread count") {
  auto model = make_model("gauss-location:1");
  set_threads(1);
  auto base = design_objective(*model, 0.5, 16, 60, 2024);
  for (int t : kThreadCounts) {
    set_threads(t);
    auto got = design_objective(*model, 0.5, 16, 60, 2024);
    CHECK(got.u_hat == base.u_hat);
    CHECK(got.prior_entropy == base.prior_entropy);
    CHECK(got.std_error == base.std_error);
    CHECK(got.per_dataset == base.per_dataset);
  }
  set_threads(0);
}

TEST_CASE("concavity search reports identical violations under every thread count") {
  auto [K, j] = counterexample_instance();
  (void)j;
  set_threads(1);
  auto base = concavity_probe(K, 8000, 5);
  REQUIRE_FALSE(base.violations.empty());
  for (int t : kThreadCounts) {
    set_threads(t);
    auto got = concavity_probe(K, 8000, 5);
    REQUIRE(got.violations.size() == base.violations.size());
    for (std::size_t i = 0; i < got.violations.size(); ++i) {
      CHECK(got.violations[i].trial == base.violations[i].trial);
      CHECK(got.violations[i].gap == base.violations[i].gap);
      CHECK(got.violations[i].lambda == base.violations[i].lambda);
    }
  }
  set_threads(0);
}

TEST_CASE("substream draws are pure functions of (seed, stream, counter)") {
  SubRng a(42, 7);
  SubRng b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  // distinct streams decorrelate immediately
  SubRng c(42, 8);
  CHECK(SubRng(42, 7).next_u64() != c.next_u64());
  // gaussian and dirichlet paths are deterministic too
  SubRng g1(9, 1), g2(9, 1);
  for (int i = 0; i < 50; ++i) CHECK(g1.next_gauss() == g2.next_gauss());
  CHECK(g1.dirichlet(5) == g2.dirichlet(5));
}
