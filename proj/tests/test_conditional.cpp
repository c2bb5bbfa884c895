#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "kentropy/conditional.hpp"
#include "kentropy/entropy.hpp"
#include "kentropy/errors.hpp"
#include "kentropy/rng.hpp"

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

JointPmf random_joint(SubRng& rng, int nx, int ny) {
  return JointPmf(nx, ny, rng.dirichlet(nx * ny));
}

double classical_conditional(const JointPmf& j) {
  double h = 0.0;
  for (int y = 0; y < j.ny(); ++y) {
    double py = 0.0;
    for (int x = 0; x < j.nx(); ++x) py += j(x, y);
    if (py <= 0.0) continue;
    for (int x = 0; x < j.nx(); ++x) {
      double c = j(x, y) / py;
      if (c > 0.0) h -= py * c * std::log(c);
    }
  }
  return h;
}

}  // namespace

TEST_CASE("the bundled instance makes conditioning increase entropy") {
  auto [K, j] = counterexample_instance();
  REQUIRE(K.size() == 3);
  REQUIRE(j.nx() == 3);
  REQUIRE(j.ny() == 2);

  auto [px, py] = marginals(j);
  CHECK(std::abs(px[0] - 0.25) < 1e-15);
  CHECK(std::abs(px[1] - 0.25) < 1e-15);
  CHECK(std::abs(px[2] - 0.5) < 1e-15);
  CHECK(std::abs(py[0] - 0.25) < 1e-15);
  CHECK(std::abs(py[1] - 0.75) < 1e-15);

  double h_x = entropy_discrete(K, px);
  double h_cond = conditional_entropy(K, j);
  CHECK(std::abs(h_x - (0.25 * std::log(8.0 / 3.0) + 0.5 * std::log(8.0 / 7.0))) < 1e-12);
  CHECK(std::abs(h_cond - 0.25 * std::log(18.0 / 5.0)) < 1e-12);
  CHECK(h_cond > h_x);
  CHECK(mutual_information(K, j) < 0.0);
  CHECK(std::abs(mutual_information(K, j) - (h_x - h_cond)) < 1e-15);

  auto per = conditional_entropy_by_y(K, j);
  REQUIRE(per.size() == 2);
  CHECK(std::abs(per[0].first - 0.25) < 1e-15);
  CHECK(per[0].second == 0.0);  // column 0 is a point mass on state 2
  CHECK(std::abs(per[1].first - 0.75) < 1e-15);
  CHECK(std::abs(per[1].second - std::log(18.0 / 5.0) / 3.0) < 1e-12);
}

TEST_CASE("independent joints carry zero task information") {
  SubRng rng(31, 0);
  for (int t = 0; t < 50; ++t) {
    int nx = 2 + rng.next_index(5), ny = 2 + rng.next_index(5);
    auto K = random_kernel(rng, nx);
    auto px = rng.dirichlet(nx);
    auto py = rng.dirichlet(ny);
    std::vector<double> mass(static_cast<std::size_t>(nx) * ny);
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < ny; ++y)
        mass[static_cast<std::size_t>(x) * ny + y] =
            px[static_cast<std::size_t>(x)] * py[static_cast<std::size_t>(y)];
    CHECK(std::abs(mutual_information(K, JointPmf(nx, ny, mass))) < 1e-12);
  }
}

TEST_CASE("identity kernel recovers the classical quantities") {
  SubRng rng(32, 0);
  for (int t = 0; t < 50; ++t) {
    int nx = 2 + rng.next_index(5), ny = 2 + rng.next_index(5);
    auto j = random_joint(rng, nx, ny);
    auto K = SimilarityMatrix::identity(nx);
    CHECK(std::abs(conditional_entropy(K, j) - classical_conditional(j)) < 1e-12);
    auto [px, py] = marginals(j);
    double classical_mi = shannon_entropy(px) - classical_conditional(j);
    CHECK(std::abs(mutual_information(K, j) - classical_mi) < 1e-12);
    CHECK(mutual_information(K, j) >= -1e-12);  // classical MI is nonnegative
  }
}

TEST_CASE("merging X states cannot raise conditional entropy") {
  SubRng rng(33, 0);
  for (int t = 0; t < 100; ++t) {
    int nx = 3 + rng.next_index(6), ny = 2 + rng.next_index(4);
    int m = 2 + rng.next_index(nx - 2);
    auto K = random_kernel(rng, nx);
    auto j = random_joint(rng, nx, ny);
    std::vector<int> labels(static_cast<std::size_t>(nx));
    for (int x = 0; x < m; ++x) labels[static_cast<std::size_t>(x)] = x;
    for (int x = m; x < nx; ++x) labels[static_cast<std::size_t>(x)] = rng.next_index(m);
    auto rep = conditional_coarse_check(K, j, FiberMap(m, labels));
    CHECK(rep.holds);
    CHECK(rep.h_fine >= rep.h_coarse - 1e-12);
  }
}

TEST_CASE("two-state closed form matches the generic evaluator") {
  SubRng rng(34, 0);
  for (int t = 0; t < 200; ++t) {
    double k = rng.next_double(), p = rng.next_double();
    double direct = entropy_discrete(SimilarityMatrix(2, {1.0, k, k, 1.0}), Pmf({p, 1.0 - p}));
    CHECK(std::abs(binary_entropy(k, p) - direct) < 1e-13);
  }
  CHECK(binary_entropy(0.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(binary_entropy(1.0, 0.3) == 0.0);
  CHECK(binary_entropy(0.4, 0.0) == 0.0);
  CHECK(binary_entropy(0.4, 1.0) == 0.0);
}

TEST_CASE("two-state curvature is nonpositive and matches finite differences") {
  // interior spot checks against a certified central difference
  const double h = 1e-3;
  for (double k : {0.0, 0.05, 0.3, 0.7, 1.0}) {
    for (double p : {0.1, 0.35, 0.5, 0.82}) {
      double fd1 = (binary_entropy(k, p + h) - 2.0 * binary_entropy(k, p) +
                    binary_entropy(k, p - h)) / (h * h);
      double fd2 = (binary_entropy(k, p + h / 2) - 2.0 * binary_entropy(k, p) +
                    binary_entropy(k, p - h / 2)) / (h * h / 4.0);
      if (std::abs(fd2 - fd1) > 2.5e-6) continue;  // oracle cannot certify here
      CHECK(std::abs(binary_second_derivative(k, p) - fd2) < 1e-5);
    }
  }
  // nonpositivity on a dense grid, including the -infinity corner limits
  for (int a = 0; a <= 100; ++a)
    for (int b = 0; b <= 100; ++b) {
      double v = binary_second_derivative(a / 100.0, b / 100.0);
      CHECK(v <= 0.0);
    }
  CHECK(std::isinf(binary_second_derivative(0.0, 0.0)));
  CHECK(binary_second_derivative(0.0, 0.0) < 0.0);
  CHECK(binary_second_derivative(1.0, 0.5) == 0.0);  // constant entropy in k=1
}

TEST_CASE("randomized concavity search: two-state kernels are clean") {
  for (double m : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    auto rep = concavity_probe(SimilarityMatrix(2, {1.0, m, m, 1.0}), 5000, 99);
    CHECK(rep.trials == 5000);
    CHECK(rep.violations.empty());
  }
}

TEST_CASE("randomized concavity search: the 3-state instance is not concave") {
  auto [K, j] = counterexample_instance();
  (void)j;
  auto rep = concavity_probe(K, 20000, 1);
  CHECK_FALSE(rep.violations.empty());
  // violations are real: re-check the reported mixtures by hand
  for (std::size_t i = 0; i < std::min<std::size_t>(rep.violations.size(), 5); ++i) {
    const auto& v = rep.violations[i];
    Pmf p1(v.p1), p2(v.p2);
    std::vector<double> mixw(3);
    for (int x = 0; x < 3; ++x)
      mixw[static_cast<std::size_t>(x)] =
          v.lambda * p1[x] + (1.0 - v.lambda) * p2[x];
    double lhs = entropy_discrete(K, Pmf(mixw));
    double rhs = v.lambda * entropy_discrete(K, p1) + (1.0 - v.lambda) * entropy_discrete(K, p2);
    CHECK(lhs < rhs - 1e-10);
    CHECK(std::abs((lhs - rhs) - v.gap) < 1e-12);
  }
  // deterministic in the seed
  auto rep2 = concavity_probe(K, 20000, 1);
  REQUIRE(rep2.violations.size() == rep.violations.size());
  CHECK(rep2.violations.front().trial == rep.violations.front().trial);
  CHECK(rep2.violations.front().gap == rep.violations.front().gap);
}

TEST_CASE("symmetrized information agrees with a hand-rolled product computation") {
  SubRng rng(35, 0);
  for (int t = 0; t < 20; ++t) {
    int nx = 2 + rng.next_index(3), ny = 2 + rng.next_index(3);
    auto K_X = random_kernel(rng, nx);
    auto K_Y = random_kernel(rng, ny);
    auto j = random_joint(rng, nx, ny);
    auto [px, py] = marginals(j);

    int n = nx * ny;
    std::vector<double> prod(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < ny; ++y)
        for (int x2 = 0; x2 < nx; ++x2)
          for (int y2 = 0; y2 < ny; ++y2)
            prod[static_cast<std::size_t>(x * ny + y) * n + (x2 * ny + y2)] =
                K_X(x, x2) * K_Y(y, y2);
    double h_joint = entropy_discrete(SimilarityMatrix(n, prod), Pmf(j.mass()));
    double expected = entropy_discrete(K_X, px) + entropy_discrete(K_Y, py) - h_joint;
    CHECK(std::abs(symmetric_mutual_information(K_X, K_Y, j) - expected) < 1e-12);
  }
}

TEST_CASE("shape mismatches are rejected") {
  auto K = SimilarityMatrix::identity(3);
  JointPmf j(2, 2, {0.25, 0.25, 0.25, 0.25});
  CHECK_THROWS_AS(conditional_entropy(K, j), DimensionError);
  CHECK_THROWS_AS(mutual_information(K, j), DimensionError);
  CHECK_THROWS_AS(binary_entropy(1.2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(binary_entropy(0.5, -0.1), std::invalid_argument);
}
