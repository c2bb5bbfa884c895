#pragma once

#include <cstddef>
#include <vector>

namespace kentropy {

// Plain symmetric matrix without range constraints. Used where a kernel-shaped
// result may legitimately leave [0,1]-with-unit-diagonal territory (minimum
// envelopes, predictive pullbacks, distance matrices).
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n, double fill = 0.0);
  SymMatrix(int n, std::vector<double> values);  // requires symmetry within 1e-12, averages

  int size() const { return n_; }
  double operator()(int i, int j) const { return a_[idx(i, j)]; }
  void set(int i, int j, double v) { a_[idx(i, j)] = v; a_[idx(j, i)] = v; }
  const std::vector<double>& values() const { return a_; }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
  int n_ = 0;
  std::vector<double> a_;
};

// Symmetric matrix with entries in [0,1] and unit diagonal. Construction
// symmetrizes by averaging (rejecting asymmetry beyond 1e-12), snaps the
// diagonal to exactly 1 (rejecting deviations beyond 1e-12), and clamps
// roundoff-level range overshoot (rejecting anything beyond 1e-12).
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  SimilarityMatrix(int n, std::vector<double> entries);

  static SimilarityMatrix identity(int n);
  static SimilarityMatrix ones(int n);

  int size() const { return n_; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<double>& entries() const { return a_; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// Probability mass function. Weights must be nonnegative and sum to 1 within
// 1e-9; stored renormalized.
class Pmf {
 public:
  Pmf() = default;
  explicit Pmf(std::vector<double> weights);

  static Pmf uniform(int n);
  static Pmf delta(int n, int x);

  int size() const { return n_; }
  double operator[](int x) const { return w_[static_cast<std::size_t>(x)]; }
  const std::vector<double>& weights() const { return w_; }

 private:
  int n_ = 0;
  std::vector<double> w_;
};

// Joint pmf over a product of two finite spaces, row-major mass[x][y].
// Total mass within 1e-9 of 1, stored renormalized.
class JointPmf {
 public:
  JointPmf() = default;
  JointPmf(int nx, int ny, std::vector<double> mass);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double operator()(int x, int y) const { return m_[static_cast<std::size_t>(x) * ny_ + y]; }
  const std::vector<double>& mass() const { return m_; }

 private:
  int nx_ = 0, ny_ = 0;
  std::vector<double> m_;
};

// Label array encoding a map from {0..n-1} onto class indices {0..m-1}.
// Empty fibers are permitted.
class FiberMap {
 public:
  FiberMap() = default;
  FiberMap(int classes, std::vector<int> labels);

  int domain_size() const { return static_cast<int>(labels_.size()); }
  int classes() const { return m_; }
  int operator()(int x) const { return labels_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& labels() const { return labels_; }
  std::vector<std::vector<int>> fibers() const;
  bool surjective() const;

 private:
  int m_ = 0;
  std::vector<int> labels_;
};

// FiberMap whose every class is hit at least once.
class PartitionLabels : public FiberMap {
 public:
  PartitionLabels() = default;
  PartitionLabels(int classes, std::vector<int> labels);
};

// Row-stochastic matrix; each row a pmf within 1e-9, stored renormalized per row.
class MarkovChannel {
 public:
  MarkovChannel() = default;
  MarkovChannel(int nx, int ny, std::vector<double> rows);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double operator()(int x, int y) const { return r_[static_cast<std::size_t>(x) * ny_ + y]; }
  const std::vector<double>& rows() const { return r_; }

 private:
  int nx_ = 0, ny_ = 0;
  std::vector<double> r_;
};

struct TypicalityAtom {
  double value = 0.0;
  double mass = 0.0;
};

}  // namespace kentropy
