#include "kentropy/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kentropy/numeric.hpp"

namespace kentropy {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

SymMatrix::SymMatrix(int n, double fill)
    : n_(n), a_(static_cast<std::size_t>(n) * n, fill) {
  require(n > 0, "SymMatrix: size must be positive");
}

SymMatrix::SymMatrix(int n, std::vector<double> values) : n_(n), a_(std::move(values)) {
  require(n > 0, "SymMatrix: size must be positive");
  require(a_.size() == static_cast<std::size_t>(n) * n, "SymMatrix: wrong value count");
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      double x = a_[idx(i, j)], y = a_[idx(j, i)];
      require(std::abs(x - y) <= 1e-12, "SymMatrix: asymmetry beyond 1e-12");
      double avg = 0.5 * (x + y);
      a_[idx(i, j)] = avg;
      a_[idx(j, i)] = avg;
    }
  }
}

SimilarityMatrix::SimilarityMatrix(int n, std::vector<double> entries)
    : n_(n), a_(std::move(entries)) {
  require(n > 0, "SimilarityMatrix: size must be positive");
  require(a_.size() == static_cast<std::size_t>(n) * n, "SimilarityMatrix: wrong entry count");
  auto at = [&](int i, int j) -> double& { return a_[static_cast<std::size_t>(i) * n_ + j]; };
  for (int i = 0; i < n_; ++i) {
    require(std::abs(at(i, i) - 1.0) <= 1e-12, "SimilarityMatrix: diagonal entry not 1");
    at(i, i) = 1.0;
    for (int j = i + 1; j < n_; ++j) {
      require(std::abs(at(i, j) - at(j, i)) <= 1e-12, "SimilarityMatrix: asymmetry beyond 1e-12");
      double v = 0.5 * (at(i, j) + at(j, i));
      require(v >= -1e-12 && v <= 1.0 + 1e-12, "SimilarityMatrix: entry outside [0,1]");
      v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
      at(i, j) = v;
      at(j, i) = v;
    }
  }
}

SimilarityMatrix SimilarityMatrix::identity(int n) {
  std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = 1.0;
  return SimilarityMatrix(n, std::move(e));
}

SimilarityMatrix SimilarityMatrix::ones(int n) {
  return SimilarityMatrix(n, std::vector<double>(static_cast<std::size_t>(n) * n, 1.0));
}

Pmf::Pmf(std::vector<double> weights) : n_(static_cast<int>(weights.size())), w_(std::move(weights)) {
  require(n_ > 0, "Pmf: empty weight vector");
  for (double w : w_) require(w >= 0.0, "Pmf: negative weight");
  double s = neumaier_sum(w_);
  require(std::abs(s - 1.0) <= 1e-9, "Pmf: weights sum to " + std::to_string(s));
  for (double& w : w_) w /= s;
}

Pmf Pmf::uniform(int n) {
  require(n > 0, "Pmf: size must be positive");
  return Pmf(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

Pmf Pmf::delta(int n, int x) {
  require(n > 0 && x >= 0 && x < n, "Pmf: delta index out of range");
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  w[static_cast<std::size_t>(x)] = 1.0;
  return Pmf(std::move(w));
}

JointPmf::JointPmf(int nx, int ny, std::vector<double> mass)
    : nx_(nx), ny_(ny), m_(std::move(mass)) {
  require(nx > 0 && ny > 0, "JointPmf: sizes must be positive");
  require(m_.size() == static_cast<std::size_t>(nx) * ny, "JointPmf: wrong mass count");
  for (double w : m_) require(w >= 0.0, "JointPmf: negative mass");
  double s = neumaier_sum(m_);
  require(std::abs(s - 1.0) <= 1e-9, "JointPmf: total mass " + std::to_string(s));
  for (double& w : m_) w /= s;
}

FiberMap::FiberMap(int classes, std::vector<int> labels) : m_(classes), labels_(std::move(labels)) {
  require(m_ > 0, "FiberMap: class count must be positive");
  require(!labels_.empty(), "FiberMap: empty label array");
  for (int l : labels_) require(l >= 0 && l < m_, "FiberMap: label out of range");
}

std::vector<std::vector<int>> FiberMap::fibers() const {
  std::vector<std::vector<int>> fib(static_cast<std::size_t>(m_));
  for (int x = 0; x < domain_size(); ++x) fib[static_cast<std::size_t>(labels_[x])].push_back(x);
  return fib;
}

bool FiberMap::surjective() const {
  std::vector<char> seen(static_cast<std::size_t>(m_), 0);
  for (int l : labels_) seen[static_cast<std::size_t>(l)] = 1;
  for (char s : seen)
    if (!s) return false;
  return true;
}

PartitionLabels::PartitionLabels(int classes, std::vector<int> labels)
    : FiberMap(classes, std::move(labels)) {
  require(surjective(), "PartitionLabels: some class has no members");
}

MarkovChannel::MarkovChannel(int nx, int ny, std::vector<double> rows)
    : nx_(nx), ny_(ny), r_(std::move(rows)) {
  require(nx > 0 && ny > 0, "MarkovChannel: sizes must be positive");
  require(r_.size() == static_cast<std::size_t>(nx) * ny, "MarkovChannel: wrong entry count");
  for (int x = 0; x < nx_; ++x) {
    NeumaierAcc acc;
    for (int y = 0; y < ny_; ++y) {
      double v = r_[static_cast<std::size_t>(x) * ny_ + y];
      require(v >= 0.0, "MarkovChannel: negative probability");
      acc.add(v);
    }
    double s = acc.total();
    require(std::abs(s - 1.0) <= 1e-9, "MarkovChannel: row " + std::to_string(x) + " sums to " + std::to_string(s));
    for (int y = 0; y < ny_; ++y) r_[static_cast<std::size_t>(x) * ny_ + y] /= s;
  }
}

}  // namespace kentropy
