#include "kentropy/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kentropy/errors.hpp"
#include "kentropy/numeric.hpp"

namespace kentropy {

namespace {

double typicality_row(const SimilarityMatrix& K, const Pmf& p, int x) {
  NeumaierAcc acc;
  const int n = K.size();
  for (int j = 0; j < n; ++j) acc.add(K(x, j) * p[j]);
  return acc.total();
}

double entropy_from_typicality(const Pmf& p, const std::vector<double>& tau) {
  NeumaierAcc acc;
  for (int x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0) acc.add(-p[x] * std::log(tau[static_cast<std::size_t>(x)]));
  }
  return acc.total();
}

}  // namespace

std::vector<double> typicality(const SimilarityMatrix& K, const Pmf& p) {
  if (K.size() != p.size()) throw DimensionError("typicality: kernel and pmf sizes differ");
  std::vector<double> tau(static_cast<std::size_t>(K.size()));
  parallel_for(K.size(), [&](int x) { tau[static_cast<std::size_t>(x)] = typicality_row(K, p, x); });
  return tau;
}

double entropy_discrete(const SimilarityMatrix& K, const Pmf& p) {
  return entropy_from_typicality(p, typicality(K, p));
}

double shannon_entropy(const Pmf& p) {
  NeumaierAcc acc;
  for (int x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0) acc.add(-p[x] * std::log(p[x]));
  }
  return acc.total();
}

SimilarityMatrix partition_kernel(const PartitionLabels& labels) {
  const int n = labels.domain_size();
  std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (labels(i) == labels(j)) e[static_cast<std::size_t>(i) * n + j] = 1.0;
  return SimilarityMatrix(n, std::move(e));
}

Pmf coarse_pmf(const PartitionLabels& labels, const Pmf& p) {
  if (labels.domain_size() != p.size())
    throw DimensionError("coarse_pmf: labels and pmf sizes differ");
  std::vector<NeumaierAcc> acc(static_cast<std::size_t>(labels.classes()));
  for (int x = 0; x < p.size(); ++x) acc[static_cast<std::size_t>(labels(x))].add(p[x]);
  std::vector<double> w(acc.size());
  for (std::size_t j = 0; j < acc.size(); ++j) w[j] = acc[j].total();
  return Pmf(std::move(w));
}

std::pair<SimilarityMatrix, Pmf> permute(const SimilarityMatrix& K, const Pmf& p,
                                         const std::vector<int>& sigma) {
  const int n = K.size();
  if (p.size() != n || static_cast<int>(sigma.size()) != n)
    throw DimensionError("permute: inconsistent sizes");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int s : sigma) {
    if (s < 0 || s >= n || seen[static_cast<std::size_t>(s)])
      throw std::invalid_argument("permute: sigma is not a bijection");
    seen[static_cast<std::size_t>(s)] = 1;
  }
  std::vector<double> e(static_cast<std::size_t>(n) * n);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    w[static_cast<std::size_t>(sigma[x])] = p[x];
    for (int x2 = 0; x2 < n; ++x2)
      e[static_cast<std::size_t>(sigma[x]) * n + sigma[x2]] = K(x, x2);
  }
  return {SimilarityMatrix(n, std::move(e)), Pmf(std::move(w))};
}

std::vector<TypicalityAtom> typicality_distribution(const SimilarityMatrix& K, const Pmf& p,
                                                    double merge_tol) {
  if (merge_tol < 0.0) throw std::invalid_argument("typicality_distribution: negative merge_tol");
  std::vector<double> tau = typicality(K, p);
  std::vector<std::pair<double, double>> support;  // (tau, mass)
  for (int x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0) support.emplace_back(tau[static_cast<std::size_t>(x)], p[x]);
  }
  std::sort(support.begin(), support.end());
  std::vector<TypicalityAtom> atoms;
  std::size_t i = 0;
  while (i < support.size()) {
    double anchor = support[i].first;
    NeumaierAcc mass, weighted;
    std::size_t j = i;
    while (j < support.size() && support[j].first - anchor <= merge_tol) {
      mass.add(support[j].second);
      weighted.add(support[j].first * support[j].second);
      ++j;
    }
    atoms.push_back({weighted.total() / mass.total(), mass.total()});
    i = j;
  }
  return atoms;
}

PartitionCheck partition_necessary_condition(const SimilarityMatrix& K, const Pmf& p,
                                             double tol) {
  PartitionCheck out;
  out.atoms = typicality_distribution(K, p, tol);
  for (std::size_t i = 0; i < out.atoms.size(); ++i) {
    if (std::abs(out.atoms[i].mass - out.atoms[i].value) > tol)
      out.violating.push_back(static_cast<int>(i));
  }
  out.holds = out.violating.empty();
  return out;
}

}  // namespace kentropy
