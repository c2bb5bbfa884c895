#include "kentropy/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kentropy/entropy.hpp"
#include "kentropy/errors.hpp"
#include "kentropy/numeric.hpp"

namespace kentropy {

KernelFunction::KernelFunction(std::string name, std::function<double(double, double)> eval,
                               std::vector<double> breakpoints)
    : name_(std::move(name)), eval_(std::move(eval)), breaks_(std::move(breakpoints)) {
  if (!eval_) throw std::invalid_argument("KernelFunction: empty evaluator");
  double prev = 0.0;
  for (double b : breaks_) {
    if (!(b > prev && b < 1.0))
      throw std::invalid_argument("KernelFunction: breakpoints must be strictly increasing in (0,1)");
    prev = b;
  }
  // spot-check the promised symmetry and unit diagonal
  const int g = 32;
  std::vector<double> u(g);
  for (int k = 0; k < g; ++k) u[static_cast<std::size_t>(k)] = (k + 0.5) / g;
  for (int i = 0; i < g; ++i) {
    if (std::abs(eval_(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(i)]) - 1.0) > 1e-12)
      throw std::invalid_argument("KernelFunction: diagonal differs from 1 on the check grid");
    for (int j = i + 1; j < g; ++j) {
      double a = eval_(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(j)]);
      double b = eval_(u[static_cast<std::size_t>(j)], u[static_cast<std::size_t>(i)]);
      if (std::abs(a - b) > 1e-12)
        throw std::invalid_argument("KernelFunction: asymmetry on the check grid");
    }
  }
}

namespace {

std::vector<double> parse_params(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    std::string tok = s.substr(pos, next - pos);
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("kernel spec: bad number '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("kernel spec: bad number '" + tok + "'");
    out.push_back(v);
    pos = next + 1;
  }
  return out;
}

}  // namespace

KernelFunction parse_kernel_spec(const std::string& spec) {
  if (spec == "ones") {
    return KernelFunction("ones", [](double, double) { return 1.0; });
  }
  std::size_t colon = spec.find(':');
  std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
  std::string tail = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  if (head == "gauss") {
    auto par = parse_params(tail);
    if (par.size() != 1 || !(par[0] > 0.0))
      throw std::invalid_argument("kernel spec: gauss needs one positive length parameter");
    double ell2 = par[0] * par[0];
    return KernelFunction(spec, [ell2](double u, double v) {
      double d = u - v;
      return std::exp(-d * d / ell2);
    });
  }
  if (head == "exp") {
    auto par = parse_params(tail);
    if (par.size() != 2 || !(par[0] > 0.0) || !(par[1] > 0.0))
      throw std::invalid_argument("kernel spec: exp needs positive delta and alpha");
    double delta = par[0], alpha = par[1];
    return KernelFunction(spec, [delta, alpha](double u, double v) {
      double d = std::abs(u - v);
      return d == 0.0 ? 1.0 : std::exp(-delta * std::pow(d, alpha));
    });
  }
  if (head == "partition") {
    auto breaks = parse_params(tail);
    if (breaks.empty()) throw std::invalid_argument("kernel spec: partition needs breakpoints");
    auto block_of = [breaks](double u) {
      return static_cast<int>(std::upper_bound(breaks.begin(), breaks.end(), u) - breaks.begin());
    };
    return KernelFunction(
        spec, [block_of](double u, double v) { return block_of(u) == block_of(v) ? 1.0 : 0.0; },
        breaks);
  }
  throw std::invalid_argument("kernel spec: unknown form '" + spec + "'");
}

StepKernel::StepKernel(int n, std::vector<double> block) : n_(n), b_(std::move(block)) {
  if (n <= 0) throw std::invalid_argument("StepKernel: size must be positive");
  if (b_.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("StepKernel: wrong block count");
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      double x = b_[static_cast<std::size_t>(i) * n_ + j];
      double y = b_[static_cast<std::size_t>(j) * n_ + i];
      if (std::abs(x - y) > 1e-12) throw std::invalid_argument("StepKernel: asymmetry beyond 1e-12");
      double avg = 0.5 * (x + y);
      b_[static_cast<std::size_t>(i) * n_ + j] = avg;
      b_[static_cast<std::size_t>(j) * n_ + i] = avg;
    }
}

StepKernel block_average(const KernelFunction& K, int n, int q) {
  if (n < 1 || q < 1) throw std::invalid_argument("block_average: n and q must be >= 1");
  QuadRule rule = gauss_legendre_unit(q);
  std::vector<double> b(static_cast<std::size_t>(n) * n);
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) cells.emplace_back(i, j);
  parallel_for(static_cast<int>(cells.size()), [&](int k) {
    auto [i, j] = cells[static_cast<std::size_t>(k)];
    NeumaierAcc acc;
    for (int a = 0; a < q; ++a) {
      double ua = (i + rule.node[static_cast<std::size_t>(a)]) / n;
      double wa = rule.weight[static_cast<std::size_t>(a)];
      for (int c = 0; c < q; ++c) {
        double vc = (j + rule.node[static_cast<std::size_t>(c)]) / n;
        acc.add(wa * rule.weight[static_cast<std::size_t>(c)] * K(ua, vc));
      }
    }
    double v = acc.total();
    b[static_cast<std::size_t>(i) * n + j] = v;
    b[static_cast<std::size_t>(j) * n + i] = v;
  });
  return StepKernel(n, std::move(b));
}

SimilarityMatrix diagonal_repair(const StepKernel& S) {
  std::vector<double> e(S.block());
  const int n = S.size();
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = 1.0;
  return SimilarityMatrix(n, std::move(e));
}

namespace {

std::vector<double> row_means(const StepKernel& S) {
  const int n = S.size();
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    NeumaierAcc acc;
    for (int j = 0; j < n; ++j) acc.add(S(i, j));
    t[static_cast<std::size_t>(i)] = acc.total() / n;
  }
  return t;
}

}  // namespace

double step_entropy(const StepKernel& S) {
  const int n = S.size();
  std::vector<double> t = row_means(S);
  NeumaierAcc acc;
  for (int i = 0; i < n; ++i) {
    double ti = t[static_cast<std::size_t>(i)];
    if (ti <= 0.0) return std::numeric_limits<double>::infinity();
    acc.add(-std::log(ti) / n);
  }
  return acc.total();
}

namespace {

// Panel decomposition of [0,1] at the kernel's breakpoints: per-panel
// Gauss-Legendre nodes with weights scaled by panel length. halve=true splits
// every panel at its midpoint; the inner integral uses that variant so inner
// and outer node sets never coincide (a shared node would fake a typicality
// contribution for near-degenerate kernels and defeat the floor guard).
QuadRule paneled_rule(const KernelFunction& K, int q, bool halve) {
  std::vector<double> edges{0.0};
  for (double b : K.breakpoints()) {
    if (halve) edges.push_back(0.5 * (edges.back() + b));
    edges.push_back(b);
  }
  if (halve) edges.push_back(0.5 * (edges.back() + 1.0));
  edges.push_back(1.0);
  QuadRule base = gauss_legendre_unit(q);
  QuadRule out;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    double a = edges[s], b = edges[s + 1];
    for (int k = 0; k < q; ++k) {
      out.node.push_back(a + (b - a) * base.node[static_cast<std::size_t>(k)]);
      out.weight.push_back((b - a) * base.weight[static_cast<std::size_t>(k)]);
    }
  }
  return out;
}

}  // namespace

double continuous_entropy_reference(const KernelFunction& K, int q_outer, int q_inner) {
  if (q_outer < 1 || q_inner < 1)
    throw std::invalid_argument("continuous_entropy_reference: quadrature sizes must be >= 1");
  QuadRule outer = paneled_rule(K, q_outer, false);
  QuadRule inner = paneled_rule(K, q_inner, true);
  const int no = static_cast<int>(outer.node.size());
  std::vector<double> tau(static_cast<std::size_t>(no));
  parallel_for(no, [&](int a) {
    NeumaierAcc acc;
    for (std::size_t c = 0; c < inner.node.size(); ++c)
      acc.add(inner.weight[c] * K(outer.node[static_cast<std::size_t>(a)], inner.node[c]));
    tau[static_cast<std::size_t>(a)] = acc.total();
  });
  for (int a = 0; a < no; ++a) {
    if (!(tau[static_cast<std::size_t>(a)] > 1e-6))
      throw TypicalityFloorError("continuous_entropy_reference: typicality " +
                                 std::to_string(tau[static_cast<std::size_t>(a)]) +
                                 " at node " + std::to_string(outer.node[static_cast<std::size_t>(a)]));
  }
  NeumaierAcc acc;
  for (int a = 0; a < no; ++a)
    acc.add(-outer.weight[static_cast<std::size_t>(a)] * std::log(tau[static_cast<std::size_t>(a)]));
  return acc.total();
}

ConvergenceTable convergence_table(const KernelFunction& K, const std::vector<int>& ns, int q) {
  if (ns.empty()) throw std::invalid_argument("convergence_table: no grid sizes");
  ConvergenceTable out;
  out.reference = continuous_entropy_reference(K, 128, 128);
  for (int n : ns) {
    ConvergenceRow row;
    row.n = n;
    StepKernel S = block_average(K, n, q);
    row.h_block = step_entropy(S);
    row.h_repaired = entropy_discrete(diagonal_repair(S), Pmf::uniform(n));
    row.repair_gap = row.h_block - row.h_repaired;
    std::vector<double> t = row_means(S);
    double eps = *std::min_element(t.begin(), t.end());
    row.repair_bound =
        eps > 0.0 ? 1.0 / (eps * n) : std::numeric_limits<double>::infinity();
    out.rows.push_back(row);
  }
  return out;
}

double l1_entropy_bound(const StepKernel& S1, const StepKernel& S2, double eps) {
  if (S1.size() != S2.size()) throw DimensionError("l1_entropy_bound: sizes differ");
  if (!(eps > 0.0)) throw std::invalid_argument("l1_entropy_bound: eps must be positive");
  std::vector<double> t1 = row_means(S1), t2 = row_means(S2);
  double floor1 = *std::min_element(t1.begin(), t1.end());
  double floor2 = *std::min_element(t2.begin(), t2.end());
  if (floor1 < eps || floor2 < eps)
    throw std::invalid_argument("l1_entropy_bound: eps is not a lower typicality bound");
  const int n = S1.size();
  NeumaierAcc acc;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc.add(std::abs(S1(i, j) - S2(i, j)));
  double bound = acc.total() / (static_cast<double>(n) * n) / eps;
  // exact statement; 1e-12 absorbs reduction roundoff only
  if (std::abs(step_entropy(S1) - step_entropy(S2)) > bound + 1e-12)
    throw std::logic_error("l1_entropy_bound: entropy difference exceeds the certified bound");
  return bound;
}

StepKernel embed_discrete(const SimilarityMatrix& K, const Pmf& p) {
  if (K.size() != p.size()) throw DimensionError("embed_discrete: kernel and pmf sizes differ");
  const int n = p.size();
  const int max_n = 1000000;
  int N = 0;
  std::vector<long long> counts(static_cast<std::size_t>(n));
  for (int cand = 1; cand <= max_n; ++cand) {
    bool ok = true;
    long long total = 0;
    for (int x = 0; x < n && ok; ++x) {
      double scaled = p[x] * cand;
      long long c = std::llround(scaled);
      if (c < 0 || std::abs(scaled - static_cast<double>(c)) > 1e-9) ok = false;
      counts[static_cast<std::size_t>(x)] = c;
      total += c;
    }
    if (ok && total == cand) {
      N = cand;
      break;
    }
  }
  if (N == 0)
    throw std::invalid_argument("embed_discrete: pmf not resolvable on any grid up to 10^6");
  std::vector<int> owner(static_cast<std::size_t>(N));
  int cell = 0;
  for (int x = 0; x < n; ++x)
    for (long long i = 0; i < counts[static_cast<std::size_t>(x)]; ++i)
      owner[static_cast<std::size_t>(cell++)] = x;
  std::vector<double> b(static_cast<std::size_t>(N) * N);
  for (int u = 0; u < N; ++u)
    for (int v = 0; v < N; ++v)
      b[static_cast<std::size_t>(u) * N + v] = K(owner[static_cast<std::size_t>(u)],
                                                 owner[static_cast<std::size_t>(v)]);
  return StepKernel(N, std::move(b));
}

}  // namespace kentropy
