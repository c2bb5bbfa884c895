#include "kentropy/taskgain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "kentropy/coarse.hpp"
#include "kentropy/entropy.hpp"
#include "kentropy/errors.hpp"
#include "kentropy/numeric.hpp"

namespace kentropy {

SampleSet::SampleSet(int count, std::function<double(int, int)> kernel_eval)
    : m_(count), eval_(std::move(kernel_eval)) {
  if (m_ <= 0) throw std::invalid_argument("SampleSet: count must be positive");
  if (!eval_) throw std::invalid_argument("SampleSet: empty kernel evaluator");
  int stride = std::max(1, m_ / 32);
  for (int i = 0; i < m_; i += stride) {
    if (std::abs(eval_(i, i) - 1.0) > 1e-12)
      throw std::invalid_argument("SampleSet: kernel diagonal differs from 1");
    int j = std::min(m_ - 1, i + stride);
    if (std::abs(eval_(i, j) - eval_(j, i)) > 1e-12)
      throw std::invalid_argument("SampleSet: kernel asymmetry");
  }
}

SampleSet SampleSet::gauss_points(std::vector<double> points, double ell) {
  if (!(ell > 0.0)) throw std::invalid_argument("SampleSet: ell must be positive");
  auto pts = std::make_shared<std::vector<double>>(std::move(points));
  double ell2 = ell * ell;
  return SampleSet(static_cast<int>(pts->size()), [pts, ell2](int i, int j) {
    double d = (*pts)[static_cast<std::size_t>(i)] - (*pts)[static_cast<std::size_t>(j)];
    return std::exp(-d * d / ell2);
  });
}

SampleSet SampleSet::identity_points(std::vector<double> points) {
  auto pts = std::make_shared<std::vector<double>>(std::move(points));
  return SampleSet(static_cast<int>(pts->size()), [pts](int i, int j) {
    return (*pts)[static_cast<std::size_t>(i)] == (*pts)[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
  });
}

double entropy_from_samples(const SampleSet& s, const EstimatorOptions& opt) {
  const int m = s.count();
  if (!(opt.ridge >= 0.0)) throw std::invalid_argument("entropy_from_samples: negative ridge");
  const bool subsample = opt.max_columns > 0 && m > opt.max_columns;
  std::vector<double> tau(static_cast<std::size_t>(m));
  parallel_for(m, [&](int i) {
    NeumaierAcc acc;
    if (subsample) {
      SubRng rng(opt.subsample_seed, static_cast<std::uint64_t>(i));
      for (int c = 0; c < opt.max_columns; ++c) acc.add(s.kernel(i, rng.next_index(m)));
      tau[static_cast<std::size_t>(i)] = acc.total() / opt.max_columns;
    } else {
      for (int j = 0; j < m; ++j) acc.add(s.kernel(i, j));
      tau[static_cast<std::size_t>(i)] = acc.total() / m;
    }
  });
  NeumaierAcc acc;
  for (int i = 0; i < m; ++i) {
    double v = opt.ridge + tau[static_cast<std::size_t>(i)];
    if (!(v > 0.0))
      throw std::invalid_argument("entropy_from_samples: nonpositive smoothed typicality");
    acc.add(-std::log(v) / m);
  }
  return acc.total();
}

double realized_info_gain(const SampleSet& prior, const SampleSet& posterior,
                          const EstimatorOptions& opt) {
  return entropy_from_samples(prior, opt) - entropy_from_samples(posterior, opt);
}

namespace {

class GaussLocationModel final : public BayesToyModel {
 public:
  explicit GaussLocationModel(double ell) : ell2_(ell * ell) {
    if (!(ell > 0.0)) throw ModelError("gauss-location: ell must be positive");
  }
  double sample_prior(SubRng& rng) const override { return rng.next_gauss(); }
  double simulate_data(double latent, double design, SubRng& rng) const override {
    return latent + design * rng.next_gauss();
  }
  double sample_posterior(double data, double design, SubRng& rng) const override {
    double s2 = design * design;
    double mean = data / (1.0 + s2);
    double var = s2 / (1.0 + s2);
    return mean + std::sqrt(var) * rng.next_gauss();
  }
  double kernel(double t, double t2) const override {
    double d = t - t2;
    return std::exp(-d * d / ell2_);
  }
  std::string name() const override { return "gauss-location"; }

 private:
  double ell2_;
};

class FiniteRevealModel final : public BayesToyModel {
 public:
  explicit FiniteRevealModel(int support) : k_(support) {
    if (support < 1) throw ModelError("finite-reveal: support must be >= 1");
  }
  double sample_prior(SubRng& rng) const override {
    return static_cast<double>(rng.next_index(k_));
  }
  double simulate_data(double latent, double design, SubRng&) const override {
    return design >= 0.5 ? latent : 0.0;
  }
  double sample_posterior(double data, double design, SubRng& rng) const override {
    return design >= 0.5 ? data : static_cast<double>(rng.next_index(k_));
  }
  double kernel(double t, double t2) const override { return t == t2 ? 1.0 : 0.0; }
  std::string name() const override { return "finite-reveal"; }

 private:
  int k_;
};

}  // namespace

std::unique_ptr<BayesToyModel> make_gauss_location_model(double ell) {
  return std::make_unique<GaussLocationModel>(ell);
}

std::unique_ptr<BayesToyModel> make_finite_reveal_model(int support) {
  return std::make_unique<FiniteRevealModel>(support);
}

std::unique_ptr<BayesToyModel> make_model(const std::string& spec) {
  std::size_t colon = spec.find(':');
  if (colon == std::string::npos) throw ModelError("model spec needs '<family>:<param>'");
  std::string head = spec.substr(0, colon);
  std::string tail = spec.substr(colon + 1);
  if (head == "gauss-location") {
    std::size_t used = 0;
    double ell;
    try {
      ell = std::stod(tail, &used);
    } catch (const std::exception&) {
      throw ModelError("gauss-location: bad parameter '" + tail + "'");
    }
    if (used != tail.size()) throw ModelError("gauss-location: bad parameter '" + tail + "'");
    return make_gauss_location_model(ell);
  }
  if (head == "finite-reveal") {
    std::size_t used = 0;
    int support;
    try {
      support = std::stoi(tail, &used);
    } catch (const std::exception&) {
      throw ModelError("finite-reveal: bad parameter '" + tail + "'");
    }
    if (used != tail.size()) throw ModelError("finite-reveal: bad parameter '" + tail + "'");
    return make_finite_reveal_model(support);
  }
  throw ModelError("unknown model family '" + head + "'");
}

namespace {

constexpr std::uint64_t kPriorStream = 0x8000000000000000ull;

SampleSet points_set(const BayesToyModel& model, std::shared_ptr<std::vector<double>> pts) {
  const BayesToyModel* m = &model;
  return SampleSet(static_cast<int>(pts->size()), [m, pts](int i, int j) {
    return m->kernel((*pts)[static_cast<std::size_t>(i)], (*pts)[static_cast<std::size_t>(j)]);
  });
}

}  // namespace

DesignResult design_objective(const BayesToyModel& model, double design, int N, int M,
                              std::uint64_t seed, double ridge) {
  if (N < 1) throw std::invalid_argument("design_objective: need at least one dataset");
  if (M < 1) throw std::invalid_argument("design_objective: need at least one sample per set");
  EstimatorOptions opt;
  opt.ridge = ridge;

  DesignResult out;
  {
    SubRng rng(seed, kPriorStream);
    auto pts = std::make_shared<std::vector<double>>();
    pts->reserve(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) pts->push_back(model.sample_prior(rng));
    out.prior_entropy = entropy_from_samples(points_set(model, pts), opt);
  }

  out.per_dataset.assign(static_cast<std::size_t>(N), 0.0);
  parallel_for(N, [&](int k) {
    SubRng rng(seed, static_cast<std::uint64_t>(k));
    double latent = model.sample_prior(rng);
    double data = model.simulate_data(latent, design, rng);
    auto pts = std::make_shared<std::vector<double>>();
    pts->reserve(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) pts->push_back(model.sample_posterior(data, design, rng));
    out.per_dataset[static_cast<std::size_t>(k)] = entropy_from_samples(points_set(model, pts), opt);
  });

  NeumaierAcc acc;
  for (double h : out.per_dataset) acc.add(h);
  double mean = acc.total() / N;
  out.u_hat = out.prior_entropy - mean;
  if (N >= 2) {
    NeumaierAcc sq;
    for (double h : out.per_dataset) sq.add((h - mean) * (h - mean));
    out.std_error = std::sqrt(sq.total() / (N - 1)) / std::sqrt(static_cast<double>(N));
  }
  return out;
}

std::vector<RankedDesign> rank_designs(const BayesToyModel& model,
                                       const std::vector<double>& designs, int N, int M,
                                       std::uint64_t seed, double ridge) {
  if (designs.empty()) throw std::invalid_argument("rank_designs: no designs");
  std::vector<RankedDesign> out;
  out.reserve(designs.size());
  for (double d : designs) out.push_back({d, design_objective(model, d, N, M, seed, ridge)});
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedDesign& a, const RankedDesign& b) {
                     return a.result.u_hat > b.result.u_hat;
                   });
  return out;
}

SimilarityMatrix pullback_kernel(const FiberMap& g, const SimilarityMatrix& K_T) {
  if (g.classes() > K_T.size())
    throw DimensionError("pullback_kernel: labels exceed kernel size");
  const int n = g.domain_size();
  std::vector<double> e(static_cast<std::size_t>(n) * n);
  for (int z = 0; z < n; ++z)
    for (int z2 = 0; z2 < n; ++z2)
      e[static_cast<std::size_t>(z) * n + z2] = K_T(g(z), g(z2));
  return SimilarityMatrix(n, std::move(e));
}

SurrogateDecomposition surrogate_decomposition(const SimilarityMatrix& K_T, const FiberMap& f,
                                               const Pmf& prior, const Pmf& posterior) {
  if (K_T.size() != f.domain_size() || prior.size() != f.domain_size() ||
      posterior.size() != f.domain_size())
    throw DimensionError("surrogate_decomposition: size mismatch");
  auto coarse_entropy = [&](const Pmf& law) {
    SimilarityMatrix k = induce_kernel_supported(K_T, law, f);
    return entropy_discrete(k, pushforward_pmf(f, law));
  };
  SurrogateDecomposition d;
  double hf_prior = entropy_discrete(K_T, prior);
  double hf_post = entropy_discrete(K_T, posterior);
  double hc_prior = coarse_entropy(prior);
  double hc_post = coarse_entropy(posterior);
  d.i_fine = hf_prior - hf_post;
  d.i_sur = hc_prior - hc_post;
  d.delta_prior = hf_prior - hc_prior;
  d.delta_post = hf_post - hc_post;
  d.b_f = d.delta_prior - d.delta_post;
  if (std::abs(d.i_fine - (d.i_sur + d.b_f)) > 1e-12)
    throw std::logic_error("surrogate_decomposition: identity broken beyond roundoff");
  return d;
}

EnvelopePair envelope_kernels(const SimilarityMatrix& K_T, const FiberMap& f) {
  if (K_T.size() != f.domain_size()) throw DimensionError("envelope_kernels: size mismatch");
  auto fib = f.fibers();
  const int c = f.classes();
  for (int i = 0; i < c; ++i)
    if (fib[static_cast<std::size_t>(i)].empty())
      throw std::invalid_argument("envelope_kernels: empty fiber " + std::to_string(i));
  std::vector<double> mx(static_cast<std::size_t>(c) * c);
  SymMatrix mn(c);
  for (int a = 0; a < c; ++a)
    for (int b = a; b < c; ++b) {
      double hi = -std::numeric_limits<double>::infinity();
      double lo = std::numeric_limits<double>::infinity();
      for (int x : fib[static_cast<std::size_t>(a)])
        for (int y : fib[static_cast<std::size_t>(b)]) {
          double v = K_T(x, y);
          hi = std::max(hi, v);
          lo = std::min(lo, v);
        }
      mx[static_cast<std::size_t>(a) * c + b] = a == b ? 1.0 : hi;
      mx[static_cast<std::size_t>(b) * c + a] = a == b ? 1.0 : hi;
      mn.set(a, b, lo);
    }
  return {SimilarityMatrix(c, std::move(mx)), mn};
}

double coarse_gap_bound(const EnvelopePair& env, const Pmf& nu_C) {
  const int c = env.k_max.size();
  if (env.k_min.size() != c || nu_C.size() != c)
    throw DimensionError("coarse_gap_bound: size mismatch");
  NeumaierAcc acc;
  for (int a = 0; a < c; ++a) {
    if (nu_C[a] <= 0.0) continue;
    NeumaierAcc hi, lo;
    for (int b = 0; b < c; ++b) {
      hi.add(nu_C[b] * env.k_max(a, b));
      lo.add(nu_C[b] * env.k_min(a, b));
    }
    double tmin = lo.total();
    if (!(tmin > 0.0))
      throw TauMinError("coarse_gap_bound: minimum typicality vanishes on class " +
                        std::to_string(a));
    acc.add(nu_C[a] * std::log(hi.total() / tmin));
  }
  return acc.total();
}

RatioBound envelope_ratio_bound(const EnvelopePair& env, const Pmf& nu_C) {
  const int c = env.k_max.size();
  if (env.k_min.size() != c || nu_C.size() != c)
    throw DimensionError("envelope_ratio_bound: size mismatch");
  auto rho = [&](int a, int b) {
    double hi = env.k_max(a, b), lo = env.k_min(a, b);
    if (lo > 0.0) return hi / lo;
    return hi > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  };
  RatioBound out;
  out.per_class.assign(static_cast<std::size_t>(c), 0.0);
  double sup = 1.0;
  for (int a = 0; a < c; ++a) {
    double best = 1.0;
    for (int b = 0; b < c; ++b) best = std::max(best, rho(a, b));
    out.per_class[static_cast<std::size_t>(a)] = std::log(best);
    sup = std::max(sup, best);
  }
  // compensated summation would corrupt an infinite term into NaN
  bool unbounded = false;
  NeumaierAcc acc;
  for (int a = 0; a < c; ++a) {
    if (nu_C[a] <= 0.0) continue;
    double term = out.per_class[static_cast<std::size_t>(a)];
    if (std::isinf(term))
      unbounded = true;
    else
      acc.add(nu_C[a] * term);
  }
  out.per_class_total = unbounded ? std::numeric_limits<double>::infinity() : acc.total();
  out.global = std::log(sup);
  return out;
}

namespace {

void validate_metric(const SymMatrix& d) {
  const int n = d.size();
  for (int i = 0; i < n; ++i) {
    if (std::abs(d(i, i)) > 1e-12)
      throw std::invalid_argument("metric_envelopes: nonzero diagonal distance");
    for (int j = 0; j < n; ++j)
      if (d(i, j) < 0.0) throw std::invalid_argument("metric_envelopes: negative distance");
  }
  auto check = [&](int i, int j, int k) {
    if (d(i, k) > d(i, j) + d(j, k) + 1e-12)
      throw std::invalid_argument("metric_envelopes: triangle inequality fails at (" +
                                  std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + ")");
  };
  if (n <= 200) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) check(i, j, k);
  } else {
    SubRng rng(12345, 0);
    for (long long t = 0; t < 2000000; ++t)
      check(rng.next_index(n), rng.next_index(n), rng.next_index(n));
  }
}

}  // namespace

MetricEnvelopes metric_envelopes(const SymMatrix& dist, const FiberMap& f, double delta,
                                 double alpha) {
  if (dist.size() != f.domain_size()) throw DimensionError("metric_envelopes: size mismatch");
  if (!(delta > 0.0) || !(alpha > 0.0))
    throw std::invalid_argument("metric_envelopes: delta and alpha must be positive");
  validate_metric(dist);
  auto fib = f.fibers();
  const int c = f.classes();
  for (int i = 0; i < c; ++i)
    if (fib[static_cast<std::size_t>(i)].empty())
      throw std::invalid_argument("metric_envelopes: empty fiber " + std::to_string(i));

  MetricEnvelopes out;
  out.stats.d_min = SymMatrix(c);
  out.stats.d_max = SymMatrix(c);
  out.stats.diam.assign(static_cast<std::size_t>(c), 0.0);
  for (int a = 0; a < c; ++a)
    for (int b = a; b < c; ++b) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      for (int x : fib[static_cast<std::size_t>(a)])
        for (int y : fib[static_cast<std::size_t>(b)]) {
          double v = dist(x, y);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      out.stats.d_min.set(a, b, lo);
      out.stats.d_max.set(a, b, hi);
      if (a == b) out.stats.diam[static_cast<std::size_t>(a)] = hi;
    }

  std::vector<double> mx(static_cast<std::size_t>(c) * c);
  SymMatrix mn(c), rex(c), rcave(c), rvex(c);
  for (int a = 0; a < c; ++a)
    for (int b = a; b < c; ++b) {
      double dlo = out.stats.d_min(a, b), dhi = out.stats.d_max(a, b);
      double plo = std::pow(dlo, alpha), phi = std::pow(dhi, alpha);
      double kmax = a == b ? 1.0 : std::exp(-delta * plo);
      mx[static_cast<std::size_t>(a) * c + b] = kmax;
      mx[static_cast<std::size_t>(b) * c + a] = kmax;
      mn.set(a, b, std::exp(-delta * phi));
      rex.set(a, b, std::exp(delta * (phi - plo)));
      double dd = out.stats.diam[static_cast<std::size_t>(a)] +
                  out.stats.diam[static_cast<std::size_t>(b)];
      rcave.set(a, b, std::exp(delta * std::pow(dd, alpha)));
      rvex.set(a, b, dd == 0.0
                         ? 1.0
                         : std::exp(delta * alpha * dd * std::pow(dlo + dd, alpha - 1.0)));
    }
  out.env = {SimilarityMatrix(c, std::move(mx)), mn};
  out.rho_exact = rex;
  out.rho_bound_concave = rcave;
  out.rho_bound_convex = rvex;
  return out;
}

SymMatrix empirical_envelopes(const std::vector<std::vector<int>>& samples_by_class,
                              const std::function<double(int, int)>& kernel_eval,
                              EnvelopeMode mode, double beta) {
  const int c = static_cast<int>(samples_by_class.size());
  if (c == 0) throw std::invalid_argument("empirical_envelopes: no classes");
  for (int i = 0; i < c; ++i)
    if (samples_by_class[static_cast<std::size_t>(i)].empty())
      throw std::invalid_argument("empirical_envelopes: empty class " + std::to_string(i));
  if (mode == EnvelopeMode::kQuantile && !(beta > 0.0 && beta <= 1.0))
    throw std::invalid_argument("empirical_envelopes: beta must lie in (0,1]");
  SymMatrix out(c);
  for (int a = 0; a < c; ++a)
    for (int b = a; b < c; ++b) {
      if (a == b && mode != EnvelopeMode::kMin) {
        out.set(a, b, 1.0);
        continue;
      }
      std::vector<double> vals;
      for (int i : samples_by_class[static_cast<std::size_t>(a)])
        for (int j : samples_by_class[static_cast<std::size_t>(b)])
          vals.push_back(kernel_eval(i, j));
      double v;
      if (mode == EnvelopeMode::kMax) {
        v = *std::max_element(vals.begin(), vals.end());
      } else if (mode == EnvelopeMode::kMin) {
        v = *std::min_element(vals.begin(), vals.end());
      } else {
        std::sort(vals.begin(), vals.end());
        auto idx = static_cast<std::size_t>(
            std::ceil(beta * static_cast<double>(vals.size())) - 1.0);
        v = vals[idx];
      }
      out.set(a, b, v);
    }
  return out;
}

PredictivePullback predictive_pullback(const SimilarityMatrix& K_T, const MarkovChannel& P) {
  if (P.ny() != K_T.size()) throw DimensionError("predictive_pullback: channel output mismatch");
  const int nz = P.nx();
  const int nt = K_T.size();
  PredictivePullback out;
  out.matrix = SymMatrix(nz);
  for (int z = 0; z < nz; ++z)
    for (int z2 = z; z2 < nz; ++z2) {
      NeumaierAcc acc;
      for (int t = 0; t < nt; ++t) {
        if (P(z, t) == 0.0) continue;
        for (int t2 = 0; t2 < nt; ++t2) acc.add(P(z, t) * K_T(t, t2) * P(z2, t2));
      }
      out.matrix.set(z, z2, acc.total());
    }
  out.diagonal.resize(static_cast<std::size_t>(nz));
  out.unit_diagonal = true;
  for (int z = 0; z < nz; ++z) {
    out.diagonal[static_cast<std::size_t>(z)] = out.matrix(z, z);
    if (std::abs(out.matrix(z, z) - 1.0) > 1e-12) out.unit_diagonal = false;
  }
  return out;
}

}  // namespace kentropy
