#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "kentropy/rng.hpp"
#include "kentropy/types.hpp"

namespace kentropy {

// A bag of M sampled task points exposed through a pairwise kernel evaluator.
// kernel_eval(i,i) == 1 is spot-checked at construction.
class SampleSet {
 public:
  SampleSet(int count, std::function<double(int, int)> kernel_eval);

  // Real-valued points under exp(-(s-t)^2/ell^2).
  static SampleSet gauss_points(std::vector<double> points, double ell);
  // Integer-coded points under the identity kernel.
  static SampleSet identity_points(std::vector<double> points);

  int count() const { return m_; }
  double kernel(int i, int j) const { return eval_(i, j); }

 private:
  int m_ = 0;
  std::function<double(int, int)> eval_;
};

struct EstimatorOptions {
  double ridge = 0.0;        // additive ridge inside the logarithm
  int max_columns = 0;       // 0 = exact O(M^2); otherwise per-row column subsample
  std::uint64_t subsample_seed = 0;
};

// Plug-in estimator -(1/M) sum_i log(ridge + (1/M) sum_j k(i,j)). Exact mode is
// O(M^2). When max_columns > 0 and M > max_columns the inner mean uses a seeded
// column subsample; that mode is approximate and kept out of acceptance runs.
double entropy_from_samples(const SampleSet& s, const EstimatorOptions& opt = {});

// entropy_from_samples(prior) - entropy_from_samples(posterior); signed.
double realized_info_gain(const SampleSet& prior, const SampleSet& posterior,
                          const EstimatorOptions& opt = {});

// Simulation interface for nested Monte Carlo design evaluation. All samplers
// must be deterministic functions of the passed stream.
class BayesToyModel {
 public:
  virtual ~BayesToyModel() = default;
  virtual double sample_prior(SubRng& rng) const = 0;
  virtual double simulate_data(double latent, double design, SubRng& rng) const = 0;
  virtual double sample_posterior(double data, double design, SubRng& rng) const = 0;
  virtual double kernel(double t, double t2) const = 0;
  virtual std::string name() const = 0;
};

// Conjugate 1-D Gaussian location: prior N(0,1), observation y = theta + design * noise,
// exact conjugate posterior, task kernel exp(-(t-t')^2/ell^2).
std::unique_ptr<BayesToyModel> make_gauss_location_model(double ell);

// Finite latent uniform on {0..k-1} with identity task kernel. design >= 0.5
// reveals the latent exactly; smaller designs produce constant data (posterior
// equals prior).
std::unique_ptr<BayesToyModel> make_finite_reveal_model(int support);

// Parses "gauss-location:<ell>" or "finite-reveal:<k>"; throws ModelError.
std::unique_ptr<BayesToyModel> make_model(const std::string& spec);

struct DesignResult {
  double u_hat = 0.0;
  std::vector<double> per_dataset;  // inner posterior-entropy estimates
  double std_error = 0.0;           // sample std of per_dataset / sqrt(N)
  double prior_entropy = 0.0;
};

// U(d) = H_prior - mean_k H(T | D_k). Dataset k uses substream (seed, k); the
// prior sample set uses a reserved stream. Outer datasets run in parallel with
// a fixed-order reduction: output is identical across thread counts.
DesignResult design_objective(const BayesToyModel& model, double design, int N, int M,
                              std::uint64_t seed, double ridge = 0.0);

struct RankedDesign {
  double design = 0.0;
  DesignResult result;
};

// Evaluates all designs under one seed (shared prior estimate, common dataset
// substreams) and sorts descending by u_hat, ties kept in input order.
std::vector<RankedDesign> rank_designs(const BayesToyModel& model,
                                       const std::vector<double>& designs, int N, int M,
                                       std::uint64_t seed, double ridge = 0.0);

// K_Z[z][z'] = K_T[g(z)][g(z')]; task entropy is invariant when the quantity of
// interest is a deterministic function of the latent.
SimilarityMatrix pullback_kernel(const FiberMap& g, const SimilarityMatrix& K_T);

struct SurrogateDecomposition {
  double i_fine = 0.0;      // fine-kernel prior-to-posterior drop
  double i_sur = 0.0;       // same drop under per-law back-composed kernels
  double b_f = 0.0;         // delta_prior - delta_post
  double delta_prior = 0.0; // coarse-graining loss of the prior law
  double delta_post = 0.0;  // coarse-graining loss of the posterior law
};

// Exact decomposition I_fine = I_sur + B_f with law-induced (support-restricted)
// kernels per law; verified internally to 1e-12.
SurrogateDecomposition surrogate_decomposition(const SimilarityMatrix& K_T, const FiberMap& f,
                                               const Pmf& prior, const Pmf& posterior);

struct EnvelopePair {
  SimilarityMatrix k_max;  // fiber max, diagonal forced 1
  SymMatrix k_min;         // fiber min, diagonal = min over the fiber square
};

// Law-independent fiber envelopes over the classes of f. Throws on empty fibers.
EnvelopePair envelope_kernels(const SimilarityMatrix& K_T, const FiberMap& f);

// sum_c nu_C(c) log(tau_max(c)/tau_min(c)); upper-bounds the coarse-graining
// loss of any fine law with pushforward nu_C. Throws TauMinError if tau_min
// vanishes on a charged class.
double coarse_gap_bound(const EnvelopePair& env, const Pmf& nu_C);

struct RatioBound {
  std::vector<double> per_class;  // log sup_c' rho(c,c') per class
  double per_class_total = 0.0;   // sum_c nu_C(c) * per_class[c]
  double global = 0.0;            // log sup rho
};

// Ratio rho = K_max/K_min with a/0 = +infinity (and 1 when both vanish).
RatioBound envelope_ratio_bound(const EnvelopePair& env, const Pmf& nu_C);

struct MetricFiberStats {
  std::vector<double> diam;  // per class
  SymMatrix d_min, d_max;    // per class pair
};

struct MetricEnvelopes {
  EnvelopePair env;  // K_max = exp(-delta d_min^alpha), K_min = exp(-delta d_max^alpha)
  MetricFiberStats stats;
  SymMatrix rho_exact;            // exp(delta (d_max^alpha - d_min^alpha))
  SymMatrix rho_bound_concave;    // alpha <= 1: exp(delta (diam+diam')^alpha)
  SymMatrix rho_bound_convex;     // alpha >= 1: exp(delta alpha (diam+diam') (d_min+diam+diam')^(alpha-1))
};

// Envelope closed forms for the metric kernel exp(-delta d^alpha). Validates
// the metric axioms (all triples for n <= 200, seeded sample beyond).
MetricEnvelopes metric_envelopes(const SymMatrix& dist, const FiberMap& f, double delta,
                                 double alpha);

enum class EnvelopeMode { kMax, kMin, kQuantile };

// Per class pair, the sample max / min / ascending beta-quantile (index
// ceil(beta*count)-1) of kernel values over cross pairs. Diagonal forced to 1
// for max and quantile modes; min mode takes the within-class minimum.
SymMatrix empirical_envelopes(const std::vector<std::vector<int>>& samples_by_class,
                              const std::function<double(int, int)>& kernel_eval,
                              EnvelopeMode mode, double beta = 0.5);

struct PredictivePullback {
  SymMatrix matrix;
  std::vector<double> diagonal;
  bool unit_diagonal = false;  // within 1e-12
};

// K_Z[z][z'] = sum_{t,t'} P[z][t] K_T[t][t'] P[z'][t']: averaged similarity of
// independent predictions. The diagonal may drop below 1, so this is not a
// SimilarityMatrix and carries no data-processing guarantee.
PredictivePullback predictive_pullback(const SimilarityMatrix& K_T, const MarkovChannel& P);

}  // namespace kentropy
