#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kentropy/approx.hpp"
#include "kentropy/coarse.hpp"
#include "kentropy/conditional.hpp"
#include "kentropy/entropy.hpp"
#include "kentropy/errors.hpp"
#include "kentropy/io.hpp"
#include "kentropy/lift.hpp"
#include "kentropy/taskgain.hpp"

using namespace kentropy;

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    std::string tok = s.substr(pos, next - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer '" + tok + "' in list");
    }
    if (used != tok.size()) throw std::invalid_argument("bad integer '" + tok + "' in list");
    out.push_back(v);
    pos = next + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    std::string tok = s.substr(pos, next - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number '" + tok + "' in list");
    }
    if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "' in list");
    out.push_back(v);
    pos = next + 1;
  }
  return out;
}

void emit(const io::JsonWriter& w) { std::printf("%s\n", w.str().c_str()); }

struct EntropyArgs {
  std::string kernel, pmf;
} entropy_args;

void run_entropy() {
  auto K = io::read_kernel(entropy_args.kernel);
  auto p = io::read_pmf(entropy_args.pmf);
  double h = entropy_discrete(K, p);
  auto tau = typicality(K, p);
  io::JsonWriter w;
  w.begin_object();
  w.key("H");
  w.value(h);
  w.key("typicality");
  w.begin_array();
  for (double t : tau) w.value(t);
  w.end_array();
  w.end_object();
  emit(w);
}

struct CoarseArgs {
  std::string kernel, pmf, map;
  bool supported = false;
} coarse_args;

void run_coarse() {
  auto K = io::read_kernel(coarse_args.kernel);
  auto p = io::read_pmf(coarse_args.pmf);
  auto f = io::read_map(coarse_args.map);
  auto rep = dpi_report(K, p, f, coarse_args.supported);
  io::JsonWriter w;
  w.begin_object();
  w.key("K_Y");
  io::write_kernel(w, rep.k_y);
  w.key("H_X");
  w.value(rep.h_x);
  w.key("H_f");
  w.value(rep.h_f);
  w.key("H_Y");
  w.value(rep.h_y);
  w.key("dpi_holds");
  w.value(rep.dpi_holds);
  w.end_object();
  emit(w);
}

struct ConditionalArgs {
  std::string kernel, joint;
} conditional_args;

void run_conditional() {
  auto K = io::read_kernel(conditional_args.kernel);
  auto j = io::read_joint(conditional_args.joint);
  double h_x = entropy_discrete(K, marginals(j).first);
  double h_cond = conditional_entropy(K, j);
  auto per = conditional_entropy_by_y(K, j);
  io::JsonWriter w;
  w.begin_object();
  w.key("H_X");
  w.value(h_x);
  w.key("H_X_given_Y");
  w.value(h_cond);
  w.key("I_K");
  w.value(h_x - h_cond);
  w.key("per_y");
  w.begin_array();
  for (const auto& [py, hy] : per) {
    w.begin_object();
    w.key("p_y");
    w.value(py);
    w.key("H");
    w.value(hy);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  emit(w);
}

struct MarkovArgs {
  std::string kernel, pmf, channel;
  int realize = 0;
} markov_args;

void run_markov() {
  auto K = io::read_kernel(markov_args.kernel);
  auto p = io::read_pmf(markov_args.pmf);
  auto P = io::read_channel(markov_args.channel);
  auto rep = markov_dpi_report(K, p, P);
  io::JsonWriter w;
  w.begin_object();
  w.key("K_Y");
  io::write_kernel(w, rep.k_out);
  w.key("H_in");
  w.value(rep.h_in);
  w.key("H_out");
  w.value(rep.h_out);
  w.key("holds");
  w.value(rep.holds);
  if (markov_args.realize > 0) {
    int r = markov_args.realize;
    auto f = realize_channel(P, r);
    auto lifted = dpi_report(lift_kernel(K, r), lift_pmf(p, r), f, true);
    bool entrywise = true;
    for (int a = 0; a < rep.k_out.size(); ++a)
      for (int b = 0; b < rep.k_out.size(); ++b) {
        if (rep.nu[a] <= 0.0 || rep.nu[b] <= 0.0) continue;
        if (rep.k_out(a, b) != lifted.k_y(a, b)) entrywise = false;
      }
    bool entropy_close = std::abs(rep.h_out - lifted.h_y) <= 1e-12;
    w.key("realization_check");
    w.begin_object();
    w.key("r");
    w.value(r);
    w.key("equal");
    w.value(entrywise && entropy_close);
    w.key("H_lifted");
    w.value(lifted.h_y);
    w.end_object();
  }
  w.end_object();
  emit(w);
}

struct ApproxArgs {
  std::string spec;
  std::string ns = "2,4,8,16";
  int q = 32;
} approx_args;

void run_approx() {
  auto K = parse_kernel_spec(approx_args.spec);
  auto ns = parse_int_list(approx_args.ns);
  auto table = convergence_table(K, ns, approx_args.q);
  std::printf("n\th_block\th_repaired\trepair_gap\trepair_bound\treference\n");
  for (const auto& row : table.rows) {
    std::printf("%d\t%s\t%s\t%s\t%s\t%s\n", row.n, io::fmt12(row.h_block).c_str(),
                io::fmt12(row.h_repaired).c_str(), io::fmt12(row.repair_gap).c_str(),
                io::fmt12(row.repair_bound).c_str(), io::fmt12(table.reference).c_str());
  }
}

struct DesignArgs {
  std::string model, designs;
  int outer = 100;
  int inner = 100;
  std::uint64_t seed = 0;
  double ridge = 0.0;
} design_args;

void run_design() {
  auto model = make_model(design_args.model);
  auto designs = parse_double_list(design_args.designs);
  auto ranked = rank_designs(*model, designs, design_args.outer, design_args.inner,
                             design_args.seed, design_args.ridge);
  io::JsonWriter w;
  w.begin_object();
  w.key("model");
  w.value_string(model->name());
  w.key("outer");
  w.value(design_args.outer);
  w.key("inner");
  w.value(design_args.inner);
  w.key("seed");
  w.value(static_cast<int>(design_args.seed));
  w.key("prior_entropy");
  w.value(ranked.front().result.prior_entropy);
  w.key("ranking");
  w.begin_array();
  for (const auto& r : ranked) {
    w.begin_object();
    w.key("design");
    w.value(r.design);
    w.key("u_hat");
    w.value(r.result.u_hat);
    w.key("std_error");
    w.value(r.result.std_error);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  emit(w);
}

struct InvariantsArgs {
  std::string kernel, pmf;
  double tol = 1e-9;
} invariants_args;

void run_invariants() {
  auto K = io::read_kernel(invariants_args.kernel);
  auto p = io::read_pmf(invariants_args.pmf);
  auto check = partition_necessary_condition(K, p, invariants_args.tol);
  io::JsonWriter w;
  w.begin_object();
  w.key("typicality_atoms");
  w.begin_array();
  for (const auto& a : check.atoms) {
    w.begin_object();
    w.key("value");
    w.value(a.value);
    w.key("mass");
    w.value(a.mass);
    w.end_object();
  }
  w.end_array();
  w.key("partition_necessary");
  w.value(check.holds);
  w.end_object();
  emit(w);
}

struct EnvelopesArgs {
  std::string input, map, pmf;
  double delta = 0.0;
  double alpha = 0.0;
} envelopes_args;

void run_envelopes() {
  auto f = io::read_map(envelopes_args.map);
  auto nu_C = io::read_pmf(envelopes_args.pmf);
  const bool metric = envelopes_args.delta > 0.0 || envelopes_args.alpha > 0.0;
  EnvelopePair env;
  if (metric) {
    if (!(envelopes_args.delta > 0.0) || !(envelopes_args.alpha > 0.0))
      throw std::invalid_argument("metric mode needs both --delta and --alpha positive");
    auto dist = io::read_dist(envelopes_args.input);
    env = metric_envelopes(dist, f, envelopes_args.delta, envelopes_args.alpha).env;
  } else {
    env = envelope_kernels(io::read_kernel(envelopes_args.input), f);
  }
  if (nu_C.size() != env.k_max.size())
    throw DimensionError("coarse pmf size does not match the class count");
  auto ratio = envelope_ratio_bound(env, nu_C);
  double gap = coarse_gap_bound(env, nu_C);  // may throw TauMinError -> exit 7
  io::JsonWriter w;
  w.begin_object();
  w.key("K_max");
  io::write_kernel(w, env.k_max);
  w.key("K_min");
  io::write_matrix(w, env.k_min);
  w.key("gap_bound");
  w.value(gap);
  w.key("ratio_bounds");
  w.begin_object();
  w.key("per_class");
  w.begin_array();
  for (double v : ratio.per_class) w.value(v);
  w.end_array();
  w.key("per_class_total");
  w.value(ratio.per_class_total);
  w.key("global");
  w.value(ratio.global);
  w.end_object();
  w.end_object();
  emit(w);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity-sensitive entropy toolkit"};
  app.require_subcommand(1);

  auto* c_entropy = app.add_subcommand("entropy", "Entropy and typicality of (kernel, pmf)");
  c_entropy->add_option("kernel", entropy_args.kernel, "kernel JSON file")->required();
  c_entropy->add_option("pmf", entropy_args.pmf, "pmf JSON file")->required();

  auto* c_coarse = app.add_subcommand("coarse", "Deterministic coarse-graining report");
  c_coarse->add_option("kernel", coarse_args.kernel)->required();
  c_coarse->add_option("pmf", coarse_args.pmf)->required();
  c_coarse->add_option("map", coarse_args.map)->required();
  c_coarse->add_flag("--supported", coarse_args.supported,
                     "restrict the fiber maximum to the support of the pmf");

  auto* c_cond = app.add_subcommand("conditional", "Conditional entropy and task information");
  c_cond->add_option("kernel", conditional_args.kernel)->required();
  c_cond->add_option("joint", conditional_args.joint)->required();

  auto* c_markov = app.add_subcommand("markov", "Stochastic-channel coarse-graining report");
  c_markov->add_option("kernel", markov_args.kernel)->required();
  c_markov->add_option("pmf", markov_args.pmf)->required();
  c_markov->add_option("channel", markov_args.channel)->required();
  c_markov->add_option("--realize", markov_args.realize,
                       "verify the deterministic realization at resolution 1/r");

  auto* c_approx = app.add_subcommand("approx", "Step-kernel convergence table (TSV)");
  c_approx->add_option("--kernel-spec", approx_args.spec,
                       "gauss:<ell> | exp:<delta>,<alpha> | partition:<b1>,... | ones")
      ->required();
  c_approx->add_option("--ns", approx_args.ns, "comma-separated grid sizes");
  c_approx->add_option("--q", approx_args.q, "quadrature nodes per axis");

  auto* c_design = app.add_subcommand("design", "Rank designs by estimated information gain");
  c_design->add_option("--model", design_args.model, "gauss-location:<ell> | finite-reveal:<k>")
      ->required();
  c_design->add_option("--designs", design_args.designs, "comma-separated design values")
      ->required();
  c_design->add_option("--outer", design_args.outer, "simulated datasets per design");
  c_design->add_option("--inner", design_args.inner, "samples per entropy estimate");
  c_design->add_option("--seed", design_args.seed, "master seed");
  c_design->add_option("--ridge", design_args.ridge, "additive ridge inside the log");

  auto* c_inv = app.add_subcommand("invariants", "Typicality-distribution partition check");
  c_inv->add_option("kernel", invariants_args.kernel)->required();
  c_inv->add_option("pmf", invariants_args.pmf)->required();
  c_inv->add_option("--tol", invariants_args.tol, "atom merge/match tolerance");

  auto* c_env = app.add_subcommand("envelopes", "Fiber envelope kernels and gap bounds");
  c_env->add_option("input", envelopes_args.input, "task kernel JSON, or distances with --delta/--alpha")
      ->required();
  c_env->add_option("map", envelopes_args.map)->required();
  c_env->add_option("pmf", envelopes_args.pmf, "coarse pmf over classes")->required();
  c_env->add_option("--delta", envelopes_args.delta, "metric kernel rate");
  c_env->add_option("--alpha", envelopes_args.alpha, "metric kernel exponent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_entropy->parsed()) run_entropy();
    if (c_coarse->parsed()) run_coarse();
    if (c_cond->parsed()) run_conditional();
    if (c_markov->parsed()) run_markov();
    if (c_approx->parsed()) run_approx();
    if (c_design->parsed()) run_design();
    if (c_inv->parsed()) run_invariants();
    if (c_env->parsed()) run_envelopes();
  } catch (const SchemaError& e) {
    std::fprintf(stderr, "schema error: %s\n", e.what());
    return 2;
  } catch (const DimensionError& e) {
    std::fprintf(stderr, "dimension error: %s\n", e.what());
    return 3;
  } catch (const ChannelError& e) {
    std::fprintf(stderr, "channel error: %s\n", e.what());
    return 4;
  } catch (const TypicalityFloorError& e) {
    std::fprintf(stderr, "typicality floor: %s\n", e.what());
    return 5;
  } catch (const ModelError& e) {
    std::fprintf(stderr, "model error: %s\n", e.what());
    return 6;
  } catch (const TauMinError& e) {
    std::fprintf(stderr, "tau-min error: %s\n", e.what());
    return 7;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "internal invariant violated: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
