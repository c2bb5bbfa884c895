#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "kentropy/coarse.hpp"
#include "kentropy/io.hpp"

using nlohmann::json;

namespace {

const std::string kCli = KENTROPY_CLI_PATH;
const std::string kFix = KENTROPY_FIXTURES_DIR;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fix(const std::string& name) { return kFix + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/kentropy_cli_" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("entropy command reproduces the bundled instance") {
  auto r = run("entropy " + fix("counterexample_kernel.json") + " " +
               fix("counterexample_pmf.json"));
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  double closed = 0.25 * std::log(8.0 / 3.0) + 0.5 * std::log(8.0 / 7.0);
  CHECK(std::abs(j["H"].get<double>() - closed) < 1e-12);
  REQUIRE(j["typicality"].size() == 3);
  CHECK(j["typicality"][0].get<double>() == 0.5);
  CHECK(j["typicality"][1].get<double>() == 0.75);
  CHECK(j["typicality"][2].get<double>() == 0.875);
}

TEST_CASE("entropy command on identity and partition fixtures") {
  auto r = run("entropy " + fix("identity4_kernel.json") + " " + fix("uniform4_pmf.json"));
  REQUIRE(r.exit_code == 0);
  CHECK(std::abs(json::parse(r.out)["H"].get<double>() - std::log(4.0)) < 1e-14);

  auto rp = run("entropy " + fix("partition37_kernel.json") + " " + fix("partition37_pmf.json"));
  REQUIRE(rp.exit_code == 0);
  double shannon = -(0.3 * std::log(0.3) + 0.7 * std::log(0.7));
  CHECK(std::abs(json::parse(rp.out)["H"].get<double>() - shannon) < 1e-12);
}

TEST_CASE("schema and dimension failures use their reserved exit codes") {
  CHECK(run("entropy " + fix("identity3_kernel.json") + " " + fix("uniform2_pmf.json"))
            .exit_code == 3);
  auto bad = write_temp("bad.json", "{broken");
  CHECK(run("entropy " + bad + " " + fix("uniform2_pmf.json")).exit_code == 2);
  auto unknown = write_temp("unknown.json",
                            R"({"n": 2, "entries": [[1,0],[0,1]], "comment": "hi"})");
  CHECK(run("entropy " + unknown + " " + fix("uniform2_pmf.json")).exit_code == 2);
  CHECK(run("entropy /tmp/kentropy_cli_missing.json " + fix("uniform2_pmf.json")).exit_code ==
        2);
  CHECK(run("nonsense").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("coarse command: injective maps keep every number equal") {
  auto r = run("coarse " + fix("random6_kernel.json") + " " + fix("random6_pmf.json") + " " +
               fix("random6_map.json"));
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["dpi_holds"] == true);
  CHECK(j["H_X"].get<double>() >= j["H_f"].get<double>() - 1e-12);
  CHECK(std::abs(j["H_f"].get<double>() - j["H_Y"].get<double>()) <= 1e-12);

  auto ri = run("coarse " + fix("counterexample_kernel.json") + " " +
                fix("counterexample_pmf.json") + " " + fix("injective3_map.json"));
  REQUIRE(ri.exit_code == 0);
  auto ji = json::parse(ri.out);
  CHECK(std::abs(ji["H_X"].get<double>() - ji["H_Y"].get<double>()) < 1e-12);
  CHECK(std::abs(ji["H_X"].get<double>() - ji["H_f"].get<double>()) < 1e-12);
}

TEST_CASE("coarse command: Gaussian binning matches the distance closed form") {
  auto r = run("coarse " + fix("gaussbin_kernel.json") + " " + fix("uniform4_pmf.json") + " " +
               fix("gaussbin_map.json"));
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  // nearest centers across the interval split are 0.4 and 0.6 under ell = 0.5
  CHECK(std::abs(j["K_Y"]["entries"][0][1].get<double>() - std::exp(-0.04 / 0.25)) < 1e-15);
  CHECK(j["K_Y"]["entries"][0][0].get<double>() == 1.0);
}

TEST_CASE("emitted kernels re-parse to the exact in-memory object") {
  auto r = run("coarse " + fix("gaussbin_kernel.json") + " " + fix("uniform4_pmf.json") + " " +
               fix("gaussbin_map.json"));
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  auto reparsed = kentropy::io::parse_kernel(j["K_Y"].dump());
  auto expected = kentropy::induce_kernel_max(
      kentropy::io::read_kernel(fix("gaussbin_kernel.json")),
      kentropy::io::read_map(fix("gaussbin_map.json")));
  REQUIRE(reparsed.size() == expected.size());
  for (int a = 0; a < expected.size(); ++a)
    for (int b = 0; b < expected.size(); ++b) CHECK(reparsed(a, b) == expected(a, b));
}

TEST_CASE("conditional command on the bundled and independent joints") {
  auto r = run("conditional " + fix("counterexample_kernel.json") + " " +
               fix("counterexample_joint.json"));
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  double expect_i = (0.25 * std::log(8.0 / 3.0) + 0.5 * std::log(8.0 / 7.0)) -
                    0.25 * std::log(18.0 / 5.0);
  CHECK(std::abs(j["I_K"].get<double>() - expect_i) < 1e-12);
  CHECK(j["I_K"].get<double>() < 0.0);
  REQUIRE(j["per_y"].size() == 2);
  CHECK(std::abs(j["per_y"][1]["p_y"].get<double>() - 0.75) < 1e-15);

  auto rp = run("conditional " + fix("identity2_kernel.json") + " " + fix("product_joint.json"));
  REQUIRE(rp.exit_code == 0);
  CHECK(std::abs(json::parse(rp.out)["I_K"].get<double>()) < 1e-12);
}

TEST_CASE("markov command: identity channel and rational realization") {
  auto r = run("markov " + fix("identity3_kernel.json") + " " + fix("uniform3_pmf.json") + " " +
               fix("channel_identity3.json"));
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["holds"] == true);
  CHECK(std::abs(j["H_in"].get<double>() - j["H_out"].get<double>()) < 1e-12);

  auto rr = run("markov " + fix("fuzzy2_kernel.json") + " " + fix("uniform2_pmf.json") + " " +
                fix("channel_mix23.json") + " --realize 20");
  REQUIRE(rr.exit_code == 0);
  auto jr = json::parse(rr.out);
  CHECK(jr["holds"] == true);
  CHECK(jr["realization_check"]["equal"] == true);

  auto r4 = run("markov " + fix("identity2_kernel.json") + " " + fix("uniform2_pmf.json") +
                " " + fix("channel_rational4.json") + " --realize 4");
  REQUIRE(r4.exit_code == 0);
  CHECK(json::parse(r4.out)["realization_check"]["equal"] == true);

  CHECK(run("markov " + fix("identity2_kernel.json") + " " + fix("uniform2_pmf.json") + " " +
            fix("channel_rational4.json") + " --realize 3")
            .exit_code == 4);
}

TEST_CASE("approx command emits the convergence TSV") {
  auto r = run("approx --kernel-spec ones --ns 2,4 --q 4");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("n\th_block\th_repaired\trepair_gap\trepair_bound\treference\n", 0) == 0);
  // every numeric cell in the 'ones' table is 0 except the bound column
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream cells(line);
    std::string n, hb, hr, gap, bound, reference;
    std::getline(cells, n, '\t');
    std::getline(cells, hb, '\t');
    std::getline(cells, hr, '\t');
    std::getline(cells, gap, '\t');
    std::getline(cells, bound, '\t');
    std::getline(cells, reference, '\t');
    CHECK(std::abs(std::stod(hb)) < 1e-12);
    CHECK(std::abs(std::stod(hr)) < 1e-12);
    CHECK(std::abs(std::stod(reference)) < 1e-12);
  }
  CHECK(rows == 2);

  auto rp = run("approx --kernel-spec partition:0.5 --ns 2,4,8 --q 8");
  REQUIRE(rp.exit_code == 0);
  std::istringstream plines(rp.out);
  std::getline(plines, line);
  while (std::getline(plines, line)) {
    std::istringstream cells(line);
    std::string n, hb;
    std::getline(cells, n, '\t');
    std::getline(cells, hb, '\t');
    CHECK(std::abs(std::stod(hb) - std::log(2.0)) < 1e-11);
  }

  CHECK(run("approx --kernel-spec gauss:0.0000001 --ns 2 --q 4").exit_code == 5);
  CHECK(run("approx --kernel-spec mystery:1 --ns 2 --q 4").exit_code == 2);
}

TEST_CASE("design command ranks models deterministically") {
  std::string common = "design --model finite-reveal:4 --designs 1,0,1 --outer 20 --inner 40 "
                       "--seed 11";
  auto r = run(common);
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j["ranking"].size() == 3);
  CHECK(j["ranking"][0]["design"].get<double>() == 1.0);
  CHECK(j["ranking"][1]["design"].get<double>() == 1.0);  // duplicate design ties
  CHECK(j["ranking"][0]["u_hat"] == j["ranking"][1]["u_hat"]);
  CHECK(j["ranking"][2]["design"].get<double>() == 0.0);

  auto r2 = run(common);
  CHECK(r2.out == r.out);  // bytewise deterministic

  CHECK(run("design --model weibull:2 --designs 1 --outer 4 --inner 4").exit_code == 6);
}

TEST_CASE("invariants command separates partitions from fuzz") {
  auto r = run("invariants " + fix("partition37_kernel.json") + " " +
               fix("partition37_pmf.json"));
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["partition_necessary"] == true);
  REQUIRE(j["typicality_atoms"].size() == 2);
  CHECK(std::abs(j["typicality_atoms"][0]["value"].get<double>() - 0.3) < 1e-12);
  CHECK(std::abs(j["typicality_atoms"][0]["mass"].get<double>() - 0.3) < 1e-12);

  auto rf = run("invariants " + fix("fuzzy2_kernel.json") + " " + fix("uniform2_pmf.json"));
  REQUIRE(rf.exit_code == 0);
  CHECK(json::parse(rf.out)["partition_necessary"] == false);

  auto ro = run("invariants " + fix("ones4_kernel.json") + " " + fix("uniform4_pmf.json"));
  REQUIRE(ro.exit_code == 0);
  CHECK(json::parse(ro.out)["partition_necessary"] == true);
}

TEST_CASE("envelopes command: all-ones, metric, and failing inputs") {
  auto r = run("envelopes " + fix("ones4_kernel.json") + " " + fix("metric_map4.json") + " " +
               fix("coarse_uniform2_pmf.json"));
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["gap_bound"].get<double>() == 0.0);
  CHECK(j["ratio_bounds"]["global"].get<double>() == 0.0);

  auto rm = run("envelopes " + fix("metric_dist4.json") + " " + fix("metric_map4.json") + " " +
                fix("coarse_uniform2_pmf.json") + " --delta 0.7 --alpha 1");
  REQUIRE(rm.exit_code == 0);
  auto jm = json::parse(rm.out);
  CHECK(std::abs(jm["K_max"]["entries"][0][1].get<double>() - std::exp(-0.7)) < 1e-15);
  CHECK(std::abs(jm["K_min"]["entries"][0][1].get<double>() - std::exp(-2.1)) < 1e-15);
  CHECK(jm["gap_bound"].get<double>() > 0.0);
  CHECK(jm["gap_bound"].get<double>() <=
        jm["ratio_bounds"]["per_class_total"].get<double>() + 1e-12);

  // identity task kernel merged two-into-one: minimum typicality vanishes
  CHECK(run("envelopes " + fix("identity3_kernel.json") + " " + fix("merge2_map3.json") + " " +
            fix("coarse_uniform2_pmf.json"))
            .exit_code == 7);
}
