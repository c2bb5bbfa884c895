#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "kentropy/io.hpp"

using namespace kentropy;

namespace {

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/kentropy_io_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("kernel documents parse and validate") {
  auto K = io::parse_kernel(R"({"n": 2, "entries": [[1.0, 0.25], [0.25, 1.0]]})");
  CHECK(K.size() == 2);
  CHECK(K(0, 1) == 0.25);

  CHECK_THROWS_AS(io::parse_kernel(R"({"n": 2})"), SchemaError);  // missing entries
  CHECK_THROWS_AS(io::parse_kernel(R"({"n": 2, "entries": [[1,0],[0,1]], "x": 1})"),
                  SchemaError);  // unknown field
  CHECK_THROWS_AS(io::parse_kernel(R"({"n": 3, "entries": [[1,0],[0,1]]})"), SchemaError);
  CHECK_THROWS_AS(io::parse_kernel(R"({"n": 2, "entries": [[1,"a"],[0,1]]})"), SchemaError);
  CHECK_THROWS_AS(io::parse_kernel(R"({"n": 2, "entries": [[1,0.5],[0.2,1]]})"),
                  SchemaError);  // asymmetric
  CHECK_THROWS_AS(io::parse_kernel("not json"), SchemaError);
  CHECK_THROWS_AS(io::parse_kernel(R"({"n": 0, "entries": []})"), SchemaError);
}

TEST_CASE("pmf documents parse and validate") {
  auto p = io::parse_pmf(R"({"n": 3, "p": [0.2, 0.3, 0.5]})");
  CHECK(p.size() == 3);
  CHECK(p[2] == 0.5);
  CHECK_THROWS_AS(io::parse_pmf(R"({"n": 3, "p": [0.2, 0.3]})"), SchemaError);
  CHECK_THROWS_AS(io::parse_pmf(R"({"n": 2, "p": [0.2, 0.3]})"), SchemaError);  // mass 0.5
  CHECK_THROWS_AS(io::parse_pmf(R"({"n": 2, "p": [-0.2, 1.2]})"), SchemaError);
}

TEST_CASE("file readers for every document type") {
  auto kp = temp_file("k.json", R"({"n": 2, "entries": [[1, 0.5], [0.5, 1]]})");
  CHECK(io::read_kernel(kp)(0, 1) == 0.5);

  auto pp = temp_file("p.json", R"({"n": 2, "p": [0.5, 0.5]})");
  CHECK(io::read_pmf(pp)[0] == 0.5);

  auto jp = temp_file("j.json", R"({"nx": 2, "ny": 2, "mass": [[0.25,0.25],[0.25,0.25]]})");
  auto j = io::read_joint(jp);
  CHECK(j.nx() == 2);
  CHECK(j(1, 0) == 0.25);

  auto mp = temp_file("m.json", R"({"n": 3, "m": 2, "labels": [0, 1, 1]})");
  auto f = io::read_map(mp);
  CHECK(f.classes() == 2);
  CHECK(f(2) == 1);
  auto bad_label = temp_file("mb.json", R"({"n": 3, "m": 2, "labels": [0, 1, 5]})");
  CHECK_THROWS_AS(io::read_map(bad_label), SchemaError);

  auto cp = temp_file("c.json", R"({"nx": 2, "ny": 2, "rows": [[1, 0], [0.5, 0.5]]})");
  auto P = io::read_channel(cp);
  CHECK(P(1, 1) == 0.5);

  auto dp = temp_file("d.json", R"({"n": 2, "d": [[0, 1], [1, 0]]})");
  CHECK(io::read_dist(dp)(0, 1) == 1.0);

  CHECK_THROWS_AS(io::read_kernel("/tmp/kentropy_io_does_not_exist.json"), SchemaError);
}

TEST_CASE("17-digit formatting round-trips doubles exactly") {
  for (double x : {1.0 / 3.0, 0.1, 1e-300, 123456.78901234567, -2.5e17, 0.0,
                   0.31197300956519284}) {
    std::string s = io::fmt17(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(io::fmt17(std::numeric_limits<double>::infinity()) == "\"+infinity\"");
  CHECK(io::fmt17(-std::numeric_limits<double>::infinity()) == "\"-infinity\"");
  CHECK(io::fmt12(std::numeric_limits<double>::infinity()) == "+infinity");
}

TEST_CASE("writer emits valid JSON with deterministic layout") {
  io::JsonWriter w;
  w.begin_object();
  w.key("alpha");
  w.value(0.5);
  w.key("items");
  w.begin_array();
  w.value(1);
  w.value(2.5);
  w.value(true);
  w.value_string("x");
  w.end_array();
  w.key("nested");
  w.begin_object();
  w.key("flag");
  w.value(false);
  w.end_object();
  w.end_object();

  auto j = nlohmann::json::parse(w.str());
  CHECK(j["alpha"] == 0.5);
  CHECK(j["items"].size() == 4);
  CHECK(j["items"][1] == 2.5);
  CHECK(j["items"][3] == "x");
  CHECK(j["nested"]["flag"] == false);
}

TEST_CASE("emitted kernels and pmfs re-parse bit-identically") {
  SimilarityMatrix K(3, {1.0, 1.0 / 3.0, 0.1, 1.0 / 3.0, 1.0, 0.77777777777777779, 0.1,
                         0.77777777777777779, 1.0});
  io::JsonWriter wk;
  io::write_kernel(wk, K);
  auto K2 = io::parse_kernel(wk.str());
  REQUIRE(K2.size() == K.size());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(K2(i, j) == K(i, j));

  Pmf p({1.0 / 7.0, 2.0 / 7.0, 4.0 / 7.0});
  io::JsonWriter wp;
  io::write_pmf(wp, p);
  auto p2 = io::parse_pmf(wp.str());
  for (int x = 0; x < 3; ++x) CHECK(p2[x] == p[x]);
}
