#include "kentropy/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kentropy::io {

namespace {

using nlohmann::json;

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw SchemaError("bad JSON in '" + path + "': " + e.what());
  }
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad JSON: ") + e.what());
  }
}

// The field set of every document is closed.
void require_fields(const json& j, std::initializer_list<const char*> fields) {
  if (!j.is_object()) throw SchemaError("document is not a JSON object");
  for (const char* f : fields)
    if (!j.contains(f)) throw SchemaError(std::string("missing field '") + f + "'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* f : fields)
      if (it.key() == f) known = true;
    if (!known) throw SchemaError("unknown field '" + it.key() + "'");
  }
}

int get_dim(const json& j, const char* name) {
  const json& v = j.at(name);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw SchemaError(std::string("field '") + name + "' must be a positive integer");
  return v.get<int>();
}

std::vector<double> get_vector(const json& v, int n, const char* name) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    throw SchemaError(std::string("field '") + name + "' must be an array of length " +
                      std::to_string(n));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (const json& x : v) {
    if (!x.is_number()) throw SchemaError(std::string("non-numeric entry in '") + name + "'");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<double> get_matrix(const json& j, const char* name, int rows, int cols) {
  const json& v = j.at(name);
  if (!v.is_array() || static_cast<int>(v.size()) != rows)
    throw SchemaError(std::string("field '") + name + "' must have " + std::to_string(rows) +
                      " rows");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(rows) * cols);
  for (const json& row : v) {
    auto r = get_vector(row, cols, name);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

SimilarityMatrix kernel_from_json(const json& j) {
  require_fields(j, {"n", "entries"});
  int n = get_dim(j, "n");
  try {
    return SimilarityMatrix(n, get_matrix(j, "entries", n, n));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

Pmf pmf_from_json(const json& j) {
  require_fields(j, {"n", "p"});
  int n = get_dim(j, "n");
  try {
    return Pmf(get_vector(j.at("p"), n, "p"));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

}  // namespace

SimilarityMatrix read_kernel(const std::string& path) { return kernel_from_json(load(path)); }

Pmf read_pmf(const std::string& path) { return pmf_from_json(load(path)); }

JointPmf read_joint(const std::string& path) {
  json j = load(path);
  require_fields(j, {"nx", "ny", "mass"});
  int nx = get_dim(j, "nx"), ny = get_dim(j, "ny");
  try {
    return JointPmf(nx, ny, get_matrix(j, "mass", nx, ny));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

FiberMap read_map(const std::string& path) {
  json j = load(path);
  require_fields(j, {"n", "m", "labels"});
  int n = get_dim(j, "n"), m = get_dim(j, "m");
  const json& v = j.at("labels");
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    throw SchemaError("field 'labels' must be an array of length " + std::to_string(n));
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (const json& x : v) {
    if (!x.is_number_integer()) throw SchemaError("non-integer entry in 'labels'");
    labels.push_back(x.get<int>());
  }
  try {
    return FiberMap(m, std::move(labels));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

MarkovChannel read_channel(const std::string& path) {
  json j = load(path);
  require_fields(j, {"nx", "ny", "rows"});
  int nx = get_dim(j, "nx"), ny = get_dim(j, "ny");
  try {
    return MarkovChannel(nx, ny, get_matrix(j, "rows", nx, ny));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

SymMatrix read_dist(const std::string& path) {
  json j = load(path);
  require_fields(j, {"n", "d"});
  int n = get_dim(j, "n");
  try {
    return SymMatrix(n, get_matrix(j, "d", n, n));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

SimilarityMatrix parse_kernel(const std::string& text) { return kernel_from_json(parse_text(text)); }

Pmf parse_pmf(const std::string& text) { return pmf_from_json(parse_text(text)); }

std::string fmt17(double x) {
  if (std::isinf(x)) return x > 0 ? "\"+infinity\"" : "\"-infinity\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt12(double x) {
  if (std::isinf(x)) return x > 0 ? "+infinity" : "-infinity";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void JsonWriter::comma() {
  if (!first_.empty()) {
    if (!first_.back()) out_ += ",";
    first_.back() = false;
  }
}

void JsonWriter::begin_object() {
  comma();
  out_ += "{";
  first_.push_back(true);
}

void JsonWriter::end_object() {
  out_ += "}";
  first_.pop_back();
}

void JsonWriter::begin_array() {
  comma();
  out_ += "[";
  first_.push_back(true);
}

void JsonWriter::end_array() {
  out_ += "]";
  first_.pop_back();
}

void JsonWriter::key(const std::string& name) {
  comma();
  out_ += "\"" + name + "\":";
  if (!first_.empty()) first_.back() = true;  // next value attaches without a comma
}

void JsonWriter::value(double x) {
  comma();
  out_ += fmt17(x);
}

void JsonWriter::value(int x) {
  comma();
  out_ += std::to_string(x);
}

void JsonWriter::value(bool b) {
  comma();
  out_ += b ? "true" : "false";
}

void JsonWriter::value_string(const std::string& s) {
  comma();
  out_ += "\"" + s + "\"";
}

void write_kernel(JsonWriter& w, const SimilarityMatrix& K) {
  w.begin_object();
  w.key("n");
  w.value(K.size());
  w.key("entries");
  w.begin_array();
  for (int i = 0; i < K.size(); ++i) {
    w.begin_array();
    for (int j = 0; j < K.size(); ++j) w.value(K(i, j));
    w.end_array();
  }
  w.end_array();
  w.end_object();
}

void write_matrix(JsonWriter& w, const SymMatrix& M) {
  w.begin_object();
  w.key("n");
  w.value(M.size());
  w.key("entries");
  w.begin_array();
  for (int i = 0; i < M.size(); ++i) {
    w.begin_array();
    for (int j = 0; j < M.size(); ++j) w.value(M(i, j));
    w.end_array();
  }
  w.end_array();
  w.end_object();
}

void write_pmf(JsonWriter& w, const Pmf& p) {
  w.begin_object();
  w.key("n");
  w.value(p.size());
  w.key("p");
  w.begin_array();
  for (int x = 0; x < p.size(); ++x) w.value(p[x]);
  w.end_array();
  w.end_object();
}

}  // namespace kentropy::io
