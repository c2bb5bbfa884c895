#pragma once

#include <string>
#include <vector>

#include "kentropy/errors.hpp"
#include "kentropy/types.hpp"

namespace kentropy::io {

// Readers for the JSON document schemas. Field sets are closed: a missing or
// unknown field raises SchemaError, as does any shape inconsistency inside one
// document. Cross-document dimension checks live with the callers.
SimilarityMatrix read_kernel(const std::string& path);
Pmf read_pmf(const std::string& path);
JointPmf read_joint(const std::string& path);
FiberMap read_map(const std::string& path);
MarkovChannel read_channel(const std::string& path);
SymMatrix read_dist(const std::string& path);

// Same parsers over in-memory text (used by tests).
SimilarityMatrix parse_kernel(const std::string& text);
Pmf parse_pmf(const std::string& text);

// 17-significant-digit formatting; round-trips doubles exactly. Infinities
// become the strings "+infinity"/"-infinity" (JSON has no such literals).
std::string fmt17(double x);
// 12-significant-digit formatting for TSV tables.
std::string fmt12(double x);

// Minimal JSON text builder with deterministic field order.
class JsonWriter {
 public:
  std::string str() const { return out_; }

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& name);
  void value(double x);
  void value(int x);
  void value(bool b);
  void value_string(const std::string& s);

 private:
  void comma();
  std::string out_;
  std::vector<bool> first_;  // per open scope
};

// Kernel/pmf emission in the input schemas (for round-trip output).
void write_kernel(JsonWriter& w, const SimilarityMatrix& K);
void write_matrix(JsonWriter& w, const SymMatrix& M);
void write_pmf(JsonWriter& w, const Pmf& p);

}  // namespace kentropy::io
