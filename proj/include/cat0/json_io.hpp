#pragma once

// JSON schemas for the model-space and surface objects, plus a deterministic
// writer that prints every real number with 12 significant digits. Parsers run
// on a nlohmann DOM and reject unknown keys; writers emit fixed key orders so
// identical inputs give byte-identical output.

#include <string>
#include <vector>

#include "json.hpp"

#include "cat0/analysis.hpp"
#include "cat0/exact.hpp"
#include "cat0/geometry.hpp"
#include "cat0/helly.hpp"
#include "cat0/surfaces.hpp"
#include "cat0/witness.hpp"

namespace cat0 {

// %.12g with a stable exponent form; rejects non-finite values.
std::string format_real(double x);

// Minimal ordered JSON emitter. Keys are written in call order; values are
// formatted deterministically (reals via format_real).
class JsonWriter {
 public:
  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& k);

  void value(bool v);
  void value(int v);
  void value(long long v);
  void value(double v);
  void value(const char* v);
  void value(const std::string& v);
  void null_value();

  const std::string& str() const { return out_; }

 private:
  void separate();

  std::string out_;
  std::vector<bool> has_items_{false};
  bool after_key_ = false;
};

// ---- model-space schemas ----------------------------------------------------
// space:    {"kind":"euclidean","dim":n} | {"kind":"tree","vertices":n,
//           "edges":[[u,v,length],...]} | {"kind":"siegel","g":n} |
//           {"kind":"product","factors":[space,...]}
// point:    euclidean {"coords":[...]}; tree {"edge":e,"offset":x};
//           siegel {"re":[[...]],"im":[[...]]}; product {"parts":[point,...]}
// isometry: euclidean {"entries":[[...]],"coords":[...]} (orthogonal part and
//           translation); tree {"vertex_map":[...]}; siegel {"entries":[[...]]};
//           product {"parts":[isometry,...]}

SpaceDescriptor parse_space(const nlohmann::json& j);
ModelPoint parse_point(const SpaceDescriptor& space, const nlohmann::json& j);
Isometry parse_isometry(const SpaceDescriptor& space, const nlohmann::json& j);

void write_point(JsonWriter& w, const SpaceDescriptor& space, const ModelPoint& p);

// Square matrix from {"entries":[[...]]} or a bare [[...]]; entries may be
// integers, exact binary doubles, or strings like "3/2".
RationalMatrix parse_rational_matrix(const nlohmann::json& j);

// ---- helly schemas ----------------------------------------------------------
// tree sets: {"intervals":[[edge,lo,hi],...],"vertices":[v,...]}
// polyhedra: {"a":[[...]],"b":[...]}

ConvexSubtree parse_convex_subtree(const nlohmann::json& j);
Polyhedron parse_polyhedron(const nlohmann::json& j);

// ---- surface reports ---------------------------------------------------------

void write_subsurface_type(JsonWriter& w, const SubsurfaceType& t);
// Writes the "ribbon" and "complement" keys; the caller must have an object open.
void write_neighborhood_fields(JsonWriter& w, const LickorishSystem& sys,
                               const NeighborhoodReport& rep);
void write_copies_witness(JsonWriter& w, const CopiesWitness& witness);

// ---- parse helpers (shared by the CLI) ---------------------------------------

[[noreturn]] void input_error(const std::string& msg);
const nlohmann::json& expect_object(const nlohmann::json& j, const std::string& what);
void check_keys(const nlohmann::json& obj, const std::vector<std::string>& allowed,
                const std::string& what);
const nlohmann::json& require_key(const nlohmann::json& obj, const std::string& k,
                                  const std::string& what);
int parse_int(const nlohmann::json& j, const std::string& what);
double parse_finite_real(const nlohmann::json& j, const std::string& what);
Eigen::VectorXd parse_real_vector(const nlohmann::json& j, const std::string& what);
Eigen::MatrixXd parse_real_matrix(const nlohmann::json& j, const std::string& what);

}  // namespace cat0
