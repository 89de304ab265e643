#include "cat0/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cat0 {

std::string format_real(double x) {
  if (!std::isfinite(x)) throw std::logic_error("non-finite value in JSON output");
  if (x == 0.0) return "0";  // avoid the signed zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// ---- JsonWriter --------------------------------------------------------------

void JsonWriter::separate() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (has_items_.back()) out_ += ',';
  has_items_.back() = true;
}

void JsonWriter::begin_object() {
  separate();
  out_ += '{';
  has_items_.push_back(false);
}

void JsonWriter::end_object() {
  out_ += '}';
  has_items_.pop_back();
}

void JsonWriter::begin_array() {
  separate();
  out_ += '[';
  has_items_.push_back(false);
}

void JsonWriter::end_array() {
  out_ += ']';
  has_items_.pop_back();
}

void JsonWriter::key(const std::string& k) {
  if (has_items_.back()) out_ += ',';
  has_items_.back() = true;
  out_ += '"';
  out_ += k;  // keys come from fixed schema alphabets
  out_ += "\":";
  after_key_ = true;
}

void JsonWriter::value(bool v) {
  separate();
  out_ += v ? "true" : "false";
}

void JsonWriter::value(int v) { value(static_cast<long long>(v)); }

void JsonWriter::value(long long v) {
  separate();
  out_ += std::to_string(v);
}

void JsonWriter::value(double v) {
  separate();
  out_ += format_real(v);
}

void JsonWriter::value(const char* v) { value(std::string(v)); }

void JsonWriter::value(const std::string& v) {
  separate();
  out_ += '"';
  for (char c : v) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      case '\r': out_ += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out_ += buf;
        } else {
          out_ += c;
        }
    }
  }
  out_ += '"';
}

void JsonWriter::null_value() {
  separate();
  out_ += "null";
}

// ---- parse helpers -----------------------------------------------------------

void input_error(const std::string& msg) { throw InvalidInput(msg); }

const nlohmann::json& expect_object(const nlohmann::json& j, const std::string& what) {
  if (!j.is_object()) input_error(what + " must be a JSON object");
  return j;
}

void check_keys(const nlohmann::json& obj, const std::vector<std::string>& allowed,
                const std::string& what) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const std::string& k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) input_error(what + ": unexpected key '" + it.key() + "'");
  }
}

const nlohmann::json& require_key(const nlohmann::json& obj, const std::string& k,
                                  const std::string& what) {
  auto it = obj.find(k);
  if (it == obj.end()) input_error(what + ": missing key '" + k + "'");
  return *it;
}

int parse_int(const nlohmann::json& j, const std::string& what) {
  if (!j.is_number_integer()) input_error(what + " must be an integer");
  long long v = j.get<long long>();
  if (v < INT32_MIN || v > INT32_MAX) input_error(what + " out of range");
  return static_cast<int>(v);
}

double parse_finite_real(const nlohmann::json& j, const std::string& what) {
  if (!j.is_number()) input_error(what + " must be a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) input_error(what + " must be finite");
  return v;
}

Eigen::VectorXd parse_real_vector(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) input_error(what + " must be an array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = parse_finite_real(j[i], what + " entry");
  return v;
}

Eigen::MatrixXd parse_real_matrix(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) input_error(what + " must be a nonempty array of rows");
  std::size_t cols = 0;
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array()) input_error(what + " rows must be arrays");
    if (r == 0)
      cols = j[r].size();
    else if (j[r].size() != cols)
      input_error(what + " rows must have equal length");
  }
  if (cols == 0) input_error(what + " rows must be nonempty");
  Eigen::MatrixXd m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_finite_real(j[r][c], what + " entry");
  return m;
}

// ---- spaces ------------------------------------------------------------------

SpaceDescriptor parse_space(const nlohmann::json& j) {
  expect_object(j, "space");
  const nlohmann::json& kind = require_key(j, "kind", "space");
  if (!kind.is_string()) input_error("space: 'kind' must be a string");
  std::string k = kind.get<std::string>();
  if (k == "euclidean") {
    check_keys(j, {"kind", "dim"}, "euclidean space");
    int dim = parse_int(require_key(j, "dim", "euclidean space"), "euclidean dim");
    if (dim < 1) input_error("euclidean dim must be positive");
    return EuclideanSpace{dim};
  }
  if (k == "tree") {
    check_keys(j, {"kind", "vertices", "edges"}, "tree space");
    int n = parse_int(require_key(j, "vertices", "tree space"), "tree vertices");
    const nlohmann::json& ej = require_key(j, "edges", "tree space");
    if (!ej.is_array()) input_error("tree edges must be an array");
    std::vector<TreeEdge> edges;
    for (const nlohmann::json& e : ej) {
      if (!e.is_array() || e.size() != 3) input_error("tree edge must be [u,v,length]");
      TreeEdge te;
      te.u = parse_int(e[0], "edge endpoint");
      te.v = parse_int(e[1], "edge endpoint");
      te.length = parse_finite_real(e[2], "edge length");
      edges.push_back(te);
    }
    return TreeSpace{MetricTree(n, std::move(edges))};
  }
  if (k == "siegel") {
    check_keys(j, {"kind", "g"}, "siegel space");
    int g = parse_int(require_key(j, "g", "siegel space"), "siegel g");
    if (g < 1) input_error("siegel g must be positive");
    return SiegelSpace{g};
  }
  if (k == "product") {
    check_keys(j, {"kind", "factors"}, "product space");
    const nlohmann::json& fj = require_key(j, "factors", "product space");
    if (!fj.is_array() || fj.empty()) input_error("product factors must be a nonempty array");
    ProductSpace p;
    for (const nlohmann::json& f : fj) p.factors.push_back(parse_space(f));
    return p;
  }
  input_error("space: unknown kind '" + k + "'");
}

// ---- points ------------------------------------------------------------------

ModelPoint parse_point(const SpaceDescriptor& space, const nlohmann::json& j) {
  expect_object(j, "point");
  if (std::holds_alternative<EuclideanSpace>(space)) {
    check_keys(j, {"coords"}, "euclidean point");
    return EuclideanPoint{parse_real_vector(require_key(j, "coords", "point"), "coords")};
  }
  if (std::holds_alternative<TreeSpace>(space)) {
    check_keys(j, {"edge", "offset"}, "tree point");
    TreePoint p;
    p.edge = parse_int(require_key(j, "edge", "tree point"), "edge");
    p.offset = parse_finite_real(require_key(j, "offset", "tree point"), "offset");
    return p;
  }
  if (std::holds_alternative<SiegelSpace>(space)) {
    check_keys(j, {"re", "im"}, "siegel point");
    SiegelPoint z;
    z.x = parse_real_matrix(require_key(j, "re", "siegel point"), "re");
    z.y = parse_real_matrix(require_key(j, "im", "siegel point"), "im");
    return z;
  }
  const ProductSpace& prod = std::get<ProductSpace>(space);
  check_keys(j, {"parts"}, "product point");
  const nlohmann::json& pj = require_key(j, "parts", "product point");
  if (!pj.is_array() || pj.size() != prod.factors.size())
    input_error("product point needs one part per factor");
  ProductPoint p;
  for (std::size_t i = 0; i < pj.size(); ++i)
    p.parts.push_back(parse_point(prod.factors[i], pj[i]));
  return p;
}

void write_point(JsonWriter& w, const SpaceDescriptor& space, const ModelPoint& p) {
  if (std::holds_alternative<EuclideanSpace>(space)) {
    const auto& e = std::get<EuclideanPoint>(p);
    w.begin_object();
    w.key("coords");
    w.begin_array();
    for (Eigen::Index i = 0; i < e.coords.size(); ++i) w.value(e.coords[i]);
    w.end_array();
    w.end_object();
    return;
  }
  if (std::holds_alternative<TreeSpace>(space)) {
    const auto& t = std::get<TreePoint>(p);
    w.begin_object();
    w.key("edge");
    w.value(t.edge);
    w.key("offset");
    w.value(t.offset);
    w.end_object();
    return;
  }
  if (std::holds_alternative<SiegelSpace>(space)) {
    const auto& z = std::get<SiegelPoint>(p);
    auto emit = [&w](const Eigen::MatrixXd& m) {
      w.begin_array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        w.begin_array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) w.value(m(r, c));
        w.end_array();
      }
      w.end_array();
    };
    w.begin_object();
    w.key("re");
    emit(z.x);
    w.key("im");
    emit(z.y);
    w.end_object();
    return;
  }
  const ProductSpace& prod = std::get<ProductSpace>(space);
  const auto& pp = std::get<ProductPoint>(p);
  w.begin_object();
  w.key("parts");
  w.begin_array();
  for (std::size_t i = 0; i < pp.parts.size(); ++i) write_point(w, prod.factors[i], pp.parts[i]);
  w.end_array();
  w.end_object();
}

// ---- isometries ----------------------------------------------------------------

Isometry parse_isometry(const SpaceDescriptor& space, const nlohmann::json& j) {
  expect_object(j, "isometry");
  if (std::holds_alternative<EuclideanSpace>(space)) {
    check_keys(j, {"entries", "coords"}, "euclidean isometry");
    EuclideanIsometry iso;
    iso.q = parse_real_matrix(require_key(j, "entries", "euclidean isometry"), "entries");
    iso.v = parse_real_vector(require_key(j, "coords", "euclidean isometry"), "coords");
    return iso;
  }
  if (std::holds_alternative<TreeSpace>(space)) {
    check_keys(j, {"vertex_map"}, "tree isometry");
    const nlohmann::json& mj = require_key(j, "vertex_map", "tree isometry");
    if (!mj.is_array()) input_error("vertex_map must be an array");
    TreeIsometry iso;
    for (const nlohmann::json& v : mj) iso.vertex_map.push_back(parse_int(v, "vertex_map entry"));
    return iso;
  }
  if (std::holds_alternative<SiegelSpace>(space)) {
    check_keys(j, {"entries"}, "siegel isometry");
    SiegelIsometry iso;
    iso.m = parse_real_matrix(require_key(j, "entries", "siegel isometry"), "entries");
    return iso;
  }
  const ProductSpace& prod = std::get<ProductSpace>(space);
  check_keys(j, {"parts"}, "product isometry");
  const nlohmann::json& pj = require_key(j, "parts", "product isometry");
  if (!pj.is_array() || pj.size() != prod.factors.size())
    input_error("product isometry needs one part per factor");
  ProductIsometry iso;
  for (std::size_t i = 0; i < pj.size(); ++i)
    iso.parts.push_back(parse_isometry(prod.factors[i], pj[i]));
  return iso;
}

// ---- rational matrices ---------------------------------------------------------

namespace {

Rational rational_entry(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (!std::isfinite(d)) input_error("matrix entry must be finite");
    // Every finite double is an exact binary rational.
    int exp = 0;
    double mant = std::frexp(d, &exp);
    long long scaled = static_cast<long long>(std::ldexp(mant, 53));
    Rational r(scaled);
    int shift = exp - 53;
    if (shift > 0)
      r *= Rational(BigInt(1) << shift);
    else if (shift < 0)
      r /= Rational(BigInt(1) << -shift);
    return r;
  }
  if (v.is_string()) {
    try {
      return Rational(v.get<std::string>());
    } catch (const std::exception&) {
      input_error("matrix entry '" + v.get<std::string>() + "' is not a rational p/q");
    }
  }
  input_error("matrix entry must be an integer, a number, or a 'p/q' string");
}

}  // namespace

RationalMatrix parse_rational_matrix(const nlohmann::json& j) {
  const nlohmann::json* rows = &j;
  if (j.is_object()) {
    check_keys(j, {"entries"}, "matrix");
    rows = &require_key(j, "entries", "matrix");
  }
  if (!rows->is_array() || rows->empty()) input_error("matrix must be a nonempty array of rows");
  std::size_t n = rows->size();
  RationalMatrix m(static_cast<int>(n), static_cast<int>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const nlohmann::json& row = (*rows)[r];
    if (!row.is_array() || row.size() != n) input_error("matrix must be square");
    for (std::size_t c = 0; c < n; ++c)
      m(static_cast<int>(r), static_cast<int>(c)) = rational_entry(row[c]);
  }
  return m;
}

// ---- helly inputs ----------------------------------------------------------------

ConvexSubtree parse_convex_subtree(const nlohmann::json& j) {
  expect_object(j, "convex subtree");
  check_keys(j, {"intervals", "vertices"}, "convex subtree");
  ConvexSubtree s;
  if (auto it = j.find("intervals"); it != j.end()) {
    if (!it->is_array()) input_error("intervals must be an array");
    for (const nlohmann::json& iv : *it) {
      if (!iv.is_array() || iv.size() != 3) input_error("interval must be [edge,lo,hi]");
      ConvexSubtree::Interval out;
      out.edge = parse_int(iv[0], "interval edge");
      out.lo = parse_finite_real(iv[1], "interval lo");
      out.hi = parse_finite_real(iv[2], "interval hi");
      s.intervals.push_back(out);
    }
  }
  if (auto it = j.find("vertices"); it != j.end()) {
    if (!it->is_array()) input_error("vertices must be an array");
    for (const nlohmann::json& v : *it) s.vertices.push_back(parse_int(v, "vertex"));
  }
  return s;
}

Polyhedron parse_polyhedron(const nlohmann::json& j) {
  expect_object(j, "polyhedron");
  check_keys(j, {"a", "b"}, "polyhedron");
  Polyhedron p;
  p.a = parse_real_matrix(require_key(j, "a", "polyhedron"), "a");
  p.b = parse_real_vector(require_key(j, "b", "polyhedron"), "b");
  if (p.a.rows() != p.b.size()) input_error("polyhedron: a and b row counts differ");
  return p;
}

// ---- surface reports ---------------------------------------------------------------

void write_subsurface_type(JsonWriter& w, const SubsurfaceType& t) {
  w.begin_object();
  w.key("genus");
  w.value(t.genus);
  w.key("boundary");
  w.value(t.boundary);
  w.end_object();
}

void write_neighborhood_fields(JsonWriter& w, const LickorishSystem& sys,
                               const NeighborhoodReport& rep) {
  w.key("ribbon");
  w.begin_array();
  for (const RibbonComponent& c : rep.components) {
    w.begin_object();
    w.key("curves");
    w.begin_array();
    for (int idx : c.curves) w.value(sys.curves()[idx].name);
    w.end_array();
    w.key("intersections");
    w.value(c.crossings);
    w.key("chi");
    w.value(c.chi);
    w.key("boundary");
    w.value(c.boundary);
    w.key("genus");
    w.value(c.genus);
    w.key("separating");
    w.value(c.separating);
    w.end_object();
  }
  w.end_array();
  w.key("complement");
  w.begin_array();
  for (const ComplementComponent& c : rep.complement) {
    w.begin_object();
    w.key("chi");
    w.value(c.chi);
    w.key("boundary");
    w.value(c.boundary);
    w.key("genus");
    w.value(c.genus);
    w.key("disk");
    w.value(c.disk);
    w.end_object();
  }
  w.end_array();
}

void write_copies_witness(JsonWriter& w, const CopiesWitness& witness) {
  w.begin_object();
  w.key("type");
  write_subsurface_type(w, witness.type);
  w.key("blocks");
  w.begin_array();
  for (const std::vector<int>& block : witness.blocks) {
    w.begin_array();
    for (int idx : block) w.value(idx);
    w.end_array();
  }
  w.end_array();
  w.key("strips");
  w.begin_array();
  for (const StripMove& mv : witness.strips) {
    w.begin_object();
    w.key("copy");
    w.value(mv.copy);
    w.key("circle");
    w.value(mv.circle);
    w.key("nonseparating");
    w.value(mv.nonseparating);
    w.key("genus_left");
    w.value(mv.genus_left);
    w.key("left_circles");
    w.begin_array();
    for (int c : mv.left_circles) w.value(c);
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

}  // namespace cat0
