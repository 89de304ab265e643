#include "cat0/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cat0/analysis.hpp"
#include "cat0/engine.hpp"
#include "cat0/exact.hpp"
#include "cat0/geometry.hpp"
#include "cat0/helly.hpp"
#include "cat0/json_io.hpp"
#include "cat0/surfaces.hpp"
#include "cat0/witness.hpp"

namespace cat0 {

namespace {

nlohmann::json read_input(const std::string& in_path, const std::string& inline_json) {
  std::string text;
  if (!in_path.empty()) {
    std::ifstream f(in_path, std::ios::binary);
    if (!f) throw InvalidInput("cannot open " + in_path);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  } else {
    text = inline_json;
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed JSON input: ") + e.what());
  }
}

// Splits "a1,b1,c1" into curve indices of the given system.
CurveMask parse_curve_list(const LickorishSystem& sys, const std::string& list) {
  CurveMask mask = 0;
  std::string token;
  std::istringstream ss(list);
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    int idx = sys.curve_index(token);
    if (idx < 0) throw InvalidInput("unknown curve '" + token + "'");
    mask |= CurveMask(1) << idx;
  }
  if (mask == 0) throw InvalidInput("empty curve list");
  return mask;
}

void emit(std::ostream& out, const JsonWriter& w) { out << w.str() << "\n"; }

void write_curve_names(JsonWriter& w, const LickorishSystem& sys, CurveMask mask) {
  w.begin_array();
  for (int i = 0; i < sys.curve_count(); ++i)
    if (mask >> i & 1) w.value(sys.curves()[i].name);
  w.end_array();
}

void write_index_array(JsonWriter& w, const std::vector<int>& v) {
  w.begin_array();
  for (int x : v) w.value(x);
  w.end_array();
}

// ---- subcommand bodies -----------------------------------------------------

void cmd_classify(const nlohmann::json& in, std::ostream& out) {
  RationalMatrix m = parse_rational_matrix(in);
  IsometryClass cls = classify_symplectic(m);
  JsonWriter w;
  w.begin_object();
  w.key("class");
  w.value(isometry_kind_name(cls.kind));
  w.key("translation_length");
  w.value(cls.translation_length);
  w.key("attained");
  w.value(cls.attained);
  w.end_object();
  emit(out, w);
}

void cmd_distance(const nlohmann::json& in, std::ostream& out) {
  expect_object(in, "input");
  check_keys(in, {"space", "p", "q"}, "input");
  SpaceDescriptor space = parse_space(require_key(in, "space", "input"));
  validate_space(space);
  ModelPoint p = parse_point(space, require_key(in, "p", "input"));
  ModelPoint q = parse_point(space, require_key(in, "q", "input"));
  validate_point(space, p);
  validate_point(space, q);
  JsonWriter w;
  w.begin_object();
  w.key("distance");
  w.value(distance(space, p, q));
  w.end_object();
  emit(out, w);
}

void cmd_circumcenter(const nlohmann::json& in, std::ostream& out) {
  expect_object(in, "input");
  check_keys(in, {"space", "points"}, "input");
  SpaceDescriptor space = parse_space(require_key(in, "space", "input"));
  validate_space(space);
  const nlohmann::json& pts = require_key(in, "points", "input");
  if (!pts.is_array() || pts.empty()) input_error("'points' must be a nonempty array");
  std::vector<ModelPoint> points;
  for (const nlohmann::json& pj : pts) {
    ModelPoint p = parse_point(space, pj);
    validate_point(space, p);
    points.push_back(std::move(p));
  }
  EnclosingBall ball = circumcenter(space, points);
  JsonWriter w;
  w.begin_object();
  w.key("center");
  write_point(w, space, ball.center);
  w.key("radius");
  w.value(ball.radius);
  w.end_object();
  emit(out, w);
}

void cmd_lickorish(int genus, std::ostream& out) {
  LickorishSystem sys(genus);
  JsonWriter w;
  w.begin_object();
  w.key("genus");
  w.value(genus);
  w.key("curves");
  w.begin_array();
  for (const Curve& c : sys.curves()) w.value(c.name);
  w.end_array();
  w.key("intersections");
  w.begin_array();
  for (const Crossing& x : sys.crossings()) {
    w.begin_array();
    w.value(sys.curves()[x.p].name);
    w.value(sys.curves()[x.q].name);
    w.value(x.sign);
    w.end_array();
  }
  w.end_array();
  w.end_object();
  emit(out, w);
}

void cmd_neighborhood(int genus, const std::string& curve_list, std::ostream& out) {
  LickorishSystem sys(genus);
  CurveMask mask = parse_curve_list(sys, curve_list);
  NeighborhoodReport rep = sys.neighborhood(mask);
  JsonWriter w;
  w.begin_object();
  w.key("genus");
  w.value(genus);
  w.key("curves");
  write_curve_names(w, sys, mask);
  w.key("connected");
  w.value(sys.subset_connected(mask));
  write_neighborhood_fields(w, sys, rep);
  w.end_object();
  emit(out, w);
}

void cmd_verify_prop52(int genus, std::ostream& out) {
  Prop52Report rep = verify_prop52(genus);
  LickorishSystem sys(genus);
  JsonWriter w;
  w.begin_object();
  w.key("genus");
  w.value(rep.genus);
  w.key("checked");
  w.value(rep.connected_checked);
  w.key("satisfied");
  w.value(rep.satisfied);
  w.key("degenerate");
  w.value(rep.degenerate);
  w.key("violations");
  w.begin_array();
  for (const Prop52Violation& v : rep.violations) {
    w.begin_object();
    w.key("curves");
    write_curve_names(w, sys, v.subset);
    w.key("best");
    write_subsurface_type(w, v.best);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  emit(out, w);
}

void cmd_witness_copies(int genus, int type_genus, int type_boundary, int copies,
                        std::ostream& out) {
  LickorishSystem sys(genus);
  if (copies < 1) throw InvalidInput("--copies must be positive");
  std::optional<CopiesWitness> found =
      find_disjoint_copies(sys, SubsurfaceType{type_genus, type_boundary}, copies);
  JsonWriter w;
  w.begin_object();
  w.key("found");
  w.value(found.has_value());
  if (found) {
    std::string reason;
    if (!replay_copies_witness(sys, found->type, copies, *found, &reason))
      throw std::logic_error("unreplayable witness returned: " + reason);
    w.key("witness");
    write_copies_witness(w, *found);
  }
  w.end_object();
  emit(out, w);
}

void cmd_twist_matrix(int genus, const std::string& curve, std::ostream& out) {
  LickorishSystem sys(genus);
  int idx = sys.curve_index(curve);
  if (idx < 0) throw InvalidInput("unknown curve '" + curve + "'");
  SymplecticMatrix m = sys.twist_matrix(idx);
  JsonWriter w;
  w.begin_object();
  w.key("curve");
  w.value(curve);
  w.key("entries");
  w.begin_array();
  for (Eigen::Index r = 0; r < m.entries().rows(); ++r) {
    w.begin_array();
    for (Eigen::Index c = 0; c < m.entries().cols(); ++c) w.value(m.entries()(r, c));
    w.end_array();
  }
  w.end_array();
  w.end_object();
  emit(out, w);
}

void cmd_check_relations(int genus, std::ostream& out) {
  RelationReport rep = check_relations(genus);
  JsonWriter w;
  w.begin_object();
  w.key("genus");
  w.value(genus);
  w.key("commuting");
  w.value(rep.commuting_pairs);
  w.key("braid");
  w.value(rep.braid_pairs);
  w.key("ok");
  w.value(rep.ok);
  w.end_object();
  emit(out, w);
}

int cmd_derive(int genus, int dim, const std::string& out_path, std::ostream& out) {
  DeriveResult r = derive_fixpoint_certificate(genus, dim);
  JsonWriter w;
  if (!r.ok) {
    w.begin_object();
    w.key("error");
    w.begin_object();
    w.key("message");
    w.value(r.failure->reason);
    w.key("stage");
    w.value(r.failure->stage);
    w.key("subset");
    write_index_array(w, r.failure->subset);
    w.end_object();
    w.end_object();
    emit(out, w);
    return 1;
  }
  save_certificate(*r.certificate, out_path);
  w.begin_object();
  w.key("ok");
  w.value(true);
  w.key("genus");
  w.value(genus);
  w.key("dim");
  w.value(dim);
  w.key("facts");
  w.value(static_cast<long long>(r.certificate->facts.size()));
  w.key("out");
  w.value(out_path);
  w.end_object();
  emit(out, w);
  return 0;
}

void cmd_verify(const std::string& cert_path, std::ostream& out) {
  Certificate cert = load_certificate(cert_path);
  VerifyResult res = verify_certificate(cert);
  JsonWriter w;
  w.begin_object();
  w.key("valid");
  w.value(res.valid);
  if (!res.valid) {
    w.key("fact");
    w.value(res.fact);
    w.key("message");
    w.value(res.message);
  }
  w.end_object();
  emit(out, w);
}

void cmd_helly_tree(const nlohmann::json& in, std::ostream& out) {
  expect_object(in, "input");
  check_keys(in, {"tree", "sets"}, "input");
  const nlohmann::json& tj = expect_object(require_key(in, "tree", "input"), "tree");
  check_keys(tj, {"vertices", "edges"}, "tree");
  int n = parse_int(require_key(tj, "vertices", "tree"), "tree vertices");
  const nlohmann::json& ej = require_key(tj, "edges", "tree");
  if (!ej.is_array()) input_error("tree edges must be an array");
  std::vector<TreeEdge> edges;
  for (const nlohmann::json& e : ej) {
    if (!e.is_array() || e.size() != 3) input_error("tree edge must be [u,v,length]");
    edges.push_back(TreeEdge{parse_int(e[0], "edge endpoint"), parse_int(e[1], "edge endpoint"),
                             parse_finite_real(e[2], "edge length")});
  }
  MetricTree tree(n, std::move(edges));
  const nlohmann::json& sj = require_key(in, "sets", "input");
  if (!sj.is_array() || sj.empty()) input_error("'sets' must be a nonempty array");
  std::vector<ConvexSubtree> sets;
  for (const nlohmann::json& s : sj) {
    ConvexSubtree set = parse_convex_subtree(s);
    validate_convex_subtree(tree, set);
    sets.push_back(std::move(set));
  }
  TreeHellyReport rep = helly_check_tree(tree, sets);
  JsonWriter w;
  w.begin_object();
  w.key("pairwise");
  w.value(rep.pairwise);
  w.key("all");
  w.value(rep.all);
  w.key("disjoint_pair");
  if (rep.disjoint_pair) {
    w.begin_array();
    w.value(rep.disjoint_pair->first);
    w.value(rep.disjoint_pair->second);
    w.end_array();
  } else {
    w.null_value();
  }
  w.key("common_point");
  if (rep.common_point) {
    w.begin_object();
    w.key("edge");
    w.value(rep.common_point->edge);
    w.key("offset");
    w.value(rep.common_point->offset);
    w.end_object();
  } else {
    w.null_value();
  }
  w.end_object();
  emit(out, w);
}

void cmd_helly_euclid(const nlohmann::json& in, std::ostream& out) {
  expect_object(in, "input");
  check_keys(in, {"dim", "sets"}, "input");
  int dim = parse_int(require_key(in, "dim", "input"), "dim");
  const nlohmann::json& sj = require_key(in, "sets", "input");
  if (!sj.is_array() || sj.empty()) input_error("'sets' must be a nonempty array");
  std::vector<Polyhedron> sets;
  for (const nlohmann::json& s : sj) {
    Polyhedron p = parse_polyhedron(s);
    if (p.a.cols() != dim) input_error("polyhedron row width must equal dim");
    sets.push_back(std::move(p));
  }
  EuclidHellyReport rep = helly_check_euclidean(dim, sets);
  JsonWriter w;
  w.begin_object();
  w.key("subsets_feasible");
  w.value(rep.subsets_feasible);
  w.key("all_feasible");
  w.value(rep.all_feasible);
  w.key("infeasible_subset");
  if (rep.infeasible_subset)
    write_index_array(w, *rep.infeasible_subset);
  else
    w.null_value();
  w.key("common_point");
  if (rep.common_point) {
    w.begin_array();
    for (Eigen::Index i = 0; i < rep.common_point->size(); ++i) w.value((*rep.common_point)[i]);
    w.end_array();
  } else {
    w.null_value();
  }
  w.end_object();
  emit(out, w);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CAT(0) model spaces, Lickorish curve systems, and fixed-point certificates"};
  app.require_subcommand(1);

  long long seed = 0;
  if (const char* env = std::getenv("CAT0_SEED")) seed = std::atoll(env);
  app.add_option("--seed", seed, "deterministic seed (default: CAT0_SEED env var or 0)");

  struct {
    std::string in_path, inline_json;
    int genus = 0, dim = 0, type_genus = 0, type_boundary = 0, copies = 0;
    std::string curves, curve, out_path, cert_path;
  } o;

  auto add_input = [&o](CLI::App* cmd) {
    CLI::Option* f = cmd->add_option("--in", o.in_path, "path of the JSON input document");
    CLI::Option* s = cmd->add_option("--json", o.inline_json, "inline JSON input document");
    f->excludes(s);
    s->excludes(f);
  };
  auto need_input = [&o](const char* cmd) {
    if (o.in_path.empty() && o.inline_json.empty())
      throw CLI::RequiredError(std::string(cmd) + " needs --in or --json");
  };

  CLI::App* classify = app.add_subcommand("classify", "classify a symplectic matrix");
  add_input(classify);
  CLI::App* dist = app.add_subcommand("distance", "distance between two points");
  add_input(dist);
  CLI::App* circ = app.add_subcommand("circumcenter", "minimal enclosing ball of finitely many points");
  add_input(circ);

  CLI::App* lick = app.add_subcommand("lickorish", "list the genus-g twist curves and crossings");
  lick->add_option("--genus", o.genus, "surface genus")->required();
  CLI::App* nbhd = app.add_subcommand("neighborhood", "ribbon neighborhood and complement of a curve subset");
  nbhd->add_option("--genus", o.genus, "surface genus")->required();
  nbhd->add_option("--curves", o.curves, "comma-separated curve names")->required();
  CLI::App* prop = app.add_subcommand("verify-prop52", "exhaustive subsurface sweep over connected subsets");
  prop->add_option("--genus", o.genus, "surface genus")->required();
  CLI::App* wit = app.add_subcommand("witness-copies", "search disjoint subsurface copies");
  wit->add_option("--genus", o.genus, "surface genus")->required();
  wit->add_option("--type-genus", o.type_genus, "genus of the copied subsurface")->required();
  wit->add_option("--type-boundary", o.type_boundary, "boundary circles of the copied subsurface")
      ->required();
  wit->add_option("--copies", o.copies, "number of disjoint copies")->required();
  CLI::App* twist = app.add_subcommand("twist-matrix", "homology action of one twist");
  twist->add_option("--genus", o.genus, "surface genus")->required();
  twist->add_option("--curve", o.curve, "curve name, e.g. a1")->required();
  CLI::App* rel = app.add_subcommand("check-relations", "exact commutation/braid relation check");
  rel->add_option("--genus", o.genus, "surface genus")->required();

  CLI::App* derive = app.add_subcommand("derive", "derive a fixed-point certificate");
  derive->add_option("--genus", o.genus, "surface genus")->required();
  derive->add_option("--dim", o.dim, "dimension bound d")->required();
  derive->add_option("--out", o.out_path, "certificate output path")->required();
  CLI::App* verify = app.add_subcommand("verify", "re-check a certificate");
  verify->add_option("certificate", o.cert_path, "certificate path")->required();

  CLI::App* htree = app.add_subcommand("helly-tree", "Helly check for convex subtrees");
  add_input(htree);
  CLI::App* heuc = app.add_subcommand("helly-euclid", "Helly check for planar/affine polytopes");
  add_input(heuc);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  (void)seed;  // accepted for reproducibility; every subcommand is deterministic

  try {
    if (classify->parsed()) {
      need_input("classify");
      cmd_classify(read_input(o.in_path, o.inline_json), out);
    } else if (dist->parsed()) {
      need_input("distance");
      cmd_distance(read_input(o.in_path, o.inline_json), out);
    } else if (circ->parsed()) {
      need_input("circumcenter");
      cmd_circumcenter(read_input(o.in_path, o.inline_json), out);
    } else if (lick->parsed()) {
      cmd_lickorish(o.genus, out);
    } else if (nbhd->parsed()) {
      cmd_neighborhood(o.genus, o.curves, out);
    } else if (prop->parsed()) {
      cmd_verify_prop52(o.genus, out);
    } else if (wit->parsed()) {
      cmd_witness_copies(o.genus, o.type_genus, o.type_boundary, o.copies, out);
    } else if (twist->parsed()) {
      cmd_twist_matrix(o.genus, o.curve, out);
    } else if (rel->parsed()) {
      cmd_check_relations(o.genus, out);
    } else if (derive->parsed()) {
      return cmd_derive(o.genus, o.dim, o.out_path, out);
    } else if (verify->parsed()) {
      cmd_verify(o.cert_path, out);
    } else if (htree->parsed()) {
      need_input("helly-tree");
      cmd_helly_tree(read_input(o.in_path, o.inline_json), out);
    } else if (heuc->parsed()) {
      need_input("helly-euclid");
      cmd_helly_euclid(read_input(o.in_path, o.inline_json), out);
    }
  } catch (const CLI::RequiredError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    JsonWriter w;
    w.begin_object();
    w.key("error");
    w.begin_object();
    w.key("message");
    w.value(std::string(e.what()));
    w.end_object();
    w.end_object();
    emit(out, w);
    return 1;
  }
  return 0;
}

}  // namespace cat0
