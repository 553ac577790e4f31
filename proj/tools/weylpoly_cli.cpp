// Command-line surface for the weight-polytope library: root system dumps,
// apartment queries, polytope construction, exact projection, tessellation
// verification, and deterministic SVG figures.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "weylpoly/json_io.hpp"
#include "weylpoly/render.hpp"

using namespace weylpoly;

namespace {

struct CommonArgs {
  std::string type = "A2";
  std::string base;        // comma-separated rationals; empty = barycenter
  std::string gram_scale = "1";
};

Apartment make_apartment(const CommonArgs& c) {
  const Rational scale = Rational::parse(c.gram_scale);
  if (scale.sign() <= 0) throw UsageError("--gram-scale must be positive");
  auto rs = RootSystem::from_name(c.type, scale);
  std::optional<RatVec> base;
  if (!c.base.empty()) base = RatVec::parse(c.base);
  return Apartment(std::move(rs), std::move(base));
}

std::pair<RatVec, RatVec> parse_window(const std::string& window, std::size_t dim) {
  const RatVec ends = RatVec::parse(window);
  if (ends.size() == 2) {
    if (ends[0] > ends[1]) throw UsageError("--window: low end exceeds high end");
    return {RatVec(std::vector<Rational>(dim, ends[0])),
            RatVec(std::vector<Rational>(dim, ends[1]))};
  }
  if (ends.size() == 2 * dim) {
    std::vector<Rational> lo(ends.begin(), ends.begin() + dim);
    std::vector<Rational> hi(ends.begin() + dim, ends.end());
    return {RatVec(std::move(lo)), RatVec(std::move(hi))};
  }
  throw UsageError("--window: expected 'lo,hi' or one lo/hi pair per axis");
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot open output file " + out_path);
    f << j.dump(2) << "\n";
  }
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file " + out_path);
    f << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact affine weight polytopes: construction, projection, tessellation"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string out_path;
  bool as_json = false;
  app.add_option("--type", common.type, "root system type, e.g. A2, B2, G2, A1xA1");
  app.add_option("--base", common.base, "base point in the fundamental alcove (p/q,p/q,...)");
  app.add_option("--gram-scale", common.gram_scale,
                 "positive rational scaling of the invariant form");
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_flag("--json", as_json, "emit JSON (default for data commands)");

  // roots show
  auto* roots = app.add_subcommand("roots", "root system inspection");
  auto* roots_show = roots->add_subcommand("show", "dump the root system");

  // apartment locate
  auto* apartment = app.add_subcommand("apartment", "affine apartment queries");
  auto* ap_locate = apartment->add_subcommand("locate", "face of a point");
  std::string point_arg;
  ap_locate->add_option("--point", point_arg, "point coordinates p/q,p/q")->required();

  // polytope build|faces|intersect
  auto* polytope = app.add_subcommand("polytope", "weight polytopes");
  auto* poly_build = polytope->add_subcommand("build", "build P(lambda) and dump it");
  auto* poly_faces = polytope->add_subcommand("faces", "list the face lattice");
  auto* poly_intersect =
      polytope->add_subcommand("intersect", "intersection of polytopes at several vertices");
  std::string vertex_arg = "";
  std::string vertices_arg;
  for (auto* sc : {poly_build, poly_faces})
    sc->add_option("--vertex", vertex_arg, "vertex coordinates (default: origin)");
  poly_intersect->add_option("--vertices", vertices_arg, "semicolon-separated vertex list")
      ->required();

  // project
  auto* project_cmd = app.add_subcommand("project", "orthogonal projection onto P(lambda)");
  std::string eta_arg = "1";
  project_cmd->add_option("--vertex", vertex_arg, "vertex (default: origin)");
  project_cmd->add_option("--eta", eta_arg, "homothety ratio in (0,1], default 1");
  project_cmd->add_option("--point", point_arg, "point to project")->required();

  // tessellation verify
  auto* tessellation = app.add_subcommand("tessellation", "weight-cell partition");
  auto* tess_verify = tessellation->add_subcommand("verify", "sampled exact verification");
  std::string window_arg = "-2,2";
  unsigned grid = 41, nrand = 500;
  std::uint64_t seed = 7;
  tess_verify->add_option("--window", window_arg, "window as lo,hi (all axes)");
  tess_verify->add_option("--grid", grid, "grid points per axis");
  tess_verify->add_option("--rand", nrand, "seeded random sample count");
  tess_verify->add_option("--seed", seed, "sampling seed");

  // thicken locate|verify
  auto* thicken = app.add_subcommand("thicken", "thickened tessellation");
  auto* thick_locate = thicken->add_subcommand("locate", "cell containing a point");
  thick_locate->add_option("--eta", eta_arg, "homothety ratio in (0,1]")->required();
  thick_locate->add_option("--point", point_arg, "query point")->required();
  auto* thick_verify = thicken->add_subcommand("verify", "sampled exact verification");
  thick_verify->add_option("--eta", eta_arg, "homothety ratio in (0,1]")->required();
  thick_verify->add_option("--window", window_arg, "window as lo,hi (all axes)");
  thick_verify->add_option("--grid", grid, "grid points per axis");
  thick_verify->add_option("--rand", nrand, "seeded random sample count");
  thick_verify->add_option("--seed", seed, "sampling seed");

  // render <kind>
  auto* render_cmd = app.add_subcommand("render", "deterministic SVG figures (rank 2)");
  std::string render_kind;
  render_cmd->add_option("kind", render_kind, "arrangement | tessellation | thickened")
      ->required();
  render_cmd->add_option("--window", window_arg, "window as lo,hi (all axes)");
  render_cmd->add_option("--eta", eta_arg, "homothety ratio in (0,1) for 'thickened'");

  // Let global options (--type, --out, ...) appear after subcommands too.
  for (auto* sc : app.get_subcommands({})) {
    sc->fallthrough();
    for (auto* nested : sc->get_subcommands({})) nested->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (roots_show->parsed()) {
      auto ap = make_apartment(common);
      emit(to_json(ap.roots()), out_path);
      return 0;
    }
    if (ap_locate->parsed()) {
      auto ap = make_apartment(common);
      const RatVec x = RatVec::parse(point_arg);
      if (x.size() != ap.dim()) throw UsageError("--point has the wrong dimension");
      json j = to_json(ap.locate_face(x));
      j["is_vertex"] = ap.is_vertex(x);
      emit(j, out_path);
      return 0;
    }
    if (poly_build->parsed() || poly_faces->parsed()) {
      auto ap = make_apartment(common);
      const RatVec lambda =
          vertex_arg.empty() ? RatVec::zero(ap.dim()) : RatVec::parse(vertex_arg);
      Tessellator tess(ap);
      const auto& p = tess.polytope_at(lambda);
      if (poly_build->parsed()) {
        emit(to_json(p), out_path);
      } else {
        json faces = json::array();
        for (const auto& f : p.faces()) faces.push_back(to_json(f));
        emit(faces, out_path);
      }
      return 0;
    }
    if (poly_intersect->parsed()) {
      auto ap = make_apartment(common);
      std::vector<RatVec> vertices;
      std::size_t pos = 0;
      while (pos <= vertices_arg.size()) {
        auto semi = vertices_arg.find(';', pos);
        if (semi == std::string::npos) semi = vertices_arg.size();
        vertices.push_back(RatVec::parse(vertices_arg.substr(pos, semi - pos)));
        pos = semi + 1;
        if (semi == vertices_arg.size()) break;
      }
      for (const auto& v : vertices)
        if (!ap.is_vertex(v)) throw UsageError("not a vertex: " + v.str());
      const auto enc = ap.enclosure(vertices);
      json j;
      if (!enc.face) {
        j["empty"] = true;
      } else {
        j["empty"] = false;
        j["face"] = to_json(*enc.face);
        // Extreme points: the fixator orbit of a dominating alcove's base point.
        const auto c = ap.dominating_alcove(*enc.face);
        const RatVec bc = ap.base_point(c);
        std::set<RatVec> pts;
        for (const auto& w : ap.fixator_elements(*enc.face)) pts.insert(w.apply(bc));
        json arr = json::array();
        for (const auto& p : pts) arr.push_back(to_json(p));
        j["extreme_points"] = std::move(arr);
      }
      emit(j, out_path);
      return 0;
    }
    if (project_cmd->parsed()) {
      auto ap = make_apartment(common);
      Tessellator tess(ap);
      const RatVec lambda =
          vertex_arg.empty() ? RatVec::zero(ap.dim()) : RatVec::parse(vertex_arg);
      const RatVec x = RatVec::parse(point_arg);
      const Rational eta = Rational::parse(eta_arg);
      const auto res = tess.project_scaled(lambda, eta, x);
      emit(to_json(tess.scaled_polytope_at(lambda, eta), res), out_path);
      return 0;
    }
    if (tess_verify->parsed() || thick_verify->parsed()) {
      auto ap = make_apartment(common);
      Tessellator tess(ap);
      const auto [lo, hi] = parse_window(window_arg, ap.dim());
      SamplePlan plan;
      plan.grid_per_axis = grid;
      plan.random_count = nrand;
      plan.seed = seed;
      TessellationReport report;
      if (tess_verify->parsed()) {
        report = tess.verify_tessellation(lo, hi, plan);
      } else {
        report = tess.verify_thickened(lo, hi, Rational::parse(eta_arg), plan);
      }
      emit(to_json(report), out_path);
      return report.ok() ? 0 : 1;
    }
    if (thick_locate->parsed()) {
      auto ap = make_apartment(common);
      Tessellator tess(ap);
      const auto cell = tess.locate_thick(RatVec::parse(point_arg), Rational::parse(eta_arg));
      emit(to_json(cell), out_path);
      return 0;
    }
    if (render_cmd->parsed()) {
      auto ap = make_apartment(common);
      const auto [lo, hi] = parse_window(window_arg, ap.dim());
      std::string svg;
      if (render_kind == "arrangement") {
        svg = render::render_arrangement(ap, lo, hi);
      } else if (render_kind == "tessellation") {
        Tessellator tess(ap);
        svg = render::render_tessellation(tess, lo, hi);
      } else if (render_kind == "thickened") {
        Tessellator tess(ap);
        svg = render::render_thickened(tess, Rational::parse(eta_arg), lo, hi);
      } else {
        throw UsageError("unknown render kind '" + render_kind + "'");
      }
      emit_text(svg, out_path);
      return 0;
    }
    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency violation: " << e.what() << "\n";
    return 3;
  }
}
