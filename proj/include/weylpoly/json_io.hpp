#pragma once

#include <nlohmann/json.hpp>

#include "weylpoly/projection.hpp"
#include "weylpoly/tessellation.hpp"

namespace weylpoly {

using nlohmann::json;

inline json to_json(const Rational& r) { return r.str(); }

inline json to_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline json to_json(const RatMat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return rows;
}

/// {"exact": [[rootIdx, n], ...], "between": [[rootIdx, n], ...]}
inline json to_json(const FaceDescriptor& f) {
  json exact = json::array(), between = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    json entry = json::array({i, f[i].level});
    (f[i].exact ? exact : between).push_back(std::move(entry));
  }
  return json{{"exact", std::move(exact)}, {"between", std::move(between)}};
}

inline json to_json(const RootSystem& rs) {
  json comps = json::array();
  for (const auto& c : rs.components()) comps.push_back(c);
  json roots = json::array(), coroots = json::array();
  for (const auto& r : rs.positive_roots()) roots.push_back(to_json(r));
  for (const auto& c : rs.positive_coroots()) coroots.push_back(to_json(c));
  return json{{"rank", rs.rank()},
              {"ambient_dim", rs.ambient_dim()},
              {"cartan", to_json(rs.cartan())},
              {"positive_roots", std::move(roots)},
              {"positive_coroots", std::move(coroots)},
              {"num_roots", rs.num_roots()},
              {"gram", to_json(rs.gram())},
              {"components", std::move(comps)}};
}

inline json to_json(const PolyFace& f) {
  json pts = json::array();
  for (const auto& v : f.extreme_points) pts.push_back(to_json(v));
  json j{{"extreme_points", std::move(pts)}, {"dim", f.dim}};
  if (f.affine_key) {
    j["key"] = to_json(*f.affine_key);
  } else {
    j["key"] = f.key;
  }
  return j;
}

inline json to_json(const WeightPolytope& p) {
  json faces = json::array();
  for (const auto& f : p.faces()) faces.push_back(to_json(f));
  json j{{"base_point", to_json(p.base_point())}, {"faces", std::move(faces)}};
  json pts = json::array();
  for (const auto& v : p.extreme_points()) pts.push_back(to_json(v));
  j["extreme_points"] = std::move(pts);
  if (p.is_affine()) j["lambda"] = to_json(p.vertex());
  return j;
}

inline json to_json(const WeightPolytope& p, const ProjectionResult& r) {
  json gens = json::array();
  for (const auto& g : r.fiber_generators) gens.push_back(to_json(g));
  json coeffs = json::array();
  for (const auto& c : r.cone_coefficients) coeffs.push_back(c.str());
  return json{{"point", to_json(r.point)},
              {"face", to_json(p.faces()[r.face_index])},
              {"fiber_generators", std::move(gens)},
              {"cone_coefficients", std::move(coeffs)}};
}

inline json to_json(const ThickCell& c) {
  json verts = json::array();
  for (const auto& v : c.closed_cell_vertices) verts.push_back(to_json(v));
  return json{{"anchor", to_json(c.anchor)},
              {"eta", c.eta.str()},
              {"face", to_json(c.face)},
              {"closed_cell_vertices", std::move(verts)}};
}

inline json to_json(const TessellationReport& r) {
  json v = json::array();
  for (const auto& violation : r.violations)
    v.push_back(json{{"point", to_json(violation.point)}, {"faces", violation.what}});
  return json{
      {"samples", r.samples_total}, {"violations", std::move(v)}, {"elapsed_ms", r.elapsed_ms}};
}

}  // namespace weylpoly
