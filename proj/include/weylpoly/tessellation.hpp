#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "weylpoly/projection.hpp"

namespace weylpoly {

/// The closed thickened cell F_eta(anchor): eta*anchor + (1-eta)*closure(F),
/// where F is the arrangement face whose open weight cell contains the
/// anchor. Its vertices are the homothety images of the anchor at the
/// vertices of F.
struct ThickCell {
  RatVec anchor;
  Rational eta;
  FaceDescriptor face;
  std::vector<RatVec> closed_cell_vertices;  // sorted, deduplicated

  friend bool operator==(const ThickCell& a, const ThickCell& b) {
    return a.anchor == b.anchor && a.eta == b.eta && a.face == b.face &&
           a.closed_cell_vertices == b.closed_cell_vertices;
  }
};

struct Violation {
  RatVec point;
  std::string what;
};

struct TessellationReport {
  std::size_t samples_total = 0;
  std::vector<Violation> violations;
  std::int64_t elapsed_ms = 0;
  bool ok() const { return violations.empty(); }
};

/// Deterministic sampling plan: a uniform grid over the window plus seeded
/// pseudo-random rationals with bounded denominators, so runs are exactly
/// reproducible.
struct SamplePlan {
  std::size_t grid_per_axis = 0;
  std::size_t random_count = 0;
  std::uint64_t seed = 0;
  long max_denominator = 997;

  std::vector<RatVec> generate(const RatVec& lo, const RatVec& hi) const {
    const std::size_t n = lo.size();
    std::vector<RatVec> out;
    if (grid_per_axis > 0) {
      std::vector<std::size_t> idx(n, 0);
      for (;;) {
        RatVec x(n);
        for (std::size_t j = 0; j < n; ++j) {
          if (grid_per_axis == 1) {
            x[j] = lo[j];
          } else {
            x[j] = lo[j] + Rational(static_cast<long>(idx[j]),
                                    static_cast<long>(grid_per_axis - 1)) *
                               (hi[j] - lo[j]);
          }
        }
        out.push_back(std::move(x));
        std::size_t j = 0;
        while (j < n && ++idx[j] == grid_per_axis) idx[j++] = 0;
        if (j == n) break;
      }
    }
    std::uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    auto next = [&state]() {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return state;
    };
    for (std::size_t k = 0; k < random_count; ++k) {
      RatVec x(n);
      for (std::size_t j = 0; j < n; ++j) {
        const long den = 2 + static_cast<long>(next() % static_cast<std::uint64_t>(
                                                   max_denominator - 1));
        const long num = static_cast<long>(next() % static_cast<std::uint64_t>(den + 1));
        x[j] = lo[j] + Rational(num, den) * (hi[j] - lo[j]);
      }
      out.push_back(std::move(x));
    }
    return out;
  }
};

/// Where a point sits in the weight-cell partition: the arrangement face F
/// with x in the open cell attached to F, one owning vertex, and the full
/// witness set {vertex : x in its closed polytope} (= vert(F)).
struct WeightFaceLocation {
  FaceDescriptor face;
  RatVec owner;             // first vertex of the witness set
  std::size_t face_index;   // index into polytope_at(owner)
  std::vector<RatVec> witnesses;
};

/// Partition queries and verification harnesses over the family of affine
/// weight polytopes. Holds memoized per-vertex polytopes; single-threaded.
class Tessellator {
 public:
  explicit Tessellator(Apartment& ap) : ap_(ap) {}

  Apartment& apartment() { return ap_; }

  const WeightPolytope& polytope_at(const RatVec& lambda) {
    auto it = cache_.find(lambda);
    if (it == cache_.end())
      it = cache_.emplace(lambda, WeightPolytope::build_affine(ap_, lambda)).first;
    return it->second;
  }

  const WeightPolytope& scaled_polytope_at(const RatVec& lambda, const Rational& eta) {
    if (eta == Rational(1)) return polytope_at(lambda);
    const auto key = std::make_pair(lambda, eta);
    auto it = scaled_cache_.find(key);
    if (it == scaled_cache_.end())
      it = scaled_cache_.emplace(key, polytope_at(lambda).homothety(lambda, eta)).first;
    return it->second;
  }

  /// Projection onto the eta-scaled polytope at the vertex.
  ProjectionResult project_scaled(const RatVec& lambda, const Rational& eta, const RatVec& x) {
    if (eta.sign() <= 0 || eta > Rational(1))
      throw UsageError("project_scaled: eta must lie in (0, 1]");
    return project(scaled_polytope_at(lambda, eta), x);
  }

  /// The unique arrangement face whose open weight cell contains x. The
  /// candidate vertices are the vertices of the face of x (the star of any
  /// owning vertex must contain x); the face is recovered as the enclosure of
  /// the witnesses, then certified on every witness polytope.
  WeightFaceLocation locate_weight_face(const RatVec& x) {
    const FaceDescriptor fx = ap_.locate_face(x);
    std::vector<RatVec> witnesses;
    for (const auto& lambda : ap_.face_vertices(fx))
      if (polytope_at(lambda).contains(x)) witnesses.push_back(lambda);
    if (witnesses.empty())
      throw ConsistencyError("locate_weight_face: no polytope claims " + x.str());

    const auto enc = ap_.enclosure(witnesses);
    if (!enc.face)
      throw ConsistencyError("locate_weight_face: witness vertices span no face at " + x.str());
    const FaceDescriptor face = *enc.face;

    // Cross-check: the witness set must be exactly vert(face), and x must lie
    // in the open cell keyed by the face inside every witness's lattice.
    if (ap_.face_vertices(face) != witnesses)
      throw ConsistencyError("locate_weight_face: witness set differs from vert(F) at " +
                             x.str());
    std::optional<std::size_t> owner_index;
    for (const auto& lambda : witnesses) {
      const auto& p = polytope_at(lambda);
      const auto idx = p.face_of_point(x);  // enforces per-polytope uniqueness
      if (!idx || *p.faces()[*idx].affine_key != face)
        throw ConsistencyError("locate_weight_face: open-cell mismatch at " + x.str());
      if (!owner_index) owner_index = idx;
    }
    return WeightFaceLocation{face, witnesses.front(), *owner_index, std::move(witnesses)};
  }

  /// The thickened cell anchored at x.
  ThickCell thick_cell(const RatVec& x, const Rational& eta) {
    if (eta.sign() <= 0 || eta > Rational(1))
      throw UsageError("thick_cell: eta must lie in (0, 1]");
    const auto loc = locate_weight_face(x);
    std::set<RatVec> verts;
    for (const auto& lambda : ap_.face_vertices(loc.face))
      verts.insert(lambda + eta * (x - lambda));
    return ThickCell{x, eta, loc.face, {verts.begin(), verts.end()}};
  }

  /// Membership of y in the closed thickened cell, exactly: y = eta*anchor +
  /// (1-eta)*z with z in the closed face.
  bool cell_contains(const ThickCell& cell, const RatVec& y) {
    if (cell.eta == Rational(1)) return y == cell.anchor;
    const RatVec z =
        (Rational(1) / (Rational(1) - cell.eta)) * (y - cell.eta * cell.anchor);
    return ap_.closure_contains(cell.face, z);
  }

  /// Recovers the unique thickened cell whose closure contains y: for each
  /// vertex of a closed alcove containing y, project onto the scaled polytope
  /// and pull the image back through the homothety; the vertices realizing
  /// the smallest witness count share the anchor.
  ThickCell locate_thick(const RatVec& y, const Rational& eta, bool debug_alcove_check = false) {
    if (eta.sign() <= 0 || eta > Rational(1))
      throw UsageError("locate_thick: eta must lie in (0, 1]");
    const FaceDescriptor fy = ap_.locate_face(y);
    const FaceDescriptor alcove = ap_.dominating_alcove(fy);
    ThickCell cell = locate_thick_in_alcove(y, eta, alcove);
    if (debug_alcove_check && fy != alcove) {
      // The procedure must not depend on the choice of dominating alcove:
      // rerun from an adjacent alcove across a wall containing the face.
      for (const Wall& w : ap_.alcove_walls(alcove)) {
        if (!fy[w.root].exact || fy[w.root].level != w.level) continue;
        FaceDescriptor other = alcove;
        other[w.root].level += (other[w.root].level == w.level) ? -1 : 1;
        if (!(locate_thick_in_alcove(y, eta, other) == cell))
          throw ConsistencyError("locate_thick: anchor depends on the alcove choice at " +
                                 y.str());
        break;
      }
    }
    return cell;
  }

  /// Exhaustive sampled verification of the weight-cell partition.
  TessellationReport verify_tessellation(const RatVec& lo, const RatVec& hi,
                                         const SamplePlan& plan,
                                         std::size_t closure_check_stride = 8) {
    const auto t0 = std::chrono::steady_clock::now();
    TessellationReport report;
    const auto samples = plan.generate(lo, hi);
    report.samples_total = samples.size();
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const RatVec& x = samples[s];
      try {
        const auto loc = locate_weight_face(x);
        if (closure_check_stride && s % closure_check_stride == 0)
          check_closure_identity(x, loc, report);
      } catch (const ConsistencyError& e) {
        report.violations.push_back({x, e.what()});
      }
    }
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return report;
  }

  /// Sampled verification of the thickened partition: location succeeds,
  /// membership and anchor roundtrips are exact, cells with overlapping
  /// bounding boxes and distinct anchors are disjoint (via exact separating
  /// functionals), and the open-scaled-polytope split holds.
  TessellationReport verify_thickened(const RatVec& lo, const RatVec& hi, const Rational& eta,
                                      const SamplePlan& plan,
                                      std::size_t debug_stride = 16) {
    const auto t0 = std::chrono::steady_clock::now();
    TessellationReport report;
    const auto samples = plan.generate(lo, hi);
    report.samples_total = samples.size();

    std::map<RatVec, ThickCell> cells;  // keyed by anchor
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const RatVec& y = samples[s];
      try {
        const ThickCell cell = locate_thick(y, eta, debug_stride && s % debug_stride == 0);
        if (!cell_contains(cell, y))
          throw ConsistencyError("verify_thickened: sample outside its located cell");
        check_roundtrip(cell, s);
        check_corollary_split(y, cell);
        cells.emplace(cell.anchor, cell);
      } catch (const ConsistencyError& e) {
        report.violations.push_back({y, e.what()});
      }
    }

    // Pairwise disjointness of distinct located cells, prefiltered by
    // bounding boxes.
    std::vector<const ThickCell*> list;
    list.reserve(cells.size());
    for (const auto& [a, c] : cells) list.push_back(&c);
    std::vector<std::pair<RatVec, RatVec>> boxes;
    boxes.reserve(list.size());
    for (const auto* c : list) boxes.push_back(bounding_box(c->closed_cell_vertices));
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        if (!boxes_overlap(boxes[i], boxes[j])) continue;
        const auto sep = separate_convex_hulls(list[i]->closed_cell_vertices,
                                               list[j]->closed_cell_vertices);
        if (!sep.disjoint)
          report.violations.push_back(
              {list[i]->anchor,
               "verify_thickened: cells of anchors " + list[i]->anchor.str() + " and " +
                   list[j]->anchor.str() + " intersect"});
      }

    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return report;
  }

 private:
  ThickCell locate_thick_in_alcove(const RatVec& y, const Rational& eta,
                                   const FaceDescriptor& alcove) {
    const auto verts = ap_.face_vertices(alcove);
    std::vector<RatVec> anchors;
    std::vector<std::vector<RatVec>> witness_sets;
    std::size_t best = verts.size() + 1;
    for (const auto& lambda : verts) {
      const auto res = project_scaled(lambda, eta, y);
      // Pull back through the homothety centered at lambda.
      const RatVec anchor = lambda + (Rational(1) / eta) * (res.point - lambda);
      std::vector<RatVec> witnesses;
      for (const auto& nu : verts)
        if (polytope_at(nu).contains(anchor)) witnesses.push_back(nu);
      anchors.push_back(anchor);
      witness_sets.push_back(std::move(witnesses));
      best = std::min(best, witness_sets.back().size());
    }

    std::optional<RatVec> anchor;
    std::vector<RatVec> argmin;
    for (std::size_t k = 0; k < verts.size(); ++k) {
      if (witness_sets[k].size() != best) continue;
      argmin.push_back(verts[k]);
      if (anchor && *anchor != anchors[k])
        throw ConsistencyError("locate_thick: anchors disagree across minimizing vertices");
      anchor = anchors[k];
    }
    ThickCell cell = thick_cell(*anchor, eta);
    // The minimizing vertex set must be exactly vert(F_P(anchor)).
    if (ap_.face_vertices(cell.face) != argmin)
      throw ConsistencyError("locate_thick: minimizing vertices differ from vert(F)");
    if (!cell_contains(cell, y))
      throw ConsistencyError("locate_thick: located cell misses the query point");
    return cell;
  }

  /// Closure identity at the sample: for each face in the witness lattices,
  /// membership in the closed cell must coincide with membership in all of
  /// the face's vertex polytopes.
  void check_closure_identity(const RatVec& x, const WeightFaceLocation& loc,
                              TessellationReport& report) {
    const auto& p = polytope_at(loc.owner);
    for (const auto& f : p.faces()) {
      const bool in_cell = p.closed_face_contains(f, x);
      bool in_all = true;
      for (const auto& mu : ap_.face_vertices(*f.affine_key))
        if (!polytope_at(mu).contains(x)) {
          in_all = false;
          break;
        }
      if (in_cell != in_all)
        report.violations.push_back(
            {x, "closure identity fails for face " + f.affine_key->str()});
    }
  }

  /// Anchor recovery from deterministic convex combinations of the cell.
  void check_roundtrip(const ThickCell& cell, std::size_t salt) {
    const auto& v = cell.closed_cell_vertices;
    std::vector<RatVec> probes;
    if (v.size() == 1) {
      probes.push_back(v[0]);
    } else {
      // Barycenter and one skewed combination.
      RatVec bary(v[0].size());
      for (const auto& p : v) bary += p;
      probes.push_back(Rational(1, static_cast<long>(v.size())) * bary);
      const std::size_t k = salt % v.size();
      RatVec skew = Rational(3, 4) * v[k];
      for (std::size_t i = 0; i < v.size(); ++i)
        if (i != k) skew += Rational(1, static_cast<long>(4 * (v.size() - 1))) * v[i];
      probes.push_back(std::move(skew));
    }
    for (const auto& probe : probes) {
      const ThickCell back = locate_thick(probe, cell.eta);
      if (!(back.anchor == cell.anchor))
        throw ConsistencyError("roundtrip: anchor not recovered from cell point");
    }
  }

  /// The sample lies in some open scaled polytope iff its anchor's face is a
  /// vertex face (and then the vertex matches).
  void check_corollary_split(const RatVec& y, const ThickCell& cell) {
    const auto face_verts = ap_.face_vertices(cell.face);
    const bool anchor_interior = ap_.face_dim(cell.face) == 0;
    const FaceDescriptor fy = ap_.locate_face(y);
    const auto alcove = ap_.dominating_alcove(fy);
    for (const auto& lambda : ap_.face_vertices(alcove)) {
      const auto& scaled = scaled_polytope_at(lambda, cell.eta);
      const bool in_open = scaled.open_face_contains(scaled.top(), y);
      const bool expected = anchor_interior && lambda == face_verts.front();
      if (in_open != expected)
        throw ConsistencyError("corollary split fails at vertex " + lambda.str());
    }
  }

  static std::pair<RatVec, RatVec> bounding_box(const std::vector<RatVec>& pts) {
    RatVec lo = pts[0], hi = pts[0];
    for (const auto& p : pts)
      for (std::size_t j = 0; j < p.size(); ++j) {
        lo[j] = min(lo[j], p[j]);
        hi[j] = max(hi[j], p[j]);
      }
    return {lo, hi};
  }

  static bool boxes_overlap(const std::pair<RatVec, RatVec>& a,
                            const std::pair<RatVec, RatVec>& b) {
    for (std::size_t j = 0; j < a.first.size(); ++j)
      if (a.second[j] < b.first[j] || b.second[j] < a.first[j]) return false;
    return true;
  }

  Apartment& ap_;
  std::map<RatVec, WeightPolytope> cache_;
  std::map<std::pair<RatVec, Rational>, WeightPolytope> scaled_cache_;
};

}  // namespace weylpoly
