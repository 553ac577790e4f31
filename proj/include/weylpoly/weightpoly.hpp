#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "weylpoly/apartment.hpp"

namespace weylpoly {

/// One face of a weight polytope, with everything needed for exact queries:
/// its lattice key, extreme points, support, an H-description within the
/// support, and the generators of its projection fiber cone.
struct PolyFace {
  SignVector key;                            // over the owning system's positive roots
  std::optional<FaceDescriptor> affine_key;  // arrangement face, for affine polytopes
  std::vector<RatVec> extreme_points;        // sorted
  RatVec center;                             // barycenter of the extreme points
  std::vector<RatVec> support_directions;    // basis of dir(supp), Gram-independent
  std::size_t dim = 0;
  std::vector<std::size_t> children;         // lattice indices of codim-1 subfaces
  // Facet inequalities within the support: row.x >= rhs on the closed face,
  // strict on the open face. Rows are Gram functionals of inward directions.
  std::vector<std::pair<RatVec, Rational>> facet_normals;
  std::vector<RatVec> fiber_generators;      // rays of the projection fiber cone
};

/// Convex hull of one Weyl orbit of a regular base point, with its complete
/// combinatorial face lattice. Faces are built from fixator orbits, never by
/// convex-hull computation: the lattice keys are the vectorial faces of the
/// owning arrangement (sign vectors), plus affine arrangement descriptors for
/// polytopes attached to a vertex.
class WeightPolytope {
 public:
  /// conv(W.b) for the given system; b must be regular. The lattice labels
  /// follow the dominant representative of b (the hull does not depend on the
  /// orbit representative).
  static WeightPolytope build_vectorial(const RootSystem& psi, const RatVec& b) {
    if (!psi.is_regular(b)) throw UsageError("build_vectorial: base point is not regular");
    const RatVec b0 = psi.to_dominant(b).apply(b);
    WeightPolytope p;
    p.gram_ = psi.gram();
    p.base_ = b0;
    p.build_lattice(psi, b0);
    return p;
  }

  /// The affine weight polytope at a vertex: a translate of the vectorial
  /// polytope of the local root system, keyed by arrangement faces.
  static WeightPolytope build_affine(Apartment& ap, const RatVec& lambda) {
    const auto ls = ap.local_root_system(lambda);  // throws UsageError on non-vertex
    WeightPolytope p;
    p.gram_ = ap.roots().gram();
    p.lambda_ = lambda;
    p.base_ = lambda + ls.chamber_point;  // = b_C
    p.build_lattice(ls.system, ls.chamber_point);
    p.translate(lambda);
    p.attach_affine_keys(ap, ls);
    return p;
  }

  bool is_affine() const { return lambda_.has_value(); }
  const RatVec& vertex() const {
    if (!lambda_) throw UsageError("vertex(): vectorial polytope has no vertex");
    return *lambda_;
  }
  const RatVec& base_point() const { return base_; }
  const RatMat& gram() const { return gram_; }

  const std::vector<PolyFace>& faces() const { return faces_; }
  const PolyFace& top() const { return faces_[top_]; }
  std::size_t top_index() const { return top_; }

  const std::vector<RatVec>& extreme_points() const { return faces_[top_].extreme_points; }

  std::optional<std::size_t> face_index_by_key(const SignVector& key) const {
    auto it = key_index_.find(key);
    if (it == key_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> face_index_by_affine_key(const FaceDescriptor& key) const {
    auto it = affine_index_.find(key);
    if (it == affine_index_.end()) return std::nullopt;
    return it->second;
  }

  /// x lies in the affine support of the face.
  bool support_contains(const PolyFace& f, const RatVec& x) const {
    if (f.support_directions.empty()) return x == f.center;
    RatMat m(x.size(), f.support_directions.size());
    for (std::size_t j = 0; j < f.support_directions.size(); ++j)
      for (std::size_t i = 0; i < x.size(); ++i) m(i, j) = f.support_directions[j][i];
    auto sol = linalg::solve_linear(m, x - f.center);
    return sol.has_value();
  }

  /// Exact membership in the closed face: support plus facet inequalities.
  bool closed_face_contains(const PolyFace& f, const RatVec& x) const {
    if (!support_contains(f, x)) return false;
    for (const auto& [row, rhs] : f.facet_normals)
      if (row.dot(x) < rhs) return false;
    return true;
  }

  /// Exact membership in the relatively open face.
  bool open_face_contains(const PolyFace& f, const RatVec& x) const {
    if (!support_contains(f, x)) return false;
    for (const auto& [row, rhs] : f.facet_normals)
      if (row.dot(x) <= rhs) return false;
    return true;
  }

  bool contains(const RatVec& x) const { return closed_face_contains(top(), x); }

  /// Index of a violated facet inequality of the closed polytope, as an
  /// exclusion certificate for an outside point.
  std::optional<std::size_t> separating_facet(const RatVec& x) const {
    const PolyFace& t = top();
    for (std::size_t k = 0; k < t.facet_normals.size(); ++k)
      if (t.facet_normals[k].first.dot(x) < t.facet_normals[k].second) return k;
    return std::nullopt;
  }

  /// The unique open face containing x, or nullopt when x is outside the
  /// closed polytope. Uniqueness is enforced, not assumed.
  std::optional<std::size_t> face_of_point(const RatVec& x) const {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      if (!open_face_contains(faces_[i], x)) continue;
      if (found)
        throw ConsistencyError("face_of_point: two open faces claim the point (" +
                               faces_[*found].center.str() + ", " + faces_[i].center.str() + ")");
      found = i;
    }
    if (!found && contains(x))
      throw ConsistencyError("face_of_point: point in polytope but in no open face");
    return found;
  }

  /// Image under the homothety with the given center and positive ratio.
  WeightPolytope homothety(const RatVec& center, const Rational& ratio) const {
    if (ratio.sign() <= 0) throw UsageError("homothety: ratio must be positive");
    auto map = [&](const RatVec& x) { return center + ratio * (x - center); };
    WeightPolytope p = *this;
    p.base_ = map(base_);
    for (auto& f : p.faces_) {
      for (auto& v : f.extreme_points) v = map(v);
      f.center = map(f.center);
      for (auto& [row, rhs] : f.facet_normals)
        rhs = ratio * rhs + (Rational(1) - ratio) * row.dot(center);
      // support directions and fiber generators are directions: unchanged.
    }
    return p;
  }

  /// Polytope equality is equality of extreme-point sets.
  friend bool operator==(const WeightPolytope& a, const WeightPolytope& b) {
    return a.extreme_points() == b.extreme_points();
  }

 private:
  WeightPolytope() = default;

  /// Lattice over the vectorial faces of (ambient, psi): for each subset E of
  /// the base and each group element w, the face of the cone w.(sum of rays
  /// of E) carries the orbit of b under the conjugated fixator.
  void build_lattice(const RootSystem& psi, const RatVec& b) {
    const std::size_t n = psi.ambient_dim();
    const auto& pos = psi.positive_roots();
    const auto coweights = psi.fundamental_coweights();
    const auto group = psi.weyl_group_elements();

    // Base coordinates of every positive root, for sign computation.
    std::vector<RatVec> base_coords;
    base_coords.reserve(pos.size());
    for (const auto& r : pos) base_coords.push_back(psi.root_in_base_coords(r));
    std::map<RatVec, std::size_t> pos_index;
    for (std::size_t k = 0; k < pos.size(); ++k) pos_index[pos[k]] = k;

    const std::size_t rank = psi.rank();
    for (std::size_t mask = 0; mask < (std::size_t{1} << rank); ++mask) {
      std::vector<int> in_e(rank, 0);
      std::vector<WeylElement> fixator_gens;
      for (std::size_t i = 0; i < rank; ++i) {
        if (mask & (std::size_t{1} << i)) in_e[i] = 1;
        else fixator_gens.push_back(psi.simple_reflection(static_cast<int>(i)));
      }
      const auto orbit = RootSystem::orbit(fixator_gens, b);

      // Sign of positive root beta on F_E: positive iff supp(beta) meets E.
      SignVector base_sign(pos.size(), 0);
      for (std::size_t k = 0; k < pos.size(); ++k)
        for (std::size_t i = 0; i < rank; ++i)
          if (in_e[i] && !base_coords[k][i].is_zero()) {
            base_sign[k] = 1;
            break;
          }

      for (const auto& w : group) {
        // Key of w.F_E: sign of beta on w.F_E = sign of (beta o w) on F_E.
        SignVector key(pos.size(), 0);
        for (std::size_t k = 0; k < pos.size(); ++k) {
          RatVec pulled(n);
          for (std::size_t j = 0; j < n; ++j) pulled[j] = pos[k].dot(w.matrix.col(j));
          auto pi = pos_index.find(pulled);
          if (pi != pos_index.end()) {
            key[k] = base_sign[pi->second];
          } else {
            pi = pos_index.find(-pulled);
            if (pi == pos_index.end())
              throw ConsistencyError("build_lattice: root image escaped the system");
            key[k] = -base_sign[pi->second];
          }
        }
        if (key_index_.count(key)) continue;

        PolyFace f;
        f.key = key;
        std::set<RatVec> pts;
        for (const auto& v : orbit) pts.insert(w.apply(v));
        f.extreme_points.assign(pts.begin(), pts.end());
        RatVec sum(n);
        for (const auto& v : f.extreme_points) sum += v;
        f.center = Rational(1, static_cast<long>(f.extreme_points.size())) * sum;
        for (const auto& v : f.extreme_points) {
          const RatVec d = v - f.center;
          if (d.is_zero()) continue;
          auto trial = f.support_directions;
          trial.push_back(d);
          if (linalg::rank_of(trial) > f.support_directions.size())
            f.support_directions = std::move(trial);
        }
        f.dim = f.support_directions.size();
        for (std::size_t i = 0; i < rank; ++i)
          if (in_e[i]) f.fiber_generators.push_back(w.apply(coweights[i]));
        key_index_.emplace(std::move(key), faces_.size());
        faces_.push_back(std::move(f));
      }
    }

    // The top face is the one keyed by the zero vectorial face.
    const SignVector zero_key(pos.size(), 0);
    top_ = key_index_.at(zero_key);

    link_children();
    derive_facet_inequalities();
  }

  /// F_small^v inside closure(F_big^v), entrywise on signs.
  static bool cone_dominated(const SignVector& small, const SignVector& big) {
    for (std::size_t k = 0; k < small.size(); ++k) {
      if (big[k] == 0 && small[k] != 0) return false;
      if (small[k] != 0 && small[k] != big[k]) return false;
    }
    return true;
  }

  void link_children() {
    // Polytope-face inclusion is cone dominance reversed: the face for G is
    // inside the closure of the face for F iff F's cone is dominated by G's.
    for (std::size_t i = 0; i < faces_.size(); ++i)
      for (std::size_t j = 0; j < faces_.size(); ++j) {
        if (i == j) continue;
        if (faces_[j].dim + 1 != faces_[i].dim) continue;
        if (cone_dominated(faces_[i].key, faces_[j].key)) faces_[i].children.push_back(j);
      }
  }

  void derive_facet_inequalities() {
    for (auto& f : faces_) {
      for (std::size_t c : f.children) {
        const PolyFace& child = faces_[c];
        const RatVec foot = orthogonal_project_affine(f.center, child.center,
                                                      child.support_directions, gram_);
        const RatVec inward = f.center - foot;
        if (inward.is_zero())
          throw ConsistencyError("derive_facet_inequalities: degenerate child support");
        const RatVec row = gram_.apply(inward);
        f.facet_normals.emplace_back(row, row.dot(child.center));
      }
    }
  }

  void translate(const RatVec& lambda) {
    for (auto& f : faces_) {
      for (auto& v : f.extreme_points) v += lambda;
      f.center += lambda;
      for (auto& [row, rhs] : f.facet_normals) rhs += row.dot(lambda);
    }
  }

  /// Attaches arrangement descriptors to every face via the vertex-local
  /// correspondence, and replaces fiber generators by the adjacent-vertex
  /// differences of the arrangement face.
  void attach_affine_keys(Apartment& ap, const Apartment::LocalSystem& ls) {
    const auto levels = vertex_levels(ap, ls);
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      PolyFace& f = faces_[i];
      std::vector<FaceEntry> entries(ap.num_positive());
      std::vector<bool> set(ap.num_positive(), false);
      for (std::size_t k = 0; k < f.key.size(); ++k) {
        const auto [gi, sign] = ls.global_index[k];
        const int s = f.key[k] * sign;  // sign of the global root on the cone
        const long long lvl = levels[k];
        entries[gi] = s == 0 ? FaceEntry{true, lvl} : FaceEntry{false, s > 0 ? lvl : lvl - 1};
        set[gi] = true;
      }
      for (std::size_t gi = 0; gi < ap.num_positive(); ++gi) {
        if (set[gi]) continue;
        entries[gi] = FaceEntry{false, checked_level(ap.value(gi, ls.vertex).floor())};
      }
      FaceDescriptor key(std::move(entries));
      if (!ap.realizable(key))
        throw ConsistencyError("attach_affine_keys: produced an empty arrangement face");
      affine_index_.emplace(key, i);
      f.affine_key = std::move(key);

      // Fiber cone generators: differences to the vertices of the arrangement
      // face adjacent to lambda.
      f.fiber_generators.clear();
      for (const auto& mu : ap.face_vertices(*f.affine_key)) {
        if (mu == ls.vertex) continue;
        const RatVec mid = Rational(1, 2) * (mu + ls.vertex);
        const auto seg = ap.locate_face(mid);
        if (ap.face_dim(seg) == 1 && ap.closure_contains(seg, mu) &&
            ap.closure_contains(seg, ls.vertex))
          f.fiber_generators.push_back(mu - ls.vertex);
      }
    }
  }

  std::vector<long long> vertex_levels(const Apartment& ap, const Apartment::LocalSystem& ls) {
    std::vector<long long> lv(ls.global_index.size());
    for (std::size_t k = 0; k < lv.size(); ++k)
      lv[k] = checked_level(ap.value(ls.global_index[k].first, ls.vertex).floor());
    return lv;
  }

  RatMat gram_;
  RatVec base_;
  std::optional<RatVec> lambda_;
  std::vector<PolyFace> faces_;
  std::size_t top_ = 0;
  std::map<SignVector, std::size_t> key_index_;
  std::map<FaceDescriptor, std::size_t> affine_index_;
};

}  // namespace weylpoly
