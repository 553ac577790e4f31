#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "weylpoly/lp.hpp"
#include "weylpoly/rootsystem.hpp"

namespace weylpoly {

/// One clause of a face descriptor: the value of a fixed positive root on the
/// face is either exactly `level` or inside the open interval
/// ]level, level+1[.
struct FaceEntry {
  bool exact = false;
  long long level = 0;
  friend auto operator<=>(const FaceEntry&, const FaceEntry&) = default;
};

/// Canonical encoding of a face of the affine arrangement: one entry per
/// positive root, in the root system's positive-root order. Two faces are
/// equal iff their descriptors are equal.
class FaceDescriptor {
 public:
  FaceDescriptor() = default;
  explicit FaceDescriptor(std::vector<FaceEntry> entries) : e_(std::move(entries)) {}

  std::size_t size() const { return e_.size(); }
  const FaceEntry& operator[](std::size_t i) const { return e_[i]; }
  FaceEntry& operator[](std::size_t i) { return e_[i]; }

  bool is_alcove() const {
    return std::none_of(e_.begin(), e_.end(), [](const FaceEntry& x) { return x.exact; });
  }

  /// True iff `other` is contained in the closure of this face, decided
  /// entry-wise: every point of `other` satisfies this face's closed clauses.
  bool dominates(const FaceDescriptor& other) const {
    if (e_.size() != other.e_.size()) throw UsageError("FaceDescriptor: size mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) {
      const auto& big = e_[i];
      const auto& small = other.e_[i];
      if (small.exact) {
        if (big.exact ? big.level != small.level
                      : (big.level != small.level && big.level != small.level - 1))
          return false;
      } else {
        if (big.exact || big.level != small.level) return false;
      }
    }
    return true;
  }

  friend auto operator<=>(const FaceDescriptor&, const FaceDescriptor&) = default;

  std::string str() const {
    std::string s;
    for (const auto& x : e_) {
      s += x.exact ? "=" : ">";
      s += std::to_string(x.level);
      s += ";";
    }
    return s;
  }

 private:
  std::vector<FaceEntry> e_;
};

/// Affine map x -> linear.x + translation whose linear part lies in the
/// vectorial Weyl group; maps walls to walls.
struct AffineIsometry {
  RatMat linear;
  RatVec translation;

  static AffineIsometry identity(std::size_t n) {
    return {RatMat::identity(n), RatVec::zero(n)};
  }

  RatVec apply(const RatVec& x) const { return linear.apply(x) + translation; }

  AffineIsometry after(const AffineIsometry& inner) const {
    return {linear * inner.linear, linear.apply(inner.translation) + translation};
  }

  AffineIsometry inverse() const {
    auto inv = linalg::inverse(linear);
    if (!inv) throw ConsistencyError("AffineIsometry: singular linear part");
    return {*inv, -(inv->apply(translation))};
  }

  std::string key() const { return linear.str() + "|" + translation.str(); }
  friend bool operator==(const AffineIsometry& a, const AffineIsometry& b) {
    return a.linear == b.linear && a.translation == b.translation;
  }
};

/// Wall levels are kept in machine integers; inputs that overflow them are
/// far outside any supported desk-scale window.
inline long long checked_level(const mpz_class& z) {
  if (!z.fits_slong_p()) throw UsageError("coordinate magnitude out of supported range");
  return z.get_si();
}

/// Wall {x : alpha(x) = level} named by positive-root index and level.
struct Wall {
  std::size_t root;
  long long level;
  friend auto operator<=>(const Wall&, const Wall&) = default;
};

/// Result of enclosing a point set: always the per-root integral bounds; when
/// the input lies in one closed alcove, also the minimal dominating face.
struct Enclosure {
  std::optional<FaceDescriptor> face;  // closure of this face is the enclosure
  std::vector<std::pair<mpz_class, mpz_class>> bounds;  // per positive root [lo, hi]
};

/// Open halfspace {x : functional(x) > rhs} given by a linear functional in
/// dual coordinates.
struct OpenHalfspace {
  RatVec functional;
  Rational rhs;
  bool contains(const RatVec& x) const { return functional.dot(x) > rhs; }
};

/// Vectorial face of a hyperplane arrangement at the origin: sign of each
/// positive root (-1, 0, +1), in the owning system's positive-root order.
using SignVector = std::vector<int>;

/// The affine apartment of a root system: faces, alcoves, vertices, galleries,
/// stars, enclosures, and the vertex-local correspondence between affine and
/// vectorial faces.
///
/// Holds memo tables (galleries, realizability witnesses); use one Apartment
/// per thread. All returned values are immutable.
class Apartment {
 public:
  /// `base` must be a regular point of the fundamental alcove; defaults to
  /// the barycenter of the fundamental alcove's vertices.
  explicit Apartment(RootSystem rs, std::optional<RatVec> base = std::nullopt)
      : rs_(std::move(rs)) {
    FaceDescriptor c0(std::vector<FaceEntry>(num_positive(), FaceEntry{false, 0}));
    if (!realizable(c0)) throw ConsistencyError("fundamental alcove is empty");
    c0_ = std::move(c0);
    if (base) {
      base_ = std::move(*base);
    } else {
      const auto verts = face_vertices(c0_);
      RatVec sum(dim());
      for (const auto& v : verts) sum += v;
      base_ = Rational(1, static_cast<long>(verts.size())) * sum;
    }
    for (std::size_t i = 0; i < num_positive(); ++i)
      if (value(i, base_).is_integer())
        throw ConfigError("base point is not regular: root " + std::to_string(i) +
                          " takes an integral value");
    if (locate_face(base_) != c0_)
      throw ConfigError("base point does not lie in the fundamental alcove");
  }

  const RootSystem& roots() const { return rs_; }
  std::size_t dim() const { return rs_.ambient_dim(); }
  std::size_t num_positive() const { return rs_.positive_roots().size(); }
  const RatVec& base() const { return base_; }
  const FaceDescriptor& fundamental_alcove() const { return c0_; }

  Rational value(std::size_t root_index, const RatVec& x) const {
    return rs_.positive_roots()[root_index].dot(x);
  }

  /// The unique face containing x.
  FaceDescriptor locate_face(const RatVec& x) const {
    std::vector<FaceEntry> entries(num_positive());
    for (std::size_t i = 0; i < num_positive(); ++i) {
      const Rational v = value(i, x);
      entries[i] = FaceEntry{v.is_integer(), checked_level(v.floor())};
    }
    return FaceDescriptor(std::move(entries));
  }

  /// x is a vertex iff the roots integral at x have full rank.
  bool is_vertex(const RatVec& x) const {
    std::vector<RatVec> integral;
    for (std::size_t i = 0; i < num_positive(); ++i)
      if (value(i, x).is_integer()) integral.push_back(rs_.positive_roots()[i]);
    return linalg::rank_of(integral) == dim();
  }

  std::size_t face_dim(const FaceDescriptor& f) const {
    std::vector<RatVec> exact;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (f[i].exact) exact.push_back(rs_.positive_roots()[i]);
    return dim() - linalg::rank_of(exact);
  }

  /// Membership of x in the closure of f (closed box clauses).
  bool closure_contains(const FaceDescriptor& f, const RatVec& x) const {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Rational v = value(i, x);
      if (f[i].exact) {
        if (v != Rational(f[i].level)) return false;
      } else {
        if (v < Rational(f[i].level) || v > Rational(f[i].level + 1)) return false;
      }
    }
    return true;
  }

  bool face_contains(const FaceDescriptor& f, const RatVec& x) const {
    return locate_face(x) == f;
  }

  /// Non-emptiness of the described region, decided by exact LP; memoized.
  bool realizable(const FaceDescriptor& f) { return static_cast<bool>(witness_opt(f)); }

  /// A rational point in the (relatively open) face; memoized.
  RatVec witness(const FaceDescriptor& f) {
    auto w = witness_opt(f);
    if (!w) throw UsageError("witness: face descriptor is not realizable");
    return *w;
  }

  /// All vertices of the apartment lying in the closure of f, sorted.
  std::vector<RatVec> face_vertices(const FaceDescriptor& f) {
    auto cached = face_vertices_cache_.find(f);
    if (cached != face_vertices_cache_.end()) return cached->second;
    std::vector<std::size_t> exact_idx, between_idx;
    for (std::size_t i = 0; i < f.size(); ++i)
      (f[i].exact ? exact_idx : between_idx).push_back(i);

    std::vector<RatVec> rows;
    RatVec rhs_fixed;
    {
      std::vector<Rational> rhs;
      for (auto i : exact_idx) {
        rows.push_back(rs_.positive_roots()[i]);
        rhs.push_back(Rational(f[i].level));
      }
      rhs_fixed = RatVec(std::move(rhs));
    }
    const std::size_t base_rank = linalg::rank_of(rows);
    std::set<RatVec> found;

    // Tighten `needed` of the interval clauses to integral equalities, trying
    // both endpoints, pruning branches that do not raise the rank.
    struct Frame {
      std::vector<RatVec> rows;
      std::vector<Rational> rhs;
      std::size_t next;
      std::size_t rank;
    };
    std::vector<Rational> rhs0(rhs_fixed.begin(), rhs_fixed.end());
    std::vector<Frame> stack{{rows, rhs0, 0, base_rank}};
    while (!stack.empty()) {
      Frame fr = std::move(stack.back());
      stack.pop_back();
      if (fr.rank == dim()) {
        RatMat m(fr.rows);
        auto sol = linalg::solve_linear(m, RatVec(fr.rhs));
        if (sol && sol->kernel.empty() && closure_contains(f, sol->particular))
          found.insert(sol->particular);
        continue;
      }
      if (fr.next >= between_idx.size()) continue;
      // Skip clause `next`.
      stack.push_back({fr.rows, fr.rhs, fr.next + 1, fr.rank});
      // Tighten clause `next` to either endpoint, if it raises the rank.
      const std::size_t i = between_idx[fr.next];
      auto with_row = fr.rows;
      with_row.push_back(rs_.positive_roots()[i]);
      const std::size_t new_rank = linalg::rank_of(with_row);
      if (new_rank == fr.rank) continue;
      for (long long side : {f[i].level, f[i].level + 1}) {
        auto rhs2 = fr.rhs;
        rhs2.push_back(Rational(side));
        stack.push_back({with_row, std::move(rhs2), fr.next + 1, new_rank});
      }
    }
    std::vector<RatVec> out(found.begin(), found.end());
    face_vertices_cache_.emplace(f, out);
    return out;
  }

  /// An alcove whose closure contains f (f itself when f is an alcove).
  FaceDescriptor dominating_alcove(const FaceDescriptor& f) {
    if (f.is_alcove()) return f;
    const RatVec p = witness(f);
    const RatVec d = generic_direction();
    const FaceDescriptor alc = locate_face(p + step_epsilon(p, d) * d);
    if (!alc.is_alcove() || !alc.dominates(f))
      throw ConsistencyError("dominating_alcove: perturbation failed");
    return alc;
  }

  /// Facet walls of an alcove, memoized. A candidate wall is a facet iff the
  /// adjacent descriptor across it is realizable.
  std::vector<Wall> alcove_walls(const FaceDescriptor& alcove) {
    if (!alcove.is_alcove()) throw UsageError("alcove_walls: not an alcove");
    auto it = walls_cache_.find(alcove);
    if (it != walls_cache_.end()) return it->second;
    std::vector<Wall> walls;
    for (std::size_t i = 0; i < alcove.size(); ++i) {
      for (int side : {0, 1}) {
        FaceDescriptor adj = alcove;
        adj[i].level += side ? 1 : -1;
        if (realizable(adj)) walls.push_back(Wall{i, alcove[i].level + side});
      }
    }
    walls_cache_[alcove] = walls;
    return walls;
  }

  /// Orthogonal reflection in the wall {alpha_i = level}.
  AffineIsometry wall_reflection(const Wall& w) const {
    const RatVec& root = rs_.positive_roots()[w.root];
    const RatVec& coroot = rs_.positive_coroots()[w.root];
    AffineIsometry s;
    s.linear = RootSystem::reflection_from_pair(root, coroot, dim());
    s.translation = Rational(w.level) * coroot;
    return s;
  }

  /// The unique element of the affine Weyl group with w.C0 = C, found by a
  /// wall-crossing walk from C toward C0, together with the crossed walls
  /// (walls of the moving alcove, in crossing order).
  std::pair<AffineIsometry, std::vector<Wall>> gallery_word(const FaceDescriptor& alcove) {
    if (!alcove.is_alcove()) throw UsageError("gallery_word: not an alcove");
    auto it = gallery_cache_.find(alcove);
    if (it == gallery_cache_.end()) {
      FaceDescriptor d = alcove;
      std::vector<Wall> word;
      while (d != c0_) {
        std::optional<std::pair<std::size_t, long long>> best;  // (root, wall level)
        for (std::size_t i = 0; i < d.size(); ++i) {
          if (d[i].level == 0) continue;
          const long long wall_level = d[i].level > 0 ? d[i].level : d[i].level + 1;
          FaceDescriptor adj = d;
          adj[i].level += d[i].level > 0 ? -1 : 1;
          if (!realizable(adj)) continue;
          if (!best || std::make_pair(i, wall_level) < *best) best = {i, wall_level};
        }
        if (!best) throw ConsistencyError("gallery_word: no separating facet wall");
        const Wall w{best->first, best->second};
        word.push_back(w);
        d[w.root].level += d[w.root].level > 0 ? -1 : 1;
      }
      AffineIsometry iso = AffineIsometry::identity(dim());
      for (auto rit = word.rbegin(); rit != word.rend(); ++rit)
        iso = wall_reflection(*rit).after(iso);
      // Postcondition: w maps the fundamental alcove onto the input alcove.
      if (locate_face(iso.apply(base_)) != alcove)
        throw ConsistencyError("gallery_word: computed isometry misses the target alcove");
      it = gallery_cache_.emplace(alcove, std::make_pair(std::move(iso), std::move(word))).first;
    }
    return it->second;
  }

  /// b_C, the W^aff-transport of the base point into the alcove C.
  RatVec base_point(const FaceDescriptor& alcove) {
    auto it = base_point_cache_.find(alcove);
    if (it == base_point_cache_.end()) {
      const RatVec b = gallery_word(alcove).first.apply(base_);
      it = base_point_cache_.emplace(alcove, b).first;
    }
    return it->second;
  }

  /// The unique W^aff-image of x inside the closed fundamental alcove,
  /// together with the isometry realizing it.
  std::pair<AffineIsometry, RatVec> fundamental_representative(const RatVec& x) {
    const auto w = gallery_word(dominating_alcove(locate_face(x))).first.inverse();
    RatVec y = w.apply(x);
    if (!closure_contains(c0_, y))
      throw ConsistencyError("fundamental_representative: image not in closed alcove");
    return {w, y};
  }

  /// Enclosure of a finite point set: intersection of all half-apartments
  /// containing it. Returns the minimal dominating face when the set lies in
  /// a common closed alcove, and the per-root bounds always.
  Enclosure enclosure(const std::vector<RatVec>& points) {
    if (points.empty()) throw UsageError("enclosure: empty point set");
    Enclosure out;
    bool narrow = true;
    std::vector<FaceEntry> entries(num_positive());
    for (std::size_t i = 0; i < num_positive(); ++i) {
      Rational lo = value(i, points[0]), hi = lo;
      for (const auto& p : points) {
        const Rational v = value(i, p);
        lo = min(lo, v);
        hi = max(hi, v);
      }
      const mpz_class l = lo.floor(), h = hi.ceil();
      out.bounds.emplace_back(l, h);
      if (h - l > 1) narrow = false;
      if (narrow) {
        entries[i] = (h == l) ? FaceEntry{true, checked_level(l)} : FaceEntry{false, checked_level(l)};
      }
    }
    if (narrow) {
      FaceDescriptor f(std::move(entries));
      if (realizable(f)) out.face = std::move(f);
    }
    return out;
  }

  /// Generators of the fixator W^aff_F: reflections in the walls of a
  /// dominating alcove that contain F. Empty for alcoves.
  std::vector<AffineIsometry> fixator_generators(const FaceDescriptor& f) {
    std::vector<AffineIsometry> gens;
    if (f.is_alcove()) return gens;
    const FaceDescriptor c = dominating_alcove(f);
    for (const Wall& w : alcove_walls(c))
      if (f[w.root].exact && f[w.root].level == w.level) gens.push_back(wall_reflection(w));
    return gens;
  }

  /// Full fixator subgroup by closure over the generators.
  std::vector<AffineIsometry> fixator_elements(const FaceDescriptor& f) {
    const auto gens = fixator_generators(f);
    std::map<std::string, AffineIsometry> seen;
    const auto id = AffineIsometry::identity(dim());
    seen.emplace(id.key(), id);
    std::vector<AffineIsometry> frontier{id};
    while (!frontier.empty()) {
      std::vector<AffineIsometry> next;
      for (const auto& w : frontier)
        for (const auto& g : gens) {
          AffineIsometry v = g.after(w);
          if (seen.emplace(v.key(), v).second) next.push_back(std::move(v));
        }
      frontier = std::move(next);
    }
    std::vector<AffineIsometry> out;
    out.reserve(seen.size());
    for (auto& [k, v] : seen) out.push_back(std::move(v));
    return out;
  }

  /// The star of F (union of faces dominating F) as a finite intersection of
  /// open halfspaces: w.D for w in the fixator and D ranging over the open
  /// sides of the dominating alcove's non-containing walls.
  std::vector<OpenHalfspace> star_halfspaces(const FaceDescriptor& f) {
    const FaceDescriptor c = dominating_alcove(f);
    std::vector<OpenHalfspace> out;
    const auto group = fixator_elements(f);
    for (const Wall& w : alcove_walls(c)) {
      if (f[w.root].exact && f[w.root].level == w.level) continue;  // contains F
      // Open side of the wall containing the alcove.
      const bool above = c[w.root].level >= w.level;
      for (const auto& g : group) {
        // x in g.D  <=>  alpha(g^-1 x) > level (resp. <).
        const AffineIsometry gi = g.inverse();
        RatVec functional(dim());
        const RatVec& alpha = rs_.positive_roots()[w.root];
        for (std::size_t j = 0; j < dim(); ++j) functional[j] = alpha.dot(gi.linear.col(j));
        Rational rhs = Rational(w.level) - alpha.dot(gi.translation);
        if (!above) {
          functional = -functional;
          rhs = -rhs;
        }
        out.push_back(OpenHalfspace{std::move(functional), std::move(rhs)});
      }
    }
    return out;
  }

  /// Membership in the star of F via descriptors: x's face must dominate F.
  bool star_contains(const FaceDescriptor& f, const RatVec& x) const {
    return locate_face(x).dominates(f);
  }

  // --- Vertex-local vectorial structure -------------------------------

  /// The root subsystem of roots integral at the vertex, with the base
  /// adapted to the chamber of b_C - lambda for a dominating alcove C.
  /// `global_index[k]` maps the local k-th positive root to (index, sign) in
  /// the ambient system's positive list.
  struct LocalSystem {
    RootSystem system;
    RatVec vertex;
    std::vector<std::pair<std::size_t, int>> global_index;
    RatVec chamber_point;  // b_C - vertex
  };

  LocalSystem local_root_system(const RatVec& lambda) {
    if (!is_vertex(lambda)) throw UsageError("local_root_system: not a vertex");
    const FaceDescriptor c = dominating_alcove(locate_face(lambda));
    const RatVec g = base_point(c) - lambda;
    std::vector<std::pair<RatVec, RatVec>> pairs;
    for (std::size_t i = 0; i < num_positive(); ++i)
      if (value(i, lambda).is_integer())
        pairs.emplace_back(rs_.positive_roots()[i], rs_.positive_coroots()[i]);
    LocalSystem ls{RootSystem::subsystem(pairs, g, rs_.gram(), dim()), lambda, {}, g};
    for (const auto& r : ls.system.positive_roots()) {
      auto idx = rs_.positive_index(r);
      if (!idx) throw ConsistencyError("local_root_system: root missing from ambient system");
      ls.global_index.push_back(*idx);
    }
    return ls;
  }

  /// Theta: the vectorial face R_{>0}(F - lambda) of the local arrangement,
  /// encoded as a sign vector over the local system's positive roots.
  SignVector vertex_cone_face(const LocalSystem& ls, const FaceDescriptor& f) const {
    if (!closure_contains(f, ls.vertex))
      throw UsageError("vertex_cone_face: face does not dominate the vertex");
    SignVector sv(ls.system.positive_roots().size(), 0);
    const auto levels = levels_at_vertex(ls);
    for (std::size_t k = 0; k < sv.size(); ++k) {
      const auto [gi, sign] = ls.global_index[k];
      const long long lvl = levels[k];
      const FaceEntry e = f[gi];
      int s;
      if (e.exact) {
        if (e.level != lvl) throw ConsistencyError("vertex_cone_face: exact level mismatch");
        s = 0;
      } else if (e.level == lvl) {
        s = 1;
      } else if (e.level == lvl - 1) {
        s = -1;
      } else {
        throw ConsistencyError("vertex_cone_face: face not local to the vertex");
      }
      sv[k] = s * sign;
    }
    return sv;
  }

  /// A point of the open cone described by a sign vector over the local
  /// positive roots; nullopt when the sign vector is not realizable.
  std::optional<RatVec> cone_witness(const LocalSystem& ls, const SignVector& sv) const {
    AffineLp lp;
    lp.num_vars = dim() + 1;  // x and slack t
    const std::size_t t = dim();
    for (std::size_t k = 0; k < sv.size(); ++k) {
      RatVec row(dim() + 1);
      const RatVec& rho = ls.system.positive_roots()[k];
      for (std::size_t j = 0; j < dim(); ++j) row[j] = rho[j];
      if (sv[k] == 0) {
        lp.add(row, 0, Rational(0));
      } else {
        row[t] = Rational(-sv[k]);
        lp.add(row, sv[k] > 0 ? +1 : -1, Rational(0));
      }
    }
    for (std::size_t j = 0; j < dim(); ++j) {
      RatVec row(dim() + 1);
      row[j] = 1;
      lp.add(row, -1, Rational(1));
      lp.add(row, +1, Rational(-1));
    }
    RatVec obj(dim() + 1);
    obj[t] = 1;
    lp.add(obj, -1, Rational(1, 2));
    lp.objective = obj;
    auto out = lp.solve();
    if (out.status != lp::Status::Optimal || !(out.value > Rational(0))) return std::nullopt;
    RatVec x(dim());
    for (std::size_t j = 0; j < dim(); ++j) x[j] = out.x[j];
    return x;
  }

  /// Xi, the inverse of Theta: the unique affine face containing the germ of
  /// lambda + cone at lambda, realized by stepping a small rational epsilon
  /// along the cone and locating the resulting point.
  FaceDescriptor vertex_cone_face_inverse(const LocalSystem& ls, const SignVector& sv) {
    if (sv.size() != ls.system.positive_roots().size())
      throw UsageError("vertex_cone_face_inverse: sign vector size mismatch");
    if (std::all_of(sv.begin(), sv.end(), [](int s) { return s == 0; }))
      return locate_face(ls.vertex);
    auto d = cone_witness(ls, sv);
    if (!d) throw UsageError("vertex_cone_face_inverse: sign vector is not realizable");
    const Rational eps = step_epsilon(ls.vertex, *d);
    const FaceDescriptor f = locate_face(ls.vertex + eps * (*d));
    if (!closure_contains(f, ls.vertex))
      throw ConsistencyError("vertex_cone_face_inverse: step left the vertex star");
    return f;
  }

  /// All alcoves dominating the vertex, via the local chambers.
  std::vector<FaceDescriptor> alcoves_at_vertex(const LocalSystem& ls) {
    std::vector<WeylElement> gens;
    for (std::size_t i = 0; i < ls.system.rank(); ++i)
      gens.push_back(ls.system.simple_reflection(static_cast<int>(i)));
    std::vector<FaceDescriptor> out;
    for (const auto& g : RootSystem::orbit(gens, ls.chamber_point)) {
      SignVector sv(ls.system.positive_roots().size());
      for (std::size_t k = 0; k < sv.size(); ++k)
        sv[k] = ls.system.positive_roots()[k].dot(g).sign();
      out.push_back(vertex_cone_face_inverse(ls, sv));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// All vertices whose closed star (union of the closed alcoves at the
  /// vertex) meets the closed box [lo, hi], sorted: exactly the vertices of
  /// the alcoves whose closures meet the box, found by flood fill across
  /// facets.
  std::vector<RatVec> enumerate_vertices_in_window(const RatVec& lo, const RatVec& hi) {
    if (lo.size() != dim() || hi.size() != dim())
      throw UsageError("enumerate_vertices_in_window: dimension mismatch");
    for (std::size_t j = 0; j < dim(); ++j)
      if (lo[j] > hi[j]) throw UsageError("enumerate_vertices_in_window: empty window");

    const RatVec center = Rational(1, 2) * (lo + hi);
    const FaceDescriptor start = dominating_alcove(locate_face(center));
    std::set<FaceDescriptor> visited{start};
    std::vector<FaceDescriptor> frontier{start};
    std::set<RatVec> vertex_pool;
    while (!frontier.empty()) {
      std::vector<FaceDescriptor> next;
      for (const auto& alc : frontier) {
        for (const auto& v : face_vertices(alc)) vertex_pool.insert(v);
        for (const Wall& w : alcove_walls(alc)) {
          FaceDescriptor adj = alc;
          adj[w.root].level += (adj[w.root].level == w.level) ? -1 : 1;
          if (visited.count(adj)) continue;
          if (!closed_alcove_meets_box(adj, lo, hi)) continue;
          visited.insert(adj);
          next.push_back(std::move(adj));
        }
      }
      frontier = std::move(next);
    }
    return {vertex_pool.begin(), vertex_pool.end()};
  }

  /// Generic direction: every root takes a nonzero value on it.
  RatVec generic_direction() {
    if (!generic_dir_) {
      for (long denom = 1; denom < 1000; ++denom) {
        RatVec d(dim());
        Rational t(1, denom);
        Rational p(1);
        for (std::size_t j = 0; j < dim(); ++j) {
          d[j] = p;
          p *= t;
        }
        if (rs_.is_regular(d)) {
          generic_dir_ = std::move(d);
          break;
        }
      }
      if (!generic_dir_) throw ConsistencyError("generic_direction: search exhausted");
    }
    return *generic_dir_;
  }

  /// A step size eps such that for every positive root, the value at
  /// p + eps d stays inside the same unit window as at p (strictly, when the
  /// value at p is fractional) and within distance < 1 (when integral).
  Rational step_epsilon(const RatVec& p, const RatVec& d) const {
    Rational eps(1);
    for (std::size_t i = 0; i < num_positive(); ++i) {
      const Rational ad = value(i, d);
      if (ad.is_zero()) continue;
      const Rational av = value(i, p);
      Rational room;
      if (av.is_integer()) {
        room = Rational(1);
      } else {
        const Rational fl(av.floor());
        room = min(av - fl, fl + Rational(1) - av);
      }
      eps = min(eps, room / (Rational(2) * ad.abs()));
    }
    return eps;
  }

 private:
  std::optional<RatVec> witness_opt(const FaceDescriptor& f) {
    if (f.size() != num_positive()) throw UsageError("descriptor size mismatch");
    auto it = witness_cache_.find(f);
    if (it != witness_cache_.end()) return it->second;

    // max t  s.t.  exact clauses hold, interval clauses have slack >= t,
    // t <= 1/2; realizable iff the optimum is positive.
    AffineLp lp;
    lp.num_vars = dim() + 1;
    const std::size_t t = dim();
    for (std::size_t i = 0; i < f.size(); ++i) {
      RatVec row(dim() + 1);
      const RatVec& alpha = rs_.positive_roots()[i];
      for (std::size_t j = 0; j < dim(); ++j) row[j] = alpha[j];
      if (f[i].exact) {
        lp.add(row, 0, Rational(f[i].level));
      } else {
        RatVec lo_row = row, hi_row = row;
        lo_row[t] = -1;
        lp.add(lo_row, +1, Rational(f[i].level));
        hi_row[t] = 1;
        lp.add(hi_row, -1, Rational(f[i].level + 1));
      }
    }
    RatVec tcap(dim() + 1);
    tcap[t] = 1;
    lp.add(tcap, -1, Rational(1, 2));
    lp.objective = tcap;
    auto out = lp.solve();
    std::optional<RatVec> result;
    if (out.status == lp::Status::Optimal && out.value > Rational(0)) {
      RatVec x(dim());
      for (std::size_t j = 0; j < dim(); ++j) x[j] = out.x[j];
      if (locate_face(x) != f) throw ConsistencyError("witness: point misses its face");
      result = std::move(x);
    }
    witness_cache_.emplace(f, result);
    return result;
  }

  bool closed_alcove_meets_box(const FaceDescriptor& alcove, const RatVec& lo,
                               const RatVec& hi) {
    if (!realizable(alcove)) return false;
    AffineLp lp;
    lp.num_vars = dim();
    for (std::size_t i = 0; i < alcove.size(); ++i) {
      const RatVec& alpha = rs_.positive_roots()[i];
      lp.add(alpha, +1, Rational(alcove[i].level));
      lp.add(alpha, -1, Rational(alcove[i].level + 1));
    }
    for (std::size_t j = 0; j < dim(); ++j) {
      RatVec row(dim());
      row[j] = 1;
      lp.add(row, +1, lo[j]);
      lp.add(row, -1, hi[j]);
    }
    return lp.solve().status == lp::Status::Optimal;
  }

  std::vector<long long> levels_at_vertex(const LocalSystem& ls) const {
    std::vector<long long> lv(ls.global_index.size());
    for (std::size_t k = 0; k < lv.size(); ++k) {
      const auto [gi, sign] = ls.global_index[k];
      Rational v = value(gi, ls.vertex);
      lv[k] = checked_level(v.floor());
    }
    return lv;
  }

  RootSystem rs_;
  RatVec base_;
  FaceDescriptor c0_;
  std::optional<RatVec> generic_dir_;
  std::map<FaceDescriptor, std::optional<RatVec>> witness_cache_;
  std::map<FaceDescriptor, std::vector<RatVec>> face_vertices_cache_;
  std::map<FaceDescriptor, std::vector<Wall>> walls_cache_;
  std::map<FaceDescriptor, std::pair<AffineIsometry, std::vector<Wall>>> gallery_cache_;
  std::map<FaceDescriptor, RatVec> base_point_cache_;
};

}  // namespace weylpoly
