#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "weylpoly/linalg.hpp"

namespace weylpoly {

/// Element of a (finite) reflection group acting on the ambient space.
/// `matrix` acts on coroot coordinates; `word` is one witness expression as a
/// product of simple reflections (indices into the base). Elements compare
/// and deduplicate by matrix, never by word.
struct WeylElement {
  RatMat matrix;
  std::vector<int> word;

  RatVec apply(const RatVec& x) const { return matrix.apply(x); }
  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.matrix == b.matrix;
  }
};

/// A finite reduced crystallographic root system realized over the rationals.
///
/// Realization: the ambient space is Q^dim. For systems built from a Cartan
/// matrix, the simple coroots are the standard basis vectors and the simple
/// roots are the rows of the Cartan matrix read as linear forms, so
/// alpha_i(alpha_j^vee) = cartan[i][j] holds on the nose and every reflection
/// matrix is integral. Subsystems (e.g. the roots integral at a vertex) are
/// realized in the same ambient space with their own base.
class RootSystem {
 public:
  /// Builds the standard realization from a finite-type Cartan matrix.
  /// `gram_scale` multiplies the invariant form (combinatorics must not
  /// depend on it; tests rely on that).
  static RootSystem from_cartan(const RatMat& cartan, const Rational& gram_scale = 1) {
    validate_cartan(cartan);
    const std::size_t n = cartan.rows();
    std::vector<RatVec> roots(n), coroots(n);
    for (std::size_t i = 0; i < n; ++i) {
      roots[i] = cartan.row(i);
      coroots[i] = RatVec::unit(n, i);
    }
    RootSystem rs;
    rs.dim_ = n;
    rs.simple_roots_ = std::move(roots);
    rs.simple_coroots_ = std::move(coroots);
    rs.cartan_ = cartan;
    rs.components_ = cartan_components(cartan);
    rs.gram_ = invariant_gram_from_cartan(cartan, rs.components_) * gram_scale;
    rs.close_roots();
    return rs;
  }

  /// Builds from a type string like "A2", "G2", "B3" or a product "A1xA1".
  static RootSystem from_name(const std::string& name, const Rational& gram_scale = 1) {
    return from_cartan(named_cartan(name), gram_scale);
  }

  /// Realizes the subsystem spanned by the given root/coroot pairs inside the
  /// ambient space of a parent system. `chamber_point` fixes the positive
  /// side: it must satisfy alpha(chamber_point) != 0 for every root given.
  static RootSystem subsystem(const std::vector<std::pair<RatVec, RatVec>>& root_coroot_pairs,
                              const RatVec& chamber_point, const RatMat& gram,
                              std::size_t ambient_dim) {
    RootSystem rs;
    rs.dim_ = ambient_dim;
    rs.gram_ = gram;

    std::set<RatVec> seen;
    std::vector<std::pair<RatVec, RatVec>> positives;
    for (const auto& [root, coroot] : root_coroot_pairs) {
      const int s = root.dot(chamber_point).sign();
      if (s == 0) throw UsageError("subsystem: chamber point lies on a wall");
      auto pos = s > 0 ? std::make_pair(root, coroot) : std::make_pair(-root, -coroot);
      if (seen.insert(pos.first).second) positives.push_back(std::move(pos));
    }
    std::sort(positives.begin(), positives.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    // Base = positive roots that are not sums of two positive roots.
    std::set<RatVec> pos_set;
    for (const auto& [r, cr] : positives) pos_set.insert(r);
    for (const auto& [r, cr] : positives) {
      bool decomposable = false;
      for (const auto& [s, cs] : positives) {
        if (s == r) continue;
        if (pos_set.count(r - s)) {
          decomposable = true;
          break;
        }
      }
      if (!decomposable) {
        rs.simple_roots_.push_back(r);
        rs.simple_coroots_.push_back(cr);
      }
    }
    const std::size_t k = rs.simple_roots_.size();
    RatMat cartan(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        cartan(i, j) = rs.simple_roots_[i].dot(rs.simple_coroots_[j]);
    rs.cartan_ = cartan;
    validate_cartan(cartan);
    rs.components_ = cartan_components(cartan);
    rs.close_roots();
    return rs;
  }

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return simple_roots_.size(); }
  const RatMat& cartan() const { return cartan_; }
  const RatMat& gram() const { return gram_; }
  const std::vector<RatVec>& simple_roots() const { return simple_roots_; }
  const std::vector<RatVec>& simple_coroots() const { return simple_coroots_; }
  const std::vector<RatVec>& positive_roots() const { return positive_roots_; }
  const std::vector<RatVec>& positive_coroots() const { return positive_coroots_; }
  const std::vector<std::vector<int>>& components() const { return components_; }
  std::size_t num_roots() const { return 2 * positive_roots_.size(); }

  Rational inner(const RatVec& x, const RatVec& y) const { return gram_dot(gram_, x, y); }

  /// Reflection in the wall of the k-th positive root (through the origin).
  RatMat reflection_matrix(std::size_t positive_index) const {
    return reflection_from_pair(positive_roots_[positive_index],
                                positive_coroots_[positive_index], dim_);
  }

  WeylElement simple_reflection(int i) const {
    WeylElement w;
    w.matrix = reflection_from_pair(simple_roots_[i], simple_coroots_[i], dim_);
    w.word = {i};
    return w;
  }

  WeylElement identity() const { return WeylElement{RatMat::identity(dim_), {}}; }

  /// All elements of the Weyl group by breadth-first closure over simple
  /// reflections, identity first, deduplicated by matrix.
  std::vector<WeylElement> weyl_group_elements() const {
    std::vector<WeylElement> out;
    std::map<std::string, std::size_t> seen;  // keyed by matrix serialization
    std::vector<WeylElement> frontier{identity()};
    seen[identity().matrix.str()] = 0;
    out.push_back(identity());
    while (!frontier.empty()) {
      std::vector<WeylElement> next;
      for (const auto& w : frontier) {
        for (std::size_t i = 0; i < rank(); ++i) {
          WeylElement v;
          v.matrix = simple_reflection(static_cast<int>(i)).matrix * w.matrix;
          v.word = w.word;
          v.word.insert(v.word.begin(), static_cast<int>(i));
          const auto key = v.matrix.str();
          if (seen.emplace(key, out.size()).second) {
            out.push_back(v);
            next.push_back(std::move(v));
          }
        }
      }
      frontier = std::move(next);
    }
    return out;
  }

  /// Exact orbit of a point under the subgroup generated by the given
  /// elements; sorted for determinism.
  static std::vector<RatVec> orbit(const std::vector<WeylElement>& generators,
                                   const RatVec& point) {
    std::set<RatVec> seen{point};
    std::vector<RatVec> frontier{point};
    while (!frontier.empty()) {
      std::vector<RatVec> next;
      for (const auto& x : frontier)
        for (const auto& g : generators) {
          RatVec y = g.apply(x);
          if (seen.insert(y).second) next.push_back(std::move(y));
        }
      frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

  /// Dual basis of the simple roots inside the span of the simple coroots:
  /// w_i = sum_j (cartan^-1)[j][i] alpha_j^vee, so alpha_j(w_i) = delta_ij.
  std::vector<RatVec> fundamental_coweights() const {
    auto inv = linalg::inverse(cartan_);
    if (!inv) throw ConsistencyError("fundamental_coweights: singular Cartan matrix");
    std::vector<RatVec> out;
    for (std::size_t i = 0; i < rank(); ++i) {
      RatVec w(dim_);
      for (std::size_t j = 0; j < rank(); ++j) w += (*inv)(j, i) * simple_coroots_[j];
      out.push_back(std::move(w));
    }
    return out;
  }

  /// True iff alpha(x) != 0 for every root alpha.
  bool is_regular(const RatVec& x) const {
    for (const auto& r : positive_roots_)
      if (r.dot(x).is_zero()) return false;
    return true;
  }

  /// A group element moving x into the closed fundamental chamber (all simple
  /// roots non-negative), by repeated ascent.
  WeylElement to_dominant(const RatVec& x) const {
    WeylElement w = identity();
    RatVec y = x;
    for (;;) {
      bool moved = false;
      for (std::size_t i = 0; i < rank(); ++i) {
        if (simple_roots_[i].dot(y).sign() < 0) {
          const auto s = simple_reflection(static_cast<int>(i));
          y = s.apply(y);
          w.matrix = s.matrix * w.matrix;
          w.word.insert(w.word.begin(), static_cast<int>(i));
          moved = true;
        }
      }
      if (!moved) return w;
    }
  }

  /// Coordinates of a root in the simple-root basis; all entries share a sign.
  RatVec root_in_base_coords(const RatVec& root) const {
    RatMat m(dim_, rank());
    for (std::size_t j = 0; j < rank(); ++j)
      for (std::size_t i = 0; i < dim_; ++i) m(i, j) = simple_roots_[j][i];
    auto sol = linalg::solve_linear(m, root);
    if (!sol || !sol->kernel.empty())
      throw ConsistencyError("root_in_base_coords: root outside base span");
    return sol->particular;
  }

  /// Splits into irreducible subsystems embedded in the same ambient space.
  std::vector<RootSystem> decompose_components() const {
    std::vector<RootSystem> out;
    const auto cw = fundamental_coweights();
    for (const auto& comp : components_) {
      // Chamber point: sum of the component's fundamental coweights is
      // positive on exactly the component's positive roots.
      RatVec probe(dim_);
      for (int i : comp) probe += cw[i];
      std::vector<std::pair<RatVec, RatVec>> all;
      for (std::size_t k = 0; k < positive_roots_.size(); ++k) {
        const RatVec c = root_in_base_coords(positive_roots_[k]);
        bool in_comp = true;
        for (std::size_t j = 0; j < rank(); ++j) {
          if (c[j].is_zero()) continue;
          if (std::find(comp.begin(), comp.end(), static_cast<int>(j)) == comp.end()) {
            in_comp = false;
            break;
          }
        }
        if (in_comp) all.emplace_back(positive_roots_[k], positive_coroots_[k]);
      }
      out.push_back(subsystem(all, probe, gram_, dim_));
    }
    return out;
  }

  /// Index of a root in the positive list, with the sign that makes it
  /// positive: returns (index, +1) for positive roots, (index, -1) when the
  /// negative is listed.
  std::optional<std::pair<std::size_t, int>> positive_index(const RatVec& root) const {
    auto it = positive_lookup_.find(root);
    if (it != positive_lookup_.end()) return std::make_pair(it->second, 1);
    it = positive_lookup_.find(-root);
    if (it != positive_lookup_.end()) return std::make_pair(it->second, -1);
    return std::nullopt;
  }

  static RatMat reflection_from_pair(const RatVec& root, const RatVec& coroot, std::size_t n) {
    RatMat m = RatMat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) -= coroot[i] * root[j];
    return m;
  }

  static RatMat named_cartan(const std::string& name) {
    std::vector<RatMat> blocks;
    std::size_t pos = 0;
    while (pos < name.size()) {
      auto x = name.find('x', pos);
      if (x == std::string::npos) x = name.size();
      blocks.push_back(simple_type_cartan(name.substr(pos, x - pos)));
      pos = x + 1;
    }
    if (blocks.empty()) throw UsageError("empty root system type");
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    RatMat cartan(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) cartan(off + i, off + j) = b(i, j);
      off += b.rows();
    }
    return cartan;
  }

 private:
  RootSystem() = default;

  static RatMat simple_type_cartan(const std::string& type) {
    if (type.size() < 2) throw UsageError("bad root system type '" + type + "'");
    const char family = type[0];
    int n = 0;
    try {
      n = std::stoi(type.substr(1));
    } catch (...) {
      throw UsageError("bad root system type '" + type + "'");
    }
    if (n < 1 || n > 8) throw UsageError("rank out of range in '" + type + "' (1..8 supported)");

    auto chain = [&](int len) {
      RatMat m(len, len);
      for (int i = 0; i < len; ++i) {
        m(i, i) = 2;
        if (i + 1 < len) {
          m(i, i + 1) = -1;
          m(i + 1, i) = -1;
        }
      }
      return m;
    };
    switch (family) {
      case 'A':
        return chain(n);
      case 'B': {
        if (n < 2) throw UsageError("B_n needs n >= 2");
        RatMat m = chain(n);
        m(n - 2, n - 1) = -2;  // last simple root short
        return m;
      }
      case 'C': {
        if (n < 2) throw UsageError("C_n needs n >= 2");
        RatMat m = chain(n);
        m(n - 1, n - 2) = -2;
        return m;
      }
      case 'D': {
        if (n < 4) throw UsageError("D_n needs n >= 4");
        RatMat m = chain(n - 1);
        RatMat d(n, n);
        for (int i = 0; i < n - 1; ++i)
          for (int j = 0; j < n - 1; ++j) d(i, j) = m(i, j);
        d(n - 1, n - 1) = 2;
        d(n - 3, n - 1) = -1;
        d(n - 1, n - 3) = -1;
        return d;
      }
      case 'E': {
        if (n < 6 || n > 8) throw UsageError("E_n needs n in 6..8");
        // Bourbaki numbering: chain 1-3-4-5-...-n, node 2 attached to 4.
        RatMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 2;
        auto link = [&](int i, int j) {
          m(i - 1, j - 1) = -1;
          m(j - 1, i - 1) = -1;
        };
        link(1, 3);
        link(2, 4);
        for (int i = 3; i < n; ++i) link(i, i + 1);
        return m;
      }
      case 'F': {
        if (n != 4) throw UsageError("only F4 exists");
        RatMat m = chain(4);
        m(1, 2) = -2;
        return m;
      }
      case 'G': {
        if (n != 2) throw UsageError("only G2 exists");
        return RatMat{{2, -1}, {-3, 2}};
      }
      default:
        throw UsageError("unknown family '" + std::string(1, family) + "'");
    }
  }

  static void validate_cartan(const RatMat& c) {
    const std::size_t n = c.rows();
    if (n == 0 || c.cols() != n) throw ConfigError("Cartan matrix must be square and non-empty");
    for (std::size_t i = 0; i < n; ++i) {
      if (c(i, i) != Rational(2)) throw ConfigError("Cartan matrix needs 2 on the diagonal");
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (!c(i, j).is_integer() || c(i, j).sign() > 0)
          throw ConfigError("off-diagonal Cartan entries must be non-positive integers");
        if (c(i, j).is_zero() != c(j, i).is_zero())
          throw ConfigError("Cartan zero pattern must be symmetric");
      }
    }
    // Finite type: the symmetrized matrix must be positive definite.
    const auto d = symmetrizer(c, cartan_components(c));
    RatMat sym(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sym(i, j) = d[i] * c(i, j);
    if (!linalg::is_symmetric(sym)) throw ConfigError("Cartan matrix is not symmetrizable");
    if (!linalg::is_positive_definite(sym))
      throw ConfigError("Cartan matrix is not of finite type (symmetrization not positive definite)");
  }

  static std::vector<std::vector<int>> cartan_components(const RatMat& c) {
    const std::size_t n = c.rows();
    std::vector<int> owner(n, -1);
    std::vector<std::vector<int>> comps;
    for (std::size_t s = 0; s < n; ++s) {
      if (owner[s] != -1) continue;
      std::vector<int> comp{static_cast<int>(s)};
      owner[s] = static_cast<int>(comps.size());
      for (std::size_t k = 0; k < comp.size(); ++k) {
        for (std::size_t j = 0; j < n; ++j) {
          if (owner[j] == -1 && !c(comp[k], j).is_zero()) {
            owner[j] = static_cast<int>(comps.size());
            comp.push_back(static_cast<int>(j));
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
    return comps;
  }

  /// Positive diagonal d with d_i c_ij = d_j c_ji, scaled so each component's
  /// minimum is 1 (then the shortest simple coroot of each component has
  /// squared length 2).
  static std::vector<Rational> symmetrizer(const RatMat& c,
                                           const std::vector<std::vector<int>>& comps) {
    const std::size_t n = c.rows();
    std::vector<Rational> d(n);
    for (const auto& comp : comps) {
      d[comp[0]] = 1;
      std::vector<int> todo{comp[0]};
      std::set<int> done{comp[0]};
      while (!todo.empty()) {
        int i = todo.back();
        todo.pop_back();
        for (int j : comp) {
          if (done.count(j) || c(i, j).is_zero()) continue;
          d[j] = d[i] * c(i, j) / c(j, i);
          if (d[j].sign() <= 0) throw ConfigError("Cartan matrix has no positive symmetrizer");
          done.insert(j);
          todo.push_back(j);
        }
      }
      Rational mn = d[comp[0]];
      for (int j : comp) mn = min(mn, d[j]);
      for (int j : comp) d[j] /= mn;
    }
    return d;
  }

  /// W-invariant form on coroot coordinates: <e_i|e_j> = cartan[j][i] d_j,
  /// where d_j = |alpha_j^vee|^2 / 2 is the symmetrizer.
  static RatMat invariant_gram_from_cartan(const RatMat& c,
                                           const std::vector<std::vector<int>>& comps) {
    const std::size_t n = c.rows();
    const auto d = symmetrizer(c, comps);
    RatMat g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = c(j, i) * d[j];
    if (!linalg::is_symmetric(g) || !linalg::is_positive_definite(g))
      throw ConfigError("invariant form is not positive definite");
    return g;
  }

  /// Closes {+-simple} under all simple reflections, tracking coroots.
  void close_roots() {
    std::map<RatVec, RatVec> root_to_coroot;
    std::vector<RatVec> frontier;
    for (std::size_t i = 0; i < rank(); ++i) {
      for (int s : {1, -1}) {
        RatVec r = Rational(s) * simple_roots_[i];
        if (root_to_coroot.emplace(r, Rational(s) * simple_coroots_[i]).second)
          frontier.push_back(r);
      }
    }
    while (!frontier.empty()) {
      std::vector<RatVec> next;
      for (const auto& r : frontier) {
        const RatVec cr = root_to_coroot.at(r);
        for (std::size_t i = 0; i < rank(); ++i) {
          // s_i acts on forms by beta -> beta - beta(alpha_i^vee) alpha_i and
          // on coroots by the reflection on vectors.
          const Rational pairing = r.dot(simple_coroots_[i]);
          RatVec nr = r - pairing * simple_roots_[i];
          RatVec ncr = cr - simple_roots_[i].dot(cr) * simple_coroots_[i];
          if (root_to_coroot.emplace(nr, std::move(ncr)).second) next.push_back(std::move(nr));
        }
      }
      frontier = std::move(next);
    }

    // Keep positives: non-negative coordinates over the base. Order by height
    // then lexicographically so descriptor indices are reproducible.
    std::vector<std::pair<RatVec, RatVec>> pos;  // (base coords, root)
    for (const auto& [r, cr] : root_to_coroot) {
      const RatVec c = root_in_base_coords_raw(r);
      int sign = 0;
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j].sign() != 0) {
          if (sign == 0) sign = c[j].sign();
          else if (sign != c[j].sign())
            throw ConsistencyError("root system closure produced a mixed-sign root");
        }
      }
      if (sign > 0) pos.emplace_back(c, r);
    }
    std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) {
      Rational ha, hb;
      for (const auto& x : a.first) ha += x;
      for (const auto& x : b.first) hb += x;
      if (ha != hb) return ha < hb;
      return a.first < b.first;
    });
    for (const auto& [c, r] : pos) {
      positive_roots_.push_back(r);
      positive_coroots_.push_back(root_to_coroot.at(r));
      positive_lookup_[r] = positive_roots_.size() - 1;
    }
  }

  RatVec root_in_base_coords_raw(const RatVec& root) const {
    RatMat m(dim_, rank());
    for (std::size_t j = 0; j < rank(); ++j)
      for (std::size_t i = 0; i < dim_; ++i) m(i, j) = simple_roots_[j][i];
    auto sol = linalg::solve_linear(m, root);
    if (!sol) throw ConsistencyError("root outside base span");
    return sol->particular;
  }

  std::size_t dim_ = 0;
  RatMat cartan_;
  std::vector<RatVec> simple_roots_;
  std::vector<RatVec> simple_coroots_;
  std::vector<RatVec> positive_roots_;
  std::vector<RatVec> positive_coroots_;
  std::map<RatVec, std::size_t> positive_lookup_;
  RatMat gram_;
  std::vector<std::vector<int>> components_;
};

}  // namespace weylpoly
