#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "weylpoly/tessellation.hpp"

namespace weylpoly {
namespace render {

/// A drawing coordinate q / sqrt(r) with q rational and r a positive
/// rational: exact until serialization. r is fixed per axis by the basis.
struct RadicalCoord {
  Rational q;
  Rational r;  // > 0
};

namespace detail {

inline bool is_rational_square(const Rational& r, Rational& sqrt_out) {
  if (r.sign() < 0) return false;
  const mpz_class num = r.num(), den = r.den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    sqrt_out = Rational(sn, sd);
    return true;
  }
  return false;
}

inline mpz_class pow10(long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return p;
}

/// Digits-and-exponent to decimal text: value = digits * 10^(exp10 - len + 1).
inline std::string place_digits(bool negative, std::string digits, long exp10) {
  const long len = static_cast<long>(digits.size());
  std::string body;
  if (exp10 >= len - 1) {
    body = digits + std::string(exp10 - (len - 1), '0');
  } else if (exp10 >= 0) {
    body = digits.substr(0, exp10 + 1) + "." + digits.substr(exp10 + 1);
  } else {
    body = "0." + std::string(-exp10 - 1, '0') + digits;
  }
  return negative ? "-" + body : body;
}

/// Exact terminating decimal for p / (2^a 5^b).
inline std::string exact_decimal(const Rational& v) {
  mpz_class den = v.den();
  long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  const long k = std::max(twos, fives);
  mpz_class scaled = v.num() * pow10(k) / v.den();
  const bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (k == 0) return (neg ? "-" : "") + digits;
  if (static_cast<long>(digits.size()) <= k)
    digits = std::string(k + 1 - digits.size(), '0') + digits;
  return place_digits(neg, digits, static_cast<long>(digits.size()) - 1 - k);
}

/// 12 significant digits of a positive rational, round-half-even.
inline std::string sig12_rational(const Rational& v) {
  // Find e with 10^e <= v < 10^{e+1}.
  long e = 0;
  while (!(v >= (e >= 0 ? Rational(pow10(e)) : Rational(mpz_class(1), pow10(-e))))) --e;
  while (v >= (e + 1 >= 0 ? Rational(pow10(e + 1)) : Rational(mpz_class(1), pow10(-(e + 1))))) ++e;
  const long s = 11 - e;
  // N = floor(v * 10^s), remainder decides rounding.
  mpz_class num = v.num(), den = v.den();
  if (s >= 0) num *= pow10(s);
  else den *= pow10(-s);
  mpz_class n, rem;
  mpz_fdiv_qr(n.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  mpz_class twice_rem = 2 * rem;
  const int cmp = mpz_cmp(twice_rem.get_mpz_t(), den.get_mpz_t());
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(n.get_mpz_t()))) n += 1;
  if (n == pow10(12)) {
    n = pow10(11);
    ++e;
  }
  return place_digits(false, n.get_str(), e);
}

/// 12 significant digits of sqrt(Q) for a positive non-square rational Q;
/// ties cannot occur.
inline std::string sig12_sqrt(const Rational& q_squared) {
  long e = 0;
  auto geq_pow100 = [&](long ee) {
    // q_squared >= 10^{2ee} ?
    return ee >= 0 ? q_squared >= Rational(pow10(2 * ee))
                   : q_squared >= Rational(mpz_class(1), pow10(-2 * ee));
  };
  while (!geq_pow100(e)) --e;
  while (geq_pow100(e + 1)) ++e;
  const long s = 11 - e;
  // N = floor(sqrt(Q * 10^{2s})) = isqrt(floor(Q * 10^{2s})).
  mpz_class num = q_squared.num(), den = q_squared.den();
  if (s >= 0) num *= pow10(2 * s);
  else den *= pow10(-2 * s);
  mpz_class fl = num / den;
  mpz_class n;
  mpz_sqrt(n.get_mpz_t(), fl.get_mpz_t());
  // Round to nearest: compare (2N+1)^2 den vs 4 num, exactly.
  mpz_class lhs = (2 * n + 1) * (2 * n + 1) * den;
  mpz_class rhs = 4 * num;
  const int cmp = mpz_cmp(lhs.get_mpz_t(), rhs.get_mpz_t());
  if (cmp == 0) throw ConsistencyError("sig12_sqrt: tie for an irrational value");
  if (cmp < 0) n += 1;
  if (n == pow10(12)) {
    n = pow10(11);
    ++e;
  }
  return place_digits(false, n.get_str(), e);
}

}  // namespace detail

/// Deterministic decimal rendering of q / sqrt(r): exact where the value is
/// rational with a terminating expansion, 12 significant digits otherwise
/// (round-half-even; ties only arise for rational values).
inline std::string decimal(const RadicalCoord& c) {
  if (c.q.is_zero()) return "0";
  if (c.r.sign() <= 0) throw UsageError("decimal: radical part must be positive");
  Rational root;
  if (detail::is_rational_square(c.r, root)) {
    const Rational v = c.q / root;
    mpz_class den = v.den();
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) den /= 2;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) den /= 5;
    if (den == 1) return detail::exact_decimal(v);
    const bool neg = v.sign() < 0;
    return (neg ? "-" : "") + detail::sig12_rational(v.abs());
  }
  const bool neg = c.q.sign() < 0;
  const Rational q2 = (c.q * c.q) / c.r;
  return (neg ? "-" : "") + detail::sig12_sqrt(q2);
}

/// Euclidean drawing plane from the rank-2 Gram form: coordinates are exact
/// rationals divided by fixed square roots, approximated only when printed.
class DrawingBasis {
 public:
  explicit DrawingBasis(const RatMat& gram) {
    if (gram.rows() != 2) throw UsageError("DrawingBasis: rank-2 Gram form required");
    fx_ = gram.row(0);
    rx_ = gram(0, 0);
    const Rational t = gram(0, 1) / gram(0, 0);
    fy_ = gram.row(1) - t * gram.row(0);
    ry_ = gram(1, 1) - gram(0, 1) * t;
    if (rx_.sign() <= 0 || ry_.sign() <= 0)
      throw ConfigError("DrawingBasis: Gram form is not positive definite");
  }

  /// SVG coordinates (y axis flipped so the picture is right-side up).
  std::pair<RadicalCoord, RadicalCoord> map(const RatVec& x) const {
    return {RadicalCoord{fx_.dot(x), rx_}, RadicalCoord{-fy_.dot(x), ry_}};
  }

  std::string point_str(const RatVec& x) const {
    const auto [cx, cy] = map(x);
    return decimal(cx) + "," + decimal(cy);
  }

 private:
  RatVec fx_, fy_;
  Rational rx_, ry_;
};

/// Exact counterclockwise order around an interior point, in arbitrary
/// linear coordinates (convex position is linear-invariant).
inline std::vector<RatVec> polygon_order(std::vector<RatVec> pts, const RatVec& center) {
  auto half = [&](const RatVec& p) {
    const Rational y = p[1] - center[1], x = p[0] - center[0];
    return (y > Rational(0) || (y == Rational(0) && x > Rational(0))) ? 0 : 1;
  };
  std::sort(pts.begin(), pts.end(), [&](const RatVec& a, const RatVec& b) {
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    const Rational cross = (a[0] - center[0]) * (b[1] - center[1]) -
                           (a[1] - center[1]) * (b[0] - center[0]);
    if (!cross.is_zero()) return cross > Rational(0);
    return a < b;
  });
  return pts;
}

/// Monotone-chain convex hull, exact; input need not be deduplicated.
inline std::vector<RatVec> convex_hull_2d(std::vector<RatVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  auto cross = [](const RatVec& o, const RatVec& a, const RatVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<RatVec> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p).sign() <= 0)
      hull.pop_back();
    hull.push_back(p);
  }
  const std::size_t lower = hull.size() + 1;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (hull.size() >= lower && cross(hull[hull.size() - 2], hull.back(), *it).sign() <= 0)
      hull.pop_back();
    hull.push_back(*it);
  }
  hull.pop_back();
  return hull;
}

struct Style {
  std::vector<std::string> orbit_palette{"#e76f51", "#2a9d8f", "#e9c46a", "#8ab17d",
                                         "#f4a261", "#6d597a", "#669bbc", "#bc6c25"};
  std::vector<std::string> edge_cell_palette{"#4f9dde", "#63c7a6", "#e58fb1"};
  std::string alcove_cell_fill = "#ffffff";
  std::string wall_color = "#333333";
  std::string vertex_color = "#111111";
  std::string boundary_color = "#1d3557";
};

class SvgWriter {
 public:
  SvgWriter(const DrawingBasis& basis, const RatVec& lo, const RatVec& hi) : basis_(basis) {
    // View box from the mapped window corners.
    std::vector<std::pair<RadicalCoord, RadicalCoord>> corners;
    for (int cx = 0; cx < 2; ++cx)
      for (int cy = 0; cy < 2; ++cy) {
        RatVec corner{cx ? hi[0] : lo[0], cy ? hi[1] : lo[1]};
        corners.push_back(basis.map(corner));
      }
    auto value_less = [](const RadicalCoord& a, const RadicalCoord& b) {
      // compare a.q/sqrt(a.r) < b.q/sqrt(b.r) exactly
      if (a.q.sign() != b.q.sign()) return a.q.sign() < b.q.sign();
      const Rational l = a.q * a.q * b.r, r = b.q * b.q * a.r;
      return a.q.sign() >= 0 ? l < r : r < l;
    };
    RadicalCoord minx = corners[0].first, maxx = corners[0].first;
    RadicalCoord miny = corners[0].second, maxy = corners[0].second;
    for (const auto& [x, y] : corners) {
      if (value_less(x, minx)) minx = x;
      if (value_less(maxx, x)) maxx = x;
      if (value_less(y, miny)) miny = y;
      if (value_less(maxy, y)) maxy = y;
    }
    // Pad by 2% of the x span, computed exactly in the q of the x axis.
    const Rational span = maxx.q - minx.q;
    pad_ = RadicalCoord{span / Rational(50), minx.r};
    stroke_thin_ = decimal(RadicalCoord{span / Rational(400), minx.r});
    stroke_thick_ = decimal(RadicalCoord{span / Rational(200), minx.r});
    vertex_radius_ = decimal(RadicalCoord{span / Rational(120), minx.r});
    min_x_ = decimal(RadicalCoord{minx.q - pad_.q, minx.r});
    min_y_ = decimal(RadicalCoord{miny.q - pad_.q, miny.r});
    width_ = decimal(RadicalCoord{maxx.q - minx.q + pad_.q * Rational(2), minx.r});
    height_ = decimal(RadicalCoord{maxy.q - miny.q + pad_.q * Rational(2), miny.r});
  }

  void polygon(const std::vector<RatVec>& ordered, const std::string& fill,
               const std::string& stroke, bool thick = false) {
    body_ << "<polygon points=\"";
    for (std::size_t i = 0; i < ordered.size(); ++i)
      body_ << (i ? " " : "") << basis_.point_str(ordered[i]);
    body_ << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\""
          << (thick ? stroke_thick_ : stroke_thin_) << "\"/>\n";
  }

  void line(const RatVec& a, const RatVec& b, const std::string& color) {
    const auto [ax, ay] = basis_.map(a);
    const auto [bx, by] = basis_.map(b);
    body_ << "<line x1=\"" << decimal(ax) << "\" y1=\"" << decimal(ay) << "\" x2=\""
          << decimal(bx) << "\" y2=\"" << decimal(by) << "\" stroke=\"" << color
          << "\" stroke-width=\"" << stroke_thin_ << "\"/>\n";
  }

  void circle(const RatVec& c, const std::string& color) {
    const auto [cx, cy] = basis_.map(c);
    body_ << "<circle cx=\"" << decimal(cx) << "\" cy=\"" << decimal(cy) << "\" r=\""
          << vertex_radius_ << "\" fill=\"" << color << "\"/>\n";
  }

  std::string finish() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << min_x_
        << " " << min_y_ << " " << width_ << " " << height_ << "\">\n";
    out << body_.str();
    out << "</svg>\n";
    return out.str();
  }

 private:
  const DrawingBasis& basis_;
  RadicalCoord pad_{};
  std::string stroke_thin_, stroke_thick_, vertex_radius_;
  std::string min_x_, min_y_, width_, height_;
  std::ostringstream body_;
};

inline void require_rank2(const Apartment& ap) {
  if (ap.dim() != 2) throw UsageError("rendering supports rank-2 systems only");
}

/// Clips the wall {alpha = level} to the closed box; nullopt when disjoint.
inline std::optional<std::pair<RatVec, RatVec>> clip_wall_to_box(const RatVec& alpha,
                                                                 const Rational& level,
                                                                 const RatVec& lo,
                                                                 const RatVec& hi) {
  // Point on the wall and kernel direction.
  RatVec p0(2), d(2);
  if (!alpha[0].is_zero()) {
    p0 = RatVec{level / alpha[0], Rational(0)};
    d = RatVec{-alpha[1] / alpha[0], Rational(1)};
  } else {
    p0 = RatVec{Rational(0), level / alpha[1]};
    d = RatVec{Rational(1), Rational(0)};
  }
  // 0 <= (coordinate bounds) as a parameter interval.
  bool has = true;
  Rational tmin, tmax;
  bool first = true;
  for (std::size_t j = 0; j < 2 && has; ++j) {
    if (d[j].is_zero()) {
      if (p0[j] < lo[j] || p0[j] > hi[j]) has = false;
      continue;
    }
    Rational a = (lo[j] - p0[j]) / d[j];
    Rational b = (hi[j] - p0[j]) / d[j];
    if (b < a) std::swap(a, b);
    if (first) {
      tmin = a;
      tmax = b;
      first = false;
    } else {
      tmin = max(tmin, a);
      tmax = min(tmax, b);
    }
  }
  if (!has || first || tmax < tmin) return std::nullopt;
  return std::make_pair(p0 + tmin * d, p0 + tmax * d);
}

/// All walls crossing the window, as clipped segments.
inline std::string render_arrangement(Apartment& ap, const RatVec& lo, const RatVec& hi,
                                      bool mark_vertices = true, const Style& style = {}) {
  require_rank2(ap);
  DrawingBasis basis(ap.roots().gram());
  SvgWriter svg(basis, lo, hi);
  const RatVec corners[4] = {RatVec{lo[0], lo[1]}, RatVec{lo[0], hi[1]}, RatVec{hi[0], lo[1]},
                             RatVec{hi[0], hi[1]}};
  for (std::size_t i = 0; i < ap.num_positive(); ++i) {
    const RatVec& alpha = ap.roots().positive_roots()[i];
    Rational vmin = alpha.dot(corners[0]), vmax = vmin;
    for (const auto& c : corners) {
      vmin = min(vmin, alpha.dot(c));
      vmax = max(vmax, alpha.dot(c));
    }
    for (mpz_class k = vmin.ceil(); Rational(k) <= vmax; ++k) {
      auto seg = clip_wall_to_box(alpha, Rational(k), lo, hi);
      if (seg && seg->first != seg->second) svg.line(seg->first, seg->second, style.wall_color);
    }
  }
  if (mark_vertices) {
    for (const auto& v : ap.enumerate_vertices_in_window(lo, hi)) {
      bool inside = true;
      for (std::size_t j = 0; j < 2; ++j) inside &= (v[j] >= lo[j] && v[j] <= hi[j]);
      if (inside) svg.circle(v, style.vertex_color);
    }
  }
  return svg.finish();
}

/// Deterministic color index for a vertex, keyed by its representative in
/// the closed fundamental alcove (i.e. by its affine Weyl orbit).
class OrbitPalette {
 public:
  OrbitPalette(Apartment& ap, const std::vector<RatVec>& vertices) : ap_(ap) {
    for (const auto& v : vertices) index_of(v);
  }
  std::size_t index_of(const RatVec& v) {
    const RatVec rep = ap_.fundamental_representative(v).second;
    auto it = reps_.find(rep);
    if (it == reps_.end()) it = reps_.emplace(rep, reps_.size()).first;
    return it->second;
  }

 private:
  Apartment& ap_;
  std::map<RatVec, std::size_t> reps_;
};

/// Filled weight polytopes for every vertex whose closed star meets the
/// window, colored per affine Weyl orbit.
inline std::string render_tessellation(Tessellator& tess, const RatVec& lo, const RatVec& hi,
                                       const Style& style = {}) {
  Apartment& ap = tess.apartment();
  require_rank2(ap);
  DrawingBasis basis(ap.roots().gram());
  SvgWriter svg(basis, lo, hi);
  const auto vertices = ap.enumerate_vertices_in_window(lo, hi);
  OrbitPalette palette(ap, vertices);
  for (const auto& lambda : vertices) {
    const auto& p = tess.polytope_at(lambda);
    const auto ordered = polygon_order(p.extreme_points(), lambda);
    const auto color = style.orbit_palette[palette.index_of(lambda) % style.orbit_palette.size()];
    svg.polygon(ordered, color, style.boundary_color);
  }
  return svg.finish();
}

/// Scaled polytopes plus the connective thickened cells, colored by cell
/// dimension (alcove cells white, edge cells cycled by wall direction).
inline std::string render_thickened(Tessellator& tess, const Rational& eta, const RatVec& lo,
                                    const RatVec& hi, const Style& style = {}) {
  Apartment& ap = tess.apartment();
  require_rank2(ap);
  if (eta.sign() <= 0 || eta >= Rational(1))
    throw UsageError("render_thickened: eta must lie in (0, 1)");
  DrawingBasis basis(ap.roots().gram());
  SvgWriter svg(basis, lo, hi);
  const auto vertices = ap.enumerate_vertices_in_window(lo, hi);
  OrbitPalette palette(ap, vertices);

  // Collect the arrangement faces of dimension >= 1 around the window: all
  // alcoves at the enumerated vertices and their edges.
  std::set<FaceDescriptor> alcoves, edges;
  for (const auto& lambda : vertices) {
    const auto ls = ap.local_root_system(lambda);
    for (const auto& c : ap.alcoves_at_vertex(ls)) {
      if (!alcoves.insert(c).second) continue;
      const auto verts = ap.face_vertices(c);
      for (std::size_t a = 0; a < verts.size(); ++a)
        for (std::size_t b = a + 1; b < verts.size(); ++b) {
          const auto enc = ap.enclosure({verts[a], verts[b]});
          if (enc.face && ap.face_dim(*enc.face) == 1) edges.insert(*enc.face);
        }
    }
  }

  // Edge cells: eta * closure(cell of F) + (1 - eta) * closure(F).
  for (const auto& f : edges) {
    const auto verts = ap.face_vertices(f);
    const auto& p = tess.polytope_at(verts.front());
    const auto idx = p.face_index_by_affine_key(f);
    if (!idx) throw ConsistencyError("render_thickened: edge face missing from lattice");
    std::vector<RatVec> pts;
    for (const auto& u : p.faces()[*idx].extreme_points)
      for (const auto& v : verts) pts.push_back(eta * u + (Rational(1) - eta) * v);
    const auto hull = convex_hull_2d(std::move(pts));
    // Color keyed by the wall direction: the first exact clause of the face.
    std::size_t wall_root = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (f[i].exact) {
        wall_root = i;
        break;
      }
    svg.polygon(hull, style.edge_cell_palette[wall_root % style.edge_cell_palette.size()],
                style.boundary_color);
  }

  // Alcove cells: the white central polytopes eta*b_C + (1 - eta)*closure(C).
  for (const auto& c : alcoves) {
    const RatVec bc = ap.base_point(c);
    std::vector<RatVec> pts;
    for (const auto& v : ap.face_vertices(c)) pts.push_back(eta * bc + (Rational(1) - eta) * v);
    svg.polygon(convex_hull_2d(std::move(pts)), style.alcove_cell_fill, style.boundary_color);
  }

  // Scaled weight polytopes on top, colored per orbit.
  for (const auto& lambda : vertices) {
    const auto& p = tess.scaled_polytope_at(lambda, eta);
    const auto ordered = polygon_order(p.extreme_points(), lambda);
    const auto color = style.orbit_palette[palette.index_of(lambda) % style.orbit_palette.size()];
    svg.polygon(ordered, color, style.boundary_color, /*thick=*/false);
  }
  return svg.finish();
}

}  // namespace render
}  // namespace weylpoly
