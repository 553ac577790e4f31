#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "weylpoly/linalg.hpp"

namespace weylpoly {
namespace lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status;
  RatVec x;          // primal solution (Optimal)
  Rational value;    // objective value (Optimal)
  RatVec farkas;     // y with y^T A <= 0 componentwise and y^T b > 0 (Infeasible)
};

/// Two-phase dense simplex for  max c^T x  s.t.  A x = b, x >= 0,
/// exact rational arithmetic, Bland's rule. Sizes here are tiny (tens of
/// rows/columns), so no effort is spent on sparsity.
inline Result solve_standard(RatMat a, RatVec b, RatVec c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m || c.size() != n) throw UsageError("lp: shape mismatch");

  std::vector<bool> flipped(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i].sign() < 0) {
      a.row(i) = -a.row(i);
      b[i] = -b[i];
      flipped[i] = true;
    }
  }

  // Tableau: [A | B^-1 | b], basis starts as artificials. The B^-1 block is
  // carried so the phase-1 dual (Farkas certificate) can be read off.
  const std::size_t width = n + m + 1;
  RatMat t(m, width);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(i, j) = a(i, j);
    t(i, n + i) = 1;
    t(i, width - 1) = b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;  // artificial indices n..n+m-1

  auto pivot = [&](std::size_t row, std::size_t col) {
    const Rational inv = Rational(1) / t(row, col);
    t.row(row) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || t(i, col).is_zero()) continue;
      const Rational f = t(i, col);
      t.row(i) -= f * t.row(row);
    }
    basis[row] = col;
  };

  // Runs simplex iterations for the given per-column objective. Columns with
  // allowed(j) == false are never entered. Returns false on unboundedness.
  auto run = [&](const std::vector<Rational>& cost, auto allowed) -> bool {
    for (;;) {
      // reduced cost of column j: cost[j] - sum_i cost[basis[i]] * t(i,j)
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < n + m; ++j) {
        if (!allowed(j)) continue;
        Rational red = cost[j];
        for (std::size_t i = 0; i < m; ++i) {
          if (!cost[basis[i]].is_zero() && !t(i, j).is_zero()) red -= cost[basis[i]] * t(i, j);
        }
        if (red.sign() > 0) {
          enter = j;  // Bland: first improving column
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (t(i, *enter).sign() <= 0) continue;
        Rational ratio = t(i, width - 1) / t(i, *enter);
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  };

  // Phase 1: maximize -sum(artificials).
  std::vector<Rational> cost1(n + m);
  for (std::size_t j = n; j < n + m; ++j) cost1[j] = -1;
  if (!run(cost1, [](std::size_t) { return true; }))
    throw ConsistencyError("lp: phase 1 unbounded");

  Rational phase1;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n) phase1 -= t(i, width - 1);

  Result res;
  if (phase1.sign() < 0) {
    res.status = Status::Infeasible;
    // Phase-1 dual y* = c_B B^-1; optimality gives (-y*)^T A <= 0 on real
    // columns and y*^T b = phase1 < 0, so y = -y* certifies infeasibility.
    RatVec y(m);
    for (std::size_t k = 0; k < m; ++k) {
      Rational yk;
      for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n) yk -= t(i, n + k);
      y[k] = -yk;
      if (flipped[k]) y[k] = -y[k];  // certificate is for the sign-adjusted rows
    }
    res.farkas = std::move(y);
    return res;
  }

  // Drive any artificial still basic (at value 0) out of the basis.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    std::size_t j = 0;
    while (j < n && t(i, j).is_zero()) ++j;
    if (j < n) pivot(i, j);
    // else: redundant row; harmless to leave the zero-valued artificial basic.
  }

  // Phase 2: real objective, artificials blocked.
  std::vector<Rational> cost2(n + m);
  for (std::size_t j = 0; j < n; ++j) cost2[j] = c[j];
  if (!run(cost2, [&](std::size_t j) { return j < n; })) {
    res.status = Status::Unbounded;
    return res;
  }

  res.status = Status::Optimal;
  res.x = RatVec(n);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = t(i, width - 1);
  res.value = c.dot(res.x);
  return res;
}

}  // namespace lp

/// Unique Gram-orthogonal projection of a point onto the affine subspace
/// base + span(directions). Residual is Gram-orthogonal to every direction.
inline RatVec orthogonal_project_affine(const RatVec& point, const RatVec& base,
                                        const std::vector<RatVec>& directions,
                                        const RatMat& gram) {
  if (directions.empty()) return base;
  const std::size_t k = directions.size();
  RatMat normal(k, k);
  RatVec rhs(k);
  const RatVec diff = point - base;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) normal(i, j) = gram_dot(gram, directions[i], directions[j]);
    rhs[i] = gram_dot(gram, directions[i], diff);
  }
  auto sol = linalg::solve_linear(normal, rhs);
  if (!sol || !sol->kernel.empty()) {
    if (linalg::rank_of(directions) < k) throw UsageError("orthogonal_project_affine: dependent directions");
    throw ConfigError("orthogonal_project_affine: degenerate Gram form");
  }
  RatVec p = base;
  for (std::size_t i = 0; i < k; ++i) p += sol->particular[i] * directions[i];
  return p;
}

struct ConeCertificate {
  // Exactly one of the two is meaningful: coefficients when the target is in
  // the cone, separating functional f (f(g_i) >= 0 for all generators,
  // f(target) < 0) when it is not.
  std::optional<std::vector<Rational>> coefficients;
  RatVec separator;
};

/// Decides target in cone(generators) exactly. On success returns c >= 0 with
/// sum c_i g_i = target; on failure exposes a Farkas separator.
inline ConeCertificate cone_membership(const std::vector<RatVec>& generators,
                                       const RatVec& target) {
  ConeCertificate cert;
  const std::size_t dim = target.size();
  for (const auto& g : generators)
    if (g.size() != dim) throw UsageError("cone_membership: dimension mismatch");

  if (generators.empty()) {
    if (target.is_zero()) {
      cert.coefficients = std::vector<Rational>{};
    } else {
      // Any functional negative on the target separates; use -target itself.
      cert.separator = RatVec(dim);
      for (std::size_t i = 0; i < dim; ++i) cert.separator[i] = -target[i];
    }
    return cert;
  }

  // Fast path for linearly independent generators (the common case for
  // simplicial fiber cones): one exact solve settles membership, and both
  // certificates are direct to construct.
  if (linalg::rank_of(generators) == generators.size()) {
    RatMat m(dim, generators.size());
    for (std::size_t j = 0; j < generators.size(); ++j)
      for (std::size_t i = 0; i < dim; ++i) m(i, j) = generators[j][i];
    auto sol = linalg::solve_linear(m, target);
    if (!sol) {
      // Target outside the span: the plain-orthogonal residual separates.
      RatVec proj = orthogonal_project_affine(target, RatVec(dim), generators,
                                              RatMat::identity(dim));
      cert.separator = -(target - proj);
      return cert;
    }
    std::optional<std::size_t> neg;
    for (std::size_t j = 0; j < generators.size(); ++j)
      if (sol->particular[j].sign() < 0) {
        neg = j;
        break;
      }
    if (!neg) {
      cert.coefficients = std::vector<Rational>(sol->particular.begin(), sol->particular.end());
      return cert;
    }
    // Dual functional of the negative coordinate: zero on the other
    // generators, one on generator `neg`, negative on the target.
    RatMat gtg(generators.size(), generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i)
      for (std::size_t j = 0; j < generators.size(); ++j)
        gtg(i, j) = generators[i].dot(generators[j]);
    auto inv = linalg::inverse(gtg);
    if (!inv) throw ConsistencyError("cone_membership: Gram of independent set singular");
    RatVec f(dim);
    for (std::size_t i = 0; i < generators.size(); ++i) f += (*inv)(*neg, i) * generators[i];
    for (const auto& g : generators)
      if (f.dot(g).sign() < 0) throw ConsistencyError("cone_membership: bad dual functional");
    if (f.dot(target).sign() >= 0) throw ConsistencyError("cone_membership: bad dual functional");
    cert.separator = std::move(f);
    return cert;
  }

  RatMat a(dim, generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) a(i, j) = generators[j][i];
  auto res = lp::solve_standard(a, target, RatVec(generators.size()));
  if (res.status == lp::Status::Optimal) {
    std::vector<Rational> coeffs(generators.size());
    for (std::size_t j = 0; j < generators.size(); ++j) coeffs[j] = res.x[j];
    // Certificate check by substitution.
    RatVec recomb(dim);
    for (std::size_t j = 0; j < generators.size(); ++j) recomb += coeffs[j] * generators[j];
    if (recomb != target) throw ConsistencyError("cone_membership: bad primal certificate");
    cert.coefficients = std::move(coeffs);
    return cert;
  }
  if (res.status != lp::Status::Infeasible)
    throw ConsistencyError("cone_membership: feasibility LP unbounded");
  RatVec f = -res.farkas;
  for (const auto& g : generators)
    if (f.dot(g).sign() < 0) throw ConsistencyError("cone_membership: bad Farkas certificate");
  if (f.dot(target).sign() >= 0) throw ConsistencyError("cone_membership: bad Farkas certificate");
  cert.separator = std::move(f);
  return cert;
}

/// General small LP over free variables with two-sided constraint rows.
/// Rows are (coeffs, relation, rhs) with relation in {-1: <=, 0: ==, 1: >=}.
struct AffineLp {
  std::size_t num_vars = 0;
  std::vector<RatVec> rows;
  std::vector<int> relations;
  std::vector<Rational> rhs;
  RatVec objective;  // maximized; empty means pure feasibility

  void add(const RatVec& coeffs, int rel, const Rational& b) {
    if (coeffs.size() != num_vars) throw UsageError("AffineLp: row size mismatch");
    rows.push_back(coeffs);
    relations.push_back(rel);
    rhs.push_back(b);
  }

  struct Outcome {
    lp::Status status;
    RatVec x;
    Rational value;
  };

  /// Converts to standard form (x = x+ - x-, slack per inequality) and solves.
  Outcome solve() const {
    const std::size_t m = rows.size();
    std::size_t slacks = 0;
    for (int r : relations)
      if (r != 0) ++slacks;
    const std::size_t cols = 2 * num_vars + slacks;
    RatMat a(m, cols);
    RatVec b(m);
    std::size_t s = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < num_vars; ++j) {
        a(i, j) = rows[i][j];
        a(i, num_vars + j) = -rows[i][j];
      }
      if (relations[i] < 0) a(i, 2 * num_vars + s++) = 1;       // row + slack = rhs
      else if (relations[i] > 0) a(i, 2 * num_vars + s++) = -1; // row - slack = rhs
      b[i] = rhs[i];
    }
    RatVec c(cols);
    if (objective.size() == num_vars) {
      for (std::size_t j = 0; j < num_vars; ++j) {
        c[j] = objective[j];
        c[num_vars + j] = -objective[j];
      }
    } else if (objective.size() != 0) {
      throw UsageError("AffineLp: objective size mismatch");
    }
    auto res = lp::solve_standard(a, b, c);
    Outcome out;
    out.status = res.status;
    if (res.status == lp::Status::Optimal) {
      out.x = RatVec(num_vars);
      for (std::size_t j = 0; j < num_vars; ++j) out.x[j] = res.x[j] - res.x[num_vars + j];
      out.value = res.value;
    }
    return out;
  }
};

/// Exact membership of a point in the convex hull of finitely many points.
inline bool in_convex_hull(const std::vector<RatVec>& points, const RatVec& x) {
  if (points.empty()) return false;
  const std::size_t dim = x.size();
  RatMat a(dim + 1, points.size());
  RatVec b(dim + 1);
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) a(i, j) = points[j][i];
    a(dim, j) = 1;
  }
  for (std::size_t i = 0; i < dim; ++i) b[i] = x[i];
  b[dim] = 1;
  return lp::solve_standard(a, b, RatVec(points.size())).status == lp::Status::Optimal;
}

struct SeparationResult {
  bool disjoint;
  // When disjoint: functional w and levels with w.u <= lo < hi <= w.v for all
  // u in conv(us), v in conv(vs).
  RatVec w;
  Rational lo, hi;
};

/// Exact disjointness test for two V-represented convex hulls, with a
/// separating functional as certificate.
inline SeparationResult separate_convex_hulls(const std::vector<RatVec>& us,
                                              const std::vector<RatVec>& vs) {
  if (us.empty() || vs.empty()) return {true, {}, {}, {}};
  const std::size_t dim = us[0].size();
  const std::size_t k = us.size(), l = vs.size();
  RatMat a(dim + 2, k + l);
  RatVec b(dim + 2);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < dim; ++i) a(i, j) = us[j][i];
    a(dim, j) = 1;
  }
  for (std::size_t j = 0; j < l; ++j) {
    for (std::size_t i = 0; i < dim; ++i) a(i, k + j) = -vs[j][i];
    a(dim + 1, k + j) = 1;
  }
  b[dim] = 1;
  b[dim + 1] = 1;
  auto res = lp::solve_standard(a, b, RatVec(k + l));
  SeparationResult out;
  out.disjoint = (res.status == lp::Status::Infeasible);
  if (out.disjoint) {
    // Farkas y = (w, s, t): w.u_j + s <= 0, -w.v_j + t <= 0, s + t > 0,
    // so max_j w.u_j <= -s < t <= min_j w.v_j.
    out.w = RatVec(dim);
    for (std::size_t i = 0; i < dim; ++i) out.w[i] = res.farkas[i];
    out.lo = -res.farkas[dim];
    out.hi = res.farkas[dim + 1];
    if (!(out.lo < out.hi)) throw ConsistencyError("separate_convex_hulls: bad certificate");
    for (const auto& u : us)
      if (out.w.dot(u) > out.lo) throw ConsistencyError("separate_convex_hulls: bad certificate");
    for (const auto& v : vs)
      if (out.w.dot(v) < out.hi) throw ConsistencyError("separate_convex_hulls: bad certificate");
  }
  return out;
}

}  // namespace weylpoly
