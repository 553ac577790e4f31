#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "weylpoly/rootsystem.hpp"

using namespace weylpoly;

namespace {

// Positive roots in simple-root coordinates, as a sorted set.
std::set<RatVec> positive_base_coords(const RootSystem& rs) {
  std::set<RatVec> out;
  for (const auto& r : rs.positive_roots()) out.insert(rs.root_in_base_coords(r));
  return out;
}

std::set<RatVec> coords(std::initializer_list<std::initializer_list<int>> rows) {
  std::set<RatVec> out;
  for (const auto& r : rows) {
    std::vector<Rational> v;
    for (int x : r) v.emplace_back(x);
    out.insert(RatVec(std::move(v)));
  }
  return out;
}

// Deterministic sample points with denominators bounded by small primes.
std::vector<RatVec> sample_points(std::size_t dim, int count, unsigned seed) {
  std::vector<RatVec> out;
  unsigned state = seed;
  auto next = [&state]() {
    state = state * 1664525u + 1013904223u;
    return state >> 8;
  };
  for (int k = 0; k < count; ++k) {
    RatVec v(dim);
    for (std::size_t i = 0; i < dim; ++i)
      v[i] = Rational(static_cast<long>(next() % 41) - 20, static_cast<long>(next() % 7) + 1);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

TEST_CASE("A1: two roots, Weyl group of order 2") {
  const auto rs = RootSystem::from_name("A1");
  CHECK(rs.num_roots() == 2);
  CHECK(rs.weyl_group_elements().size() == 2);
  // alpha(t) = 2t in the standard realization.
  CHECK(rs.simple_roots()[0] == RatVec{2});
  CHECK(rs.gram() == RatMat{{2}});
}

TEST_CASE("A2: frozen root table and counts") {
  const auto rs = RootSystem::from_name("A2");
  CHECK(rs.cartan() == RatMat{{2, -1}, {-1, 2}});
  CHECK(rs.num_roots() == 6);
  CHECK(positive_base_coords(rs) == coords({{1, 0}, {0, 1}, {1, 1}}));
  CHECK(rs.weyl_group_elements().size() == 6);
}

TEST_CASE("B2: frozen root table and counts") {
  const auto rs = RootSystem::from_name("B2");
  CHECK(rs.num_roots() == 8);
  CHECK(positive_base_coords(rs) == coords({{1, 0}, {0, 1}, {1, 1}, {1, 2}}));
  CHECK(rs.weyl_group_elements().size() == 8);
}

TEST_CASE("G2: frozen root table and counts") {
  const auto rs = RootSystem::from_name("G2");
  CHECK(rs.num_roots() == 12);
  CHECK(positive_base_coords(rs) ==
        coords({{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}}));
  CHECK(rs.weyl_group_elements().size() == 12);
}

TEST_CASE("higher-rank closure counts match the classification") {
  CHECK(RootSystem::from_name("A3").num_roots() == 12);
  CHECK(RootSystem::from_name("B3").num_roots() == 18);
  CHECK(RootSystem::from_name("C3").num_roots() == 18);
  CHECK(RootSystem::from_name("D4").num_roots() == 24);
  CHECK(RootSystem::from_name("F4").num_roots() == 48);
  CHECK(RootSystem::from_name("E6").num_roots() == 72);
  CHECK(RootSystem::from_name("E8").num_roots() == 240);
}

TEST_CASE("non-finite Cartan matrices are rejected with a diagnostic") {
  CHECK_THROWS_AS(RootSystem::from_cartan(RatMat{{2, -2}, {-2, 2}}), ConfigError);  // affine
  CHECK_THROWS_AS(RootSystem::from_cartan(RatMat{{2, -1}, {-5, 2}}), ConfigError);
  CHECK_THROWS_AS(RootSystem::from_cartan(RatMat{{2, 1}, {1, 2}}), ConfigError);
  CHECK_THROWS_AS(RootSystem::from_cartan(RatMat{{2, -1}, {0, 2}}), ConfigError);
  CHECK_THROWS_AS(RootSystem::from_name("Z9"), UsageError);
}

TEST_CASE("simple reflections are involutions stabilizing the root set") {
  for (const char* name : {"A2", "B2", "G2", "A1xA1"}) {
    const auto rs = RootSystem::from_name(name);
    const auto id = RatMat::identity(rs.ambient_dim());
    std::set<RatVec> roots;
    for (const auto& r : rs.positive_roots()) {
      roots.insert(r);
      roots.insert(-r);
    }
    for (std::size_t k = 0; k < rs.positive_roots().size(); ++k) {
      const RatMat s = rs.reflection_matrix(k);
      CHECK(s * s == id);
      // Dual action: beta -> beta o s permutes the roots.
      for (const auto& beta : roots) {
        RatVec image(rs.ambient_dim());
        for (std::size_t j = 0; j < rs.ambient_dim(); ++j) image[j] = beta.dot(s.col(j));
        CHECK(roots.count(image) == 1);
      }
    }
  }
}

TEST_CASE("no root is a positive multiple of another (reduced)") {
  for (const char* name : {"A2", "B2", "G2"}) {
    const auto rs = RootSystem::from_name(name);
    const auto& pos = rs.positive_roots();
    for (std::size_t i = 0; i < pos.size(); ++i)
      for (std::size_t j = 0; j < pos.size(); ++j) {
        if (i == j) continue;
        // pos[i] = t pos[j] would force t = ratio of first nonzero coords.
        std::size_t k = 0;
        while (pos[j][k].is_zero()) ++k;
        if (pos[i][k].is_zero()) continue;
        const Rational t = pos[i][k] / pos[j][k];
        CHECK(pos[i] != t * pos[j]);
      }
  }
}

TEST_CASE("every root has one-signed coordinates over the base") {
  for (const char* name : {"A2", "B2", "G2", "F4", "A2xB2"}) {
    const auto rs = RootSystem::from_name(name);
    for (const auto& r : rs.positive_roots()) {
      const RatVec c = rs.root_in_base_coords(r);
      for (const auto& x : c) CHECK(x >= Rational(0));
    }
  }
}

TEST_CASE("Weyl orbit sizes and fixed points") {
  const auto a2 = RootSystem::from_name("A2");
  const auto w = a2.weyl_group_elements();
  std::vector<WeylElement> gens{a2.simple_reflection(0), a2.simple_reflection(1)};

  // Regular point: orbit size equals the group order.
  const RatVec regular{Rational(1, 3), Rational(1, 5)};
  REQUIRE(a2.is_regular(regular));
  CHECK(RootSystem::orbit(gens, regular).size() == 6);

  // Point on a wall: strictly smaller orbit; the origin is fixed.
  CHECK(RootSystem::orbit(gens, RatVec::zero(2)) == std::vector<RatVec>{RatVec::zero(2)});

  // Fundamental coweight of A2 lies on one wall: orbit of size |W| / 2.
  const auto cw = a2.fundamental_coweights();
  CHECK_FALSE(a2.is_regular(cw[0]));
  CHECK(RootSystem::orbit(gens, cw[0]).size() == 3);

  // Orbit injectivity iff regular, on samples.
  for (const auto& x : sample_points(2, 12, 99)) {
    const auto orb = RootSystem::orbit(gens, x);
    if (a2.is_regular(x)) CHECK(orb.size() == w.size());
    else CHECK(orb.size() < w.size());
  }
}

TEST_CASE("A1 orbit of b = 1/4 under s_alpha") {
  const auto a1 = RootSystem::from_name("A1");
  // s_alpha(x) = x - alpha(x) alpha^vee = -x in the alpha(t) = 2t realization.
  const auto orb = RootSystem::orbit({a1.simple_reflection(0)}, RatVec{Rational(1, 4)});
  CHECK(orb == std::vector<RatVec>{RatVec{Rational(-1, 4)}, RatVec{Rational(1, 4)}});
}

TEST_CASE("fundamental coweights are the dual basis") {
  for (const char* name : {"A1", "A2", "B2", "G2", "A1xA1", "F4"}) {
    const auto rs = RootSystem::from_name(name);
    const auto cw = rs.fundamental_coweights();
    REQUIRE(cw.size() == rs.rank());
    for (std::size_t i = 0; i < rs.rank(); ++i)
      for (std::size_t j = 0; j < rs.rank(); ++j)
        CHECK(rs.simple_roots()[j].dot(cw[i]) == Rational(i == j ? 1 : 0));
  }
  // A2 example: alpha_1(w_2) = 0 and alpha_2(w_2) = 1, by substitution above.
}

TEST_CASE("invariant gram: normalization and block structure") {
  const auto a1x = RootSystem::from_name("A1xA1");
  CHECK(a1x.gram() == RatMat{{2, 0}, {0, 2}});

  const auto b2 = RootSystem::from_name("B2");
  const auto g = b2.gram();
  const Rational n0 = gram_dot(g, b2.simple_coroots()[0], b2.simple_coroots()[0]);
  const Rational n1 = gram_dot(g, b2.simple_coroots()[1], b2.simple_coroots()[1]);
  CHECK(min(n0, n1) == Rational(2));
  CHECK(max(n0, n1) == Rational(4));  // squared-length ratio 2
}

TEST_CASE("gram form is invariant under the full Weyl group, exactly") {
  for (const char* name : {"A2", "B2", "G2"}) {
    const auto rs = RootSystem::from_name(name);
    const auto pts = sample_points(rs.ambient_dim(), 6, 7);
    for (const auto& w : rs.weyl_group_elements())
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i; j < pts.size(); ++j)
          CHECK(rs.inner(w.apply(pts[i]), w.apply(pts[j])) == rs.inner(pts[i], pts[j]));
  }
}

TEST_CASE("coweight pairing lemma <w_i | a_j^vee> = (1/2) delta_ij |a_j^vee|^2") {
  for (const char* name : {"A2", "B2", "G2", "F4"}) {
    const auto rs = RootSystem::from_name(name);
    const auto cw = rs.fundamental_coweights();
    for (std::size_t i = 0; i < rs.rank(); ++i)
      for (std::size_t j = 0; j < rs.rank(); ++j) {
        const Rational lhs = rs.inner(cw[i], rs.simple_coroots()[j]);
        const Rational rhs =
            i == j ? rs.inner(rs.simple_coroots()[j], rs.simple_coroots()[j]) / Rational(2)
                   : Rational(0);
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("component decomposition") {
  CHECK(RootSystem::from_name("G2").decompose_components().size() == 1);
  const auto prod = RootSystem::from_name("A1xA1");
  const auto comps = prod.decompose_components();
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].num_roots() == 2);
  CHECK(comps[1].num_roots() == 2);
  CHECK(comps[0].ambient_dim() == 2);

  // Permuted block matrix: A2 x A1 with indices interleaved as (a2, a1, a2).
  const RatMat permuted{{2, 0, -1}, {0, 2, 0}, {-1, 0, 2}};
  const auto rs = RootSystem::from_cartan(permuted);
  REQUIRE(rs.components().size() == 2);
  // Union-find oracle on nonzero off-diagonal entries.
  std::vector<int> parent{0, 1, 2};
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && !permuted(i, j).is_zero()) parent[find(i)] = find(j);
  std::set<std::set<int>> oracle_classes;
  for (int i = 0; i < 3; ++i) {
    std::set<int> cls;
    for (int j = 0; j < 3; ++j)
      if (find(j) == find(i)) cls.insert(j);
    oracle_classes.insert(cls);
  }
  std::set<std::set<int>> got;
  for (const auto& comp : rs.components()) got.insert({comp.begin(), comp.end()});
  CHECK(got == oracle_classes);
}

TEST_CASE("gram scaling changes the form but not the combinatorics") {
  const auto rs1 = RootSystem::from_name("B2");
  const auto rs3 = RootSystem::from_name("B2", Rational(3));
  CHECK(rs3.gram() == rs1.gram() * Rational(3));
  CHECK(rs1.positive_roots() == rs3.positive_roots());
  CHECK(rs1.weyl_group_elements().size() == rs3.weyl_group_elements().size());
}
