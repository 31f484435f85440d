#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "hmp/errors.hpp"
#include "hmp/matching_families.hpp"
#include "oracles.hpp"

using namespace hmp;

namespace {

std::vector<oracle::Pair> pairs(const Graph& g) {
  std::vector<oracle::Pair> out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) edges.push_back(Edge::make(i, i % n + 1));
  return Graph(n, edges);
}

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> edges;
  for (int i = 1; i <= a; ++i) {
    for (int j = 1; j <= b; ++j) edges.push_back(Edge::make(i, a + j));
  }
  return Graph(a + b, edges);
}

void check_decomposition(const Graph& g, const std::vector<Matching>& ms) {
  const auto deg = g.regular_degree();
  REQUIRE(deg.has_value());
  CHECK(static_cast<int>(ms.size()) == *deg);
  std::set<Edge> seen;
  for (const auto& m : ms) {
    CHECK(is_perfect_matching(m, g.vertex_count()));
    for (const Edge& e : m) {
      CHECK(seen.insert(e).second);
      CHECK(g.has_edge(e));
    }
  }
  CHECK(seen.size() == g.edges().size());
}

}  // namespace

TEST_CASE("cyclic_family") {
  const auto f4 = cyclic_family(4);
  REQUIRE(f4.t() == 2);
  CHECK(f4.matching(1) == Matching{Edge{1, 3}, Edge{2, 4}});
  CHECK(f4.matching(2) == Matching{Edge{1, 4}, Edge{2, 3}});
  CHECK(cyclic_family(2).matching(1) == Matching{Edge{1, 2}});
  CHECK_THROWS_AS(cyclic_family(5), InvalidInput);

  for (int n = 2; n <= 20; n += 2) {
    const auto f = cyclic_family(n);
    CHECK(f.t() == n / 2);
    std::set<Edge> all;
    for (const auto& m : f.matchings()) {
      CHECK(is_perfect_matching(m, n));
      for (const Edge& e : m) all.insert(e);
    }
    // Union is K_{n/2,n/2}: every left vertex meets every right vertex once.
    CHECK(all.size() == static_cast<std::size_t>(n / 2 * n / 2));
    for (const Edge& e : all) CHECK((e.u <= n / 2 && e.v > n / 2));
  }
}

TEST_CASE("projective planes satisfy the incidence axioms") {
  for (int q : {2, 3, 5}) {
    const Graph g = projective_plane_graph(q);
    const int pts = q * q + q + 1;
    CHECK(g.vertex_count() == 2 * pts);
    CHECK(g.regular_degree() == q + 1);
    const auto adj = g.adjacency();
    for (int a = 1; a <= pts; ++a) {
      for (int b = a + 1; b <= pts; ++b) {
        int common = 0;
        for (int l : adj[static_cast<std::size_t>(a)]) {
          const auto& nb = adj[static_cast<std::size_t>(b)];
          common += std::count(nb.begin(), nb.end(), l) > 0 ? 1 : 0;
        }
        CHECK(common == 1);
      }
    }
    // Same line sizes and count as the coordinate oracle.
    const auto pg = oracle::projective_plane(q);
    CHECK(static_cast<int>(pg.points.size()) == pts);
    for (const auto& line : pg.lines) CHECK(static_cast<int>(line.size()) == q + 1);
    CHECK(oracle::shortest_cycle(g.vertex_count(), pairs(g)) == 6);
  }
  CHECK_THROWS_AS(projective_plane_graph(4), InvalidInput);
  CHECK_THROWS_AS(projective_plane_graph(1), InvalidInput);
}

TEST_CASE("projective_plane_family") {
  const auto heawood = projective_plane_family(2);
  CHECK(heawood.n() == 14);
  CHECK(heawood.t() == 3);
  CHECK(heawood.girth_parameter() == 2);
  CHECK(heawood.construction() == Construction::ProjectivePlane);
  check_decomposition(projective_plane_graph(2), heawood.matchings());

  const auto f3 = projective_plane_family(3);
  CHECK(f3.n() == 26);
  CHECK(f3.t() == 4);
  check_decomposition(projective_plane_graph(3), f3.matchings());
}

TEST_CASE("decompose_regular_bipartite on fixed graphs") {
  const Graph c6 = cycle_graph(6);
  const auto ms = decompose_regular_bipartite(c6);
  check_decomposition(c6, ms);
  CHECK(ms.size() == 2);

  const Graph k33 = complete_bipartite(3, 3);
  check_decomposition(k33, decompose_regular_bipartite(k33));

  CHECK_THROWS_AS(decompose_regular_bipartite(cycle_graph(5)), InvalidInput);
  CHECK_THROWS_AS(decompose_regular_bipartite(Graph(4, {Edge{1, 2}, Edge{2, 3}, Edge{3, 4}})), InvalidInput);
}

TEST_CASE("decompose_regular_bipartite on random regular bipartite graphs") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 * (2 + static_cast<int>(rng.uniform(24)));
    const int degree = 1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(n / 2)));
    const Graph g = random_regular_bipartite(n, degree, rng);
    CHECK(g.regular_degree() == degree);
    check_decomposition(g, decompose_regular_bipartite(g));
  }
}

TEST_CASE("girth and verify_girth against cycle enumeration") {
  CHECK(verify_girth(cycle_graph(6), 2));
  CHECK_FALSE(verify_girth(cycle_graph(6), 3));
  CHECK_FALSE(verify_girth(complete_bipartite(2, 2), 2));
  CHECK(verify_girth(projective_plane_graph(2), 2));
  CHECK_FALSE(girth(Graph(3, {Edge{1, 2}, Edge{2, 3}})).has_value());

  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform(10));
    std::vector<Edge> edges;
    const double p = 0.15 + 0.5 * rng.uniform01();
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) {
        if (rng.uniform01() < p) edges.push_back(Edge{a, b});
      }
    }
    const Graph g(n, edges);
    const int expected = oracle::shortest_cycle(n, pairs(g));
    const auto got = girth(g);
    CHECK(got.value_or(0) == expected);
    for (int d = 1; d <= 6; ++d) CHECK(verify_girth(g, d) == (expected == 0 || expected > 2 * d));
  }
}

TEST_CASE("random_girth_family") {
  const auto c6 = random_girth_family(6, 2, 2, 1, 50);
  REQUIRE(c6.has_value());
  CHECK(c6->t() == 2);
  CHECK(c6->construction() == Construction::RandomGirthSearch);
  CHECK(verify_girth(c6->union_graph(), 2));
  CHECK(oracle::shortest_cycle(6, pairs(c6->union_graph())) == 6);

  const auto h = random_girth_family(14, 3, 2, 5, 200);
  REQUIRE(h.has_value());
  CHECK(h->union_graph().regular_degree() == 3);
  CHECK(verify_girth(h->union_graph(), 2));

  CHECK_FALSE(random_girth_family(4, 2, 2, 1, 50).has_value());

  // Same seed, same family.
  CHECK(*random_girth_family(14, 3, 2, 9, 200) == *random_girth_family(14, 3, 2, 9, 200));

  const auto g3 = random_girth_family(40, 3, 3, 3, 200);
  REQUIRE(g3.has_value());
  CHECK(verify_girth(g3->union_graph(), 3));
}

TEST_CASE("Bondy-Simonovits edge count holds on generated girth graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (auto [n, t, d] : {std::tuple{14, 3, 2}, std::tuple{30, 3, 2}, std::tuple{40, 3, 3}}) {
      const auto fam = random_girth_family(n, t, d, seed, 100);
      if (!fam) continue;
      const Graph g = fam->union_graph();
      REQUIRE(verify_girth(g, d));
      CHECK(static_cast<double>(g.edges().size()) <= bondy_simonovits_edge_bound(n, d));
    }
  }
  CHECK(bondy_simonovits_edge_bound(16, 2) == doctest::Approx(90.0 * 2 * 64.0));
}

TEST_CASE("edge_span_check") {
  const auto one = cyclic_family(8).prefix(1);
  const auto r1 = edge_span_check(one, 20, 3);
  CHECK(r1.min_touched == 2);
  CHECK(r1.max_touched == 2);

  const auto fam = cyclic_family(10);
  const auto r = edge_span_check(fam, 200, 4);
  CHECK(r.min_touched >= 2);
  CHECK(r.max_touched <= 2 * fam.t());
  CHECK_FALSE(r.k.has_value());

  const auto heawood = projective_plane_family(2);
  const auto rh = edge_span_check(heawood, 100, 5);
  CHECK(rh.k == 1);
  REQUIRE(rh.bound.has_value());
  CHECK(*rh.bound == doctest::Approx(std::pow(3.0, 2.0 / 3.0) / 180.0));
  CHECK(rh.min_touched >= 2);
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(MatchingFamily(4, {{Edge{1, 2}}}, std::nullopt, Construction::ExplicitFile), InvalidInput);
  CHECK_THROWS_AS(MatchingFamily(4, {{Edge{1, 2}, Edge{3, 4}}, {Edge{1, 2}, Edge{3, 4}}}, std::nullopt,
                                 Construction::ExplicitFile),
                  InvalidInput);
  CHECK_THROWS_AS(Graph(3, {Edge{1, 1}}), InvalidInput);
  CHECK_THROWS_AS(Graph(3, {Edge{1, 2}, Edge{2, 1}}), InvalidInput);
}
