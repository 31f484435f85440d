#pragma once

// Families of edge-disjoint perfect matchings, mostly obtained by splitting a
// regular bipartite graph of large girth into perfect matchings.

#include <cstdint>
#include <optional>
#include <vector>

#include "hmp/graph.hpp"
#include "hmp/rng.hpp"

namespace hmp {

/// The n/2 cyclic-shift perfect matchings of K_{n/2,n/2} (left 1..n/2, right n/2+1..n).
MatchingFamily cyclic_family(int n);

/// Point-line incidence graph of PG(2,q) for prime q. Points are 1..N and
/// lines N+1..2N with N = q^2+q+1.
Graph projective_plane_graph(int q);
/// projective_plane_graph(q) split into its q+1 perfect matchings; girth parameter 2.
MatchingFamily projective_plane_family(int q);

/// Randomized search for a t-regular bipartite graph on n vertices without
/// cycles of length <= 2d. Returns nullopt when max_attempts restarts fail;
/// the outcome is a function of (n, t, d, seed, max_attempts).
std::optional<MatchingFamily> random_girth_family(int n, int t, int d, std::uint64_t seed, int max_attempts);

/// Uniformish random `degree`-regular bipartite graph (union of random perfect
/// matchings of K_{n/2,n/2}, rejecting repeated edges).
Graph random_regular_bipartite(int n, int degree, Rng& rng);

/// A proper 2-colouring if the graph is bipartite. Uses the attached
/// bipartition when there is one.
std::optional<Bipartition> find_bipartition(const Graph& g);

/// Splits a regular bipartite graph into degree-many perfect matchings by
/// repeatedly extracting a maximum matching (augmenting paths, lowest
/// vertex first) and deleting it.
std::vector<Matching> decompose_regular_bipartite(const Graph& g);

/// Length of the shortest cycle, nullopt for a forest.
std::optional<int> girth(const Graph& g);
/// True iff g has no cycle of length <= 2d.
bool verify_girth(const Graph& g, int d);

/// 90 d n^(1 + 1/d): the extremal bound on edges of a graph without C_{2d}.
double bondy_simonovits_edge_bound(int n, int d);

struct EdgeSpanReport {
  int trials = 0;
  int min_touched = 0;
  int max_touched = 0;
  double mean_touched = 0.0;
  /// Player count implied by the girth parameter d = 2k; absent when d is unknown or odd.
  std::optional<int> k;
  /// t^(1 - 1/(2k+1)) / (180 k), when k is known.
  std::optional<double> bound;
  bool violation = false;
};

/// Samples one edge from every matching `trials` times and records how many
/// vertices those edges touch.
EdgeSpanReport edge_span_check(const MatchingFamily& family, int trials, std::uint64_t seed);

}  // namespace hmp
