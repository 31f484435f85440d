#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hmp {

/// Vertices are 1-based throughout, including in files.
using Vertex = int;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge make(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  bool touches(Vertex x) const noexcept { return u == x || v == x; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A matching kept sorted by edge.
using Matching = std::vector<Edge>;

/// True iff `m` covers every vertex of 1..n exactly once.
bool is_perfect_matching(const Matching& m, int n);

struct Bipartition {
  std::vector<Vertex> left;
  std::vector<Vertex> right;
};

/// Simple undirected graph on 1..n. No loops, no parallel edges; when a
/// bipartition is attached every edge crosses it.
class Graph {
 public:
  Graph(int n, std::vector<Edge> edges, std::optional<Bipartition> bipartition = std::nullopt);

  int vertex_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::optional<Bipartition>& bipartition() const noexcept { return bipartition_; }

  /// adjacency()[v] lists the neighbours of v in increasing order; index 0 is unused.
  std::vector<std::vector<Vertex>> adjacency() const;
  std::vector<int> degrees() const;
  std::optional<int> regular_degree() const;
  bool has_edge(Edge e) const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::optional<Bipartition> bipartition_;
};

enum class Construction { CompleteBipartite, ProjectivePlane, RandomGirthSearch, ExplicitFile };

std::string_view to_string(Construction c) noexcept;
Construction construction_from_string(std::string_view name);

/// t pairwise edge-disjoint perfect matchings on 1..n.
class MatchingFamily {
 public:
  MatchingFamily(int n, std::vector<Matching> matchings, std::optional<int> girth_parameter,
                 Construction construction);

  int n() const noexcept { return n_; }
  int t() const noexcept { return static_cast<int>(matchings_.size()); }
  const std::vector<Matching>& matchings() const noexcept { return matchings_; }
  /// 1-based, matching the index decoded from the alpha strings.
  const Matching& matching(int index) const;
  std::optional<int> girth_parameter() const noexcept { return girth_parameter_; }
  Construction construction() const noexcept { return construction_; }

  Graph union_graph() const;
  /// The sub-family made of the first `count` matchings.
  MatchingFamily prefix(int count) const;

  friend bool operator==(const MatchingFamily&, const MatchingFamily&) = default;

 private:
  int n_;
  std::vector<Matching> matchings_;
  std::optional<int> girth_parameter_;
  Construction construction_;
};

}  // namespace hmp
