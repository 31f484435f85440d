#include "hmp/graph.hpp"

#include <algorithm>
#include <set>

#include "hmp/errors.hpp"

namespace hmp {

bool is_perfect_matching(const Matching& m, int n) {
  if (n <= 0 || n % 2 != 0 || static_cast<int>(m.size()) != n / 2) return false;
  std::vector<char> covered(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : m) {
    if (e.u < 1 || e.v > n || e.u >= e.v) return false;
    if (covered[e.u] || covered[e.v]) return false;
    covered[e.u] = covered[e.v] = 1;
  }
  return true;
}

Graph::Graph(int n, std::vector<Edge> edges, std::optional<Bipartition> bipartition)
    : n_(n), edges_(std::move(edges)), bipartition_(std::move(bipartition)) {
  if (n_ < 0) throw InvalidInput("graph vertex count must be non-negative");
  for (Edge& e : edges_) {
    if (e.u == e.v) throw InvalidInput("graph contains a self-loop");
    e = Edge::make(e.u, e.v);
    if (e.u < 1 || e.v > n_) throw InvalidInput("graph edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw InvalidInput("graph contains a duplicate edge");
  }
  if (bipartition_) {
    std::vector<int> side(static_cast<std::size_t>(n_) + 1, -1);
    auto assign = [&](const std::vector<Vertex>& part, int label) {
      for (Vertex v : part) {
        if (v < 1 || v > n_ || side[v] != -1) throw InvalidInput("bipartition is not a partition of 1..n");
        side[v] = label;
      }
    };
    assign(bipartition_->left, 0);
    assign(bipartition_->right, 1);
    for (Vertex v = 1; v <= n_; ++v) {
      if (side[v] == -1) throw InvalidInput("bipartition does not cover every vertex");
    }
    for (const Edge& e : edges_) {
      if (side[e.u] == side[e.v]) throw InvalidInput("edge does not cross the bipartition");
    }
  }
}

std::vector<std::vector<Vertex>> Graph::adjacency() const {
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n_) + 1);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_) + 1, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

std::optional<int> Graph::regular_degree() const {
  if (n_ == 0) return 0;
  auto deg = degrees();
  for (Vertex v = 2; v <= n_; ++v) {
    if (deg[v] != deg[1]) return std::nullopt;
  }
  return deg[1];
}

bool Graph::has_edge(Edge e) const {
  e = Edge::make(e.u, e.v);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::string_view to_string(Construction c) noexcept {
  switch (c) {
    case Construction::CompleteBipartite: return "complete-bipartite";
    case Construction::ProjectivePlane: return "projective-plane";
    case Construction::RandomGirthSearch: return "random-girth-search";
    case Construction::ExplicitFile: return "explicit-file";
  }
  return "explicit-file";
}

Construction construction_from_string(std::string_view name) {
  for (auto c : {Construction::CompleteBipartite, Construction::ProjectivePlane,
                 Construction::RandomGirthSearch, Construction::ExplicitFile}) {
    if (to_string(c) == name) return c;
  }
  throw InvalidInput("unknown construction tag: " + std::string(name));
}

MatchingFamily::MatchingFamily(int n, std::vector<Matching> matchings, std::optional<int> girth_parameter,
                               Construction construction)
    : n_(n), matchings_(std::move(matchings)), girth_parameter_(girth_parameter), construction_(construction) {
  if (n_ <= 0 || n_ % 2 != 0) throw InvalidInput("matching family needs a positive even vertex count");
  if (matchings_.empty()) throw InvalidInput("matching family must contain at least one matching");
  if (static_cast<int>(matchings_.size()) > n_) throw InvalidInput("a family of disjoint perfect matchings has t <= n");
  if (girth_parameter_ && *girth_parameter_ < 1) throw InvalidInput("girth parameter must be positive");
  std::set<Edge> seen;
  for (Matching& m : matchings_) {
    for (Edge& e : m) e = Edge::make(e.u, e.v);
    std::sort(m.begin(), m.end());
    if (!is_perfect_matching(m, n_)) throw InvalidInput("family member is not a perfect matching on 1..n");
    for (const Edge& e : m) {
      if (!seen.insert(e).second) throw InvalidInput("matchings in the family are not edge-disjoint");
    }
  }
}

const Matching& MatchingFamily::matching(int index) const {
  if (index < 1 || index > t()) throw InvalidInput("matching index out of range");
  return matchings_[static_cast<std::size_t>(index - 1)];
}

Graph MatchingFamily::union_graph() const {
  std::vector<Edge> edges;
  for (const Matching& m : matchings_) edges.insert(edges.end(), m.begin(), m.end());
  return Graph(n_, std::move(edges));
}

MatchingFamily MatchingFamily::prefix(int count) const {
  if (count < 1 || count > t()) throw InvalidInput("prefix length out of range");
  return MatchingFamily(n_, std::vector<Matching>(matchings_.begin(), matchings_.begin() + count), girth_parameter_,
                        construction_);
}

}  // namespace hmp
