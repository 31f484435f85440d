#include "hmp/matching_families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "hmp/errors.hpp"

namespace hmp {

namespace {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

bool is_prime_power(int q) {
  if (q < 2) return false;
  int p = 2;
  while (q % p != 0) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

// Normalised homogeneous coordinates of PG(2,q): first non-zero entry is 1.
std::vector<std::array<int, 3>> projective_points(int q) {
  std::vector<std::array<int, 3>> pts;
  for (int y = 0; y < q; ++y) {
    for (int z = 0; z < q; ++z) pts.push_back({1, y, z});
  }
  for (int z = 0; z < q; ++z) pts.push_back({0, 1, z});
  pts.push_back({0, 0, 1});
  return pts;
}

// Augmenting-path maximum matching. match_of_right[v] == 0 means free.
class BipartiteMatcher {
 public:
  BipartiteMatcher(int n, const std::vector<std::vector<Vertex>>& adj) : adj_(adj), match_(n + 1, 0), seen_(n + 1, 0) {}

  bool augment(Vertex u) {
    for (Vertex v : adj_[u]) {
      if (seen_[v] == stamp_) continue;
      seen_[v] = stamp_;
      if (match_[v] == 0 || augment(match_[v])) {
        match_[v] = u;
        return true;
      }
    }
    return false;
  }

  int run(const std::vector<Vertex>& left) {
    int size = 0;
    for (Vertex u : left) {
      ++stamp_;
      if (augment(u)) ++size;
    }
    return size;
  }

  const std::vector<Vertex>& match_of_right() const { return match_; }

 private:
  const std::vector<std::vector<Vertex>>& adj_;
  std::vector<Vertex> match_;
  std::vector<int> seen_;
  int stamp_ = 0;
};

// Incremental builder that only admits edges keeping all cycles longer than 2d.
class GirthBuilder {
 public:
  GirthBuilder(int n, int d) : n_(n), d_(d), adj_(n + 1), dist_(n + 1, -1) {}

  bool adjacent(Vertex a, Vertex b) const { return adj_[a].count(b) != 0; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  // Distances from `source`, explored to depth 2d-1 only; -1 beyond.
  const std::vector<int>& distances(Vertex source) {
    std::fill(dist_.begin(), dist_.end(), -1);
    std::queue<Vertex> queue;
    dist_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop();
      if (dist_[x] >= 2 * d_ - 1) continue;
      for (Vertex y : adj_[x]) {
        if (dist_[y] < 0) {
          dist_[y] = dist_[x] + 1;
          queue.push(y);
        }
      }
    }
    return dist_;
  }

  bool admissible(Vertex a, Vertex b) {
    if (adjacent(a, b)) return false;
    return distances(a)[b] < 0;
  }

  void add(Vertex a, Vertex b) {
    adj_[a].insert(b);
    adj_[b].insert(a);
  }
  void remove(Vertex a, Vertex b) {
    adj_[a].erase(b);
    adj_[b].erase(a);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex a = 1; a <= n_; ++a) {
      for (Vertex b : adj_[a]) {
        if (a < b) out.push_back({a, b});
      }
    }
    return out;
  }

 private:
  int n_;
  int d_;
  std::vector<std::set<Vertex>> adj_;
  std::vector<int> dist_;
};

bool fill_girth_graph(GirthBuilder& b, int h, int t, Rng& rng) {
  const int target = h * t;
  int edge_count = 0;
  const long repair_budget = 40L * h * t + 200;
  long repairs = 0;
  while (edge_count < target) {
    std::vector<Edge> candidates;
    for (Vertex u = 1; u <= h; ++u) {
      if (b.degree(u) >= t) continue;
      const auto& dist = b.distances(u);
      for (Vertex v = h + 1; v <= 2 * h; ++v) {
        if (b.degree(v) < t && dist[v] < 0) candidates.push_back({u, v});
      }
    }
    if (!candidates.empty()) {
      const Edge e = candidates[rng.uniform(candidates.size())];
      b.add(e.u, e.v);
      ++edge_count;
      continue;
    }
    // Stuck: edge swaps that either close the deficit or move it elsewhere.
    bool progressed = false;
    while (!progressed && repairs < repair_budget) {
      ++repairs;
      std::vector<Vertex> left_def;
      std::vector<Vertex> right_def;
      for (Vertex u = 1; u <= h; ++u) {
        if (b.degree(u) < t) left_def.push_back(u);
      }
      for (Vertex v = h + 1; v <= 2 * h; ++v) {
        if (b.degree(v) < t) right_def.push_back(v);
      }
      const Vertex u = left_def[rng.uniform(left_def.size())];
      const Vertex v = right_def[rng.uniform(right_def.size())];
      auto edges = b.edges();
      if (edges.empty()) return false;
      const Edge xy = edges[rng.uniform(edges.size())];
      const Vertex x = xy.u;
      const Vertex y = xy.v;
      if (x == u || y == v || b.adjacent(u, y)) continue;
      b.remove(x, y);
      if (!b.admissible(u, y)) {
        b.add(x, y);
        continue;
      }
      b.add(u, y);
      if (!b.adjacent(x, v) && b.admissible(x, v)) {
        b.add(x, v);
        ++edge_count;
      }
      progressed = true;
    }
    if (!progressed) return false;
  }
  return true;
}

}  // namespace

MatchingFamily cyclic_family(int n) {
  if (n < 2 || n % 2 != 0) throw InvalidInput("cyclic_family needs a positive even n");
  const int h = n / 2;
  std::vector<Matching> matchings;
  for (int s = 0; s < h; ++s) {
    Matching m;
    for (int i = 0; i < h; ++i) m.push_back(Edge::make(i + 1, h + 1 + (i + s) % h));
    std::sort(m.begin(), m.end());
    matchings.push_back(std::move(m));
  }
  return MatchingFamily(n, std::move(matchings), std::nullopt, Construction::CompleteBipartite);
}

Graph projective_plane_graph(int q) {
  if (!is_prime(q)) {
    if (is_prime_power(q)) throw InvalidInput("projective planes are built over prime fields only; q is a proper prime power");
    throw InvalidInput("projective plane order must be a prime");
  }
  const auto pts = projective_points(q);
  const int count = static_cast<int>(pts.size());
  std::vector<Edge> edges;
  Bipartition parts;
  for (int p = 0; p < count; ++p) {
    parts.left.push_back(p + 1);
    parts.right.push_back(count + p + 1);
    for (int l = 0; l < count; ++l) {
      const int dot = pts[p][0] * pts[l][0] + pts[p][1] * pts[l][1] + pts[p][2] * pts[l][2];
      if (dot % q == 0) edges.push_back({p + 1, count + l + 1});
    }
  }
  return Graph(2 * count, std::move(edges), std::move(parts));
}

MatchingFamily projective_plane_family(int q) {
  Graph g = projective_plane_graph(q);
  return MatchingFamily(g.vertex_count(), decompose_regular_bipartite(g), 2, Construction::ProjectivePlane);
}

std::optional<MatchingFamily> random_girth_family(int n, int t, int d, std::uint64_t seed, int max_attempts) {
  if (n < 2 || n % 2 != 0) throw InvalidInput("random_girth_family needs a positive even n");
  if (t < 1 || t > n / 2) throw InvalidInput("random_girth_family needs 1 <= t <= n/2");
  if (d < 2) throw InvalidInput("random_girth_family needs d >= 2");
  if (max_attempts < 1) throw InvalidInput("random_girth_family needs max_attempts >= 1");
  const int h = n / 2;
  Bipartition parts;
  for (Vertex v = 1; v <= h; ++v) {
    parts.left.push_back(v);
    parts.right.push_back(h + v);
  }
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    GirthBuilder builder(n, d);
    if (!fill_girth_graph(builder, h, t, rng)) continue;
    Graph g(n, builder.edges(), parts);
    if (g.regular_degree() != t || !verify_girth(g, d)) continue;
    return MatchingFamily(n, decompose_regular_bipartite(g), d, Construction::RandomGirthSearch);
  }
  return std::nullopt;
}

Graph random_regular_bipartite(int n, int degree, Rng& rng) {
  if (n < 2 || n % 2 != 0) throw InvalidInput("random_regular_bipartite needs a positive even n");
  const int h = n / 2;
  if (degree < 0 || degree > h) throw InvalidInput("random_regular_bipartite needs 0 <= degree <= n/2");
  Bipartition parts;
  for (Vertex v = 1; v <= h; ++v) {
    parts.left.push_back(v);
    parts.right.push_back(h + v);
  }
  // Each layer is a random perfect matching of the still-unused pairs. The
  // unused pairs form a regular bipartite graph, so one always exists.
  std::vector<std::vector<bool>> used(static_cast<std::size_t>(h), std::vector<bool>(static_cast<std::size_t>(h), false));
  std::vector<Edge> edges;
  for (int layer = 0; layer < degree; ++layer) {
    std::vector<std::vector<int>> free_adj(static_cast<std::size_t>(h));
    for (int i = 0; i < h; ++i) {
      for (int j = 0; j < h; ++j) {
        if (!used[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) free_adj[static_cast<std::size_t>(i)].push_back(j);
      }
      rng.shuffle(free_adj[static_cast<std::size_t>(i)]);
    }
    std::vector<int> order(static_cast<std::size_t>(h));
    for (int i = 0; i < h; ++i) order[static_cast<std::size_t>(i)] = i;
    rng.shuffle(order);
    std::vector<int> match_right(static_cast<std::size_t>(h), -1);
    for (int i : order) {
      std::vector<bool> visited(static_cast<std::size_t>(h), false);
      auto augment = [&](auto&& self, int left) -> bool {
        for (int right : free_adj[static_cast<std::size_t>(left)]) {
          if (visited[static_cast<std::size_t>(right)]) continue;
          visited[static_cast<std::size_t>(right)] = true;
          const int owner = match_right[static_cast<std::size_t>(right)];
          if (owner == -1 || self(self, owner)) {
            match_right[static_cast<std::size_t>(right)] = left;
            return true;
          }
        }
        return false;
      };
      if (!augment(augment, i)) throw std::logic_error("regular bipartite layer has no perfect matching");
    }
    for (int j = 0; j < h; ++j) {
      const int i = match_right[static_cast<std::size_t>(j)];
      used[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
      edges.push_back(Edge{i + 1, h + 1 + j});
    }
  }
  std::sort(edges.begin(), edges.end());
  return Graph(n, std::move(edges), parts);
}

std::optional<Bipartition> find_bipartition(const Graph& g) {
  if (g.bipartition()) return g.bipartition();
  const int n = g.vertex_count();
  const auto adj = g.adjacency();
  std::vector<int> colour(static_cast<std::size_t>(n) + 1, -1);
  for (Vertex s = 1; s <= n; ++s) {
    if (colour[s] != -1) continue;
    colour[s] = 0;
    std::queue<Vertex> queue;
    queue.push(s);
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop();
      for (Vertex y : adj[x]) {
        if (colour[y] == -1) {
          colour[y] = 1 - colour[x];
          queue.push(y);
        } else if (colour[y] == colour[x]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition parts;
  for (Vertex v = 1; v <= n; ++v) (colour[v] == 0 ? parts.left : parts.right).push_back(v);
  return parts;
}

std::vector<Matching> decompose_regular_bipartite(const Graph& g) {
  const auto degree = g.regular_degree();
  if (!degree) throw InvalidInput("decompose_regular_bipartite needs a regular graph");
  const auto parts = find_bipartition(g);
  if (!parts) throw InvalidInput("decompose_regular_bipartite needs a bipartite graph");
  const int n = g.vertex_count();
  if (*degree > 0 && parts->left.size() != parts->right.size()) {
    throw InvalidInput("regular bipartite graph has unequal sides");
  }
  std::vector<Vertex> left = parts->left;
  std::sort(left.begin(), left.end());

  std::set<Edge> remaining(g.edges().begin(), g.edges().end());
  std::vector<Matching> out;
  for (int round = 0; round < *degree; ++round) {
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n) + 1);
    std::vector<char> is_left(static_cast<std::size_t>(n) + 1, 0);
    for (Vertex v : left) is_left[v] = 1;
    for (const Edge& e : remaining) {
      if (is_left[e.u]) adj[e.u].push_back(e.v);
      else adj[e.v].push_back(e.u);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    BipartiteMatcher matcher(n, adj);
    const int size = matcher.run(left);
    if (size != static_cast<int>(left.size())) {
      throw std::logic_error("regular bipartite graph without a perfect matching");
    }
    Matching m;
    const auto& match = matcher.match_of_right();
    for (Vertex v = 1; v <= n; ++v) {
      if (match[v] != 0) m.push_back(Edge::make(match[v], v));
    }
    std::sort(m.begin(), m.end());
    for (const Edge& e : m) remaining.erase(e);
    out.push_back(std::move(m));
  }
  return out;
}

std::optional<int> girth(const Graph& g) {
  const int n = g.vertex_count();
  const auto adj = g.adjacency();
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<std::size_t>(n) + 1);
  std::vector<Vertex> parent(static_cast<std::size_t>(n) + 1);
  for (Vertex root = 1; root <= n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), 0);
    std::queue<Vertex> queue;
    dist[root] = 0;
    queue.push(root);
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop();
      if (2 * dist[x] + 1 >= best) break;
      for (Vertex y : adj[x]) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push(y);
        } else if (parent[x] != y) {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

bool verify_girth(const Graph& g, int d) {
  const auto value = girth(g);
  return !value || *value > 2 * d;
}

double bondy_simonovits_edge_bound(int n, int d) {
  if (n < 0 || d < 1) throw InvalidInput("bondy_simonovits_edge_bound needs n >= 0 and d >= 1");
  return 90.0 * d * std::pow(static_cast<double>(n), 1.0 + 1.0 / d);
}

EdgeSpanReport edge_span_check(const MatchingFamily& family, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidInput("edge_span_check needs at least one trial");
  EdgeSpanReport report;
  report.trials = trials;
  if (auto d = family.girth_parameter(); d && *d % 2 == 0) {
    report.k = *d / 2;
    report.bound = std::pow(static_cast<double>(family.t()), 1.0 - 1.0 / (2.0 * *report.k + 1.0)) / (180.0 * *report.k);
  }
  Rng rng(seed);
  report.min_touched = std::numeric_limits<int>::max();
  long total = 0;
  std::vector<char> touched(static_cast<std::size_t>(family.n()) + 1);
  for (int trial = 0; trial < trials; ++trial) {
    std::fill(touched.begin(), touched.end(), 0);
    int count = 0;
    for (const Matching& m : family.matchings()) {
      const Edge e = m[rng.uniform(m.size())];
      for (Vertex v : {e.u, e.v}) {
        if (!touched[v]) {
          touched[v] = 1;
          ++count;
        }
      }
    }
    report.min_touched = std::min(report.min_touched, count);
    report.max_touched = std::max(report.max_touched, count);
    total += count;
  }
  report.mean_touched = static_cast<double>(total) / trials;
  report.violation = report.bound && report.min_touched < *report.bound;
  return report;
}

}  // namespace hmp
