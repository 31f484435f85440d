#include <algorithm>
#include <bitset>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hmp/classical_sim.hpp"
#include "hmp/errors.hpp"
#include "hmp/lp.hpp"

namespace hmp {

namespace {

constexpr double kTolerance = 1e-9;
constexpr int kMaxSearchN = 8;
using PointSet = std::bitset<256>;

// Per-matching parity pattern of every c, and the exact game value of every
// set of patterns. A cell's value for matching j depends only on which
// patterns of m_j occur in it.
class CellOracle {
 public:
  explicit CellOracle(const MatchingFamily& family)
      : n_(family.n()), h_(family.n() / 2), t_(family.t()), points_(1 << family.n()) {
    patterns_.assign(static_cast<std::size_t>(points_) * static_cast<std::size_t>(t_), 0);
    for (int c = 0; c < points_; ++c) {
      const BitString bits = BitString::from_uint(static_cast<std::uint64_t>(c), static_cast<std::size_t>(n_));
      for (int j = 0; j < t_; ++j) {
        const Matching& m = family.matchings()[static_cast<std::size_t>(j)];
        int pat = 0;
        for (int e = 0; e < h_; ++e) {
          const Edge& edge = m[static_cast<std::size_t>(e)];
          if (bits[static_cast<std::size_t>(edge.u - 1)] != bits[static_cast<std::size_t>(edge.v - 1)]) pat |= 1 << e;
        }
        patterns_[static_cast<std::size_t>(c * t_ + j)] = pat;
      }
    }
    const std::size_t masks = std::size_t{1} << (1 << h_);
    values_.assign(masks, std::numeric_limits<double>::quiet_NaN());
    strategies_.resize(masks);
  }

  int points() const { return points_; }
  int t() const { return t_; }
  int half() const { return h_; }
  int pattern(int c, int j) const { return patterns_[static_cast<std::size_t>(c * t_ + j)]; }
  std::size_t mask_count() const { return values_.size(); }

  // Column (e, b) answers edge e with bit b; it is right on pattern p iff bit e of p equals b.
  static double payoff(int pattern, int column) {
    const int e = column / 2;
    const int b = column % 2;
    return ((pattern >> e) & 1) == b ? 1.0 : 0.0;
  }

  double value(std::uint32_t mask) {
    double& v = values_[mask];
    if (std::isnan(v)) solve(mask);
    return v;
  }

  const std::vector<double>& strategy(std::uint32_t mask) {
    value(mask);
    return strategies_[mask];
  }

 private:
  void solve(std::uint32_t mask) {
    const int cols = 2 * h_;
    if (mask == 0) {
      values_[mask] = 1.0;
      strategies_[mask].assign(static_cast<std::size_t>(cols), 0.0);
      strategies_[mask][0] = 1.0;
      return;
    }
    lp::GroupedGame game;
    game.group_of_column.assign(static_cast<std::size_t>(cols), 0);
    for (int p = 0; p < (1 << h_); ++p) {
      if (!((mask >> p) & 1U)) continue;
      std::vector<double> row(static_cast<std::size_t>(cols));
      for (int col = 0; col < cols; ++col) row[static_cast<std::size_t>(col)] = payoff(p, col);
      game.payoff.push_back(std::move(row));
    }
    const auto sol = lp::solve_max_min(game);
    values_[mask] = sol.value;
    strategies_[mask] = sol.strategy;
  }

  int n_;
  int h_;
  int t_;
  int points_;
  std::vector<int> patterns_;
  std::vector<double> values_;
  std::vector<std::vector<double>> strategies_;
};

// Largest cell whose value is >= threshold for every matching: intersect one
// maximal admissible pattern set per matching.
int max_cell_size(CellOracle& oracle, double threshold) {
  std::vector<std::uint32_t> maximal;
  const int patterns = 1 << oracle.half();
  for (std::uint32_t mask = 0; mask < oracle.mask_count(); ++mask) {
    if (oracle.value(mask) < threshold) continue;
    bool is_max = true;
    for (int p = 0; p < patterns && is_max; ++p) {
      if ((mask >> p) & 1U) continue;
      if (oracle.value(mask | (1U << p)) >= threshold) is_max = false;
    }
    if (is_max) maximal.push_back(mask);
  }
  const int t = oracle.t();
  std::vector<std::vector<PointSet>> allowed(static_cast<std::size_t>(t));
  for (int j = 0; j < t; ++j) {
    for (std::uint32_t mask : maximal) {
      PointSet s;
      for (int c = 0; c < oracle.points(); ++c) {
        if ((mask >> oracle.pattern(c, j)) & 1U) s.set(static_cast<std::size_t>(c));
      }
      allowed[static_cast<std::size_t>(j)].push_back(s);
    }
  }
  int best = 0;
  std::uint64_t visits = 0;
  constexpr std::uint64_t kVisitLimit = 20'000'000;
  bool exhausted = true;
  auto recurse = [&](auto&& self, int j, const PointSet& current) -> void {
    if (++visits > kVisitLimit) {
      exhausted = false;
      return;
    }
    const int count = static_cast<int>(current.count());
    if (count <= best) return;
    if (j == t) {
      best = count;
      return;
    }
    for (const PointSet& s : allowed[static_cast<std::size_t>(j)]) {
      self(self, j + 1, current & s);
      if (!exhausted) return;
    }
  };
  PointSet all;
  for (int c = 0; c < oracle.points(); ++c) all.set(static_cast<std::size_t>(c));
  recurse(recurse, 0, all);
  return exhausted ? best : oracle.points();
}

double log10_partition_estimate(int points, int blocks) {
  // blocks^points / blocks! bounds the restricted-growth strings from above.
  return points * std::log10(static_cast<double>(blocks)) - std::lgamma(blocks + 1.0) / std::log(10.0);
}

std::string refusal_text(const std::string& what, double log10_size) {
  std::ostringstream os;
  os << what << " (estimated search space ~1e" << static_cast<long>(std::ceil(log10_size)) << ")";
  return os.str();
}

// Restricted-growth DFS over set partitions with at most `blocks` blocks,
// pruning cells whose game value drops below the threshold.
class PartitionSearch {
 public:
  PartitionSearch(CellOracle& oracle, int blocks, double threshold, int capacity, std::uint64_t max_nodes)
      : oracle_(oracle),
        blocks_(blocks),
        threshold_(threshold),
        capacity_(capacity),
        max_nodes_(max_nodes),
        block_of_(static_cast<std::size_t>(oracle.points()), -1),
        sizes_(static_cast<std::size_t>(blocks), 0),
        masks_(static_cast<std::size_t>(blocks) * static_cast<std::size_t>(oracle.t()), 0) {}

  bool run() { return place(0); }
  const std::vector<int>& assignment() const { return block_of_; }
  std::uint64_t nodes() const { return nodes_; }
  std::uint32_t mask(int block, int j) const { return masks_[static_cast<std::size_t>(block * oracle_.t() + j)]; }

 private:
  bool fits(int block, int c) {
    if (sizes_[static_cast<std::size_t>(block)] >= capacity_) return false;
    for (int j = 0; j < oracle_.t(); ++j) {
      const std::uint32_t m = mask(block, j) | (1U << oracle_.pattern(c, j));
      if (oracle_.value(m) < threshold_) return false;
    }
    return true;
  }

  void assign(int block, int c, std::vector<std::uint32_t>& saved) {
    saved.resize(static_cast<std::size_t>(oracle_.t()));
    for (int j = 0; j < oracle_.t(); ++j) {
      auto& m = masks_[static_cast<std::size_t>(block * oracle_.t() + j)];
      saved[static_cast<std::size_t>(j)] = m;
      m |= 1U << oracle_.pattern(c, j);
    }
    ++sizes_[static_cast<std::size_t>(block)];
    block_of_[static_cast<std::size_t>(c)] = block;
  }

  void unassign(int block, int c, const std::vector<std::uint32_t>& saved) {
    for (int j = 0; j < oracle_.t(); ++j) masks_[static_cast<std::size_t>(block * oracle_.t() + j)] = saved[static_cast<std::size_t>(j)];
    --sizes_[static_cast<std::size_t>(block)];
    block_of_[static_cast<std::size_t>(c)] = -1;
  }

  bool place(int c) {
    if (c == oracle_.points()) return true;
    if (++nodes_ > max_nodes_) {
      throw SearchRefused(refusal_text("partition search exceeded its node budget",
                                       log10_partition_estimate(oracle_.points(), blocks_)),
                          std::pow(10.0, log10_partition_estimate(oracle_.points(), blocks_)));
    }
    long room = static_cast<long>(blocks_ - used_) * capacity_;
    for (int b = 0; b < used_; ++b) room += capacity_ - sizes_[static_cast<std::size_t>(b)];
    if (room < oracle_.points() - c) return false;

    std::vector<std::uint32_t> saved;
    for (int b = 0; b < used_; ++b) {
      if (!fits(b, c)) continue;
      assign(b, c, saved);
      if (place(c + 1)) return true;
      unassign(b, c, saved);
    }
    if (used_ < blocks_ && fits(used_, c)) {
      const int b = used_++;
      assign(b, c, saved);
      if (place(c + 1)) return true;
      unassign(b, c, saved);
      --used_;
    }
    return false;
  }

  CellOracle& oracle_;
  int blocks_;
  double threshold_;
  int capacity_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  int used_ = 0;
  std::vector<int> block_of_;
  std::vector<int> sizes_;
  std::vector<std::uint32_t> masks_;
};

// Every restricted-growth string over `points` symbols with at most `blocks` blocks.
void enumerate_partitions(int points, int blocks, std::vector<std::vector<int>>& out) {
  std::vector<int> current(static_cast<std::size_t>(points), 0);
  auto recurse = [&](auto&& self, int pos, int used) -> void {
    if (pos == points) {
      out.push_back(current);
      return;
    }
    for (int b = 0; b < std::min(used + 1, blocks); ++b) {
      current[static_cast<std::size_t>(pos)] = b;
      self(self, pos + 1, std::max(used, b + 1));
    }
  };
  recurse(recurse, 0, 0);
}

double partition_count(int points, int blocks) {
  // Sum of Stirling numbers of the second kind S(points, i) for i <= blocks.
  std::vector<double> row(static_cast<std::size_t>(blocks) + 1, 0.0);
  row[0] = 1.0;
  for (int p = 1; p <= points; ++p) {
    for (int i = std::min(p, blocks); i >= 1; --i) row[static_cast<std::size_t>(i)] = i * row[static_cast<std::size_t>(i)] + row[static_cast<std::size_t>(i - 1)];
    row[0] = 0.0;
  }
  return std::accumulate(row.begin() + 1, row.end(), 0.0);
}

double multiset_count(double items, int size) {
  double r = 1.0;
  for (int i = 0; i < size; ++i) r = r * (items + i) / (i + 1);
  return r;
}

// Realises each cell's mixed strategy with equally likely private seeds.
struct RationalStrategy {
  std::vector<long> counts;
  long denominator = 1;
};

RationalStrategy rationalise(const std::vector<double>& q) {
  for (long den = 1; den <= 5040; ++den) {
    RationalStrategy rs;
    rs.denominator = den;
    long total = 0;
    bool ok = true;
    for (double p : q) {
      const double scaled = p * static_cast<double>(den);
      const long rounded = std::lround(scaled);
      if (std::abs(scaled - static_cast<double>(rounded)) > 1e-6) {
        ok = false;
        break;
      }
      rs.counts.push_back(rounded);
      total += rounded;
    }
    if (ok && total == den) return rs;
  }
  throw std::logic_error("decoder strategy has no small common denominator");
}

struct CellDecoder {
  // cells[(seed * blocks + block) * t + j]
  std::vector<RationalStrategy> cells;
  std::vector<Matching> matchings;
  int blocks = 1;
  int t = 1;
  long seeds = 1;
};

OneWayProtocol build_protocol(const std::vector<std::vector<int>>& partitions, int bits, CellDecoder decoder,
                              const std::string& label) {
  long seeds = 1;
  for (const auto& cell : decoder.cells) seeds = std::lcm(seeds, cell.denominator);
  if (seeds > 1'000'000) throw std::logic_error("decoder needs too many private seeds");
  decoder.seeds = seeds;
  auto parts = std::make_shared<const std::vector<std::vector<int>>>(partitions);
  auto dec = std::make_shared<const CellDecoder>(std::move(decoder));

  OneWayProtocol p;
  p.k = 2;
  p.label = label;
  p.message_bits = {bits};
  p.shared_seeds = partitions.size();
  p.private_seeds = static_cast<std::size_t>(seeds);
  p.senders.push_back([parts, bits](const PlayerView& view, std::size_t s) {
    const auto c = view.c->to_uint();
    return BitString::from_uint(static_cast<std::uint64_t>((*parts)[s][c]), static_cast<std::size_t>(bits));
  });
  p.decoder = [dec](std::span<const BitString> messages, const PlayerView& view, std::size_t s, std::size_t d) {
    std::vector<BitString> alphas;
    for (const auto& [pos, a] : view.visible_alphas) alphas.push_back(a);
    const auto j = static_cast<int>(decode_matching_index(alphas)) - 1;
    if (j >= dec->t) throw RelationUndefined("decoder queried with an index beyond the family");
    const auto block = static_cast<int>(messages[0].to_uint());
    const Matching& m = dec->matchings[static_cast<std::size_t>(j)];
    if (block >= dec->blocks) {
      return Answer{m.front().u, m.front().v, false};
    }
    const RationalStrategy& rs = dec->cells[static_cast<std::size_t>((static_cast<long>(s) * dec->blocks + block) * dec->t + j)];
    const long scale = dec->seeds / rs.denominator;
    long draw = static_cast<long>(d);
    for (std::size_t col = 0; col < rs.counts.size(); ++col) {
      const long w = rs.counts[col] * scale;
      if (draw < w) {
        const Edge& e = m[col / 2];
        return Answer{e.u, e.v, (col % 2) == 1};
      }
      draw -= w;
    }
    throw std::logic_error("decoder strategy does not cover its seed range");
  };
  return p;
}

BruteForceResult search_deterministic(const MatchingFamily& family, double epsilon, const SearchOptions& options) {
  CellOracle oracle(family);
  const double threshold = 1.0 - epsilon - kTolerance;
  const int capacity = max_cell_size(oracle, threshold);
  const int points = oracle.points();
  std::uint64_t total_nodes = 0;
  for (int bits = 0; bits <= family.n(); ++bits) {
    const int blocks = std::min(1 << bits, points);
    if (static_cast<long>(blocks) * capacity < points) continue;
    PartitionSearch search(oracle, blocks, threshold, capacity, options.max_nodes);
    const bool found = search.run();
    total_nodes += search.nodes();
    if (!found) continue;

    BruteForceResult result;
    result.cost = bits;
    result.nodes_explored = total_nodes;
    result.partitions = {search.assignment()};
    CellDecoder decoder;
    decoder.blocks = blocks;
    decoder.t = family.t();
    decoder.matchings = family.matchings();
    double worst = 0.0;
    for (int b = 0; b < blocks; ++b) {
      for (int j = 0; j < family.t(); ++j) {
        const std::uint32_t mask = search.mask(b, j);
        if (mask != 0) worst = std::max(worst, 1.0 - oracle.value(mask));
        decoder.cells.push_back(rationalise(oracle.strategy(mask)));
      }
    }
    result.worst_case_error = std::max(0.0, worst);
    result.protocol = build_protocol(result.partitions, bits, std::move(decoder), "bruteforce-optimal");
    return result;
  }
  throw std::logic_error("sending c verbatim always succeeds; search should not get here");
}

// Exact joint decoder for s fixed sender partitions: max over decoder
// strategies of the worst-case average success.
lp::GameSolution joint_decoder(const CellOracle& oracle, const std::vector<const std::vector<int>*>& parts, int blocks) {
  const int seeds = static_cast<int>(parts.size());
  const int t = oracle.t();
  const int answers = 2 * oracle.half();
  const int groups = seeds * blocks * t;
  lp::GroupedGame game;
  game.group_count = groups;
  game.group_of_column.resize(static_cast<std::size_t>(groups * answers));
  for (int g = 0; g < groups; ++g) {
    for (int a = 0; a < answers; ++a) game.group_of_column[static_cast<std::size_t>(g * answers + a)] = g;
  }
  for (int c = 0; c < oracle.points(); ++c) {
    for (int j = 0; j < t; ++j) {
      std::vector<double> row(static_cast<std::size_t>(groups * answers), 0.0);
      for (int s = 0; s < seeds; ++s) {
        const int g = (s * blocks + (*parts[static_cast<std::size_t>(s)])[static_cast<std::size_t>(c)]) * t + j;
        for (int a = 0; a < answers; ++a) {
          row[static_cast<std::size_t>(g * answers + a)] += CellOracle::payoff(oracle.pattern(c, j), a) / seeds;
        }
      }
      game.payoff.push_back(std::move(row));
    }
  }
  return lp::solve_max_min(game);
}

BruteForceResult search_shared(const MatchingFamily& family, double epsilon, const SearchOptions& options) {
  if (options.shared_seeds < 1) throw InvalidInput("shared-seed search needs at least one seed");
  CellOracle oracle(family);
  const int points = oracle.points();
  const int seeds = options.shared_seeds;
  std::uint64_t evaluated = 0;
  for (int bits = 0; bits <= family.n(); ++bits) {
    const int blocks = std::min(1 << bits, points);
    const double candidates = multiset_count(partition_count(points, blocks), seeds);
    if (candidates > options.max_candidates) {
      throw SearchRefused(refusal_text("shared-seed search over sender multisets exceeds the candidate limit",
                                       std::log10(candidates)),
                          candidates);
    }
    std::vector<std::vector<int>> partitions;
    enumerate_partitions(points, blocks, partitions);

    std::vector<std::size_t> pick(static_cast<std::size_t>(seeds), 0);
    double best_error = 2.0;
    std::vector<std::size_t> best_pick;
    lp::GameSolution best_solution;
    for (;;) {
      std::vector<const std::vector<int>*> chosen;
      for (auto idx : pick) chosen.push_back(&partitions[idx]);
      const auto sol = joint_decoder(oracle, chosen, blocks);
      ++evaluated;
      const double error = 1.0 - sol.value;
      if (error < best_error - kTolerance) {
        best_error = error;
        best_pick = pick;
        best_solution = sol;
      }
      if (best_error <= epsilon + kTolerance) break;
      // Next non-decreasing index tuple.
      int pos = seeds - 1;
      while (pos >= 0 && pick[static_cast<std::size_t>(pos)] + 1 == partitions.size()) --pos;
      if (pos < 0) break;
      ++pick[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < seeds; ++q) pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(pos)];
    }
    if (best_error > epsilon + kTolerance) continue;

    BruteForceResult result;
    result.cost = bits;
    result.worst_case_error = std::max(0.0, best_error);
    result.nodes_explored = evaluated;
    for (auto idx : best_pick) result.partitions.push_back(partitions[idx]);
    CellDecoder decoder;
    decoder.blocks = blocks;
    decoder.t = family.t();
    decoder.matchings = family.matchings();
    const int answers = 2 * oracle.half();
    const int groups = seeds * blocks * family.t();
    for (int g = 0; g < groups; ++g) {
      std::vector<double> q(best_solution.strategy.begin() + g * answers, best_solution.strategy.begin() + (g + 1) * answers);
      decoder.cells.push_back(rationalise(q));
    }
    result.protocol = build_protocol(result.partitions, bits, std::move(decoder), "bruteforce-optimal-shared");
    return result;
  }
  throw std::logic_error("sending c verbatim always succeeds; search should not get here");
}

}  // namespace

double cell_game_value(const MatchingFamily& family, int index, std::span<const BitString> cell) {
  const Matching& m = family.matching(index);
  const int h = family.n() / 2;
  if (cell.empty()) return 1.0;
  lp::GroupedGame game;
  game.group_of_column.assign(static_cast<std::size_t>(2 * h), 0);
  for (const BitString& c : cell) {
    if (static_cast<int>(c.size()) != family.n()) throw InvalidInput("cell string has the wrong length");
    std::vector<double> row;
    for (const Edge& e : m) {
      const bool p = c[static_cast<std::size_t>(e.u - 1)] != c[static_cast<std::size_t>(e.v - 1)];
      row.push_back(p ? 0.0 : 1.0);
      row.push_back(p ? 1.0 : 0.0);
    }
    game.payoff.push_back(std::move(row));
  }
  return lp::solve_max_min(game).value;
}

BruteForceResult bruteforce_min_cost(const MatchingFamily& family, int k, double epsilon, const SearchOptions& options) {
  if (k != 2) throw InvalidInput("exhaustive protocol search is implemented for k = 2 only");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InvalidInput("epsilon must lie in [0, 1]");
  if (family.n() > kMaxSearchN) {
    const double log10_size = std::ldexp(1.0, family.n()) * std::log10(2.0);
    throw SearchRefused(refusal_text("exhaustive search is limited to n <= 8", log10_size), std::pow(10.0, std::min(log10_size, 300.0)));
  }
  return options.mode == SearchMode::Deterministic ? search_deterministic(family, epsilon, options)
                                                   : search_shared(family, epsilon, options);
}

}  // namespace hmp
