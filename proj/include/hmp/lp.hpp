#pragma once

#include <vector>

namespace hmp::lp {

struct Solution {
  double value = 0.0;
  std::vector<double> x;
};

/// maximize c.x subject to A x <= b, x >= 0, for b >= 0 (the origin is
/// feasible). Dense tableau simplex with Bland's rule. Throws on an unbounded
/// objective.
Solution maximize(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c);

/// max over q of min over rows i of sum_j payoff[i][j] q_j, where the columns
/// are split into groups and each group of q is a probability vector.
/// Payoffs must be non-negative and there must be at least one row.
struct GroupedGame {
  std::vector<std::vector<double>> payoff;
  std::vector<int> group_of_column;
  int group_count = 1;
};

struct GameSolution {
  double value = 0.0;
  /// Per-column probabilities; each group sums to one.
  std::vector<double> strategy;
};

GameSolution solve_max_min(const GroupedGame& game);

}  // namespace hmp::lp
