#include "hmp/lp.hpp"

#include <cmath>
#include <stdexcept>

#include "hmp/errors.hpp"

namespace hmp::lp {

namespace {
constexpr double kEps = 1e-11;
}

Solution maximize(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c) {
  const std::size_t m = a.size();
  const std::size_t nv = c.size();
  if (b.size() != m) throw InvalidInput("lp: row count mismatch");
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != nv) throw InvalidInput("lp: column count mismatch");
    if (b[i] < 0) throw InvalidInput("lp: right-hand side must be non-negative");
  }
  const std::size_t cols = nv + m + 1;
  const std::size_t rhs = cols - 1;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nv; ++j) t[i][j] = a[i][j];
    t[i][nv + i] = 1.0;
    t[i][rhs] = b[i];
    basis[i] = nv + i;
  }
  for (std::size_t j = 0; j < nv; ++j) t[m][j] = -c[j];

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (t[m][j] < -kEps) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= kEps) continue;
      const double ratio = t[i][rhs] / t[i][enter];
      if (leave == m || ratio < best - kEps || (std::abs(ratio - best) <= kEps && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw std::runtime_error("lp: objective is unbounded");
    const double pivot = t[leave][enter];
    for (double& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = t[i][enter];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  Solution sol;
  sol.x.assign(nv, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < nv) sol.x[basis[i]] = t[i][rhs];
  }
  sol.value = t[m][rhs];
  return sol;
}

GameSolution solve_max_min(const GroupedGame& game) {
  if (game.payoff.empty()) throw InvalidInput("game needs at least one row");
  const std::size_t cols = game.group_of_column.size();
  const auto groups = static_cast<std::size_t>(game.group_count);
  // Variables: q_0..q_{cols-1}, then v.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (const auto& row : game.payoff) {
    if (row.size() != cols) throw InvalidInput("game payoff row has the wrong width");
    std::vector<double> r(cols + 1, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
      if (row[j] < 0) throw InvalidInput("game payoffs must be non-negative");
      r[j] = -row[j];
    }
    r[cols] = 1.0;
    a.push_back(std::move(r));
    b.push_back(0.0);
  }
  for (std::size_t g = 0; g < groups; ++g) {
    std::vector<double> r(cols + 1, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
      if (game.group_of_column[j] == static_cast<int>(g)) r[j] = 1.0;
    }
    a.push_back(std::move(r));
    b.push_back(1.0);
  }
  std::vector<double> c(cols + 1, 0.0);
  c[cols] = 1.0;
  const Solution sol = maximize(a, b, c);

  GameSolution out;
  out.value = sol.value;
  out.strategy.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(cols));
  // Unused mass in a group can go anywhere without lowering any payoff.
  for (std::size_t g = 0; g < groups; ++g) {
    double sum = 0.0;
    std::size_t first = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (game.group_of_column[j] != static_cast<int>(g)) continue;
      if (first == cols) first = j;
      out.strategy[j] = std::max(0.0, out.strategy[j]);
      sum += out.strategy[j];
    }
    if (first != cols && sum < 1.0) out.strategy[first] += 1.0 - sum;
  }
  return out;
}

}  // namespace hmp::lp
