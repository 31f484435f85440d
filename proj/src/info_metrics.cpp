#include "hmp/info_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hmp/errors.hpp"
#include "hmp/rng.hpp"

namespace hmp {

namespace {

constexpr double kSumTolerance = 1e-12;

Outcome project(const Outcome& o, std::span<const int> coords) {
  Outcome out;
  out.reserve(coords.size());
  for (int c : coords) out.push_back(o[static_cast<std::size_t>(c)]);
  return out;
}

std::vector<int> concat(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(std::map<Outcome, double> probabilities) : p_(std::move(probabilities)) {
  if (p_.empty()) throw InvalidInput("distribution has empty support");
  arity_ = p_.begin()->first.size();
  double total = 0.0;
  for (auto it = p_.begin(); it != p_.end();) {
    if (it->first.size() != arity_) throw InvalidInput("outcomes of different arity");
    if (!(it->second >= 0.0) || !std::isfinite(it->second)) throw InvalidInput("negative or non-finite probability");
    total += it->second;
    if (it->second == 0.0) {
      it = p_.erase(it);
    } else {
      ++it;
    }
  }
  if (std::abs(total - 1.0) > kSumTolerance * std::max<double>(1.0, static_cast<double>(p_.size()))) {
    throw InvalidInput("probabilities do not sum to 1");
  }
}

EmpiricalDistribution EmpiricalDistribution::from_samples(std::span<const Outcome> samples) {
  if (samples.empty()) throw InvalidInput("no samples");
  std::map<Outcome, double> counts;
  for (const auto& s : samples) counts[s] += 1.0;
  return from_weights(counts);
}

EmpiricalDistribution EmpiricalDistribution::from_weights(const std::map<Outcome, double>& weights) {
  double total = 0.0;
  for (const auto& [o, w] : weights) {
    if (!(w >= 0.0)) throw InvalidInput("negative weight");
    total += w;
  }
  if (!(total > 0.0)) throw InvalidInput("weights sum to zero");
  std::map<Outcome, double> p;
  for (const auto& [o, w] : weights) p.emplace(o, w / total);
  EmpiricalDistribution d;
  d.arity_ = weights.begin()->first.size();
  for (const auto& [o, w] : p) {
    if (o.size() != d.arity_) throw InvalidInput("outcomes of different arity");
    if (w > 0.0) d.p_.emplace(o, w);
  }
  return d;
}

double EmpiricalDistribution::probability(const Outcome& outcome) const {
  auto it = p_.find(outcome);
  return it == p_.end() ? 0.0 : it->second;
}

EmpiricalDistribution EmpiricalDistribution::marginal(std::span<const int> coords) const {
  for (int c : coords) {
    if (c < 0 || static_cast<std::size_t>(c) >= arity_) throw InvalidInput("coordinate out of range");
  }
  EmpiricalDistribution d;
  d.arity_ = coords.size();
  for (const auto& [o, w] : p_) d.p_[project(o, coords)] += w;
  return d;
}

EmpiricalDistribution EmpiricalDistribution::condition_on(std::span<const int> coords,
                                                          std::span<const std::int64_t> values) const {
  if (coords.size() != values.size()) throw InvalidInput("condition needs one value per coordinate");
  const Outcome target(values.begin(), values.end());
  std::map<Outcome, double> kept;
  for (const auto& [o, w] : p_) {
    if (project(o, coords) == target) kept.emplace(o, w);
  }
  if (kept.empty()) throw InvalidInput("conditioning event has probability zero");
  return from_weights(kept);
}

double entropy(const EmpiricalDistribution& dist) {
  double h = 0.0;
  for (const auto& [o, w] : dist.probabilities()) {
    if (w > 0.0) h -= w * std::log2(w);
  }
  return std::max(0.0, h);
}

double entropy(const EmpiricalDistribution& joint, std::span<const int> coords) {
  if (coords.empty()) return 0.0;
  return entropy(joint.marginal(coords));
}

double conditional_entropy(const EmpiricalDistribution& joint, std::span<const int> x, std::span<const int> y) {
  return entropy(joint, concat(x, y)) - entropy(joint, y);
}

double mutual_information(const EmpiricalDistribution& joint, std::span<const int> x, std::span<const int> y,
                          std::span<const int> z) {
  const auto xz = concat(x, z);
  const auto yz = concat(y, z);
  const auto xyz = concat(xz, y);
  return entropy(joint, xz) + entropy(joint, yz) - entropy(joint, xyz) - entropy(joint, z);
}

bool FactsReport::holds(double tolerance) const {
  return max_conditional_entropy_residual < tolerance && max_conditional_mi_residual < tolerance &&
         max_chain_rule_residual < tolerance && max_symmetry_residual < tolerance && min_quantity > -tolerance &&
         superadditivity_violations == 0;
}

namespace {

void accumulate_identities(const EmpiricalDistribution& joint, FactsReport& report) {
  const std::vector<int> X{0}, Y{1}, Z{2};
  auto note = [&](double v) { report.min_quantity = std::min(report.min_quantity, v); };

  // H(X|Y) against the average of H(X | Y = y).
  const double hxy = conditional_entropy(joint, X, Y);
  double avg = 0.0;
  const auto y_marginal = joint.marginal(Y);
  for (const auto& [yo, py] : y_marginal.probabilities()) {
    avg += py * entropy(joint.condition_on(Y, yo), X);
  }
  report.max_conditional_entropy_residual = std::max(report.max_conditional_entropy_residual, std::abs(hxy - avg));
  note(hxy);

  // I(X;Y|Z) against the average of I(X;Y | Z = z).
  const double ixy_z = mutual_information(joint, X, Y, Z);
  avg = 0.0;
  const auto z_marginal = joint.marginal(Z);
  for (const auto& [zo, pz] : z_marginal.probabilities()) {
    avg += pz * mutual_information(joint.condition_on(Z, zo), X, Y);
  }
  report.max_conditional_mi_residual = std::max(report.max_conditional_mi_residual, std::abs(ixy_z - avg));
  note(ixy_z);

  // I(X,Y;Z) = I(X;Z) + I(Y;Z|X).
  const std::vector<int> XY{0, 1};
  const double lhs = mutual_information(joint, XY, Z);
  const double ixz = mutual_information(joint, X, Z);
  const double iyz_x = mutual_information(joint, Y, Z, X);
  report.max_chain_rule_residual = std::max(report.max_chain_rule_residual, std::abs(lhs - ixz - iyz_x));
  note(lhs);
  note(ixz);
  note(iyz_x);

  const double ixy = mutual_information(joint, X, Y);
  report.max_symmetry_residual = std::max(report.max_symmetry_residual, std::abs(ixy - mutual_information(joint, Y, X)));
  note(ixy);
  note(entropy(joint));
}

std::vector<double> random_simplex(Rng& rng, int size, bool allow_zeros) {
  std::vector<double> w(static_cast<std::size_t>(size));
  double total = 0.0;
  for (auto& x : w) {
    x = (allow_zeros && rng.coin()) ? 0.0 : rng.uniform01() + 1e-3;
    total += x;
  }
  if (total == 0.0) {
    w[0] = 1.0;
    total = 1.0;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace

FactsReport check_information_facts(int trials, std::uint64_t seed, int max_support) {
  if (trials < 0 || max_support < 8) throw InvalidInput("need trials >= 0 and max_support >= 8");
  FactsReport report;
  report.trials = trials;
  report.min_superadditivity_slack = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));

    // Three variables with alphabet sizes a * b * c <= max_support.
    int a = 2 + static_cast<int>(rng.uniform(3));
    int b = 2 + static_cast<int>(rng.uniform(3));
    int c = std::max(1, std::min(4, max_support / (a * b)));
    c = 1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(c)));
    const auto w = random_simplex(rng, a * b * c, true);
    std::map<Outcome, double> p;
    for (int i = 0; i < a * b * c; ++i) {
      p[{i / (b * c), (i / c) % b, i % c}] = w[static_cast<std::size_t>(i)];
    }
    accumulate_identities(EmpiricalDistribution(p), report);

    // X drawn through a random channel from independent Y_1..Y_m.
    const int m = 2 + static_cast<int>(rng.uniform(2));
    std::vector<int> sizes(static_cast<std::size_t>(m));
    int cells = 1;
    for (auto& s : sizes) {
      s = 2;
      cells *= s;
    }
    const int xs = std::max(2, std::min(4, max_support / cells));
    std::vector<std::vector<double>> marg;
    for (int s : sizes) marg.push_back(random_simplex(rng, s, false));
    std::map<Outcome, double> q;
    for (int cell = 0; cell < cells; ++cell) {
      Outcome ys;
      double py = 1.0;
      int rest = cell;
      for (int j = 0; j < m; ++j) {
        const int yj = rest % 2;
        rest /= 2;
        ys.push_back(yj);
        py *= marg[static_cast<std::size_t>(j)][static_cast<std::size_t>(yj)];
      }
      const auto channel = random_simplex(rng, xs, true);
      for (int x = 0; x < xs; ++x) {
        Outcome o{x};
        o.insert(o.end(), ys.begin(), ys.end());
        q[o] += py * channel[static_cast<std::size_t>(x)];
      }
    }
    const EmpiricalDistribution joint(q);
    std::vector<int> all_y;
    double sum = 0.0;
    for (int j = 1; j <= m; ++j) {
      all_y.push_back(j);
      const std::vector<int> yj{j};
      sum += mutual_information(joint, std::vector<int>{0}, yj);
    }
    const double slack = mutual_information(joint, std::vector<int>{0}, all_y) - sum;
    report.min_superadditivity_slack = std::min(report.min_superadditivity_slack, slack);
    if (slack < -1e-9) ++report.superadditivity_violations;
  }
  if (trials == 0) report.min_superadditivity_slack = 0.0;
  return report;
}

FactsReport check_information_facts(const EmpiricalDistribution& joint) {
  if (joint.arity() < 3) throw InvalidInput("identity check needs at least three coordinates");
  FactsReport report;
  report.trials = 1;
  accumulate_identities(joint, report);
  return report;
}

MarkovReport markov_bound_check(std::span<const double> samples, double beta, double alpha) {
  if (!(alpha >= 0.0 && alpha < beta)) throw InvalidInput("need 0 <= alpha < beta");
  if (samples.empty()) throw InvalidInput("no samples");
  MarkovReport r;
  r.alpha = alpha;
  r.beta = beta;
  std::size_t hits = 0;
  double total = 0.0;
  for (double x : samples) {
    if (!(x >= 0.0 && x <= beta)) throw InvalidInput("sample outside [0, beta]");
    total += x;
    if (x >= alpha) ++hits;
  }
  const double count = static_cast<double>(samples.size());
  r.mean = total / count;
  r.probability_at_least_alpha = static_cast<double>(hits) / count;
  r.bound = (r.mean - alpha) / (beta - alpha);
  r.holds = r.probability_at_least_alpha >= r.bound - 1e-12;
  return r;
}

}  // namespace hmp
