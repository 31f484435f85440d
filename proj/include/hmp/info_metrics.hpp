#pragma once

// Shannon quantities over finite joint distributions, and the (A, B)
// extraction experiment run against a deterministic-sender protocol.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hmp/bits.hpp"
#include "hmp/classical_sim.hpp"
#include "hmp/graph.hpp"

namespace hmp {

/// One joint outcome; coordinate i is the value of random variable i.
using Outcome = std::vector<std::int64_t>;

class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  /// Probabilities must be non-negative, sum to 1 within 1e-12, and every
  /// outcome must have the same arity.
  explicit EmpiricalDistribution(std::map<Outcome, double> probabilities);

  /// Plug-in estimate: each sample weighs 1/N.
  static EmpiricalDistribution from_samples(std::span<const Outcome> samples);
  /// Normalises non-negative weights.
  static EmpiricalDistribution from_weights(const std::map<Outcome, double>& weights);

  const std::map<Outcome, double>& probabilities() const noexcept { return p_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t support_size() const noexcept { return p_.size(); }
  double probability(const Outcome& outcome) const;

  /// Distribution of the listed coordinates, in the listed order.
  EmpiricalDistribution marginal(std::span<const int> coords) const;
  /// Distribution conditioned on coordinates `coords` taking `values`; the
  /// conditioned coordinates are kept. Throws if the event has probability 0.
  EmpiricalDistribution condition_on(std::span<const int> coords, std::span<const std::int64_t> values) const;

 private:
  std::map<Outcome, double> p_;
  std::size_t arity_ = 0;
};

double entropy(const EmpiricalDistribution& dist);
/// H of the listed coordinates.
double entropy(const EmpiricalDistribution& joint, std::span<const int> coords);
/// H(X | Y), computed as H(X, Y) - H(Y).
double conditional_entropy(const EmpiricalDistribution& joint, std::span<const int> x, std::span<const int> y);
/// I(X; Y | Z); Z may be empty.
double mutual_information(const EmpiricalDistribution& joint, std::span<const int> x, std::span<const int> y,
                          std::span<const int> z = {});

struct FactsReport {
  int trials = 0;
  /// |H(X|Y) - sum_y Pr(y) H(X|Y=y)|
  double max_conditional_entropy_residual = 0.0;
  /// |I(X;Y|Z) - sum_z Pr(z) I(X;Y|Z=z)|
  double max_conditional_mi_residual = 0.0;
  /// |I(X,Y;Z) - I(X;Z) - I(Y;Z|X)|
  double max_chain_rule_residual = 0.0;
  /// |I(X;Y) - I(Y;X)|
  double max_symmetry_residual = 0.0;
  /// Most negative entropy or information value seen (0 if none).
  double min_quantity = 0.0;
  /// min over trials of I(X; Y_1..Y_m) - sum_j I(X; Y_j) on independent Y_j.
  double min_superadditivity_slack = 0.0;
  int superadditivity_violations = 0;

  bool holds(double tolerance = 1e-9) const;
};

/// Runs the identities on `trials` random three-variable joints with support
/// at most `max_support`, and superadditivity on random product constructions.
FactsReport check_information_facts(int trials, std::uint64_t seed, int max_support = 64);
/// Identities only, on a supplied joint with at least three coordinates
/// (X = 0, Y = 1, Z = 2).
FactsReport check_information_facts(const EmpiricalDistribution& joint);

struct MarkovReport {
  double alpha = 0.0;
  double beta = 0.0;
  double mean = 0.0;
  double probability_at_least_alpha = 0.0;
  double bound = 0.0;
  bool holds = true;
};

/// Pr(X >= alpha) >= (E X - alpha) / (beta - alpha) on the empirical measure.
MarkovReport markov_bound_check(std::span<const double> samples, double beta, double alpha);

// ---------------------------------------------------------------------------
// Extraction

struct ExtractionRecord {
  std::vector<Edge> A;
  BitString B;
  /// Endpoints of A, sorted.
  std::vector<Vertex> support;
  int s = 0;
  int bundle_bits = 0;
  /// 1-based index of the matching queried at each step.
  std::vector<int> matchings_used;
};

/// Greedy loop: while some matching has every edge touching at most one
/// support vertex, query the recipient on the lowest-index such matching using
/// messages read from the bundle of c, and append its answer. `seed` drives the
/// recipient's private seed choice.
ExtractionRecord extract_AB(const OneWayProtocol& protocol, const MatchingFamily& family, const BitString& c,
                            std::uint64_t seed = 0);

enum class AccountingMode { Exact, Sampled };

struct AccountingOptions {
  AccountingMode mode = AccountingMode::Exact;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
};

struct AccountingReport {
  AccountingMode mode = AccountingMode::Exact;
  int n = 0;
  int k = 2;
  int t = 0;
  int r = 1;
  std::uint64_t samples = 0;
  int bundle_bits = 0;
  double i_ab_c = 0.0;
  double i_a_c = 0.0;
  double i_b_c_given_a = 0.0;
  double i_w_c = 0.0;
  double h_w = 0.0;
  int min_s = 0;
  int max_s = 0;
  double mean_s = 0.0;
  /// success_rates[j] = Pr(B_j = c_{A_j,1} xor c_{A_j,2}) over runs with s > j.
  std::vector<double> success_rates;
  double min_success = 1.0;
  /// min_success - 1/2.
  double margin = 0.0;
  /// Implied advantage: 2 * min_success - 1.
  double epsilon_measured = 0.0;
  /// epsilon_measured^2 / 64; informational only.
  double xi = 0.0;
  /// k' = d / 2 when the family's girth parameter is even, else unset.
  std::optional<int> span_k;
  /// t^(1 - 1/(2k'+1)) / (360 k').
  std::optional<double> span_lower_bound;
  bool span_bound_violated = false;
  /// I(A,B;C) <= I(W;C) <= H(W) <= |W| within 1e-9.
  bool bundle_bound_holds = true;
};

/// C is uniform on {0,1}^n. Exact mode enumerates every c (n <= 12, fully
/// deterministic protocol); sampled mode draws `samples` strings and uses
/// plug-in estimates.
AccountingReport information_accounting(const OneWayProtocol& protocol, const MatchingFamily& family,
                                        const AccountingOptions& options = {});

}  // namespace hmp
