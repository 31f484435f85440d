#pragma once

// Exact simulation of the fingerprint-state simultaneous-message protocol.
// Player 1 sends (1/sqrt n) sum_i (-1)^{c_i} |i>, player k sends the matching
// index, everyone else sends nothing, and the referee measures in the basis
// { (|i1> +- |i2>)/sqrt 2 : (i1,i2) in m }.

#include <cstdint>
#include <vector>

#include "hmp/bits.hpp"
#include "hmp/core_model.hpp"
#include "hmp/graph.hpp"
#include "hmp/rng.hpp"

namespace hmp {

/// Real state with amplitudes sign_i / sqrt(n). The scale is implicit so the
/// signs carry the state exactly.
class FingerprintState {
 public:
  explicit FingerprintState(std::vector<std::int8_t> signs);

  int n() const noexcept { return static_cast<int>(signs_.size()); }
  const std::vector<std::int8_t>& signs() const noexcept { return signs_; }
  /// 1-based.
  int sign(Vertex i) const { return signs_[static_cast<std::size_t>(i - 1)]; }
  double amplitude(Vertex i) const;
  std::vector<double> amplitudes() const;
  double norm_squared() const;

 private:
  std::vector<std::int8_t> signs_;
};

struct MeasurementOutcome {
  Edge edge;
  int sign = +1;
  double probability = 0.0;

  friend bool operator==(const MeasurementOutcome&, const MeasurementOutcome&) = default;
};

struct CostReport {
  int qubits = 0;
  int classical_bits = 0;
  int total = 0;

  friend bool operator==(const CostReport&, const CostReport&) = default;
};

struct PlayerMessage {
  int player = 0;
  int qubits = 0;
  int classical_bits = 0;
};

struct QuantumRun {
  Answer answer;
  CostReport cost;
  MeasurementOutcome outcome;
  std::vector<PlayerMessage> messages;
};

FingerprintState encode_fingerprint(const BitString& c);

/// The 2*(n/2) basis vectors (|i1> + s|i2>)/sqrt 2 in edge order, + before -.
std::vector<std::vector<double>> matching_basis(const Matching& m, int n);

/// Every basis outcome with non-zero probability. For a fingerprint state
/// each edge has exactly one such sign, with probability 2/n.
std::vector<MeasurementOutcome> outcome_distribution(const FingerprintState& state, const Matching& m);

MeasurementOutcome measure_in_matching_basis(const FingerprintState& state, const Matching& m, Rng& rng);
MeasurementOutcome measure_in_matching_basis(const FingerprintState& state, const Matching& m, std::uint64_t seed);

/// ceil(log2 n) qubits plus ceil(log2 t) classical bits.
CostReport quantum_cost(int n, int t);

/// Runs the protocol once. Throws RelationUndefined when the instance's index exceeds t.
QuantumRun run_quantum_smp(const HmpInstance& instance, const MatchingFamily& family, std::uint64_t seed);

}  // namespace hmp
