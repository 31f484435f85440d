#include "hmp/quantum_sim.hpp"

#include <cmath>

#include "hmp/errors.hpp"

namespace hmp {

namespace {

void require_perfect(const Matching& m, int n) {
  if (!is_perfect_matching(m, n)) throw InvalidInput("measurement basis needs a perfect matching on 1..n");
}

// |<psi| (|i1> + s|i2>)/sqrt2>|^2 = (sign_i1 + s sign_i2)^2 / (2n); the numerator is 0 or 4.
int weight_numerator(const FingerprintState& state, const Edge& e, int s) {
  const int amp = state.sign(e.u) + s * state.sign(e.v);
  return amp * amp;
}

}  // namespace

FingerprintState::FingerprintState(std::vector<std::int8_t> signs) : signs_(std::move(signs)) {
  if (signs_.empty()) throw InvalidInput("fingerprint state needs dimension >= 1");
  for (auto s : signs_) {
    if (s != 1 && s != -1) throw InvalidInput("fingerprint signs must be +1 or -1");
  }
}

double FingerprintState::amplitude(Vertex i) const { return sign(i) / std::sqrt(static_cast<double>(n())); }

std::vector<double> FingerprintState::amplitudes() const {
  std::vector<double> out;
  out.reserve(signs_.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n()));
  for (auto s : signs_) out.push_back(s * scale);
  return out;
}

double FingerprintState::norm_squared() const {
  double sum = 0.0;
  for (double a : amplitudes()) sum += a * a;
  return sum;
}

FingerprintState encode_fingerprint(const BitString& c) {
  if (c.empty()) throw InvalidInput("cannot encode an empty string");
  std::vector<std::int8_t> signs(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) signs[i] = c[i] ? -1 : +1;
  return FingerprintState(std::move(signs));
}

std::vector<std::vector<double>> matching_basis(const Matching& m, int n) {
  require_perfect(m, n);
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<std::vector<double>> basis;
  for (const Edge& e : m) {
    for (int s : {+1, -1}) {
      std::vector<double> v(static_cast<std::size_t>(n), 0.0);
      v[static_cast<std::size_t>(e.u - 1)] = h;
      v[static_cast<std::size_t>(e.v - 1)] = s * h;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

std::vector<MeasurementOutcome> outcome_distribution(const FingerprintState& state, const Matching& m) {
  require_perfect(m, state.n());
  std::vector<MeasurementOutcome> out;
  const double denominator = 2.0 * state.n();
  for (const Edge& e : m) {
    for (int s : {+1, -1}) {
      const int w = weight_numerator(state, e, s);
      if (w != 0) out.push_back({e, s, w / denominator});
    }
  }
  return out;
}

MeasurementOutcome measure_in_matching_basis(const FingerprintState& state, const Matching& m, Rng& rng) {
  require_perfect(m, state.n());
  // Integer weights over the full basis sum to 2n, so sampling is exact.
  const auto total = static_cast<std::uint64_t>(2 * state.n());
  std::uint64_t draw = rng.uniform(total);
  for (const Edge& e : m) {
    for (int s : {+1, -1}) {
      const auto w = static_cast<std::uint64_t>(weight_numerator(state, e, s));
      if (draw < w) return {e, s, static_cast<double>(w) / static_cast<double>(total)};
      draw -= w;
    }
  }
  throw std::logic_error("basis weights do not sum to 2n");
}

MeasurementOutcome measure_in_matching_basis(const FingerprintState& state, const Matching& m, std::uint64_t seed) {
  Rng rng(seed);
  return measure_in_matching_basis(state, m, rng);
}

CostReport quantum_cost(int n, int t) {
  if (n < 1 || t < 1) throw InvalidInput("quantum_cost needs n >= 1 and t >= 1");
  CostReport cost;
  cost.qubits = ceil_log2(static_cast<std::uint64_t>(n));
  cost.classical_bits = ceil_log2(static_cast<std::uint64_t>(t));
  cost.total = cost.qubits + cost.classical_bits;
  return cost;
}

QuantumRun run_quantum_smp(const HmpInstance& instance, const MatchingFamily& family, std::uint64_t seed) {
  if (instance.n() != family.n()) throw InvalidInput("instance and family disagree on n");
  const std::uint64_t index = instance.matching_index();
  if (index > static_cast<std::uint64_t>(family.t())) {
    throw RelationUndefined("decoded matching index exceeds the family size");
  }
  QuantumRun run;
  run.cost = quantum_cost(family.n(), family.t());

  // Player 1: fingerprint of c. Player k: the index. Players 2..k-1: empty.
  const FingerprintState state = encode_fingerprint(instance.c());
  const int k = instance.k();
  for (int p = 1; p <= k; ++p) {
    PlayerMessage msg{p, 0, 0};
    if (p == 1) msg.qubits = run.cost.qubits;
    if (p == k) msg.classical_bits = run.cost.classical_bits;
    run.messages.push_back(msg);
  }

  const Matching& m = family.matching(static_cast<int>(index));
  Rng rng(seed);
  run.outcome = measure_in_matching_basis(state, m, rng);
  run.answer = Answer{run.outcome.edge.u, run.outcome.edge.v, run.outcome.sign < 0};
  return run;
}

}  // namespace hmp
