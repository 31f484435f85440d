#pragma once

// Classical non-interactive one-way protocols: senders 1..k-1 each send one
// fixed-width message to player k, who answers. Randomness is always an
// explicit finite seed set so that error probabilities are exact averages.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hmp/bits.hpp"
#include "hmp/core_model.hpp"
#include "hmp/graph.hpp"

namespace hmp {

/// Message of one sender given its view and the shared seed.
using SenderFn = std::function<BitString(const PlayerView& view, std::size_t shared_seed)>;
/// Recipient's answer given all k-1 messages, its own view, the shared seed and its private seed.
using DecoderFn = std::function<Answer(std::span<const BitString> messages, const PlayerView& view,
                                       std::size_t shared_seed, std::size_t private_seed)>;

struct OneWayProtocol {
  int k = 2;
  /// Exact width of each sender's message; senders that disagree are rejected at run time.
  std::vector<int> message_bits;
  std::vector<SenderFn> senders;
  DecoderFn decoder;
  /// Seeds shared by all players, drawn uniformly.
  std::size_t shared_seeds = 1;
  /// Seeds private to the recipient, drawn uniformly.
  std::size_t private_seeds = 1;
  std::string label;

  /// Total message bits, the protocol's communication cost.
  int cost() const;
  bool deterministic_senders() const noexcept { return shared_seeds == 1; }
  bool deterministic() const noexcept { return shared_seeds == 1 && private_seeds == 1; }
  void validate() const;

  std::vector<BitString> send(const HmpInstance& instance, std::size_t shared_seed) const;
  Answer answer(const HmpInstance& instance, std::size_t shared_seed, std::size_t private_seed) const;
};

// ---------------------------------------------------------------------------
// Error evaluation

struct InputKey {
  std::uint64_t index = 1;
  BitString c;

  friend bool operator==(const InputKey&, const InputKey&) = default;
  friend auto operator<=>(const InputKey&, const InputKey&) = default;
};

struct InputError {
  InputKey input;
  double error = 0.0;
};

enum class DistributionKind { Uniform, Explicit };

struct InputDistribution {
  DistributionKind kind = DistributionKind::Uniform;
  /// Only read for Explicit; weights are normalised, missing inputs weigh zero.
  std::map<InputKey, double> weights;
};

struct ErrorReport {
  double worst_case_error = 0.0;
  double distributional_error = 0.0;
  DistributionKind distribution = DistributionKind::Uniform;
  std::vector<InputError> per_input_errors;
};

/// Exact error of every valid input (all c, all indices 1..t), averaging over
/// every shared and private seed.
ErrorReport evaluate_protocol(const OneWayProtocol& protocol, const MatchingFamily& family,
                              const InputDistribution& distribution = {});

// ---------------------------------------------------------------------------
// Transforms

/// Senders send their messages for every shared seed, concatenated; the
/// recipient picks one seed privately and reads the matching slices.
OneWayProtocol derandomize_senders(const OneWayProtocol& protocol);

struct SeedReduction {
  OneWayProtocol protocol;
  std::vector<std::size_t> kept_seeds;
  double original_error = 0.0;
  double measured_error = 0.0;
  double target_delta = 0.0;
  /// measured_error <= original_error + target_delta.
  bool within_target = false;
};

/// Keeps `sample_count` distinct shared seeds chosen at random (all of them
/// when sample_count >= |S|) and re-evaluates the result exactly.
SeedReduction reduce_seed_set(const OneWayProtocol& protocol, const MatchingFamily& family, double target_delta,
                              std::size_t sample_count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Message bundles

/// Every message the deterministic senders send for one fixed c: for k >= 3
/// one entry per XOR-completed special tuple, for k = 2 the single message.
struct MessageBundle {
  int k = 2;
  int r = 1;
  std::vector<std::vector<BitString>> tuples;
  /// messages[tuple][sender - 1]
  std::vector<std::vector<BitString>> messages;
  int total_bits = 0;

  BitString concatenated() const;
  /// The message sender `sender` would send when the index strings are `alphas`.
  const BitString& message_for(int sender, std::span<const BitString> alphas) const;
  /// All k-1 messages for the given index strings.
  std::vector<BitString> messages_for(std::span<const BitString> alphas) const;

 private:
  friend MessageBundle build_message_bundle(const OneWayProtocol&, const BitString&, int);
  std::vector<std::map<std::vector<BitString>, std::size_t>> lookup_;
};

MessageBundle build_message_bundle(const OneWayProtocol& protocol, const BitString& c, int r);

// ---------------------------------------------------------------------------
// Concrete protocols

/// Every sender sends `bits` zeros; the recipient answers the first edge with e = 0.
OneWayProtocol constant_protocol(int k, int bits, const MatchingFamily& family);
/// Sender 1 sends c; the recipient answers the first edge of its matching exactly.
OneWayProtocol verbatim_protocol(int k, const MatchingFamily& family);
/// Sender 1 sends the parity of one chosen edge per matching (first edge by
/// default); the recipient answers that edge. Zero error, cost t.
OneWayProtocol edge_parity_protocol(int k, const MatchingFamily& family, std::optional<std::vector<Edge>> edges = {});
/// Zero-bit protocol whose recipient outputs the first edge with a uniform bit.
OneWayProtocol guess_protocol(int k, const MatchingFamily& family);
/// Deterministic protocol with pseudo-random sender tables and decoder, keyed by `seed`.
OneWayProtocol random_table_protocol(int k, std::vector<int> message_bits, const MatchingFamily& family,
                                     std::uint64_t seed);
/// Like random_table_protocol but every shared seed has its own tables and the
/// decoder flips its answer bit on a pseudo-random subset of private seeds.
OneWayProtocol random_shared_protocol(int k, std::vector<int> message_bits, const MatchingFamily& family,
                                      std::size_t shared_seeds, std::size_t private_seeds, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Tables (the serialisable form)

/// Sender tables keyed by view and a decoder table keyed by (messages, index
/// strings). Only decoder keys reachable on valid inputs are stored.
struct ProtocolTable {
  int k = 2;
  int n = 0;
  int r = 1;
  std::vector<int> message_bits;
  std::size_t private_seeds = 1;
  /// senders[i][view_key] = message, with view_key as produced by view_key().
  std::vector<std::map<std::string, std::string>> senders;
  /// decoder[decoder_key] = answer for each private seed.
  std::map<std::string, std::vector<Answer>> decoder;

  friend bool operator==(const ProtocolTable&, const ProtocolTable&) = default;
};

/// "a1,*,a3|c" with '*' at the hidden position; c is empty for the recipient.
std::string view_key(const PlayerView& view);
/// "m1,m2|a1,a2"
std::string decoder_key(std::span<const BitString> messages, std::span<const BitString> alphas);

/// Requires deterministic senders.
ProtocolTable tabulate(const OneWayProtocol& protocol, const MatchingFamily& family);
OneWayProtocol protocol_from_table(const ProtocolTable& table);

// ---------------------------------------------------------------------------
// Exhaustive search (k = 2)

enum class SearchMode { Deterministic, SharedSeeds };

struct SearchOptions {
  SearchMode mode = SearchMode::Deterministic;
  int shared_seeds = 1;
  /// Partition-search nodes allowed per message length.
  std::uint64_t max_nodes = 200'000'000;
  /// Sender-mapping multisets allowed per message length in shared-seed mode.
  double max_candidates = 1'000'000;
};

struct BruteForceResult {
  int cost = 0;
  double worst_case_error = 0.0;
  OneWayProtocol protocol;
  /// partitions[seed][c] = message sent on c (c as an integer, c_1 most significant).
  std::vector<std::vector<int>> partitions;
  std::uint64_t nodes_explored = 0;
};

/// Minimal sender message length L for which some protocol reaches worst-case
/// error <= epsilon. Sender mappings are enumerated as set partitions of
/// {0,1}^n (message labels up to permutation); for each one the optimal,
/// possibly randomised, decoder is found exactly by linear programming.
BruteForceResult bruteforce_min_cost(const MatchingFamily& family, int k, double epsilon,
                                     const SearchOptions& options = {});

/// Best achievable success probability on matching `index` when the recipient
/// only knows that c lies in `cell` (worst case over the cell).
double cell_game_value(const MatchingFamily& family, int index, std::span<const BitString> cell);

}  // namespace hmp
