#pragma once

// The hidden matching relation: inputs, number-on-forehead visibility and
// answer checking. Players are numbered 1..k; players 1..k-1 are senders and
// player k is the recipient (or, in the simultaneous model, the player who
// knows the matching index).

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hmp/bits.hpp"
#include "hmp/graph.hpp"

namespace hmp {

/// One input of the relation: k-1 index strings of r bits each plus the hidden string c.
class HmpInstance {
 public:
  HmpInstance(int n, int k, int r, std::vector<BitString> alphas, BitString c);

  /// Builds the instance whose index strings decode to `index` (1-based).
  static HmpInstance with_index(int n, int k, int r, std::uint64_t index, BitString c);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  int r() const noexcept { return r_; }
  const std::vector<BitString>& alphas() const noexcept { return alphas_; }
  const BitString& c() const noexcept { return c_; }

  std::uint64_t matching_index() const;
  /// Same n and a decoded index within 1..t.
  bool valid_for(const MatchingFamily& family) const;

 private:
  int n_;
  int k_;
  int r_;
  std::vector<BitString> alphas_;
  BitString c_;
};

/// What one player sees. Hidden data is absent rather than blanked.
struct PlayerView {
  int player = 0;
  int k = 0;
  /// (1-based position, string) for every index string the player can see.
  std::vector<std::pair<int, BitString>> visible_alphas;
  std::optional<BitString> c;

  bool sees_c() const noexcept { return c.has_value(); }
  const BitString* alpha(int position) const;
};

struct Answer {
  Vertex i1 = 0;
  Vertex i2 = 0;
  bool e = false;

  friend bool operator==(const Answer&, const Answer&) = default;
  friend auto operator<=>(const Answer&, const Answer&) = default;
};

/// Big-endian value of the concatenation plus one, i.e. 1..2^((k-1)r).
std::uint64_t decode_matching_index(std::span<const BitString> alphas);
/// Inverse of decode_matching_index for k-1 strings of r bits.
std::vector<BitString> encode_matching_index(std::uint64_t index, int k, int r);

/// Smallest r >= 1 with 2^((k-1)r) >= t.
int required_alpha_bits(int t, int k);

/// 2 < k < log t with log t a multiple of k-1.
bool paper_regime(int k, int t);

bool relation_holds(const HmpInstance& instance, const MatchingFamily& family, const Answer& answer);

PlayerView view_of(const HmpInstance& instance, int player);

/// All tuples (a_1, ..., a_{k-2}, a_1 xor ... xor a_{k-2}), enumerated with a_1
/// most significant. Requires k >= 3.
std::vector<std::vector<BitString>> special_inputs(int r, int k);

}  // namespace hmp
