#include "hmp/core_model.hpp"

#include <algorithm>
#include <cmath>

#include "hmp/errors.hpp"

namespace hmp {

HmpInstance::HmpInstance(int n, int k, int r, std::vector<BitString> alphas, BitString c)
    : n_(n), k_(k), r_(r), alphas_(std::move(alphas)), c_(std::move(c)) {
  if (n_ <= 0 || n_ % 2 != 0) throw InvalidInput("instance needs a positive even n");
  if (k_ < 2) throw InvalidInput("instance needs at least two players");
  if (r_ < 1) throw InvalidInput("index strings need at least one bit");
  if (static_cast<int>(alphas_.size()) != k_ - 1) throw InvalidInput("instance needs exactly k-1 index strings");
  for (const auto& a : alphas_) {
    if (static_cast<int>(a.size()) != r_) throw InvalidInput("every index string must have exactly r bits");
  }
  if (static_cast<int>(c_.size()) != n_) throw InvalidInput("hidden string must have length n");
  if ((k_ - 1) * r_ > 62) throw InvalidInput("index strings longer than 62 bits in total are not supported");
}

HmpInstance HmpInstance::with_index(int n, int k, int r, std::uint64_t index, BitString c) {
  return HmpInstance(n, k, r, encode_matching_index(index, k, r), std::move(c));
}

std::uint64_t HmpInstance::matching_index() const { return decode_matching_index(alphas_); }

bool HmpInstance::valid_for(const MatchingFamily& family) const {
  return family.n() == n_ && matching_index() <= static_cast<std::uint64_t>(family.t());
}

const BitString* PlayerView::alpha(int position) const {
  for (const auto& [pos, s] : visible_alphas) {
    if (pos == position) return &s;
  }
  return nullptr;
}

std::uint64_t decode_matching_index(std::span<const BitString> alphas) {
  if (alphas.empty()) throw InvalidInput("decode_matching_index needs at least one index string");
  const std::size_t r = alphas.front().size();
  if (r * alphas.size() > 62) throw InvalidInput("index strings longer than 62 bits in total are not supported");
  std::uint64_t value = 0;
  for (const auto& a : alphas) {
    if (a.size() != r) throw InvalidInput("index strings must share one length");
    for (std::size_t i = 0; i < a.size(); ++i) value = (value << 1) | (a[i] ? 1U : 0U);
  }
  return value + 1;
}

std::vector<BitString> encode_matching_index(std::uint64_t index, int k, int r) {
  if (k < 2 || r < 1) throw InvalidInput("encode_matching_index needs k >= 2 and r >= 1");
  const int total = (k - 1) * r;
  if (total > 62) throw InvalidInput("index strings longer than 62 bits in total are not supported");
  if (index < 1 || index > (std::uint64_t{1} << total)) throw InvalidInput("matching index out of range for (k, r)");
  BitString all = BitString::from_uint(index - 1, static_cast<std::size_t>(total));
  std::vector<BitString> out;
  out.reserve(static_cast<std::size_t>(k - 1));
  for (int i = 0; i < k - 1; ++i) out.push_back(all.slice(static_cast<std::size_t>(i * r), static_cast<std::size_t>(r)));
  return out;
}

int required_alpha_bits(int t, int k) {
  if (t < 1 || k < 2) throw InvalidInput("required_alpha_bits needs t >= 1 and k >= 2");
  const int bits = ceil_log2(static_cast<std::uint64_t>(t));
  return std::max(1, (bits + (k - 2)) / (k - 1));
}

bool paper_regime(int k, int t) {
  if (t < 1 || (t & (t - 1)) != 0) return false;
  const int log_t = ceil_log2(static_cast<std::uint64_t>(t));
  return 2 < k && k < log_t && log_t % (k - 1) == 0;
}

bool relation_holds(const HmpInstance& instance, const MatchingFamily& family, const Answer& answer) {
  if (instance.n() != family.n()) return false;
  const std::uint64_t j = instance.matching_index();
  if (j > static_cast<std::uint64_t>(family.t())) return false;
  if (answer.i1 == answer.i2) return false;
  if (answer.i1 < 1 || answer.i2 < 1 || answer.i1 > instance.n() || answer.i2 > instance.n()) return false;
  const Matching& m = family.matching(static_cast<int>(j));
  if (!std::binary_search(m.begin(), m.end(), Edge::make(answer.i1, answer.i2))) return false;
  const bool parity = instance.c()[static_cast<std::size_t>(answer.i1 - 1)] != instance.c()[static_cast<std::size_t>(answer.i2 - 1)];
  return parity == answer.e;
}

PlayerView view_of(const HmpInstance& instance, int player) {
  const int k = instance.k();
  if (player < 1 || player > k) throw InvalidInput("player out of range 1..k");
  PlayerView view;
  view.player = player;
  view.k = k;
  for (int pos = 1; pos <= k - 1; ++pos) {
    if (pos == player) continue;
    view.visible_alphas.emplace_back(pos, instance.alphas()[static_cast<std::size_t>(pos - 1)]);
  }
  if (player < k) view.c = instance.c();
  return view;
}

std::vector<std::vector<BitString>> special_inputs(int r, int k) {
  if (k < 3) throw InvalidInput("special inputs are defined for k >= 3");
  if (r < 1) throw InvalidInput("special inputs need r >= 1");
  const int free_bits = (k - 2) * r;
  if (free_bits > 24) throw InvalidInput("special input enumeration limited to 2^24 tuples");
  std::vector<std::vector<BitString>> out;
  out.reserve(std::size_t{1} << free_bits);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << free_bits); ++v) {
    BitString all = BitString::from_uint(v, static_cast<std::size_t>(free_bits));
    std::vector<BitString> tuple;
    BitString sum(static_cast<std::size_t>(r));
    for (int i = 0; i < k - 2; ++i) {
      tuple.push_back(all.slice(static_cast<std::size_t>(i * r), static_cast<std::size_t>(r)));
      sum ^= tuple.back();
    }
    tuple.push_back(std::move(sum));
    out.push_back(std::move(tuple));
  }
  return out;
}

}  // namespace hmp
