#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hmp {

/// A fixed sequence of bits. Position 0 is the leftmost character of the
/// textual form and the most significant bit of the integer form.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t length, bool value = false);

  /// Parses a string over {'0','1'}; throws InvalidInput on anything else.
  static BitString parse(std::string_view text);
  /// The `length` low bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t length);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value);
  void push_back(bool value) { bits_.push_back(value ? 1 : 0); }
  void append(const BitString& other);

  BitString slice(std::size_t pos, std::size_t length) const;
  std::uint64_t to_uint() const;
  std::string to_string() const;

  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString lhs, const BitString& rhs) { return lhs ^= rhs; }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Smallest b with 2^b >= x; ceil_log2(1) == 0. Throws on x == 0.
int ceil_log2(std::uint64_t x);

}  // namespace hmp
