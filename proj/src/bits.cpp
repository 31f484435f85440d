#include "hmp/bits.hpp"

#include "hmp/errors.hpp"

namespace hmp {

BitString::BitString(std::size_t length, bool value) : bits_(length, value ? 1 : 0) {}

BitString BitString::parse(std::string_view text) {
  BitString out;
  out.bits_.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw InvalidInput("bit string contains a character other than 0/1: '" + std::string(text) + "'");
    }
    out.bits_.push_back(ch == '1' ? 1 : 0);
  }
  return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t length) {
  if (length > 64) throw InvalidInput("from_uint supports at most 64 bits");
  BitString out(length);
  for (std::size_t i = 0; i < length; ++i) {
    out.bits_[length - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1U);
  }
  return out;
}

bool BitString::at(std::size_t i) const {
  if (i >= bits_.size()) throw InvalidInput("bit index out of range");
  return bits_[i] != 0;
}

void BitString::set(std::size_t i, bool value) {
  if (i >= bits_.size()) throw InvalidInput("bit index out of range");
  bits_[i] = value ? 1 : 0;
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitString BitString::slice(std::size_t pos, std::size_t length) const {
  if (pos + length > bits_.size()) throw InvalidInput("slice out of range");
  BitString out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                   bits_.begin() + static_cast<std::ptrdiff_t>(pos + length));
  return out;
}

std::uint64_t BitString::to_uint() const {
  if (bits_.size() > 64) throw InvalidInput("bit string longer than 64 bits");
  std::uint64_t value = 0;
  for (auto b : bits_) value = (value << 1) | b;
  return value;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.size() != size()) throw InvalidInput("xor of bit strings with different lengths");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= other.bits_[i];
  return *this;
}

int ceil_log2(std::uint64_t x) {
  if (x == 0) throw InvalidInput("ceil_log2 of zero");
  int b = 0;
  while (b < 64 && (std::uint64_t{1} << b) < x) ++b;
  return b;
}

}  // namespace hmp
