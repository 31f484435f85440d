#pragma once

#include <stdexcept>
#include <string>

namespace hmp {

// Malformed arguments or violated preconditions. The CLI maps this to exit status 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The decoded matching index lies outside the family, so the relation has no correct answer.
class RelationUndefined : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// An exhaustive search or enumeration would exceed its declared budget.
// The CLI maps this to exit status 3.
class SearchRefused : public std::runtime_error {
 public:
  SearchRefused(const std::string& what, double estimated_size)
      : std::runtime_error(what), estimated_size_(estimated_size) {}

  double estimated_size() const noexcept { return estimated_size_; }

 private:
  double estimated_size_;
};

}  // namespace hmp
