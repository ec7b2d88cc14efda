#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace epsnim {

// Arithmetic progression {start + k*step : k >= 0}. Together with a finite
// base this represents every infinite removable set used here exactly.
struct ArithTail {
  std::int64_t start = 0;
  std::int64_t step = 1;
  bool operator==(const ArithTail&) const = default;
};

// A removable set: finite base plus an optional arithmetic tail. All members
// are >= 2 and the set is nonempty.
class SubtractionSet {
 public:
  static SubtractionSet finite(std::vector<std::int64_t> members);
  static SubtractionSet with_tail(std::vector<std::int64_t> base, ArithTail tail);

  // Text grammar: brace groups joined by '∪' (or ASCII 'U'). An item is an
  // integer or an arithmetic tail "start..stepD", e.g. "{2,3,6}" or
  // "{4} ∪ {3..step2}". At most one tail in the whole expression.
  static SubtractionSet parse(std::string_view text);

  bool is_finite() const { return !tail_.has_value(); }
  std::int64_t min() const;
  std::int64_t max() const;  // throws std::logic_error for infinite sets
  bool contains(std::int64_t x) const;
  std::vector<std::int64_t> members_up_to(std::int64_t n) const;

  const std::vector<std::int64_t>& base() const { return base_; }
  const std::optional<ArithTail>& tail() const { return tail_; }

  // Canonical text form; parse() round-trips it.
  std::string to_string() const;

  bool operator==(const SubtractionSet&) const = default;

 private:
  SubtractionSet() = default;
  void normalize_and_validate();

  std::vector<std::int64_t> base_;  // sorted, unique, disjoint from the tail
  std::optional<ArithTail> tail_;
};

}  // namespace epsnim
