#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "epsnim/game_spec.hpp"

namespace epsnim {

// Largest table the engine will allocate unless the caller raises the budget.
inline constexpr std::int64_t kDefaultPositionBudget = std::int64_t{1} << 27;
// Exhaustive-search cap for the definition-level oracle.
inline constexpr std::int64_t kDefaultOracleCap = 200;

class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Option positions {n-s : s in S, n-s >= 0}, sorted ascending, deduplicated.
std::vector<std::int64_t> options(const GameSpec& spec, std::int64_t n);

// Outcome sequence computed bottom-up from the terminal rule by the
// option-outcome case split. Extending never changes computed entries.
class OutcomeSequence {
 public:
  explicit OutcomeSequence(GameSpec spec);

  void extend_to(std::int64_t count, std::int64_t position_budget = kDefaultPositionBudget);

  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  Outcome at(std::int64_t n) const { return values_[static_cast<std::size_t>(n)]; }
  std::span<const Outcome> values() const { return values_; }
  std::string to_string() const { return outcomes_to_string(values_); }
  const GameSpec& spec() const { return spec_; }

 private:
  GameSpec spec_;
  std::vector<Outcome> values_;
  std::vector<std::int64_t> finite_members_;  // empty when the set is infinite
};

OutcomeSequence outcome_table(const GameSpec& spec, std::int64_t horizon,
                              std::int64_t position_budget = kDefaultPositionBudget);

// Definition-level oracle: decides "wins moving first" separately for each
// player by memoized two-player recursion from the terminal winner maps, then
// combines the two booleans. Deliberately does not use the outcome-set
// recurrence, so it cross-checks it.
Outcome oracle_outcome(const GameSpec& spec, std::int64_t n, std::int64_t cap = kDefaultOracleCap);

struct OracleMismatch {
  std::string set_text;
  std::int64_t n = 0;
  Outcome table_outcome = Outcome::L;
  Outcome oracle_outcome = Outcome::L;
};

struct CrosscheckReport {
  std::int64_t sets_checked = 0;
  std::int64_t positions_checked = 0;
  std::vector<OracleMismatch> mismatches;
  bool pass() const { return mismatches.empty(); }
};

// Compares the recurrence against the oracle for every nonempty
// S ⊆ {2, ..., max_element} under the LR rule, positions 0..max_n.
CrosscheckReport oracle_crosscheck(std::int64_t max_element, std::int64_t max_n);

}  // namespace epsnim
