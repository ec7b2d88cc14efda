#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "epsnim/engine.hpp"

namespace epsnim {

using GameId = std::uint32_t;

// Arena of interned canonical games. Every id in the arena names the unique
// canonical form of its game, so id equality is game equality. leq, negate
// and sum are memoized on ids; a fresh arena replays identically given the
// same operations, so serialized identities are stable across runs.
//
// Not internally synchronized: parallel workers use one arena each.
class GameArena {
 public:
  GameArena();

  GameId zero() const { return 0; }
  GameId one();
  GameId neg_one();
  GameId star();

  // Canonicalizes {left | right} (option ids must come from this arena):
  // removes dominated options, bypasses reversible ones, then interns.
  GameId make(std::vector<GameId> left, std::vector<GameId> right);

  bool leq(GameId g, GameId h);
  bool eq(GameId g, GameId h) const { return g == h; }
  GameId negate(GameId g);
  GameId sum(GameId g, GameId h);
  Outcome outcome(GameId g);

  std::span<const GameId> left_options(GameId g) const { return nodes_[g].left; }
  std::span<const GameId> right_options(GameId g) const { return nodes_[g].right; }

  // "{a,b|c}" with recursive nesting; 0 prints as "{|}".
  std::string bracket(GameId g) const;
  // Node table + edges; node ids are renumbered in dependency order so the
  // output depends only on the game itself.
  nlohmann::json dag_json(GameId g) const;

  std::size_t size() const { return nodes_.size(); }
  void set_node_budget(std::size_t budget) { node_budget_ = budget; }

 private:
  struct Node {
    std::vector<GameId> left;
    std::vector<GameId> right;
    GameId negation = kNoId;
  };
  static constexpr GameId kNoId = ~GameId{0};

  struct RawGame {
    const std::vector<GameId>& left;
    const std::vector<GameId>& right;
  };

  GameId intern(std::vector<GameId> left, std::vector<GameId> right);
  bool leq_id_raw(GameId g, const RawGame& h);
  bool leq_raw_id(const RawGame& g, GameId h);

  std::vector<Node> nodes_;
  std::unordered_map<std::string, GameId> intern_table_;
  std::unordered_map<std::uint64_t, std::int8_t> leq_memo_;
  std::unordered_map<std::uint64_t, GameId> sum_memo_;
  std::size_t node_budget_ = 1'000'000;
  GameId one_ = kNoId, neg_one_ = kNoId, star_ = kNoId;
};

// A term of a difference expression: multiplier * value[n + offset].
// Negative multipliers mean negated copies, |multiplier| > 1 repeated
// disjunctive summands.
struct DiffTerm {
  std::int64_t multiplier = 1;
  std::int64_t offset = 0;
};

struct ValuePeriodCheck {
  bool pass = false;
  std::int64_t preperiod = -1;       // least A with values[n+p] == values[n] on [A, A+window]
  std::int64_t last_mismatch = -1;   // when failing: the highest mismatch seen
};

// Normal-play game values of the LR game: terminal L-positions become the
// game 1 = {0|}, terminal R-positions -1 = {|0}, and every other position is
// the canonical form of {options | options} over the already-assigned values.
// The terminal rule must assign only L or R.
class ValueSequence {
 public:
  explicit ValueSequence(GameSpec spec);

  void extend_to(std::int64_t count);
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  GameId value(std::int64_t n);
  Outcome value_outcome(std::int64_t n);
  std::string bracket(std::int64_t n);

  GameArena& arena() { return arena_; }
  const GameSpec& spec() const { return spec_; }

  // Least A such that values[n+p] == values[n] for all n in [A, A+window],
  // searching A <= search_limit.
  ValuePeriodCheck check_period(std::int64_t p, std::int64_t window, std::int64_t search_limit = 60);

  // Outcome of sum_j multiplier_j * values[n + offset_j].
  Outcome difference_outcome(std::span<const DiffTerm> terms, std::int64_t n);

 private:
  GameSpec spec_;
  GameArena arena_;
  std::vector<GameId> values_;
};

}  // namespace epsnim
