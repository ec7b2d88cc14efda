#include "epsnim/engine.hpp"

#include <algorithm>
#include <array>

namespace epsnim {

namespace {

Outcome combine(bool has_l, bool has_r, bool has_p) {
  if (has_p || (has_l && has_r)) return Outcome::N;
  if (has_l) return Outcome::L;
  if (has_r) return Outcome::R;
  return Outcome::P;  // every option is an N-position
}

}  // namespace

std::vector<std::int64_t> options(const GameSpec& spec, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("position must be >= 0");
  std::vector<std::int64_t> out;
  for (std::int64_t s : spec.set().members_up_to(n)) out.push_back(n - s);
  std::sort(out.begin(), out.end());
  return out;
}

OutcomeSequence::OutcomeSequence(GameSpec spec) : spec_(std::move(spec)) {
  if (spec_.set().is_finite()) finite_members_ = spec_.set().members_up_to(spec_.set().max());
}

void OutcomeSequence::extend_to(std::int64_t count, std::int64_t position_budget) {
  if (count > position_budget) {
    throw budget_error("requested horizon " + std::to_string(count) +
                       " exceeds position budget " + std::to_string(position_budget));
  }
  if (size() >= count) return;
  values_.reserve(static_cast<std::size_t>(count));

  const std::int64_t min_s = spec_.set().min();
  for (std::int64_t n = size(); n < std::min(count, min_s); ++n) {
    values_.push_back(spec_.terminal().at(n));
  }

  const auto& tail = spec_.set().tail();
  for (std::int64_t n = size(); n < count; ++n) {
    bool has_l = false, has_r = false, has_p = false;
    auto saw = [&](Outcome o) {
      switch (o) {
        case Outcome::L: has_l = true; break;
        case Outcome::R: has_r = true; break;
        case Outcome::P: has_p = true; break;
        case Outcome::N: break;
      }
      return has_p || (has_l && has_r);  // outcome already forced to N
    };

    bool decided = false;
    if (tail && tail->start <= n) {
      // Largest removals first: they land on the small positions, whose
      // outcomes are most varied, so the scan short-circuits early.
      std::int64_t k = (n - tail->start) / tail->step;
      for (; k >= 0 && !decided; --k) decided = saw(values_[static_cast<std::size_t>(n - (tail->start + k * tail->step))]);
    }
    const auto& base = tail ? spec_.set().base() : finite_members_;
    for (auto it = base.rbegin(); it != base.rend() && !decided; ++it) {
      if (*it > n) continue;
      decided = saw(values_[static_cast<std::size_t>(n - *it)]);
    }
    values_.push_back(combine(has_l, has_r, has_p));
  }
}

OutcomeSequence outcome_table(const GameSpec& spec, std::int64_t horizon,
                              std::int64_t position_budget) {
  if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
  OutcomeSequence seq(spec);
  seq.extend_to(horizon, position_budget);
  return seq;
}

Outcome oracle_outcome(const GameSpec& spec, std::int64_t n, std::int64_t cap) {
  if (n < 0) throw std::invalid_argument("position must be >= 0");
  if (n > cap) {
    throw budget_error("oracle position " + std::to_string(n) + " exceeds cap " +
                       std::to_string(cap));
  }

  // memo[n][player]: 0 unknown, 1 the player wins moving first, 2 loses.
  std::vector<std::array<std::int8_t, 2>> memo(static_cast<std::size_t>(n) + 1, {0, 0});
  const std::int64_t min_s = spec.set().min();

  auto wins_first = [&](auto&& self, int player, std::int64_t m) -> bool {
    std::int8_t& slot = memo[static_cast<std::size_t>(m)][player];
    if (slot != 0) return slot == 1;
    bool win = false;
    if (m < min_s) {
      Outcome t = spec.terminal().at(m);
      win = player == 0 ? (t == Outcome::L || t == Outcome::N)
                        : (t == Outcome::R || t == Outcome::N);
    } else {
      for (std::int64_t s : spec.set().members_up_to(m)) {
        if (!self(self, 1 - player, m - s)) {
          win = true;
          break;
        }
      }
    }
    slot = win ? 1 : 2;
    return win;
  };

  bool left_first = wins_first(wins_first, 0, n);
  bool left_second = !wins_first(wins_first, 1, n);
  if (left_first) return left_second ? Outcome::L : Outcome::N;
  return left_second ? Outcome::P : Outcome::R;
}

CrosscheckReport oracle_crosscheck(std::int64_t max_element, std::int64_t max_n) {
  if (max_element < 2) throw std::invalid_argument("max_element must be >= 2");
  CrosscheckReport report;
  const int bits = static_cast<int>(max_element - 1);  // elements 2..max_element
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << bits); ++mask) {
    std::vector<std::int64_t> members;
    for (int b = 0; b < bits; ++b) {
      if (mask >> b & 1) members.push_back(2 + b);
    }
    GameSpec spec = GameSpec::lr(SubtractionSet::finite(std::move(members)));
    OutcomeSequence table = outcome_table(spec, max_n + 1);
    report.sets_checked++;
    for (std::int64_t n = 0; n <= max_n; ++n) {
      report.positions_checked++;
      Outcome got = oracle_outcome(spec, n, std::max(max_n, kDefaultOracleCap));
      if (got != table.at(n)) {
        report.mismatches.push_back({spec.set().to_string(), n, table.at(n), got});
      }
    }
  }
  return report;
}

}  // namespace epsnim
