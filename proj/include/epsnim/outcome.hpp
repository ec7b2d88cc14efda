#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace epsnim {

// The four outcome classes: Left wins no matter who moves first, Right wins
// no matter who moves first, the next (first) player wins, the previous
// (second) player wins.
enum class Outcome : std::uint8_t { L = 0, R = 1, N = 2, P = 3 };

constexpr char to_char(Outcome o) {
  switch (o) {
    case Outcome::L: return 'L';
    case Outcome::R: return 'R';
    case Outcome::N: return 'N';
    case Outcome::P: return 'P';
  }
  return '?';
}

constexpr std::optional<Outcome> outcome_from_char(char c) {
  switch (c) {
    case 'L': return Outcome::L;
    case 'R': return Outcome::R;
    case 'N': return Outcome::N;
    case 'P': return Outcome::P;
    default: return std::nullopt;
  }
}

inline std::string outcomes_to_string(std::span<const Outcome> values) {
  std::string out;
  out.reserve(values.size());
  for (Outcome o : values) out.push_back(to_char(o));
  return out;
}

inline std::vector<Outcome> outcomes_from_string(std::string_view text) {
  std::vector<Outcome> out;
  out.reserve(text.size());
  for (char c : text) {
    auto o = outcome_from_char(c);
    if (!o) throw std::invalid_argument(std::string("invalid outcome character: ") + c);
    out.push_back(*o);
  }
  return out;
}

}  // namespace epsnim
