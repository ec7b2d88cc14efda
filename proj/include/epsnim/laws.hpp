#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "epsnim/engine.hpp"

namespace epsnim {

struct LawViolation {
  std::int64_t position = 0;
  std::string constraint;
  std::string observed;
};

struct LawReport {
  std::string law_id;
  std::int64_t horizon = 0;
  bool skipped = false;
  std::string note;
  std::vector<LawViolation> violations;

  bool pass() const { return violations.empty(); }
};

// Structural laws of outcome sequences under the LR terminal rule:
//   adj-left-first      O(n) in {R,N} => O(n±1) in {L,N}
//   adj-left-second     O(n) in {R,P} => O(n±1) in {L,P}
//   r-flanked-by-l      O(n) = R      => O(n±1) = L
//   p-adjacent          O(n) = P      => O(n±1) in {L,P}
//   n-adjacent          O(n) = N      => O(n±1) in {L,N}
//   p-run-length        maximal P-runs have length <= min(S)-1
//   p-run-flanks        completed P-runs are flanked by L on both sides
//   n-run-length        maximal N-runs have length <= max(S)-1 (finite sets
//                       only; skipped otherwise)
//   n-run-flanks        N-runs have L on the left; and on the right when the
//                       run ends within the computed range
// Checkers consume precomputed values so one sweep can feed many laws.
std::vector<LawReport> check_structure(const GameSpec& spec, std::span<const Outcome> values);
std::vector<LawReport> check_structure(const GameSpec& spec, std::int64_t horizon);

// Left/Right-interchanged versions of the two adjacency laws. These are
// expected to fail; the violations exhibit the asymmetry of the game.
std::vector<LawReport> mirrored_adjacency_probe(const GameSpec& spec,
                                                std::span<const Outcome> values);

bool is_p_symmetric(const SubtractionSet& s, std::int64_t p);

// Shift laws for p-symmetric sets:
//   shift-preserves-left      O(m) = L => O(m+p) in {L,P}
//   shift-preserves-right     O(m) = R => O(m+p) in {R,P}
//   shift-preserves-previous  O(m) = P => O(m+p) = P
//   shift-reflects-next       O(m+p) = N => O(m) = N
//   columns-stabilize         along each residue class the only transitions
//                             are N->{L,R,P}, L->P, R->P
//   offset-one-right-or-previous  O(1+kp) in {R,P} (LR rule only)
//   not-purely-one-periodic   the sequence is not constant when the terminal
//                             rule contains P, or both L and R
// Throws std::invalid_argument unless the set is finite and p-symmetric.
std::vector<LawReport> check_psym(const GameSpec& spec, std::int64_t p,
                                  std::span<const Outcome> values);
std::vector<LawReport> check_psym(const GameSpec& spec, std::int64_t p, std::int64_t horizon);

// Classical last-player-wins table for the same removable set: terminals are
// P; n is N iff some option is P. Values are over {N, P} only.
std::vector<Outcome> normal_play_outcomes(const SubtractionSet& s, std::int64_t horizon);

// Conditional transfer between the LR game and normal play. If every
// R-position of the LR game is a normal-play P-position, then LR-P positions
// are normal-P and LR-N positions are normal-N. A failing hypothesis makes
// the conclusions vacuous and is reported, not an error.
struct NormalTransferReport {
  bool hypothesis_holds = false;
  std::optional<std::int64_t> hypothesis_counterexample;
  std::vector<LawReport> conclusions;  // p-transfers-to-normal, n-transfers-to-normal

  bool conclusions_pass() const {
    for (const auto& r : conclusions) {
      if (!r.pass()) return false;
    }
    return true;
  }
};

NormalTransferReport check_normal_transfer(std::span<const Outcome> lr_values, std::span<const Outcome> normal_values);
NormalTransferReport check_normal_transfer(const SubtractionSet& s, std::int64_t horizon);

nlohmann::json to_json(const LawReport& report, std::size_t max_listed_violations = 50);

}  // namespace epsnim
