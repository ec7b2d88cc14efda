#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "epsnim/engine.hpp"

namespace epsnim {

// Horizon used by detection when the caller does not pick one.
inline constexpr std::int64_t kDefaultDetectHorizon = 1'000'000;

// Eventual-periodicity certificate: O(m + period) == O(m) for all m >=
// preperiod. `proved` is set for finite sets, where agreement of windows of
// length max(S) at preperiod and preperiod+period forces agreement forever;
// for infinite sets the certificate is observed-only.
struct PeriodCertificate {
  std::int64_t preperiod = 0;
  std::int64_t period = 1;
  bool proved = false;
  // Outcomes at [preperiod, preperiod + period + max(S)) for finite sets,
  // [preperiod, preperiod + 2*period) for infinite ones.
  std::string window;
};

struct DetectionResult {
  std::optional<PeriodCertificate> certificate;  // nullopt: horizon exceeded
  std::int64_t horizon_used = 0;                 // table length detection examined

  bool found() const { return certificate.has_value(); }
};

// Finds the minimal (preperiod, period): period minimized first (over
// divisors of the detected recurrence), then preperiod. Finite sets yield a
// proved certificate; infinite sets an observed-only one with period <=
// horizon/3. The table grows on demand, so the cost tracks the certificate
// size rather than the horizon.
DetectionResult detect_period(const GameSpec& spec, std::int64_t horizon = kDefaultDetectHorizon);

struct VerifyReport {
  bool pass = false;
  std::int64_t first_violation = -1;  // least violating m, -1 when passing
  std::string detail;
};

// Independent replay: recomputes outcomes and asserts O(m+p) == O(m) on
// [preperiod, check_horizon - period), replays the witness window, and for
// finite sets checks the window-forcing condition behind `proved`.
VerifyReport verify_certificate(const GameSpec& spec, const PeriodCertificate& cert,
                                std::int64_t check_horizon);

enum class TailTag { EventuallyAllL, MixedPeriodic, HorizonExceeded };

struct TailClass {
  TailTag tag = TailTag::HorizonExceeded;
  // Outcome multiset of one minimal period, indexed by Outcome.
  std::array<std::int64_t, 4> period_counts{};
  std::optional<PeriodCertificate> certificate;
};

TailClass classify_tail(const GameSpec& spec, std::int64_t horizon = kDefaultDetectHorizon);

const char* tail_tag_name(TailTag tag);

nlohmann::json to_json(const PeriodCertificate& cert);

}  // namespace epsnim
