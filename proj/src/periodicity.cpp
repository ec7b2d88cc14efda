#include "epsnim/periodicity.hpp"

#include <algorithm>
#include <unordered_map>

namespace epsnim {

namespace {

// True when O(m + p) == O(m) for every computed m >= from.
bool shift_holds(std::span<const Outcome> v, std::int64_t from, std::int64_t p) {
  for (std::int64_t m = from; m + p < static_cast<std::int64_t>(v.size()); ++m) {
    if (v[static_cast<std::size_t>(m)] != v[static_cast<std::size_t>(m + p)]) return false;
  }
  return true;
}

std::vector<std::int64_t> divisors_ascending(std::int64_t p) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d * d <= p; ++d) {
    if (p % d == 0) {
      out.push_back(d);
      if (d != p / d) out.push_back(p / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PeriodCertificate minimized_certificate(std::span<const Outcome> v, std::int64_t a0,
                                        std::int64_t p0, std::int64_t window_len,
                                        bool proved) {
  std::int64_t p = p0;
  for (std::int64_t d : divisors_ascending(p0)) {
    if (d == p0) break;
    if (shift_holds(v, a0, d)) {
      p = d;
      break;
    }
  }
  std::int64_t a = a0;
  while (a > 0 && v[static_cast<std::size_t>(a - 1)] == v[static_cast<std::size_t>(a - 1 + p)]) --a;

  PeriodCertificate cert{a, p, proved, {}};
  std::int64_t end = std::min<std::int64_t>(a + p + window_len, static_cast<std::int64_t>(v.size()));
  cert.window = outcomes_to_string(v.subspan(static_cast<std::size_t>(a), static_cast<std::size_t>(end - a)));
  return cert;
}

DetectionResult detect_finite(const GameSpec& spec, std::int64_t horizon) {
  const std::int64_t w = spec.set().max();
  OutcomeSequence seq(spec);

  // The last w outcomes determine everything that follows, so the first
  // repeated window gives a recurrence that holds forever.
  const bool packable = w <= 32;
  const std::uint64_t mask = w == 32 ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * w)) - 1;
  std::unordered_map<std::uint64_t, std::int64_t> first_packed;
  std::unordered_map<std::string, std::int64_t> first_text;

  std::uint64_t key = 0;
  std::int64_t folded = 0;  // outcomes already folded into the rolling key
  std::int64_t target = std::min<std::int64_t>(horizon, std::max<std::int64_t>(4 * w + 64, spec.set().min() + 1));

  while (true) {
    seq.extend_to(target);
    auto v = seq.values();
    for (; folded < seq.size(); ++folded) {
      if (packable) key = (key << 2 | static_cast<std::uint64_t>(v[static_cast<std::size_t>(folded)])) & mask;
      const std::int64_t end = folded + 1;  // window covers [end - w, end)
      if (end < w) continue;
      std::int64_t x = -1;
      if (packable) {
        auto [it, fresh] = first_packed.try_emplace(key, end);
        if (!fresh) x = it->second;
      } else {
        std::string text = outcomes_to_string(
            v.subspan(static_cast<std::size_t>(end - w), static_cast<std::size_t>(w)));
        auto [it, fresh] = first_text.try_emplace(std::move(text), end);
        if (!fresh) x = it->second;
      }
      if (x >= 0) {
        auto cert = minimized_certificate(v, x - w, end - x, w, true);
        return {cert, seq.size()};
      }
    }
    if (target >= horizon) break;
    target = std::min<std::int64_t>(horizon, target * 2);
  }
  return {std::nullopt, seq.size()};
}

DetectionResult detect_infinite(const GameSpec& spec, std::int64_t horizon) {
  OutcomeSequence seq(spec);
  seq.extend_to(horizon);
  auto v = seq.values();
  const std::int64_t len = static_cast<std::int64_t>(v.size());

  for (std::int64_t p = 1; p <= horizon / 3; ++p) {
    // First mismatch from the top is the last overall, so A = m + 1.
    std::int64_t a = 0;
    for (std::int64_t m = len - p - 1; m >= 0; --m) {
      if (v[static_cast<std::size_t>(m)] != v[static_cast<std::size_t>(m + p)]) {
        a = m + 1;
        break;
      }
    }
    if (a + 2 * p <= len) {
      return {minimized_certificate(v, a, p, p, false), len};
    }
  }
  return {std::nullopt, len};
}

}  // namespace

DetectionResult detect_period(const GameSpec& spec, std::int64_t horizon) {
  if (horizon < spec.set().min()) throw std::invalid_argument("horizon must be >= min(S)");
  return spec.set().is_finite() ? detect_finite(spec, horizon) : detect_infinite(spec, horizon);
}

VerifyReport verify_certificate(const GameSpec& spec, const PeriodCertificate& cert,
                                std::int64_t check_horizon) {
  const std::int64_t a = cert.preperiod;
  const std::int64_t p = cert.period;
  if (a < 0 || p < 1) throw std::invalid_argument("certificate must have preperiod >= 0, period >= 1");
  if (check_horizon < a + 2 * p) {
    throw std::invalid_argument("check_horizon must be >= preperiod + 2*period");
  }
  if (cert.proved && !spec.set().is_finite()) {
    return {false, -1, "a proved certificate is impossible for an infinite set"};
  }

  std::int64_t needed = std::max(check_horizon, a + static_cast<std::int64_t>(cert.window.size()));
  OutcomeSequence seq = outcome_table(spec, needed);
  auto v = seq.values();

  for (std::int64_t m = a; m + p < check_horizon; ++m) {
    Outcome lhs = v[static_cast<std::size_t>(m)];
    Outcome rhs = v[static_cast<std::size_t>(m + p)];
    if (lhs != rhs) {
      return {false, m,
              "O(" + std::to_string(m) + ")=" + std::string(1, to_char(lhs)) + ", O(" +
                  std::to_string(m + p) + ")=" + std::string(1, to_char(rhs))};
    }
  }

  for (std::size_t i = 0; i < cert.window.size(); ++i) {
    if (to_char(v[static_cast<std::size_t>(a) + i]) != cert.window[i]) {
      return {false, a + static_cast<std::int64_t>(i), "witness window does not replay"};
    }
  }

  if (spec.set().is_finite()) {
    const std::int64_t w = spec.set().max();
    if (check_horizon < a + p + w) {
      return {false, -1, "window-forcing needs outcomes up to preperiod + period + max(S)"};
    }
    for (std::int64_t i = 0; i < w; ++i) {
      if (v[static_cast<std::size_t>(a + i)] != v[static_cast<std::size_t>(a + p + i)]) {
        return {false, a + i, "forcing windows disagree"};
      }
    }
  }
  return {true, -1, ""};
}

TailClass classify_tail(const GameSpec& spec, std::int64_t horizon) {
  DetectionResult det = detect_period(spec, horizon);
  TailClass tc;
  if (!det.found()) return tc;
  const PeriodCertificate& cert = *det.certificate;
  tc.certificate = cert;
  for (std::int64_t i = 0; i < cert.period; ++i) {
    tc.period_counts[static_cast<std::size_t>(*outcome_from_char(cert.window[static_cast<std::size_t>(i)]))]++;
  }
  tc.tag = cert.period == 1 && cert.window[0] == 'L' ? TailTag::EventuallyAllL
                                                     : TailTag::MixedPeriodic;
  return tc;
}

const char* tail_tag_name(TailTag tag) {
  switch (tag) {
    case TailTag::EventuallyAllL: return "eventually_all_l";
    case TailTag::MixedPeriodic: return "mixed_periodic";
    case TailTag::HorizonExceeded: return "horizon_exceeded";
  }
  return "?";
}

nlohmann::json to_json(const PeriodCertificate& cert) {
  return nlohmann::json{{"preperiod", cert.preperiod},
                        {"period", cert.period},
                        {"proved", cert.proved},
                        {"window", cert.window}};
}

}  // namespace epsnim
