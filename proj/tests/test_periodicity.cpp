#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "epsnim/periodicity.hpp"

using namespace epsnim;

namespace {

GameSpec lr(const char* set_text) { return GameSpec::lr(SubtractionSet::parse(set_text)); }

// Brute-force minimal (period, preperiod) over a computed prefix,
// independent of the detector. Only candidates whose shift is witnessed up
// to `evidence` positions past the preperiod are considered.
std::pair<std::int64_t, std::int64_t> brute_force_min_period(std::span<const Outcome> v,
                                                             std::int64_t evidence) {
  const std::int64_t len = static_cast<std::int64_t>(v.size());
  for (std::int64_t p = 1; p < len; ++p) {
    for (std::int64_t a = 0; a + p + evidence <= len; ++a) {
      bool ok = true;
      for (std::int64_t m = a; m + p < len; ++m) {
        if (v[static_cast<std::size_t>(m)] != v[static_cast<std::size_t>(m + p)]) {
          ok = false;
          break;
        }
      }
      if (ok) return {p, a};
    }
  }
  return {-1, -1};
}

}  // namespace

TEST_CASE("detected certificates for the worked examples") {
  auto det = detect_period(lr("{2,3}"));
  REQUIRE(det.found());
  CHECK(det.certificate->preperiod == 2);
  CHECK(det.certificate->period == 5);
  CHECK(det.certificate->proved);
  CHECK(det.certificate->window == "LNNLPLNN");  // [2, 2+5+3)

  det = detect_period(lr("{2,3,6}"));
  REQUIRE(det.found());
  CHECK(det.certificate->preperiod == 8);
  CHECK(det.certificate->period == 1);

  det = detect_period(lr("{2,4}"));
  REQUIRE(det.found());
  CHECK(det.certificate->preperiod == 0);
  CHECK(det.certificate->period == 2);
}

TEST_CASE("detection agrees with a brute-force minimizer") {
  const char* sets[] = {"{2,3}", "{2,3,6}", "{2,4}", "{3,5,7}", "{2,5}", "{4,7,9}", "{2,3,4,5}"};
  for (const char* text : sets) {
    auto spec = lr(text);
    auto det = detect_period(spec);
    REQUIRE(det.found());
    const auto& cert = *det.certificate;
    const std::int64_t w = spec.set().max();
    auto seq = outcome_table(spec, cert.preperiod + 2 * cert.period + 4 * w + 64);
    auto [p, a] = brute_force_min_period(seq.values(), w + cert.period);
    CHECK(p == cert.period);
    CHECK(a == cert.preperiod);
  }
}

TEST_CASE("verification replays certificates") {
  auto spec = lr("{2,3}");
  auto good = detect_period(spec);
  REQUIRE(good.found());
  CHECK(verify_certificate(spec, *good.certificate, 1000).pass);

  PeriodCertificate wrong{2, 4, true, ""};
  auto report = verify_certificate(spec, wrong, 1000);
  CHECK(!report.pass);
  CHECK(report.first_violation == 2);
  CHECK(report.detail == "O(2)=L, O(6)=P");

  PeriodCertificate ok236{8, 1, true, ""};
  CHECK(verify_certificate(lr("{2,3,6}"), ok236, 1000).pass);

  CHECK_THROWS_AS(verify_certificate(spec, PeriodCertificate{2, 5, true, ""}, 1),
                  std::invalid_argument);
  CHECK(!verify_certificate(spec, PeriodCertificate{2, 5, true, "RRRR"}, 1000).pass);
}

TEST_CASE("proved certificates on infinite sets fail verification") {
  auto spec = GameSpec::lr(SubtractionSet::parse("{4} U {3..step2}"));
  auto report = verify_certificate(spec, PeriodCertificate{6, 2, true, ""}, 200);
  CHECK(!report.pass);
  PeriodCertificate observed{6, 2, false, ""};
  CHECK(verify_certificate(spec, observed, 200).pass);
}

TEST_CASE("soundness and minimality on every small set") {
  for (std::uint64_t mask = 1; mask < (1u << 7); ++mask) {
    std::vector<std::int64_t> members;
    for (int b = 0; b < 7; ++b) {
      if (mask >> b & 1) members.push_back(2 + b);
    }
    auto spec = GameSpec::lr(SubtractionSet::finite(members));
    auto det = detect_period(spec);
    REQUIRE(det.found());
    const auto& cert = *det.certificate;
    CHECK(cert.proved);
    CHECK(verify_certificate(spec, cert, 4 * det.horizon_used).pass);
    // proper divisors of the period fail, as does shaving the preperiod
    for (std::int64_t d = 1; d < cert.period; ++d) {
      if (cert.period % d != 0) continue;
      PeriodCertificate smaller{cert.preperiod, d, true, ""};
      CHECK(!verify_certificate(spec, smaller, 4 * det.horizon_used).pass);
    }
    if (cert.preperiod > 0) {
      PeriodCertificate earlier{cert.preperiod - 1, cert.period, true, ""};
      CHECK(!verify_certificate(spec, earlier, 4 * det.horizon_used).pass);
    }
  }
}

TEST_CASE("horizon exceeded is a result, not an error") {
  auto det = detect_period(lr("{2,3}"), 6);
  CHECK(!det.found());
  CHECK(det.horizon_used == 6);
}

TEST_CASE("tail classification") {
  auto all_l = classify_tail(lr("{2,3,6}"));
  CHECK(all_l.tag == TailTag::EventuallyAllL);

  auto mixed = classify_tail(lr("{2,3}"));
  CHECK(mixed.tag == TailTag::MixedPeriodic);
  CHECK(mixed.period_counts[static_cast<std::size_t>(Outcome::L)] == 2);
  CHECK(mixed.period_counts[static_cast<std::size_t>(Outcome::N)] == 2);
  CHECK(mixed.period_counts[static_cast<std::size_t>(Outcome::P)] == 1);
  CHECK(mixed.period_counts[static_cast<std::size_t>(Outcome::R)] == 0);

  auto infinite = classify_tail(GameSpec::lr(SubtractionSet::parse("{4} U {3..step2}")), 5000);
  CHECK(infinite.tag == TailTag::MixedPeriodic);
  REQUIRE(infinite.certificate.has_value());
  CHECK(!infinite.certificate->proved);
  CHECK(infinite.certificate->preperiod == 6);
  CHECK(infinite.certificate->period == 2);
  CHECK(infinite.period_counts[static_cast<std::size_t>(Outcome::L)] == 1);
  CHECK(infinite.period_counts[static_cast<std::size_t>(Outcome::N)] == 1);

  auto exceeded = classify_tail(lr("{2,3}"), 6);
  CHECK(exceeded.tag == TailTag::HorizonExceeded);
}

TEST_CASE("certificate json uses the documented keys") {
  auto det = detect_period(lr("{2,4}"));
  auto j = to_json(*det.certificate);
  CHECK(j["preperiod"] == 0);
  CHECK(j["period"] == 2);
  CHECK(j["proved"] == true);
  CHECK(j["window"] == "LRLRLR");
}

TEST_CASE("pair restriction for two-outcome tails") {
  // Finite sets with a minimal period of exactly two outcome classes under
  // the LR rule only ever show {L,R}; the observed infinite example shows
  // {L,N}.
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::int64_t> members;
    for (int b = 0; b < 9; ++b) {
      if (rng() % 2) members.push_back(2 + b);
    }
    if (members.empty()) members.push_back(2);
    auto tc = classify_tail(GameSpec::lr(SubtractionSet::finite(members)));
    REQUIRE(tc.certificate.has_value());
    int distinct = 0;
    for (auto c : tc.period_counts) distinct += c > 0;
    if (distinct == 2) {
      CHECK(tc.period_counts[static_cast<std::size_t>(Outcome::L)] > 0);
      CHECK(tc.period_counts[static_cast<std::size_t>(Outcome::R)] > 0);
    }
  }
}
