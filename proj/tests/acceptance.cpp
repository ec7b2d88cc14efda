// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failing criteria. Each criterion pins its thresholds in code.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "epsnim/cgt.hpp"
#include "epsnim/laws.hpp"
#include "epsnim/periodicity.hpp"
#include "epsnim/survey.hpp"

using namespace epsnim;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Criterion {
  int number;
  std::string title;
  std::function<bool(std::string&)> run;
};

GameSpec lr(const char* text) { return GameSpec::lr(SubtractionSet::parse(text)); }

Outcome ex1_closed_form(std::int64_t n) {
  if (n == 1) return Outcome::R;
  switch (n % 5) {
    case 0: case 2: return Outcome::L;
    case 3: case 4: return Outcome::N;
    default: return Outcome::P;
  }
}

Outcome ex2_closed_form(std::int64_t n) {
  if (n == 1) return Outcome::R;
  if (n == 3 || n == 4 || n == 7) return Outcome::N;
  return Outcome::L;
}

Outcome infinite_example_closed_form(std::int64_t n) {
  if (n == 1) return Outcome::R;
  if (n <= 3) return Outcome::L;
  if (n <= 5) return Outcome::N;
  return n % 2 == 1 ? Outcome::L : Outcome::N;
}

std::vector<SubtractionSet> all_subsets(std::int64_t lo, std::int64_t hi) {
  std::vector<SubtractionSet> sets;
  const int bits = static_cast<int>(hi - lo + 1);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << bits); ++mask) {
    std::vector<std::int64_t> members;
    for (int b = 0; b < bits; ++b) {
      if (mask >> b & 1) members.push_back(lo + b);
    }
    sets.push_back(SubtractionSet::finite(std::move(members)));
  }
  return sets;
}

std::int64_t violation_total(const std::vector<LawReport>& reports) {
  std::int64_t total = 0;
  for (const auto& r : reports) total += static_cast<std::int64_t>(r.violations.size());
  return total;
}

bool criterion_golden_tables(std::string& detail) {
  auto start = Clock::now();
  std::string t1 = outcome_table(lr("{2,3}"), 15).to_string();
  std::string t2 = outcome_table(lr("{2,3,6}"), 15).to_string();
  double elapsed = ms_since(start);
  bool ok = t1 == "LRLNNLPLNNLPLNN" && t2 == "LRLNNLLNLLLLLLL" && elapsed < 1.0;
  detail = "computed in " + std::to_string(elapsed) + " ms (budget 1 ms)";
  return ok;
}

bool criterion_closed_forms(std::string& detail) {
  auto start = Clock::now();
  bool ok = true;
  auto seq1 = outcome_table(lr("{2,3}"), 10001);
  auto seq2 = outcome_table(lr("{2,3,6}"), 10001);
  for (std::int64_t n = 0; n <= 10000 && ok; ++n) {
    ok = seq1.at(n) == ex1_closed_form(n) && seq2.at(n) == ex2_closed_form(n);
  }
  auto seq3 = outcome_table(GameSpec::lr(SubtractionSet::parse("{4} U {3..step2}")), 5001);
  for (std::int64_t n = 0; n <= 5000 && ok; ++n) ok = seq3.at(n) == infinite_example_closed_form(n);
  double elapsed = ms_since(start);
  detail = std::to_string(elapsed) + " ms (budget 1000 ms)";
  return ok && elapsed < 1000.0;
}

bool criterion_oracle_equivalence(std::string& detail) {
  auto start = Clock::now();
  auto report = oracle_crosscheck(8, 60);
  double elapsed = ms_since(start);
  detail = std::to_string(report.sets_checked) + " sets, " + std::to_string(report.positions_checked) +
           " positions, " + std::to_string(report.mismatches.size()) + " mismatches, " +
           std::to_string(elapsed) + " ms (budget 30 s)";
  return report.sets_checked == 127 && report.mismatches.empty() && elapsed < 30'000.0;
}

struct DetectedSet {
  SubtractionSet set;
  PeriodCertificate cert;
  std::int64_t horizon_used;
};

std::vector<DetectedSet>& detected_universe() {
  static std::vector<DetectedSet> cache;
  if (cache.empty()) {
    for (auto& s : all_subsets(2, 12)) {
      auto det = detect_period(GameSpec::lr(s));
      if (!det.found()) throw std::runtime_error("detection failed for " + s.to_string());
      cache.push_back({s, *det.certificate, det.horizon_used});
    }
  }
  return cache;
}

bool criterion_law_suite(std::string& detail) {
  auto start = Clock::now();
  std::int64_t violations = 0;
  std::size_t sets = 0;
  for (auto& d : detected_universe()) {
    std::int64_t horizon = d.cert.preperiod + 2 * d.cert.period;
    violations += violation_total(check_structure(GameSpec::lr(d.set), horizon));
    ++sets;
  }

  auto spec23 = lr("{2,3}");
  auto seq23 = outcome_table(spec23, 11);
  auto probes = mirrored_adjacency_probe(spec23, seq23.values());
  bool mirror_found = false;
  for (const auto& r : probes) {
    for (const auto& v : r.violations) mirror_found = mirror_found || v.position <= 10;
  }

  auto all_ints = GameSpec::lr(SubtractionSet::parse("{2..step1}"));
  auto inf_seq = outcome_table(all_ints, 1000);
  auto inf_reports = check_structure(all_ints, inf_seq.values());
  bool skip_ok = false;
  bool inf_clean = violation_total(inf_reports) == 0;
  for (const auto& r : inf_reports) {
    if (r.law_id == "n-run-length") skip_ok = r.skipped;
  }

  double elapsed = ms_since(start);
  detail = std::to_string(sets) + " sets, " + std::to_string(violations) + " violations, mirror probe " +
           (mirror_found ? "fires" : "SILENT") + ", infinite-set bound " + (skip_ok ? "skipped" : "NOT SKIPPED") +
           ", " + std::to_string(elapsed) + " ms (budget 2 min)";
  return sets == 2047 && violations == 0 && mirror_found && skip_ok && inf_clean && elapsed < 120'000.0;
}

bool criterion_periodicity(std::string& detail) {
  auto start = Clock::now();
  std::size_t verified = 0;
  for (auto& d : detected_universe()) {
    auto spec = GameSpec::lr(d.set);
    if (!d.cert.proved) {
      detail = "unproved certificate for " + d.set.to_string();
      return false;
    }
    if (!verify_certificate(spec, d.cert, 4 * d.horizon_used).pass) {
      detail = "verification failed for " + d.set.to_string();
      return false;
    }
    for (std::int64_t div = 1; div < d.cert.period; ++div) {
      if (d.cert.period % div != 0) continue;
      if (verify_certificate(spec, {d.cert.preperiod, div, true, ""}, 4 * d.horizon_used).pass) {
        detail = "period not minimal for " + d.set.to_string();
        return false;
      }
    }
    if (d.cert.preperiod > 0 &&
        verify_certificate(spec, {d.cert.preperiod - 1, d.cert.period, true, ""}, 4 * d.horizon_used).pass) {
      detail = "preperiod not minimal for " + d.set.to_string();
      return false;
    }
    ++verified;
  }

  auto expect = [&](const char* text, std::int64_t a, std::int64_t p) {
    auto det = detect_period(lr(text));
    return det.found() && det.certificate->preperiod == a && det.certificate->period == p;
  };
  bool anchors = expect("{2,3}", 2, 5) && expect("{2,3,6}", 8, 1) && expect("{2,4}", 0, 2);
  double elapsed = ms_since(start);
  detail = std::to_string(verified) + " certificates verified at 4x detection horizon, anchors " +
           (anchors ? "match" : "MISMATCH") + ", " + std::to_string(elapsed) + " ms";
  return verified == 2047 && anchors;
}

bool criterion_psym_suite(std::string& detail) {
  auto start = Clock::now();
  std::size_t checked = 0;
  std::int64_t violations = 0;
  for (std::int64_t p = 2; p <= 14; ++p) {
    // orbits of s -> p-s inside {2, ..., p-2}
    std::vector<std::vector<std::int64_t>> orbits;
    for (std::int64_t s = 2; s <= p - s; ++s) {
      if (p - s > p - 2) continue;
      if (s == p - s) {
        orbits.push_back({s});
      } else {
        orbits.push_back({s, p - s});
      }
    }
    if (orbits.empty()) continue;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << orbits.size()); ++mask) {
      std::vector<std::int64_t> members;
      for (std::size_t b = 0; b < orbits.size(); ++b) {
        if (mask >> b & 1) members.insert(members.end(), orbits[b].begin(), orbits[b].end());
      }
      auto spec = GameSpec::lr(SubtractionSet::finite(members));
      violations += violation_total(check_psym(spec, p, 500));
      ++checked;
    }
  }

  auto ln = GameSpec(SubtractionSet::parse("{2,3}"), TerminalRule::parse("LN"));
  auto ln_seq = outcome_table(ln, 1000);
  bool ln_ok = true;
  for (std::int64_t n = 2; n < 1000; ++n) ln_ok = ln_ok && ln_seq.at(n) == Outcome::L;

  auto nl = GameSpec(SubtractionSet::parse("{2,3}"), TerminalRule::parse("NL"));
  auto nl_seq = outcome_table(nl, 1000);
  bool nl_ok = true;
  const char* pattern = "NLPLN";
  for (std::int64_t n = 0; n < 1000; ++n) nl_ok = nl_ok && to_char(nl_seq.at(n)) == pattern[n % 5];

  double elapsed = ms_since(start);
  detail = std::to_string(checked) + " p-symmetric sets, " + std::to_string(violations) +
           " violations, terminal examples " + (ln_ok && nl_ok ? "reproduce" : "DIVERGE") + ", " +
           std::to_string(elapsed) + " ms";
  return checked > 0 && violations == 0 && ln_ok && nl_ok;
}

bool criterion_normal_transfer(std::string& detail) {
  auto start = Clock::now();
  bool ok = true;
  for (const char* text : {"{2,3}", "{2,3,6}"}) {
    auto report = check_normal_transfer(SubtractionSet::parse(text), 10000);
    ok = ok && report.hypothesis_holds && report.conclusions_pass();
  }

  auto s = SubtractionSet::parse("{2,3}");
  auto lr_seq = outcome_table(GameSpec::lr(s), 10000);
  auto normal = normal_play_outcomes(s, 10000);
  normal[6] = Outcome::N;  // seeded corruption: true value is P
  auto mutated = check_normal_transfer(lr_seq.values(), normal);
  bool mutation_detected = mutated.hypothesis_holds && !mutated.conclusions_pass();

  double elapsed = ms_since(start);
  detail = std::string("conclusions ") + (ok ? "verified" : "FAILED") + ", seeded mutation " +
           (mutation_detected ? "detected" : "MISSED") + ", " + std::to_string(elapsed) + " ms";
  return ok && mutation_detected;
}

bool criterion_cgt_kernel(std::string& detail) {
  auto start = Clock::now();
  ValueSequence vs23(lr("{2,3}"));
  bool terminals = vs23.value(0) == vs23.arena().one() && vs23.value(1) == vs23.arena().neg_one();

  bool coherent = true;
  for (const char* text : {"{2,3}", "{2,3,6}"}) {
    auto spec = lr(text);
    ValueSequence vs(spec);
    auto seq = outcome_table(spec, 121);
    for (std::int64_t n = 0; n <= 120 && coherent; ++n) coherent = vs.value_outcome(n) == seq.at(n);
  }

  auto period5 = vs23.check_period(5, 50);
  bool period_ok = period5.pass;

  // algebra on sampled values of the nonperiodic set
  ValueSequence vs236(lr("{2,3,6}"));
  vs236.extend_to(121);
  GameArena& arena = vs236.arena();
  std::mt19937 rng(20240818);
  bool algebra = true;
  for (int i = 0; i < 100 && algebra; ++i) {
    GameId g = vs236.value(static_cast<std::int64_t>(rng() % 121));
    algebra = arena.sum(g, arena.negate(g)) == arena.zero();
    std::vector<GameId> left(arena.left_options(g).begin(), arena.left_options(g).end());
    std::vector<GameId> right(arena.right_options(g).begin(), arena.right_options(g).end());
    algebra = algebra && arena.make(left, right) == g;
  }

  double elapsed = ms_since(start);
  detail = std::string("terminals ") + (terminals ? "ok" : "WRONG") + ", outcome coherence to 120 " +
           (coherent ? "ok" : "BROKEN") + ", value period 5 " + (period_ok ? "ok" : "MISSING") +
           ", algebra " + (algebra ? "ok" : "BROKEN") + ", " + std::to_string(elapsed) +
           " ms (budget 2 min)";
  return terminals && coherent && period_ok && algebra && elapsed < 120'000.0;
}

bool criterion_difference_probes(std::string& detail) {
  auto start = Clock::now();
  ValueSequence vs(lr("{2,3,6}"));
  const DiffTerm shift9[] = {{1, 9}, {-1, 0}};
  bool first_probe = true;
  for (std::int64_t n = 0; n <= 40; ++n) {
    bool expect_p = (n % 9 == 0 || n % 9 == 2 || n % 9 == 4 || n % 9 == 5) && n != 4;
    first_probe = first_probe && ((vs.difference_outcome(shift9, n) == Outcome::P) == expect_p);
  }
  const DiffTerm second_diff[] = {{1, 18}, {-2, 9}, {1, 0}};
  bool second_probe = true;
  for (std::int64_t k = 0; k <= 5; ++k) {
    second_probe = second_probe && vs.difference_outcome(second_diff, 10 + 9 * k) != Outcome::P;
  }
  double elapsed = ms_since(start);
  detail = std::string("shift-9 probe ") + (first_probe ? "matches" : "DIVERGES") +
           ", second difference " + (second_probe ? "never P" : "HITS P") + ", " +
           std::to_string(elapsed) + " ms";
  return first_probe && second_probe;
}

bool criterion_survey(std::string& detail) {
  auto start = Clock::now();
  fs::path base = fs::temp_directory_path() / "epsnim_acceptance_survey";
  fs::remove_all(base);

  SurveyConfig cfg;
  cfg.min_element = 2;
  cfg.max_bound = 14;
  cfg.horizon = 100'000;
  cfg.chunk_size = 128;

  cfg.worker_count = 1;
  cfg.out_dir = base / "w1";
  auto r1 = run_survey(cfg);
  cfg.worker_count = 8;
  cfg.out_dir = base / "w8";
  auto r8 = run_survey(cfg);

  auto sorted_rows = [](const fs::path& p) {
    std::ifstream in(p / "rows.csv");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    std::sort(lines.begin(), lines.end());
    return lines;
  };
  bool deterministic = sorted_rows(base / "w1") == sorted_rows(base / "w8");
  bool counts = r1.total_sets == 4096 && r1.horizon_exceeded_count == 0 &&
                r1.all_l_count == r8.all_l_count && r1.complete && r8.complete;

  std::mt19937 rng(20240819);
  bool spot = true;
  for (int i = 0; i < 50 && spot; ++i) {
    std::uint64_t mask = rng() % survey_set_count(2, 14);
    auto s = set_from_mask(2, 14, mask);
    auto c = classify_set(s, cfg.horizon);
    spot = c.tail.certificate.has_value();
    if (!spot) break;
    auto spec = GameSpec::lr(s);
    auto table = outcome_table(spec, 61);
    for (std::int64_t n = 0; n <= 60 && spot; ++n) spot = oracle_outcome(spec, n) == table.at(n);
    std::int64_t ch = std::max<std::int64_t>(4 * (c.tail.certificate->preperiod + 2 * c.tail.certificate->period),
                                             c.tail.certificate->preperiod + 2 * c.tail.certificate->period +
                                                 2 * s.max());
    spot = spot && verify_certificate(spec, *c.tail.certificate, ch).pass;
  }

  fs::remove_all(base);
  double elapsed = ms_since(start);
  detail = std::to_string(r1.total_sets) + " sets, all_L " + std::to_string(r1.all_l_count) +
           ", exceeded " + std::to_string(r1.horizon_exceeded_count) + ", determinism " +
           (deterministic ? "ok" : "BROKEN") + ", spot-check " + (spot ? "ok" : "FAILED") + ", " +
           std::to_string(elapsed) + " ms (budget 5 min)";
  return counts && deterministic && spot && elapsed < 300'000.0;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "golden outcome tables for {2,3} and {2,3,6}", criterion_golden_tables},
      {2, "closed forms to 10000 (finite) and 5000 (infinite)", criterion_closed_forms},
      {3, "recurrence/oracle equivalence on 127 sets to n=60", criterion_oracle_equivalence},
      {4, "structural law suite over 2047 sets", criterion_law_suite},
      {5, "proved minimal certificates verified at 4x horizon", criterion_periodicity},
      {6, "p-symmetric shift laws and terminal-rule examples", criterion_psym_suite},
      {7, "normal-play transfer with seeded-mutation guard", criterion_normal_transfer},
      {8, "canonical value kernel: terminals, coherence, period, algebra", criterion_cgt_kernel},
      {9, "value difference probes for {2,3,6}", criterion_difference_probes},
      {10, "desk-scale survey: 4096 sets, determinism, spot-check", criterion_survey},
  };

  int failures = 0;
  for (auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("[%s] criterion %2d: %s — %s\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str(),
                detail.c_str());
    std::fflush(stdout);
  }
  if (failures == 0) {
    std::printf("all %zu criteria pass\n", criteria.size());
  } else {
    std::printf("%d criteria FAILED\n", failures);
  }
  return failures;
}
