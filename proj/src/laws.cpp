#include "epsnim/laws.hpp"

#include <algorithm>

namespace epsnim {

namespace {

std::string outcome_str(Outcome o) { return std::string(1, to_char(o)); }

void check_adjacent(LawReport& report, std::span<const Outcome> v, bool (*trigger)(Outcome),
                    bool (*allowed)(Outcome), const std::string& constraint) {
  const std::int64_t len = static_cast<std::int64_t>(v.size());
  for (std::int64_t n = 0; n < len; ++n) {
    if (!trigger(v[static_cast<std::size_t>(n)])) continue;
    for (std::int64_t nb : {n - 1, n + 1}) {
      if (nb < 0 || nb >= len) continue;
      if (!allowed(v[static_cast<std::size_t>(nb)])) {
        report.violations.push_back({n, constraint,
                                     "O(" + std::to_string(n) + ")=" + outcome_str(v[static_cast<std::size_t>(n)]) +
                                         ", O(" + std::to_string(nb) + ")=" + outcome_str(v[static_cast<std::size_t>(nb)])});
      }
    }
  }
}

struct Run {
  std::int64_t begin = 0;
  std::int64_t end = 0;  // one past the last member
  bool truncated = false;  // reaches the end of the computed range
};

std::vector<Run> maximal_runs(std::span<const Outcome> v, Outcome target) {
  std::vector<Run> runs;
  const std::int64_t len = static_cast<std::int64_t>(v.size());
  std::int64_t n = 0;
  while (n < len) {
    if (v[static_cast<std::size_t>(n)] != target) {
      ++n;
      continue;
    }
    std::int64_t begin = n;
    while (n < len && v[static_cast<std::size_t>(n)] == target) ++n;
    runs.push_back({begin, n, n == len});
  }
  return runs;
}

void check_run_length(LawReport& report, std::span<const Outcome> v, Outcome target,
                      std::int64_t bound, const std::string& constraint) {
  for (const Run& run : maximal_runs(v, target)) {
    std::int64_t length = run.end - run.begin;
    // A truncated run may continue, but exceeding the bound is already fatal.
    if (length > bound) {
      report.violations.push_back({run.begin, constraint,
                                   "run of " + outcome_str(target) + " at [" + std::to_string(run.begin) +
                                       ", " + std::to_string(run.end) + ") has length " +
                                       std::to_string(length)});
    }
  }
}

void check_run_flanks(LawReport& report, std::span<const Outcome> v, Outcome target,
                      bool check_right, const std::string& constraint) {
  for (const Run& run : maximal_runs(v, target)) {
    if (run.begin > 0 && v[static_cast<std::size_t>(run.begin - 1)] != Outcome::L) {
      report.violations.push_back({run.begin, constraint,
                                   "left flank O(" + std::to_string(run.begin - 1) + ")=" +
                                       outcome_str(v[static_cast<std::size_t>(run.begin - 1)])});
    }
    if (check_right && !run.truncated && v[static_cast<std::size_t>(run.end)] != Outcome::L) {
      report.violations.push_back({run.begin, constraint,
                                   "right flank O(" + std::to_string(run.end) + ")=" +
                                       outcome_str(v[static_cast<std::size_t>(run.end)])});
    }
  }
}

}  // namespace

std::vector<LawReport> check_structure(const GameSpec& spec, std::span<const Outcome> values) {
  const std::int64_t len = static_cast<std::int64_t>(values.size());
  const bool finite = spec.set().is_finite();
  std::vector<LawReport> reports;
  auto fresh = [&](std::string id) {
    LawReport r;
    r.law_id = std::move(id);
    r.horizon = len;
    return r;
  };

  {
    LawReport r = fresh("adj-left-first");
    check_adjacent(r, values,
                   [](Outcome o) { return o == Outcome::R || o == Outcome::N; },
                   [](Outcome o) { return o == Outcome::L || o == Outcome::N; },
                   "O(n) in {R,N} requires O(n±1) in {L,N}");
    reports.push_back(std::move(r));
  }
  {
    LawReport r = fresh("adj-left-second");
    check_adjacent(r, values,
                   [](Outcome o) { return o == Outcome::R || o == Outcome::P; },
                   [](Outcome o) { return o == Outcome::L || o == Outcome::P; },
                   "O(n) in {R,P} requires O(n±1) in {L,P}");
    reports.push_back(std::move(r));
  }
  {
    LawReport r = fresh("r-flanked-by-l");
    check_adjacent(r, values,
                   [](Outcome o) { return o == Outcome::R; },
                   [](Outcome o) { return o == Outcome::L; },
                   "O(n)=R requires O(n±1)=L");
    reports.push_back(std::move(r));
  }
  {
    LawReport r = fresh("p-adjacent");
    check_adjacent(r, values,
                   [](Outcome o) { return o == Outcome::P; },
                   [](Outcome o) { return o == Outcome::L || o == Outcome::P; },
                   "O(n)=P requires O(n±1) in {L,P}");
    reports.push_back(std::move(r));
  }
  {
    LawReport r = fresh("n-adjacent");
    check_adjacent(r, values,
                   [](Outcome o) { return o == Outcome::N; },
                   [](Outcome o) { return o == Outcome::L || o == Outcome::N; },
                   "O(n)=N requires O(n±1) in {L,N}");
    reports.push_back(std::move(r));
  }
  {
    LawReport r = fresh("p-run-length");
    check_run_length(r, values, Outcome::P, spec.set().min() - 1,
                     "maximal P-run length <= min(S)-1");
    reports.push_back(std::move(r));
  }
  {
    LawReport r = fresh("p-run-flanks");
    check_run_flanks(r, values, Outcome::P, true, "P-runs flanked by L");
    reports.push_back(std::move(r));
  }
  {
    LawReport r = fresh("n-run-length");
    if (finite) {
      check_run_length(r, values, Outcome::N, spec.set().max() - 1,
                       "maximal N-run length <= max(S)-1");
    } else {
      r.skipped = true;
      r.note = "run-length bound requires a finite set; N-runs may last forever";
    }
    reports.push_back(std::move(r));
  }
  {
    LawReport r = fresh("n-run-flanks");
    // Right flank applies only to runs that end within the computed range.
    check_run_flanks(r, values, Outcome::N, true, "N-runs have L on the left, and on the right when they end");
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<LawReport> check_structure(const GameSpec& spec, std::int64_t horizon) {
  OutcomeSequence seq = outcome_table(spec, horizon + 1);
  return check_structure(spec, seq.values());
}

std::vector<LawReport> mirrored_adjacency_probe(const GameSpec& spec,
                                                std::span<const Outcome> values) {
  std::vector<LawReport> reports;
  {
    LawReport r;
    r.law_id = "mirror-adj-right-first";
    r.horizon = static_cast<std::int64_t>(values.size());
    check_adjacent(r, values,
                   [](Outcome o) { return o == Outcome::L || o == Outcome::N; },
                   [](Outcome o) { return o == Outcome::R || o == Outcome::N; },
                   "O(n) in {L,N} requires O(n±1) in {R,N}");
    reports.push_back(std::move(r));
  }
  {
    LawReport r;
    r.law_id = "mirror-adj-right-second";
    r.horizon = static_cast<std::int64_t>(values.size());
    check_adjacent(r, values,
                   [](Outcome o) { return o == Outcome::L || o == Outcome::P; },
                   [](Outcome o) { return o == Outcome::R || o == Outcome::P; },
                   "O(n) in {L,P} requires O(n±1) in {R,P}");
    reports.push_back(std::move(r));
  }
  (void)spec;
  return reports;
}

bool is_p_symmetric(const SubtractionSet& s, std::int64_t p) {
  if (!s.is_finite()) return false;
  for (std::int64_t v : s.members_up_to(s.max())) {
    if (!s.contains(p - v)) return false;
  }
  return true;
}

std::vector<LawReport> check_psym(const GameSpec& spec, std::int64_t p,
                                  std::span<const Outcome> values) {
  if (!spec.set().is_finite() || !is_p_symmetric(spec.set(), p)) {
    throw std::invalid_argument("set is not " + std::to_string(p) + "-symmetric");
  }
  const std::int64_t len = static_cast<std::int64_t>(values.size());
  std::vector<LawReport> reports;
  auto fresh = [&](std::string id) {
    LawReport r;
    r.law_id = std::move(id);
    r.horizon = len;
    return r;
  };

  struct ShiftLaw {
    const char* id;
    Outcome from;
    bool (*allowed)(Outcome);
    const char* constraint;
  };
  const ShiftLaw shift_laws[] = {
      {"shift-preserves-left", Outcome::L,
       [](Outcome o) { return o == Outcome::L || o == Outcome::P; },
       "O(m)=L requires O(m+p) in {L,P}"},
      {"shift-preserves-right", Outcome::R,
       [](Outcome o) { return o == Outcome::R || o == Outcome::P; },
       "O(m)=R requires O(m+p) in {R,P}"},
      {"shift-preserves-previous", Outcome::P,
       [](Outcome o) { return o == Outcome::P; },
       "O(m)=P requires O(m+p)=P"},
  };
  for (const ShiftLaw& law : shift_laws) {
    LawReport r = fresh(law.id);
    for (std::int64_t m = 0; m + p < len; ++m) {
      if (values[static_cast<std::size_t>(m)] != law.from) continue;
      Outcome next = values[static_cast<std::size_t>(m + p)];
      if (!law.allowed(next)) {
        r.violations.push_back({m, law.constraint,
                                "O(" + std::to_string(m) + ")=" + outcome_str(law.from) + ", O(" +
                                    std::to_string(m + p) + ")=" + outcome_str(next)});
      }
    }
    reports.push_back(std::move(r));
  }
  {
    LawReport r = fresh("shift-reflects-next");
    for (std::int64_t m = 0; m + p < len; ++m) {
      if (values[static_cast<std::size_t>(m + p)] == Outcome::N &&
          values[static_cast<std::size_t>(m)] != Outcome::N) {
        r.violations.push_back({m, "O(m+p)=N requires O(m)=N",
                                "O(" + std::to_string(m) + ")=" + outcome_str(values[static_cast<std::size_t>(m)]) +
                                    ", O(" + std::to_string(m + p) + ")=N"});
      }
    }
    reports.push_back(std::move(r));
  }
  {
    LawReport r = fresh("columns-stabilize");
    for (std::int64_t i = 0; i < p; ++i) {
      for (std::int64_t m = i; m + p < len; m += p) {
        Outcome cur = values[static_cast<std::size_t>(m)];
        Outcome next = values[static_cast<std::size_t>(m + p)];
        bool ok = cur == Outcome::N || next == cur ||
                  ((cur == Outcome::L || cur == Outcome::R) && next == Outcome::P);
        if (!ok) {
          r.violations.push_back({m + p, "columns may only move N->{L,R,P}, L->P, R->P",
                                  "O(" + std::to_string(m) + ")=" + outcome_str(cur) + ", O(" +
                                      std::to_string(m + p) + ")=" + outcome_str(next)});
        }
      }
    }
    reports.push_back(std::move(r));
  }
  {
    LawReport r = fresh("offset-one-right-or-previous");
    if (spec.terminal().is_lr()) {
      for (std::int64_t m = 1; m < len; m += p) {
        Outcome o = values[static_cast<std::size_t>(m)];
        if (o != Outcome::R && o != Outcome::P) {
          r.violations.push_back({m, "O(1+kp) in {R,P}", "O(" + std::to_string(m) + ")=" + outcome_str(o)});
        }
      }
    } else {
      r.skipped = true;
      r.note = "applies to the LR terminal rule only";
    }
    reports.push_back(std::move(r));
  }
  {
    LawReport r = fresh("not-purely-one-periodic");
    const TerminalRule& t = spec.terminal();
    bool applicable = t.contains(Outcome::P) || (t.contains(Outcome::L) && t.contains(Outcome::R));
    if (!applicable) {
      r.skipped = true;
      r.note = "needs a P terminal, or both L and R terminals";
    } else {
      bool constant = true;
      for (std::int64_t m = 1; m < len; ++m) {
        if (values[static_cast<std::size_t>(m)] != values[0]) {
          constant = false;
          break;
        }
      }
      if (constant) {
        r.violations.push_back({0, "sequence must not be constant",
                                "all " + std::to_string(len) + " computed outcomes equal " +
                                    outcome_str(values[0])});
      }
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<LawReport> check_psym(const GameSpec& spec, std::int64_t p, std::int64_t horizon) {
  OutcomeSequence seq = outcome_table(spec, horizon);
  return check_psym(spec, p, seq.values());
}

std::vector<Outcome> normal_play_outcomes(const SubtractionSet& s, std::int64_t horizon) {
  if (!s.is_finite()) throw std::invalid_argument("normal-play table requires a finite set");
  std::vector<Outcome> out;
  out.reserve(static_cast<std::size_t>(horizon));
  auto members = s.members_up_to(s.max());
  for (std::int64_t n = 0; n < horizon; ++n) {
    bool win = false;
    for (std::int64_t m : members) {
      if (m > n) break;
      if (out[static_cast<std::size_t>(n - m)] == Outcome::P) {
        win = true;
        break;
      }
    }
    out.push_back(win ? Outcome::N : Outcome::P);
  }
  return out;
}

NormalTransferReport check_normal_transfer(std::span<const Outcome> lr_values,
                          std::span<const Outcome> normal_values) {
  const std::int64_t len = static_cast<std::int64_t>(std::min(lr_values.size(), normal_values.size()));
  NormalTransferReport report;

  report.hypothesis_holds = true;
  for (std::int64_t n = 0; n < len; ++n) {
    if (lr_values[static_cast<std::size_t>(n)] == Outcome::R &&
        normal_values[static_cast<std::size_t>(n)] != Outcome::P) {
      report.hypothesis_holds = false;
      report.hypothesis_counterexample = n;
      break;
    }
  }

  LawReport p_law;
  p_law.law_id = "p-transfers-to-normal";
  p_law.horizon = len;
  LawReport n_law;
  n_law.law_id = "n-transfers-to-normal";
  n_law.horizon = len;

  if (!report.hypothesis_holds) {
    p_law.skipped = n_law.skipped = true;
    p_law.note = n_law.note =
        "hypothesis fails at n=" + std::to_string(*report.hypothesis_counterexample) +
        "; conclusions hold vacuously";
  } else {
    for (std::int64_t n = 0; n < len; ++n) {
      Outcome lr = lr_values[static_cast<std::size_t>(n)];
      Outcome np = normal_values[static_cast<std::size_t>(n)];
      if (lr == Outcome::P && np != Outcome::P) {
        p_law.violations.push_back({n, "LR-P positions are normal-play P",
                                    "normal O(" + std::to_string(n) + ")=" + outcome_str(np)});
      }
      if (lr == Outcome::N && np != Outcome::N) {
        n_law.violations.push_back({n, "LR-N positions are normal-play N",
                                    "normal O(" + std::to_string(n) + ")=" + outcome_str(np)});
      }
    }
  }
  report.conclusions.push_back(std::move(p_law));
  report.conclusions.push_back(std::move(n_law));
  return report;
}

NormalTransferReport check_normal_transfer(const SubtractionSet& s, std::int64_t horizon) {
  OutcomeSequence lr = outcome_table(GameSpec::lr(s), horizon);
  std::vector<Outcome> normal = normal_play_outcomes(s, horizon);
  return check_normal_transfer(lr.values(), normal);
}

nlohmann::json to_json(const LawReport& report, std::size_t max_listed_violations) {
  nlohmann::json listed = nlohmann::json::array();
  for (std::size_t i = 0; i < report.violations.size() && i < max_listed_violations; ++i) {
    const LawViolation& v = report.violations[i];
    listed.push_back({{"position", v.position}, {"constraint", v.constraint}, {"observed", v.observed}});
  }
  nlohmann::json j{{"law", report.law_id},
                   {"horizon", report.horizon},
                   {"skipped", report.skipped},
                   {"violation_count", report.violations.size()},
                   {"violations", std::move(listed)}};
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

}  // namespace epsnim
