// Command line front end: outcome tables, periodicity certificates, law
// matrices, normalized game values, difference probes, set surveys and the
// recurrence/oracle cross-check.
//
// Exit codes: 0 success/pass, 1 law violation or mismatch, 2 usage error,
// 3 horizon or budget exceeded.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "epsnim/cgt.hpp"
#include "epsnim/laws.hpp"
#include "epsnim/periodicity.hpp"
#include "epsnim/survey.hpp"

using namespace epsnim;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitExceeded = 3;

std::int64_t default_horizon(std::int64_t fallback) {
  if (const char* env = std::getenv("EPSNIM_HORIZON")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

GameSpec spec_from_flags(const std::string& set_text, const std::string& terminal_text) {
  SubtractionSet s = SubtractionSet::parse(set_text);
  if (terminal_text.empty()) return GameSpec::lr(std::move(s));
  return GameSpec(std::move(s), TerminalRule::parse(terminal_text));
}

void emit(const json& j, bool plain, const std::string& plain_text) {
  if (plain) {
    std::cout << plain_text << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

struct DiffExpr {
  std::vector<DiffTerm> terms;
  std::string text;
};

// Terms "c[n+k]" with integer c and offset k, joined by + or -.
DiffExpr parse_diff_expr(const std::string& text) {
  DiffExpr expr;
  expr.text = text;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto parse_int = [&](std::int64_t fallback) {
    skip_ws();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) return fallback;
    return static_cast<std::int64_t>(std::stoll(text.substr(start, i - start)));
  };
  bool first = true;
  while (true) {
    skip_ws();
    if (i >= text.size()) {
      if (first) throw std::invalid_argument("empty expression");
      break;
    }
    std::int64_t sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw std::invalid_argument("expected '+' or '-' between terms");
    }
    std::int64_t coeff = parse_int(1);
    skip_ws();
    if (i >= text.size() || text[i] != '[') throw std::invalid_argument("expected '[' in term");
    ++i;
    skip_ws();
    if (i >= text.size() || text[i] != 'n') throw std::invalid_argument("expected 'n' inside brackets");
    ++i;
    std::int64_t offset = 0;
    skip_ws();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      std::int64_t osign = text[i] == '-' ? -1 : 1;
      ++i;
      offset = osign * parse_int(0);
    }
    skip_ws();
    if (i >= text.size() || text[i] != ']') throw std::invalid_argument("expected ']' in term");
    ++i;
    expr.terms.push_back({sign * coeff, offset});
    first = false;
  }
  return expr;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("range must look like 0..40");
  std::int64_t lo = std::stoll(text.substr(0, dots));
  std::int64_t hi = std::stoll(text.substr(dots + 2));
  if (lo < 0 || hi < lo) throw std::invalid_argument("range must be 0 <= lo <= hi");
  return {lo, hi};
}

const char* kSetGrammar =
    "set grammar: brace groups joined by 'U' (or the union sign); items are integers >= 2\n"
    "or one arithmetic tail 'start..stepD', e.g. \"{2,3,6}\" or \"{4} U {3..step2}\"";
const char* kExprGrammar =
    "expression grammar: terms c[n+k] with integer coefficient c and offset k,\n"
    "joined by + or -, e.g. \"[n+9]-[n]\" or \"[n+18]-2[n+9]+[n]\"";

int run(int argc, char** argv) {
  CLI::App app{"Outcome analysis for ending-partizan subtraction games"};
  app.require_subcommand(1);
  bool plain = false;
  auto add_plain_flag = [&](CLI::App* cmd) {
    cmd->add_flag("--plain", plain, "Plain text output instead of JSON");
  };

  std::string set_text, terminal_text;
  auto add_spec_flags = [&](CLI::App* cmd, bool with_terminal = true) {
    add_plain_flag(cmd);
    cmd->add_option("--set", set_text, "Removable set, e.g. \"{2,3}\"")->required();
    if (with_terminal) {
      cmd->add_option("--terminal", terminal_text,
                      "Terminal winners as characters over LRNP, one per position below min(S); "
                      "default: L on even, R on odd");
    }
  };

  auto* outcomes_cmd = app.add_subcommand("outcomes", "Print the outcome sequence");
  std::int64_t n_positions = 15;
  add_spec_flags(outcomes_cmd);
  outcomes_cmd->add_option("--n", n_positions, "Number of positions, starting at 0");

  auto* period_cmd = app.add_subcommand("period", "Detect eventual periodicity; prints the certificate");
  std::int64_t period_horizon = default_horizon(kDefaultDetectHorizon);
  bool classify = false;
  add_spec_flags(period_cmd);
  auto* period_horizon_opt = period_cmd->add_option(
      "--horizon", period_horizon,
      "Detection horizon (defaults to 1000000 for finite sets, 20000 for infinite ones, "
      "whose tables cost quadratic time)");
  period_cmd->add_flag("--classify", classify, "Add the tail classification to the output");

  auto* laws_cmd = app.add_subcommand("laws", "Check the structural laws; exit 1 on any violation");
  std::int64_t laws_horizon = default_horizon(1000);
  bool mirror_probe = false;
  add_spec_flags(laws_cmd);
  laws_cmd->add_option("--horizon", laws_horizon, "Positions to check");
  laws_cmd->add_flag("--mirror-probe", mirror_probe,
                     "Also run the Left/Right-mirrored adjacency laws (expected to fail; "
                     "does not affect the exit code)");

  auto* values_cmd = app.add_subcommand("values", "Normalized game values under normal play");
  std::int64_t values_n = 30;
  std::int64_t check_period_p = 0;
  std::int64_t check_window = 50;
  bool with_brackets = false;
  std::int64_t dag_at = -1;
  add_spec_flags(values_cmd);
  values_cmd->add_option("--n", values_n, "Number of positions");
  values_cmd->add_option("--check-period", check_period_p, "Verify values[n+p] == values[n] eventually");
  values_cmd->add_option("--window", check_window, "Window length for --check-period");
  values_cmd->add_flag("--brackets", with_brackets, "Include bracket forms (may be large)");
  values_cmd->add_option("--dag", dag_at, "Emit the value at this position as node-table JSON");

  auto* diff_cmd = app.add_subcommand("diff", "Outcomes of sums/differences of game values");
  std::string expr_text, range_text = "0..40";
  std::int64_t step = 1;
  add_spec_flags(diff_cmd, false);
  diff_cmd->add_option("--expr", expr_text, "Expression, e.g. \"[n+9]-[n]\"")->required();
  diff_cmd->add_option("--range", range_text, "Inclusive n range, e.g. 0..40");
  diff_cmd->add_option("--step", step, "Step through the range");

  auto* survey_cmd = app.add_subcommand("survey", "Classify every set in an enumeration family");
  add_plain_flag(survey_cmd);
  SurveyConfig survey_cfg;
  survey_cfg.horizon = default_horizon(survey_cfg.horizon);
  std::string out_dir;
  survey_cmd->add_option("--min", survey_cfg.min_element, "Fixed minimum of every set");
  survey_cmd->add_option("--max-bound", survey_cfg.max_bound, "Upper bound for max(S)")->required();
  survey_cmd->add_option("--horizon", survey_cfg.horizon, "Per-set detection horizon");
  survey_cmd->add_option("--workers", survey_cfg.worker_count, "Worker threads (0 = auto)");
  survey_cmd->add_option("--chunk-size", survey_cfg.chunk_size, "Sets per work chunk");
  survey_cmd->add_option("--out", out_dir, "Output directory")->required();
  survey_cmd->add_flag("--resume", survey_cfg.resume, "Resume from the checkpoint in --out");

  auto* oracle_cmd = app.add_subcommand("oracle-check", "Cross-validate the recurrence against minimax");
  add_plain_flag(oracle_cmd);
  std::int64_t max_set = 8, max_n = 60;
  oracle_cmd->add_option("--max-set", max_set, "Check every nonempty S within {2..max-set}");
  oracle_cmd->add_option("--max-n", max_n, "Positions 0..max-n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*outcomes_cmd) {
      auto seq = outcome_table(spec_from_flags(set_text, terminal_text), n_positions);
      json array = json::array();
      for (Outcome o : seq.values()) array.push_back(std::string(1, to_char(o)));
      json j{{"set", seq.spec().set().to_string()},
             {"terminal", seq.spec().terminal().to_string()},
             {"n", n_positions},
             {"outcomes", seq.to_string()},
             {"outcomes_array", std::move(array)}};
      emit(j, plain, seq.to_string());
      return kExitPass;
    }

    if (*period_cmd) {
      auto spec = spec_from_flags(set_text, terminal_text);
      if (!spec.set().is_finite() && period_horizon_opt->count() == 0 &&
          !std::getenv("EPSNIM_HORIZON")) {
        period_horizon = 20'000;
      }
      auto det = detect_period(spec, period_horizon);
      if (!det.found()) {
        json j{{"error", "horizon_exceeded"}, {"horizon", det.horizon_used}};
        emit(j, plain, "horizon exceeded at " + std::to_string(det.horizon_used));
        return kExitExceeded;
      }
      json j = to_json(*det.certificate);
      if (classify) {
        auto tc = classify_tail(spec, period_horizon);
        j["tail_class"] = tail_tag_name(tc.tag);
        json counts = json::object();
        for (std::size_t i = 0; i < 4; ++i) {
          if (tc.period_counts[i] > 0) counts[std::string(1, to_char(static_cast<Outcome>(i)))] = tc.period_counts[i];
        }
        j["period_multiset"] = std::move(counts);
      }
      emit(j, plain,
           "preperiod=" + std::to_string(det.certificate->preperiod) +
               " period=" + std::to_string(det.certificate->period) +
               (det.certificate->proved ? " (proved)" : " (observed)"));
      return kExitPass;
    }

    if (*laws_cmd) {
      auto spec = spec_from_flags(set_text, terminal_text);
      auto seq = outcome_table(spec, laws_horizon + 1);
      auto reports = check_structure(spec, seq.values());
      bool violated = false;
      json matrix = json::array();
      std::string table;
      for (const auto& r : reports) {
        violated = violated || !r.pass();
        matrix.push_back(to_json(r));
        table += r.law_id + ": " + (r.skipped ? "skipped" : r.pass() ? "pass" : "FAIL") + "\n";
      }
      json j{{"set", spec.set().to_string()}, {"horizon", laws_horizon}, {"laws", std::move(matrix)}};
      if (mirror_probe) {
        json probes = json::array();
        for (const auto& r : mirrored_adjacency_probe(spec, seq.values())) {
          probes.push_back(to_json(r));
          table += r.law_id + ": " + std::to_string(r.violations.size()) + " violations (expected)\n";
        }
        j["mirror_probe"] = std::move(probes);
      }
      if (!table.empty() && table.back() == '\n') table.pop_back();
      emit(j, plain, table);
      return violated ? kExitViolation : kExitPass;
    }

    if (*values_cmd) {
      ValueSequence vs(spec_from_flags(set_text, terminal_text));
      std::string outcomes;
      json brackets = json::array();
      for (std::int64_t n = 0; n < values_n; ++n) {
        outcomes.push_back(to_char(vs.value_outcome(n)));
        if (with_brackets) brackets.push_back(vs.bracket(n));
      }
      json j{{"set", vs.spec().set().to_string()}, {"n", values_n}, {"value_outcomes", outcomes}};
      if (with_brackets) j["values"] = std::move(brackets);
      if (dag_at >= 0) j["dag"] = vs.arena().dag_json(vs.value(dag_at));
      bool failed = false;
      if (check_period_p > 0) {
        auto check = vs.check_period(check_period_p, check_window);
        j["period_check"] = {{"p", check_period_p},
                             {"window", check_window},
                             {"pass", check.pass},
                             {"preperiod", check.preperiod},
                             {"last_mismatch", check.last_mismatch}};
        failed = !check.pass;
      }
      emit(j, plain, outcomes + (check_period_p > 0 ? (failed ? "\nperiod check: FAIL" : "\nperiod check: pass") : ""));
      return failed ? kExitViolation : kExitPass;
    }

    if (*diff_cmd) {
      auto expr = parse_diff_expr(expr_text);
      auto [lo, hi] = parse_range(range_text);
      if (step < 1) throw std::invalid_argument("step must be >= 1");
      ValueSequence vs(spec_from_flags(set_text, ""));
      json results = json::array();
      std::string table;
      for (std::int64_t n = lo; n <= hi; n += step) {
        Outcome o = vs.difference_outcome(expr.terms, n);
        results.push_back({{"n", n}, {"outcome", std::string(1, to_char(o))}});
        table += "n=" + std::to_string(n) + " " + to_char(o) + std::string("\n");
      }
      if (!table.empty()) table.pop_back();
      json j{{"set", vs.spec().set().to_string()}, {"expr", expr.text}, {"results", std::move(results)}};
      emit(j, plain, table);
      return kExitPass;
    }

    if (*survey_cmd) {
      survey_cfg.out_dir = out_dir;
      auto report = run_survey(survey_cfg);
      json j = to_json(report, survey_cfg);
      emit(j, plain,
           "sets=" + std::to_string(report.total_sets) + " all_L=" + std::to_string(report.all_l_count) +
               " horizon_exceeded=" + std::to_string(report.horizon_exceeded_count));
      return kExitPass;
    }

    if (*oracle_cmd) {
      auto report = oracle_crosscheck(max_set, max_n);
      json mismatches = json::array();
      for (const auto& m : report.mismatches) {
        mismatches.push_back({{"set", m.set_text},
                              {"n", m.n},
                              {"table", std::string(1, to_char(m.table_outcome))},
                              {"oracle", std::string(1, to_char(m.oracle_outcome))}});
      }
      json j{{"sets_checked", report.sets_checked},
             {"positions_checked", report.positions_checked},
             {"mismatches", std::move(mismatches)},
             {"pass", report.pass()}};
      emit(j, plain,
           "sets=" + std::to_string(report.sets_checked) + " positions=" +
               std::to_string(report.positions_checked) + (report.pass() ? " pass" : " MISMATCH"));
      return report.pass() ? kExitPass : kExitViolation;
    }
  } catch (const budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitExceeded;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n" << kSetGrammar << "\n" << kExprGrammar << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
