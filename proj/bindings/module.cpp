#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epsnim/cgt.hpp"
#include "epsnim/laws.hpp"
#include "epsnim/periodicity.hpp"
#include "epsnim/survey.hpp"

namespace py = pybind11;
using namespace epsnim;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      py::dict d;
      for (auto& [key, value] : j.items()) d[py::str(key)] = json_to_py(value);
      return d;
    }
    case nlohmann::json::value_t::array: {
      py::list l;
      for (const auto& value : j) l.append(json_to_py(value));
      return l;
    }
    case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
    default: return py::none();
  }
}

GameSpec spec_from(const std::string& set_text, const std::string& terminal_text) {
  SubtractionSet s = SubtractionSet::parse(set_text);
  if (terminal_text.empty()) return GameSpec::lr(std::move(s));
  return GameSpec(std::move(s), TerminalRule::parse(terminal_text));
}

py::dict detection_to_py(const DetectionResult& det) {
  py::dict d;
  d["found"] = det.found();
  d["horizon_used"] = det.horizon_used;
  if (det.found()) {
    d["preperiod"] = det.certificate->preperiod;
    d["period"] = det.certificate->period;
    d["proved"] = det.certificate->proved;
    d["window"] = det.certificate->window;
  }
  return d;
}

py::list reports_to_py(const std::vector<LawReport>& reports) {
  py::list out;
  for (const auto& r : reports) out.append(json_to_py(to_json(r)));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Outcome analysis for ending-partizan subtraction games";
  m.attr("__version__") = "0.1.0";

  m.def("parse_set",
        [](const std::string& text) { return SubtractionSet::parse(text).to_string(); },
        py::arg("text"), "Validate a removable-set expression and return its canonical form");

  m.def("options",
        [](const std::string& set_text, std::int64_t n) {
          return options(GameSpec::lr(SubtractionSet::parse(set_text)), n);
        },
        py::arg("set"), py::arg("n"));

  m.def("outcomes",
        [](const std::string& set_text, std::int64_t n, const std::string& terminal) {
          return outcome_table(spec_from(set_text, terminal), n).to_string();
        },
        py::arg("set"), py::arg("n"), py::arg("terminal") = "",
        "Outcome classes of positions 0..n-1 as a string over LRNP");

  m.def("oracle_outcome",
        [](const std::string& set_text, std::int64_t n, const std::string& terminal, std::int64_t cap) {
          return std::string(1, to_char(oracle_outcome(spec_from(set_text, terminal), n, cap)));
        },
        py::arg("set"), py::arg("n"), py::arg("terminal") = "", py::arg("cap") = kDefaultOracleCap,
        "Definition-level minimax outcome of one position");

  m.def("oracle_crosscheck",
        [](std::int64_t max_element, std::int64_t max_n) {
          auto report = oracle_crosscheck(max_element, max_n);
          py::dict d;
          d["sets_checked"] = report.sets_checked;
          d["positions_checked"] = report.positions_checked;
          d["pass"] = report.pass();
          py::list mm;
          for (const auto& x : report.mismatches) {
            py::dict e;
            e["set"] = x.set_text;
            e["n"] = x.n;
            e["table"] = std::string(1, to_char(x.table_outcome));
            e["oracle"] = std::string(1, to_char(x.oracle_outcome));
            mm.append(e);
          }
          d["mismatches"] = mm;
          return d;
        },
        py::arg("max_element") = 8, py::arg("max_n") = 60);

  m.def("detect_period",
        [](const std::string& set_text, std::int64_t horizon, const std::string& terminal) {
          return detection_to_py(detect_period(spec_from(set_text, terminal), horizon));
        },
        py::arg("set"), py::arg("horizon") = kDefaultDetectHorizon, py::arg("terminal") = "");

  m.def("verify_certificate",
        [](const std::string& set_text, std::int64_t preperiod, std::int64_t period,
           std::int64_t check_horizon, bool proved, const std::string& window,
           const std::string& terminal) {
          auto report = verify_certificate(spec_from(set_text, terminal),
                                           PeriodCertificate{preperiod, period, proved, window},
                                           check_horizon);
          py::dict d;
          d["pass"] = report.pass;
          d["first_violation"] = report.first_violation;
          d["detail"] = report.detail;
          return d;
        },
        py::arg("set"), py::arg("preperiod"), py::arg("period"), py::arg("check_horizon"),
        py::arg("proved") = true, py::arg("window") = "", py::arg("terminal") = "");

  m.def("classify_tail",
        [](const std::string& set_text, std::int64_t horizon, const std::string& terminal) {
          auto tc = classify_tail(spec_from(set_text, terminal), horizon);
          py::dict d;
          d["tail_class"] = tail_tag_name(tc.tag);
          py::dict counts;
          for (std::size_t i = 0; i < 4; ++i) {
            if (tc.period_counts[i] > 0) {
              counts[py::str(std::string(1, to_char(static_cast<Outcome>(i))))] = tc.period_counts[i];
            }
          }
          d["period_multiset"] = counts;
          if (tc.certificate) d["certificate"] = json_to_py(to_json(*tc.certificate));
          return d;
        },
        py::arg("set"), py::arg("horizon") = kDefaultDetectHorizon, py::arg("terminal") = "");

  m.def("check_structure",
        [](const std::string& set_text, std::int64_t horizon) {
          return reports_to_py(check_structure(GameSpec::lr(SubtractionSet::parse(set_text)), horizon));
        },
        py::arg("set"), py::arg("horizon") = 1000);

  m.def("mirrored_adjacency_probe",
        [](const std::string& set_text, std::int64_t horizon) {
          auto spec = GameSpec::lr(SubtractionSet::parse(set_text));
          auto seq = outcome_table(spec, horizon + 1);
          return reports_to_py(mirrored_adjacency_probe(spec, seq.values()));
        },
        py::arg("set"), py::arg("horizon") = 1000);

  m.def("is_p_symmetric",
        [](const std::string& set_text, std::int64_t p) {
          return is_p_symmetric(SubtractionSet::parse(set_text), p);
        },
        py::arg("set"), py::arg("p"));

  m.def("check_psym",
        [](const std::string& set_text, std::int64_t p, std::int64_t horizon,
           const std::string& terminal) {
          return reports_to_py(check_psym(spec_from(set_text, terminal), p, horizon));
        },
        py::arg("set"), py::arg("p"), py::arg("horizon") = 500, py::arg("terminal") = "");

  m.def("normal_play",
        [](const std::string& set_text, std::int64_t horizon) {
          return outcomes_to_string(normal_play_outcomes(SubtractionSet::parse(set_text), horizon));
        },
        py::arg("set"), py::arg("horizon"),
        "Classical last-player-wins outcomes as a string over NP");

  m.def("check_normal_transfer",
        [](const std::string& set_text, std::int64_t horizon) {
          auto report = check_normal_transfer(SubtractionSet::parse(set_text), horizon);
          py::dict d;
          d["hypothesis_holds"] = report.hypothesis_holds;
          d["hypothesis_counterexample"] =
              report.hypothesis_counterexample ? py::object(py::int_(*report.hypothesis_counterexample))
                                               : py::object(py::none());
          d["conclusions"] = reports_to_py(report.conclusions);
          d["conclusions_pass"] = report.conclusions_pass();
          return d;
        },
        py::arg("set"), py::arg("horizon") = 1000);

  py::class_<ValueSequence>(m, "ValueSequence",
                            "Normal-play game values of an LR game: terminal L-positions become "
                            "1 = {0|}, terminal R-positions -1 = {|0}")
      .def(py::init([](const std::string& set_text, const std::string& terminal) {
             return ValueSequence(spec_from(set_text, terminal));
           }),
           py::arg("set"), py::arg("terminal") = "")
      .def("outcome",
           [](ValueSequence& vs, std::int64_t n) { return std::string(1, to_char(vs.value_outcome(n))); },
           py::arg("n"))
      .def("outcomes",
           [](ValueSequence& vs, std::int64_t n) {
             std::string out;
             for (std::int64_t i = 0; i < n; ++i) out.push_back(to_char(vs.value_outcome(i)));
             return out;
           },
           py::arg("n"))
      .def("bracket", &ValueSequence::bracket, py::arg("n"))
      .def("dag",
           [](ValueSequence& vs, std::int64_t n) { return json_to_py(vs.arena().dag_json(vs.value(n))); },
           py::arg("n"))
      .def("check_period",
           [](ValueSequence& vs, std::int64_t p, std::int64_t window, std::int64_t search_limit) {
             auto check = vs.check_period(p, window, search_limit);
             py::dict d;
             d["pass"] = check.pass;
             d["preperiod"] = check.preperiod;
             d["last_mismatch"] = check.last_mismatch;
             return d;
           },
           py::arg("p"), py::arg("window") = 50, py::arg("search_limit") = 60)
      .def("difference_outcome",
           [](ValueSequence& vs, const std::vector<std::pair<std::int64_t, std::int64_t>>& terms,
              std::int64_t n) {
             std::vector<DiffTerm> parsed;
             for (auto& [mult, offset] : terms) parsed.push_back({mult, offset});
             return std::string(1, to_char(vs.difference_outcome(parsed, n)));
           },
           py::arg("terms"), py::arg("n"),
           "Outcome of sum(multiplier * value[n+offset]) over (multiplier, offset) terms");

  m.def("set_from_mask",
        [](std::int64_t min_element, std::int64_t max_bound, std::uint64_t mask) {
          return set_from_mask(min_element, max_bound, mask).to_string();
        },
        py::arg("min_element"), py::arg("max_bound"), py::arg("mask"));
  m.def("survey_set_count", &survey_set_count, py::arg("min_element"), py::arg("max_bound"));

  m.def("classify_set",
        [](const std::string& set_text, std::int64_t horizon) {
          auto c = classify_set(SubtractionSet::parse(set_text), horizon);
          py::dict d;
          d["set"] = c.set.to_string();
          d["tail_class"] = tail_tag_name(c.tail.tag);
          d["all_L"] = c.all_l();
          if (c.tail.certificate) d["certificate"] = json_to_py(to_json(*c.tail.certificate));
          return d;
        },
        py::arg("set"), py::arg("horizon") = 100000);

  m.def("run_survey",
        [](std::int64_t min_element, std::int64_t max_bound, std::int64_t horizon, int workers,
           const std::string& out_dir, std::int64_t chunk_size, bool resume) {
          SurveyConfig cfg;
          cfg.min_element = min_element;
          cfg.max_bound = max_bound;
          cfg.horizon = horizon;
          cfg.worker_count = workers;
          cfg.out_dir = out_dir;
          cfg.chunk_size = chunk_size;
          cfg.resume = resume;
          py::gil_scoped_release release;
          auto report = run_survey(cfg);
          py::gil_scoped_acquire acquire;
          return json_to_py(to_json(report, cfg));
        },
        py::arg("min_element"), py::arg("max_bound"), py::arg("horizon") = 100000,
        py::arg("workers") = 0, py::arg("out_dir") = "", py::arg("chunk_size") = 256,
        py::arg("resume") = false);
}
