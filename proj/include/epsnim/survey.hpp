#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "epsnim/periodicity.hpp"

namespace epsnim {

struct SurveyConfig {
  std::int64_t min_element = 2;   // every enumerated set contains exactly this minimum
  std::int64_t max_bound = 14;    // max(S) <= max_bound
  std::int64_t horizon = 100'000;
  int worker_count = 0;           // 0: hardware concurrency
  std::filesystem::path out_dir;
  std::int64_t chunk_size = 256;
  bool resume = false;
  std::int64_t max_chunks = -1;   // testing knob: stop after this many chunks
};

// The set for a given enumeration index: bit k of `mask` adds element
// min_element + 1 + k; min_element is always present.
SubtractionSet set_from_mask(std::int64_t min_element, std::int64_t max_bound, std::uint64_t mask);
std::uint64_t survey_set_count(std::int64_t min_element, std::int64_t max_bound);

struct SetClassification {
  std::uint64_t mask = 0;
  SubtractionSet set = SubtractionSet::finite({2});
  TailClass tail;

  bool all_l() const { return tail.tag == TailTag::EventuallyAllL; }
  std::string csv_row() const;
};

SetClassification classify_set(const SubtractionSet& s, std::int64_t horizon);

struct SurveyReport {
  std::uint64_t total_sets = 0;
  std::uint64_t all_l_count = 0;
  std::uint64_t horizon_exceeded_count = 0;
  std::map<std::int64_t, std::uint64_t> period_histogram;
  bool complete = false;  // false when max_chunks stopped the run early

  double fraction() const {
    return total_sets == 0 ? 0.0 : static_cast<double>(all_l_count) / static_cast<double>(total_sets);
  }
};

// Classifies every enumerated set, streaming rows to <out_dir>/rows.csv in
// enumeration order regardless of worker count, with <out_dir>/summary.json
// and a checkpoint that makes the run resumable after interruption.
SurveyReport run_survey(const SurveyConfig& config);

nlohmann::json to_json(const SurveyReport& report, const SurveyConfig& config);

inline constexpr const char* kSurveyCsvHeader = "set_mask,set_text,preperiod,period,tail_class,all_L";

}  // namespace epsnim
