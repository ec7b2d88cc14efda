#include "epsnim/survey.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

namespace epsnim {

namespace fs = std::filesystem;

SubtractionSet set_from_mask(std::int64_t min_element, std::int64_t max_bound, std::uint64_t mask) {
  std::vector<std::int64_t> members{min_element};
  for (std::int64_t k = 0; k < max_bound - min_element; ++k) {
    if (mask >> k & 1) members.push_back(min_element + 1 + k);
  }
  return SubtractionSet::finite(std::move(members));
}

std::uint64_t survey_set_count(std::int64_t min_element, std::int64_t max_bound) {
  if (min_element < 2 || max_bound < min_element) throw std::invalid_argument("need 2 <= min_element <= max_bound");
  if (max_bound - min_element > 62) throw std::invalid_argument("enumeration range too wide for a 64-bit mask");
  return std::uint64_t{1} << (max_bound - min_element);
}

SetClassification classify_set(const SubtractionSet& s, std::int64_t horizon) {
  SetClassification out;
  out.set = s;
  out.tail = classify_tail(GameSpec::lr(s), horizon);
  return out;
}

std::string SetClassification::csv_row() const {
  std::string row = std::to_string(mask) + ",\"" + set.to_string() + "\",";
  if (tail.certificate) {
    row += std::to_string(tail.certificate->preperiod) + "," + std::to_string(tail.certificate->period);
  } else {
    row += ",";
  }
  row += std::string(",") + tail_tag_name(tail.tag) + "," + (all_l() ? "true" : "false");
  return row;
}

namespace {

struct ChunkResult {
  std::string rows;
  std::uint64_t all_l = 0;
  std::uint64_t exceeded = 0;
  std::map<std::int64_t, std::uint64_t> histogram;
};

nlohmann::json checkpoint_config(const SurveyConfig& c) {
  return {{"min_element", c.min_element},
          {"max_bound", c.max_bound},
          {"horizon", c.horizon},
          {"chunk_size", c.chunk_size}};
}

}  // namespace

SurveyReport run_survey(const SurveyConfig& config) {
  const std::uint64_t total = survey_set_count(config.min_element, config.max_bound);
  if (config.chunk_size < 1) throw std::invalid_argument("chunk_size must be >= 1");
  if (config.out_dir.empty()) throw std::invalid_argument("survey needs an output directory");
  fs::create_directories(config.out_dir);
  const fs::path rows_path = config.out_dir / "rows.csv";
  const fs::path summary_path = config.out_dir / "summary.json";
  const fs::path checkpoint_path = config.out_dir / "checkpoint.json";

  const std::uint64_t total_chunks =
      (total + static_cast<std::uint64_t>(config.chunk_size) - 1) / static_cast<std::uint64_t>(config.chunk_size);

  SurveyReport report;
  report.total_sets = total;
  std::uint64_t start_chunk = 0;

  if (config.resume && fs::exists(checkpoint_path)) {
    std::ifstream in(checkpoint_path);
    nlohmann::json cp = nlohmann::json::parse(in);
    if (cp["config"] != checkpoint_config(config)) {
      throw std::invalid_argument("checkpoint was written by a different survey configuration");
    }
    start_chunk = cp["completed_chunks"].get<std::uint64_t>();
    report.all_l_count = cp["all_l_count"].get<std::uint64_t>();
    report.horizon_exceeded_count = cp["horizon_exceeded_count"].get<std::uint64_t>();
    for (auto& [k, v] : cp["period_histogram"].items()) {
      report.period_histogram[std::stoll(k)] = v.get<std::uint64_t>();
    }
    fs::resize_file(rows_path, cp["rows_bytes"].get<std::uintmax_t>());
  } else {
    std::ofstream out(rows_path, std::ios::trunc);
    out << kSurveyCsvHeader << "\n";
  }

  std::ofstream rows_out(rows_path, std::ios::app);
  if (!rows_out) throw std::runtime_error("cannot open " + rows_path.string());

  const std::uint64_t stop_chunk =
      config.max_chunks < 0
          ? total_chunks
          : std::min<std::uint64_t>(total_chunks, start_chunk + static_cast<std::uint64_t>(config.max_chunks));

  std::atomic<std::uint64_t> next_chunk{start_chunk};
  std::mutex commit_mutex;
  std::map<std::uint64_t, ChunkResult> pending;
  std::uint64_t next_commit = start_chunk;
  std::exception_ptr failure;

  auto write_checkpoint = [&] {
    rows_out.flush();
    nlohmann::json cp{{"config", checkpoint_config(config)},
                      {"completed_chunks", next_commit},
                      {"total_chunks", total_chunks},
                      {"rows_bytes", static_cast<std::uintmax_t>(fs::file_size(rows_path))},
                      {"all_l_count", report.all_l_count},
                      {"horizon_exceeded_count", report.horizon_exceeded_count}};
    nlohmann::json hist = nlohmann::json::object();
    for (auto& [p, c] : report.period_histogram) hist[std::to_string(p)] = c;
    cp["period_histogram"] = std::move(hist);
    std::ofstream out(checkpoint_path, std::ios::trunc);
    out << cp.dump(2) << "\n";
  };

  auto worker = [&] {
    try {
      while (true) {
        const std::uint64_t chunk = next_chunk.fetch_add(1);
        if (chunk >= stop_chunk) break;
        const std::uint64_t begin = chunk * static_cast<std::uint64_t>(config.chunk_size);
        const std::uint64_t end = std::min(total, begin + static_cast<std::uint64_t>(config.chunk_size));
        ChunkResult result;
        for (std::uint64_t mask = begin; mask < end; ++mask) {
          SetClassification c = classify_set(set_from_mask(config.min_element, config.max_bound, mask),
                                             config.horizon);
          c.mask = mask;
          result.rows += c.csv_row();
          result.rows += '\n';
          if (c.all_l()) result.all_l++;
          if (c.tail.tag == TailTag::HorizonExceeded) {
            result.exceeded++;
          } else {
            result.histogram[c.tail.certificate->period]++;
          }
        }
        std::unique_lock lock(commit_mutex);
        pending.emplace(chunk, std::move(result));
        while (!pending.empty() && pending.begin()->first == next_commit) {
          ChunkResult& head = pending.begin()->second;
          rows_out << head.rows;
          report.all_l_count += head.all_l;
          report.horizon_exceeded_count += head.exceeded;
          for (auto& [p, c] : head.histogram) report.period_histogram[p] += c;
          pending.erase(pending.begin());
          ++next_commit;
          write_checkpoint();
        }
      }
    } catch (...) {
      std::unique_lock lock(commit_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  int workers = config.worker_count > 0 ? config.worker_count
                                        : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int i = 0; i < workers; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);

  report.complete = next_commit == total_chunks;
  if (report.complete) {
    std::ofstream out(summary_path, std::ios::trunc);
    out << to_json(report, config).dump(2) << "\n";
  }
  return report;
}

nlohmann::json to_json(const SurveyReport& report, const SurveyConfig& config) {
  nlohmann::json hist = nlohmann::json::object();
  for (auto& [p, c] : report.period_histogram) hist[std::to_string(p)] = c;
  return {{"min_element", config.min_element},
          {"max_bound", config.max_bound},
          {"horizon", config.horizon},
          {"total_sets", report.total_sets},
          {"all_L_count", report.all_l_count},
          {"fraction", report.fraction()},
          {"horizon_exceeded_count", report.horizon_exceeded_count},
          {"period_histogram", std::move(hist)},
          {"complete", report.complete}};
}

}  // namespace epsnim
