// io.hpp
// File formats: the per-episode CSV (schema pinned below), the
// plain-text and JSON run summaries, the run_config echo, and the
// comparison report. Readers throw DataError with the offending line;
// writers throw ConfigError when the destination cannot be opened.

#pragma once

#include <string>
#include <vector>

#include "qardns/config.hpp"
#include "qardns/records.hpp"
#include "qardns/stats.hpp"

namespace qardns::io {

// Bit-exact CSV schema: one row per (episode, agent), reals with six
// fractional digits, success as 1/0, every row newline-terminated.
inline constexpr const char* kCsvHeader =
    "episode,agent,total_reward,steps,success,collisions,epsilon,eta,"
    "curiosity";

std::string format_episodes_csv(const std::vector<EpisodeRecord>& records);
void write_episodes_csv(const std::string& path,
                        const std::vector<EpisodeRecord>& records);

// Accepts any row order; rows are grouped by episode (first-appearance
// order) and placed by agent index. Malformed content throws DataError
// naming the line. Wall-clock seconds are not stored in the CSV and read
// back as zero.
std::vector<EpisodeRecord> read_episodes_csv(const std::string& path);

std::string format_summary_txt(const RunSummary& summary);
void write_summary_txt(const std::string& path, const RunSummary& summary);

std::string format_summary_json(const RunSummary& summary);
void write_summary_json(const std::string& path, const RunSummary& summary);

void write_run_config(const std::string& path,
                      const config::RunConfig& config);

// Per-agent Mann-Whitney results for two named runs; p-values below
// 1e-16 are printed as "< 1e-16".
std::string format_comparison(const std::vector<stats::UTestResult>& results,
                              const std::string& name_a,
                              const std::string& name_b);
void write_comparison(const std::string& path,
                      const std::vector<stats::UTestResult>& results,
                      const std::string& name_a, const std::string& name_b);

// Episode-ordered reward series for one agent (for tests and plots).
std::vector<double> reward_series(const std::vector<EpisodeRecord>& records,
                                  std::size_t agent);

}  // namespace qardns::io
