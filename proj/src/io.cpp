#include "qardns/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unordered_map>

#include "qardns/errors.hpp"

namespace qardns::io {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << content;
  if (!out) throw ConfigError("failed while writing: " + path);
}

long parse_row_long(const std::string& text, long line_no,
                    const char* column) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw DataError(std::string("expected integer in column '") + column +
                        "', got '" + text + "'",
                    line_no);
  }
}

double parse_row_double(const std::string& text, long line_no,
                        const char* column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw DataError(std::string("expected number in column '") + column +
                        "', got '" + text + "'",
                    line_no);
  }
}

}  // namespace

std::string format_episodes_csv(const std::vector<EpisodeRecord>& records) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const EpisodeRecord& rec : records) {
    for (std::size_t a = 0; a < rec.agents.size(); ++a) {
      const AgentEpisode& ep = rec.agents[a];
      out << rec.episode << ',' << a << ',' << fixed6(ep.total_reward) << ','
          << ep.steps << ',' << (ep.success ? 1 : 0) << ',' << ep.collisions
          << ',' << fixed6(ep.epsilon) << ',' << fixed6(ep.eta) << ','
          << fixed6(ep.curiosity) << "\n";
    }
  }
  return out.str();
}

void write_episodes_csv(const std::string& path,
                        const std::vector<EpisodeRecord>& records) {
  write_text_file(path, format_episodes_csv(records));
}

std::vector<EpisodeRecord> read_episodes_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path, 0);

  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw DataError("empty file: " + path, 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw DataError("unexpected header, want '" + std::string(kCsvHeader) +
                        "'",
                    line_no);
  }

  std::vector<EpisodeRecord> records;
  std::unordered_map<int, std::size_t> index_of_episode;
  std::vector<std::vector<bool>> filled;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 9) {
      throw DataError("expected 9 fields, got " +
                          std::to_string(fields.size()),
                      line_no);
    }

    const int episode =
        static_cast<int>(parse_row_long(fields[0], line_no, "episode"));
    const long agent = parse_row_long(fields[1], line_no, "agent");
    if (agent < 0) throw DataError("negative agent index", line_no);

    AgentEpisode ep;
    ep.total_reward = parse_row_double(fields[2], line_no, "total_reward");
    ep.steps =
        static_cast<int>(parse_row_long(fields[3], line_no, "steps"));
    const long success = parse_row_long(fields[4], line_no, "success");
    if (success != 0 && success != 1) {
      throw DataError("success must be 0 or 1", line_no);
    }
    ep.success = success == 1;
    ep.collisions =
        static_cast<int>(parse_row_long(fields[5], line_no, "collisions"));
    ep.epsilon = parse_row_double(fields[6], line_no, "epsilon");
    ep.eta = parse_row_double(fields[7], line_no, "eta");
    ep.curiosity = parse_row_double(fields[8], line_no, "curiosity");

    auto [it, inserted] =
        index_of_episode.try_emplace(episode, records.size());
    if (inserted) {
      records.emplace_back();
      records.back().episode = episode;
      filled.emplace_back();
    }
    EpisodeRecord& rec = records[it->second];
    std::vector<bool>& seen = filled[it->second];
    const auto slot = static_cast<std::size_t>(agent);
    if (slot >= rec.agents.size()) {
      rec.agents.resize(slot + 1);
      seen.resize(slot + 1, false);
    }
    if (seen[slot]) {
      throw DataError("duplicate row for episode " + std::to_string(episode) +
                          " agent " + std::to_string(agent),
                      line_no);
    }
    seen[slot] = true;
    rec.agents[slot] = ep;
  }

  if (records.empty()) return records;
  const std::size_t n_agents = records.front().agents.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].agents.size() != n_agents) {
      throw DataError("episode " + std::to_string(records[i].episode) +
                          " has a different agent count",
                      line_no);
    }
    for (std::size_t a = 0; a < n_agents; ++a) {
      if (!filled[i][a]) {
        throw DataError("episode " + std::to_string(records[i].episode) +
                            " is missing agent " + std::to_string(a),
                        line_no);
      }
    }
  }
  return records;
}

std::string format_summary_txt(const RunSummary& summary) {
  std::ostringstream out;
  out << "Episodes: " << summary.episodes << "\n";
  if (summary.agents.empty()) {
    out << "Success Rate: n/a\n";
    out << "Mean Reward: n/a\n";
    out << "Steps to Goal: n/a\n";
    out << "Reward Variance: n/a\n";
  }
  for (std::size_t a = 0; a < summary.agents.size(); ++a) {
    const AgentSummary& s = summary.agents[a];
    char buf[160];
    out << "Agent " << a << ":\n";
    std::snprintf(buf, sizeof(buf), "  Success Rate: %.2f%%\n",
                  100.0 * s.success_rate);
    out << buf;
    std::snprintf(buf, sizeof(buf), "  Mean Reward: %.6f +/- %.6f\n",
                  s.mean_reward, s.std_reward);
    out << buf;
    std::snprintf(buf, sizeof(buf), "  Steps to Goal: %.6f\n", s.mean_steps);
    out << buf;
    std::snprintf(buf, sizeof(buf), "  Reward Variance: %.6f\n",
                  s.reward_variance);
    out << buf;
    std::snprintf(buf, sizeof(buf), "  Collision Rate: %.2f%%\n",
                  100.0 * s.collision_rate);
    out << buf;
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "Simulation Time: %.3f s\n",
                summary.total_seconds);
  out << buf;
  return out.str();
}

void write_summary_txt(const std::string& path, const RunSummary& summary) {
  write_text_file(path, format_summary_txt(summary));
}

std::string format_summary_json(const RunSummary& summary) {
  nlohmann::json j;
  j["episodes"] = summary.episodes;
  j["simulation_seconds"] = summary.total_seconds;
  j["agents"] = nlohmann::json::array();
  for (const AgentSummary& s : summary.agents) {
    j["agents"].push_back({{"success_rate", s.success_rate},
                           {"mean_reward", s.mean_reward},
                           {"std_reward", s.std_reward},
                           {"reward_variance", s.reward_variance},
                           {"mean_steps", s.mean_steps},
                           {"collision_rate", s.collision_rate}});
  }
  return j.dump(2) + "\n";
}

void write_summary_json(const std::string& path, const RunSummary& summary) {
  write_text_file(path, format_summary_json(summary));
}

void write_run_config(const std::string& path,
                      const config::RunConfig& config) {
  write_text_file(path, config::to_key_values(config));
}

std::string format_comparison(const std::vector<stats::UTestResult>& results,
                              const std::string& name_a,
                              const std::string& name_b) {
  std::ostringstream out;
  out << "Comparison: " << name_a << " vs " << name_b << "\n";
  out << "Per-episode total rewards, Mann-Whitney U (two-sided)\n";
  for (std::size_t a = 0; a < results.size(); ++a) {
    const stats::UTestResult& r = results[a];
    char buf[192];
    if (r.p < 1e-16) {
      std::snprintf(buf, sizeof(buf),
                    "Agent %zu: U=%.1f  z=%.4f  p=< 1e-16  r=%.4f  (n1=%zu, "
                    "n2=%zu)\n",
                    a, r.U, r.z, r.r, r.n1, r.n2);
    } else {
      std::snprintf(buf, sizeof(buf),
                    "Agent %zu: U=%.1f  z=%.4f  p=%.6g  r=%.4f  (n1=%zu, "
                    "n2=%zu)\n",
                    a, r.U, r.z, r.p, r.r, r.n1, r.n2);
    }
    out << buf;
  }
  return out.str();
}

void write_comparison(const std::string& path,
                      const std::vector<stats::UTestResult>& results,
                      const std::string& name_a, const std::string& name_b) {
  write_text_file(path, format_comparison(results, name_a, name_b));
}

std::vector<double> reward_series(const std::vector<EpisodeRecord>& records,
                                  std::size_t agent) {
  std::vector<double> series;
  series.reserve(records.size());
  for (const EpisodeRecord& rec : records) {
    series.push_back(rec.agents.at(agent).total_reward);
  }
  return series;
}

}  // namespace qardns::io
