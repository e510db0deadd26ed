#include "qardns/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qardns/errors.hpp"

namespace qardns::config {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

long parse_long(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long value = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("expected integer for " + what + ", got '" + text + "'");
  }
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return static_cast<std::uint64_t>(value);
  } catch (const std::exception&) {
    throw ConfigError("expected unsigned integer for " + what + ", got '" +
                      text + "'");
  }
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("expected number for " + what + ", got '" + text + "'");
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

constexpr const char* kStageHeader =
    "first_episode,last_episode,eta,epsilon_min,alpha_s,alpha_l,alpha_shared,"
    "curiosity,beta,gamma,shots";

}  // namespace

StageSchedule::StageSchedule(std::vector<StageRow> rows)
    : rows_(std::move(rows)) {
  if (rows_.empty()) {
    throw ConfigError("stage schedule must have at least one row");
  }
  if (rows_.front().first_episode != 0) {
    throw ConfigError("stage schedule must start at episode 0");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const StageRow& row = rows_[i];
    const bool last = i + 1 == rows_.size();
    if (last) {
      if (row.last_episode != -1) {
        throw ConfigError(
            "final stage row must be open-ended (last_episode = -1)");
      }
    } else {
      if (row.last_episode < row.first_episode) {
        throw ConfigError("stage row " + std::to_string(i) +
                          " has last_episode before first_episode");
      }
      if (rows_[i + 1].first_episode != row.last_episode + 1) {
        throw ConfigError("stage rows " + std::to_string(i) + " and " +
                          std::to_string(i + 1) +
                          " do not form a contiguous partition");
      }
    }
    if (row.shots < 1) {
      throw ConfigError("stage row " + std::to_string(i) +
                        " has non-positive shots");
    }
  }
}

StageSchedule StageSchedule::defaults() {
  std::vector<StageRow> rows(4);
  rows[0] = {0, 1000, 1.40, 0.9, 0.70, 0.80, 0.9, 2.0, 0.1, 0.01, 16};
  rows[1] = {1001, 2000, 1.05, 0.6, 0.80, 0.90, 0.9, 1.5, 0.1, 0.01, 16};
  rows[2] = {2001, 3000, 0.84, 0.3, 0.85, 0.95, 0.9, 1.0, 0.1, 0.01, 16};
  rows[3] = {3001, -1, 0.70, 0.2, 0.90, 0.98, 0.9, 1.0, 0.1, 0.01, 16};
  return StageSchedule(std::move(rows));
}

StageSchedule StageSchedule::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stage override file: " + path);

  std::string line;
  long line_no = 0;
  std::vector<StageRow> rows;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    if (!saw_header) {
      if (stripped != kStageHeader) {
        throw ConfigError("stage override line " + std::to_string(line_no) +
                          ": expected header '" + kStageHeader + "'");
      }
      saw_header = true;
      continue;
    }
    const std::vector<std::string> f = split_csv(stripped);
    if (f.size() != 11) {
      throw ConfigError("stage override line " + std::to_string(line_no) +
                        ": expected 11 fields, got " +
                        std::to_string(f.size()));
    }
    const std::string where = "stage override line " + std::to_string(line_no);
    StageRow row;
    row.first_episode = parse_long(f[0], where + " first_episode");
    row.last_episode = parse_long(f[1], where + " last_episode");
    row.eta = parse_double(f[2], where + " eta");
    row.epsilon_min = parse_double(f[3], where + " epsilon_min");
    row.alpha_s = parse_double(f[4], where + " alpha_s");
    row.alpha_l = parse_double(f[5], where + " alpha_l");
    row.alpha_shared = parse_double(f[6], where + " alpha_shared");
    row.curiosity = parse_double(f[7], where + " curiosity");
    row.beta = parse_double(f[8], where + " beta");
    row.gamma = parse_double(f[9], where + " gamma");
    row.shots = static_cast<int>(parse_long(f[10], where + " shots"));
    rows.push_back(row);
  }
  if (!saw_header) {
    throw ConfigError("stage override file is empty: " + path);
  }
  return StageSchedule(std::move(rows));
}

const StageRow& StageSchedule::row_for(long episode) const {
  return rows_[index_for(episode)];
}

std::size_t StageSchedule::index_for(long episode) const {
  if (episode < 0) {
    throw std::invalid_argument("episode index must be non-negative");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const StageRow& row = rows_[i];
    if (episode >= row.first_episode &&
        (row.last_episode == -1 || episode <= row.last_episode)) {
      return i;
    }
  }
  throw std::invalid_argument("episode " + std::to_string(episode) +
                              " not covered by stage schedule");
}

void RunConfig::validate() const {
  if (episodes < 0) throw ConfigError("episodes must be non-negative");
  if (shots < 1) throw ConfigError("shots must be at least 1");
  if (n_qubits != 2 && n_qubits != 3) {
    throw ConfigError("n_qubits must be 2 or 3");
  }
  if (learner != "qardns" && learner != "baseline") {
    throw ConfigError("learner must be 'qardns' or 'baseline', got '" +
                      learner + "'");
  }
  if (grid.n_agents != 2) {
    throw ConfigError(
        "n_agents must be 2 (shared memory and the balance penalty are "
        "defined for an agent pair)");
  }
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

StageSchedule RunConfig::schedule() const {
  if (!stage_override_path.empty()) {
    return StageSchedule::from_csv(stage_override_path);
  }
  // The built-in schedule inherits the configured shot count; an explicit
  // override file's shots column stands as written.
  StageSchedule schedule = StageSchedule::defaults();
  std::vector<StageRow> rows = schedule.rows();
  for (StageRow& row : rows) row.shots = shots;
  return StageSchedule(std::move(rows));
}

std::map<std::string, std::string> load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> pairs;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value, got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key");
    }
    pairs[key] = value;
  }
  return pairs;
}

void apply_key_values(RunConfig& config,
                      const std::map<std::string, std::string>& pairs) {
  for (const auto& [key, value] : pairs) {
    if (key == "episodes") {
      config.episodes = parse_long(value, key);
    } else if (key == "seed") {
      config.seed = parse_u64(value, key);
    } else if (key == "size_x") {
      config.grid.size_x = static_cast<int>(parse_long(value, key));
    } else if (key == "size_y") {
      config.grid.size_y = static_cast<int>(parse_long(value, key));
    } else if (key == "size_z") {
      config.grid.size_z = static_cast<int>(parse_long(value, key));
    } else if (key == "goal_x") {
      config.grid.goal.x = static_cast<int>(parse_long(value, key));
    } else if (key == "goal_y") {
      config.grid.goal.y = static_cast<int>(parse_long(value, key));
    } else if (key == "goal_z") {
      config.grid.goal.z = static_cast<int>(parse_long(value, key));
    } else if (key == "obstacle_fraction") {
      config.grid.obstacle_fraction = parse_double(value, key);
    } else if (key == "obstacle_refresh_every") {
      config.grid.obstacle_refresh_every =
          static_cast<int>(parse_long(value, key));
    } else if (key == "max_steps") {
      config.grid.max_steps = static_cast<int>(parse_long(value, key));
    } else if (key == "n_agents") {
      config.grid.n_agents = static_cast<int>(parse_long(value, key));
    } else if (key == "n_qubits") {
      config.n_qubits = static_cast<int>(parse_long(value, key));
    } else if (key == "shots") {
      config.shots = static_cast<int>(parse_long(value, key));
    } else if (key == "learner") {
      config.learner = value;
    } else if (key == "output_dir") {
      config.output_dir = value;
    } else if (key == "stage_override") {
      config.stage_override_path = value;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

std::string to_key_values(const RunConfig& config) {
  std::ostringstream out;
  out << "episodes=" << config.episodes << "\n";
  out << "seed=" << config.seed << "\n";
  out << "size_x=" << config.grid.size_x << "\n";
  out << "size_y=" << config.grid.size_y << "\n";
  out << "size_z=" << config.grid.size_z << "\n";
  out << "goal_x=" << config.grid.goal.x << "\n";
  out << "goal_y=" << config.grid.goal.y << "\n";
  out << "goal_z=" << config.grid.goal.z << "\n";
  out << "obstacle_fraction=" << format_double(config.grid.obstacle_fraction)
      << "\n";
  out << "obstacle_refresh_every=" << config.grid.obstacle_refresh_every
      << "\n";
  out << "max_steps=" << config.grid.max_steps << "\n";
  out << "n_agents=" << config.grid.n_agents << "\n";
  out << "n_qubits=" << config.n_qubits << "\n";
  out << "shots=" << config.shots << "\n";
  out << "learner=" << config.learner << "\n";
  out << "output_dir=" << config.output_dir << "\n";
  out << "stage_override=" << config.stage_override_path << "\n";
  return out.str();
}

}  // namespace qardns::config
