#include "qardns/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qardns::stats {

namespace {

void validate_filter_args(int window, int poly_order) {
  if (window < 1 || window % 2 == 0) {
    throw std::invalid_argument("savitzky_golay window must be odd");
  }
  if (poly_order < 0 || poly_order >= window) {
    throw std::invalid_argument(
        "savitzky_golay poly_order must be in [0, window)");
  }
}

// Least-squares fit of a degree-`order` polynomial through
// series[lo..hi], evaluated at position `at` (abscissae centred there
// for conditioning).
double polyfit_value_at(const std::vector<double>& series, int lo, int hi,
                        int at, int order) {
  const int count = hi - lo + 1;
  const int effective = std::min(order, count - 1);
  Eigen::MatrixXd A(count, effective + 1);
  Eigen::VectorXd y(count);
  for (int j = 0; j < count; ++j) {
    const double x = static_cast<double>(lo + j - at);
    double pw = 1.0;
    for (int k = 0; k <= effective; ++k) {
      A(j, k) = pw;
      pw *= x;
    }
    y(j) = series[static_cast<std::size_t>(lo + j)];
  }
  const Eigen::VectorXd coeffs = A.colPivHouseholderQr().solve(y);
  return coeffs(0);
}

}  // namespace

std::vector<double> savitzky_golay_weights(int window, int poly_order) {
  validate_filter_args(window, poly_order);
  const int half = (window - 1) / 2;
  Eigen::MatrixXd A(window, poly_order + 1);
  for (int j = 0; j < window; ++j) {
    const double x = static_cast<double>(j - half);
    double pw = 1.0;
    for (int k = 0; k <= poly_order; ++k) {
      A(j, k) = pw;
      pw *= x;
    }
  }
  // Central fitted value = first row of (A^T A)^{-1} A^T applied to y.
  const Eigen::MatrixXd pseudo =
      (A.transpose() * A).ldlt().solve(A.transpose());
  std::vector<double> weights(static_cast<std::size_t>(window));
  for (int j = 0; j < window; ++j) {
    weights[static_cast<std::size_t>(j)] = pseudo(0, j);
  }
  return weights;
}

SmoothResult savitzky_golay(const std::vector<double>& series, int window,
                            int poly_order) {
  validate_filter_args(window, poly_order);
  SmoothResult out;
  const int n = static_cast<int>(series.size());
  if (n < window) {
    out.values = series;
    out.smoothed = false;
    return out;
  }

  const int half = (window - 1) / 2;
  const std::vector<double> weights = savitzky_golay_weights(window, poly_order);
  out.values.resize(series.size());
  for (int i = 0; i < n; ++i) {
    if (i >= half && i < n - half) {
      double acc = 0.0;
      for (int j = 0; j < window; ++j) {
        acc += weights[static_cast<std::size_t>(j)] *
               series[static_cast<std::size_t>(i - half + j)];
      }
      out.values[static_cast<std::size_t>(i)] = acc;
    } else {
      const int lo = std::max(0, i - half);
      const int hi = std::min(n - 1, i + half);
      out.values[static_cast<std::size_t>(i)] =
          polyfit_value_at(series, lo, hi, i, poly_order);
    }
  }
  return out;
}

UTestResult mann_whitney_u(const std::vector<double>& a,
                           const std::vector<double>& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("mann_whitney_u: samples must be non-empty");
  }
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t N = n1 + n2;

  struct Tagged {
    double value;
    bool from_a;
  };
  std::vector<Tagged> pooled;
  pooled.reserve(N);
  for (double v : a) pooled.push_back({v, true});
  for (double v : b) pooled.push_back({v, false});
  std::sort(pooled.begin(), pooled.end(),
            [](const Tagged& x, const Tagged& y) { return x.value < y.value; });

  // Midranks and the tie correction term sum(t^3 - t) in one sweep.
  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < N) {
    std::size_t j = i;
    while (j < N && pooled[j].value == pooled[i].value) ++j;
    const double t = static_cast<double>(j - i);
    // Positions i..j-1 share the average of ranks i+1 .. j.
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].from_a) rank_sum_a += midrank;
    }
    tie_term += t * t * t - t;
    i = j;
  }

  UTestResult result;
  result.n1 = n1;
  result.n2 = n2;
  const double dn1 = static_cast<double>(n1);
  const double dn2 = static_cast<double>(n2);
  const double dN = static_cast<double>(N);
  result.U = rank_sum_a - dn1 * (dn1 + 1.0) / 2.0;

  const double mean_u = dn1 * dn2 / 2.0;
  double var_u = dn1 * dn2 / 12.0 * ((dN + 1.0) - tie_term / (dN * (dN - 1.0)));
  if (var_u < 0.0) var_u = 0.0;  // guard against rounding at total degeneracy

  const double d = result.U - mean_u;
  if (var_u > 0.0 && d != 0.0) {
    const double shrunk = std::max(0.0, std::abs(d) - 0.5);
    result.z = (d > 0.0 ? shrunk : -shrunk) / std::sqrt(var_u);
  } else {
    result.z = 0.0;
  }
  result.p = std::erfc(std::abs(result.z) / std::sqrt(2.0));
  result.r = result.z / std::sqrt(dN);
  return result;
}

RunSummary summarize(const std::vector<EpisodeRecord>& records) {
  RunSummary summary;
  summary.episodes = static_cast<int>(records.size());
  if (records.empty()) return summary;

  const std::size_t n_agents = records.front().agents.size();
  summary.agents.resize(n_agents);
  summary.total_seconds = std::accumulate(
      records.begin(), records.end(), 0.0,
      [](double acc, const EpisodeRecord& r) { return acc + r.wall_seconds; });

  const double n = static_cast<double>(records.size());
  for (std::size_t a = 0; a < n_agents; ++a) {
    AgentSummary& s = summary.agents[a];
    double reward_sum = 0.0;
    double steps_sum = 0.0;
    long successes = 0;
    long collisions = 0;
    long total_steps = 0;
    for (const EpisodeRecord& rec : records) {
      const AgentEpisode& ep = rec.agents[a];
      reward_sum += ep.total_reward;
      steps_sum += static_cast<double>(ep.steps);
      successes += ep.success ? 1 : 0;
      collisions += ep.collisions;
      total_steps += ep.steps;
    }
    s.success_rate = static_cast<double>(successes) / n;
    s.mean_reward = reward_sum / n;
    double var = 0.0;
    for (const EpisodeRecord& rec : records) {
      const double d = rec.agents[a].total_reward - s.mean_reward;
      var += d * d;
    }
    s.reward_variance = var / n;
    s.std_reward = std::sqrt(s.reward_variance);
    s.mean_steps = steps_sum / n;
    s.collision_rate = total_steps > 0 ? static_cast<double>(collisions) /
                                             static_cast<double>(total_steps)
                                       : 0.0;
  }
  return summary;
}

}  // namespace qardns::stats
