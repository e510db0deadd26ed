// stats.hpp
// Analysis pipeline: Savitzky-Golay smoothing of learning curves,
// Mann-Whitney U tests with tie handling and effect sizes, and the
// run-summary reduction.

#pragma once

#include <cstddef>
#include <vector>

#include "qardns/records.hpp"

namespace qardns::stats {

struct SmoothResult {
  std::vector<double> values;
  // False when the series was shorter than the window and is returned
  // unsmoothed.
  bool smoothed = true;
};

// Convolution weights for the window's central point: the smoothed value
// is the dot product of these with the raw window. Exposed so the filter
// can be checked against its defining least-squares property. Throws
// std::invalid_argument for an even window or poly_order >= window.
std::vector<double> savitzky_golay_weights(int window, int poly_order);

// Least-squares polynomial smoothing (defaults: window 51, order 2).
// Interior points use the central convolution weights; points within half
// a window of either end are refit on the truncated asymmetric window
// with the order reduced to the available point count minus one.
SmoothResult savitzky_golay(const std::vector<double>& series, int window = 51,
                            int poly_order = 2);

struct UTestResult {
  double U = 0.0;        // rank-sum statistic of the first sample
  double z = 0.0;        // normal approximation, continuity-corrected
  double p = 1.0;        // two-sided
  double r = 0.0;        // effect size z / sqrt(n1 + n2), signed
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

// Midranks for ties, tie-corrected variance, continuity correction that
// shrinks |U - mean| by 0.5 (never crossing zero). Throws
// std::invalid_argument when either sample is empty.
UTestResult mann_whitney_u(const std::vector<double>& a,
                           const std::vector<double>& b);

// Per-agent success rate, mean/std/variance of episode rewards
// (population convention), mean steps over all episodes, and collision
// rate (colliding steps / total steps). Zero episodes yield an empty
// agents list.
RunSummary summarize(const std::vector<EpisodeRecord>& records);

}  // namespace qardns::stats
