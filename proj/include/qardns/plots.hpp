// plots.hpp
// Static vector-graphic output: the smoothed reward curve, the reward
// histogram, the steps-to-goal curve, and the running success rate, one
// SVG file each. No interactive display; files are the product.

#pragma once

#include <string>
#include <vector>

#include "qardns/records.hpp"

namespace qardns::plots {

inline constexpr const char* kRewardCurveFile = "reward_curve.svg";
inline constexpr const char* kRewardHistogramFile = "reward_histogram.svg";
inline constexpr const char* kStepsCurveFile = "steps_curve.svg";
inline constexpr const char* kSuccessRateFile = "success_rate.svg";

// Writes all four plots into `dir`. Curves are smoothed with the
// Savitzky-Golay filter (given window/order); series shorter than the
// window are drawn raw with a banner note. Throws ConfigError when a
// file cannot be written.
void write_run_plots(const std::string& dir,
                     const std::vector<EpisodeRecord>& records,
                     int window = 51, int poly_order = 2);

}  // namespace qardns::plots
