#include "qardns/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qardns/errors.hpp"
#include "qardns/io.hpp"
#include "qardns/stats.hpp"

namespace qardns::plots {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 920.0;
constexpr double kTop = 60.0;
constexpr double kBottom = 480.0;
constexpr const char* kAgentColors[2] = {"#1f77b4", "#d62728"};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

struct Scale {
  double min_x = 0.0, max_x = 1.0, min_y = 0.0, max_y = 1.0;

  double px(double x) const {
    return kLeft + (x - min_x) / (max_x - min_x) * (kRight - kLeft);
  }
  double py(double y) const {
    return kBottom - (y - min_y) / (max_y - min_y) * (kBottom - kTop);
  }
};

Scale fit_scale(double min_x, double max_x, double min_y, double max_y) {
  Scale s{min_x, max_x, min_y, max_y};
  if (s.max_x <= s.min_x) s.max_x = s.min_x + 1.0;
  if (s.max_y <= s.min_y) {
    s.min_y -= 1.0;
    s.max_y = s.min_y + 2.0;
  } else {
    const double pad = 0.05 * (s.max_y - s.min_y);
    s.min_y -= pad;
    s.max_y += pad;
  }
  return s;
}

void open_svg(std::ostringstream& out, const std::string& title,
              const std::string& banner) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << (kWidth / 2)
      << "\" y=\"28\" font-family=\"sans-serif\" font-size=\"18\" "
         "text-anchor=\"middle\">"
      << title << "</text>\n";
  if (!banner.empty()) {
    out << "<text x=\"" << (kWidth / 2)
        << "\" y=\"48\" font-family=\"sans-serif\" font-size=\"13\" "
           "fill=\"#b36b00\" text-anchor=\"middle\">"
        << banner << "</text>\n";
  }
}

void draw_axes(std::ostringstream& out, const Scale& s,
               const std::string& x_label, const std::string& y_label) {
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\""
      << kRight << "\" y2=\"" << kBottom
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kBottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = s.min_x + (s.max_x - s.min_x) * i / kTicks;
    const double fy = s.min_y + (s.max_y - s.min_y) * i / kTicks;
    const double tx = s.px(fx);
    const double ty = s.py(fy);
    out << "<line x1=\"" << tx << "\" y1=\"" << kBottom << "\" x2=\"" << tx
        << "\" y2=\"" << (kBottom + 5) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << tx << "\" y=\"" << (kBottom + 20)
        << "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"middle\">"
        << num(fx) << "</text>\n"
        << "<line x1=\"" << (kLeft - 5) << "\" y1=\"" << ty << "\" x2=\""
        << kLeft << "\" y2=\"" << ty << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << (kLeft - 8) << "\" y=\"" << (ty + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"end\">"
        << num(fy) << "</text>\n";
  }
  out << "<text x=\"" << ((kLeft + kRight) / 2) << "\" y=\""
      << (kBottom + 38)
      << "\" font-family=\"sans-serif\" font-size=\"13\" "
         "text-anchor=\"middle\">"
      << x_label << "</text>\n"
      << "<text x=\"18\" y=\"" << ((kTop + kBottom) / 2)
      << "\" font-family=\"sans-serif\" font-size=\"13\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << ((kTop + kBottom) / 2) << ")\">" << y_label << "</text>\n";
}

void draw_series(std::ostringstream& out, const Scale& s,
                 const std::vector<double>& ys, const char* color) {
  if (ys.empty()) return;
  out << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.2\" points=\"";
  for (std::size_t i = 0; i < ys.size(); ++i) {
    out << s.px(static_cast<double>(i)) << ',' << s.py(ys[i]);
    if (i + 1 < ys.size()) out << ' ';
  }
  out << "\"/>\n";
}

void draw_legend(std::ostringstream& out, std::size_t n_agents) {
  for (std::size_t a = 0; a < n_agents && a < 2; ++a) {
    const double y = kTop + 16.0 + 18.0 * static_cast<double>(a);
    out << "<line x1=\"" << (kRight - 130) << "\" y1=\"" << y << "\" x2=\""
        << (kRight - 100) << "\" y2=\"" << y << "\" stroke=\""
        << kAgentColors[a] << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << (kRight - 94) << "\" y=\"" << (y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">agent " << a
        << "</text>\n";
  }
}

void close_svg(std::ostringstream& out) { out << "</svg>\n"; }

void save(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << content;
  if (!out) throw ConfigError("failed while writing: " + path);
}

void write_curve_plot(const std::string& path, const std::string& title,
                      const std::string& y_label,
                      const std::vector<std::vector<double>>& per_agent,
                      int window, int poly_order) {
  std::vector<std::vector<double>> curves;
  bool any_unsmoothed = false;
  for (const std::vector<double>& raw : per_agent) {
    stats::SmoothResult smooth = stats::savitzky_golay(raw, window, poly_order);
    if (!smooth.smoothed) any_unsmoothed = true;
    curves.push_back(std::move(smooth.values));
  }

  double lo = 0.0, hi = 1.0;
  std::size_t len = 0;
  bool first = true;
  for (const auto& c : curves) {
    for (double v : c) {
      if (first) {
        lo = hi = v;
        first = false;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    len = std::max(len, c.size());
  }

  std::ostringstream out;
  std::string banner;
  if (len == 0) {
    banner = "no data";
  } else if (any_unsmoothed) {
    banner = "raw series: shorter than the smoothing window (" +
             std::to_string(window) + ")";
  }
  open_svg(out, title, banner);
  const Scale s = fit_scale(0.0, static_cast<double>(len > 0 ? len - 1 : 1),
                            lo, hi);
  draw_axes(out, s, "episode", y_label);
  for (std::size_t a = 0; a < curves.size(); ++a) {
    draw_series(out, s, curves[a], kAgentColors[a % 2]);
  }
  draw_legend(out, curves.size());
  close_svg(out);
  save(path, out.str());
}

void write_histogram_plot(const std::string& path,
                          const std::vector<std::vector<double>>& per_agent) {
  constexpr int kBins = 30;
  double lo = 0.0, hi = 1.0;
  bool first = true;
  for (const auto& series : per_agent) {
    for (double v : series) {
      if (first) {
        lo = hi = v;
        first = false;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (first) {
    std::ostringstream out;
    open_svg(out, "Reward distribution", "no data");
    close_svg(out);
    save(path, out.str());
    return;
  }
  if (hi <= lo) hi = lo + 1.0;

  std::vector<std::vector<double>> hists;
  double peak = 0.0;
  for (const auto& series : per_agent) {
    std::vector<double> h(kBins, 0.0);
    for (double v : series) {
      int bin = static_cast<int>((v - lo) / (hi - lo) * kBins);
      bin = std::clamp(bin, 0, kBins - 1);
      h[static_cast<std::size_t>(bin)] += 1.0;
    }
    for (double c : h) peak = std::max(peak, c);
    hists.push_back(std::move(h));
  }

  std::ostringstream out;
  open_svg(out, "Reward distribution", "");
  const Scale s = fit_scale(lo, hi, 0.0, peak);
  draw_axes(out, s, "episode total reward", "episodes");
  const double bin_w = (hi - lo) / kBins;
  for (std::size_t a = 0; a < hists.size(); ++a) {
    for (int b = 0; b < kBins; ++b) {
      const double count = hists[a][static_cast<std::size_t>(b)];
      if (count <= 0.0) continue;
      const double x0 = s.px(lo + b * bin_w);
      const double x1 = s.px(lo + (b + 1) * bin_w);
      const double y0 = s.py(count);
      out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\""
          << (x1 - x0) << "\" height=\"" << (s.py(0.0) - y0) << "\" fill=\""
          << kAgentColors[a % 2] << "\" fill-opacity=\"0.45\"/>\n";
    }
  }
  draw_legend(out, hists.size());
  close_svg(out);
  save(path, out.str());
}

}  // namespace

void write_run_plots(const std::string& dir,
                     const std::vector<EpisodeRecord>& records, int window,
                     int poly_order) {
  const std::size_t n_agents =
      records.empty() ? 0 : records.front().agents.size();

  std::vector<std::vector<double>> rewards;
  std::vector<std::vector<double>> steps;
  std::vector<std::vector<double>> running_success;
  for (std::size_t a = 0; a < n_agents; ++a) {
    rewards.push_back(io::reward_series(records, a));
    std::vector<double> st;
    std::vector<double> succ;
    st.reserve(records.size());
    succ.reserve(records.size());
    long hits = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      st.push_back(static_cast<double>(records[i].agents[a].steps));
      if (records[i].agents[a].success) ++hits;
      succ.push_back(static_cast<double>(hits) /
                     static_cast<double>(i + 1));
    }
    steps.push_back(std::move(st));
    running_success.push_back(std::move(succ));
  }

  write_curve_plot(dir + "/" + kRewardCurveFile,
                   "Per-episode total reward (smoothed)", "total reward",
                   rewards, window, poly_order);
  write_histogram_plot(dir + "/" + kRewardHistogramFile, rewards);
  write_curve_plot(dir + "/" + kStepsCurveFile,
                   "Steps per episode (smoothed)", "steps", steps, window,
                   poly_order);
  // The running average is already a cumulative statistic; no smoothing.
  std::ostringstream out;
  open_svg(out, "Running success rate",
           records.empty() ? "no data" : "");
  const Scale s = fit_scale(
      0.0, static_cast<double>(records.empty() ? 1 : records.size() - 1),
      0.0, 1.0);
  draw_axes(out, s, "episode", "success rate");
  for (std::size_t a = 0; a < running_success.size(); ++a) {
    draw_series(out, s, running_success[a], kAgentColors[a % 2]);
  }
  draw_legend(out, running_success.size());
  close_svg(out);
  save(dir + "/" + kSuccessRateFile, out.str());
}

}  // namespace qardns::plots
