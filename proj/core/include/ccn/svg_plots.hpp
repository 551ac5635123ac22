#pragma once

#include <filesystem>
#include <vector>

#include "ccn/anchor_tests.hpp"
#include "ccn/experiment.hpp"

namespace ccn {

/// One SVG per noise setting: rows = n, columns = delta, x-axis = k, with
/// clean-fit (green) and noisy-fit (purple) p-value boxes and reference
/// lines at 0.10 and 0.05. Returns the files written.
std::vector<std::filesystem::path> write_box_plot_panels(const ExperimentConfig& config,
                                                         const ExperimentSummary& summary,
                                                         const std::filesystem::path& dir);

/// Power against beta - alpha, one line per k.
void write_power_curve_svg(const std::vector<PowerCurvePoint>& points, const std::filesystem::path& path);

}  // namespace ccn
