#pragma once

#include "sqz/cli/config.hpp"

#include <string>
#include <vector>

namespace sqz::cli {

struct TrajectoryRow {
    double tau, x, p, var_x, var_p, cov_xp, product;
};

using Trajectory = std::vector<TrajectoryRow>;

inline constexpr const char* kTrajectoryHeader = "tau,x,p,var_x,var_p,cov_xp,product";

// 17 significant digits so values survive a round trip.
std::string format_number(double v);

void write_trajectory_csv(const std::string& path, const Trajectory& rows);
Trajectory read_trajectory_csv(const std::string& path);
void write_trajectory_json(const std::string& path, const Trajectory& rows,
                           const nlohmann::json& meta = {});

// Standalone SVG: one polyline with axes and min/max tick labels.
void write_svg_plot(const std::string& path, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<double>& xs,
                    const std::vector<double>& ys);

// "run" -> "run.csv"; a trailing .csv, .json or .svg is replaced.
std::string with_extension(const std::string& path, const std::string& ext);
std::string strip_extension(const std::string& path);

} // namespace sqz::cli
