#ifndef NAVSTACK_PLOTS_HPP_
#define NAVSTACK_PLOTS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "navstack/geometry.hpp"
#include "navstack/scan_mapper.hpp"

namespace navstack {

/// One parsed row of the trajectory CSV. Plots consume only this, so they are
/// a pure function of the logged data.
struct CsvRow {
    double t = 0.0;
    double x_true = 0.0, y_true = 0.0, theta_true = 0.0;
    double x_est = 0.0, y_est = 0.0, theta_est = 0.0;
    double cov_trace = 0.0;
    double v = 0.0, omega = 0.0;
    double rho = 0.0, alpha = 0.0, phi = 0.0;
    double lyapunov = 0.0;
    std::string mode;
};

std::vector<CsvRow> parse_trajectory_csv(std::istream& is);

/// True and estimated paths over the obstacle map points.
void svg_trajectory(std::ostream& os, const std::vector<CsvRow>& rows,
                    const ObstacleMap& map);

/// v(t) and omega(t) panels.
void svg_velocities(std::ostream& os, const std::vector<CsvRow>& rows);

/// V(t), log-free descent view.
void svg_lyapunov(std::ostream& os, const std::vector<CsvRow>& rows);

/// Overlay of one true path with several estimated paths (labelled).
struct LabelledPath {
    std::string label;
    std::vector<Point2> points;
};
void svg_overlay(std::ostream& os, const std::vector<LabelledPath>& paths);

/// Scatter of map points.
void svg_map(std::ostream& os, const ObstacleMap& map);

}  // namespace navstack

#endif  // NAVSTACK_PLOTS_HPP_
