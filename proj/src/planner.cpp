#include "navstack/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace navstack {

namespace {

// sin(a)/a with the series limit at the origin.
double sinc(double a) {
    if (std::abs(a) < 1e-6) {
        return 1.0 - a * a / 6.0;
    }
    return std::sin(a) / a;
}

double clamp_abs(double x, double lim) {
    return std::max(-lim, std::min(x, lim));
}

// Independent per-axis clamp for the potential-field laws: their raw v grows
// with distance, so a ratio-preserving scale would freeze the turn rate far
// from the goal.
VelocityCommand box_clamp(const VelocityCommand& cmd, const VelocityLimits& limits) {
    return {clamp_abs(cmd.v, limits.v_max), clamp_abs(cmd.omega, limits.omega_max)};
}

}  // namespace

VelocityCommand saturate(const VelocityCommand& cmd, const VelocityLimits& limits) {
    double s = 1.0;
    if (std::abs(cmd.v) > limits.v_max) {
        s = std::min(s, limits.v_max / std::abs(cmd.v));
    }
    if (std::abs(cmd.omega) > limits.omega_max) {
        s = std::min(s, limits.omega_max / std::abs(cmd.omega));
    }
    return {cmd.v * s, cmd.omega * s};
}

NavVariables navigation_variables(const Pose& current, const Pose& goal) {
    NavVariables nv;
    const double dx = goal.x - current.x;
    const double dy = goal.y - current.y;
    nv.rho = std::hypot(dx, dy);
    if (nv.rho < kEpsGoal) {
        nv.alpha = 0.0;
        nv.phi = 0.0;
        return nv;
    }
    const double line = std::atan2(dy, dx);
    nv.phi = normalize_angle(line - goal.theta);
    nv.alpha = normalize_angle(line - current.theta);
    return nv;
}

double lyapunov_value(const NavVariables& nv, const LyapunovGains& gains) {
    return 0.5 * nv.rho * nv.rho +
           0.5 * (nv.alpha * nv.alpha + gains.h_weight * nv.phi * nv.phi);
}

VelocityCommand lyapunov_control(const NavVariables& nv, const LyapunovGains& gains,
                                 const VelocityLimits& limits) {
    gains.validate();
    const double ca = std::cos(nv.alpha);
    VelocityCommand cmd;
    cmd.v = gains.k_v * nv.rho * ca;
    cmd.omega = gains.k_alpha * nv.alpha +
                gains.k_v * ca * sinc(nv.alpha) * (nv.alpha + gains.h_weight * nv.phi);
    return saturate(cmd, limits);
}

NavDerivatives closed_loop_nav_dynamics(const NavVariables& nv, const VelocityCommand& cmd) {
    if (!(nv.rho > kEpsGoal)) {
        throw std::invalid_argument("closed_loop_nav_dynamics: singular at rho <= eps_goal");
    }
    NavDerivatives d;
    d.rho_dot = -cmd.v * std::cos(nv.alpha);
    d.phi_dot = cmd.v * std::sin(nv.alpha) / nv.rho;
    d.alpha_dot = -cmd.omega + d.phi_dot;
    return d;
}

VelocityCommand attractive_command(const Pose& robot, const Point2& goal,
                                   const PotentialFieldParams& params,
                                   const VelocityLimits& limits) {
    params.validate();
    const double rho = distance({robot.x, robot.y}, goal);
    if (rho < 1e-12) {
        return {0.0, 0.0};
    }
    const double theta_goal = bearing_to({robot.x, robot.y}, goal);
    VelocityCommand cmd;
    // -k_att[(X - Xg)cos(tg) + (Y - Yg)sin(tg)] == k_att * rho
    cmd.v = -params.k_att * ((robot.x - goal.x) * std::cos(theta_goal) +
                             (robot.y - goal.y) * std::sin(theta_goal));
    cmd.omega = -params.k_att * normalize_angle(robot.theta - theta_goal);
    return box_clamp(cmd, limits);
}

double repulsive_magnitude(double d_obs, const PotentialFieldParams& params) {
    params.validate();
    if (!(d_obs > 0.0)) {
        throw std::invalid_argument("repulsive_magnitude: distance must be positive");
    }
    if (d_obs >= params.d0) {
        return 0.0;
    }
    const double d = std::max(d_obs, params.d_min);
    return 0.5 * params.k_rep * (1.0 / d - 1.0 / params.d0) / (d * d);
}

double min_frontal_distance(const std::vector<ObstacleReading>& readings,
                            const PotentialFieldParams& params) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : readings) {
        if (std::abs(normalize_angle(r.bearing)) <= params.sector_half_angle) {
            best = std::min(best, r.distance);
        }
    }
    return best;
}

VelocityCommand avoidance_command(const Pose& robot, const Point2& goal,
                                  const std::vector<ObstacleReading>& readings,
                                  const PotentialFieldParams& params,
                                  const VelocityLimits& limits) {
    params.validate();

    // Nearest obstacle inside the frontal sector and influence radius; the
    // side is decided by where the in-range obstacle mass sits, which stays
    // well defined when the nearest point is dead ahead.
    const ObstacleReading* nearest = nullptr;
    double bearing_sum = 0.0;
    for (const auto& r : readings) {
        if (r.distance < params.d0 &&
            std::abs(normalize_angle(r.bearing)) <= params.sector_half_angle) {
            bearing_sum += normalize_angle(r.bearing);
            if (nearest == nullptr || r.distance < nearest->distance) {
                nearest = &r;
            }
        }
    }
    if (nearest == nullptr) {
        return attractive_command(robot, goal, params, limits);
    }

    const double rho = distance({robot.x, robot.y}, goal);
    if (rho < 1e-12) {
        return {0.0, 0.0};
    }
    const double theta_goal = bearing_to({robot.x, robot.y}, goal);
    // Obstacle mass on the front-right steers to the goal line + sector, on
    // the front-left to the goal line - sector.
    const double offset =
        bearing_sum < 0.0 ? params.sector_half_angle : -params.sector_half_angle;
    const double theta_obs = normalize_angle(theta_goal + offset);

    const double v_att = params.k_att * rho;
    VelocityCommand cmd;
    cmd.v = std::max(0.0, v_att - repulsive_magnitude(nearest->distance, params));
    cmd.omega = -params.k_att * normalize_angle(robot.theta - theta_obs);
    return box_clamp(cmd, limits);
}

GuidanceMode GuidanceSelector::update(const std::vector<ObstacleReading>& readings,
                                      const PotentialFieldParams& params) {
    if (mode_ == GuidanceMode::GoalSeek) {
        if (min_frontal_distance(readings, params) < params.d0) {
            mode_ = GuidanceMode::Avoid;
        }
    } else {
        // Release on clearance in every direction, not just the frontal
        // sector: while avoiding, the robot turns away and the obstacle would
        // otherwise drop out of the sector and re-trigger on the turn back.
        double d = std::numeric_limits<double>::infinity();
        for (const auto& r : readings) {
            d = std::min(d, r.distance);
        }
        if (d >= params.d0 + kHysteresis) {
            mode_ = GuidanceMode::GoalSeek;
        }
    }
    return mode_;
}

}  // namespace navstack
