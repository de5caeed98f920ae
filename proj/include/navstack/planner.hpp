#ifndef NAVSTACK_PLANNER_HPP_
#define NAVSTACK_PLANNER_HPP_

#include <stdexcept>
#include <vector>

#include "navstack/geometry.hpp"

namespace navstack {

/// Distance inside which the goal is considered reached for control purposes;
/// the polar dynamics are singular at rho = 0.
inline constexpr double kEpsGoal = 0.02;

/// Polar navigation coordinates: distance to goal, heading error to the goal
/// line, and goal-frame approach angle.
struct NavVariables {
    double rho = 0.0;    // m, >= 0
    double alpha = 0.0;  // rad, normalized
    double phi = 0.0;    // rad, normalized
};

struct LyapunovGains {
    double k_v = 0.8;
    double k_alpha = 3.0;
    double h_weight = 1.0;

    void validate() const {
        if (!(k_v > 0.0) || !(k_alpha > 0.0) || !(h_weight > 0.0)) {
            throw std::invalid_argument("LyapunovGains: gains must be positive");
        }
    }
};

struct PotentialFieldParams {
    double k_att = 10.0;
    double k_rep = 10.0;
    double d0 = 0.7;                              // influence radius [m]
    double sector_half_angle = 60.0 * kPi / 180.0;  // frontal sector half-width
    double d_min = 0.05;  // clamp for the 1/d^2 blow-up

    void validate() const {
        if (!(k_att > 0.0) || !(k_rep > 0.0) || !(d0 > 0.0) ||
            !(sector_half_angle > 0.0)) {
            throw std::invalid_argument("PotentialFieldParams: parameters must be positive");
        }
    }
};

struct VelocityCommand {
    double v = 0.0;      // m/s
    double omega = 0.0;  // rad/s
};

struct VelocityLimits {
    double v_max = 0.5;      // m/s
    double omega_max = 1.5;  // rad/s
};

/// Unbounded limits for analytic checks of the raw control laws.
inline VelocityLimits unlimited() {
    return {1e300, 1e300};
}

/// Uniform scale-down to the box limits. A common scale on (v, omega) only
/// reparameterizes time along the commanded arc, so the path is unchanged.
VelocityCommand saturate(const VelocityCommand& cmd, const VelocityLimits& limits);

struct ObstacleReading {
    double distance = 0.0;  // m, > 0
    double bearing = 0.0;   // rad, robot frame
};

enum class GuidanceMode {
    GoalSeek,
    Avoid,
};

NavVariables navigation_variables(const Pose& current, const Pose& goal);

/// V = rho^2/2 + (alpha^2 + h*phi^2)/2.
double lyapunov_value(const NavVariables& nv, const LyapunovGains& gains);

/// v = k_v rho cos(alpha); omega = k_alpha alpha
///   + k_v cos(alpha) (sin(alpha)/alpha) (alpha + h phi).
VelocityCommand lyapunov_control(const NavVariables& nv, const LyapunovGains& gains,
                                 const VelocityLimits& limits = {});

struct NavDerivatives {
    double rho_dot = 0.0;
    double alpha_dot = 0.0;
    double phi_dot = 0.0;
};

/// rho_dot = -v cos(alpha); alpha_dot = -omega + v sin(alpha)/rho;
/// phi_dot = v sin(alpha)/rho. Singular at rho = 0.
NavDerivatives closed_loop_nav_dynamics(const NavVariables& nv, const VelocityCommand& cmd);

/// Attraction per the potential-field gradient: v = k_att * rho, omega turns
/// onto the goal-line bearing. Limits are applied per axis (not ratio-scaled)
/// so the turn rate survives large-distance speed saturation.
VelocityCommand attractive_command(const Pose& robot, const Point2& goal,
                                   const PotentialFieldParams& params,
                                   const VelocityLimits& limits = {});

/// Piecewise repulsive magnitude: 0 beyond d0, otherwise
/// 0.5*k_rep*(1/d - 1/d0)/d^2 with d clamped at d_min.
double repulsive_magnitude(double d_obs, const PotentialFieldParams& params);

VelocityCommand avoidance_command(const Pose& robot, const Point2& goal,
                                  const std::vector<ObstacleReading>& readings,
                                  const PotentialFieldParams& params,
                                  const VelocityLimits& limits = {});

/// Mode switch: avoidance triggers on a frontal-sector reading closer than
/// d0 and releases once all readings clear d0 plus a 0.05 m hysteresis band.
class GuidanceSelector {
public:
    GuidanceMode update(const std::vector<ObstacleReading>& readings,
                        const PotentialFieldParams& params);
    GuidanceMode mode() const { return mode_; }

    static constexpr double kHysteresis = 0.05;

private:
    GuidanceMode mode_ = GuidanceMode::GoalSeek;
};

/// Minimum distance among readings inside the frontal sector, or +inf.
double min_frontal_distance(const std::vector<ObstacleReading>& readings,
                            const PotentialFieldParams& params);

}  // namespace navstack

#endif  // NAVSTACK_PLANNER_HPP_
