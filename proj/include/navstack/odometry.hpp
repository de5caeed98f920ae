#ifndef NAVSTACK_ODOMETRY_HPP_
#define NAVSTACK_ODOMETRY_HPP_

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "navstack/geometry.hpp"

namespace navstack {

struct RobotGeometry {
    double wheel_radius = 0.1;   // R [m]
    double wheelbase = 0.5;      // L, distance between the wheels [m]
    double body_radius = 0.25;   // clearance checks [m]
    double body_height = 1.0;    // must stay below the 1.2 m pass-under limit

    void validate() const {
        if (wheel_radius <= 0.0 || wheelbase <= 0.0 || body_radius <= 0.0 ||
            body_height <= 0.0) {
            throw std::invalid_argument("RobotGeometry: all dimensions must be positive");
        }
        if (body_height >= 1.2) {
            throw std::invalid_argument("RobotGeometry: body_height must be < 1.2 m");
        }
    }
};

struct WheelSpeeds {
    double omega_left = 0.0;   // rad/s
    double omega_right = 0.0;  // rad/s
};

/// Per-step wheel and body displacement increments.
/// ds == (ds_left + ds_right)/2 and dtheta == (ds_right - ds_left)/L hold
/// exactly by construction.
struct OdometryIncrement {
    double ds_left = 0.0;   // m
    double ds_right = 0.0;  // m
    double ds = 0.0;        // m
    double dtheta = 0.0;    // rad
};

inline OdometryIncrement wheel_increment(const WheelSpeeds& u, double dt,
                                         const RobotGeometry& geom) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("wheel_increment: dt must be positive");
    }
    OdometryIncrement inc;
    inc.ds_left = dt * geom.wheel_radius * u.omega_left;
    inc.ds_right = dt * geom.wheel_radius * u.omega_right;
    inc.ds = 0.5 * (inc.ds_left + inc.ds_right);
    inc.dtheta = (inc.ds_right - inc.ds_left) / geom.wheelbase;
    return inc;
}

/// Midpoint-heading dead-reckoning update:
///   x' = x + ds*cos(theta + dtheta/2)
///   y' = y + ds*sin(theta + dtheta/2)
///   theta' = wrap(theta + dtheta)
inline Pose pose_update(const Pose& p, const OdometryIncrement& inc) {
    const double mid = p.theta + 0.5 * inc.dtheta;
    Pose out;
    out.x = p.x + inc.ds * std::cos(mid);
    out.y = p.y + inc.ds * std::sin(mid);
    out.theta = normalize_angle(p.theta + inc.dtheta);
    return out;
}

/// Linearization of pose_update.
/// A = df/d(x,y,theta) (3x3).
/// W = df/d(ds_right, ds_left) (3x2): noise enters through the wheel
/// displacements; the column order matches Q's (right, left) diagonal.
inline std::pair<Eigen::Matrix3d, Eigen::Matrix<double, 3, 2>> process_jacobians(
    const Pose& p, const OdometryIncrement& inc, const RobotGeometry& geom) {
    const double mid = p.theta + 0.5 * inc.dtheta;
    const double c = std::cos(mid);
    const double s = std::sin(mid);
    const double L = geom.wheelbase;

    Eigen::Matrix3d A = Eigen::Matrix3d::Identity();
    A(0, 2) = -inc.ds * s;
    A(1, 2) = inc.ds * c;

    Eigen::Matrix<double, 3, 2> W;
    // d(ds)/d(ds_R) = 1/2, d(dtheta)/d(ds_R) = 1/L, d(mid)/d(ds_R) = 1/(2L)
    W(0, 0) = 0.5 * c - inc.ds * s / (2.0 * L);
    W(1, 0) = 0.5 * s + inc.ds * c / (2.0 * L);
    W(2, 0) = 1.0 / L;
    W(0, 1) = 0.5 * c + inc.ds * s / (2.0 * L);
    W(1, 1) = 0.5 * s - inc.ds * c / (2.0 * L);
    W(2, 1) = -1.0 / L;

    return {A, W};
}

/// Inverse kinematics: body (v, omega) to wheel angular speeds.
inline WheelSpeeds wheel_speeds_from_command(double v, double omega,
                                             const RobotGeometry& geom) {
    WheelSpeeds u;
    u.omega_right = (v + 0.5 * omega * geom.wheelbase) / geom.wheel_radius;
    u.omega_left = (v - 0.5 * omega * geom.wheelbase) / geom.wheel_radius;
    return u;
}

}  // namespace navstack

#endif  // NAVSTACK_ODOMETRY_HPP_
