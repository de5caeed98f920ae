#ifndef NAVSTACK_GEOMETRY_HPP_
#define NAVSTACK_GEOMETRY_HPP_

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace navstack {

inline constexpr double kPi = std::numbers::pi;

/// Wrap an angle into (-pi, pi]. The result differs from the input by an
/// exact multiple of 2*pi.
inline double normalize_angle(double a) {
    if (!std::isfinite(a)) {
        throw std::invalid_argument("normalize_angle: non-finite input");
    }
    double r = std::remainder(a, 2.0 * kPi);  // (-pi, pi] up to the -pi case
    if (r <= -kPi) {
        r += 2.0 * kPi;
    }
    return r;
}

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Planar robot state (x, y, theta) in the global frame. theta is kept
/// normalized by every operation that produces a Pose.
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
};

inline double distance(const Point2& a, const Point2& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

/// Four-quadrant bearing of `to` as seen from `from`, in (-pi, pi].
/// Coincident points (within 1e-12 m) have no defined bearing.
inline double bearing_to(const Point2& from, const Point2& to) {
    constexpr double kEpsPos = 1e-12;
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    if (std::hypot(dx, dy) < kEpsPos) {
        throw std::invalid_argument("bearing_to: coincident points");
    }
    return normalize_angle(std::atan2(dy, dx));
}

}  // namespace navstack

#endif  // NAVSTACK_GEOMETRY_HPP_
