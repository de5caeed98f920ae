#ifndef NAVSTACK_SCAN_MAPPER_HPP_
#define NAVSTACK_SCAN_MAPPER_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "navstack/geometry.hpp"

namespace navstack {

/// Tilt-mounted 2D scanner: sensor height above the floor and the downward
/// tilt range it sweeps (positive tilt looks down).
struct TiltMount {
    double height = 0.40;                    // m above the floor
    double tilt_alpha = 0.0;                 // rad, downward positive
    double tilt_min = -5.0 * kPi / 180.0;    // rad
    double tilt_max = 30.0 * kPi / 180.0;    // rad

    void validate() const;
};

struct ScanConfig {
    double max_range = 8.0;                       // m
    double fov = 100.0 * kPi / 180.0;             // rad
    double angular_resolution = 1.0 * kPi / 180.0;  // rad
    int n_frames = 81;

    int beam_count() const;
    void validate() const;
};

/// One horizontal sweep at a fixed tilt. Hit heights vary along a tilted
/// sweep, so points carry their own z.
struct ScanFrame {
    double tilt = 0.0;  // rad, downward positive
    std::vector<Point3> points;
};

struct ObstacleMap {
    std::vector<Point2> points;
};

/// Axis-aligned box obstacle.
struct Box {
    Point3 min;
    Point3 max;
};

/// Vertical cylinder obstacle.
struct Cylinder {
    Point2 center;
    double radius = 0.0;
    double z_min = 0.0;
    double z_max = 0.0;
};

struct World {
    std::vector<Box> boxes;
    std::vector<Cylinder> cylinders;
};

struct OccupancyGrid {
    double cell_size = 0.1;
    long ix0 = 0;  // index of the first cell (floor convention)
    long iy0 = 0;
    int nx = 0;
    int ny = 0;
    std::vector<uint8_t> occupied;  // row-major, y-major

    bool at(long ix, long iy) const;
};

/// Distance at which the beam meets the floor: h / tan(alpha).
/// Only defined for a downward tilt.
double ground_intersection_distance(const TiltMount& mount);

/// Nearest hit of a ray against the world, in (0, max_range]. Returns false
/// when nothing is hit.
bool raycast(const World& world, const Point3& origin, const Point3& dir,
             double max_range, double& t_hit);

/// Sweep the tilt range in n_frames steps; each frame ray-casts the full
/// horizontal fan from the sensor pose. Frames are ordered tilt_min..tilt_max,
/// beams left-to-right across the fov.
std::vector<ScanFrame> simulate_tilt_scan(const World& world, const TiltMount& mount,
                                          const ScanConfig& config,
                                          const Pose& sensor_pose);

/// Union of all scan points whose height lies strictly inside (z_min, z_max).
ObstacleMap slice_reduce(const std::vector<ScanFrame>& frames, double z_min,
                         double z_max);

/// Floor-convention rasterization: point (x, y) occupies cell
/// (floor(x/cell), floor(y/cell)).
OccupancyGrid rasterize(const ObstacleMap& map, double cell_size);

// Plain-text interchange: "x y z" per line, blank line between frames.
void write_point_cloud(std::ostream& os, const std::vector<ScanFrame>& frames);
std::vector<ScanFrame> read_point_cloud(std::istream& is);

// "x y" per line.
void write_obstacle_map(std::ostream& os, const ObstacleMap& map);

// Portable graymap (P2): occupied cells black on white.
void write_pgm(std::ostream& os, const OccupancyGrid& grid);

}  // namespace navstack

#endif  // NAVSTACK_SCAN_MAPPER_HPP_
